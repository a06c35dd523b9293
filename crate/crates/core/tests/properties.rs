use num_bigint::BigInt;
use proptest::prelude::*;

use kschubert::delta::{eliminate, triangular_t, DeltaOperator, WordCartanMatrix};
use kschubert::derived::demazure_image;
use kschubert::oracles::{normal_form_coefficient, OracleGroup};
use kschubert::polyring::Polynomial;
use kschubert::rootsys::{CartanMatrix, WeylGroup};

fn poly_strategy(m: usize, max_degree: u32) -> impl Strategy<Value = Polynomial> {
    let term = (prop::collection::vec(0..=max_degree, m), -6i64..=6);
    prop::collection::vec(term, 0..6).prop_map(move |terms| {
        let mut total = Polynomial::zero(m);
        for (exps, c) in terms {
            // cap the total degree by clearing excess from the right
            let mut exps = exps;
            let mut budget = max_degree;
            for e in exps.iter_mut() {
                *e = (*e).min(budget);
                budget -= *e;
            }
            total = &total + &Polynomial::monomial(&exps, c);
        }
        total
    })
}

fn matrix_strategy(m: usize) -> impl Strategy<Value = WordCartanMatrix> {
    prop::collection::vec(-3i64..=2, m * m).prop_map(move |raw| {
        let rows = (0..m)
            .map(|i| (0..m).map(|j| if i < j { raw[i * m + j] } else { 0 }).collect())
            .collect();
        WordCartanMatrix::new(rows).unwrap()
    })
}

fn matrix_and_poly(max_m: usize) -> impl Strategy<Value = (WordCartanMatrix, Polynomial)> {
    (1..=max_m).prop_flat_map(|m| (matrix_strategy(m), poly_strategy(m, m as u32)))
}

/// `(1/n!) ∂^n f / ∂y^n` at `y = 0`, by repeated formal differentiation.
fn taylor_coefficient(f: &Polynomial, var: usize, n: u32) -> Polynomial {
    let m = f.num_vars();
    let mut g = f.clone();
    let mut factorial = BigInt::from(1);
    for step in 1..=n {
        let mut next = Polynomial::zero(m);
        for (mono, c) in g.terms() {
            let e = mono.exponent(var);
            if e == 0 {
                continue;
            }
            let mut exps = mono.exponents().to_vec();
            exps[var] -= 1;
            next = &next + &Polynomial::monomial(&exps, c * BigInt::from(e));
        }
        g = next;
        factorial *= step;
    }
    let mut out = Polynomial::zero(m);
    for (mono, c) in g.terms() {
        if mono.exponent(var) == 0 {
            assert_eq!(c % &factorial, BigInt::from(0));
            out = &out + &Polynomial::monomial(mono.exponents(), c / &factorial);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(f in poly_strategy(3, 3), g in poly_strategy(3, 3), h in poly_strategy(3, 3)) {
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert_eq!(&(&f - &f), &Polynomial::zero(3));
    }

    #[test]
    fn truncated_product(f in poly_strategy(3, 4), g in poly_strategy(3, 4), n in 0u32..8) {
        prop_assert_eq!(f.mul_truncated(&g, n).unwrap(), (&f * &g).truncate(n));
        prop_assert_eq!(f.pow_truncated(3, n), f.pow(3).truncate(n));
    }

    #[test]
    fn display_parses_back(f in poly_strategy(4, 4)) {
        prop_assert_eq!(Polynomial::parse(&f.to_string(), 4).unwrap(), f);
    }

    /// One elimination step agrees with the Taylor-coefficient formula.
    #[test]
    fn elimination_step_matches_derivatives((a, f) in matrix_and_poly(5)) {
        let m = a.size();
        prop_assume!(m >= 2);
        let k = m;
        let f = f.truncate(k as u32);
        let qbar = kschubert::delta::build_q_sequences(&a).qbar[k - 1].clone();
        let qbar = qbar.truncate(k as u32 - 1).with_num_vars(k - 1).unwrap();
        let shifted = &qbar - &Polynomial::one(k - 1);
        let mut expected = Polynomial::zero(k - 1);
        let mut power = Polynomial::one(k - 1);
        for n in 1..=k as u32 {
            let h = taylor_coefficient(&f, k - 1, n).with_num_vars(k - 1).unwrap();
            expected = &expected + &(&h * &power);
            power = &power * &shifted;
        }
        let expected = expected.truncate(k as u32 - 1);
        prop_assert_eq!(eliminate(&f, k, &qbar).unwrap(), expected);
    }

    #[test]
    fn delta_matches_normal_form((a, f) in matrix_and_poly(5)) {
        prop_assert_eq!(DeltaOperator::new(&a).apply(&f).unwrap(), normal_form_coefficient(&f, &a));
    }

    #[test]
    fn delta_is_linear((a, f) in matrix_and_poly(4), c in -5i64..=5) {
        let d = DeltaOperator::new(&a);
        let g = &f * &Polynomial::constant(a.size(), c);
        prop_assert_eq!(d.apply(&(&f + &g)).unwrap(), d.apply(&f).unwrap() * (1 + c));
    }

    /// On homogeneous inputs of top degree Δ_A agrees with the triangular
    /// operator of -A.
    #[test]
    fn delta_matches_triangular_operator((a, f) in matrix_and_poly(5)) {
        let m = a.size() as u32;
        let top = Polynomial::from_terms(
            a.size(),
            f.terms().filter(|(mono, _)| mono.degree() == m).map(|(mono, c)| (mono.exponents().to_vec(), c.clone())),
        ).unwrap();
        prop_assert_eq!(DeltaOperator::new(&a).apply(&top).unwrap(), triangular_t(&a.negated(), &top).unwrap());
    }

    /// Image polynomials are square-free 0/1 sums whose alternating sum over
    /// the group is 1.
    #[test]
    fn image_polynomials_alternating_sum(word in prop::collection::vec(0usize..2, 0..10), name in prop::sample::select(vec!["A2", "B2", "G2"])) {
        let g = WeylGroup::generate(&CartanMatrix::named(name).unwrap()).unwrap();
        let images = demazure_image(&g, &word).unwrap();
        let mut total = Polynomial::zero(word.len());
        for (x, p) in images.iter() {
            prop_assert!(p.is_square_free());
            prop_assert!(p.terms().all(|(_, c)| *c == BigInt::from(1)));
            if g.length(x).is_multiple_of(2) { total = &total + p } else { total = &total - p }
        }
        prop_assert_eq!(total, Polynomial::one(word.len()));
    }

    /// A sequence is derived for w exactly when it contains a reduced word
    /// of w as a subsequence.
    #[test]
    fn derived_iff_contains_reduced_word(word in prop::collection::vec(0usize..2, 0..8), name in prop::sample::select(vec!["A2", "B2", "G2"])) {
        let g = WeylGroup::generate(&CartanMatrix::named(name).unwrap()).unwrap();
        let oracle = OracleGroup::new(g.cartan()).unwrap();
        for w in g.ids() {
            let target = oracle.element_of(g.canonical_word(w).indices());
            let contains = (0u32..1 << word.len()).any(|mask| {
                let sub: Vec<usize> = (0..word.len()).filter(|k| mask >> k & 1 == 1).map(|k| word[k]).collect();
                sub.len() == g.length(w) && oracle.element_of(&sub) == target
            });
            prop_assert_eq!(kschubert::derived::is_derived(&g, &word, w), contains);
        }
    }
}
