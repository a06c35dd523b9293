//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//! All comparisons are exact integer or polynomial equality.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::SeedableRng;

use kschubert::constants::{full_table, parabolic_constants, Calculator};
use kschubert::delta::{build_q_sequences, DeltaOperator, WordCartanMatrix};
use kschubert::derived::{basis_transition, demazure_image, Basis, SquareMatrix};
use kschubert::oracles::{self, OracleGroup};
use kschubert::polyring::Polynomial;
use kschubert::rootsys::{CartanMatrix, ElementId, WeylGroup};
use kschubert::verify::{self, CheckReport};

type Outcome = Result<(), String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn group(name: &str) -> WeylGroup {
    WeylGroup::generate(&CartanMatrix::named(name).unwrap()).unwrap()
}

fn elem(g: &WeylGroup, one_based: &[usize]) -> ElementId {
    g.evaluate(&one_based.iter().map(|i| i - 1).collect::<Vec<_>>()).unwrap()
}

fn zero_based(one_based: &[usize]) -> Vec<usize> {
    one_based.iter().map(|i| i - 1).collect()
}

fn poly(text: &str, m: usize) -> Polynomial {
    Polynomial::parse(text, m).unwrap()
}

fn require(report: CheckReport) -> Outcome {
    if report.passed() {
        Ok(())
    } else {
        Err(report.to_string())
    }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Outcome {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

/// G2: a_e a_u = a_u - a_w with the intermediate constants and Δ term.
fn criterion_1() -> Outcome {
    let g = group("G2");
    let (e, u, v, w) = (
        g.identity(),
        elem(&g, &[1, 2, 1, 2, 1]),
        elem(&g, &[2, 1, 2, 1, 2]),
        elem(&g, &[1, 2, 1, 2, 1, 2]),
    );
    expect_eq("w is the longest element", w, g.longest())?;
    let product = Calculator::new(&g, Basis::Demazure).expand_product(e, u).map_err(|e| e.to_string())?;
    expect_eq("C[e,u]^u", product.get(&u).copied().unwrap_or(0), 1)?;
    expect_eq("C[e,u]^v", product.get(&v).copied().unwrap_or(0), 0)?;
    expect_eq("C[e,u]^w", product.get(&w).copied().unwrap_or(0), -1)?;
    expect_eq("expansion", product, BTreeMap::from([(u, 1), (w, -1)]))?;

    let word = zero_based(&[1, 2, 1, 2, 1, 2]);
    let images = demazure_image(&g, &word).unwrap();
    let f = images.get(e).mul_truncated(images.get(u), 6).unwrap();
    let a = WordCartanMatrix::from_word(&word, g.cartan()).unwrap();
    let delta = DeltaOperator::new(&a);
    expect_eq("Δ term", delta.apply(&f).unwrap(), BigInt::from(2))?;
    // The degree-6 part is the reference argument; the remaining y1⋯y5 has no
    // y6 and is annihilated by the first elimination step.
    let reference = poly("y1*y2*y3*y4*y5*(y1+y2+y3+y4+y5+2*y6)", 6);
    expect_eq("Δ argument", &f - &reference, poly("y1*y2*y3*y4*y5", 6))?;
    expect_eq("Δ of reference argument", delta.apply(&reference).unwrap(), BigInt::from(2))
}

/// The reference q-sequences for A = [[0,1,2],[0,0,-1],[0,0,0]].
fn criterion_2() -> Outcome {
    let a = WordCartanMatrix::new(vec![vec![0, 1, 2], vec![0, 0, -1], vec![0, 0, 0]]).unwrap();
    let s = build_q_sequences(&a);
    let reference = [
        ("q2", &s.q[1], poly("y1 + 1", 3)),
        ("qbar2", &s.qbar[1], poly("1 - y1", 3)),
        ("q3", &s.q[2], poly("(y1+1)^2*(-(y1+1)*y2+1)", 3)),
        ("qbar3", &s.qbar[2], poly("(-(y1+1)*y1+1)^2*(y2+1)", 3)),
    ];
    let mismatches: Vec<String> = reference
        .iter()
        .filter(|(_, got, want)| *got != want)
        .map(|(name, got, want)| format!("{name}: computed {got}, reference {want}"))
        .collect();
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(mismatches.join("; "))
    }
}

/// G2 image polynomials of u = s1s2s1s2s1 over three words.
fn criterion_3() -> Outcome {
    let g = group("G2");
    let u = elem(&g, &[1, 2, 1, 2, 1]);
    let cases: [(&[usize], &str); 3] = [
        (&[1, 2, 1, 2, 1], "y1*y2*y3*y4*y5"),
        (&[2, 1, 2, 1, 2], "0"),
        (&[1, 2, 1, 2, 1, 2], "y1*y2*y3*y4*y5*(1+y6)"),
    ];
    for (word, want) in cases {
        let images = demazure_image(&g, &zero_based(word)).unwrap();
        expect_eq(&format!("P(u) over {word:?}"), images.get(u).clone(), poly(want, word.len()))?;
    }
    Ok(())
}

/// Oracle equivalences: images, elimination operator, Bruhat order.
fn criterion_4() -> Outcome {
    let mut rng = StdRng::seed_from_u64(20240601);
    for name in ["A2", "B2", "G2"] {
        let g = group(name);
        let oracle = OracleGroup::new(g.cartan()).unwrap();
        let words = verify::random_words(g.rank(), 50, 12, &mut rng);
        require(verify::image_oracle(&g, &oracle, &words).map_err(|e| e.to_string())?)?;
    }
    let report = verify::delta_oracle(1000, 6, 99).map_err(|e| e.to_string())?;
    expect_eq("random Δ trials", report.checked, 1000)?;
    require(report)?;
    for name in ["A2", "A3", "B2", "B3", "G2"] {
        let g = group(name);
        let oracle = OracleGroup::new(g.cartan()).unwrap();
        require(verify::bruhat_oracle(&g, &oracle))?;
    }
    Ok(())
}

/// Constants agree across all reduced words, A3 and B2, both bases.
fn criterion_5() -> Outcome {
    for name in ["A3", "B2"] {
        let g = group(name);
        for basis in [Basis::Demazure, Basis::Grothendieck] {
            let table = full_table(&g, basis).map_err(|e| e.to_string())?;
            require(verify::word_independence(&g, &table).map_err(|e| e.to_string())?)?;
        }
    }
    Ok(())
}

/// Ring axioms on the A2, B2, G2 tables.
fn criterion_6() -> Outcome {
    for name in ["A2", "B2", "G2"] {
        let g = group(name);
        let c = full_table(&g, Basis::Demazure).map_err(|e| e.to_string())?;
        let k = full_table(&g, Basis::Grothendieck).map_err(|e| e.to_string())?;
        for table in [&c, &k] {
            require(verify::commutativity(table))?;
            require(verify::associativity(table))?;
        }
        require(verify::unit_law(&k))?;
        require(verify::filtration(&g, &c))?;
    }
    Ok(())
}

/// Alternating signs of the Grothendieck constants.
fn criterion_7() -> Outcome {
    for name in ["A2", "A3", "B2", "G2"] {
        let g = group(name);
        let k = full_table(&g, Basis::Grothendieck).map_err(|e| e.to_string())?;
        require(verify::sign_alternation(&g, &k))?;
    }
    Ok(())
}

/// Degree-matching constants with l(v) = 1 against Monk's rule.
fn criterion_8() -> Outcome {
    for name in ["A2", "A3"] {
        let g = group(name);
        let n = oracles::type_a_letters(g.cartan()).unwrap();
        let perm = |x: ElementId| oracles::permutation_of_word(g.canonical_word(x).indices(), n);
        for basis in [Basis::Demazure, Basis::Grothendieck] {
            let table = full_table(&g, basis).map_err(|e| e.to_string())?;
            for v in g.ids().filter(|&v| g.length(v) == 1) {
                let k = g.canonical_word(v).indices()[0];
                for u in g.ids() {
                    let monk = oracles::monk_product(&perm(u), k, n).unwrap();
                    for w in g.ids().filter(|&w| g.length(w) == g.length(u) + 1) {
                        let want = monk.get(&perm(w)).copied().unwrap_or(0);
                        expect_eq(
                            &format!("{name} {basis} [{u},{v}]^{w}"),
                            table.get(u, v, w),
                            Some(want),
                        )?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// The C-table conjugated by the transition matrices is the K-table, and
/// back; the transition matrices are mutually inverse.
fn criterion_9() -> Outcome {
    for name in ["A2", "G2"] {
        let g = group(name);
        let t = basis_transition(&g);
        let id = SquareMatrix::identity(g.order());
        expect_eq("M N", &t.omega_from_a * &t.a_from_omega, id.clone())?;
        expect_eq("N M", &t.a_from_omega * &t.omega_from_a, id)?;
        let c = full_table(&g, Basis::Demazure).map_err(|e| e.to_string())?;
        let k = full_table(&g, Basis::Grothendieck).map_err(|e| e.to_string())?;
        let converted = c.change_basis(&t.omega_from_a, &t.a_from_omega, Basis::Grothendieck);
        expect_eq(&format!("{name} C -> K"), &converted, &k)?;
        let back = k.change_basis(&t.a_from_omega, &t.omega_from_a, Basis::Demazure);
        expect_eq(&format!("{name} K -> C"), &back, &c)?;
    }
    Ok(())
}

/// A2 modulo <s1>: three representatives, closed, equal to the full table.
fn criterion_10() -> Outcome {
    let g = group("A2");
    let full = full_table(&g, Basis::Grothendieck).map_err(|e| e.to_string())?;
    let datum = g.minimal_coset_reps(&[0].into()).unwrap();
    let restricted = parabolic_constants(&full, &datum).map_err(|e| e.to_string())?;
    expect_eq(
        "representatives",
        restricted.elements().to_vec(),
        vec![g.identity(), elem(&g, &[2]), elem(&g, &[1, 2])],
    )?;
    for &u in restricted.elements() {
        for &v in restricted.elements() {
            for (w, c) in full.product(u, v) {
                if !datum.contains(w) {
                    return Err(format!("[{u},{v}]^{w} = {c} leaves the quotient"));
                }
            }
            for &w in restricted.elements() {
                expect_eq("restricted entry", restricted.get(u, v, w), full.get(u, v, w))?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("G2 product a_e a_u = a_u - a_w", Duration::from_secs(1), criterion_1),
        ("reference q-sequences for the 3x3 example", Duration::from_secs(1), criterion_2),
        ("G2 image polynomials over three words", Duration::from_secs(1), criterion_3),
        ("oracle equivalences (images, Δ, Bruhat)", Duration::from_secs(300), criterion_4),
        ("reduced-word independence on A3 and B2", Duration::from_secs(120), criterion_5),
        ("ring axioms on A2, B2, G2 tables", Duration::from_secs(300), criterion_6),
        ("alternating signs on A2, A3, B2, G2", Duration::from_secs(600), criterion_7),
        ("Monk rule on A2 and A3", Duration::from_secs(60), criterion_8),
        ("basis transition on A2 and G2", Duration::from_secs(60), criterion_9),
        ("parabolic restriction A2 / <s1>", Duration::from_secs(1), criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            if elapsed <= *budget {
                Ok(())
            } else {
                Err(format!("took {elapsed:.2?}, budget {budget:?}"))
            }
        });
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({elapsed:.2?})\n               {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
