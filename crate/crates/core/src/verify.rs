//! Consistency checks on computed tables: ring axioms, the unit law,
//! positivity, vanishing below the product length, agreement across the
//! change of basis, independence of the chosen reduced word, and closure of
//! the parabolic subring.

use std::collections::BTreeMap;
use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::constants::{full_table_with_cap, ConstantTable, WordContext};
use crate::delta::{DeltaOperator, WordCartanMatrix};
use crate::derived::{basis_transition, demazure_image, Basis};
use crate::error::Result;
use crate::oracles::{self, OracleGroup};
use crate::polyring::Polynomial;
use crate::rootsys::{format_word, ElementId, WeylGroup};

/// Failures recorded per check are capped at this many.
const MAX_FAILURES: usize = 20;

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < MAX_FAILURES {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "ok" } else { "FAILED" };
        write!(f, "{status:6} {} ({} checked)", self.name, self.checked)?;
        for failure in &self.failures {
            write!(f, "\n       {failure}")?;
        }
        Ok(())
    }
}

fn label(group: &WeylGroup, x: ElementId) -> String {
    let word = group.canonical_word(x);
    if word.is_empty() {
        "e".to_string()
    } else {
        format!("({})", format_word(word.indices()))
    }
}

pub fn commutativity(table: &ConstantTable) -> CheckReport {
    let mut report = CheckReport::new(format!("{} commutativity", table.basis()));
    let els = table.elements();
    for &u in els {
        for &v in els.iter().filter(|&&v| v > u) {
            for &w in els {
                let (a, b) = (table.get(u, v, w), table.get(v, u, w));
                report.record(a == b, || format!("{u} {v} -> {w}: {a:?} vs {b:?}"));
            }
        }
    }
    report
}

/// `(x y) z = x (y z)` for every triple of basis elements.
pub fn associativity(table: &ConstantTable) -> CheckReport {
    let mut report = CheckReport::new(format!("{} associativity", table.basis()));
    let els = table.elements();
    let products: BTreeMap<(ElementId, ElementId), BTreeMap<ElementId, i64>> = els
        .iter()
        .flat_map(|&u| els.iter().map(move |&v| (u, v)))
        .map(|(u, v)| ((u, v), table.product(u, v)))
        .collect();
    let times = |lhs: &BTreeMap<ElementId, i64>, z: ElementId, left: bool| {
        let mut out: BTreeMap<ElementId, i64> = BTreeMap::new();
        for (&y, &c) in lhs {
            let key = if left { (y, z) } else { (z, y) };
            for (&w, &d) in &products[&key] {
                *out.entry(w).or_default() += c * d;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    };
    for &x in els {
        for &y in els {
            for &z in els {
                let left = times(&products[&(x, y)], z, true);
                let right = times(&products[&(y, z)], x, false);
                report.record(left == right, || format!("({x} {y}) {z} != {x} ({y} {z})"));
            }
        }
    }
    report
}

/// `K_{e,v}^w = δ_{v,w}`.
pub fn unit_law(table: &ConstantTable) -> CheckReport {
    let mut report = CheckReport::new("grothendieck unit law");
    let e = ElementId::IDENTITY;
    for &v in table.elements() {
        for &w in table.elements() {
            let c = table.get(e, v, w);
            report.record(c == Some(i64::from(v == w)), || format!("K[e,{v}]^{w} = {c:?}"));
        }
    }
    report
}

/// `(-1)^{l(w)-l(u)-l(v)} K_{u,v}^w ≥ 0`.
pub fn sign_alternation(group: &WeylGroup, table: &ConstantTable) -> CheckReport {
    let mut report = CheckReport::new("grothendieck sign alternation");
    for ((u, v, w), c) in table.nonzero() {
        let shift = group.length(w) as i64 - (group.length(u) + group.length(v)) as i64;
        let signed = if shift.rem_euclid(2) == 0 { c } else { -c };
        report.record(signed >= 0, || format!("K[{u},{v}]^{w} = {c}"));
    }
    report
}

/// Nonzero constants only occur for `l(w) ≥ l(u) + l(v)`.
pub fn filtration(group: &WeylGroup, table: &ConstantTable) -> CheckReport {
    let mut report = CheckReport::new(format!("{} vanishing below product length", table.basis()));
    for ((u, v, w), c) in table.nonzero() {
        let ok = group.length(w) >= group.length(u) + group.length(v);
        report.record(ok, || format!("[{u},{v}]^{w} = {c}"));
    }
    report
}

/// The Grothendieck table equals the Demazure table rewritten through
/// `Ω_w = Σ_{w ≤ u} a_u`.
pub fn basis_agreement(group: &WeylGroup, demazure: &ConstantTable, grothendieck: &ConstantTable) -> CheckReport {
    let mut report = CheckReport::new("basis transition agreement");
    let t = basis_transition(group);
    let converted = demazure.change_basis(&t.omega_from_a, &t.a_from_omega, Basis::Grothendieck);
    for &u in grothendieck.elements() {
        for &v in grothendieck.elements() {
            for &w in grothendieck.elements() {
                let (a, b) = (converted.get(u, v, w), grothendieck.get(u, v, w));
                report.record(a == b, || format!("[{u},{v}]^{w}: converted {a:?}, direct {b:?}"));
            }
        }
    }
    report
}

/// Recomputes every constant from every reduced word of its target, taking
/// the lower constants from `table`.
pub fn word_independence(group: &WeylGroup, table: &ConstantTable) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("{} reduced-word independence", table.basis()));
    for &w in table.elements() {
        for word in group.reduced_words(w) {
            let ctx = WordContext::new(group, table.basis(), &word)?;
            for &u in table.elements() {
                for &v in table.elements() {
                    let c = ctx.constant(group, u, v, |x| table.get(u, v, x))?;
                    let expected = table.get(u, v, w);
                    report.record(Some(c) == expected, || {
                        format!(
                            "[{},{}]^{} via ({}): {c} vs {expected:?}",
                            label(group, u),
                            label(group, v),
                            label(group, w),
                            format_word(word.indices())
                        )
                    });
                }
            }
        }
    }
    Ok(report)
}

/// For each subset of simple roots, products of minimal coset
/// representatives expand in minimal coset representatives.
pub fn parabolic_closure(group: &WeylGroup, table: &ConstantTable) -> Result<CheckReport> {
    let mut report = CheckReport::new("grothendieck parabolic closure");
    let rank = group.rank();
    for mask in 1u32..(1 << rank) {
        let subset = (0..rank).filter(|i| mask & (1 << i) != 0).collect();
        let datum = group.minimal_coset_reps(&subset)?;
        for &u in &datum.reps {
            for &v in &datum.reps {
                for (w, c) in table.product(u, v) {
                    report.record(datum.contains(w), || {
                        format!("subset {subset:?}: [{u},{v}]^{w} = {c} outside the quotient")
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Builds both tables for `group` and runs every check.
pub fn verify_group(group: &WeylGroup, cap: usize) -> Result<Vec<CheckReport>> {
    let demazure = full_table_with_cap(group, Basis::Demazure, cap)?;
    let grothendieck = full_table_with_cap(group, Basis::Grothendieck, cap)?;
    let mut reports = Vec::new();
    for table in [&demazure, &grothendieck] {
        reports.push(commutativity(table));
        reports.push(associativity(table));
        reports.push(filtration(group, table));
        reports.push(word_independence(group, table)?);
    }
    reports.push(unit_law(&grothendieck));
    reports.push(sign_alternation(group, &grothendieck));
    reports.push(basis_agreement(group, &demazure, &grothendieck));
    reports.push(parabolic_closure(group, &grothendieck)?);
    Ok(reports)
}

/// Index of `x` in the oracle's model of the same group.
pub fn to_oracle(group: &WeylGroup, oracle: &OracleGroup, x: ElementId) -> usize {
    oracle.element_of(group.canonical_word(x).indices())
}

/// `count` random words of length at most `max_len`.
pub fn random_words(rank: usize, count: usize, max_len: usize, rng: &mut impl Rng) -> Vec<Vec<usize>> {
    (0..count)
        .map(|_| {
            let len = rng.gen_range(0..=max_len);
            (0..len).map(|_| rng.gen_range(0..rank)).collect()
        })
        .collect()
}

/// Dynamic-programming image polynomials against subset enumeration.
pub fn image_oracle(group: &WeylGroup, oracle: &OracleGroup, words: &[Vec<usize>]) -> Result<CheckReport> {
    let mut report = CheckReport::new("image polynomials vs subset enumeration");
    for word in words {
        let images = demazure_image(group, word)?;
        for (x, poly) in images.iter() {
            let naive = oracles::naive_derived_poly(oracle, word, to_oracle(group, oracle, x))?;
            report.record(*poly == naive, || {
                format!("word ({}) element {}", format_word(word), label(group, x))
            });
        }
    }
    Ok(report)
}

/// Bruhat order against the subword property, all pairs.
pub fn bruhat_oracle(group: &WeylGroup, oracle: &OracleGroup) -> CheckReport {
    let mut report = CheckReport::new("Bruhat order vs subwords");
    let map: Vec<usize> = group.ids().map(|x| to_oracle(group, oracle, x)).collect();
    for u in group.ids() {
        for w in group.ids() {
            let ok = group.bruhat_leq(u, w) == oracle.bruhat_leq(map[u.0], map[w.0]);
            report.record(ok, || format!("{} <= {}", label(group, u), label(group, w)));
        }
    }
    report
}

/// A random strictly upper triangular matrix with entries in `-3..=2`.
pub fn random_word_matrix(m: usize, rng: &mut impl Rng) -> WordCartanMatrix {
    let rows = (0..m)
        .map(|i| (0..m).map(|j| if i < j { rng.gen_range(-3..=2) } else { 0 }).collect())
        .collect();
    WordCartanMatrix::new(rows).expect("strictly upper triangular")
}

/// A random polynomial in `m` variables of degree at most `max_degree`.
pub fn random_polynomial(m: usize, max_degree: u32, rng: &mut impl Rng) -> Polynomial {
    let mut total = Polynomial::zero(m);
    for _ in 0..rng.gen_range(1..=6) {
        let mut exps = vec![0u32; m];
        for _ in 0..rng.gen_range(0..=max_degree) {
            exps[rng.gen_range(0..m)] += 1;
        }
        total = &total + &Polynomial::monomial(&exps, rng.gen_range(-5i64..=5));
    }
    total
}

/// The elimination operator against normal-form rewriting on random
/// inputs with up to `max_m` variables.
pub fn delta_oracle(trials: usize, max_m: usize, seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("elimination operator vs normal form");
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..trials {
        let m = rng.gen_range(1..=max_m);
        let a = random_word_matrix(m, &mut rng);
        let f = random_polynomial(m, m as u32 + 1, &mut rng);
        let fast = DeltaOperator::new(&a).apply(&f)?;
        let slow = oracles::normal_form_coefficient(&f, &a);
        report.record(fast == slow, || format!("A = {:?}, f = {f}: {fast} vs {slow}", a.rows()));
    }
    Ok(report)
}

/// Constants with `u = s_i` and `l(w) = l(v) + 1` against the cohomology
/// rule `σ_{s_i} σ_v = Σ <ω_i, γ^∨> σ_{v s_γ}`.
pub fn chevalley_oracle(group: &WeylGroup, oracle: &OracleGroup, table: &ConstantTable) -> CheckReport {
    let mut report = CheckReport::new(format!("{} degree-one products vs Chevalley rule", table.basis()));
    let map: Vec<usize> = group.ids().map(|x| to_oracle(group, oracle, x)).collect();
    for i in 0..group.rank() {
        let s = group.generator(i);
        for v in group.ids() {
            let expected = oracle.chevalley(i, map[v.0]);
            for w in group.ids().filter(|&w| group.length(w) == group.length(v) + 1) {
                let got = table.get(s, v, w);
                let want = expected.get(&map[w.0]).copied().unwrap_or(0);
                report.record(got == Some(want), || {
                    format!("[s{},{}]^{}: {got:?} vs {want}", i + 1, label(group, v), label(group, w))
                });
            }
        }
    }
    report
}

/// Type A only: constants with `l(v) = 1` and `l(w) = l(u) + 1` against
/// Monk's rule on permutations.
pub fn monk_oracle(group: &WeylGroup, table: &ConstantTable) -> Result<CheckReport> {
    let n = oracles::type_a_letters(group.cartan())?;
    let mut report = CheckReport::new(format!("{} degree-one products vs Monk rule", table.basis()));
    let perm = |x: ElementId| oracles::permutation_of_word(group.canonical_word(x).indices(), n);
    for k in 0..group.rank() {
        let s = group.generator(k);
        for u in group.ids() {
            let expected = oracles::monk_product(&perm(u), k, n)?;
            for w in group.ids().filter(|&w| group.length(w) == group.length(u) + 1) {
                let got = table.get(u, s, w);
                let want = expected.get(&perm(w)).copied().unwrap_or(0);
                report.record(got == Some(want), || {
                    format!("[{},s{}]^{}: {got:?} vs {want}", label(group, u), k + 1, label(group, w))
                });
            }
        }
    }
    Ok(report)
}

/// Runs every oracle comparison that applies to `group`.
pub fn verify_oracles(group: &WeylGroup, cap: usize, seed: u64) -> Result<Vec<CheckReport>> {
    let oracle = OracleGroup::new(group.cartan())?;
    let mut rng = StdRng::seed_from_u64(seed);
    let words = random_words(group.rank(), 20, 10, &mut rng);
    let mut reports = vec![
        image_oracle(group, &oracle, &words)?,
        bruhat_oracle(group, &oracle),
        delta_oracle(200, 6, seed)?,
    ];
    for basis in [Basis::Demazure, Basis::Grothendieck] {
        let table = full_table_with_cap(group, basis, cap)?;
        reports.push(chevalley_oracle(group, &oracle, &table));
        if oracles::type_a_letters(group.cartan()).is_ok() {
            reports.push(monk_oracle(group, &table)?);
        }
    }
    Ok(reports)
}
