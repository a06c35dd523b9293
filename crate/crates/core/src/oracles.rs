//! Brute-force reference implementations, used only to cross-check the
//! production code. They share nothing with it beyond the input Cartan
//! matrix and the polynomial ring.
//!
//! Group elements are modelled by where they send the regular vector `2ρ`
//! (the sum of the positive roots, in simple-root coordinates) under the
//! reflection action computed from a symmetrized bilinear form.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;

use crate::delta::WordCartanMatrix;
use crate::error::{Error, Result};
use crate::polyring::Polynomial;
use crate::rootsys::CartanMatrix;

/// Longest word accepted by [`naive_derived_poly`].
pub const MAX_NAIVE_WORD: usize = 15;

const ORACLE_CAP: usize = 20_000;

/// A Weyl group built from scratch by its orbit on `2ρ`.
#[derive(Debug, Clone)]
pub struct OracleGroup {
    rank: usize,
    cartan: Vec<Vec<i64>>,
    /// `(α_i, α_i) / 2`, up to a common factor per connected component.
    half_norms: Vec<i64>,
    positive_roots: Vec<Vec<i64>>,
    images: Vec<Vec<i64>>,
    words: Vec<Vec<usize>>,
    lengths: Vec<usize>,
    index: HashMap<Vec<i64>, usize>,
    right: Vec<Vec<usize>>,
}

impl OracleGroup {
    pub fn new(cartan: &CartanMatrix) -> Result<Self> {
        let rank = cartan.rank();
        let c = cartan.rows();
        let half_norms = symmetrizer(&c);
        let mut group = OracleGroup {
            rank,
            cartan: c,
            half_norms,
            positive_roots: Vec::new(),
            images: Vec::new(),
            words: Vec::new(),
            lengths: Vec::new(),
            index: HashMap::new(),
            right: Vec::new(),
        };
        group.positive_roots = group.root_closure()?;
        let mut rho2 = vec![0i64; rank];
        for root in &group.positive_roots {
            for (r, x) in rho2.iter_mut().zip(root) {
                *r += x;
            }
        }
        // Left multiplication s_i w; the word of s_i w is i followed by the
        // word of w.
        let mut queue = VecDeque::from([(rho2, Vec::new())]);
        while let Some((image, word)) = queue.pop_front() {
            if group.index.contains_key(&image) {
                continue;
            }
            if group.images.len() >= ORACLE_CAP {
                return Err(Error::GroupTooLarge { cap: ORACLE_CAP });
            }
            group.index.insert(image.clone(), group.images.len());
            group.lengths.push(group.count_negative_pairings(&image));
            for i in 0..rank {
                let next = group.reflect(i, &image);
                if !group.index.contains_key(&next) {
                    let mut w = vec![i];
                    w.extend(&word);
                    queue.push_back((next, w));
                }
            }
            group.images.push(image);
            group.words.push(word);
        }
        group.right = (0..group.order())
            .map(|x| {
                (0..rank)
                    .map(|i| {
                        let mut word = group.words[x].clone();
                        word.push(i);
                        group.element_of(&word)
                    })
                    .collect()
            })
            .collect();
        Ok(group)
    }

    fn root_closure(&self) -> Result<Vec<Vec<i64>>> {
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = (0..self.rank)
            .map(|i| (0..self.rank).map(|j| i64::from(i == j)).collect())
            .collect();
        while let Some(root) = queue.pop_front() {
            if root.iter().any(|x| x.abs() > 1_000) || seen.len() > ORACLE_CAP {
                return Err(Error::NotFiniteType { cap: ORACLE_CAP });
            }
            if !seen.insert(root.clone()) {
                continue;
            }
            for i in 0..self.rank {
                queue.push_back(self.reflect(i, &root));
            }
        }
        let mut positive: Vec<Vec<i64>> = seen.into_iter().filter(|r| r.iter().all(|&x| x >= 0)).collect();
        positive.sort();
        Ok(positive)
    }

    /// `s_i(β) = β - <β, α_i^∨> α_i`.
    pub fn reflect(&self, i: usize, beta: &[i64]) -> Vec<i64> {
        let pairing: i64 = (0..self.rank).map(|j| beta[j] * self.cartan[j][i]).sum();
        let mut out = beta.to_vec();
        out[i] -= pairing;
        out
    }

    /// `(β, γ)` for the symmetrized form.
    pub fn inner(&self, beta: &[i64], gamma: &[i64]) -> i64 {
        let mut total = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                total += beta[i] * gamma[j] * self.cartan[i][j] * self.half_norms[j];
            }
        }
        total
    }

    fn count_negative_pairings(&self, image: &[i64]) -> usize {
        self.positive_roots.iter().filter(|g| self.inner(image, g) < 0).count()
    }

    /// Applies `s_{i_1} ... s_{i_m}` to a vector.
    pub fn apply_word(&self, word: &[usize], v: &[i64]) -> Vec<i64> {
        word.iter().rev().fold(v.to_vec(), |acc, &i| self.reflect(i, &acc))
    }

    pub fn order(&self) -> usize {
        self.images.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// Index of the element a word evaluates to.
    pub fn element_of(&self, word: &[usize]) -> usize {
        let image = self.apply_word(word, &self.images[0]);
        self.index[&image]
    }

    pub fn length(&self, x: usize) -> usize {
        self.lengths[x]
    }

    /// Some reduced word of `x`.
    pub fn word(&self, x: usize) -> &[usize] {
        &self.words[x]
    }

    /// Index of `x · s_i`.
    pub fn right_mul(&self, x: usize, i: usize) -> usize {
        self.right[x][i]
    }

    /// Whether some subword of the stored reduced word of `w` is a reduced
    /// word of `u`.
    pub fn bruhat_leq(&self, u: usize, w: usize) -> bool {
        let word = &self.words[w];
        let target = self.lengths[u];
        (0u64..1 << word.len()).any(|mask| {
            if mask.count_ones() as usize != target {
                return false;
            }
            let sub: Vec<usize> = (0..word.len()).filter(|k| mask >> k & 1 == 1).map(|k| word[k]).collect();
            self.element_of(&sub) == u
        })
    }

    /// Derived-sequence test by the greedy right-to-left scan.
    pub fn is_derived(&self, seq: &[usize], w: usize) -> bool {
        let mut cur = w;
        for &b in seq.iter().rev() {
            let next = self.right_mul(cur, b);
            if self.lengths[next] < self.lengths[cur] {
                cur = next;
            }
        }
        self.lengths[cur] == 0
    }

    /// Derived-sequence test straight from the definition: among all index
    /// subsequences along which the length drops at every step, take the
    /// largest in inverse-lexicographic order and ask whether it has
    /// `l(w)` entries.
    pub fn is_derived_by_definition(&self, seq: &[usize], w: usize) -> bool {
        let m = seq.len();
        let mut best: Option<Vec<usize>> = None;
        for mask in 0u64..1 << m {
            // indices in decreasing order: i_k, i_{k-1}, ...
            let picked: Vec<usize> = (0..m).rev().filter(|k| mask >> k & 1 == 1).collect();
            let mut cur = w;
            let mut ok = true;
            for &k in &picked {
                let next = self.right_mul(cur, seq[k]);
                if self.lengths[next] >= self.lengths[cur] {
                    ok = false;
                    break;
                }
                cur = next;
            }
            if ok && best.as_ref().is_none_or(|b| picked > *b) {
                best = Some(picked);
            }
        }
        best.is_some_and(|b| b.len() == self.lengths[w])
    }

    /// Degree-one products in cohomology:
    /// `σ_{s_i} σ_v = Σ <ω_i, γ^∨> σ_{v s_γ}` over positive roots `γ` with
    /// `l(v s_γ) = l(v) + 1`.
    pub fn chevalley(&self, i: usize, v: usize) -> BTreeMap<usize, i64> {
        let mut out = BTreeMap::new();
        for gamma in &self.positive_roots {
            // v s_γ = s_{vγ} v
            let moved = self.apply_word(&self.words[v], gamma);
            let pairing = 2 * self.inner(&self.images[v], &moved) / self.inner(&moved, &moved);
            let image: Vec<i64> = self.images[v].iter().zip(&moved).map(|(x, r)| x - pairing * r).collect();
            let w = self.index[&image];
            if self.lengths[w] != self.lengths[v] + 1 {
                continue;
            }
            let numerator = gamma[i] * 2 * self.half_norms[i];
            let coefficient = numerator / self.inner(gamma, gamma);
            if coefficient != 0 {
                out.insert(w, coefficient);
            }
        }
        out
    }
}

/// Positive `d_i` with `C[i][j] d_j = C[j][i] d_i`.
fn symmetrizer(c: &[Vec<i64>]) -> Vec<i64> {
    let n = c.len();
    let mut d = vec![0i64; n];
    for start in 0..n {
        if d[start] != 0 {
            continue;
        }
        d[start] = 1;
        let mut component = vec![start];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i == j || c[i][j] == 0 || d[j] != 0 {
                    continue;
                }
                let num = c[j][i] * d[i];
                if num % c[i][j] != 0 {
                    for &k in &component {
                        d[k] *= c[i][j].abs();
                    }
                }
                d[j] = c[j][i] * d[i] / c[i][j];
                component.push(j);
                stack.push(j);
            }
        }
    }
    d
}

/// `Σ y_L` over the subsets `L` of positions whose subsequence is derived
/// for `w`, by enumerating all `2^m` subsets.
pub fn naive_derived_poly(group: &OracleGroup, word: &[usize], w: usize) -> Result<Polynomial> {
    let m = word.len();
    if m > MAX_NAIVE_WORD {
        return Err(Error::WordTooLong {
            len: m,
            max: MAX_NAIVE_WORD,
        });
    }
    let mut total = Polynomial::zero(m);
    for mask in 0u32..1 << m {
        let positions: Vec<usize> = (0..m).filter(|k| mask >> k & 1 == 1).collect();
        let seq: Vec<usize> = positions.iter().map(|&k| word[k]).collect();
        if group.is_derived(&seq, w) {
            total = &total + &Polynomial::square_free(m, positions);
        }
    }
    Ok(total)
}

/// Top coefficient of the Grothendieck image of `w`: the signed count
/// `Σ (-1)^{l(u)}` over the `u ≥ w` for which the whole word is derived.
pub fn naive_top_grothendieck(group: &OracleGroup, word: &[usize], w: usize) -> i64 {
    (0..group.order())
        .filter(|&u| group.bruhat_leq(w, u) && group.is_derived(word, u))
        .map(|u| if group.length(u).is_multiple_of(2) { 1 } else { -1 })
        .sum()
}

/// The relation polynomials `q̄_1, ..., q̄_m`, truncated to degree `max`.
fn relation_polynomials(a: &WordCartanMatrix, max: u32) -> Vec<Polynomial> {
    let m = a.size();
    let one = Polynomial::one(m);
    let mut q: Vec<Polynomial> = Vec::with_capacity(m);
    let mut qbar: Vec<Polynomial> = Vec::with_capacity(m);
    for k in 0..m {
        let mut qk = one.clone();
        let mut qbk = one.clone();
        for i in 0..k {
            let entry = a.get(i, k);
            let y = Polynomial::var(m, i);
            let plus = &one + &y;
            let minus = &one - &(&q[i] * &y).truncate(max);
            for _ in 0..entry.unsigned_abs() {
                if entry > 0 {
                    qk = (&qk * &plus).truncate(max);
                    qbk = (&qbk * &minus).truncate(max);
                } else {
                    qk = (&qk * &minus).truncate(max);
                    qbk = (&qbk * &plus).truncate(max);
                }
            }
        }
        q.push(qk);
        qbar.push(qbk);
    }
    qbar
}

/// Coefficient of `y_1 ⋯ y_m` in the normal form of `f` modulo
/// `y_k^2 = (q̄_k - 1) y_k`, by repeated rewriting of the highest square.
/// Monomials above degree `m` are dropped, since rewriting never lowers
/// degree.
pub fn normal_form_coefficient(f: &Polynomial, a: &WordCartanMatrix) -> BigInt {
    let m = a.size();
    let bound = m as u32;
    let shifted: Vec<Polynomial> = relation_polynomials(a, bound)
        .into_iter()
        .map(|q| &q - &Polynomial::one(m))
        .collect();
    let mut current = f.truncate(bound);
    loop {
        let square = current.terms().find_map(|(mono, _)| {
            (0..m).rev().find(|&k| mono.exponent(k) >= 2).map(|k| (mono.clone(), k))
        });
        let Some((mono, k)) = square else { break };
        let coefficient = current.coefficient(mono.exponents());
        let mut exps = mono.exponents().to_vec();
        let term = Polynomial::monomial(&exps, coefficient.clone());
        exps[k] -= 1;
        let lowered = Polynomial::monomial(&exps, coefficient);
        current = &current - &term;
        current = &current + &(&lowered * &shifted[k]).truncate(bound);
    }
    current.coefficient(&vec![1; m])
}

/// The rank `n - 1` of a type `A_{n-1}` Cartan matrix whose Dynkin diagram
/// is the path `1 - 2 - ... - (n-1)` in index order.
pub fn type_a_letters(cartan: &CartanMatrix) -> Result<usize> {
    let r = cartan.rank();
    for i in 0..r {
        for j in 0..r {
            let expected = if i == j {
                2
            } else if i.abs_diff(j) == 1 {
                -1
            } else {
                0
            };
            if cartan.get(i, j) != expected {
                return Err(Error::NotTypeA);
            }
        }
    }
    Ok(r + 1)
}

/// One-line notation of `s_{i_1} ∘ ... ∘ s_{i_m}` on `n` letters, with
/// `s_i` the transposition of `i` and `i + 1` (0-based).
pub fn permutation_of_word(word: &[usize], n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for &i in word {
        perm.swap(i, i + 1);
    }
    perm
}

pub fn inversions(perm: &[usize]) -> usize {
    let mut count = 0;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                count += 1;
            }
        }
    }
    count
}

/// Monk's rule: `σ_{s_k} σ_u = Σ σ_{u t_{ab}}` over transpositions of
/// positions `a ≤ k < b` that raise the inversion count by exactly one.
pub fn monk_product(u: &[usize], k: usize, n: usize) -> Result<BTreeMap<Vec<usize>, i64>> {
    if u.len() != n || k + 1 >= n {
        return Err(Error::NotTypeA);
    }
    let base = inversions(u);
    let mut out = BTreeMap::new();
    for a in 0..=k {
        for b in k + 1..n {
            let mut w = u.to_vec();
            w.swap(a, b);
            if inversions(&w) == base + 1 {
                out.insert(w, 1);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle(name: &str) -> OracleGroup {
        OracleGroup::new(&CartanMatrix::named(name).unwrap()).unwrap()
    }

    #[test]
    fn orders_and_lengths() {
        for (name, order, top) in [("A2", 6, 3), ("B2", 8, 4), ("G2", 12, 6), ("A3", 24, 6), ("B3", 48, 9)] {
            let g = oracle(name);
            assert_eq!(g.order(), order, "{name}");
            assert_eq!((0..g.order()).map(|x| g.length(x)).max(), Some(top), "{name}");
        }
    }

    #[test]
    fn symmetrizer_g2() {
        let g = oracle("G2");
        // α1 short, α2 long
        assert_eq!(g.half_norms[1], 3 * g.half_norms[0]);
    }

    #[test]
    fn subword_bruhat_a2() {
        let g = oracle("A2");
        let s1s2 = g.element_of(&[0, 1]);
        let s2s1 = g.element_of(&[1, 0]);
        assert!(!g.bruhat_leq(s1s2, s2s1));
        assert!(!g.bruhat_leq(s2s1, s1s2));
        for x in 0..g.order() {
            assert!(g.bruhat_leq(0, x));
        }
    }

    #[test]
    fn naive_derived_examples() {
        let g = oracle("A2");
        let e = g.element_of(&[]);
        let p = naive_derived_poly(&g, &[0, 1, 0], e).unwrap();
        assert_eq!(p, Polynomial::parse("(1+y1)*(1+y2)*(1+y3)", 3).unwrap());
        let s1 = g.element_of(&[0]);
        let p = naive_derived_poly(&g, &[0, 1, 0], s1).unwrap();
        assert_eq!(p, Polynomial::parse("y1 + y3 + y1*y3 + y1*y2 + y2*y3 + y1*y2*y3", 3).unwrap());
        assert_eq!(
            naive_derived_poly(&g, &[0; 16], e).unwrap_err(),
            Error::WordTooLong { len: 16, max: 15 }
        );
    }

    #[test]
    fn greedy_matches_definition() {
        for name in ["A2", "B2", "G2"] {
            let g = oracle(name);
            for len in 0..=6usize {
                for code in 0..2usize.pow(len as u32) {
                    let seq: Vec<usize> = (0..len).map(|k| code >> k & 1).collect();
                    for w in 0..g.order() {
                        assert_eq!(
                            g.is_derived(&seq, w),
                            g.is_derived_by_definition(&seq, w),
                            "{name} {seq:?} {w}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn normal_form_small() {
        let a = WordCartanMatrix::zeros(1);
        assert_eq!(normal_form_coefficient(&Polynomial::var(1, 0), &a), BigInt::from(1));
        let sq = Polynomial::parse("y1^2", 1).unwrap();
        assert_eq!(normal_form_coefficient(&sq, &a), BigInt::from(0));
        let a = WordCartanMatrix::new(vec![vec![0, -1], vec![0, 0]]).unwrap();
        // y2^2 = (q̄_2 - 1) y2 with q̄_2 = 1 + y1
        let f = Polynomial::parse("y2^2", 2).unwrap();
        assert_eq!(normal_form_coefficient(&f, &a), BigInt::from(1));
    }

    #[test]
    fn monk_examples() {
        assert_eq!(monk_product(&[0, 1, 2], 0, 3).unwrap(), BTreeMap::from([(vec![1, 0, 2], 1)]));
        let s1 = permutation_of_word(&[0], 3);
        let expected: BTreeMap<Vec<usize>, i64> = [permutation_of_word(&[0, 1], 3), permutation_of_word(&[1, 0], 3)]
            .into_iter()
            .map(|p| (p, 1))
            .collect();
        assert_eq!(monk_product(&s1, 1, 3).unwrap(), expected);
        assert_eq!(
            type_a_letters(&CartanMatrix::named("B2").unwrap()).unwrap_err(),
            Error::NotTypeA
        );
        assert_eq!(type_a_letters(&CartanMatrix::named("A3").unwrap()).unwrap(), 4);
    }

    #[test]
    fn chevalley_a2() {
        let g = oracle("A2");
        let e = g.element_of(&[]);
        let s1 = g.element_of(&[0]);
        assert_eq!(g.chevalley(0, e), BTreeMap::from([(s1, 1)]));
        assert_eq!(g.chevalley(0, s1).len(), 1);
        let out = g.chevalley(0, g.element_of(&[1]));
        assert_eq!(out.len(), 2);
        assert!(out.values().all(|&c| c == 1));
    }
}
