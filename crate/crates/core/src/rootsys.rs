//! Cartan matrices, finite Weyl groups and their combinatorics.
//!
//! The entry at row `i`, column `j` of a [`CartanMatrix`] is the Cartan
//! number `β_i ∘ β_j = 2(β_i, β_j)/(β_j, β_j)`. A Weyl group element is
//! stored as the integer matrix of its action on the simple roots: column `j`
//! holds the coordinates of `w(α_j)`. The simple reflection `r_i` acts by
//! `r_i(α_j) = α_j - (β_j ∘ β_i) α_i`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on the size of a generated Weyl group.
pub const DEFAULT_GROUP_CAP: usize = 200_000;

/// A validated Cartan matrix of finite type.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct CartanMatrix {
    rank: usize,
    entries: Vec<i64>,
}

impl CartanMatrix {
    /// Validates a square integer matrix, including the finite-type check by
    /// bounded group generation with [`DEFAULT_GROUP_CAP`].
    pub fn new(raw: Vec<Vec<i64>>) -> Result<Self> {
        Self::with_cap(raw, DEFAULT_GROUP_CAP)
    }

    pub fn with_cap(raw: Vec<Vec<i64>>, cap: usize) -> Result<Self> {
        let c = Self::structural(raw)?;
        match WeylGroup::generate_with_cap(&c, cap) {
            Ok(_) => Ok(c),
            Err(Error::GroupTooLarge { cap }) => Err(Error::NotFiniteType { cap }),
            Err(e) => Err(e),
        }
    }

    /// Checks the sign and zero-pattern axioms only.
    fn structural(raw: Vec<Vec<i64>>) -> Result<Self> {
        let rank = raw.len();
        if raw.iter().any(|row| row.len() != rank) {
            return Err(Error::NonCartan("matrix is not square".into()));
        }
        for i in 0..rank {
            if raw[i][i] != 2 {
                return Err(Error::NonCartan(format!("diagonal entry ({i},{i}) is not 2")));
            }
            for j in 0..rank {
                if i == j {
                    continue;
                }
                let a = raw[i][j];
                if !(-3..=0).contains(&a) {
                    return Err(Error::NonCartan(format!(
                        "off-diagonal entry ({i},{j}) = {a} is not in {{0,-1,-2,-3}}"
                    )));
                }
                if (a == 0) != (raw[j][i] == 0) {
                    return Err(Error::NonCartan(format!(
                        "entries ({i},{j}) and ({j},{i}) have different zero pattern"
                    )));
                }
            }
        }
        Ok(CartanMatrix {
            rank,
            entries: raw.into_iter().flatten().collect(),
        })
    }

    /// A named finite type such as `A3`, `B2`, `G2` or `F4`.
    ///
    /// Simple roots follow the Bourbaki numbering: in `B_n` the last root is
    /// short, in `C_n` the last root is long, in `F4` the roots 3 and 4 are
    /// short and in `G2` the first root is short.
    pub fn named(name: &str) -> Result<Self> {
        let name = name.trim();
        let bad = || Error::Parse(format!("unknown Cartan type {name:?}"));
        let mut chars = name.chars();
        let family = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        // (i, j, value) entries off the diagonal, 0-based.
        let mut off: Vec<(usize, usize, i64)> = Vec::new();
        let chain = |n: usize, off: &mut Vec<(usize, usize, i64)>| {
            for i in 1..n {
                off.push((i - 1, i, -1));
                off.push((i, i - 1, -1));
            }
        };
        match (family, n) {
            ('A', n) if n >= 1 => chain(n, &mut off),
            ('B', n) if n >= 2 => {
                chain(n, &mut off);
                // long α_{n-1}, short α_n
                set(&mut off, n - 2, n - 1, -2);
            }
            ('C', n) if n >= 2 => {
                chain(n, &mut off);
                set(&mut off, n - 1, n - 2, -2);
            }
            ('D', n) if n >= 4 => {
                chain(n - 1, &mut off);
                off.push((n - 3, n - 1, -1));
                off.push((n - 1, n - 3, -1));
            }
            ('E', 6..=8) => {
                // Bourbaki: 1-3-4-5-6(-7-8) with 2 attached to 4.
                let edges: &[(usize, usize)] = &[(1, 3), (3, 4), (4, 5), (5, 6), (2, 4), (6, 7), (7, 8)];
                for &(a, b) in edges.iter().filter(|(a, b)| *a <= n && *b <= n) {
                    off.push((a - 1, b - 1, -1));
                    off.push((b - 1, a - 1, -1));
                }
            }
            ('F', 4) => {
                chain(4, &mut off);
                set(&mut off, 1, 2, -2);
            }
            ('G', 2) => {
                off.push((0, 1, -1));
                off.push((1, 0, -3));
            }
            _ => return Err(bad()),
        }
        let mut raw = vec![vec![0; n]; n];
        for (i, row) in raw.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j, v) in off {
            raw[i][j] = v;
        }
        Self::new(raw)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `β_i ∘ β_j` for 0-based indices.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.rank + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.rank.max(1)).take(self.rank).map(<[i64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> CartanMatrix {
        let n = self.rank;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.get(i, j);
            }
        }
        CartanMatrix { rank: n, entries }
    }
}

fn set(off: &mut [(usize, usize, i64)], i: usize, j: usize, v: i64) {
    for e in off.iter_mut() {
        if e.0 == i && e.1 == j {
            e.2 = v;
        }
    }
}

impl TryFrom<Vec<Vec<i64>>> for CartanMatrix {
    type Error = Error;
    fn try_from(raw: Vec<Vec<i64>>) -> Result<Self> {
        CartanMatrix::new(raw)
    }
}

impl From<CartanMatrix> for Vec<Vec<i64>> {
    fn from(c: CartanMatrix) -> Self {
        c.rows()
    }
}

/// Validates a raw matrix as a finite-type Cartan matrix.
pub fn validate_cartan(raw: Vec<Vec<i64>>) -> Result<CartanMatrix> {
    CartanMatrix::new(raw)
}

/// Index of an element in its [`WeylGroup`], in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ElementId(pub usize);

impl ElementId {
    pub const IDENTITY: ElementId = ElementId(0);

    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A Weyl group element: its action on the simple roots and its length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    action: Box<[i32]>,
    length: usize,
}

impl WeylElement {
    /// Row-major `n x n` matrix; column `j` is the image of `α_j`.
    pub fn action(&self) -> &[i32] {
        &self.action
    }

    pub fn length(&self) -> usize {
        self.length
    }
}

/// A sequence of simple-root indices (0-based) together with the element it
/// evaluates to, when that sequence is reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord {
    indices: Vec<usize>,
    element: ElementId,
}

impl ReducedWord {
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn element(&self) -> ElementId {
        self.element
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Minimal left coset representatives for a standard parabolic subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicDatum {
    pub subset: BTreeSet<usize>,
    pub reps: Vec<ElementId>,
}

impl ParabolicDatum {
    pub fn contains(&self, w: ElementId) -> bool {
        self.reps.binary_search(&w).is_ok()
    }
}

/// A finite Weyl group, fully enumerated.
///
/// Elements are sorted by length and then by their lexicographically
/// smallest reduced word; [`ElementId`] indexes this order, so the identity
/// is always `ElementId(0)`.
#[derive(Debug)]
pub struct WeylGroup {
    cartan: CartanMatrix,
    elements: Vec<WeylElement>,
    words: Vec<Vec<usize>>,
    index: HashMap<Box<[i32]>, ElementId>,
    right: Vec<Vec<ElementId>>,
    left: Vec<Vec<ElementId>>,
    positive_roots: Vec<Vec<i32>>,
    bruhat: OnceLock<Vec<bool>>,
}

impl WeylGroup {
    pub fn generate(cartan: &CartanMatrix) -> Result<Self> {
        Self::generate_with_cap(cartan, DEFAULT_GROUP_CAP)
    }

    pub fn generate_with_cap(cartan: &CartanMatrix, cap: usize) -> Result<Self> {
        let n = cartan.rank();
        let gens: Vec<Vec<i32>> = (0..n).map(|i| reflection(cartan, i)).collect();

        let identity: Box<[i32]> = identity(n).into();
        let mut actions: Vec<Box<[i32]>> = vec![identity.clone()];
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        let mut lengths = vec![0usize];
        let mut index: HashMap<Box<[i32]>, ElementId> = HashMap::new();
        index.insert(identity, ElementId(0));

        // Breadth-first by right multiplication. Layers are visited in
        // lexicographic order of their minimal words and generators in
        // increasing order, so the first word reaching an element is its
        // lexicographically smallest reduced word and each new layer comes
        // out already sorted.
        let mut layer_start = 0;
        while layer_start < actions.len() {
            let layer_end = actions.len();
            for x in layer_start..layer_end {
                for (i, g) in gens.iter().enumerate() {
                    let prod: Box<[i32]> = checked_matmul(&actions[x], g, n)
                        .ok_or(Error::GroupTooLarge { cap })?
                        .into();
                    if index.contains_key(&prod) {
                        continue;
                    }
                    if actions.len() >= cap {
                        return Err(Error::GroupTooLarge { cap });
                    }
                    let id = ElementId(actions.len());
                    index.insert(prod.clone(), id);
                    actions.push(prod);
                    let mut w = words[x].clone();
                    w.push(i);
                    words.push(w);
                    lengths.push(lengths[x] + 1);
                }
            }
            layer_start = layer_end;
        }

        let size = actions.len();
        let lookup = |m: &[i32]| *index.get(m).expect("group closed under generators");
        let right: Vec<Vec<ElementId>> = (0..size)
            .map(|x| gens.iter().map(|g| lookup(&matmul(&actions[x], g, n))).collect())
            .collect();
        let left: Vec<Vec<ElementId>> = (0..size)
            .map(|x| gens.iter().map(|g| lookup(&matmul(g, &actions[x], n))).collect())
            .collect();

        let positive_roots = positive_roots(&gens, n, cap)?;
        let elements = actions
            .into_iter()
            .map(|action| {
                let length = inversions(&action, &positive_roots, n);
                WeylElement { action, length }
            })
            .collect::<Vec<_>>();
        debug_assert!(elements.iter().zip(&lengths).all(|(e, &l)| e.length == l));

        Ok(WeylGroup {
            cartan: cartan.clone(),
            elements,
            words,
            index,
            right,
            left,
            positive_roots,
            bruhat: OnceLock::new(),
        })
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn ids(&self) -> impl DoubleEndedIterator<Item = ElementId> + ExactSizeIterator {
        (0..self.elements.len()).map(ElementId)
    }

    pub fn element(&self, w: ElementId) -> &WeylElement {
        &self.elements[w.0]
    }

    pub fn identity(&self) -> ElementId {
        ElementId::IDENTITY
    }

    pub fn length(&self, w: ElementId) -> usize {
        self.elements[w.0].length
    }

    pub fn sign(&self, w: ElementId) -> i64 {
        if self.length(w).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// The unique element of maximal length.
    pub fn longest(&self) -> ElementId {
        ElementId(self.elements.len() - 1)
    }

    pub fn positive_roots(&self) -> &[Vec<i32>] {
        &self.positive_roots
    }

    pub fn lookup(&self, action: &[i32]) -> Option<ElementId> {
        self.index.get(action).copied()
    }

    pub fn generator(&self, i: usize) -> ElementId {
        self.right[0][i]
    }

    /// `w · r_i`.
    pub fn mul_gen(&self, w: ElementId, i: usize) -> ElementId {
        self.right[w.0][i]
    }

    /// `r_i · w`.
    pub fn gen_mul(&self, i: usize, w: ElementId) -> ElementId {
        self.left[w.0][i]
    }

    pub fn mul(&self, u: ElementId, v: ElementId) -> ElementId {
        self.words[v.0].iter().fold(u, |acc, &i| self.mul_gen(acc, i))
    }

    pub fn inverse(&self, w: ElementId) -> ElementId {
        self.words[w.0]
            .iter()
            .rev()
            .fold(ElementId::IDENTITY, |acc, &i| self.mul_gen(acc, i))
    }

    pub fn is_right_descent(&self, w: ElementId, i: usize) -> bool {
        self.length(self.mul_gen(w, i)) < self.length(w)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank(),
            })
        }
    }

    /// Evaluates `r_{i_1} ⋯ r_{i_m}` for an arbitrary index sequence.
    pub fn evaluate(&self, word: &[usize]) -> Result<ElementId> {
        word.iter().try_fold(ElementId::IDENTITY, |acc, &i| {
            self.check_index(i)?;
            Ok(self.mul_gen(acc, i))
        })
    }

    /// Wraps `word` as a [`ReducedWord`], failing if it is not reduced.
    pub fn reduced_word(&self, word: &[usize]) -> Result<ReducedWord> {
        let element = self.evaluate(word)?;
        if self.length(element) != word.len() {
            return Err(Error::NotReduced {
                word: format_word(word),
            });
        }
        Ok(ReducedWord {
            indices: word.to_vec(),
            element,
        })
    }

    /// The lexicographically smallest reduced word of `w`.
    pub fn canonical_word(&self, w: ElementId) -> ReducedWord {
        ReducedWord {
            indices: self.words[w.0].clone(),
            element: w,
        }
    }

    /// All reduced words of `w`, sorted lexicographically.
    pub fn reduced_words(&self, w: ElementId) -> Vec<ReducedWord> {
        let mut out = Vec::new();
        let mut suffix = Vec::new();
        self.collect_words(w, &mut suffix, &mut out);
        out.sort();
        out.into_iter()
            .map(|mut indices| {
                indices.reverse();
                ReducedWord { indices, element: w }
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    fn collect_words(&self, w: ElementId, rev: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if w == ElementId::IDENTITY {
            out.push(rev.clone());
            return;
        }
        for i in 0..self.rank() {
            if self.is_right_descent(w, i) {
                rev.push(i);
                self.collect_words(self.mul_gen(w, i), rev, out);
                rev.pop();
            }
        }
    }

    fn bruhat_matrix(&self) -> &[bool] {
        self.bruhat.get_or_init(|| {
            let size = self.order();
            let mut table = vec![false; size * size];
            for w in self.ids() {
                for u in self.ids() {
                    table[u.0 * size + w.0] = self.bruhat_leq_uncached(u, w);
                }
            }
            table
        })
    }

    /// Recursion along the canonical reduced word of `w`: for a right descent
    /// `s` of `w`, `u ≤ w` iff `min(u, us) ≤ ws`.
    fn bruhat_leq_uncached(&self, mut u: ElementId, w: ElementId) -> bool {
        let word = &self.words[w.0];
        if self.length(u) > word.len() {
            return false;
        }
        for &s in word.iter().rev() {
            if self.is_right_descent(u, s) {
                u = self.mul_gen(u, s);
            }
        }
        u == ElementId::IDENTITY
    }

    /// Bruhat order `u ≤ w`.
    pub fn bruhat_leq(&self, u: ElementId, w: ElementId) -> bool {
        self.bruhat_matrix()[u.0 * self.order() + w.0]
    }

    /// Cover relations `u ⋖ w` of the Bruhat order, sorted.
    pub fn bruhat_covers(&self) -> Vec<(ElementId, ElementId)> {
        let mut out = Vec::new();
        for w in self.ids() {
            for u in self.ids() {
                if self.length(u) + 1 == self.length(w) && self.bruhat_leq(u, w) {
                    out.push((u, w));
                }
            }
        }
        out.sort();
        out
    }

    /// Minimal representatives of the left cosets `w W'` where `W'` is
    /// generated by `subset`. These are the elements without right descents
    /// in `subset`.
    pub fn minimal_coset_reps(&self, subset: &BTreeSet<usize>) -> Result<ParabolicDatum> {
        for &i in subset {
            self.check_index(i)?;
        }
        let reps = self
            .ids()
            .filter(|&w| subset.iter().all(|&i| !self.is_right_descent(w, i)))
            .collect();
        Ok(ParabolicDatum {
            subset: subset.clone(),
            reps,
        })
    }
}

/// Enumerates `W` for a validated Cartan matrix.
pub fn generate_weyl_group(cartan: &CartanMatrix) -> Result<WeylGroup> {
    WeylGroup::generate(cartan)
}

/// Renders a 0-based word as comma-separated 1-based indices.
pub fn format_word(word: &[usize]) -> String {
    word.iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Parses comma-separated 1-based indices into a 0-based word. The empty
/// string is the empty word.
pub fn parse_word(text: &str) -> Result<Vec<usize>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(i) if i >= 1 => Ok(i - 1),
            _ => Err(Error::Parse(format!("bad generator index {t:?}"))),
        })
        .collect()
}

fn identity(n: usize) -> Vec<i32> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

fn reflection(cartan: &CartanMatrix, i: usize) -> Vec<i32> {
    let n = cartan.rank();
    let mut m = identity(n);
    for j in 0..n {
        m[i * n + j] -= cartan.get(j, i) as i32;
    }
    m
}

/// Matrix product; `None` on overflow, which only happens for infinite groups.
fn checked_matmul(a: &[i32], b: &[i32], n: usize) -> Option<Vec<i32>> {
    let mut out = vec![0i32; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = out[i * n + j].checked_add(aik.checked_mul(b[k * n + j])?)?;
            }
        }
    }
    Some(out)
}

fn matmul(a: &[i32], b: &[i32], n: usize) -> Vec<i32> {
    checked_matmul(a, b, n).expect("finite group entries are small")
}

fn checked_apply(m: &[i32], v: &[i32], n: usize) -> Option<Vec<i32>> {
    (0..n)
        .map(|i| {
            (0..n).try_fold(0i32, |acc, k| acc.checked_add(m[i * n + k].checked_mul(v[k])?))
        })
        .collect()
}

fn apply(m: &[i32], v: &[i32], n: usize) -> Vec<i32> {
    checked_apply(m, v, n).expect("finite group entries are small")
}

/// Orbit of the simple roots under the generators, keeping the roots with
/// non-negative coordinates.
fn positive_roots(gens: &[Vec<i32>], n: usize, cap: usize) -> Result<Vec<Vec<i32>>> {
    let mut seen: BTreeSet<Vec<i32>> = BTreeSet::new();
    let mut queue: VecDeque<Vec<i32>> = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(r) = queue.pop_front() {
        for g in gens {
            let image = checked_apply(g, &r, n).ok_or(Error::GroupTooLarge { cap })?;
            if seen.insert(image.clone()) {
                if seen.len() > cap {
                    return Err(Error::GroupTooLarge { cap });
                }
                queue.push_back(image);
            }
        }
    }
    Ok(seen.into_iter().filter(|r| r.iter().all(|&c| c >= 0)).collect())
}

fn inversions(action: &[i32], positive: &[Vec<i32>], n: usize) -> usize {
    positive
        .iter()
        .filter(|r| apply(action, r, n).iter().any(|&c| c < 0))
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(name: &str) -> WeylGroup {
        WeylGroup::generate(&CartanMatrix::named(name).unwrap()).unwrap()
    }

    fn w(g: &WeylGroup, word: &[usize]) -> ElementId {
        g.evaluate(&word.iter().map(|i| i - 1).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(validate_cartan(vec![vec![2, -1], vec![-1, 2]]).is_ok());
        let g2 = validate_cartan(vec![vec![2, -1], vec![-3, 2]]).unwrap();
        assert_eq!(WeylGroup::generate(&g2).unwrap().order(), 12);
        assert!(matches!(
            validate_cartan(vec![vec![2, 1], vec![1, 2]]),
            Err(Error::NonCartan(_))
        ));
    }

    #[test]
    fn validate_rejects_malformed() {
        assert!(matches!(validate_cartan(vec![vec![2, -1]]), Err(Error::NonCartan(_))));
        assert!(matches!(
            validate_cartan(vec![vec![1, 0], vec![0, 2]]),
            Err(Error::NonCartan(_))
        ));
        assert!(matches!(
            validate_cartan(vec![vec![2, -1], vec![0, 2]]),
            Err(Error::NonCartan(_))
        ));
        assert!(matches!(
            validate_cartan(vec![vec![2, -4], vec![-1, 2]]),
            Err(Error::NonCartan(_))
        ));
    }

    #[test]
    fn affine_type_is_not_finite() {
        let affine = vec![vec![2, -2], vec![-2, 2]];
        assert_eq!(
            CartanMatrix::with_cap(affine, 500),
            Err(Error::NotFiniteType { cap: 500 })
        );
        let hyperbolic = vec![vec![2, -3], vec![-3, 2]];
        assert!(CartanMatrix::with_cap(hyperbolic, 500).is_err());
    }

    #[test]
    fn rank_zero_is_trivial() {
        let c = validate_cartan(Vec::new()).unwrap();
        let g = WeylGroup::generate(&c).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.reduced_words(g.identity()).len(), 1);
    }

    #[test]
    fn group_orders() {
        for (name, order) in [
            ("A1", 2),
            ("A2", 6),
            ("A3", 24),
            ("B2", 8),
            ("C3", 48),
            ("B3", 48),
            ("D4", 192),
            ("G2", 12),
            ("F4", 1152),
        ] {
            assert_eq!(group(name).order(), order, "{name}");
        }
    }

    #[test]
    fn group_too_large() {
        let c = CartanMatrix::named("A3").unwrap();
        assert_eq!(
            WeylGroup::generate_with_cap(&c, 10).unwrap_err(),
            Error::GroupTooLarge { cap: 10 }
        );
    }

    #[test]
    fn g2_longest_element() {
        let g = group("G2");
        let w0 = g.longest();
        assert_eq!(g.length(w0), 6);
        assert_eq!(w(&g, &[1, 2, 1, 2, 1, 2]), w0);
        assert_eq!(g.ids().filter(|&x| g.length(x) == 6).count(), 1);
        assert_ne!(w(&g, &[1, 2, 1, 2, 1]), w(&g, &[2, 1, 2, 1, 2]));
    }

    #[test]
    fn length_examples() {
        let g = group("G2");
        assert_eq!(g.length(g.identity()), 0);
        assert_eq!(g.length(g.generator(0)), 1);
        assert_eq!(g.length(g.generator(1)), 1);
        assert_eq!(g.positive_roots().len(), 6);
    }

    #[test]
    fn canonical_order_is_by_length_then_word() {
        let g = group("B3");
        let keys: Vec<_> = g
            .ids()
            .map(|x| (g.length(x), g.canonical_word(x).indices().to_vec()))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        for x in g.ids() {
            let words = g.reduced_words(x);
            assert_eq!(words[0], g.canonical_word(x));
        }
    }

    #[test]
    fn reduced_words_examples() {
        let g = group("A2");
        assert_eq!(g.reduced_words(g.identity())[0].indices(), &[] as &[usize]);
        let words: Vec<Vec<usize>> = g
            .reduced_words(g.longest())
            .iter()
            .map(|r| r.indices().to_vec())
            .collect();
        assert_eq!(words, vec![vec![0, 1, 0], vec![1, 0, 1]]);
        let a3 = group("A3");
        assert_eq!(a3.reduced_words(a3.longest()).len(), 16);
    }

    #[test]
    fn reduced_word_rejects_non_reduced() {
        let g = group("A2");
        assert!(matches!(g.reduced_word(&[0, 0]), Err(Error::NotReduced { .. })));
        assert!(matches!(g.evaluate(&[2]), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn bruhat_examples() {
        let g = group("A2");
        for x in g.ids() {
            assert!(g.bruhat_leq(g.identity(), x));
            assert!(g.bruhat_leq(x, x));
        }
        assert!(g.bruhat_leq(w(&g, &[1]), w(&g, &[1, 2])));
        assert!(!g.bruhat_leq(w(&g, &[1, 2]), w(&g, &[2, 1])));
        assert!(!g.bruhat_leq(w(&g, &[2, 1]), w(&g, &[1, 2])));
    }

    #[test]
    fn coset_reps_examples() {
        let g = group("A2");
        let all: BTreeSet<usize> = [0, 1].into();
        assert_eq!(g.minimal_coset_reps(&all).unwrap().reps, vec![g.identity()]);
        let none = BTreeSet::new();
        assert_eq!(g.minimal_coset_reps(&none).unwrap().reps.len(), 6);
        let reps = g.minimal_coset_reps(&[0].into()).unwrap().reps;
        assert_eq!(reps, vec![g.identity(), w(&g, &[2]), w(&g, &[1, 2])]);
        assert!(g.minimal_coset_reps(&[5].into()).is_err());
    }

    #[test]
    fn word_parsing() {
        assert_eq!(parse_word("").unwrap(), Vec::<usize>::new());
        assert_eq!(parse_word("1,2, 1").unwrap(), vec![0, 1, 0]);
        assert!(parse_word("0").is_err());
        assert!(parse_word("1,,2").is_err());
        assert_eq!(format_word(&[0, 1, 0]), "1,2,1");
    }

    #[test]
    fn named_types_are_transposes_where_expected() {
        let b = CartanMatrix::named("B3").unwrap();
        let c = CartanMatrix::named("C3").unwrap();
        assert_eq!(b.transpose(), c);
        assert_eq!(CartanMatrix::named("G2").unwrap().rows(), vec![vec![2, -1], vec![-3, 2]]);
        assert!(CartanMatrix::named("Q7").is_err());
    }
}
