//! Structure constants `a_u a_v = Σ C_{u,v}^w a_w` and
//! `Ω_u Ω_v = Σ K_{u,v}^w Ω_w`.
//!
//! Both are computed one target `w` at a time, in increasing length. For a
//! reduced word `(β_1, ..., β_m)` of `w` the Demazure constant satisfies
//!
//! ```text
//! (-1)^{l(w)} C_{u,v}^w = (-1)^{l(u)+l(v)} Δ_{A_w}[P(u) P(v)]_(m)
//!                         - Σ (-1)^{l(x)} C_{u,v}^x
//! ```
//!
//! with the sum over `l(u)+l(v) ≤ l(x) ≤ l(w)-1` and `(β_1, ..., β_m) ∼ x`,
//! and the Grothendieck constant satisfies
//!
//! ```text
//! (-1)^{l(w)} K_{u,v}^w = Δ_{A_w}[B(u) B(v)]_(m) - Σ b_{[1..m]}(x) K_{u,v}^x
//! ```
//!
//! with the sum over `x < w`, `l(x) ≥ l(u)+l(v)`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::delta::{DeltaOperator, WordCartanMatrix};
use crate::derived::{demazure_image, grothendieck_from_demazure, is_derived, Basis, ImagePolynomials, SquareMatrix};
use crate::error::{Error, Result};
use crate::rootsys::{CartanMatrix, ElementId, ParabolicDatum, ReducedWord, WeylGroup};

/// Largest group for which [`full_table`] builds a dense table by default.
pub const DEFAULT_TABLE_CAP: usize = 200;

/// Everything about one reduced word of `w` that is shared by all pairs
/// `(u, v)`.
#[derive(Debug)]
pub struct WordContext {
    element: ElementId,
    length: usize,
    delta: DeltaOperator,
    images: ImagePolynomials,
    /// Elements `x ≠ w` weighted in the correction sum: `(-1)^{l(x)}` for
    /// `(β_1..β_m) ∼ x` in the Demazure case, `b_{[1..m]}(x)` for the
    /// Grothendieck case.
    corrections: Vec<(ElementId, usize, i64)>,
}

impl WordContext {
    pub fn new(group: &WeylGroup, basis: Basis, word: &ReducedWord) -> Result<Self> {
        let indices = word.indices();
        let w = word.element();
        let a = WordCartanMatrix::from_word(indices, group.cartan())?;
        let demazure = demazure_image(group, indices)?;
        let (images, corrections) = match basis {
            Basis::Demazure => {
                let corrections = group
                    .ids()
                    .filter(|&x| x != w && is_derived(group, indices, x))
                    .map(|x| (x, group.length(x), group.sign(x)))
                    .collect();
                (demazure, corrections)
            }
            Basis::Grothendieck => {
                let images = grothendieck_from_demazure(group, &demazure);
                let corrections = group
                    .ids()
                    .filter(|&x| x != w)
                    .map(|x| (x, group.length(x), images.top_coefficient(x)))
                    .filter(|&(x, _, b)| b != 0 && group.bruhat_leq(x, w))
                    .collect();
                (images, corrections)
            }
        };
        Ok(WordContext {
            element: w,
            length: indices.len(),
            delta: DeltaOperator::new(&a),
            images,
            corrections,
        })
    }

    pub fn element(&self) -> ElementId {
        self.element
    }

    pub fn images(&self) -> &ImagePolynomials {
        &self.images
    }

    /// The constant at `w` for the pair `(u, v)`; `lower` supplies the
    /// constants at the correction elements.
    pub fn constant<F>(&self, group: &WeylGroup, u: ElementId, v: ElementId, lower: F) -> Result<i64>
    where
        F: Fn(ElementId) -> Option<i64>,
    {
        let m = self.length;
        let floor = group.length(u) + group.length(v);
        let product = self
            .images
            .get(u)
            .mul_truncated(self.images.get(v), m as u32)?;
        let mut rhs: BigInt = self.delta.apply(&product)?;
        if self.images.basis() == Basis::Demazure && floor % 2 == 1 {
            rhs = -rhs;
        }
        for &(x, lx, weight) in &self.corrections {
            let in_range = match self.images.basis() {
                Basis::Demazure => floor <= lx && lx < m,
                Basis::Grothendieck => floor <= lx,
            };
            if !in_range {
                continue;
            }
            let c = lower(x).ok_or(Error::MissingLowerConstant { element: x.0 })?;
            rhs -= BigInt::from(weight) * c;
        }
        if m % 2 == 1 {
            rhs = -rhs;
        }
        i64::try_from(&rhs).map_err(|_| Error::Overflow(rhs.to_string()))
    }
}

fn lookup(lower: &BTreeMap<ElementId, i64>) -> impl Fn(ElementId) -> Option<i64> + '_ {
    |x| lower.get(&x).copied()
}

/// `C_{u,v}^w` from a reduced word of `w` and the constants `C_{u,v}^x` of
/// the lower elements `x` that the word is derived for.
pub fn demazure_constant(
    group: &WeylGroup,
    u: ElementId,
    v: ElementId,
    word: &ReducedWord,
    lower: &BTreeMap<ElementId, i64>,
) -> Result<i64> {
    WordContext::new(group, Basis::Demazure, word)?.constant(group, u, v, lookup(lower))
}

/// `K_{u,v}^w` from a reduced word of `w` and the constants `K_{u,v}^x` for
/// `x < w`.
pub fn grothendieck_constant(
    group: &WeylGroup,
    u: ElementId,
    v: ElementId,
    word: &ReducedWord,
    lower: &BTreeMap<ElementId, i64>,
) -> Result<i64> {
    WordContext::new(group, Basis::Grothendieck, word)?.constant(group, u, v, lookup(lower))
}

/// Evaluates the recursions over a whole group, caching one
/// [`WordContext`] per element built from its canonical reduced word.
pub struct Calculator<'g> {
    group: &'g WeylGroup,
    basis: Basis,
    contexts: Vec<OnceLock<WordContext>>,
    unit_shortcut: bool,
}

impl<'g> Calculator<'g> {
    pub fn new(group: &'g WeylGroup, basis: Basis) -> Self {
        Calculator {
            group,
            basis,
            contexts: (0..group.order()).map(|_| OnceLock::new()).collect(),
            unit_shortcut: true,
        }
    }

    /// Disables the `K_{e,v}^w = δ_{v,w}` short cut so every Grothendieck
    /// constant goes through the recursion.
    pub fn without_unit_shortcut(mut self) -> Self {
        self.unit_shortcut = false;
        self
    }

    pub fn group(&self) -> &'g WeylGroup {
        self.group
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn context(&self, w: ElementId) -> &WordContext {
        self.contexts[w.0].get_or_init(|| {
            WordContext::new(self.group, self.basis, &self.group.canonical_word(w))
                .expect("canonical words are valid")
        })
    }

    pub fn constant<F>(&self, u: ElementId, v: ElementId, w: ElementId, lower: F) -> Result<i64>
    where
        F: Fn(ElementId) -> Option<i64>,
    {
        if self.unit_shortcut && self.basis == Basis::Grothendieck {
            let e = ElementId::IDENTITY;
            if u == e || v == e {
                let other = if u == e { v } else { u };
                return Ok(i64::from(other == w));
            }
        }
        self.context(w).constant(self.group, u, v, lower)
    }

    /// All nonzero coefficients of the product of the basis elements `u` and
    /// `v`.
    pub fn expand_product(&self, u: ElementId, v: ElementId) -> Result<BTreeMap<ElementId, i64>> {
        let mut all: Vec<Option<i64>> = vec![None; self.group.order()];
        for w in self.group.ids() {
            let c = self.constant(u, v, w, |x| all[x.0])?;
            all[w.0] = Some(c);
        }
        Ok(all
            .into_iter()
            .enumerate()
            .filter_map(|(i, c)| c.filter(|&c| c != 0).map(|c| (ElementId(i), c)))
            .collect())
    }

    /// Every constant of the group. Targets are processed in canonical
    /// order, pairs in parallel.
    pub fn full_table(&self) -> Result<ConstantTable> {
        let n = self.group.order();
        let mut values = vec![0i64; n * n * n];
        for w in self.group.ids() {
            let column: Vec<i64> = (0..n * n)
                .into_par_iter()
                .map(|pair| {
                    let (u, v) = (ElementId(pair / n), ElementId(pair % n));
                    self.constant(u, v, w, |x| Some(values[(pair * n) + x.0]))
                })
                .collect::<Result<_>>()?;
            for (pair, c) in column.into_iter().enumerate() {
                values[pair * n + w.0] = c;
            }
        }
        Ok(ConstantTable {
            basis: self.basis,
            cartan: self.group.cartan().clone(),
            elements: self.group.ids().collect(),
            values,
        })
    }
}

/// Coefficients of the product of two basis elements.
pub fn expand_product(
    group: &WeylGroup,
    basis: Basis,
    u: ElementId,
    v: ElementId,
) -> Result<BTreeMap<ElementId, i64>> {
    Calculator::new(group, basis).expand_product(u, v)
}

/// The dense table of all structure constants, refusing groups larger than
/// [`DEFAULT_TABLE_CAP`].
pub fn full_table(group: &WeylGroup, basis: Basis) -> Result<ConstantTable> {
    full_table_with_cap(group, basis, DEFAULT_TABLE_CAP)
}

pub fn full_table_with_cap(group: &WeylGroup, basis: Basis, cap: usize) -> Result<ConstantTable> {
    if group.order() > cap {
        return Err(Error::GroupTooLarge { cap });
    }
    Calculator::new(group, basis).full_table()
}

/// Structure constants indexed by triples `(u, v, w)` drawn from a set of
/// elements: all of `W`, or the minimal coset representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantTable {
    basis: Basis,
    cartan: CartanMatrix,
    elements: Vec<ElementId>,
    values: Vec<i64>,
}

impl ConstantTable {
    /// Builds a table from explicit entries; missing triples are zero.
    pub fn from_entries(
        basis: Basis,
        cartan: CartanMatrix,
        elements: Vec<ElementId>,
        entries: impl IntoIterator<Item = ((ElementId, ElementId, ElementId), i64)>,
    ) -> Result<Self> {
        let n = elements.len();
        let mut table = ConstantTable {
            basis,
            cartan,
            elements,
            values: vec![0; n * n * n],
        };
        for ((u, v, w), c) in entries {
            let idx = table
                .offset(u, v, w)
                .ok_or(Error::IndexOutOfRange { index: u.0.max(v.0).max(w.0), rank: n })?;
            table.values[idx] = c;
        }
        Ok(table)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn elements(&self) -> &[ElementId] {
        &self.elements
    }

    fn position(&self, x: ElementId) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    fn offset(&self, u: ElementId, v: ElementId, w: ElementId) -> Option<usize> {
        let n = self.elements.len();
        Some((self.position(u)? * n + self.position(v)?) * n + self.position(w)?)
    }

    /// `None` when a triple leaves the index set.
    pub fn get(&self, u: ElementId, v: ElementId, w: ElementId) -> Option<i64> {
        self.offset(u, v, w).map(|i| self.values[i])
    }

    /// Nonzero entries in canonical order.
    pub fn nonzero(&self) -> impl Iterator<Item = ((ElementId, ElementId, ElementId), i64)> + '_ {
        let n = self.elements.len();
        self.values.iter().enumerate().filter(|(_, &c)| c != 0).map(move |(i, &c)| {
            let (u, v, w) = (i / (n * n), (i / n) % n, i % n);
            ((self.elements[u], self.elements[v], self.elements[w]), c)
        })
    }

    /// The product of `u` and `v` as a map `w -> coefficient`.
    pub fn product(&self, u: ElementId, v: ElementId) -> BTreeMap<ElementId, i64> {
        self.elements
            .iter()
            .filter_map(|&w| self.get(u, v, w).filter(|&c| c != 0).map(|c| (w, c)))
            .collect()
    }

    /// Rewrites the table in the `target` basis. Row `x` of `into_source`
    /// expands target basis element `x` in the table's basis, and row `z`
    /// of `back` expands the table's basis element `z` in the target basis.
    pub fn change_basis(&self, into_source: &SquareMatrix, back: &SquareMatrix, target: Basis) -> ConstantTable {
        let n = self.elements.len();
        assert_eq!(into_source.size(), n);
        let mut values = vec![0i64; n * n * n];
        for u in 0..n {
            for v in 0..n {
                // Σ_{x,y} M[u][x] M[v][y] c_{x,y}^z
                let mut mid = vec![0i64; n];
                for x in 0..n {
                    let mux = into_source.get(u, x);
                    if mux == 0 {
                        continue;
                    }
                    for y in 0..n {
                        let mvy = into_source.get(v, y);
                        if mvy == 0 {
                            continue;
                        }
                        let row = &self.values[(x * n + y) * n..(x * n + y + 1) * n];
                        for (z, &c) in row.iter().enumerate() {
                            mid[z] += mux * mvy * c;
                        }
                    }
                }
                for (z, &c) in mid.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for (w, &b) in back.row(z).iter().enumerate() {
                        values[(u * n + v) * n + w] += c * b;
                    }
                }
            }
        }
        ConstantTable {
            basis: target,
            cartan: self.cartan.clone(),
            elements: self.elements.clone(),
            values,
        }
    }
}

/// Restricts a Grothendieck table to the minimal coset representatives,
/// which index the Schubert classes of `G/H`.
pub fn parabolic_constants(table: &ConstantTable, parabolic: &ParabolicDatum) -> Result<ConstantTable> {
    if table.basis != Basis::Grothendieck {
        return Err(Error::BasisMismatch {
            expected: "grothendieck",
        });
    }
    let elements: Vec<ElementId> = parabolic
        .reps
        .iter()
        .copied()
        .filter(|&x| table.position(x).is_some())
        .collect();
    let n = elements.len();
    let mut values = Vec::with_capacity(n * n * n);
    for &u in &elements {
        for &v in &elements {
            for &w in &elements {
                values.push(table.get(u, v, w).expect("restriction of the index set"));
            }
        }
    }
    Ok(ConstantTable {
        basis: table.basis,
        cartan: table.cartan.clone(),
        elements,
        values,
    })
}
