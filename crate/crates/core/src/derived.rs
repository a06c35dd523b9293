//! Derived sequences and the images of the Demazure and Grothendieck bases
//! in the K-ring of a Bott–Samelson cycle.
//!
//! For a simple-root sequence `(β_1, ..., β_m)` the Demazure class `a_w`
//! maps to `(-1)^{l(w)} P(w)` where `P(w) = Σ_{β(L) ∼ w} y_L` sums the
//! square-free monomials over the subsets `L` whose subsequence is derived
//! for `w`. The Grothendieck class `Ω_w` maps to
//! `B(w) = Σ_{u ≥ w} (-1)^{l(u)} P(u)`.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::Polynomial;
use crate::rootsys::{parse_word, ElementId, WeylGroup};

/// The two bases of `K(G/T)` handled by this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Demazure,
    Grothendieck,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::Demazure => "demazure",
            Basis::Grothendieck => "grothendieck",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "demazure" | "a" => Ok(Basis::Demazure),
            "grothendieck" | "omega" => Ok(Basis::Grothendieck),
            _ => Err(Error::Parse(format!("unknown basis {s:?}"))),
        }
    }
}

/// A sequence of simple-root indices, repetitions allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SimpleRootSequence(Vec<usize>);

impl SimpleRootSequence {
    /// Checks every 0-based index against the rank.
    pub fn new(indices: Vec<usize>, rank: usize) -> Result<Self> {
        match indices.iter().find(|&&i| i >= rank) {
            Some(&index) => Err(Error::IndexOutOfRange { index, rank }),
            None => Ok(SimpleRootSequence(indices)),
        }
    }

    /// From 1-based indices, as written in the literature.
    pub fn from_one_based(indices: &[usize], rank: usize) -> Result<Self> {
        if indices.contains(&0) {
            return Err(Error::Parse("generator indices start at 1".into()));
        }
        Self::new(indices.iter().map(|i| i - 1).collect(), rank)
    }

    /// Parses `"1,2,1"`.
    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        Self::new(parse_word(text)?, rank)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Whether `(β_1, ..., β_m) ∼ w`: scanning right to left and stepping down
/// whenever `l(cur · r_{β_j}) < l(cur)` reaches the identity.
pub fn is_derived(group: &WeylGroup, seq: &[usize], w: ElementId) -> bool {
    if seq.len() < group.length(w) {
        return false;
    }
    let mut cur = w;
    for &b in seq.iter().rev() {
        if cur == ElementId::IDENTITY {
            break;
        }
        if group.is_right_descent(cur, b) {
            cur = group.mul_gen(cur, b);
        }
    }
    cur == ElementId::IDENTITY
}

/// Image polynomials of one basis for one simple-root sequence, indexed by
/// [`ElementId`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImagePolynomials {
    basis: Basis,
    word: Vec<usize>,
    polys: Vec<Polynomial>,
}

impl ImagePolynomials {
    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn get(&self, w: ElementId) -> &Polynomial {
        &self.polys[w.0]
    }

    pub fn iter(&self) -> impl Iterator<Item = (ElementId, &Polynomial)> {
        self.polys.iter().enumerate().map(|(i, p)| (ElementId(i), p))
    }

    /// Coefficient of `y_1⋯y_m` in the image of `w`.
    pub fn top_coefficient(&self, w: ElementId) -> i64 {
        let c = self.polys[w.0].top_coefficient();
        i64::try_from(&c).expect("image coefficients are bounded by |W|")
    }
}

/// `P(w) = Σ_{β(L) ∼ w} y_L` for every `w`, by dynamic programming over the
/// prefixes of the word:
/// `P_k(x) = P_{k-1}(x) + y_k · P_{k-1}(x r_{β_k})` when `x r_{β_k} < x`,
/// and `P_k(x) = (1 + y_k) · P_{k-1}(x)` otherwise.
pub fn demazure_image(group: &WeylGroup, word: &[usize]) -> Result<ImagePolynomials> {
    let seq = SimpleRootSequence::new(word.to_vec(), group.rank())?;
    let m = seq.len();
    let mut polys = vec![Polynomial::zero(m); group.order()];
    polys[0] = Polynomial::one(m);
    for (k, &b) in seq.indices().iter().enumerate() {
        let yk = Polynomial::var(m, k);
        let next: Vec<Polynomial> = group
            .ids()
            .map(|x| {
                let prev = &polys[x.0];
                if group.length(x) > k + 1 {
                    return prev.clone();
                }
                let src = if group.is_right_descent(x, b) {
                    &polys[group.mul_gen(x, b).0]
                } else {
                    prev
                };
                if src.is_zero() {
                    prev.clone()
                } else {
                    prev + &(src * &yk)
                }
            })
            .collect();
        polys = next;
    }
    Ok(ImagePolynomials {
        basis: Basis::Demazure,
        word: seq.0,
        polys,
    })
}

/// `B(w) = Σ_{u ≥ w} (-1)^{l(u)} P(u)` for every `w`.
pub fn grothendieck_image(group: &WeylGroup, word: &[usize]) -> Result<ImagePolynomials> {
    Ok(grothendieck_from_demazure(group, &demazure_image(group, word)?))
}

/// Applies the change of basis to already computed Demazure images.
pub fn grothendieck_from_demazure(group: &WeylGroup, demazure: &ImagePolynomials) -> ImagePolynomials {
    assert_eq!(demazure.basis, Basis::Demazure);
    let m = demazure.word.len();
    let signed: Vec<Polynomial> = group
        .ids()
        .map(|u| {
            let p = demazure.get(u);
            if group.sign(u) < 0 {
                -p
            } else {
                p.clone()
            }
        })
        .collect();
    let polys = group
        .ids()
        .map(|w| {
            group
                .ids()
                .filter(|&u| !signed[u.0].is_zero() && group.bruhat_leq(w, u))
                .fold(Polynomial::zero(m), |acc, u| &acc + &signed[u.0])
        })
        .collect();
    ImagePolynomials {
        basis: Basis::Grothendieck,
        word: demazure.word.clone(),
        polys,
    }
}

/// Image polynomials of either basis.
pub fn image(group: &WeylGroup, basis: Basis, word: &[usize]) -> Result<ImagePolynomials> {
    match basis {
        Basis::Demazure => demazure_image(group, word),
        Basis::Grothendieck => grothendieck_image(group, word),
    }
}

/// A dense square integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareMatrix {
    size: usize,
    data: Vec<i64>,
}

impl SquareMatrix {
    pub fn zeros(size: usize) -> Self {
        SquareMatrix {
            size,
            data: vec![0; size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            m.data[i * size + i] = 1;
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.size + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.size..(i + 1) * self.size]
    }
}

impl Mul for &SquareMatrix {
    type Output = SquareMatrix;
    fn mul(self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.size, rhs.size);
        let n = self.size;
        let mut out = SquareMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }
}

/// Change of basis between `{a_w}` and `{Ω_w}`; row `w` expresses one
/// basis element in the other basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisTransition {
    /// `Ω_w = Σ_{w ≤ u} a_u`.
    pub omega_from_a: SquareMatrix,
    /// `a_w = Σ_{w ≤ u} (-1)^{l(u)-l(w)} Ω_u`.
    pub a_from_omega: SquareMatrix,
}

pub fn basis_transition(group: &WeylGroup) -> BasisTransition {
    let n = group.order();
    let mut omega_from_a = SquareMatrix::zeros(n);
    let mut a_from_omega = SquareMatrix::zeros(n);
    for w in group.ids() {
        for u in group.ids() {
            if group.bruhat_leq(w, u) {
                omega_from_a.set(w.0, u.0, 1);
                let sign = if (group.length(u) - group.length(w)).is_multiple_of(2) { 1 } else { -1 };
                a_from_omega.set(w.0, u.0, sign);
            }
        }
    }
    BasisTransition {
        omega_from_a,
        a_from_omega,
    }
}
