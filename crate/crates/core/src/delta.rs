//! The `q`/`q̄` sequences of a strictly upper-triangular matrix and the
//! elimination operators built from them.
//!
//! [`DeltaOperator`] composes the eliminations `D_{m-1}, ..., D_0` and maps
//! a polynomial in `y_1..y_m` to the integer coefficient of `y_1⋯y_m` in its
//! normal form modulo `y_k² = (q̄_k - 1) y_k`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polyring::Polynomial;
use crate::rootsys::CartanMatrix;

/// A strictly upper-triangular integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WordCartanMatrix {
    size: usize,
    entries: Vec<i64>,
}

impl WordCartanMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(Error::NotStrictlyUpperTriangular);
        }
        for (i, row) in rows.iter().enumerate() {
            if row[..=i].iter().any(|&a| a != 0) {
                return Err(Error::NotStrictlyUpperTriangular);
            }
        }
        Ok(WordCartanMatrix {
            size,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zeros(size: usize) -> Self {
        WordCartanMatrix {
            size,
            entries: vec![0; size * size],
        }
    }

    /// The Cartan matrix of a simple-root sequence `(β_1, ..., β_m)`:
    /// `a_{i,j} = β_j ∘ β_i` for `i < j`. The sequence need not be reduced.
    pub fn from_word(word: &[usize], cartan: &CartanMatrix) -> Result<Self> {
        let rank = cartan.rank();
        if let Some(&index) = word.iter().find(|&&i| i >= rank) {
            return Err(Error::IndexOutOfRange { index, rank });
        }
        let m = word.len();
        let mut a = Self::zeros(m);
        for i in 0..m {
            for j in i + 1..m {
                a.entries[i * m + j] = cartan.get(word[j], word[i]);
            }
        }
        Ok(a)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Entry `a_{i,j}` with 0-based indices.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.size + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.size)
            .map(|i| self.entries[i * self.size..(i + 1) * self.size].to_vec())
            .collect()
    }

    pub fn negated(&self) -> Self {
        WordCartanMatrix {
            size: self.size,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }
}

/// Builds the Cartan matrix of a word.
pub fn word_cartan_matrix(word: &[usize], cartan: &CartanMatrix) -> Result<WordCartanMatrix> {
    WordCartanMatrix::from_word(word, cartan)
}

/// The sequences `q_1..q_m` and `q̄_1..q̄_m`, all in `m` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSequences {
    pub q: Vec<Polynomial>,
    pub qbar: Vec<Polynomial>,
}

/// Exact `q` and `q̄` sequences:
///
/// `q_k = ∏_{a_{ik}>0} (y_i+1)^{a_{ik}} ∏_{a_{ik}<0} (1-q_i y_i)^{-a_{ik}}`,
/// `q̄_k = ∏_{a_{ik}>0} (1-q_i y_i)^{a_{ik}} ∏_{a_{ik}<0} (y_i+1)^{-a_{ik}}`.
///
/// Degrees grow quickly with `m`; evaluation paths use the degree-bounded
/// variant internally.
pub fn build_q_sequences(a: &WordCartanMatrix) -> QSequences {
    build_bounded(a, u32::MAX)
}

/// The `q` and `q̄` sequences with every term of degree above `max_degree`
/// dropped. Truncation commutes with the products defining them, so this
/// equals truncating the exact sequences.
pub fn build_q_sequences_truncated(a: &WordCartanMatrix, max_degree: u32) -> QSequences {
    build_bounded(a, max_degree)
}

fn build_bounded(a: &WordCartanMatrix, bound: u32) -> QSequences {
    let m = a.size();
    let one = Polynomial::one(m).truncate(bound);
    let mut q: Vec<Polynomial> = Vec::with_capacity(m);
    let mut qbar: Vec<Polynomial> = Vec::with_capacity(m);
    for k in 0..m {
        let mut qk = one.clone();
        let mut qbark = one.clone();
        for i in 0..k {
            let aik = a.get(i, k);
            if aik == 0 {
                continue;
            }
            let e = aik.unsigned_abs() as u32;
            let y = Polynomial::var(m, i);
            let plus = &one + &y;
            let minus = &one - &q[i].mul_truncated(&y, bound).expect("same arity");
            let (up, down) = if aik > 0 { (&plus, &minus) } else { (&minus, &plus) };
            qk = qk
                .mul_truncated(&up.pow_truncated(e, bound), bound)
                .expect("same arity");
            qbark = qbark
                .mul_truncated(&down.pow_truncated(e, bound), bound)
                .expect("same arity");
        }
        q.push(qk);
        qbar.push(qbark);
    }
    QSequences { q, qbar }
}

/// One elimination step `D_{k-1}`.
///
/// `f` must have arity `k` and degree at most `k`; `qbar_k` must have arity
/// `k - 1`. Writing `f = Σ h_n y_k^n`, the result is
/// `[h_1 + h_2 (q̄_k - 1) + ⋯ + h_k (q̄_k - 1)^{k-1}]_(k-1)` in `k - 1`
/// variables.
pub fn eliminate(f: &Polynomial, k: usize, qbar_k: &Polynomial) -> Result<Polynomial> {
    if qbar_k.num_vars() + 1 != k {
        return Err(Error::VarCountMismatch {
            left: qbar_k.num_vars(),
            right: k.saturating_sub(1),
        });
    }
    let r = qbar_k - &Polynomial::one(k - 1);
    let bound = (k - 1) as u32;
    let powers: Vec<Polynomial> = (0..k as u32).map(|n| r.pow_truncated(n, bound)).collect();
    eliminate_with_powers(f, k, &powers)
}

/// `powers[n]` holds `[(q̄_k - 1)^n]_(k-1)`.
fn eliminate_with_powers(f: &Polynomial, k: usize, powers: &[Polynomial]) -> Result<Polynomial> {
    if f.num_vars() != k {
        return Err(Error::VarCountMismatch {
            left: f.num_vars(),
            right: k,
        });
    }
    if let Some(degree) = f.degree().filter(|&d| d as usize > k) {
        return Err(Error::DegreeTooHigh {
            degree,
            max: k as u32,
        });
    }
    let bound = (k - 1) as u32;
    let mut acc = Polynomial::zero(k - 1);
    for (n, h) in f.coefficients_in(k - 1).iter().enumerate().skip(1) {
        if h.is_zero() {
            continue;
        }
        let h = h.with_num_vars(k - 1)?;
        let term = h.mul_truncated(&powers[n - 1], bound)?;
        acc = &acc + &term;
    }
    Ok(acc)
}

/// `Δ_A` with its `q̄` powers precomputed, for repeated evaluation against
/// one matrix.
#[derive(Debug, Clone)]
pub struct DeltaOperator {
    size: usize,
    /// `powers[k-1][n] = [(q̄_k - 1)^n]_(k-1)` in `k - 1` variables.
    powers: Vec<Vec<Polynomial>>,
}

impl DeltaOperator {
    pub fn new(a: &WordCartanMatrix) -> Self {
        let m = a.size();
        let seq = build_q_sequences_truncated(a, m.saturating_sub(1) as u32);
        let powers = (1..=m)
            .map(|k| {
                let r = (&seq.qbar[k - 1] - &Polynomial::one(m))
                    .truncate((k - 1) as u32)
                    .with_num_vars(k - 1)
                    .expect("q̄_k only involves y_1..y_{k-1}");
                (0..k as u32).map(|n| r.pow_truncated(n, (k - 1) as u32)).collect()
            })
            .collect();
        DeltaOperator { size: m, powers }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `Δ_A(f)`. The input is truncated to degree `m` first.
    pub fn apply(&self, f: &Polynomial) -> Result<BigInt> {
        let m = self.size;
        if f.num_vars() != m {
            return Err(Error::VarCountMismatch {
                left: f.num_vars(),
                right: m,
            });
        }
        let mut g = f.truncate(m as u32);
        for k in (1..=m).rev() {
            if g.is_zero() {
                return Ok(BigInt::zero());
            }
            g = eliminate_with_powers(&g, k, &self.powers[k - 1])?;
        }
        Ok(g.constant_term())
    }
}

/// `Δ_A(f)` for a single evaluation.
pub fn delta_a(a: &WordCartanMatrix, f: &Polynomial) -> Result<BigInt> {
    DeltaOperator::new(a).apply(f)
}

/// The triangular operator `T_A` on homogeneous polynomials of degree `m`:
/// successively rewrite `y_k^n` as `c_k^{n-1} y_k` with the linear form
/// `c_k = Σ_{i<k} a_{i,k} y_i` and keep the coefficient of `y_k`.
///
/// On such inputs `Δ_A(f) = T_{-A}(f)`.
pub fn triangular_t(a: &WordCartanMatrix, f: &Polynomial) -> Result<BigInt> {
    let m = a.size();
    if f.num_vars() != m {
        return Err(Error::VarCountMismatch {
            left: f.num_vars(),
            right: m,
        });
    }
    if f.is_zero() {
        return Ok(BigInt::zero());
    }
    if !f.is_homogeneous() || f.degree() != Some(m as u32) {
        return Err(Error::NotHomogeneous { expected: m as u32 });
    }
    let mut g = f.clone();
    for k in (1..=m).rev() {
        let mut c = Polynomial::zero(k - 1);
        for i in 0..k - 1 {
            let aik = a.get(i, k - 1);
            if aik != 0 {
                c = &c + &Polynomial::monomial(&unit(k - 1, i), aik);
            }
        }
        let mut next = Polynomial::zero(k - 1);
        for (n, h) in g.coefficients_in(k - 1).iter().enumerate().skip(1) {
            if !h.is_zero() {
                next = &next + &(&h.with_num_vars(k - 1)? * &c.pow((n - 1) as u32));
            }
        }
        g = next;
    }
    Ok(g.constant_term())
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}
