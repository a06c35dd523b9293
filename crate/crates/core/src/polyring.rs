//! Exact sparse multivariate polynomials over the integers.
//!
//! Variables are `y1, ..., ym` in text and `0..m` in the API. Every term is
//! graded by total degree, and terms are kept in graded lexicographic order
//! so iteration and serialization are deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exponent vector of a monomial, ordered by total degree and then
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exps: SmallVec<[u32; 8]>,
}

impl Monomial {
    pub fn new(exps: &[u32]) -> Self {
        Monomial {
            degree: exps.iter().sum(),
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Monomial {
            degree: 0,
            exps: SmallVec::from_elem(0, num_vars),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn is_square_free(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial {
            degree: self.degree + other.degree,
            exps,
        }
    }

    fn with_exponent(&self, var: usize, e: u32) -> Monomial {
        let mut exps = self.exps.clone();
        let old = std::mem::replace(&mut exps[var], e);
        Monomial {
            degree: self.degree - old + e,
            exps,
        }
    }

    fn resized(&self, num_vars: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.resize(num_vars, 0);
        Monomial::new(&exps)
    }
}

/// A polynomial in a fixed number of variables with arbitrary-precision
/// integer coefficients. Zero coefficients are never stored.
///
/// The arithmetic operators panic when the operands have different arity;
/// use [`Polynomial::try_add`] and friends for a fallible version.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    num_vars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero(num_vars: usize) -> Self {
        Polynomial {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, 1)
    }

    pub fn constant(num_vars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(Monomial::one(num_vars), c.into());
        p
    }

    /// The variable `y_{var+1}`.
    pub fn var(num_vars: usize, var: usize) -> Self {
        assert!(var < num_vars, "variable y{} out of range", var + 1);
        let mut exps = vec![0; num_vars];
        exps[var] = 1;
        Self::monomial(&exps, 1)
    }

    pub fn monomial(exps: &[u32], c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(Monomial::new(exps), c.into());
        p
    }

    /// The square-free monomial `y_L` for a set of 0-based variable indices.
    pub fn square_free(num_vars: usize, vars: impl IntoIterator<Item = usize>) -> Self {
        let mut exps = vec![0; num_vars];
        for v in vars {
            exps[v] = 1;
        }
        Self::monomial(&exps, 1)
    }

    pub fn from_terms<I, C>(num_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(num_vars);
        for (exps, c) in terms {
            if exps.len() != num_vars {
                return Err(Error::VarCountMismatch {
                    left: num_vars,
                    right: exps.len(),
                });
            }
            p.add_term(Monomial::new(&exps), c.into());
        }
        Ok(p)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Terms in increasing graded lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigInt {
        self.terms
            .get(&Monomial::new(exps))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&vec![0; self.num_vars])
    }

    /// Coefficient of `y_1 * ... * y_m`.
    pub fn top_coefficient(&self) -> BigInt {
        self.coefficient(&vec![1; self.num_vars])
    }

    /// Sum of all coefficients, i.e. the value at `y_i = 1`.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    pub fn is_square_free(&self) -> bool {
        self.terms.keys().all(Monomial::is_square_free)
    }

    pub fn is_homogeneous(&self) -> bool {
        match (self.terms.keys().next(), self.terms.keys().next_back()) {
            (Some(lo), Some(hi)) => lo.degree == hi.degree,
            _ => true,
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.exps.len(), self.num_vars);
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &Polynomial) -> Result<()> {
        if self.num_vars == other.num_vars {
            Ok(())
        } else {
            Err(Error::VarCountMismatch {
                left: self.num_vars,
                right: other.num_vars,
            })
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_arity(other)?;
        Ok(self.product(other, None))
    }

    /// `[self * other]_(max_degree)`, skipping every product term above the
    /// bound instead of forming it.
    pub fn mul_truncated(&self, other: &Polynomial, max_degree: u32) -> Result<Polynomial> {
        self.check_arity(other)?;
        Ok(self.product(other, Some(max_degree)))
    }

    fn product(&self, other: &Polynomial, bound: Option<u32>) -> Polynomial {
        let mut out = Polynomial::zero(self.num_vars);
        let bound = bound.unwrap_or(u32::MAX);
        for (ma, ca) in &self.terms {
            if ma.degree > bound {
                break;
            }
            for (mb, cb) in &other.terms {
                if ma.degree + mb.degree > bound {
                    break;
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        self.pow_truncated(e, u32::MAX)
    }

    pub fn pow_truncated(&self, mut e: u32, max_degree: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.num_vars).truncate(max_degree);
        let mut base = self.truncate(max_degree);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.product(&base, Some(max_degree));
            }
            e >>= 1;
            if e > 0 {
                base = base.product(&base, Some(max_degree));
            }
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        let mut out = Polynomial::zero(self.num_vars);
        if c.is_zero() {
            return out;
        }
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), a * c);
        }
        out
    }

    /// `f_(n)`: all terms of total degree at most `n`.
    pub fn truncate(&self, n: u32) -> Polynomial {
        Polynomial {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .take_while(|(m, _)| m.degree <= n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Expansion `f = h_0 + h_1 y + ... + h_d y^d` in powers of the variable
    /// `var`. Each `h_i` keeps the arity of `f` and does not involve `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        assert!(var < self.num_vars, "variable y{} out of range", var + 1);
        let mut out: Vec<Polynomial> = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            if out.len() <= e {
                out.resize(e + 1, Polynomial::zero(self.num_vars));
            }
            out[e].add_term(m.with_exponent(var, 0), c.clone());
        }
        if out.is_empty() {
            out.push(Polynomial::zero(self.num_vars));
        }
        out
    }

    /// Changes the arity. Growing appends unused variables; shrinking fails
    /// if a dropped variable occurs.
    pub fn with_num_vars(&self, num_vars: usize) -> Result<Polynomial> {
        if let Some(var) = (num_vars..self.num_vars).find(|&v| self.uses_var(v)) {
            return Err(Error::VarCountMismatch {
                left: var + 1,
                right: num_vars,
            });
        }
        Ok(Polynomial {
            num_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.resized(num_vars), c.clone()))
                .collect(),
        })
    }

    /// Parses text such as `"y1*y2^2 - 3*(y3 + 1)"`. `x` is accepted as a
    /// synonym for `y`.
    pub fn parse(text: &str, num_vars: usize) -> Result<Polynomial> {
        let mut parser = Parser {
            chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            num_vars,
        };
        let p = parser.expr()?;
        if parser.pos != parser.chars.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(p)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let abs = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = m
                .exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| match e {
                    1 => format!("y{}", v + 1),
                    _ => format!("y{}^{}", v + 1, e),
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial arity mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial arity mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial arity mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&BigInt::from(-1))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

struct Parser {
    chars: Vec<char>,
    pos: usize,
    num_vars: usize,
}

impl Parser {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at position {} in polynomial", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn number(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut sign = 1;
        match self.peek() {
            Some('-') => {
                sign = -1;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?.scale(&BigInt::from(sign));
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if op == '+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self
                .number()
                .ok_or_else(|| self.error("expected exponent"))?
                .parse::<u32>()
                .map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('y' | 'x') => {
                self.pos += 1;
                let idx: usize = self
                    .number()
                    .ok_or_else(|| self.error("expected variable index"))?
                    .parse()
                    .map_err(|_| self.error("bad variable index"))?;
                if idx == 0 || idx > self.num_vars {
                    return Err(Error::IndexOutOfRange {
                        index: idx,
                        rank: self.num_vars,
                    });
                }
                Ok(Polynomial::var(self.num_vars, idx - 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.number().unwrap_or_default();
                let value: BigInt = digits.parse().map_err(|_| self.error("bad integer"))?;
                Ok(Polynomial::constant(self.num_vars, value))
            }
            _ => Err(self.error("expected a term")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Polynomial {
        Polynomial::parse(s, n).unwrap()
    }

    #[test]
    fn add_examples() {
        let f = p("y1^2 - 3*y2 + 7", 2);
        assert_eq!(&f + &Polynomial::zero(2), f);
        assert!((&p("y1", 1) + &p("-y1", 1)).is_zero());
        assert_eq!(&p("y1 + 1", 1) + &p("1 - y1", 1), Polynomial::constant(1, 2));
    }

    #[test]
    fn mul_examples() {
        let f = p("y1^2 - 3*y2 + 7", 2);
        assert_eq!(&f * &Polynomial::one(2), f);
        assert_eq!(&p("y1 + 1", 1) * &p("1 - y1", 1), p("1 - y1^2", 1));
        assert_eq!(p("(y1 + 1)^2", 1), p("y1^2 + 2*y1 + 1", 1));
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let a = Polynomial::one(1);
        let b = Polynomial::one(2);
        assert_eq!(
            a.try_add(&b),
            Err(Error::VarCountMismatch { left: 1, right: 2 })
        );
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn truncate_examples() {
        assert_eq!(p("y1^2 + y1 + 1", 1).truncate(1), p("y1 + 1", 1));
        let f = p("y1^3*y2 - y2 + 4", 2);
        assert_eq!(f.truncate(f.degree().unwrap()), f);
        assert!(p("y1*y2", 2).truncate(1).is_zero());
    }

    #[test]
    fn coefficients_in_examples() {
        assert_eq!(p("3", 2).coefficients_in(1), vec![p("3", 2)]);
        assert_eq!(
            p("y1 + y1*y2", 2).coefficients_in(1),
            vec![p("y1", 2), p("y1", 2)]
        );
        assert_eq!(
            p("y2^2", 2).coefficients_in(1),
            vec![Polynomial::zero(2), Polynomial::zero(2), Polynomial::one(2)]
        );
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(p("1 - 3*y3 + y1*y2^2", 3).to_string(), "y1*y2^2 - 3*y3 + 1");
        assert_eq!(p("y2 + y1", 2).to_string(), "y1 + y2");
        assert_eq!(p("-y1 - 2", 1).to_string(), "-y1 - 2");
        assert_eq!(Polynomial::zero(3).to_string(), "0");
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(Polynomial::parse("y3", 2).is_err());
        assert!(Polynomial::parse("y1 +", 2).is_err());
        assert!(Polynomial::parse("(y1", 2).is_err());
        assert!(Polynomial::parse("y1 y2", 2).is_err());
    }

    #[test]
    fn with_num_vars_refuses_to_drop_used_variables() {
        let f = p("y1 + y2", 3);
        assert_eq!(f.with_num_vars(2).unwrap().num_vars(), 2);
        assert!(f.with_num_vars(1).is_err());
        assert_eq!(f.with_num_vars(4).unwrap().with_num_vars(3).unwrap(), f);
    }

    #[test]
    fn mul_truncated_matches_truncated_product() {
        let f = p("(1 + y1 + y2)^3", 2);
        let g = p("(1 - y1*y2)^2 + y2", 2);
        for n in 0..8 {
            assert_eq!(f.mul_truncated(&g, n).unwrap(), (&f * &g).truncate(n));
            assert_eq!(f.pow_truncated(3, n), f.pow(3).truncate(n));
        }
    }

    #[test]
    fn big_coefficients_do_not_overflow() {
        let f = p("(2 + y1)^200", 1);
        let expected: BigInt = BigInt::from(2).pow(200u32);
        assert_eq!(f.constant_term(), expected);
    }
}
