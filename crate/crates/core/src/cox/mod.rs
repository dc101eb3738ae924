//! Polynomials in the Cox ring with exact rational coefficients.

mod gcd;
mod parse;

pub use gcd::gcd;
pub use parse::parse_polynomial;

use crate::toric::{ClassElement, ToricData};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

pub type Rational = BigRational;

/// Exponent vector ordered graded-lexicographically: higher total degree is
/// greater, ties broken by the first differing exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite sum of terms `c·x^a` with nonzero rational `c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl SparsePolynomial {
    pub fn zero(nvars: usize) -> Self {
        SparsePolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Rational::from_integer(c.into()))
    }

    /// The variable `x_i`, 0-based.
    pub fn variable(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(Monomial(e), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(m.0.len());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Greatest monomial with its coefficient.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Constant value, if the polynomial is constant.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.coefficient(&Monomial::one(self.nvars)))
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Largest exponent of `x_i`.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_nvars(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "polynomials live in different rings");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_nvars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_nvars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        SparsePolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_nvars(other);
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// Multiplies by the monomial `c·x^m`.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        SparsePolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// `self / divisor` when the division is exact.
    pub fn exact_divide(&self, divisor: &Self) -> Result<Self> {
        self.check_nvars(divisor);
        let (lm, lc) = divisor.leading_term().ok_or(Error::InexactDivision)?;
        let mut rest = self.clone();
        let mut quotient = Self::zero(self.nvars);
        while let Some((m, c)) = rest.leading_term() {
            let qm = m.checked_div(lm).ok_or(Error::InexactDivision)?;
            let qc = c / lc;
            rest = rest.sub(&divisor.mul_term(&qm, &qc));
            quotient.add_term(qm, qc);
        }
        Ok(quotient)
    }

    /// The same polynomial in a ring with more variables appended.
    pub fn with_nvars(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars, "cannot drop variables");
        SparsePolynomial {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(nvars, 0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// `∂/∂x_i`, 0-based.
    pub fn partial_derivative(&self, i: usize) -> Self {
        assert!(i < self.nvars, "variable index out of range");
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.0[i] -= 1;
            out.add_term(d, c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Value at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&e, x)| acc * num_traits::pow(x.clone(), e as usize))
            })
            .sum()
    }

    /// Coefficients of `self` as a polynomial in `x_i`; the keys are powers
    /// of `x_i` and the values do not involve `x_i`.
    pub(crate) fn coefficients_in(&self, i: usize) -> BTreeMap<u32, SparsePolynomial> {
        let mut out: BTreeMap<u32, SparsePolynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let e = std::mem::take(&mut rest.0[i]);
            out.entry(e)
                .or_insert_with(|| Self::zero(self.nvars))
                .add_term(rest, c.clone());
        }
        out
    }

    /// Multiplies by a nonzero rational so the coefficients become coprime
    /// integers with a positive leading coefficient.
    pub fn primitive_normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            den = num_integer::lcm(den, c.denom().clone());
        }
        for c in self.terms.values() {
            num = num_integer::gcd(num, (c * Rational::from_integer(den.clone())).to_integer());
        }
        let mut k = Rational::new(den, num);
        if self.leading_term().expect("nonzero").1.is_negative() {
            k = -k;
        }
        self.scale(&k)
    }

    /// Canonical text using the given variable names.
    pub fn to_text(&self, names: &[String]) -> String {
        Display { p: self, names }.to_string()
    }

    /// Canonical text with variables named `x1, …, xr`.
    pub fn to_default_text(&self) -> String {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        self.to_text(&names)
    }

    /// Class of every monomial, or an error naming two monomials that disagree.
    pub fn homogeneous_degree(&self, td: &ToricData) -> Result<ClassElement> {
        if self.nvars != td.nvars() {
            return Err(Error::VariableCount {
                got: self.nvars,
                expected: td.nvars(),
            });
        }
        let mut found: Option<(&Monomial, ClassElement)> = None;
        for m in self.terms.keys().rev() {
            let c = td.monomial_class(&m.0);
            match &found {
                None => found = Some((m, c)),
                Some((first, class)) if *class != c => {
                    let one = Rational::one();
                    return Err(Error::NotHomogeneous {
                        first: Self::monomial((*first).clone(), one.clone()).to_default_text(),
                        second: Self::monomial(m.clone(), one).to_default_text(),
                    });
                }
                Some(_) => {}
            }
        }
        found.map(|(_, c)| c).ok_or(Error::ZeroPolynomial)
    }
}

struct Display<'a> {
    p: &'a SparsePolynomial,
    names: &'a [String],
}

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.p.terms().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.names[i].clone()
                    } else {
                        format!("{}^{}", self.names[i], e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{a}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod testing {
    use super::*;
    use rand::Rng;

    /// Random polynomial with small integer coefficients and exponents.
    pub fn random_poly(rng: &mut impl Rng, nvars: usize, terms: usize, max_exp: u32) -> SparsePolynomial {
        SparsePolynomial::from_terms(
            nvars,
            (0..terms).map(|_| {
                let e = (0..nvars).map(|_| rng.gen_range(0..=max_exp)).collect();
                (e, Rational::from_integer(rng.gen_range(-4i64..=4).into()))
            }),
        )
    }
}
