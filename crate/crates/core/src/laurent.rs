//! Sparse multivariate Laurent polynomials with exact rational coefficients.
//!
//! A [`LaurentPoly`] lives in a fixed ambient of `n + m` variables (exchangeable
//! indices first, then frozen ones). Terms are kept in a `BTreeMap` keyed by
//! exponent vector, so iteration follows plain lexicographic order on the
//! exponents; that order is also the canonical serialization order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Deref, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::coefficients::CoefficientSpec;
use crate::error::{Error, Result};

/// Default cap on the number of quotient terms produced by [`LaurentPoly::exact_divide`].
pub const DEFAULT_QUOTIENT_TERM_CAP: usize = 1_000_000;

/// Exponents of a Laurent monomial, one entry per ambient variable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn new(entries: Vec<i64>) -> Self {
        ExponentVector(entries)
    }

    pub fn zeros(len: usize) -> Self {
        ExponentVector(vec![0; len])
    }

    /// The exponent vector of the single variable `x_{index+1}`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = vec![0; len];
        v[index] = 1;
        ExponentVector(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Componentwise `self <= other`, i.e. `x^self` divides `x^other` as polynomials.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> ExponentVector {
        ExponentVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }
}

impl Deref for ExponentVector {
    type Target = [i64];

    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for ExponentVector {
    fn from(v: Vec<i64>) -> Self {
        ExponentVector(v)
    }
}

/// A Laurent polynomial over the rationals in a fixed number of variables.
///
/// Invariant: no stored coefficient is zero; the zero polynomial has no terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<ExponentVector, BigRational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::monomial(ExponentVector::zeros(nvars), c)
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigRational::from_integer(BigInt::from(c)))
    }

    /// The variable `x_{index+1}`.
    pub fn var(nvars: usize, index: usize) -> Self {
        Self::monomial(ExponentVector::unit(nvars, index), BigRational::one())
    }

    pub fn monomial(exponents: ExponentVector, c: BigRational) -> Self {
        let nvars = exponents.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponents, c);
        }
        LaurentPoly { nvars, terms }
    }

    /// Builds a polynomial from raw terms, summing repeated exponent vectors
    /// and dropping zero coefficients.
    pub fn normalize<I>(nvars: usize, raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, BigRational)>,
    {
        let mut terms: BTreeMap<ExponentVector, BigRational> = BTreeMap::new();
        for (e, c) in raw {
            if e.len() != nvars {
                return Err(Error::MalformedInput(format!(
                    "exponent vector of length {} in a {}-variable ambient",
                    e.len(),
                    nvars
                )));
            }
            accumulate(&mut terms, e, c);
        }
        Ok(LaurentPoly { nvars, terms })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    /// Terms in canonical (ascending lexicographic) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Option<&BigRational> {
        self.terms.get(e)
    }

    /// Largest term under the lexicographic order.
    pub fn leading_term(&self) -> Option<(&ExponentVector, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_zero())
    }

    /// All exponents nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.is_nonnegative())
    }

    pub fn involves(&self, index: usize) -> bool {
        self.terms.keys().any(|e| e[index] != 0)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn max_abs_coefficient(&self) -> BigRational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }

    /// Maximal total degree over the support, `None` for zero.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.total_degree()).max()
    }

    /// Componentwise minimum of the exponent vectors, `None` for zero.
    pub fn min_exponents(&self) -> Option<ExponentVector> {
        let mut keys = self.terms.keys();
        let first = keys.next()?.clone();
        Some(keys.fold(first, |acc, e| {
            ExponentVector(acc.iter().zip(e.iter()).map(|(a, b)| *a.min(b)).collect())
        }))
    }

    pub fn scale(&self, c: &BigRational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by the Laurent monomial `x^shift`.
    pub fn shift(&self, shift: &ExponentVector) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.add(shift), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut result = LaurentPoly::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    fn check_ambient(&self, other: &LaurentPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::AmbientMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_ambient(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_ambient(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_ambient(other)?;
        Ok(self * other)
    }

    /// Exact division in the Laurent ring, with the default quotient term cap.
    ///
    /// Returns [`Error::NotDivisible`] when no Laurent quotient exists.
    pub fn exact_divide(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        self.exact_divide_capped(divisor, DEFAULT_QUOTIENT_TERM_CAP)
    }

    /// Exact division: both operands are shifted to honest polynomials whose
    /// exponent minima are zero, the shifted dividend is reduced by leading-term
    /// elimination, and the quotient is shifted back.
    pub fn exact_divide_capped(&self, divisor: &LaurentPoly, cap: usize) -> Result<LaurentPoly> {
        self.check_ambient(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero(self.nvars));
        }
        if divisor.is_monomial() {
            let (e, c) = divisor.leading_term().expect("nonzero");
            let inv = c.recip();
            return Ok(self.shift(&e.scale(-1)).scale(&inv));
        }

        let a_shift = self.min_exponents().expect("nonzero");
        let b_shift = divisor.min_exponents().expect("nonzero");
        let b = divisor.shift(&b_shift.scale(-1));
        let (b_lead_exp, b_lead_coeff) = b.leading_term().expect("nonzero");
        let b_lead_exp = b_lead_exp.clone();
        let b_lead_inv = b_lead_coeff.recip();

        let mut remainder = self.shift(&a_shift.scale(-1)).terms;
        let mut quotient: BTreeMap<ExponentVector, BigRational> = BTreeMap::new();
        while let Some((r_exp, r_coeff)) = remainder.iter().next_back() {
            if !b_lead_exp.divides(r_exp) {
                return Err(Error::NotDivisible);
            }
            let q_exp = r_exp.sub(&b_lead_exp);
            let q_coeff = r_coeff * &b_lead_inv;
            for (e, c) in &b.terms {
                accumulate(&mut remainder, e.add(&q_exp), -(c * &q_coeff));
            }
            quotient.insert(q_exp, q_coeff);
            if quotient.len() > cap {
                return Err(Error::TermCapExceeded { cap });
            }
        }

        let back = a_shift.sub(&b_shift);
        Ok(LaurentPoly {
            nvars: self.nvars,
            terms: quotient
                .into_iter()
                .map(|(e, c)| (e.add(&back), c))
                .collect(),
        })
    }

    /// `true` if `divisor` divides `self` in the Laurent ring.
    pub fn is_divisible_by(&self, divisor: &LaurentPoly) -> Result<bool> {
        match self.exact_divide(divisor) {
            Ok(_) => Ok(true),
            Err(Error::NotDivisible) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Largest `e` with `p^e` dividing `self`.
    pub fn multiplicity(&self, p: &LaurentPoly) -> Result<u32> {
        self.check_ambient(p)?;
        if self.is_zero() {
            return Err(Error::UndefinedValuation);
        }
        if p.len() < 2 {
            return Err(Error::InvalidPrime(format!(
                "{p} is zero or a unit of the Laurent ring"
            )));
        }
        let mut count = 0;
        let mut current = self.clone();
        loop {
            match current.exact_divide(p) {
                Ok(q) => {
                    current = q;
                    count += 1;
                }
                Err(Error::NotDivisible) => return Ok(count),
                Err(e) => return Err(e),
            }
        }
    }

    /// Splits `self = sum_j c_j x_i^j` with every `c_j` free of `x_i`.
    pub fn coefficients_in_variable(&self, index: usize) -> Result<BTreeMap<i64, LaurentPoly>> {
        if index >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index,
                bound: self.nvars,
            });
        }
        let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let j = e[index];
            let mut rest = e.clone();
            rest.0[index] = 0;
            out.entry(j)
                .or_insert_with(|| LaurentPoly::zero(self.nvars))
                .terms
                .insert(rest, c.clone());
        }
        Ok(out)
    }

    /// Units of the upper cluster algebra: a single term with no exchangeable
    /// exponent and a coefficient that is a unit of the base ring.
    pub fn is_unit(&self, n: usize, base: &CoefficientSpec) -> bool {
        let Some((e, c)) = self.leading_term() else {
            return false;
        };
        if self.terms.len() != 1 || e.iter().take(n).any(|&a| a != 0) {
            return false;
        }
        if base.is_field() {
            true
        } else {
            c.is_integer() && c.numer().abs().is_one()
        }
    }

    /// Substitutes `x_index -> value`; `value` may be any Laurent polynomial
    /// when the exponents of `x_index` are nonnegative, and must be a monomial
    /// otherwise.
    pub fn substitute(&self, index: usize, value: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_ambient(value)?;
        let mut out = LaurentPoly::zero(self.nvars);
        for (j, c) in self.coefficients_in_variable(index)? {
            let power = if j >= 0 {
                value.pow(j as u32)
            } else {
                LaurentPoly::one(self.nvars).exact_divide(&value.pow((-j) as u32))?
            };
            out = &out + &(&c * &power);
        }
        Ok(out)
    }
}

fn accumulate(terms: &mut BTreeMap<ExponentVector, BigRational>, e: ExponentVector, c: BigRational) {
    if c.is_zero() {
        return;
    }
    match terms.entry(e) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "ambient mismatch");
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            accumulate(&mut terms, e.clone(), c.clone());
        }
        LaurentPoly {
            nvars: self.nvars,
            terms,
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "ambient mismatch");
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            accumulate(&mut terms, e.clone(), -c.clone());
        }
        LaurentPoly {
            nvars: self.nvars,
            terms,
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "ambient mismatch");
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                accumulate(&mut terms, ea.add(eb), ca * cb);
            }
        }
        LaurentPoly {
            nvars: self.nvars,
            terms,
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, e: &ExponentVector, c_abs: &BigRational) -> fmt::Result {
    let vars: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k != 0)
        .map(|(i, &k)| {
            if k == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{}", i + 1, k)
            }
        })
        .collect();
    if vars.is_empty() {
        write!(f, "{c_abs}")
    } else if c_abs.is_one() {
        write!(f, "{}", vars.join("*"))
    } else {
        write!(f, "{}*{}", c_abs, vars.join("*"))
    }
}

/// Canonical text form: terms in ascending lexicographic order, e.g.
/// `3*x1^-1*x2^2 + 1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write_term(f, e, &c.abs())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    fn x(nvars: usize, i: usize) -> LaurentPoly {
        LaurentPoly::var(nvars, i - 1)
    }

    #[test]
    fn normalize_examples() {
        let zero = LaurentPoly::normalize(2, vec![(ev(&[1, 0]), q(2)), (ev(&[1, 0]), q(-2))]).unwrap();
        assert!(zero.is_zero());

        let one = LaurentPoly::normalize(2, vec![(ev(&[0, 0]), q(1))]).unwrap();
        assert_eq!(one, LaurentPoly::one(2));

        let p = LaurentPoly::normalize(2, vec![(ev(&[-1, 2]), q(3)), (ev(&[0, 0]), q(1))]).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.to_string(), "3*x1^-1*x2^2 + 1");
    }

    #[test]
    fn normalize_rejects_length_mismatch() {
        let err = LaurentPoly::normalize(2, vec![(ev(&[1, 0, 0]), q(1))]).unwrap_err();
        assert!(matches!(err, Error::MalformedInput(_)));
    }

    #[test]
    fn ring_examples() {
        let (x1, x2) = (x(2, 1), x(2, 2));
        let prod = &(&x1 + &x2) * &(&x1 - &x2);
        assert_eq!(prod, &x1.pow(2) - &x2.pow(2));

        assert_eq!(&prod * &LaurentPoly::one(2), prod);

        let x1_inv = LaurentPoly::monomial(ev(&[-1, 0]), q(1));
        let laurent = &(&x2 + &LaurentPoly::one(2)) * &x1_inv;
        assert_eq!(laurent.to_string(), "x1^-1 + x1^-1*x2");
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let err = x(2, 1).checked_add(&x(3, 1)).unwrap_err();
        assert_eq!(err, Error::AmbientMismatch { left: 2, right: 3 });
        assert!(x(2, 1).checked_mul(&x(3, 1)).is_err());
    }

    #[test]
    fn exact_divide_examples() {
        let (x1, x2) = (x(2, 1), x(2, 2));
        let one = LaurentPoly::one(2);
        let a = &x1.pow(2) - &x2.pow(2);
        assert_eq!(a.exact_divide(&(&x1 - &x2)).unwrap(), &x1 + &x2);

        let q1 = (&x2 + &one).exact_divide(&x1).unwrap();
        assert_eq!(q1.to_string(), "x1^-1 + x1^-1*x2");

        // A degree-0 quotient c would need c*(x1 + 1) = x2 + 1, impossible.
        assert_eq!(
            (&x2 + &one).exact_divide(&(&x1 + &one)).unwrap_err(),
            Error::NotDivisible
        );
        assert_eq!(x1.exact_divide(&LaurentPoly::zero(2)).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn exact_divide_handles_laurent_shifts() {
        let (x1, x2) = (x(2, 1), x(2, 2));
        let one = LaurentPoly::one(2);
        let b = (&x1 + &x2).shift(&ev(&[-3, 1]));
        let qt = &(&x1 - &one).shift(&ev(&[2, -5])) + &x2;
        let a = &b * &qt;
        assert_eq!(a.exact_divide(&b).unwrap(), qt);
    }

    #[test]
    fn exact_divide_term_cap() {
        let (x1, one) = (x(1, 1), LaurentPoly::one(1));
        let a = &x1.pow(10) - &one;
        let b = &x1 - &one;
        assert_eq!(
            a.exact_divide_capped(&b, 3).unwrap_err(),
            Error::TermCapExceeded { cap: 3 }
        );
        assert_eq!(a.exact_divide(&b).unwrap().len(), 10);
    }

    #[test]
    fn multiplicity_examples() {
        let n = 4;
        let (x1, x2, x4) = (x(n, 1), x(n, 2), x(n, 4));
        let one = LaurentPoly::one(n);
        let p = &x1 + &x2;
        let a = &p.pow(3) * &x2.pow(2);
        assert_eq!(a.multiplicity(&p).unwrap(), 3);

        assert_eq!((&x1 + &one).multiplicity(&(&x2 + &one)).unwrap(), 0);

        let f = &x2.pow(2) + &x4.pow(4);
        assert_eq!(f.pow(2).multiplicity(&f).unwrap(), 2);
    }

    #[test]
    fn multiplicity_errors() {
        let x1 = x(2, 1);
        assert_eq!(
            LaurentPoly::zero(2).multiplicity(&(&x1 + &x(2, 2))).unwrap_err(),
            Error::UndefinedValuation
        );
        assert!(matches!(x1.multiplicity(&x1).unwrap_err(), Error::InvalidPrime(_)));
        assert!(matches!(
            x1.multiplicity(&LaurentPoly::from_int(2, 3)).unwrap_err(),
            Error::InvalidPrime(_)
        ));
    }

    #[test]
    fn coefficients_in_variable_examples() {
        let (x1, x2) = (x(2, 1), x(2, 2));
        let u = &(&x1.pow(2) * &x2) + &x2;
        let c = u.coefficients_in_variable(0).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[&2], x2);
        assert_eq!(c[&0], x2);

        let one = LaurentPoly::one(2);
        let v = (&one + &x2).exact_divide(&x1).unwrap();
        let c = v.coefficients_in_variable(0).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[&-1], &one + &x2);

        let five = LaurentPoly::from_int(2, 5);
        let c = five.coefficients_in_variable(1).unwrap();
        assert_eq!(c[&0], five);

        assert!(matches!(
            five.coefficients_in_variable(2).unwrap_err(),
            Error::IndexOutOfRange { index: 2, bound: 2 }
        ));
    }

    #[test]
    fn unit_examples() {
        let q_field = CoefficientSpec::rationals();
        let u = LaurentPoly::monomial(ev(&[0, 0, 0, -2]), q(3));
        assert!(u.is_unit(3, &q_field));
        assert!(!x(4, 1).is_unit(3, &q_field));
        let two_x4 = LaurentPoly::monomial(ev(&[0, 0, 0, 1]), q(2));
        assert!(!two_x4.is_unit(3, &CoefficientSpec::Integers));
        assert!(two_x4.is_unit(3, &q_field));
        let minus_x4 = LaurentPoly::monomial(ev(&[0, 0, 0, 1]), q(-1));
        assert!(minus_x4.is_unit(3, &CoefficientSpec::Integers));
        assert!(!LaurentPoly::zero(4).is_unit(3, &q_field));
    }

    #[test]
    fn display_forms() {
        let p = LaurentPoly::normalize(
            3,
            vec![
                (ev(&[0, 0, 0]), q(-1)),
                (ev(&[1, 0, 0]), BigRational::new(BigInt::from(3), BigInt::from(2))),
                (ev(&[0, 2, -1]), q(-1)),
            ],
        )
        .unwrap();
        assert_eq!(p.to_string(), "-1 - x2^2*x3^-1 + 3/2*x1");
        assert_eq!(LaurentPoly::zero(3).to_string(), "0");
    }

    #[test]
    fn substitute_variable() {
        let (x1, x2) = (x(2, 1), x(2, 2));
        let one = LaurentPoly::one(2);
        let u = &x1.pow(2) + &x2;
        let s = u.substitute(0, &(&x2 + &one)).unwrap();
        assert_eq!(s, &(&x2 + &one).pow(2) + &x2);
    }
}
