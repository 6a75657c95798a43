//! Irreducible factors of exchange polynomials.
//!
//! An exchange polynomial is a sum of two coprime monomials `x^A + x^B`.
//! Writing `A = dU`, `B = dV` with `d` the gcd of all exponents, it equals
//! `V^d ((U/V)^d + 1)`, and `t^d + 1` is the product of the cyclotomic
//! polynomials `Phi_e` over `e | 2d`, `e ∤ d`. Each homogenized `Phi_e(U, V)`
//! is counted as one irreducible factor over `Q`; over `Q(zeta_N)` it splits
//! further according to the degree of `Q(zeta_e, zeta_N)` over `Q(zeta_N)`.
//! The brute-force [`oracle`] checks those counts independently.

pub mod oracle;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{divisors, euler_phi, lcm};
use crate::coefficients::CoefficientSpec;
use crate::error::{Error, Result};
use crate::laurent::{ExponentVector, LaurentPoly};
use crate::seed::Seed;

/// Normalized data of a two-monomial sum `x^A + x^B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBinomial {
    /// The lexicographically larger exponent vector.
    pub a: ExponentVector,
    pub b: ExponentVector,
    /// Gcd of all entries of `a` and `b`; 1 for the isolated constant 2.
    pub d: u64,
    pub u: ExponentVector,
    pub v: ExponentVector,
}

impl MonomialBinomial {
    /// `A = B = 0`: the exchange polynomial of an isolated index, `2`.
    pub fn is_isolated(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Cyclotomic indices `e` with `e | 2d`, `e ∤ d`.
    pub fn cyclotomic_indices(&self) -> Vec<u64> {
        odd_part_indices(self.d)
    }
}

fn odd_part_indices(d: u64) -> Vec<u64> {
    divisors(2 * d).into_iter().filter(|e| !d.is_multiple_of(*e)).collect()
}

/// Reads off `(A, B, d, U, V)` from an exchange-shaped polynomial.
pub fn to_monomial_binomial(f: &LaurentPoly) -> Result<MonomialBinomial> {
    let nvars = f.nvars();
    let two = BigRational::from_integer(BigInt::from(2));
    if f.len() == 1 && f.is_constant() && f.terms().next().map(|(_, c)| c) == Some(&two) {
        let zero = ExponentVector::zeros(nvars);
        return Ok(MonomialBinomial {
            a: zero.clone(),
            b: zero.clone(),
            d: 1,
            u: zero.clone(),
            v: zero,
        });
    }
    let shape = || Error::NotExchangeShape(f.to_string());
    if f.len() != 2 || !f.terms().all(|(e, c)| c.is_one() && e.is_nonnegative()) {
        return Err(shape());
    }
    let mut terms = f.terms().rev().map(|(e, _)| e.clone());
    let a = terms.next().ok_or_else(shape)?;
    let b = terms.next().ok_or_else(shape)?;
    if a.iter().zip(b.iter()).any(|(x, y)| *x > 0 && *y > 0) {
        return Err(shape());
    }
    let d = a
        .iter()
        .chain(b.iter())
        .fold(0u64, |g, &x| num_integer::gcd(g, x as u64));
    let k = d as i64;
    let u = ExponentVector::new(a.iter().map(|x| x / k).collect());
    let v = ExponentVector::new(b.iter().map(|x| x / k).collect());
    Ok(MonomialBinomial { a, b, d, u, v })
}

/// Integer coefficients of `Phi_e(t)`, lowest degree first.
pub fn cyclotomic_polynomial(e: u64) -> Vec<BigInt> {
    assert!(e >= 1, "cyclotomic index must be positive");
    let mut numerator = vec![BigInt::zero(); e as usize + 1];
    numerator[0] = BigInt::from(-1);
    numerator[e as usize] = BigInt::one();
    for d in divisors(e).into_iter().filter(|&d| d < e) {
        numerator = divide_monic(&numerator, &cyclotomic_polynomial(d));
    }
    numerator
}

/// Exact quotient of univariate integer polynomials by a monic divisor.
fn divide_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = rem[k + db].clone();
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    debug_assert!(rem.iter().all(|r| r.is_zero()), "inexact cyclotomic division");
    q
}

/// Number of irreducible factors of `t^d + 1` over `K`.
pub fn count_factors_of_td_plus_1(d: u64, base: &CoefficientSpec) -> u64 {
    assert!(d >= 1, "degree must be positive");
    let order = base.effective_order();
    odd_part_indices(d)
        .into_iter()
        .map(|e| euler_phi(e) * euler_phi(order) / euler_phi(lcm(e, order)))
        .sum()
}

/// `l_i`: the number of irreducible factors of `f_i` over `K`.
pub fn count_irreducible_factors(seed: &Seed, i: usize, base: &CoefficientSpec) -> Result<u64> {
    let binomial = to_monomial_binomial(&seed.exchange_polynomial(i)?)?;
    if binomial.is_isolated() {
        return if base.is_field() {
            Err(Error::IsolatedIndex { index: i })
        } else {
            Ok(1)
        };
    }
    Ok(count_factors_of_td_plus_1(binomial.d, base))
}

/// The factors `Phi_e(U, V)` homogenized, one per cyclotomic index, in
/// increasing order of `e`. Their product is `f`.
pub fn explicit_factors_over_q(f: &LaurentPoly) -> Result<Vec<LaurentPoly>> {
    let binomial = to_monomial_binomial(f)?;
    if binomial.is_isolated() {
        return Err(Error::NotExchangeShape("the constant 2 has no factors over Q".into()));
    }
    let nvars = f.nvars();
    Ok(binomial
        .cyclotomic_indices()
        .into_iter()
        .map(|e| {
            let phi = cyclotomic_polynomial(e);
            let degree = (phi.len() - 1) as i64;
            let terms = phi.into_iter().enumerate().map(|(k, c)| {
                let k = k as i64;
                let exps = binomial.u.scale(k).add(&binomial.v.scale(degree - k));
                (exps, BigRational::from_integer(c))
            });
            LaurentPoly::normalize(nvars, terms).expect("lengths match")
        })
        .collect())
}

/// Whether `f_i` and `f_j` share a nontrivial factor. The structural answer
/// (same `(U, V)` and overlapping cyclotomic indices) is cross-checked by
/// trial division of the explicit factors.
pub fn share_common_factor(seed: &Seed, i: usize, j: usize) -> Result<bool> {
    if i == j {
        return Err(Error::MalformedInput("partner check needs two distinct indices".into()));
    }
    let fi = seed.exchange_polynomial(i)?;
    let fj = seed.exchange_polynomial(j)?;
    let bi = to_monomial_binomial(&fi)?;
    let bj = to_monomial_binomial(&fj)?;
    for (k, b) in [(i, &bi), (j, &bj)] {
        if b.is_isolated() {
            return Err(Error::IsolatedIndex { index: k });
        }
    }
    let ej = bj.cyclotomic_indices();
    let structural =
        bi.u == bj.u && bi.v == bj.v && bi.cyclotomic_indices().iter().any(|e| ej.contains(e));

    let mut by_division = false;
    for r in explicit_factors_over_q(&fi)? {
        if fj.is_divisible_by(&r)? {
            by_division = true;
            break;
        }
    }
    if structural != by_division {
        return Err(Error::Internal(format!(
            "partner test disagrees for f{} = {fi} and f{} = {fj}",
            i + 1,
            j + 1
        )));
    }
    Ok(structural)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexFactors {
    pub index: usize,
    pub polynomial: LaurentPoly,
    pub count: u64,
    /// Explicit factors, available when `K` is `Z` or `Q`.
    pub factors: Option<Vec<LaurentPoly>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorReport {
    pub field: CoefficientSpec,
    pub per_index: Vec<IndexFactors>,
}

pub fn factor_report(seed: &Seed, base: &CoefficientSpec) -> Result<FactorReport> {
    let per_index = (0..seed.n())
        .map(|i| {
            let polynomial = seed.exchange_polynomial(i)?;
            let count = count_irreducible_factors(seed, i, base)?;
            let factors = if base.is_rational() {
                if to_monomial_binomial(&polynomial)?.is_isolated() {
                    Some(vec![polynomial.clone()])
                } else {
                    Some(explicit_factors_over_q(&polynomial)?)
                }
            } else {
                None
            };
            Ok(IndexFactors {
                index: i,
                polynomial,
                count,
                factors,
            })
        })
        .collect::<Result<_>>()?;
    Ok(FactorReport {
        field: *base,
        per_index,
    })
}
