//! Brute-force irreducible-factor counting over `Q` for small integer
//! polynomials, used to cross-check the cyclotomic counts.
//!
//! The search never looks at cyclotomic structure. It strips monomial
//! content, then looks for any nontrivial factor `g` by enumerating integer
//! coefficient vectors over a bounded set of monomials and testing exact
//! divisibility. Two facts keep the search small:
//!
//! * if `f = g h` then `g` is homogeneous for every grading under which `f`
//!   is homogeneous, so the support of `g` lies in a single coset of the
//!   rational span of the differences of exponents of `f`;
//! * the lex-leading (and trailing) monomials of `g` divide those of `f`.
//!
//! Coefficients of `g` are bounded by `max |c| + 1` of the input. That bound
//! is not a theorem for arbitrary polynomials, which is why this lives in a
//! module of its own and reports its bounds; for the binomials it is used on
//! all factors have coefficients well inside it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::laurent::{ExponentVector, LaurentPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBounds {
    pub max_total_degree: i64,
    pub max_active_variables: usize,
    /// Refuse when one coset search would try more coefficient vectors.
    pub max_candidates: u64,
}

impl Default for OracleBounds {
    fn default() -> Self {
        OracleBounds {
            max_total_degree: 8,
            max_active_variables: 3,
            max_candidates: 5_000_000,
        }
    }
}

/// Number of irreducible factors of `f` over `Q`, counted with multiplicity.
/// `f` must be a nonconstant polynomial with integer coefficients inside the
/// bounds; otherwise the oracle refuses.
pub fn brute_force_factor_count(f: &LaurentPoly, bounds: &OracleBounds) -> Result<u32> {
    if f.is_zero() || !f.is_polynomial() || !f.has_integer_coefficients() {
        return Err(Error::OracleRefused(format!("not a nonzero integer polynomial: {f}")));
    }
    if f.is_constant() {
        return Err(Error::OracleRefused("constant input".into()));
    }
    let active = (0..f.nvars()).filter(|&v| f.involves(v)).count();
    if active > bounds.max_active_variables {
        return Err(Error::OracleRefused(format!("{active} active variables")));
    }
    let degree = f.total_degree().unwrap_or(0);
    if degree > bounds.max_total_degree {
        return Err(Error::OracleRefused(format!("total degree {degree}")));
    }
    let coefficient_bound = f
        .max_abs_coefficient()
        .to_integer()
        .to_i64()
        .ok_or_else(|| Error::OracleRefused("coefficients too large".into()))?
        + 1;
    count(f, coefficient_bound, bounds)
}

fn count(f: &LaurentPoly, bound: i64, limits: &OracleBounds) -> Result<u32> {
    let content = f.min_exponents().expect("nonzero");
    let stripped = f.shift(&content.scale(-1));
    let monomial_factors = content.total_degree() as u32;
    if stripped.is_constant() {
        return Ok(monomial_factors);
    }
    match find_factor(&stripped, bound, limits)? {
        Some((g, h)) => Ok(monomial_factors + count(&g, bound, limits)? + count(&h, bound, limits)?),
        None => Ok(monomial_factors + 1),
    }
}

/// Searches for `f = g h` with both factors nonconstant polynomials.
fn find_factor(
    f: &LaurentPoly,
    bound: i64,
    limits: &OracleBounds,
) -> Result<Option<(LaurentPoly, LaurentPoly)>> {
    let nvars = f.nvars();
    let (lead, lead_coefficient) = f.leading_term().expect("nonzero");
    let trail = f.terms().next().expect("nonzero").0.clone();
    let lead = lead.clone();
    let lead_coefficient = lead_coefficient.to_integer();
    let half = f.total_degree().expect("nonzero") / 2;
    let degree_box: Vec<i64> = (0..nvars)
        .map(|v| f.terms().map(|(e, _)| e[v]).max().unwrap_or(0))
        .collect();

    let monomials = monomials_in_box(&degree_box, half);
    let exponents: Vec<&ExponentVector> = f.terms().map(|(e, _)| e).collect();
    let span = RationalSpan::of_differences(&exponents);

    for top in monomials.iter().filter(|m| !m.is_zero() && m.divides(&lead)) {
        let below: Vec<&ExponentVector> = monomials
            .iter()
            .filter(|m| *m < top && span.contains(&m.sub(top)))
            .collect();
        if below.is_empty() {
            // A monomial cannot divide a content-free polynomial.
            continue;
        }
        let width = (2 * bound + 1) as u64;
        let candidates = width
            .checked_pow(below.len() as u32)
            .filter(|c| *c <= limits.max_candidates)
            .ok_or_else(|| {
                Error::OracleRefused(format!("{} free coefficients in one coset", below.len()))
            })?;
        let leads: Vec<i64> = (1..=bound)
            .filter(|c| (&lead_coefficient % BigInt::from(*c)).is_zero())
            .collect();

        for &c_top in &leads {
            for index in 0..candidates {
                let mut digits = index;
                let mut terms = vec![(top.clone(), rational(c_top))];
                for m in &below {
                    let c = (digits % width) as i64 - bound;
                    digits /= width;
                    if c != 0 {
                        terms.push(((*m).clone(), rational(c)));
                    }
                }
                if terms.len() < 2 {
                    continue;
                }
                let g = LaurentPoly::normalize(nvars, terms)?;
                let g_trail = g.terms().next().expect("nonzero").0;
                if !g_trail.divides(&trail) {
                    continue;
                }
                match f.exact_divide(&g) {
                    Ok(h) if h.is_polynomial() && !h.is_constant() => return Ok(Some((g, h))),
                    Ok(_) | Err(Error::NotDivisible) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(None)
}

fn rational(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

/// All exponent vectors `0 <= e <= degree_box` with total degree at most
/// `max_degree`, in ascending lex order.
fn monomials_in_box(degree_box: &[i64], max_degree: i64) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    let mut current = vec![0i64; degree_box.len()];
    fill(degree_box, max_degree, 0, &mut current, &mut out);
    out.sort();
    out
}

fn fill(
    degree_box: &[i64],
    remaining: i64,
    position: usize,
    current: &mut Vec<i64>,
    out: &mut Vec<ExponentVector>,
) {
    if position == degree_box.len() {
        out.push(ExponentVector::new(current.clone()));
        return;
    }
    for a in 0..=degree_box[position].min(remaining) {
        current[position] = a;
        fill(degree_box, remaining - a, position + 1, current, out);
    }
    current[position] = 0;
}

/// Row-reduced basis of a subspace of `Q^k`.
struct RationalSpan {
    basis: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl RationalSpan {
    fn of_differences(points: &[&ExponentVector]) -> Self {
        let mut span = RationalSpan {
            basis: Vec::new(),
            pivots: Vec::new(),
        };
        if let Some((first, rest)) = points.split_first() {
            for p in rest {
                span.insert(to_rational(&p.sub(first)));
            }
        }
        span
    }

    fn reduce(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &factor * r;
                }
            }
        }
        v
    }

    fn insert(&mut self, v: Vec<BigRational>) {
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return;
        };
        let inverse = v[p].recip();
        let v: Vec<BigRational> = v.into_iter().map(|x| x * &inverse).collect();
        for row in &mut self.basis {
            if !row[p].is_zero() {
                let factor = row[p].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    *x -= &factor * r;
                }
            }
        }
        self.basis.push(v);
        self.pivots.push(p);
    }

    fn contains(&self, v: &ExponentVector) -> bool {
        self.reduce(to_rational(v)).iter().all(|x| x.is_zero())
    }
}

fn to_rational(v: &ExponentVector) -> Vec<BigRational> {
    v.iter().map(|&a| rational(a)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(nvars: usize, terms: &[(&[i64], i64)]) -> LaurentPoly {
        LaurentPoly::normalize(
            nvars,
            terms
                .iter()
                .map(|(e, c)| (ExponentVector::new(e.to_vec()), rational(*c))),
        )
        .unwrap()
    }

    fn oracle(f: &LaurentPoly) -> u32 {
        brute_force_factor_count(f, &OracleBounds::default()).unwrap()
    }

    #[test]
    fn univariate_binomials() {
        // t^d + 1 over Q has as many factors as d has odd divisors.
        let expected = [1, 1, 2, 1, 2, 2, 2, 1];
        for (d, want) in (1..=8).zip(expected) {
            let f = poly(1, &[(&[d], 1), (&[0], 1)]);
            assert_eq!(oracle(&f), want, "t^{d} + 1");
        }
    }

    #[test]
    fn multivariate_binomials() {
        assert_eq!(oracle(&poly(2, &[(&[2, 0], 1), (&[0, 2], 1)])), 1);
        assert_eq!(oracle(&poly(2, &[(&[3, 0], 1), (&[0, 3], 1)])), 2);
        assert_eq!(oracle(&poly(3, &[(&[2, 0, 0], 1), (&[0, 2, 4], 1)])), 1);
        assert_eq!(oracle(&poly(3, &[(&[1, 0, 0], 1), (&[0, 3, 3], 1)])), 1);
        assert_eq!(oracle(&poly(2, &[(&[3, 0], 1), (&[0, 6], 1)])), 2);
    }

    #[test]
    fn counts_with_multiplicity_and_content() {
        // x^2 (x + 1)^2 (x^2 + 1)
        let x1 = poly(1, &[(&[1], 1), (&[0], 1)]);
        let x2 = poly(1, &[(&[2], 1), (&[0], 1)]);
        let f = &(&x1 * &x1) * &x2.shift(&ExponentVector::new(vec![2]));
        assert_eq!(oracle(&f), 5);
        // x^2 - 1 = (x - 1)(x + 1)
        assert_eq!(oracle(&poly(1, &[(&[2], 1), (&[0], -1)])), 2);
        // x*y + 1 is irreducible, x*y is two factors.
        assert_eq!(oracle(&poly(2, &[(&[1, 1], 1), (&[0, 0], 1)])), 1);
        assert_eq!(oracle(&poly(2, &[(&[1, 1], 1)])), 2);
    }

    #[test]
    fn refusals() {
        let b = OracleBounds::default();
        let laurent = poly(1, &[(&[-1], 1), (&[0], 1)]);
        assert!(brute_force_factor_count(&laurent, &b).is_err());
        let big = poly(1, &[(&[9], 1), (&[0], 1)]);
        assert!(matches!(brute_force_factor_count(&big, &b), Err(Error::OracleRefused(_))));
        let wide = poly(4, &[(&[1, 1, 1, 1], 1), (&[0, 0, 0, 0], 1)]);
        assert!(brute_force_factor_count(&wide, &b).is_err());
        assert!(brute_force_factor_count(&LaurentPoly::from_int(1, 3), &b).is_err());
    }

    #[test]
    fn spans() {
        let a = ExponentVector::new(vec![2, 0]);
        let b = ExponentVector::new(vec![0, 4]);
        let span = RationalSpan::of_differences(&[&a, &b]);
        assert!(span.contains(&ExponentVector::new(vec![-1, 2])));
        assert!(!span.contains(&ExponentVector::new(vec![1, 0])));
    }
}
