//! Membership in the star intersection `L_x ∩ L_{x_1'} ∩ ... ∩ L_{x_n'}`,
//! prime valuations, valuation pairings and local factorizations.
//!
//! Write `u = sum_j c_j x_i^j` with `c_j` free of `x_i`. Substituting
//! `x_i = f_i / x_i'` gives `sum_j c_j f_i^j x_i'^(-j)`, and since `f_i`
//! involves neither `x_i` nor `x_i'` distinct `j` cannot cancel. So `u` is
//! Laurent in the adjacent frame iff `f_i^|j|` divides `c_j` for every
//! negative `j`. For full-rank seeds the star intersection is `U` itself.

use crate::class_group::{require_starfish, Starfish};
use crate::error::{Error, Result};
use crate::factor::explicit_factors_over_q;
use crate::laurent::{ExponentVector, LaurentPoly};
use crate::seed::Seed;

/// A quotient `c_j / f_i^|j|` proving that the power `x_i^j` expands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub power: i64,
    pub quotient: LaurentPoly,
}

/// Result of rewriting `u` in the frame adjacent in one direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expansion {
    /// The rewritten element; slot `i` now stands for `x_i'`.
    Laurent {
        expansion: LaurentPoly,
        witnesses: Vec<Witness>,
    },
    /// `f_i^|power|` does not divide the coefficient of `x_i^power`.
    NotLaurent { power: i64 },
}

impl Expansion {
    pub fn is_laurent(&self) -> bool {
        matches!(self, Expansion::Laurent { .. })
    }

    pub fn into_laurent(self) -> Option<LaurentPoly> {
        match self {
            Expansion::Laurent { expansion, .. } => Some(expansion),
            Expansion::NotLaurent { .. } => None,
        }
    }
}

fn check_frame(u: &LaurentPoly, seed: &Seed) -> Result<()> {
    if u.nvars() != seed.nvars() {
        return Err(Error::AmbientMismatch {
            left: u.nvars(),
            right: seed.nvars(),
        });
    }
    Ok(())
}

/// Rewrites `u`, given in the frame of `seed`, in the frame of `mu_i(seed)`.
pub fn adjacent_expansion(u: &LaurentPoly, seed: &Seed, i: usize) -> Result<Expansion> {
    check_frame(u, seed)?;
    let f = seed.exchange_polynomial(i)?;
    let nvars = seed.nvars();
    let mut expansion = LaurentPoly::zero(nvars);
    let mut witnesses = Vec::new();
    for (j, c) in u.coefficients_in_variable(i)? {
        let shift = ExponentVector::unit(nvars, i).scale(-j);
        let term = if j < 0 {
            let quotient = match c.exact_divide(&f.pow((-j) as u32)) {
                Ok(q) => q,
                Err(Error::NotDivisible) => return Ok(Expansion::NotLaurent { power: j }),
                Err(e) => return Err(e),
            };
            let term = quotient.shift(&shift);
            witnesses.push(Witness { power: j, quotient });
            term
        } else {
            (&c * &f.pow(j as u32)).shift(&shift)
        };
        expansion = &expansion + &term;
    }
    Ok(Expansion::Laurent {
        expansion,
        witnesses,
    })
}

/// Whether the star intersection is `U` or only contains it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarfishBasis {
    FullRank,
    UpperBoundOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DirectionCheck {
    Passed { index: usize, witnesses: Vec<Witness> },
    Failed { index: usize, power: i64 },
}

impl DirectionCheck {
    pub fn passed(&self) -> bool {
        matches!(self, DirectionCheck::Passed { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipCertificate {
    /// Membership in the star intersection.
    pub member: bool,
    pub directions: Vec<DirectionCheck>,
    pub basis: StarfishBasis,
}

impl MembershipCertificate {
    /// True only when membership is decided for `U` itself.
    pub fn in_upper(&self) -> bool {
        self.member && self.basis == StarfishBasis::FullRank
    }
}

/// Tests `u` against every adjacent Laurent ring of `seed`.
pub fn is_member_star(u: &LaurentPoly, seed: &Seed) -> Result<MembershipCertificate> {
    check_frame(u, seed)?;
    let directions = (0..seed.n())
        .map(|index| {
            Ok(match adjacent_expansion(u, seed, index)? {
                Expansion::Laurent { witnesses, .. } => DirectionCheck::Passed { index, witnesses },
                Expansion::NotLaurent { power } => DirectionCheck::Failed { index, power },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let basis = if seed.matrix().is_full_rank() {
        StarfishBasis::FullRank
    } else {
        StarfishBasis::UpperBoundOnly
    };
    Ok(MembershipCertificate {
        member: directions.iter().all(DirectionCheck::passed),
        directions,
        basis,
    })
}

/// Follows `path` from `seed`, re-expressing `u` at each step; true iff `u`
/// stays Laurent in every frame along the way.
pub fn is_laurent_in_seed(u: &LaurentPoly, seed: &Seed, path: &[usize]) -> Result<bool> {
    check_frame(u, seed)?;
    let mut current = u.clone();
    let mut at = seed.clone();
    for &i in path {
        match adjacent_expansion(&current, &at, i)? {
            Expansion::Laurent { expansion, .. } => current = expansion,
            Expansion::NotLaurent { .. } => return Ok(false),
        }
        at = at.mutate(i)?;
    }
    Ok(true)
}

/// Fails unless `u` is a nonzero element of `U` and that is decided by full
/// rank.
pub fn require_upper(u: &LaurentPoly, seed: &Seed) -> Result<()> {
    check_frame(u, seed)?;
    if u.is_zero() {
        return Err(Error::UndefinedValuation);
    }
    require_starfish(seed, Starfish::FromRank)?;
    let certificate = is_member_star(u, seed)?;
    if let Some(DirectionCheck::Failed { index, power }) =
        certificate.directions.iter().find(|d| !d.passed())
    {
        return Err(Error::NotInUpper(format!(
            "{u} is not Laurent after mutating at {} (power {power})",
            index + 1
        )));
    }
    Ok(())
}

/// Expansion in direction `i` of an element already known to lie in `U`.
fn expand_member(u: &LaurentPoly, seed: &Seed, i: usize) -> Result<LaurentPoly> {
    adjacent_expansion(u, seed, i)?
        .into_laurent()
        .ok_or_else(|| Error::Internal(format!("member {u} failed to expand in direction {}", i + 1)))
}

/// `v_p(u)` for the prime `p` over `x_i` cut out by the `k`-th explicit
/// factor of `f_i`.
pub fn valuation_at_prime(u: &LaurentPoly, seed: &Seed, i: usize, k: usize) -> Result<u32> {
    require_upper(u, seed)?;
    let factors = explicit_factors_over_q(&seed.exchange_polynomial(i)?)?;
    let factor = factors.get(k).ok_or(Error::IndexOutOfRange {
        index: k,
        bound: factors.len(),
    })?;
    expand_member(u, seed, i)?.multiplicity(factor)
}

fn fast_pairing_unchecked(u: &LaurentPoly, seed: &Seed, i: usize) -> Result<u32> {
    let expansion = expand_member(u, seed, i)?;
    let mut best = u32::MAX;
    for factor in explicit_factors_over_q(&seed.exchange_polynomial(i)?)? {
        best = best.min(expansion.multiplicity(&factor)?);
    }
    Ok(best)
}

/// `(x_i | u)` as the minimum over the primes containing `x_i` of `v_p(u)`;
/// each such prime has `v_p(x_i) = 1`.
pub fn valuation_pairing_fast(u: &LaurentPoly, seed: &Seed, i: usize) -> Result<u32> {
    require_upper(u, seed)?;
    fast_pairing_unchecked(u, seed, i)
}

/// `(x_i | u)` as the largest `s` with `u / x_i^s` still in `U`, found by
/// trying `s = 1, 2, ...`. The search stops one past the value of
/// [`valuation_pairing_fast`], so a disagreement between the two methods
/// shows up instead of looping.
pub fn valuation_pairing_iterative(u: &LaurentPoly, seed: &Seed, i: usize) -> Result<u32> {
    require_upper(u, seed)?;
    let cap = fast_pairing_unchecked(u, seed, i)? + 1;
    let step = ExponentVector::unit(seed.nvars(), i).scale(-1);
    let mut quotient = u.clone();
    let mut s = 0;
    while s < cap {
        quotient = quotient.shift(&step);
        if !is_member_star(&quotient, seed)?.member {
            break;
        }
        s += 1;
    }
    Ok(s)
}

/// `u = x^s * b` with `(x_i | b) = 0` for every exchangeable `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFactorization {
    pub exponents: Vec<u32>,
    pub cofactor: LaurentPoly,
}

impl LocalFactorization {
    pub fn monomial(&self, nvars: usize) -> ExponentVector {
        cluster_monomial(&self.exponents, nvars)
    }
}

fn cluster_monomial(exponents: &[u32], nvars: usize) -> ExponentVector {
    let mut e = vec![0i64; nvars];
    for (slot, &s) in e.iter_mut().zip(exponents) {
        *slot = s as i64;
    }
    ExponentVector::new(e)
}

/// Local factorization with each `s_i = (x_i | u)` computed on `u` itself,
/// then verified.
pub fn local_factorization(u: &LaurentPoly, seed: &Seed) -> Result<LocalFactorization> {
    require_upper(u, seed)?;
    let exponents = (0..seed.n())
        .map(|i| fast_pairing_unchecked(u, seed, i))
        .collect::<Result<Vec<u32>>>()?;
    let factorization = LocalFactorization {
        cofactor: u.shift(&cluster_monomial(&exponents, seed.nvars()).scale(-1)),
        exponents,
    };
    verify(u, seed, &factorization)?;
    Ok(factorization)
}

/// Local factorization by peeling cluster variables off one at a time in
/// the given order of exchangeable indices.
pub fn local_factorization_in_order(
    u: &LaurentPoly,
    seed: &Seed,
    order: &[usize],
) -> Result<LocalFactorization> {
    require_upper(u, seed)?;
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..seed.n()).collect::<Vec<_>>() {
        return Err(Error::MalformedInput(format!(
            "order must list each exchangeable index once, got {order:?}"
        )));
    }
    let mut exponents = vec![0u32; seed.n()];
    let mut cofactor = u.clone();
    for &i in order {
        let s = fast_pairing_unchecked(&cofactor, seed, i)?;
        exponents[i] = s;
        cofactor = cofactor.shift(&ExponentVector::unit(seed.nvars(), i).scale(-(s as i64)));
    }
    let factorization = LocalFactorization {
        exponents,
        cofactor,
    };
    verify(u, seed, &factorization)?;
    Ok(factorization)
}

fn verify(u: &LaurentPoly, seed: &Seed, factorization: &LocalFactorization) -> Result<()> {
    let monomial = factorization.monomial(seed.nvars());
    if factorization.cofactor.shift(&monomial) != *u {
        return Err(Error::Internal(format!("local factorization of {u} does not multiply back")));
    }
    for i in 0..seed.n() {
        let rest = valuation_pairing_iterative(&factorization.cofactor, seed, i)?;
        if rest != 0 {
            return Err(Error::Internal(format!(
                "cofactor {} still has pairing {rest} with x{}",
                factorization.cofactor,
                i + 1
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ExchangeMatrix;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn seed(n: usize, m: usize, b: Vec<Vec<i64>>) -> Seed {
        Seed::initial(ExchangeMatrix::new(n, m, b).unwrap(), None).unwrap()
    }

    fn a2() -> Seed {
        seed(2, 0, vec![vec![0, 1], vec![-1, 0]])
    }

    fn a3() -> Seed {
        seed(3, 0, vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]])
    }

    fn markov() -> Seed {
        seed(3, 0, vec![vec![0, 2, -2], vec![-2, 0, 2], vec![2, -2, 0]])
    }

    fn poly(nvars: usize, terms: &[(&[i64], i64)]) -> LaurentPoly {
        LaurentPoly::normalize(
            nvars,
            terms.iter().map(|(e, c)| {
                (
                    ExponentVector::new(e.to_vec()),
                    BigRational::from_integer(BigInt::from(*c)),
                )
            }),
        )
        .unwrap()
    }

    #[test]
    fn expansion_of_cluster_variable() {
        // (1 + x2) / x1 is x1' itself.
        let u = poly(2, &[(&[-1, 0], 1), (&[-1, 1], 1)]);
        let e = adjacent_expansion(&u, &a2(), 0).unwrap().into_laurent().unwrap();
        assert_eq!(e, LaurentPoly::var(2, 0));
    }

    #[test]
    fn a3_element() {
        let s = poly(3, &[(&[-1, 0, -1], 1), (&[-1, 1, -1], 1)]);
        let e = adjacent_expansion(&s, &a3(), 0).unwrap().into_laurent().unwrap();
        // x1' / x3
        assert_eq!(e, poly(3, &[(&[1, 0, -1], 1)]));
        assert!(is_member_star(&s, &a3()).unwrap().member);
        assert_eq!(is_member_star(&s, &a3()).unwrap().basis, StarfishBasis::UpperBoundOnly);
        assert!(is_laurent_in_seed(&s, &a3(), &[0]).unwrap());
        assert!(!is_laurent_in_seed(&s, &a3(), &[2, 0]).unwrap());
        assert!(is_laurent_in_seed(&s, &a3(), &[]).unwrap());
    }

    #[test]
    fn markov_element() {
        let m = poly(3, &[(&[1, -1, -1], 1), (&[-1, 1, -1], 1), (&[-1, -1, 1], 1)]);
        let c = is_member_star(&m, &markov()).unwrap();
        assert!(c.member);
        assert_eq!(c.basis, StarfishBasis::UpperBoundOnly);
        assert!(!c.in_upper());
        assert!(matches!(
            require_upper(&m, &markov()),
            Err(Error::StarfishNotEstablished { rank: 2, n: 3 })
        ));
    }

    #[test]
    fn negative_monomials_fail() {
        let u = poly(2, &[(&[-1, 0], 1)]);
        let c = is_member_star(&u, &a2()).unwrap();
        assert!(!c.member);
        assert_eq!(c.directions[0], DirectionCheck::Failed { index: 0, power: -1 });
        assert!(c.directions[1].passed());
    }

    #[test]
    fn cluster_variables_are_members() {
        let s = a2();
        let mut current = s.clone();
        for step in [0, 1, 0, 1, 0] {
            current = current.mutate(step).unwrap();
            for x in current.cluster() {
                assert!(is_member_star(x, &s).unwrap().in_upper(), "{x}");
            }
        }
    }

    #[test]
    fn prime_valuations() {
        let s = a2();
        assert_eq!(valuation_at_prime(&LaurentPoly::var(2, 0), &s, 0, 0).unwrap(), 1);
        assert_eq!(valuation_at_prime(&LaurentPoly::var(2, 1), &s, 0, 0).unwrap(), 0);
        let sq = poly(2, &[(&[0, 0], 1), (&[0, 1], 2), (&[0, 2], 1)]);
        assert_eq!(valuation_at_prime(&sq, &s, 0, 0).unwrap(), 2);
        assert!(matches!(
            valuation_at_prime(&sq, &s, 0, 1),
            Err(Error::IndexOutOfRange { index: 1, bound: 1 })
        ));
        assert_eq!(valuation_at_prime(&LaurentPoly::zero(2), &s, 0, 0), Err(Error::UndefinedValuation));
    }

    #[test]
    fn pairings() {
        let s = a2();
        let cases = [
            (poly(2, &[(&[2, 1], 1)]), 2),
            (poly(2, &[(&[0, 0], 1), (&[0, 1], 1)]), 1),
            (poly(2, &[(&[3, 0], 1), (&[3, 1], 1)]), 4),
            (poly(2, &[(&[0, 1], 1)]), 0),
        ];
        for (u, want) in cases {
            assert_eq!(valuation_pairing_fast(&u, &s, 0).unwrap(), want, "{u}");
            assert_eq!(valuation_pairing_iterative(&u, &s, 0).unwrap(), want, "{u}");
        }
        let frozen = seed(1, 1, vec![vec![0], vec![1]]);
        let unit = poly(2, &[(&[0, -3], 5)]);
        assert_eq!(valuation_pairing_iterative(&unit, &frozen, 0).unwrap(), 0);
        assert_eq!(valuation_pairing_fast(&unit, &frozen, 0).unwrap(), 0);
        assert!(matches!(
            valuation_pairing_fast(&poly(2, &[(&[-1, 0], 1)]), &s, 0),
            Err(Error::NotInUpper(_))
        ));
    }

    #[test]
    fn local_factorizations() {
        let s = a2();
        let u = poly(2, &[(&[2, 0], 1), (&[2, 1], 1)]);
        let lf = local_factorization(&u, &s).unwrap();
        assert_eq!(lf.exponents, vec![3, 0]);
        assert_eq!(lf.cofactor, poly(2, &[(&[-1, 0], 1), (&[-1, 1], 1)]));

        let lf = local_factorization(&poly(2, &[(&[1, 1], 1)]), &s).unwrap();
        assert_eq!((lf.exponents, lf.cofactor), (vec![1, 1], LaurentPoly::one(2)));

        let lf = local_factorization(&poly(2, &[(&[0, 0], 1), (&[0, 1], 1)]), &s).unwrap();
        assert_eq!(lf.exponents, vec![1, 0]);

        for order in [[0, 1], [1, 0]] {
            assert_eq!(local_factorization_in_order(&u, &s, &order).unwrap().exponents, vec![3, 0]);
        }
        assert!(local_factorization_in_order(&u, &s, &[0, 0]).is_err());
    }

    #[test]
    fn frame_mismatch() {
        assert!(matches!(
            is_member_star(&LaurentPoly::one(3), &a2()),
            Err(Error::AmbientMismatch { .. })
        ));
    }
}
