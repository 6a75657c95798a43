//! Class groups of upper cluster algebras satisfying the starfish condition.
//!
//! Under the starfish condition the height-one primes containing a cluster
//! variable `x_i` correspond to the irreducible factors of `f_i`, each with
//! `v_p(x_i) = 1` and `v_p(x_j) = 0` for `j != i`. The class group is then
//! `Z^t / <a_1, ..., a_n>` with `t = sum l_i` and `a_i` the valuation vector
//! of `x_i`, which is free of rank `t - n`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::coefficients::CoefficientSpec;
use crate::error::{Error, Result};
use crate::factor::{count_irreducible_factors, explicit_factors_over_q, to_monomial_binomial};
use crate::laurent::LaurentPoly;
use crate::membership::adjacent_expansion;
use crate::seed::Seed;
use crate::snf::smith_normal_form;

/// How the starfish condition is established for a seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Starfish {
    /// Only from full rank of the exchange matrix.
    FromRank,
    /// Asserted by the caller for a seed that may not have full rank.
    Asserted,
}

/// Fails unless the seed has full rank or the caller asserts the condition.
pub fn require_starfish(seed: &Seed, starfish: Starfish) -> Result<()> {
    if starfish == Starfish::FromRank && !seed.matrix().is_full_rank() {
        return Err(Error::StarfishNotEstablished {
            rank: seed.matrix().rank(),
            n: seed.n(),
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeDivisor {
    /// The irreducible factor `r_k` of `f_i`; it omits `x_i` and `x_i'`, so it
    /// reads the same in the adjacent frame.
    pub factor: LaurentPoly,
    pub valuation_of_variable: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeDivisorData {
    pub index: usize,
    pub primes: Vec<PrimeDivisor>,
}

/// The height-one primes containing `x_i`, over `Z` or `Q`.
pub fn prime_divisor_data(
    seed: &Seed,
    i: usize,
    base: &CoefficientSpec,
    starfish: Starfish,
) -> Result<PrimeDivisorData> {
    require_starfish(seed, starfish)?;
    if !base.is_rational() {
        return Err(Error::Unsupported(format!(
            "explicit prime divisors are only available over Z and Q, not {base}"
        )));
    }
    let f = seed.exchange_polynomial(i)?;
    if to_monomial_binomial(&f)?.is_isolated() {
        if base.is_field() {
            return Err(Error::IsolatedIndex { index: i });
        }
        return Ok(PrimeDivisorData {
            index: i,
            primes: vec![PrimeDivisor {
                factor: f,
                valuation_of_variable: 1,
            }],
        });
    }
    let variable = LaurentPoly::var(seed.nvars(), i);
    let expanded = adjacent_expansion(&variable, seed, i)?
        .into_laurent()
        .ok_or_else(|| Error::Internal("a cluster variable left its adjacent Laurent ring".into()))?;
    let primes = explicit_factors_over_q(&f)?
        .into_iter()
        .map(|factor| {
            let valuation_of_variable = expanded.multiplicity(&factor)?;
            Ok(PrimeDivisor {
                factor,
                valuation_of_variable,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(p) = primes.iter().find(|p| p.valuation_of_variable != 1) {
        return Err(Error::Internal(format!(
            "x{} has valuation {} at the prime over {}",
            i + 1,
            p.valuation_of_variable,
            p.factor
        )));
    }
    Ok(PrimeDivisorData { index: i, primes })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGroupPresentation {
    pub field: CoefficientSpec,
    /// Total number of height-one primes over the cluster variables.
    pub t: usize,
    /// Per exchangeable index, the number `l_i` of primes over `x_i`.
    pub prime_counts: Vec<u64>,
    /// `n x t` matrix whose row `i` is the valuation vector of `x_i`.
    pub relations: Vec<Vec<i64>>,
    /// Invariant factors of the relation matrix.
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl ClassGroupPresentation {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion().is_empty()
    }
}

impl fmt::Display for ClassGroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion().iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.insert(0, "Z".into()),
            r => parts.insert(0, format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// The presentation `Z^t / <a_i>` of the class group over `K`.
pub fn class_group(
    seed: &Seed,
    base: &CoefficientSpec,
    starfish: Starfish,
) -> Result<ClassGroupPresentation> {
    require_starfish(seed, starfish)?;
    let prime_counts = (0..seed.n())
        .map(|i| count_irreducible_factors(seed, i, base))
        .collect::<Result<Vec<u64>>>()?;
    let t = prime_counts.iter().sum::<u64>() as usize;
    let mut relations = Vec::with_capacity(seed.n());
    let mut offset = 0;
    for &l in &prime_counts {
        let mut row = vec![0i64; t];
        row[offset..offset + l as usize].fill(1);
        offset += l as usize;
        relations.push(row);
    }
    let big: Vec<Vec<BigInt>> = relations
        .iter()
        .map(|r| r.iter().map(|&a| BigInt::from(a)).collect())
        .collect();
    let snf = smith_normal_form(&big);
    Ok(ClassGroupPresentation {
        field: *base,
        t,
        prime_counts,
        relations,
        free_rank: t - snf.rank,
        invariant_factors: snf.invariant_factors,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UfdVerdict {
    pub is_ufd: bool,
    /// Indices with `l_i > 1`, paired with `l_i`.
    pub reducible: Vec<(usize, u64)>,
}

impl fmt::Display for UfdVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ufd {
            return write!(f, "factorial: every exchange polynomial is irreducible");
        }
        let list: Vec<String> = self
            .reducible
            .iter()
            .map(|(i, l)| format!("f{} has {l} factors", i + 1))
            .collect();
        write!(f, "not factorial: {}", list.join(", "))
    }
}

/// `U` is factorial iff every exchange polynomial is irreducible over `K`.
pub fn is_ufd(seed: &Seed, base: &CoefficientSpec, starfish: Starfish) -> Result<UfdVerdict> {
    require_starfish(seed, starfish)?;
    let mut reducible = Vec::new();
    for i in 0..seed.n() {
        let l = count_irreducible_factors(seed, i, base)?;
        if l > 1 {
            reducible.push((i, l));
        }
    }
    Ok(UfdVerdict {
        is_ufd: reducible.is_empty(),
        reducible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ExchangeMatrix;

    fn seed(n: usize, m: usize, b: Vec<Vec<i64>>) -> Seed {
        Seed::initial(ExchangeMatrix::new(n, m, b).unwrap(), None).unwrap()
    }

    fn ex1() -> Seed {
        seed(
            4,
            0,
            vec![vec![0, -1, 0, 4], vec![2, 0, 3, 6], vec![0, -3, 0, 0], vec![-4, -3, 0, 0]],
        )
    }

    fn ex2() -> Seed {
        seed(
            4,
            0,
            vec![vec![0, 0, 1, -1], vec![0, 0, -1, -1], vec![-1, 1, 0, 1], vec![1, 1, -1, 0]],
        )
    }

    fn ex3() -> Seed {
        seed(3, 1, vec![vec![0, 2, -2], vec![-2, 0, 2], vec![2, -2, 0], vec![2, 0, 0]])
    }

    fn a2() -> Seed {
        seed(2, 0, vec![vec![0, 1], vec![-1, 0]])
    }

    fn markov() -> Seed {
        seed(3, 0, vec![vec![0, 2, -2], vec![-2, 0, 2], vec![2, -2, 0]])
    }

    fn a3() -> Seed {
        seed(3, 0, vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]])
    }

    #[test]
    fn example_one_table() {
        let s = ex1();
        for (n, rank) in [(12, 4), (4, 3), (6, 2), (1, 1), (3, 2)] {
            let g = class_group(&s, &CoefficientSpec::Cyclotomic(n), Starfish::FromRank).unwrap();
            assert_eq!(g.free_rank, rank, "Q(zeta,{n})");
            assert!(g.torsion().is_empty());
            assert_eq!(g.t, g.free_rank + 4);
        }
        let g = class_group(&s, &CoefficientSpec::Integers, Starfish::FromRank).unwrap();
        assert_eq!(g.free_rank, 1);
        assert_eq!(g.to_string(), "Z");
    }

    #[test]
    fn example_two_and_three() {
        for k in [CoefficientSpec::Integers, CoefficientSpec::rationals(), CoefficientSpec::Cyclotomic(12)] {
            let g = class_group(&ex2(), &k, Starfish::FromRank).unwrap();
            assert!(g.is_trivial());
            assert_eq!(g.to_string(), "0");
            assert!(is_ufd(&ex2(), &k, Starfish::FromRank).unwrap().is_ufd);
        }
        let g = class_group(&ex3(), &CoefficientSpec::Cyclotomic(4), Starfish::FromRank).unwrap();
        assert_eq!((g.free_rank, g.to_string()), (3, "Z^3".to_string()));
        assert!(is_ufd(&ex3(), &CoefficientSpec::rationals(), Starfish::FromRank).unwrap().is_ufd);
        let v = is_ufd(&ex3(), &CoefficientSpec::Cyclotomic(4), Starfish::FromRank).unwrap();
        assert!(!v.is_ufd);
        assert_eq!(v.reducible, vec![(0, 2), (1, 2), (2, 2)]);
    }

    #[test]
    fn example_one_never_factorial() {
        for k in [CoefficientSpec::Integers, CoefficientSpec::rationals(), CoefficientSpec::Cyclotomic(4)] {
            let v = is_ufd(&ex1(), &k, Starfish::FromRank).unwrap();
            assert!(!v.is_ufd);
            assert!(v.reducible.iter().any(|&(i, _)| i == 2));
        }
        let v = is_ufd(&ex1(), &CoefficientSpec::rationals(), Starfish::FromRank).unwrap();
        assert_eq!(v.to_string(), "not factorial: f3 has 2 factors");
    }

    #[test]
    fn relation_blocks() {
        let g = class_group(&ex1(), &CoefficientSpec::Cyclotomic(12), Starfish::FromRank).unwrap();
        assert_eq!(g.prime_counts, vec![2, 1, 3, 2]);
        assert_eq!(
            g.relations,
            vec![
                vec![1, 1, 0, 0, 0, 0, 0, 0],
                vec![0, 0, 1, 0, 0, 0, 0, 0],
                vec![0, 0, 0, 1, 1, 1, 0, 0],
                vec![0, 0, 0, 0, 0, 0, 1, 1],
            ]
        );
    }

    #[test]
    fn prime_data() {
        let d = prime_divisor_data(&a2(), 0, &CoefficientSpec::rationals(), Starfish::FromRank).unwrap();
        assert_eq!(d.primes.len(), 1);
        assert_eq!(d.primes[0].factor.to_string(), "1 + x2");
        assert_eq!(d.primes[0].valuation_of_variable, 1);

        let d = prime_divisor_data(&ex3(), 0, &CoefficientSpec::rationals(), Starfish::FromRank).unwrap();
        assert_eq!(d.primes.len(), 1);
        assert_eq!(d.primes[0].factor.to_string(), "x3^2*x4^2 + x2^2");

        let d = prime_divisor_data(&ex1(), 2, &CoefficientSpec::Integers, Starfish::FromRank).unwrap();
        let factors: Vec<String> = d.primes.iter().map(|p| p.factor.to_string()).collect();
        assert_eq!(factors, vec!["1 + x2", "1 - x2 + x2^2"]);

        assert!(matches!(
            prime_divisor_data(&ex1(), 0, &CoefficientSpec::Cyclotomic(4), Starfish::FromRank),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn refuses_without_full_rank() {
        for s in [markov(), a3()] {
            let e = class_group(&s, &CoefficientSpec::rationals(), Starfish::FromRank).unwrap_err();
            assert!(matches!(e, Error::StarfishNotEstablished { .. }));
            assert!(is_ufd(&s, &CoefficientSpec::rationals(), Starfish::FromRank).is_err());
            assert!(prime_divisor_data(&s, 0, &CoefficientSpec::rationals(), Starfish::FromRank).is_err());
        }
        assert_eq!(
            class_group(&markov(), &CoefficientSpec::rationals(), Starfish::FromRank).unwrap_err(),
            Error::StarfishNotEstablished { rank: 2, n: 3 }
        );
        let g = class_group(&markov(), &CoefficientSpec::rationals(), Starfish::Asserted).unwrap();
        assert!(g.is_trivial());
    }

    #[test]
    fn integers_allow_isolated_indices_with_assertion() {
        let s = seed(1, 0, vec![vec![0]]);
        let g = class_group(&s, &CoefficientSpec::Integers, Starfish::Asserted).unwrap();
        assert!(g.is_trivial());
        let d = prime_divisor_data(&s, 0, &CoefficientSpec::Integers, Starfish::Asserted).unwrap();
        assert_eq!(d.primes[0].factor, LaurentPoly::from_int(1, 2));
        assert!(class_group(&s, &CoefficientSpec::rationals(), Starfish::Asserted).is_err());
    }
}
