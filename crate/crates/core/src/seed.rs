//! Seeds with cluster variables tracked in the initial frame, seed mutation,
//! exchange polynomials, identification up to relabeling, and breadth-first
//! exploration of the mutation class.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::coefficients::CoefficientSpec;
use crate::error::{Error, Result};
use crate::laurent::{ExponentVector, LaurentPoly};
use crate::matrix::ExchangeMatrix;

/// A seed: exchange matrix plus the exchangeable cluster variables, each
/// written as a Laurent polynomial in the initial variables `x1..x{n+m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    matrix: ExchangeMatrix,
    cluster: Vec<LaurentPoly>,
    names: Vec<String>,
    history: Vec<usize>,
}

/// Identity of a seed up to relabeling of exchangeable indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SeedKey {
    pub cluster: Vec<String>,
    pub matrix: Vec<Vec<i64>>,
}

/// The two monomials of an exchange polynomial: `x^positive + x^negative`.
pub fn exchange_monomials(matrix: &ExchangeMatrix, i: usize) -> Result<(ExponentVector, ExponentVector)> {
    if i >= matrix.n() {
        return Err(Error::IndexOutOfRange {
            index: i,
            bound: matrix.n(),
        });
    }
    let column: Vec<i64> = matrix.rows().iter().map(|row| row[i]).collect();
    let positive = column.iter().map(|&b| b.max(0)).collect();
    let negative = column.iter().map(|&b| (-b).max(0)).collect();
    Ok((ExponentVector::new(positive), ExponentVector::new(negative)))
}

/// `f_i = prod_{b_ki > 0} x_k^{b_ki} + prod_{b_ki < 0} x_k^{-b_ki}` in the
/// frame of the seed carrying `matrix`.
pub fn exchange_polynomial(matrix: &ExchangeMatrix, i: usize) -> Result<LaurentPoly> {
    let (pos, neg) = exchange_monomials(matrix, i)?;
    let one = num_rational::BigRational::from_integer(1.into());
    Ok(&LaurentPoly::monomial(pos, one.clone()) + &LaurentPoly::monomial(neg, one))
}

impl Seed {
    /// The initial seed: `cluster[i] = x_{i+1}`. `names` labels all `n + m`
    /// variables and defaults to `x1, x2, ...`.
    pub fn initial(matrix: ExchangeMatrix, names: Option<Vec<String>>) -> Result<Seed> {
        let nvars = matrix.nvars();
        let names = match names {
            Some(names) => {
                if names.len() != nvars {
                    return Err(Error::MalformedInput(format!(
                        "expected {} variable names, found {}",
                        nvars,
                        names.len()
                    )));
                }
                let distinct: BTreeSet<&String> = names.iter().collect();
                if distinct.len() != names.len() {
                    return Err(Error::MalformedInput("variable names must be distinct".into()));
                }
                names
            }
            None => (1..=nvars).map(|i| format!("x{i}")).collect(),
        };
        let cluster = (0..matrix.n()).map(|i| LaurentPoly::var(nvars, i)).collect();
        Ok(Seed {
            matrix,
            cluster,
            names,
            history: Vec::new(),
        })
    }

    /// Like [`Seed::initial`], but rejects isolated exchangeable indices when
    /// the base ring is a field.
    pub fn initial_over(
        matrix: ExchangeMatrix,
        names: Option<Vec<String>>,
        base: &CoefficientSpec,
    ) -> Result<Seed> {
        let seed = Seed::initial(matrix, names)?;
        seed.check_base_ring(base)?;
        Ok(seed)
    }

    /// Over a field an isolated exchangeable index is a unit, so it must be
    /// frozen instead; over the integers it is allowed.
    pub fn check_base_ring(&self, base: &CoefficientSpec) -> Result<()> {
        if base.is_field() {
            if let Some(index) = (0..self.n()).find(|&i| self.matrix.is_isolated(i)) {
                return Err(Error::IsolatedIndex { index });
            }
        }
        Ok(())
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    pub fn cluster(&self) -> &[LaurentPoly] {
        &self.cluster
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn frozen_names(&self) -> &[String] {
        &self.names[self.n()..]
    }

    pub fn history(&self) -> &[usize] {
        &self.history
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn m(&self) -> usize {
        self.matrix.m()
    }

    pub fn nvars(&self) -> usize {
        self.matrix.nvars()
    }

    pub fn exchange_polynomial(&self, i: usize) -> Result<LaurentPoly> {
        exchange_polynomial(&self.matrix, i)
    }

    /// The variable in slot `k` expressed in the initial frame: a cluster
    /// variable for exchangeable `k`, the frozen variable itself otherwise.
    fn slot_value(&self, k: usize) -> LaurentPoly {
        if k < self.n() {
            self.cluster[k].clone()
        } else {
            LaurentPoly::var(self.nvars(), k)
        }
    }

    /// Mutation in direction `i`; the new cluster variable is computed in the
    /// initial frame by exact division.
    pub fn mutate(&self, i: usize) -> Result<Seed> {
        let matrix = self.matrix.mutate(i)?;
        let nvars = self.nvars();
        let mut positive = LaurentPoly::one(nvars);
        let mut negative = LaurentPoly::one(nvars);
        for k in 0..nvars {
            let b = self.matrix.entry(k, i);
            if b > 0 {
                positive = &positive * &self.slot_value(k).pow(b as u32);
            } else if b < 0 {
                negative = &negative * &self.slot_value(k).pow((-b) as u32);
            }
        }
        let numerator = &positive + &negative;
        let replacement = numerator.exact_divide(&self.cluster[i]).map_err(|e| {
            Error::Internal(format!("exchange relation in direction {} is not exact: {e}", i + 1))
        })?;
        let mut cluster = self.cluster.clone();
        cluster[i] = replacement;
        let mut history = self.history.clone();
        history.push(i);
        Ok(Seed {
            matrix,
            cluster,
            names: self.names.clone(),
            history,
        })
    }

    pub fn mutate_path(&self, path: &[usize]) -> Result<Seed> {
        path.iter().try_fold(self.clone(), |seed, &i| seed.mutate(i))
    }

    /// Same matrix and cluster, ignoring history.
    pub fn same_seed(&self, other: &Seed) -> bool {
        self.matrix == other.matrix && self.cluster == other.cluster
    }

    /// Sorts exchangeable slots by the canonical text of their cluster
    /// variables, permuting the matrix consistently; frozen slots stay put.
    /// Returns the permutation with `perm[new] = old`.
    pub fn canonical_form(&self) -> (Seed, Vec<usize>) {
        let texts: Vec<String> = self.cluster.iter().map(|c| c.to_string()).collect();
        let mut perm: Vec<usize> = (0..self.n()).collect();
        perm.sort_by(|&a, &b| texts[a].cmp(&texts[b]));
        (self.relabel(&perm), perm)
    }

    /// Reorders exchangeable slots, `perm[new] = old`, keeping the frame.
    /// `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Seed {
        Seed {
            matrix: self.matrix.permute_exchangeable(perm),
            cluster: perm.iter().map(|&k| self.cluster[k].clone()).collect(),
            names: self.names.clone(),
            history: self.history.clone(),
        }
    }

    pub fn canonical_key(&self) -> SeedKey {
        let (canon, _) = self.canonical_form();
        SeedKey {
            cluster: canon.cluster.iter().map(|c| c.to_string()).collect(),
            matrix: canon.matrix.rows().to_vec(),
        }
    }

    /// Two seeds are identified iff their canonical forms agree.
    pub fn is_identified_with(&self, other: &Seed) -> bool {
        self.canonical_key() == other.canonical_key()
    }
}

/// Bounds for [`explore`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExploreLimits {
    pub max_seeds: usize,
    pub max_depth: usize,
}

impl Default for ExploreLimits {
    fn default() -> Self {
        ExploreLimits {
            max_seeds: 20_000,
            max_depth: 32,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitHit {
    MaxSeeds(usize),
    MaxDepth(usize),
}

impl fmt::Display for LimitHit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitHit::MaxSeeds(k) => write!(f, "seed limit {k} reached"),
            LimitHit::MaxDepth(k) => write!(f, "depth limit {k} reached"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationClassReport {
    pub seeds_found: usize,
    /// Cluster variables in canonical text order.
    pub cluster_variables: Vec<LaurentPoly>,
    pub finite: bool,
    pub limit_hit: Option<LimitHit>,
}

struct Closure {
    seeds: Vec<(Seed, usize)>,
    variables: BTreeMap<String, LaurentPoly>,
    limit_hit: Option<LimitHit>,
}

fn breadth_first(seed: &Seed, limits: ExploreLimits) -> Result<Closure> {
    let (start, _) = seed.canonical_form();
    let mut visited: BTreeSet<SeedKey> = BTreeSet::from([start.canonical_key()]);
    let mut queue = VecDeque::from([(start, 0usize)]);
    let mut seeds = Vec::new();
    let mut variables = BTreeMap::new();
    let mut limit_hit = None;

    while let Some((current, depth)) = queue.pop_front() {
        for v in current.cluster() {
            variables.entry(v.to_string()).or_insert_with(|| v.clone());
        }
        for i in 0..current.n() {
            let (next, _) = current.mutate(i)?.canonical_form();
            let key = next.canonical_key();
            if visited.contains(&key) {
                continue;
            }
            if depth + 1 > limits.max_depth {
                limit_hit.get_or_insert(LimitHit::MaxDepth(limits.max_depth));
                continue;
            }
            if visited.len() >= limits.max_seeds {
                limit_hit.get_or_insert(LimitHit::MaxSeeds(limits.max_seeds));
                continue;
            }
            visited.insert(key);
            queue.push_back((next, depth + 1));
        }
        seeds.push((current, depth));
    }
    Ok(Closure {
        seeds,
        variables,
        limit_hit,
    })
}

/// Breadth-first closure of the mutation class over canonical seeds.
pub fn explore(seed: &Seed, limits: ExploreLimits) -> Result<MutationClassReport> {
    let closure = breadth_first(seed, limits)?;
    Ok(MutationClassReport {
        seeds_found: closure.seeds.len(),
        cluster_variables: closure.variables.into_values().collect(),
        finite: closure.limit_hit.is_none(),
        limit_hit: closure.limit_hit,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentReport {
    pub depth: usize,
    pub seeds_visited: usize,
    pub variables: Vec<LaurentPoly>,
    pub max_coefficient: BigInt,
    /// The whole mutation class was reached within `depth`.
    pub closed: bool,
}

/// Mutates along every sequence of length at most `depth` and checks that
/// each cluster variable is a Laurent polynomial with integer coefficients
/// in the initial frame. A failure is an engine bug and surfaces as
/// [`Error::Internal`].
pub fn verify_laurent_phenomenon(seed: &Seed, depth: usize) -> Result<LaurentReport> {
    let closure = breadth_first(
        seed,
        ExploreLimits {
            max_seeds: usize::MAX,
            max_depth: depth,
        },
    )?;
    let mut max_coefficient = BigInt::zero();
    for v in closure.variables.values() {
        if !v.has_integer_coefficients() {
            return Err(Error::Internal(format!(
                "cluster variable {v} has non-integral coefficients"
            )));
        }
        let c = v.max_abs_coefficient().to_integer();
        if c > max_coefficient {
            max_coefficient = c;
        }
    }
    Ok(LaurentReport {
        depth,
        seeds_visited: closure.seeds.len(),
        variables: closure.variables.into_values().collect(),
        max_coefficient,
        closed: closure.limit_hit.is_none(),
    })
}
