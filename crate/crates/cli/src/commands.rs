//! Commands shared by the command line and the HTTP service. Every command
//! returns a serializable report; both front ends print the same JSON.

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use upcluster_core::class_group::{class_group, is_ufd, Starfish};
use upcluster_core::factor::factor_report;
use upcluster_core::membership::{
    is_laurent_in_seed, is_member_star, local_factorization, valuation_pairing_fast, valuation_pairing_iterative,
    DirectionCheck, StarfishBasis,
};
use upcluster_core::seed::{explore, verify_laurent_phenomenon, ExploreLimits, LimitHit};
use upcluster_core::{CoefficientSpec, Error as CoreError, ExchangeMatrix, ExponentVector, LaurentPoly, Seed};

use crate::error::CliResult;
use crate::parser::parse_element;
use crate::schema::{to_zero_based, FieldJson, MatrixJson, QuiverJson, SeedJson};

/// A command result with a JSON form and a plain-text form.
pub trait Report: Serialize {
    fn text(&self) -> String;
}

fn monomial_text(e: &ExponentVector) -> String {
    LaurentPoly::monomial(e.clone(), BigRational::one()).to_string()
}

fn element(seed: &Seed, text: &str) -> CliResult<LaurentPoly> {
    parse_element(text, seed.names())
}

fn exchangeable(seed: &Seed, i: usize) -> CliResult<usize> {
    let k = to_zero_based(&[i])?[0];
    if k >= seed.n() {
        return Err(CoreError::IndexOutOfRange { index: k, bound: seed.n() }.into());
    }
    Ok(k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurrentJson {
    #[serde(rename = "B")]
    pub b: Vec<Vec<i64>>,
    pub cluster: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MutateReport {
    #[serde(flatten)]
    pub seed: SeedJson,
    pub current: CurrentJson,
}

impl MutateReport {
    pub fn new(initial: &ExchangeMatrix, seed: &Seed) -> Self {
        MutateReport {
            seed: SeedJson::from_seed(initial, seed),
            current: CurrentJson {
                b: seed.matrix().rows().to_vec(),
                cluster: seed.cluster().iter().map(|x| x.to_string()).collect(),
            },
        }
    }
}

impl Report for MutateReport {
    fn text(&self) -> String {
        let history: Vec<String> = self.seed.history.iter().map(|i| i.to_string()).collect();
        let mut out = format!("history: [{}]\nB:\n", history.join(", "));
        for row in &self.current.b {
            let cells: Vec<String> = row.iter().map(|a| format!("{a:>3}")).collect();
            out.push_str(&format!("  {}\n", cells.join(" ")));
        }
        out.push_str("cluster:\n");
        for (k, x) in self.current.cluster.iter().enumerate() {
            out.push_str(&format!("  [{}] {x}\n", k + 1));
        }
        out
    }
}

/// Mutates the seed of `doc` further along the 1-based `path`.
pub fn mutate(doc: &SeedJson, path: &[usize]) -> CliResult<MutateReport> {
    let seed = doc.to_seed()?.mutate_path(&to_zero_based(path)?)?;
    Ok(MutateReport::new(&doc.initial_matrix()?, &seed))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolynomialRecord {
    pub i: usize,
    pub f: String,
    pub l: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeReport {
    pub field: FieldJson,
    pub polynomials: Vec<PolynomialRecord>,
}

impl Report for ExchangeReport {
    fn text(&self) -> String {
        let mut out = String::new();
        for p in &self.polynomials {
            out.push_str(&format!("f{} = {}    l = {}\n", p.i, p.f, p.l));
            if let Some(factors) = &p.factors {
                if factors.len() > 1 {
                    for g in factors {
                        out.push_str(&format!("    ({g})\n"));
                    }
                }
            }
        }
        out
    }
}

pub fn exchange_polys(seed: &Seed, field: &CoefficientSpec) -> CliResult<ExchangeReport> {
    let report = factor_report(seed, field)?;
    Ok(ExchangeReport {
        field: FieldJson::from_spec(field),
        polynomials: report
            .per_index
            .into_iter()
            .map(|r| PolynomialRecord {
                i: r.index + 1,
                f: r.polynomial.to_string(),
                l: r.count,
                factors: r.factors.map(|fs| fs.iter().map(|g| g.to_string()).collect()),
            })
            .collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeCount {
    pub i: usize,
    pub l: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassGroupReport {
    pub field: FieldJson,
    pub t: usize,
    pub rank: usize,
    pub invariant_factors: Vec<String>,
    pub per_variable: Vec<PrimeCount>,
    pub relations: Vec<Vec<i64>>,
    pub group: String,
    pub starfish: &'static str,
}

impl Report for ClassGroupReport {
    fn text(&self) -> String {
        let counts: Vec<String> = self.per_variable.iter().map(|p| format!("l{} = {}", p.i, p.l)).collect();
        format!(
            "class group over {}: {}\nt = {}, rank = {}\n{}\n",
            field_text(&self.field),
            self.group,
            self.t,
            self.rank,
            counts.join(", ")
        )
    }
}

fn field_text(field: &FieldJson) -> String {
    field.to_spec().map(|k| k.to_string()).unwrap_or_else(|_| field.k.clone())
}

fn starfish_mode(assert_starfish: bool) -> Starfish {
    if assert_starfish {
        Starfish::Asserted
    } else {
        Starfish::FromRank
    }
}

pub fn class_group_report(seed: &Seed, field: &CoefficientSpec, assert_starfish: bool) -> CliResult<ClassGroupReport> {
    let g = class_group(seed, field, starfish_mode(assert_starfish))?;
    Ok(ClassGroupReport {
        field: FieldJson::from_spec(field),
        t: g.t,
        rank: g.free_rank,
        invariant_factors: g.invariant_factors.iter().map(|d| d.to_string()).collect(),
        per_variable: g
            .prime_counts
            .iter()
            .enumerate()
            .map(|(k, &l)| PrimeCount { i: k + 1, l })
            .collect(),
        group: g.to_string(),
        relations: g.relations,
        starfish: if seed.matrix().is_full_rank() { "full-rank" } else { "asserted" },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UfdReport {
    pub field: FieldJson,
    pub ufd: bool,
    pub reason: String,
    pub reducible: Vec<PrimeCount>,
}

impl Report for UfdReport {
    fn text(&self) -> String {
        format!("{}\n", self.reason)
    }
}

pub fn ufd_report(seed: &Seed, field: &CoefficientSpec, assert_starfish: bool) -> CliResult<UfdReport> {
    let verdict = is_ufd(seed, field, starfish_mode(assert_starfish))?;
    Ok(UfdReport {
        field: FieldJson::from_spec(field),
        ufd: verdict.is_ufd,
        reason: verdict.to_string(),
        reducible: verdict.reducible.iter().map(|&(i, l)| PrimeCount { i: i + 1, l }).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExploreReport {
    pub seeds: usize,
    pub cluster_variables: usize,
    pub variables: Vec<String>,
    pub finite: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit: Option<String>,
}

impl Report for ExploreReport {
    fn text(&self) -> String {
        let mut out = format!("seeds: {}\ncluster variables: {}\n", self.seeds, self.cluster_variables);
        match &self.limit {
            Some(limit) => out.push_str(&format!("stopped: {limit}\n")),
            None => out.push_str("mutation class is finite\n"),
        }
        for v in &self.variables {
            out.push_str(&format!("  {v}\n"));
        }
        out
    }
}

pub fn explore_report(seed: &Seed, max_seeds: usize, max_depth: usize) -> CliResult<ExploreReport> {
    let report = explore(seed, ExploreLimits { max_seeds, max_depth })?;
    Ok(ExploreReport {
        seeds: report.seeds_found,
        cluster_variables: report.cluster_variables.len(),
        variables: report.cluster_variables.iter().map(|v| v.to_string()).collect(),
        finite: report.finite,
        limit: report.limit_hit.map(|l: LimitHit| l.to_string()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessJson {
    pub j: i64,
    pub quotient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DirectionJson {
    pub i: usize,
    pub laurent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<WitnessJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_power: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MemberReport {
    pub element: String,
    pub member: bool,
    pub in_upper: bool,
    pub starfish_basis: &'static str,
    pub per_direction: Vec<DirectionJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<Vec<usize>>,
    #[serde(rename = "laurent_in_seed", skip_serializing_if = "Option::is_none")]
    pub laurent_in_seed: Option<bool>,
}

impl Report for MemberReport {
    fn text(&self) -> String {
        let scope = if self.starfish_basis == "full-rank" {
            "in U"
        } else {
            "in the star intersection (an upper bound for U; rank is not full)"
        };
        let mut out = format!(
            "{}: {}\n",
            self.element,
            if self.member { scope.to_string() } else { "not a member".into() }
        );
        for d in &self.per_direction {
            match d.failing_power {
                None => out.push_str(&format!("  direction {}: Laurent\n", d.i)),
                Some(j) => out.push_str(&format!("  direction {}: fails at power {j}\n", d.i)),
            }
        }
        if let (Some(path), Some(ok)) = (&self.path, self.laurent_in_seed) {
            let p: Vec<String> = path.iter().map(|i| i.to_string()).collect();
            out.push_str(&format!("  along [{}]: {}\n", p.join(", "), if ok { "Laurent" } else { "not Laurent" }));
        }
        out
    }
}

pub fn member(seed: &Seed, text: &str, path: Option<&[usize]>) -> CliResult<MemberReport> {
    let u = element(seed, text)?;
    let certificate = is_member_star(&u, seed)?;
    let per_direction = certificate
        .directions
        .iter()
        .map(|d| match d {
            DirectionCheck::Passed { index, witnesses } => DirectionJson {
                i: index + 1,
                laurent: true,
                witnesses: Some(
                    witnesses
                        .iter()
                        .map(|w| WitnessJson {
                            j: w.power,
                            quotient: w.quotient.to_string(),
                        })
                        .collect(),
                ),
                failing_power: None,
            },
            DirectionCheck::Failed { index, power } => DirectionJson {
                i: index + 1,
                laurent: false,
                witnesses: None,
                failing_power: Some(*power),
            },
        })
        .collect();
    let laurent_in_seed = match path {
        Some(p) => Some(is_laurent_in_seed(&u, seed, &to_zero_based(p)?)?),
        None => None,
    };
    Ok(MemberReport {
        element: u.to_string(),
        member: certificate.member,
        in_upper: certificate.in_upper(),
        starfish_basis: match certificate.basis {
            StarfishBasis::FullRank => "full-rank",
            StarfishBasis::UpperBoundOnly => "upper-bound-only",
        },
        per_direction,
        path: path.map(|p| p.to_vec()),
        laurent_in_seed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingReport {
    pub i: usize,
    pub element: String,
    pub pairing: u32,
}

impl Report for PairingReport {
    fn text(&self) -> String {
        format!("(x{} | {}) = {}\n", self.i, self.element, self.pairing)
    }
}

/// `(x_var | u)`, computed by the min-over-primes formula and confirmed by
/// the iterative definition.
pub fn pairing(seed: &Seed, var: usize, text: &str) -> CliResult<PairingReport> {
    let i = exchangeable(seed, var)?;
    let u = element(seed, text)?;
    let fast = valuation_pairing_fast(&u, seed, i)?;
    let iterative = valuation_pairing_iterative(&u, seed, i)?;
    if fast != iterative {
        return Err(CoreError::Internal(format!(
            "pairing methods disagree on (x{var} | {u}): {fast} vs {iterative}"
        ))
        .into());
    }
    Ok(PairingReport {
        i: var,
        element: u.to_string(),
        pairing: fast,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalFactorReport {
    pub element: String,
    pub exponents: Vec<u32>,
    pub monomial: String,
    pub cofactor: String,
}

impl Report for LocalFactorReport {
    fn text(&self) -> String {
        format!("{} = ({}) * ({})\n", self.element, self.monomial, self.cofactor)
    }
}

pub fn local_factor(seed: &Seed, text: &str) -> CliResult<LocalFactorReport> {
    let u = element(seed, text)?;
    let lf = local_factorization(&u, seed)?;
    let monomial = lf.monomial(seed.nvars());
    Ok(LocalFactorReport {
        element: u.to_string(),
        monomial: monomial_text(&monomial),
        exponents: lf.exponents,
        cofactor: lf.cofactor.to_string(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LaurentCheckReport {
    pub depth: usize,
    pub seeds_visited: usize,
    pub variables: usize,
    pub max_coefficient: String,
    pub closed: bool,
    pub integral: bool,
}

impl Report for LaurentCheckReport {
    fn text(&self) -> String {
        format!(
            "depth {}: {} seeds, {} cluster variables, all Laurent with integer coefficients (largest {}){}\n",
            self.depth,
            self.seeds_visited,
            self.variables,
            self.max_coefficient,
            if self.closed { "; mutation class exhausted" } else { "" }
        )
    }
}

pub fn laurent_check(seed: &Seed, depth: usize) -> CliResult<LaurentCheckReport> {
    let report = verify_laurent_phenomenon(seed, depth)?;
    Ok(LaurentCheckReport {
        depth,
        seeds_visited: report.seeds_visited,
        variables: report.variables.len(),
        max_coefficient: report.max_coefficient.to_string(),
        closed: report.closed,
        integral: true,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassGroupSummary {
    pub established: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StatePolynomial {
    pub i: usize,
    pub f: String,
    /// Absent when the count is undefined, e.g. an isolated index over a field.
    pub l: Option<u64>,
}

/// Everything the explorer shows for a seed under a field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StateReport {
    pub field: FieldJson,
    pub seed: SeedJson,
    pub matrix: MatrixJson,
    pub quiver: Option<QuiverJson>,
    pub cluster: Vec<String>,
    pub exchange_polynomials: Vec<StatePolynomial>,
    pub class_group: ClassGroupSummary,
    pub ufd: Option<bool>,
}

impl Report for StateReport {
    fn text(&self) -> String {
        let mut out = String::new();
        for p in &self.exchange_polynomials {
            let l = p.l.map_or("-".to_string(), |l| l.to_string());
            out.push_str(&format!("f{} = {}    l = {l}\n", p.i, p.f));
        }
        match (&self.class_group.group, &self.class_group.message) {
            (Some(g), _) => out.push_str(&format!("class group: {g}\n")),
            (None, Some(m)) => out.push_str(&format!("class group: {m}\n")),
            _ => {}
        }
        out
    }
}

pub fn state(initial: &ExchangeMatrix, seed: &Seed, field: &CoefficientSpec) -> StateReport {
    let exchange_polynomials = (0..seed.n())
        .map(|i| StatePolynomial {
            i: i + 1,
            f: seed.exchange_polynomial(i).map(|f| f.to_string()).unwrap_or_default(),
            l: upcluster_core::factor::count_irreducible_factors(seed, i, field).ok(),
        })
        .collect();
    let (class_group, ufd) = match class_group(seed, field, Starfish::FromRank) {
        Ok(g) => (
            ClassGroupSummary {
                established: true,
                rank: Some(g.free_rank),
                group: Some(g.to_string()),
                message: None,
            },
            Some(g.is_trivial()),
        ),
        Err(e) => (
            ClassGroupSummary {
                established: false,
                rank: None,
                group: None,
                message: Some(e.to_string()),
            },
            None,
        ),
    };
    StateReport {
        field: FieldJson::from_spec(field),
        seed: SeedJson::from_seed(initial, seed),
        matrix: MatrixJson::from_matrix(seed.matrix()),
        quiver: seed.matrix().to_quiver().ok().map(|q| QuiverJson::from_quiver(&q)),
        cluster: seed.cluster().iter().map(|x| x.to_string()).collect(),
        exchange_polynomials,
        class_group,
        ufd,
    }
}
