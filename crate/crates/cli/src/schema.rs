//! JSON documents: matrices, quivers, seeds and field descriptors.
//!
//! Indices are 1-based in every document. A seed document holds the initial
//! matrix and the mutation history; the seed it denotes is obtained by
//! replaying that history.

use serde::{Deserialize, Serialize};
use upcluster_core::matrix::Arrow;
use upcluster_core::{CoefficientSpec, ExchangeMatrix, IceQuiver, Seed};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub m: usize,
    #[serde(rename = "B")]
    pub b: Vec<Vec<i64>>,
}

impl MatrixJson {
    pub fn from_matrix(matrix: &ExchangeMatrix) -> Self {
        MatrixJson {
            n: matrix.n(),
            m: matrix.m(),
            b: matrix.rows().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub n: usize,
    pub m: usize,
    /// `[from, to, multiplicity]`, 1-based vertices.
    pub arrows: Vec<[u64; 3]>,
}

impl QuiverJson {
    pub fn from_quiver(quiver: &IceQuiver) -> Self {
        QuiverJson {
            n: quiver.n(),
            m: quiver.m(),
            arrows: quiver
                .arrows()
                .iter()
                .map(|a| [a.from as u64 + 1, a.to as u64 + 1, a.multiplicity])
                .collect(),
        }
    }

    pub fn to_quiver(&self) -> CliResult<IceQuiver> {
        let arrows = self
            .arrows
            .iter()
            .map(|&[from, to, multiplicity]| {
                if from == 0 || to == 0 {
                    return Err(CliError::Input("quiver vertices are numbered from 1".into()));
                }
                Ok(Arrow {
                    from: from as usize - 1,
                    to: to as usize - 1,
                    multiplicity,
                })
            })
            .collect::<CliResult<Vec<_>>>()?;
        Ok(IceQuiver::new(self.n, self.m, arrows)?)
    }
}

/// A seed document: either a matrix `B` or quiver `arrows`, plus optional
/// variable names and a 1-based mutation history.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedJson {
    pub n: usize,
    pub m: usize,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrows: Option<Vec<[u64; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    #[serde(default)]
    pub history: Vec<usize>,
}

impl SeedJson {
    pub fn parse(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("seed document: {e}")))
    }

    pub fn initial_matrix(&self) -> CliResult<ExchangeMatrix> {
        match (&self.b, &self.arrows) {
            (Some(b), None) => Ok(ExchangeMatrix::new(self.n, self.m, b.clone())?),
            (None, Some(arrows)) => {
                let quiver = QuiverJson {
                    n: self.n,
                    m: self.m,
                    arrows: arrows.clone(),
                };
                Ok(quiver.to_quiver()?.to_matrix()?)
            }
            _ => Err(CliError::Input("a seed needs exactly one of `B` and `arrows`".into())),
        }
    }

    /// The initial seed, before the history is applied.
    pub fn initial_seed(&self) -> CliResult<Seed> {
        Ok(Seed::initial(self.initial_matrix()?, self.names.clone())?)
    }

    /// The history as 0-based directions.
    pub fn path(&self) -> CliResult<Vec<usize>> {
        to_zero_based(&self.history)
    }

    pub fn to_seed(&self) -> CliResult<Seed> {
        Ok(self.initial_seed()?.mutate_path(&self.path()?)?)
    }

    /// Document for `seed`: its initial matrix with the full history.
    pub fn from_seed(initial: &ExchangeMatrix, seed: &Seed) -> Self {
        let default_names = (1..=seed.nvars()).all(|k| seed.names()[k - 1] == format!("x{k}"));
        SeedJson {
            n: initial.n(),
            m: initial.m(),
            b: Some(initial.rows().to_vec()),
            arrows: None,
            names: (!default_names).then(|| seed.names().to_vec()),
            history: seed.history().iter().map(|i| i + 1).collect(),
        }
    }
}

/// Converts 1-based indices, rejecting 0.
pub fn to_zero_based(indices: &[usize]) -> CliResult<Vec<usize>> {
    indices
        .iter()
        .map(|&i| {
            i.checked_sub(1).ok_or(CliError::ZeroIndex)
        })
        .collect()
}

/// `{"K":"Z"}` or `{"K":"Q(zeta)","N":N}`; `N = 1` is `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    #[serde(rename = "K")]
    pub k: String,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
}

impl FieldJson {
    pub fn from_spec(spec: &CoefficientSpec) -> Self {
        match spec {
            CoefficientSpec::Integers => FieldJson {
                k: "Z".into(),
                n: None,
            },
            CoefficientSpec::Cyclotomic(n) => FieldJson {
                k: "Q(zeta)".into(),
                n: Some(*n),
            },
        }
    }

    pub fn to_spec(&self) -> CliResult<CoefficientSpec> {
        match (self.k.as_str(), self.n) {
            ("Z", None) => Ok(CoefficientSpec::Integers),
            ("Q", None) => Ok(CoefficientSpec::rationals()),
            ("Q(zeta)", Some(n)) => Ok(CoefficientSpec::cyclotomic(n)?),
            _ => Err(CliError::Input(format!("unknown field descriptor {self:?}"))),
        }
    }
}

/// A field given as text (`Z`, `Q`, `Q(zeta,N)`) or as a descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldArg {
    Text(String),
    Descriptor(FieldJson),
}

impl FieldArg {
    pub fn to_spec(&self) -> CliResult<CoefficientSpec> {
        match self {
            FieldArg::Text(s) => parse_field(s),
            FieldArg::Descriptor(d) => d.to_spec(),
        }
    }
}

pub fn parse_field(text: &str) -> CliResult<CoefficientSpec> {
    text.parse::<CoefficientSpec>()
        .map_err(|e| CliError::Input(e.to_string()))
}
