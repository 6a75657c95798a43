//! Base rings: the integers or a cyclotomic field `Q(zeta_N)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The base ring `K` of an algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientSpec {
    Integers,
    /// `Q(zeta_N)`; `N = 1` is the rationals.
    Cyclotomic(u64),
}

impl CoefficientSpec {
    pub fn rationals() -> Self {
        CoefficientSpec::Cyclotomic(1)
    }

    pub fn cyclotomic(order: u64) -> Result<Self> {
        if order == 0 {
            return Err(Error::MalformedInput("cyclotomic order must be at least 1".into()));
        }
        Ok(CoefficientSpec::Cyclotomic(order))
    }

    pub fn is_field(&self) -> bool {
        matches!(self, CoefficientSpec::Cyclotomic(_))
    }

    /// Order of the full group of roots of unity in `K`: `N` for even `N`,
    /// `2N` for odd `N` (since `-zeta_N` is a primitive `2N`-th root), and 2
    /// for the integers.
    pub fn effective_order(&self) -> u64 {
        match *self {
            CoefficientSpec::Integers => 2,
            CoefficientSpec::Cyclotomic(n) if n % 2 == 0 => n,
            CoefficientSpec::Cyclotomic(n) => 2 * n,
        }
    }

    /// Whether `K` contains a primitive `d`-th root of unity.
    pub fn has_primitive_root(&self, d: u64) -> bool {
        d > 0 && self.effective_order().is_multiple_of(d)
    }

    /// `Z` and `Q`: the rings where exchange polynomials have explicit
    /// factorizations with rational coefficients.
    pub fn is_rational(&self) -> bool {
        self.effective_order() == 2
    }

    /// Whether two specs give the same ring, e.g. `Q(zeta_3) = Q(zeta_6)`.
    pub fn same_ring(&self, other: &CoefficientSpec) -> bool {
        self.is_field() == other.is_field() && self.effective_order() == other.effective_order()
    }
}

impl fmt::Display for CoefficientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientSpec::Integers => write!(f, "Z"),
            CoefficientSpec::Cyclotomic(1) => write!(f, "Q"),
            CoefficientSpec::Cyclotomic(n) => write!(f, "Q(zeta,{n})"),
        }
    }
}

/// Accepts `Z`, `Q`, `Q(zeta,N)` and `Q(zeta_N)`.
impl FromStr for CoefficientSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match compact.as_str() {
            "Z" => return Ok(CoefficientSpec::Integers),
            "Q" => return Ok(CoefficientSpec::rationals()),
            _ => {}
        }
        let inner = compact
            .strip_prefix("Q(zeta")
            .and_then(|r| r.strip_suffix(')'))
            .and_then(|r| r.strip_prefix(',').or_else(|| r.strip_prefix('_')))
            .ok_or_else(|| Error::MalformedInput(format!("unknown field `{s}`")))?;
        let order: u64 = inner
            .parse()
            .map_err(|_| Error::MalformedInput(format!("bad cyclotomic order in `{s}`")))?;
        CoefficientSpec::cyclotomic(order)
    }
}
