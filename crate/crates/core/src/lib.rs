//! Exact arithmetic for cluster and upper cluster algebras of geometric type
//! with invertible frozen variables.
//!
//! The crate covers Laurent polynomial arithmetic ([`laurent`]), exchange
//! matrices and mutation ([`matrix`]), seeds tracked in the initial frame
//! ([`seed`]), irreducible-factor counts of exchange polynomials ([`factor`]),
//! class groups of upper cluster algebras satisfying the starfish condition
//! ([`class_group`]), and membership, valuations and local factorizations
//! ([`membership`]).

pub mod arith;
pub mod class_group;
pub mod coefficients;
pub mod error;
pub mod factor;
pub mod laurent;
pub mod matrix;
pub mod membership;
pub mod seed;
pub mod snf;

pub use coefficients::CoefficientSpec;
pub use error::{Error, Result};
pub use laurent::{ExponentVector, LaurentPoly};
pub use matrix::{ExchangeMatrix, IceQuiver};
pub use seed::Seed;
