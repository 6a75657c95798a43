//! Command-line interface and JSON/HTTP service over `upcluster-core`.

pub mod app;
pub mod commands;
pub mod error;
pub mod parser;
pub mod schema;
pub mod server;
