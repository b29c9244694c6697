//! Gap-box covers for equi-joins: cover generation, incremental maintenance,
//! domain reordering, a certificate-extracting join engine, and exhaustive
//! brute-force oracles for verifying all of it on small instances.

pub mod coverkit;
pub mod engine;
pub mod error;
pub mod geometry;
pub mod instances;
pub mod oracle;
pub mod ordering;
pub mod relational;

pub use error::{Error, Result};
