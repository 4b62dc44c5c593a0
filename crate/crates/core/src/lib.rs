//! Exact-arithmetic workbench for graded adic topologies on unitriangular
//! groups UT(n,Z) and generalized Heisenberg groups.

pub mod acceptance;
pub mod adic;
pub mod config;
pub mod error;
pub mod heisenberg;
pub mod report;
pub mod ring;
pub mod topology;
pub mod ut;

pub use error::{Error, Result};
