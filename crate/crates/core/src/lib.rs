//! Simulation and numerical analysis of positive supOU processes.

// `!(x >= 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod error;
pub mod export;
pub mod growth;
pub mod measures;
pub mod pathsim;
pub mod quad;
pub mod rng;
pub mod tail;

pub use error::{Result, SupouError};
