//! Exact computations with Anderson t-motives over F_q(theta).

pub mod analytic;
pub mod base_arith;
pub mod cinf_series;
pub mod constructions;
pub mod tmotive_core;
pub mod cli;
pub mod error;
pub mod h1_solver;
pub mod lattice_siegel;
pub mod lfunction;

pub use error::{Error, Result};
