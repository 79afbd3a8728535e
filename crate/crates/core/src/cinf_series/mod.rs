//! A computational model of C_infinity: truncated fractional Laurent series in 1/theta.

pub mod additive;
pub mod ctx;
pub mod element;
pub mod roots;

pub use additive::{apply, artin_schreier_solve, solve_all, solve_one, SolveOptions, SolveReport};
pub use ctx::{with_growth, CinfConfig, Ctx};
pub use element::{Cinf, INF};
