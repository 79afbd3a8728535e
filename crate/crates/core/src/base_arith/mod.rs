//! Finite fields, polynomials and rational functions in theta and T, matrices.

pub mod gf;
pub mod matrix;
pub mod poly;
pub mod primes;
pub mod rat;
pub mod residue;
pub mod scalar;
pub mod spec;
pub mod tpoly;

pub use gf::{canonical_field, Field};
pub use matrix::{binomial, subsets, Mat};
pub use poly::{Fe, FqPoly, Var};
pub use primes::enumerate_monic_irreducibles;
pub use rat::ThetaRat;
pub use residue::{reduce_mod_prime, Residue, ResidueRing};
pub use scalar::Scalar;
pub use spec::FieldSpec;
pub use tpoly::{const_tmat, frobenius_product, tmat_coeff, tmat_degree, TMat, TPoly};
