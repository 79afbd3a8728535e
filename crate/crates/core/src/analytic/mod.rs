//! Exponential coefficients, the F_q[T]-action, torsion operators, theta-shifts,
//! scattering relations and finite subspace products.

pub mod exp;
pub mod series;
pub mod shift;

pub use exp::{
    carlitz_exp_closed_form, em_action, exp_coeffs, exp_residuals, subspace_product, torsion_operator,
    ExpCoeffs, TorsionOperator,
};
pub use series::TauSeries;
pub use shift::{scattering_check, theta_shift, theta_shift_laurent, theta_shift_matrix, NSeries, ScatteringReport};
