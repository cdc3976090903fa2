//! Hypergeometric functions of the complex field.
//!
//! This crate evaluates the family `pGq` of Mellin–Barnes-type integrals
//! over `ℤ×ℝ` by two independent routes:
//!
//! - [`residue::g_eval_series`]: the residue-series expansion, a
//!   quadratic combination of classical `pF(q−1)` series;
//! - [`quadrature::g_eval_quad`]: adaptive contour quadrature of the
//!   defining integral, with separating contours around misplaced poles.
//!
//! Supporting pieces: the parameter lattice and double powers
//! ([`lambda`]), the gamma and beta functions of the complex field
//! ([`gamma`]), classical hypergeometric series ([`series`]), the
//! integrand and its pole geometry ([`kernel`]), and a seeded
//! verification harness for the identity ledger ([`identity`]).

pub mod error;
pub mod gamma;
mod gk;
pub mod identity;
pub mod kernel;
pub mod lambda;
pub mod quadrature;
pub mod residue;
pub mod series;

pub use error::Error;
pub use gamma::{beta_c, gamma_c, gamma_c_asymptotic, gamma_c_residue, log_gamma_complex, BetaValue, GammaValue};
pub use identity::{run_suite, IdentityCheck, VerificationReport};
pub use kernel::{
    classify_convergence, detect_collisions, kernel_eval, left_poles, right_poles,
    separating_contour, Collision, ContourSpec, ConvergenceClass, GParams, PolePoint, PoleSide,
};
pub use lambda::{double_power, neg_one_power, LambdaList, LambdaPoint};
pub use quadrature::{contour_integral_k, convolve_g, g_eval_quad, mellin_forward, QuadConfig};
pub use residue::{g_eval_series, sigma_minus, sigma_plus, Engine, EvalResult};
pub use series::{hyp_pfq, hyp_pfq_with, pochhammer, SeriesConfig, SeriesResult};
