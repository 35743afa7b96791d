//! Derivation of series parameters from a modular equation and a closed-form
//! self-complementary solution point.

mod catalog;
mod chain;
mod params;
mod pipeline;
mod radical;
mod surd;

pub use catalog::{catalog_h, solution_catalog, SolutionPoint};
pub use chain::{
    check_point, check_solution, derivative_chain, derivative_chain_at, implicit_derivatives, DerivativeChain,
    ResidualReport, GUARD_DIGITS, RESIDUAL_SLACK,
};
pub use params::{
    b_formula, b_squared_identity, default_denom_bound, level_for, mprime_over_alphap, series_params_alternating,
    series_params_positive, z_formula, DerivedParams, SeriesParams, SeriesSign,
};
pub use pipeline::{derive, prove, working_polynomial, Derivation, Proof, ProofChecks};
pub use radical::{eval_radical, RadicalExpr};
pub use surd::{radicand_hint, recognize_surd, squarefree_part, Surd};
