//! Closed-form particular solutions of linear ODEs
//!
//! ```text
//! sum_{n=0}^{2m} A_n(x) Psi^(n)(x) = f(x),   x in [-l, l)
//! ```
//!
//! whose coefficients `A_n` are simple step functions and whose forcing `f`
//! is a trigonometric series. On every cell where all coefficients are
//! constant the operator acts on harmonic `k` as a 2x2 rotation-scaling, so
//! the solution is obtained harmonic by harmonic and is valid everywhere off
//! the coefficient breakpoints. Continuous coefficients are handled by freezing
//! them on finer and finer uniform partitions.
//!
//! ```
//! use std::f64::consts::PI;
//! use stepode::{solve_constant, TrigSeries};
//!
//! // Psi - Psi'' = 1/2 + sin x
//! let f = TrigSeries::new(PI, 0.5, vec![0.0], vec![1.0]).unwrap();
//! let psi = solve_constant(&[1.0, 0.0, -1.0], &f).unwrap();
//! assert_eq!(psi.half_c0(), 0.5);
//! assert_eq!(psi.harmonic(1), (0.0, 0.5));
//! ```

pub mod cli;
pub mod demos;
mod error;
pub mod solver;
pub mod stepfn;
pub mod trig;
pub mod verify;

pub use error::{Error, Result};
pub use solver::{
    apply_operator_constant, apply_operator_piecewise, apply_operator_symbol, build_psi_s,
    check_solvability, omega, sigma, solve_constant, solve_piecewise, OdeProblem,
    PiecewiseSolution, SolvabilityReport,
};
pub use stepfn::{common_refinement, discretize, Partition, StepFunction};
pub use trig::{analyze, analyze_samples, combine, TrigSeries};
pub use verify::{
    convergence_study, fd_residual_check, oracle_order2, residual_grid, ConvergenceTable,
    Reference, ResidualReport,
};
