//! Built-in problems.
//!
//! `demo41` is the order-22 equation
//!
//! ```text
//! Psi + A_2 Psi'' + A_5 Psi^(5) + A_14 Psi^(14) + A_20 Psi^(20) + A_22 Psi^(22) = 1 + 2 cos x
//! ```
//!
//! on `[-pi, pi)` with every `A_n` constant on the quarters
//! `[-pi, -pi/2), [-pi/2, 0), [0, pi/2), [pi/2, pi)`. `demo44` is
//! `Psi - Psi'' = 1/2 + sin x`.

use std::f64::consts::PI;

use crate::error::Result;
use crate::solver::OdeProblem;
use crate::stepfn::StepFunction;
use crate::trig::TrigSeries;

pub const DEMO41_ORDER: usize = 22;

/// `(n, values on the four quarters)` for every nonzero `A_n`, `n >= 1`.
pub const DEMO41_STEPS: [(usize, [f64; 4]); 5] = [
    (2, [-0.001, -0.002, -0.001, -0.002]),
    (5, [0.01, -0.01, 0.002, -0.002]),
    (14, [0.1, -0.1, -0.4, 0.007]),
    (20, [-0.01, 0.01, 0.002, -0.22]),
    (22, [0.001, -0.001, 0.0003, -0.0003]),
];

pub fn quarter_breakpoints() -> Vec<f64> {
    vec![-PI, -PI / 2.0, 0.0, PI / 2.0, PI]
}

pub fn demo41_forcing() -> TrigSeries {
    TrigSeries::new(PI, 1.0, vec![2.0], vec![0.0]).expect("valid series")
}

pub fn demo41() -> OdeProblem {
    build_demo41().expect("embedded problem is valid")
}

fn build_demo41() -> Result<OdeProblem> {
    let mut coefficients = Vec::with_capacity(DEMO41_ORDER + 1);
    coefficients.push(StepFunction::constant(PI, 1.0)?);
    for n in 1..=DEMO41_ORDER {
        let step = match DEMO41_STEPS.iter().find(|(m, _)| *m == n) {
            Some((_, values)) => {
                StepFunction::from_breakpoints(PI, quarter_breakpoints(), values.to_vec())?
            }
            None => StepFunction::constant(PI, 0.0)?,
        };
        coefficients.push(step);
    }
    OdeProblem::new(coefficients, demo41_forcing())
}

pub const DEMO44_COEFFICIENTS: [f64; 3] = [1.0, 0.0, -1.0];

pub fn demo44_forcing() -> TrigSeries {
    TrigSeries::new(PI, 0.5, vec![0.0], vec![1.0]).expect("valid series")
}

pub fn demo44() -> OdeProblem {
    OdeProblem::constant(&DEMO44_COEFFICIENTS, demo44_forcing()).expect("embedded problem is valid")
}

/// Closed-form solution of `demo44`: `1/2 + sin(x)/2`.
pub fn demo44_exact(x: f64) -> f64 {
    0.5 + 0.5 * x.sin()
}

/// Continuous coefficients `A_0 = 1, A_1 = 0, A_2(x) = -(2 + sin x)/1000`
/// used for the default convergence study, with forcing `1 + 2 cos x`.
pub fn convergence_coefficients() -> Vec<Box<dyn Fn(f64) -> f64>> {
    vec![
        Box::new(|_| 1.0),
        Box::new(|_| 0.0),
        Box::new(|x: f64| -(2.0 + x.sin()) / 1000.0),
    ]
}

pub fn convergence_forcing() -> TrigSeries {
    demo41_forcing()
}

pub const CONVERGENCE_CELLS: [usize; 5] = [4, 8, 16, 32, 64];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn demo41_shape() {
        let p = demo41();
        assert_eq!(p.order(), 22);
        assert_eq!(
            p.refinement().breakpoints(),
            quarter_breakpoints().as_slice()
        );
        let a = p.coefficients_at(-3.0).unwrap();
        assert_eq!(a[0], 1.0);
        assert_eq!(a[2], -0.001);
        assert_eq!(a[5], 0.01);
        assert_eq!(a[22], 0.001);
        assert_eq!(p.coefficients()[14].eval(0.5).unwrap(), -0.4);
        assert_eq!(p.coefficients()[20].eval(PI / 2.0).unwrap(), -0.22);
    }

    #[test]
    fn demo44_shape() {
        let p = demo44();
        assert_eq!(p.order(), 2);
        assert_eq!(p.forcing().half_c0(), 0.5);
        assert_eq!(p.forcing().harmonic(1), (0.0, 1.0));
    }
}
