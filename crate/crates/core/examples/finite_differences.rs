//! Cross-checks the exact operator application against central finite
//! differences of the pointwise solution.

use std::error::Error;
use std::f64::consts::PI;

use stepode::{fd_residual_check, solve_piecewise, OdeProblem, StepFunction, TrigSeries};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let forcing = TrigSeries::new(
        PI,
        0.5,
        vec![0.3, 0.1, -0.2, 0.05],
        vec![1.0, -0.4, 0.2, 0.1],
    )?;
    let a2 = StepFunction::from_breakpoints(PI, vec![-PI, 0.0, PI], vec![-1.0, -0.5])?;
    let problem = OdeProblem::new(
        vec![
            StepFunction::constant(PI, 1.0)?,
            StepFunction::constant(PI, 0.2)?,
            a2,
        ],
        forcing,
    )?;
    let solution = solve_piecewise(&problem, 4)?;

    for x in [-2.0, 1.3] {
        for h in [1e-2, 1e-3, 1e-4] {
            let err = fd_residual_check(&problem, &solution, x, h)?;
            println!("x = {x:+.1}, h = {h:.0e}: |L_fd psi - L psi| = {err:.3e}");
        }
    }
    // stencils may not straddle a coefficient jump
    println!(
        "{}",
        fd_residual_check(&problem, &solution, 1e-5, 1e-4).unwrap_err()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
