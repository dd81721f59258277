//! psi + psi'' = cos x has no periodic particular solution: harmonic 1 is in
//! the kernel of the operator. The solvability report names it.

use std::error::Error;
use std::f64::consts::PI;

use stepode::solver::DEFAULT_EPS;
use stepode::{check_solvability, solve_piecewise, OdeProblem, TrigSeries};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let forcing = TrigSeries::new(PI, 0.0, vec![1.0], vec![0.0])?;
    let problem = OdeProblem::constant(&[1.0, 0.0, 1.0], forcing)?;

    let report = check_solvability(&problem, 20, DEFAULT_EPS);
    println!("ok = {}\n{report}", report.ok);
    match solve_piecewise(&problem, 20) {
        Err(stepode::Error::Resonant(r)) => assert_eq!(r, report),
        other => panic!("expected a resonance error, got {other:?}"),
    }

    // the same operator is fine when the resonant harmonic is silent
    let forcing = TrigSeries::new(PI, 1.0, vec![0.0, 3.0], vec![0.0, 0.0])?;
    let problem = OdeProblem::constant(&[1.0, 0.0, 1.0], forcing)?;
    let solution = solve_piecewise(&problem, 2)?;
    println!(
        "silent k = 1: psi = 1 {:+} cos 2x",
        solution.cell(0).harmonic(2).0
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
