//! Solves psi - psi'' = 1/2 + sin x with constant coefficients and checks the
//! result against the undetermined-coefficients oracle.

use std::error::Error;
use std::f64::consts::PI;

use stepode::{oracle_order2, residual_grid, solve_constant, solve_piecewise, TrigSeries};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let forcing = TrigSeries::new(PI, 0.5, vec![0.0], vec![1.0])?.with_harmonics(20);
    let psi = solve_constant(&[1.0, 0.0, -1.0], &forcing)?;
    let oracle = oracle_order2(1.0, -1.0, &forcing)?;
    assert_eq!(psi, oracle);
    println!("psi(x) = {} + {} sin x", psi.half_c0(), psi.harmonic(1).1);

    for x in [-3.0, -1.0, 0.0, 1.0, 3.0] {
        println!(
            "  x = {x:5.2}  psi = {:.15}  exact = {:.15}",
            psi.eval(x),
            0.5 + 0.5 * f64::sin(x)
        );
    }

    let problem = stepode::demos::demo44();
    let solution = solve_piecewise(&problem, 20)?;
    let report = residual_grid(&problem, &solution, 200, 1e-9)?;
    println!("residual sup norm on 200 points: {:e}", report.sup_norm);
    assert!(report.sup_norm <= 1e-10);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
