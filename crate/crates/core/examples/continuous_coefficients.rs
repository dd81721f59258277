//! Continuous coefficients: freeze A_2(x) = -(2 + sin x)/1000 on S uniform
//! cells, solve, and watch the frozen solutions approach the pointwise closed
//! form as S grows.

use std::error::Error;
use std::f64::consts::PI;

use stepode::verify::pointwise_solution;
use stepode::{build_psi_s, convergence_study, demos, Reference};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let boxed = demos::convergence_coefficients();
    let coeffs: Vec<&dyn Fn(f64) -> f64> = boxed.iter().map(|b| b.as_ref()).collect();
    let forcing = demos::convergence_forcing();

    let psi_8 = build_psi_s(&coeffs, PI, &forcing, 8, 20)?;
    let x = 1.0;
    println!(
        "psi_8(1) = {:.12}, pointwise closed form = {:.12}",
        psi_8.eval(x)?,
        pointwise_solution(&coeffs, &forcing, 20, x)?
    );

    let table = convergence_study(
        &coeffs,
        PI,
        &forcing,
        &[4, 8, 16, 32, 64, 128],
        20,
        &Reference::Pointwise,
    )?;
    println!("{:>5}  {:>12}", "S", "sup distance");
    for row in &table.rows {
        println!("{:>5}  {:>12.4e}", row.cells, row.sup_distance);
    }
    println!(
        "mean ratio between successive S: {:.3}",
        table.mean_ratio().unwrap_or(f64::NAN)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
