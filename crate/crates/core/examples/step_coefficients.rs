//! The order-22 equation whose coefficients are step functions on the four
//! quarters of [-pi, pi), forced by 1 + 2 cos x.

use std::error::Error;

use stepode::{apply_operator_piecewise, demos, omega, residual_grid, sigma, solve_piecewise};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let problem = demos::demo41();
    let solution = solve_piecewise(&problem, 20)?;
    let partition = solution.partition();

    println!("breakpoints: {:?}", partition.breakpoints());
    for (cell, series) in solution.cells().iter().enumerate() {
        let a = problem.coefficients_at(partition.midpoint(cell))?;
        let l = problem.half_length();
        let (c1, d1) = series.harmonic(1);
        println!(
            "cell {cell}: sigma_1 = {:<8} omega_1 = {:<8} psi = {} {c1:+.12} cos x {d1:+.12} sin x",
            sigma(&a, 1, l),
            omega(&a, 1, l),
            series.half_c0()
        );
    }

    // L psi reproduces the forcing on every cell
    let image = apply_operator_piecewise(&problem, &solution)?;
    for cell in image.cells() {
        assert!((cell.half_c0() - 1.0).abs() < 1e-12);
        assert!((cell.harmonic(1).0 - 2.0).abs() < 1e-12);
    }

    // grid step pi/100, as in the original plotting program
    let report = residual_grid(&problem, &solution, 200, 1e-9)?;
    println!(
        "residual on {} points off the breakpoints: sup {:e}, rms {:e}",
        report.grid.len(),
        report.sup_norm,
        report.l2_norm
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
