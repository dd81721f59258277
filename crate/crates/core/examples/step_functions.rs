//! Partitions, step functions, common refinement and midpoint discretization.

use std::error::Error;
use std::f64::consts::PI;

use stepode::{common_refinement, discretize, StepFunction};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let a = StepFunction::from_breakpoints(PI, vec![-PI, 0.0, PI], vec![2.0, 3.0])?;
    let b = StepFunction::from_breakpoints(PI, vec![-PI, -PI / 2.0, PI], vec![-1.0, 1.0])?;

    // cells are half-open: a breakpoint belongs to the cell on its right
    println!("a(0) = {}, a(-0.5) = {}", a.eval(0.0)?, a.eval(-0.5)?);
    println!("a(pi) -> {}", a.eval(PI).unwrap_err());

    let refined = common_refinement([&a, &b])?;
    println!("common refinement: {:?}", refined.breakpoints());
    println!(
        "a on the refinement: {:?}",
        a.restrict_to(&refined)?.values()
    );

    let constant = StepFunction::constant(PI, 4.0)?;
    println!("constant as a step function: {:?}", constant.values());

    for cells in [4, 16, 64] {
        let frozen = discretize(f64::sin, PI, cells)?;
        let sup = (0..1000)
            .map(|i| -PI + 2.0 * PI * (i as f64 + 0.5) / 1000.0)
            .map(|x| (frozen.eval(x).unwrap() - x.sin()).abs())
            .fold(0.0, f64::max);
        println!("sin frozen on {cells:2} cells: sup error {sup:.4}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
