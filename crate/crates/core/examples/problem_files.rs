//! Reads a problem from JSON, writes it back in canonical form and emits the
//! solution as a CSV table.

use std::error::Error;

use stepode::cli::{canonical_json, emit_table, parse_problem, Format, Table};
use stepode::solve_piecewise;
use stepode::verify::{default_delta, grid_excluding};

const PROBLEM: &str = r#"{
  "l": 2.0,
  "order": 2,
  "coefficients": [
    1,
    0.1,
    {"breakpoints": [-2, -0.5, 1, 2], "values": [-0.2, -0.4, -0.3]}
  ],
  "forcing": {"half_c0": 1, "cos": [0, 0.5], "sin": [1]},
  "harmonics": 4
}"#;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let input = parse_problem(PROBLEM, "inline", None)?;
    let problem = input.to_problem()?;
    print!("{}", canonical_json(&problem, Some(input.harmonics)));

    let solution = solve_piecewise(&problem, input.harmonics)?;
    let l = problem.half_length();
    let grid = grid_excluding(l, 40, default_delta(l), solution.partition().breakpoints());
    let psi = grid
        .iter()
        .map(|&x| solution.eval(x))
        .collect::<Result<Vec<_>, _>>()?;
    let table = Table::new(vec![("x", grid), ("psi", psi)])?;

    let path = std::env::temp_dir().join("stepode_problem_files_example.csv");
    emit_table(&table, Format::Csv, &path)?;
    println!("wrote {} rows to {}", table.rows(), path.display());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
