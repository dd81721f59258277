//! Command line front end.
//!
//! Exit codes: `0` success, `2` invalid input, `3` resonant problem,
//! `4` I/O failure.

mod problem_file;
mod table;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use problem_file::{
    canonical_json, load_input, load_problem, parse_problem, Coefficient, ProblemInput,
    SampledFunction,
};
pub use table::{emit_table, Format, Table};

use crate::demos;
use crate::error::{Error, Result};
use crate::solver::{
    check_solvability, solve_piecewise_with_eps, OdeProblem, PiecewiseSolution, DEFAULT_EPS,
};
use crate::trig::{TrigSeries, DEFAULT_HARMONICS};
use crate::verify::{convergence_study, default_delta, grid_excluding, residual_grid, Reference};

/// Grid size used when `--grid` is not given.
pub const DEFAULT_CLI_GRID: usize = 629;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Solve a problem file and tabulate psi
    Solve,
    /// Solve and tabulate psi together with the residual L psi - f
    Verify,
    /// Sup-distance of frozen-coefficient solutions as the cell count grows
    Converge,
    /// Order-22 problem with step coefficients on the quarters of [-pi, pi)
    Demo41,
    /// psi - psi'' = 1/2 + sin x
    Demo44,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReferenceKind {
    Pointwise,
    Finest,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "stepode",
    version,
    about = "Particular solutions of ODEs with step-function coefficients"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Problem file (JSON); ignored by the demos
    #[arg(long = "problem", global = true)]
    pub problem_path: Option<PathBuf>,

    /// Number of harmonics K [default: from the problem file, else 20]
    #[arg(long, global = true)]
    pub harmonics: Option<usize>,

    /// Number of uniform grid points over [-l, l)
    #[arg(long = "grid", global = true, default_value_t = DEFAULT_CLI_GRID)]
    pub grid_points: usize,

    /// Exclusion radius around breakpoints [default: 1e-9 * l]
    #[arg(long, global = true)]
    pub delta: Option<f64>,

    /// Resonance tolerance
    #[arg(long, global = true, default_value_t = DEFAULT_EPS)]
    pub eps: f64,

    /// Output file [default: stdout]
    #[arg(long = "out", global = true)]
    pub output_path: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Cell counts for `converge`, comma separated
    #[arg(long, global = true, value_delimiter = ',', default_values_t = demos::CONVERGENCE_CELLS)]
    pub cells: Vec<usize>,

    /// Reference solution for `converge`
    #[arg(long, global = true, value_enum, default_value_t = ReferenceKind::Pointwise)]
    pub reference: ReferenceKind,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            problem_path: None,
            harmonics: None,
            grid_points: DEFAULT_CLI_GRID,
            delta: None,
            eps: DEFAULT_EPS,
            output_path: None,
            format: Format::Csv,
            cells: demos::CONVERGENCE_CELLS.to_vec(),
            reference: ReferenceKind::Pointwise,
        }
    }
}

/// What a run produced, for callers that want more than the written table.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub table: Table,
    pub solution: Option<PiecewiseSolution>,
    pub sup_norm: Option<f64>,
    pub l2_norm: Option<f64>,
}

fn problem_path(config: &RunConfig) -> Result<&PathBuf> {
    config
        .problem_path
        .as_ref()
        .ok_or_else(|| Error::Validation("--problem is required for this command".into()))
}

fn load(config: &RunConfig) -> Result<(OdeProblem, usize)> {
    match config.command {
        Command::Demo41 => Ok((
            demos::demo41(),
            config.harmonics.unwrap_or(DEFAULT_HARMONICS),
        )),
        Command::Demo44 => Ok((
            demos::demo44(),
            config.harmonics.unwrap_or(DEFAULT_HARMONICS),
        )),
        _ => {
            let input = load_input(problem_path(config)?, config.harmonics)?;
            Ok((input.to_problem()?, input.harmonics))
        }
    }
}

fn describe_series(out: &mut dyn Write, series: &TrigSeries) -> std::io::Result<()> {
    write!(out, "half_c0 = {:e}", series.half_c0())?;
    for k in 1..=series.harmonics() {
        let (c, d) = series.harmonic(k);
        if c != 0.0 {
            write!(out, ", c_{k} = {c:e}")?;
        }
        if d != 0.0 {
            write!(out, ", d_{k} = {d:e}")?;
        }
    }
    writeln!(out)
}

fn solve_and_verify(
    config: &RunConfig,
    with_residual: bool,
    report: &mut dyn Write,
) -> Result<RunOutput> {
    let (problem, harmonics) = load(config)?;
    let solvability = check_solvability(&problem, harmonics, config.eps);
    if !solvability.ok {
        return Err(Error::Resonant(solvability));
    }
    let solution = solve_piecewise_with_eps(&problem, harmonics, config.eps)?;
    let l = problem.half_length();
    let delta = config.delta.unwrap_or_else(|| default_delta(l));

    if matches!(config.command, Command::Demo41 | Command::Demo44) {
        let p = solution.partition();
        for (k, cell) in solution.cells().iter().enumerate() {
            let (a, b) = p.cell_bounds(k);
            write!(report, "cell {k} [{a}, {b}): ")?;
            describe_series(report, cell)?;
        }
    }

    if with_residual {
        let r = residual_grid(&problem, &solution, config.grid_points, delta)?;
        let psi = r
            .grid
            .iter()
            .map(|&x| solution.eval(x))
            .collect::<Result<Vec<_>>>()?;
        writeln!(
            report,
            "sup_norm = {:e}, l2_norm = {:e}, points = {}",
            r.sup_norm,
            r.l2_norm,
            r.grid.len()
        )?;
        let table = Table::new(vec![("x", r.grid), ("psi", psi), ("residual", r.residuals)])?;
        Ok(RunOutput {
            table,
            solution: Some(solution),
            sup_norm: Some(r.sup_norm),
            l2_norm: Some(r.l2_norm),
        })
    } else {
        let grid = grid_excluding(
            l,
            config.grid_points,
            delta,
            solution.partition().breakpoints(),
        );
        let psi = grid
            .iter()
            .map(|&x| solution.eval(x))
            .collect::<Result<Vec<_>>>()?;
        let table = Table::new(vec![("x", grid), ("psi", psi)])?;
        Ok(RunOutput {
            table,
            solution: Some(solution),
            sup_norm: None,
            l2_norm: None,
        })
    }
}

fn converge(config: &RunConfig, report: &mut dyn Write) -> Result<RunOutput> {
    match &config.problem_path {
        Some(path) => {
            let input = load_input(path, config.harmonics)?;
            let boxed = input.coefficient_fns();
            let fns: Vec<&dyn Fn(f64) -> f64> = boxed.iter().map(|b| b.as_ref()).collect();
            study(
                config,
                &fns,
                input.l,
                &input.forcing,
                input.harmonics,
                report,
            )
        }
        None => {
            let boxed = demos::convergence_coefficients();
            let fns: Vec<&dyn Fn(f64) -> f64> = boxed.iter().map(|b| b.as_ref()).collect();
            let forcing = demos::convergence_forcing();
            let harmonics = config.harmonics.unwrap_or(DEFAULT_HARMONICS);
            study(
                config,
                &fns,
                forcing.half_length(),
                &forcing,
                harmonics,
                report,
            )
        }
    }
}

fn study(
    config: &RunConfig,
    fns: &[&dyn Fn(f64) -> f64],
    l: f64,
    forcing: &TrigSeries,
    harmonics: usize,
    report: &mut dyn Write,
) -> Result<RunOutput> {
    let reference = match config.reference {
        ReferenceKind::Pointwise => Reference::Pointwise,
        ReferenceKind::Finest => Reference::Finest,
    };
    let t = convergence_study(fns, l, forcing, &config.cells, harmonics, &reference)?;
    if let Some(r) = t.mean_ratio() {
        writeln!(report, "mean ratio d(S)/d(2S) = {r:e}")?;
    }
    let table = Table::new(vec![
        ("S", t.rows.iter().map(|r| r.cells as f64).collect()),
        ("sup_distance", t.distances()),
    ])?;
    Ok(RunOutput {
        table,
        solution: None,
        sup_norm: None,
        l2_norm: None,
    })
}

/// Runs one command, writing the table to `--out` (or `stdout`) and the
/// human-readable report to `report`.
pub fn run_with(
    config: &RunConfig,
    stdout: &mut dyn Write,
    report: &mut dyn Write,
) -> Result<RunOutput> {
    if config.harmonics == Some(0) {
        return Err(Error::Validation("--harmonics must be at least 1".into()));
    }
    let output = match config.command {
        Command::Solve => solve_and_verify(config, false, report)?,
        Command::Verify | Command::Demo41 | Command::Demo44 => {
            solve_and_verify(config, true, report)?
        }
        Command::Converge => converge(config, report)?,
    };
    match &config.output_path {
        Some(path) => emit_table(&output.table, config.format, path)?,
        None => stdout.write_all(output.table.render(config.format).as_bytes())?,
    }
    Ok(output)
}

pub fn run(config: &RunConfig) -> Result<RunOutput> {
    let mut stdout = std::io::stdout().lock();
    if config.output_path.is_some() {
        let mut report = std::io::stdout();
        run_with(config, &mut stdout, &mut report)
    } else {
        run_with(config, &mut stdout, &mut std::io::stderr())
    }
}

/// Parses `args`, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(&config) {
        Ok(_) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
