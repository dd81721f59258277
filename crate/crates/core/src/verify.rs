//! Independent checks of computed solutions: residuals off the breakpoints,
//! a finite-difference cross-check, an undetermined-coefficients oracle for
//! second-order problems, and the convergence of frozen-coefficient solutions
//! for continuous coefficients.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::solver::{
    apply_operator_constant, apply_operator_piecewise, build_psi_s, solve_constant, OdeProblem,
    PiecewiseSolution, ResonantPair, SolvabilityReport,
};
use crate::stepfn::same_half_length;
use crate::trig::{combine, wavenumber, TrigSeries};

/// Default grid size for residual reports.
pub const DEFAULT_GRID_POINTS: usize = 1000;

/// Default probe count for convergence studies.
pub const DEFAULT_PROBES: usize = 1000;

/// Default exclusion radius around breakpoints, `1e-9 * l`.
pub fn default_delta(l: f64) -> f64 {
    1e-9 * l
}

/// Uniform grid `-l + 2l i / n`, `i = 0..n`, minus every point within
/// `delta` of an excluded point.
pub fn grid_excluding(l: f64, n_points: usize, delta: f64, excluded: &[f64]) -> Vec<f64> {
    (0..n_points)
        .map(|i| -l + 2.0 * l * i as f64 / n_points as f64)
        .filter(|x| excluded.iter().all(|e| (x - e).abs() > delta))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub grid: Vec<f64>,
    pub residuals: Vec<f64>,
    pub sup_norm: f64,
    pub l2_norm: f64,
}

impl ResidualReport {
    fn from_samples(grid: Vec<f64>, residuals: Vec<f64>) -> Self {
        let sup_norm = residuals.iter().fold(0.0, |m: f64, r| m.max(r.abs()));
        let l2_norm =
            (residuals.iter().map(|r| r * r).sum::<f64>() / residuals.len() as f64).sqrt();
        Self {
            grid,
            residuals,
            sup_norm,
            l2_norm,
        }
    }
}

/// `L Psi - f`, formed exactly per cell and sampled on a uniform grid that
/// avoids the breakpoints of the solution partition (including `+-l`).
pub fn residual_grid(
    problem: &OdeProblem,
    solution: &PiecewiseSolution,
    n_points: usize,
    delta: f64,
) -> Result<ResidualReport> {
    let image = apply_operator_piecewise(problem, solution)?;
    let cells = image
        .cells()
        .iter()
        .map(|c| combine(1.0, c, -1.0, problem.forcing()))
        .collect::<Result<Vec<_>>>()?;
    let residual = PiecewiseSolution::new(image.partition().clone(), cells)?;

    let partition = solution.partition();
    let grid = grid_excluding(
        partition.half_length(),
        n_points,
        delta,
        partition.breakpoints(),
    );
    if grid.is_empty() {
        return Err(Error::Verification(format!(
            "no grid points remain after excluding a radius of {delta} around the breakpoints"
        )));
    }
    let residuals = grid
        .iter()
        .map(|&x| residual.eval(x))
        .collect::<Result<Vec<_>>>()?;
    Ok(ResidualReport::from_samples(grid, residuals))
}

/// Particular solution of `a0 Psi + a2 Psi'' = f` by substituting a
/// trigonometric ansatz: harmonic `k` is divided by `a0 - a2 (k pi / l)^2`.
pub fn oracle_order2(a0: f64, a2: f64, f: &TrigSeries) -> Result<TrigSeries> {
    let l = f.half_length();
    if a0 == 0.0 {
        return Err(Error::ZeroLeadingCoefficient {
            cell: 0,
            lo: -l,
            hi: l,
        });
    }
    let mut cos = Vec::with_capacity(f.harmonics());
    let mut sin = Vec::with_capacity(f.harmonics());
    let mut resonant = Vec::new();
    for k in 1..=f.harmonics() {
        let (c, d) = f.harmonic(k);
        if c == 0.0 && d == 0.0 {
            cos.push(0.0);
            sin.push(0.0);
            continue;
        }
        let w2 = wavenumber(k, l).powi(2);
        let denom = a0 - a2 * w2;
        if denom.abs() <= 1e-9 * a0.abs().max(a2.abs() * w2) {
            resonant.push(ResonantPair {
                cell: 0,
                harmonic: k,
                sigma: denom,
                omega: 0.0,
            });
        }
        cos.push(c / denom);
        sin.push(d / denom);
    }
    if !resonant.is_empty() {
        return Err(Error::Resonant(SolvabilityReport {
            resonant_pairs: resonant,
            ok: false,
        }));
    }
    TrigSeries::new(l, f.half_c0() / a0, cos, sin)
}

fn binomial(n: u32, j: u32) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `|L_fd Psi(x) - L Psi(x)|` where `L_fd` replaces every derivative by a
/// central difference of step `h` on pointwise samples of the solution.
pub fn fd_residual_check(
    problem: &OdeProblem,
    solution: &PiecewiseSolution,
    x: f64,
    h: f64,
) -> Result<f64> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Verification(format!(
            "step must be positive, got {h}"
        )));
    }
    let partition = solution.partition();
    let l = partition.half_length();
    let reach = problem.order() as f64 * h + default_delta(l);
    if let Some(b) = partition
        .breakpoints()
        .iter()
        .find(|&&b| (x - b).abs() <= reach)
    {
        return Err(Error::Verification(format!(
            "stencil of radius {reach} around x = {x} crosses the breakpoint {b}"
        )));
    }
    let cell = partition.cell_index(x)?;
    let coeffs = problem.coefficients_at(x)?;
    let exact = apply_operator_constant(&coeffs, solution.cell(cell)).eval(x);

    let mut approx = 0.0;
    for (n, &a) in coeffs.iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        let n = n as u32;
        let mut diff = 0.0;
        for j in 0..=n {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            let y = x + (0.5 * n as f64 - j as f64) * h;
            diff += sign * binomial(n, j) * solution.eval(y)?;
        }
        approx += a * diff / h.powi(n as i32);
    }
    Ok((approx - exact).abs())
}

/// What Psi_S is compared against in a convergence study.
#[derive(Debug, Clone)]
pub enum Reference {
    /// Closed form with the exact coefficients frozen at each probe point.
    Pointwise,
    /// The solution for the largest cell count in the study.
    Finest,
    /// A caller-supplied solution.
    Solution(PiecewiseSolution),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub cells: usize,
    pub sup_distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceTable {
    pub fn distances(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.sup_distance).collect()
    }

    /// `d(S_i) / d(S_{i+1})` for consecutive rows.
    pub fn ratios(&self) -> Vec<f64> {
        self.rows
            .windows(2)
            .map(|w| w[0].sup_distance / w[1].sup_distance)
            .collect()
    }

    pub fn mean_ratio(&self) -> Option<f64> {
        let r = self.ratios();
        (!r.is_empty()).then(|| r.iter().sum::<f64>() / r.len() as f64)
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[1].sup_distance < w[0].sup_distance)
    }
}

/// Value at `x` of the closed-form solution with every coefficient frozen at
/// `x`.
pub fn pointwise_solution(
    coeffs: &[&dyn Fn(f64) -> f64],
    forcing: &TrigSeries,
    harmonics: usize,
    x: f64,
) -> Result<f64> {
    let a: Vec<f64> = coeffs.iter().map(|g| g(x)).collect();
    Ok(solve_constant(&a, &forcing.with_harmonics(harmonics))?.eval(x))
}

fn near_uniform_breakpoint(x: f64, l: f64, cells: usize, delta: f64) -> bool {
    let width = 2.0 * l / cells as f64;
    let t = (x + l) / width;
    (t - t.round()).abs() * width <= delta
}

pub fn convergence_study(
    coeffs: &[&dyn Fn(f64) -> f64],
    l: f64,
    forcing: &TrigSeries,
    cell_counts: &[usize],
    harmonics: usize,
    reference: &Reference,
) -> Result<ConvergenceTable> {
    convergence_study_with_probes(
        coeffs,
        l,
        forcing,
        cell_counts,
        harmonics,
        reference,
        DEFAULT_PROBES,
    )
}

/// Sup-distance between Psi_S and the reference over `probes` cell-centred
/// points, skipping points near any breakpoint of any Psi_S.
pub fn convergence_study_with_probes(
    coeffs: &[&dyn Fn(f64) -> f64],
    l: f64,
    forcing: &TrigSeries,
    cell_counts: &[usize],
    harmonics: usize,
    reference: &Reference,
    probes: usize,
) -> Result<ConvergenceTable> {
    if cell_counts.is_empty() {
        return Err(Error::Validation("no cell counts given".into()));
    }
    if cell_counts.windows(2).any(|w| w[1] <= w[0]) || cell_counts[0] == 0 {
        return Err(Error::Validation(
            "cell counts must be positive and strictly increasing".into(),
        ));
    }
    if !same_half_length(forcing.half_length(), l) {
        return Err(Error::MismatchedHalfLength(l, forcing.half_length()));
    }

    let solutions = cell_counts
        .iter()
        .map(|&s| {
            build_psi_s(coeffs, l, forcing, s, harmonics).map_err(|e| Error::Discretized {
                cells: s,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let delta = default_delta(l);
    let extra: &[f64] = match reference {
        Reference::Solution(sol) => sol.partition().breakpoints(),
        _ => &[],
    };
    let probe_points: Vec<f64> = (0..probes)
        .map(|i| -l + 2.0 * l * (i as f64 + 0.5) / probes as f64)
        .filter(|&x| {
            cell_counts
                .iter()
                .all(|&s| !near_uniform_breakpoint(x, l, s, delta))
                && extra.iter().all(|b| (x - b).abs() > delta)
        })
        .collect();
    if probe_points.is_empty() {
        return Err(Error::Verification(
            "every probe point sits on a breakpoint".into(),
        ));
    }

    let reference_values = match reference {
        Reference::Pointwise => probe_points
            .iter()
            .map(|&x| pointwise_solution(coeffs, forcing, harmonics, x))
            .collect::<Result<Vec<_>>>()?,
        Reference::Finest => {
            let finest = solutions.last().expect("at least one cell count");
            eval_all(finest, &probe_points)?
        }
        Reference::Solution(sol) => eval_all(sol, &probe_points)?,
    };

    let rows = cell_counts
        .iter()
        .zip(&solutions)
        .map(|(&cells, sol)| {
            let values = eval_all(sol, &probe_points)?;
            let sup_distance = values
                .iter()
                .zip(&reference_values)
                .fold(0.0, |m: f64, (a, b)| m.max((a - b).abs()));
            Ok(ConvergenceRow {
                cells,
                sup_distance,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceTable { rows })
}

fn eval_all(sol: &PiecewiseSolution, xs: &[f64]) -> Result<Vec<f64>> {
    xs.iter().map(|&x| sol.eval(x)).collect()
}
