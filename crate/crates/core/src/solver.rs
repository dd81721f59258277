//! Particular solutions of `sum_n A_n(x) Psi^(n) = f` for step-function
//! coefficients `A_n` and trigonometric forcing `f`.
//!
//! On a cell where every `A_n` is constant the operator is diagonal in the
//! Fourier basis: harmonic `k` with coefficients `(alpha, beta)` maps to
//! `(alpha sigma_k + beta omega_k, beta sigma_k - alpha omega_k)`, where
//! `sigma_k` collects the even-order coefficients and `omega_k` the odd-order
//! ones. Inverting that 2x2 rotation-scaling cell by cell gives the solution,
//! valid everywhere off the breakpoints.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::stepfn::{self, discretize, same_half_length, Partition, StepFunction};
use crate::trig::{wavenumber, CompensatedSum, TrigSeries};

/// Default resonance tolerance, relative to the magnitude of the terms that
/// make up `sigma_k` and `omega_k`.
pub const DEFAULT_EPS: f64 = 1e-9;

/// Wording used whenever a harmonic is resonant.
pub const NO_UNIQUE_SOLUTION: &str =
    "the ordinary differential equation has no solution or has infinitely many solutions";

/// `sum_{n} (-1)^n A_{2n} (k pi / l)^{2n}`.
pub fn sigma(coeffs: &[f64], k: usize, l: f64) -> f64 {
    let w = wavenumber(k, l);
    let mut acc = CompensatedSum::default();
    for (j, &a) in coeffs.iter().step_by(2).enumerate() {
        let term = a * w.powi(2 * j as i32);
        acc.add(if j % 2 == 0 { term } else { -term });
    }
    acc.value()
}

/// `sum_{n} (-1)^n A_{2n+1} (k pi / l)^{2n+1}`.
pub fn omega(coeffs: &[f64], k: usize, l: f64) -> f64 {
    let w = wavenumber(k, l);
    let mut acc = CompensatedSum::default();
    for (j, &a) in coeffs.iter().skip(1).step_by(2).enumerate() {
        let term = a * w.powi(2 * j as i32 + 1);
        acc.add(if j % 2 == 0 { term } else { -term });
    }
    acc.value()
}

/// `max(1, sum_n |A_n| (k pi / l)^n)`: the size of the terms summed into
/// `sigma_k` and `omega_k`, against which cancellation is judged.
pub fn symbol_scale(coeffs: &[f64], k: usize, l: f64) -> f64 {
    let w = wavenumber(k, l);
    coeffs
        .iter()
        .enumerate()
        .map(|(n, a)| a.abs() * w.powi(n as i32))
        .sum::<f64>()
        .max(1.0)
}

// NaN counts as resonant.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
fn is_resonant(sigma: f64, omega: f64, scale: f64, eps: f64) -> bool {
    !(sigma.hypot(omega) > eps * scale)
}

/// A linear ODE of even order with step-function coefficients `A_0..A_{2m}`
/// and trigonometric forcing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OdeProblem {
    l: f64,
    coefficients: Vec<StepFunction>,
    forcing: TrigSeries,
}

impl OdeProblem {
    pub fn new(coefficients: Vec<StepFunction>, forcing: TrigSeries) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::Validation(
                "at least one coefficient (A_0) is required".into(),
            ));
        }
        let order = coefficients.len() - 1;
        if !order.is_multiple_of(2) {
            return Err(Error::Validation(format!(
                "order must be even, got {order}"
            )));
        }
        let l = forcing.half_length();
        for (n, a) in coefficients.iter().enumerate() {
            if !same_half_length(a.half_length(), l) {
                return Err(Error::Validation(format!(
                    "coefficient A_{n} is defined on [-{}, {}) but the forcing has l = {l}",
                    a.half_length(),
                    a.half_length()
                )));
            }
        }
        let a0 = &coefficients[0];
        if let Some(cell) = a0.values().iter().position(|&v| v == 0.0) {
            let (lo, hi) = a0.partition().cell_bounds(cell);
            return Err(Error::ZeroLeadingCoefficient { cell, lo, hi });
        }
        Ok(Self {
            l,
            coefficients,
            forcing,
        })
    }

    /// Constant coefficients, each stored as a single-cell step function.
    pub fn constant(coeffs: &[f64], forcing: TrigSeries) -> Result<Self> {
        let l = forcing.half_length();
        let coefficients = coeffs
            .iter()
            .map(|&c| StepFunction::constant(l, c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(coefficients, forcing)
    }

    pub fn half_length(&self) -> f64 {
        self.l
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[StepFunction] {
        &self.coefficients
    }

    pub fn forcing(&self) -> &TrigSeries {
        &self.forcing
    }

    /// Common refinement of all coefficient partitions.
    pub fn refinement(&self) -> Partition {
        stepfn::common_refinement(&self.coefficients).expect("coefficients share l by construction")
    }

    /// `(A_0(x), ..., A_{2m}(x))`.
    pub fn coefficients_at(&self, x: f64) -> Result<Vec<f64>> {
        self.coefficients.iter().map(|a| a.eval(x)).collect()
    }

    fn cell_coefficients(&self, partition: &Partition, cell: usize) -> Vec<f64> {
        self.coefficients_at(partition.midpoint(cell))
            .expect("cell midpoints lie inside the domain")
    }
}

/// One trigonometric series per cell of a partition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PiecewiseSolution {
    partition: Partition,
    cells: Vec<TrigSeries>,
}

impl PiecewiseSolution {
    pub fn new(partition: Partition, cells: Vec<TrigSeries>) -> Result<Self> {
        if cells.len() != partition.num_cells() {
            return Err(Error::LengthMismatch {
                what: "cell series",
                expected: partition.num_cells(),
                found: cells.len(),
            });
        }
        let l = partition.half_length();
        let k = cells[0].harmonics();
        for c in &cells {
            if !same_half_length(c.half_length(), l) {
                return Err(Error::MismatchedHalfLength(l, c.half_length()));
            }
            if c.harmonics() != k {
                return Err(Error::LengthMismatch {
                    what: "harmonics per cell",
                    expected: k,
                    found: c.harmonics(),
                });
            }
        }
        Ok(Self { partition, cells })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn cells(&self) -> &[TrigSeries] {
        &self.cells
    }

    pub fn cell(&self, k: usize) -> &TrigSeries {
        &self.cells[k]
    }

    pub fn harmonics(&self) -> usize {
        self.cells[0].harmonics()
    }

    /// Evaluates the series of the cell containing `x`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        Ok(self.cells[self.partition.cell_index(x)?].eval(x))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResonantPair {
    pub cell: usize,
    pub harmonic: usize,
    pub sigma: f64,
    pub omega: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolvabilityReport {
    pub resonant_pairs: Vec<ResonantPair>,
    pub ok: bool,
}

impl SolvabilityReport {
    fn from_pairs(resonant_pairs: Vec<ResonantPair>) -> Self {
        let ok = resonant_pairs.is_empty();
        Self { resonant_pairs, ok }
    }
}

impl fmt::Display for SolvabilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return write!(f, "all active harmonics are non-resonant");
        }
        write!(f, "{NO_UNIQUE_SOLUTION}")?;
        for p in &self.resonant_pairs {
            write!(
                f,
                "\n  cell {}, harmonic k = {}: sigma = {:e}, omega = {:e}",
                p.cell, p.harmonic, p.sigma, p.omega
            )?;
        }
        Ok(())
    }
}

fn resonant_harmonics(
    coeffs: &[f64],
    forcing: &TrigSeries,
    harmonics: usize,
    eps: f64,
    cell: usize,
) -> Vec<ResonantPair> {
    let l = forcing.half_length();
    (1..=harmonics)
        .filter(|&k| forcing.harmonic(k) != (0.0, 0.0))
        .filter_map(|k| {
            let (s, o) = (sigma(coeffs, k, l), omega(coeffs, k, l));
            is_resonant(s, o, symbol_scale(coeffs, k, l), eps).then_some(ResonantPair {
                cell,
                harmonic: k,
                sigma: s,
                omega: o,
            })
        })
        .collect()
}

/// Flags every (cell, harmonic) pair with nonzero forcing where
/// `sqrt(sigma^2 + omega^2) <= eps * symbol_scale`.
pub fn check_solvability(problem: &OdeProblem, harmonics: usize, eps: f64) -> SolvabilityReport {
    let partition = problem.refinement();
    let pairs = (0..partition.num_cells())
        .flat_map(|cell| {
            let coeffs = problem.cell_coefficients(&partition, cell);
            resonant_harmonics(&coeffs, &problem.forcing, harmonics, eps, cell)
        })
        .collect();
    SolvabilityReport::from_pairs(pairs)
}

/// Inverts the constant-coefficient operator harmonic by harmonic. Assumes
/// `coeffs[0] != 0` and no active resonant harmonic.
fn invert(coeffs: &[f64], forcing: &TrigSeries) -> TrigSeries {
    let l = forcing.half_length();
    let k_max = forcing.harmonics();
    let mut cos = Vec::with_capacity(k_max);
    let mut sin = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let (c, d) = forcing.harmonic(k);
        if c == 0.0 && d == 0.0 {
            cos.push(0.0);
            sin.push(0.0);
            continue;
        }
        let (s, o) = (sigma(coeffs, k, l), omega(coeffs, k, l));
        let det = s * s + o * o;
        cos.push((c * s - d * o) / det);
        sin.push((c * o + d * s) / det);
    }
    TrigSeries::from_parts(l, forcing.half_c0() / coeffs[0], cos, sin)
}

pub fn solve_constant(coeffs: &[f64], forcing: &TrigSeries) -> Result<TrigSeries> {
    solve_constant_with_eps(coeffs, forcing, DEFAULT_EPS)
}

/// Particular solution of `sum_n A_n Psi^(n) = f` with constant `A_n`.
pub fn solve_constant_with_eps(
    coeffs: &[f64],
    forcing: &TrigSeries,
    eps: f64,
) -> Result<TrigSeries> {
    let l = forcing.half_length();
    match coeffs.first() {
        None => {
            return Err(Error::Validation(
                "at least one coefficient (A_0) is required".into(),
            ))
        }
        Some(0.0) => {
            return Err(Error::ZeroLeadingCoefficient {
                cell: 0,
                lo: -l,
                hi: l,
            })
        }
        _ => {}
    }
    let pairs = resonant_harmonics(coeffs, forcing, forcing.harmonics(), eps, 0);
    if !pairs.is_empty() {
        return Err(Error::Resonant(SolvabilityReport::from_pairs(pairs)));
    }
    Ok(invert(coeffs, forcing))
}

pub fn solve_piecewise(problem: &OdeProblem, harmonics: usize) -> Result<PiecewiseSolution> {
    solve_piecewise_with_eps(problem, harmonics, DEFAULT_EPS)
}

/// Solves cell by cell on the common refinement of the coefficient
/// partitions, using the first `harmonics` harmonics of the forcing.
pub fn solve_piecewise_with_eps(
    problem: &OdeProblem,
    harmonics: usize,
    eps: f64,
) -> Result<PiecewiseSolution> {
    let forcing = problem.forcing.with_harmonics(harmonics);
    let partition = problem.refinement();
    let mut cells = Vec::with_capacity(partition.num_cells());
    let mut resonant = Vec::new();
    for cell in 0..partition.num_cells() {
        let coeffs = problem.cell_coefficients(&partition, cell);
        if coeffs[0] == 0.0 {
            let (lo, hi) = partition.cell_bounds(cell);
            return Err(Error::ZeroLeadingCoefficient { cell, lo, hi });
        }
        let pairs = resonant_harmonics(&coeffs, &forcing, harmonics, eps, cell);
        if pairs.is_empty() {
            cells.push(invert(&coeffs, &forcing));
        } else {
            resonant.extend(pairs);
        }
    }
    if !resonant.is_empty() {
        return Err(Error::Resonant(SolvabilityReport::from_pairs(resonant)));
    }
    PiecewiseSolution::new(partition, cells)
}

/// `sum_n A_n d^n/dx^n` applied by term-by-term differentiation.
pub fn apply_operator_constant(coeffs: &[f64], series: &TrigSeries) -> TrigSeries {
    let k_max = series.harmonics();
    let mut cos = vec![CompensatedSum::default(); k_max];
    let mut sin = vec![CompensatedSum::default(); k_max];
    for (n, &a) in coeffs.iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        let d = series.derivative(n as u32);
        for k in 0..k_max {
            cos[k].add(a * d.cos_coeffs()[k]);
            sin[k].add(a * d.sin_coeffs()[k]);
        }
    }
    let half_c0 = coeffs.first().map_or(0.0, |a0| a0 * series.half_c0());
    TrigSeries::from_parts(
        series.half_length(),
        half_c0,
        cos.into_iter().map(CompensatedSum::value).collect(),
        sin.into_iter().map(CompensatedSum::value).collect(),
    )
}

/// The same operator through its symbol: harmonic `(alpha, beta)` maps to
/// `(alpha sigma + beta omega, beta sigma - alpha omega)`.
pub fn apply_operator_symbol(coeffs: &[f64], series: &TrigSeries) -> TrigSeries {
    let l = series.half_length();
    let (cos, sin) = (1..=series.harmonics())
        .map(|k| {
            let (alpha, beta) = series.harmonic(k);
            let (s, o) = (sigma(coeffs, k, l), omega(coeffs, k, l));
            (alpha * s + beta * o, beta * s - alpha * o)
        })
        .unzip();
    let half_c0 = coeffs.first().map_or(0.0, |a0| a0 * series.half_c0());
    TrigSeries::from_parts(l, half_c0, cos, sin)
}

/// Applies the operator cell by cell with that cell's coefficient values.
pub fn apply_operator_piecewise(
    problem: &OdeProblem,
    solution: &PiecewiseSolution,
) -> Result<PiecewiseSolution> {
    let partition = solution.partition();
    if !same_half_length(partition.half_length(), problem.l) {
        return Err(Error::MismatchedHalfLength(
            problem.l,
            partition.half_length(),
        ));
    }
    if !partition.refines(&problem.refinement()) {
        return Err(Error::Validation(
            "solution partition does not refine the coefficient partitions".into(),
        ));
    }
    let cells = (0..partition.num_cells())
        .map(|cell| {
            let coeffs = problem.cell_coefficients(partition, cell);
            apply_operator_constant(&coeffs, solution.cell(cell))
        })
        .collect();
    PiecewiseSolution::new(partition.clone(), cells)
}

/// Freezes each continuous coefficient at the midpoints of `cells` uniform
/// cells and solves the resulting step-coefficient problem.
pub fn build_psi_s(
    coeffs: &[&dyn Fn(f64) -> f64],
    l: f64,
    forcing: &TrigSeries,
    cells: usize,
    harmonics: usize,
) -> Result<PiecewiseSolution> {
    if !same_half_length(forcing.half_length(), l) {
        return Err(Error::MismatchedHalfLength(l, forcing.half_length()));
    }
    let steps = coeffs
        .iter()
        .map(|g| discretize(g, l, cells))
        .collect::<Result<Vec<_>>>()?;
    let problem = OdeProblem::new(steps, forcing.clone())?;
    solve_piecewise(&problem, harmonics)
}
