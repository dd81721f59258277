//! Partitions of `[-l, l)` and simple step functions on them.
//!
//! Every cell is half-open, `[a_{k-1}, a_k)`, so a breakpoint belongs to the
//! cell on its right and `x = l` lies outside the domain.

use serde::Serialize;

use crate::error::{Error, Result};

/// Relative tolerance used to merge breakpoints when refining partitions.
pub const BREAKPOINT_TOLERANCE: f64 = 1e-12;

fn check_half_length(l: f64) -> Result<()> {
    if l.is_finite() && l > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidHalfLength(l))
    }
}

/// Strictly increasing breakpoints `-l = a_0 < a_1 < ... < a_s = l`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Partition {
    l: f64,
    breakpoints: Vec<f64>,
}

impl Partition {
    /// Builds a partition from explicit breakpoints.
    ///
    /// The endpoints must match `-l` and `l` to within the breakpoint
    /// tolerance; they are stored as exactly `-l` and `l`.
    pub fn new(l: f64, breakpoints: Vec<f64>) -> Result<Self> {
        check_half_length(l)?;
        if breakpoints.len() < 2 {
            return Err(Error::InvalidPartition(format!(
                "need at least two breakpoints, got {}",
                breakpoints.len()
            )));
        }
        if let Some(bad) = breakpoints.iter().find(|a| !a.is_finite()) {
            return Err(Error::InvalidPartition(format!(
                "non-finite breakpoint {bad}"
            )));
        }
        let tol = BREAKPOINT_TOLERANCE * l;
        let mut breakpoints = breakpoints;
        let last = breakpoints.len() - 1;
        if (breakpoints[0] + l).abs() > tol {
            return Err(Error::InvalidPartition(format!(
                "first breakpoint {} does not equal -l = {}",
                breakpoints[0], -l
            )));
        }
        if (breakpoints[last] - l).abs() > tol {
            return Err(Error::InvalidPartition(format!(
                "last breakpoint {} does not equal l = {}",
                breakpoints[last], l
            )));
        }
        breakpoints[0] = -l;
        breakpoints[last] = l;
        if let Some(w) = breakpoints.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPartition(format!(
                "breakpoints not strictly increasing at {} >= {}",
                w[0], w[1]
            )));
        }
        Ok(Self { l, breakpoints })
    }

    /// The single-cell partition `{-l, l}`.
    pub fn trivial(l: f64) -> Result<Self> {
        Self::new(l, vec![-l, l])
    }

    /// `cells` uniform cells with breakpoints `l(2s - S)/S`.
    pub fn uniform(l: f64, cells: usize) -> Result<Self> {
        if cells == 0 {
            return Err(Error::InvalidPartition("zero cells".into()));
        }
        let s = cells as f64;
        let breakpoints = (0..=cells).map(|i| l * (2.0 * i as f64 - s) / s).collect();
        Self::new(l, breakpoints)
    }

    pub fn half_length(&self) -> f64 {
        self.l
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// Breakpoints strictly inside `(-l, l)`.
    pub fn interior_breakpoints(&self) -> &[f64] {
        &self.breakpoints[1..self.breakpoints.len() - 1]
    }

    pub fn num_cells(&self) -> usize {
        self.breakpoints.len() - 1
    }

    /// Bounds `(a_{k-1}, a_k)` of cell `k` (zero-based).
    pub fn cell_bounds(&self, cell: usize) -> (f64, f64) {
        (self.breakpoints[cell], self.breakpoints[cell + 1])
    }

    pub fn midpoint(&self, cell: usize) -> f64 {
        let (a, b) = self.cell_bounds(cell);
        0.5 * (a + b)
    }

    /// Index of the half-open cell containing `x`.
    pub fn cell_index(&self, x: f64) -> Result<usize> {
        if !(x >= -self.l && x < self.l) {
            return Err(Error::OutOfDomain {
                x,
                lo: -self.l,
                hi: self.l,
            });
        }
        Ok(self.breakpoints.partition_point(|&a| a <= x) - 1)
    }

    /// True when every breakpoint of `other` is (within tolerance) one of ours.
    pub fn refines(&self, other: &Partition) -> bool {
        if !same_half_length(self.l, other.l) {
            return false;
        }
        let tol = BREAKPOINT_TOLERANCE * self.l;
        other.breakpoints.iter().all(|&b| {
            let i = self.breakpoints.partition_point(|&a| a < b - tol);
            i < self.breakpoints.len() && (self.breakpoints[i] - b).abs() <= tol
        })
    }
}

pub(crate) fn same_half_length(a: f64, b: f64) -> bool {
    (a - b).abs() <= BREAKPOINT_TOLERANCE * a.abs().max(b.abs())
}

/// A real simple function: one value per cell of a partition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepFunction {
    partition: Partition,
    values: Vec<f64>,
}

impl StepFunction {
    pub fn new(partition: Partition, values: Vec<f64>) -> Result<Self> {
        if values.len() != partition.num_cells() {
            return Err(Error::LengthMismatch {
                what: "cell values",
                expected: partition.num_cells(),
                found: values.len(),
            });
        }
        if let Some((k, &v)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite {
                x: partition.midpoint(k),
                value: v,
            });
        }
        Ok(Self { partition, values })
    }

    /// Convenience constructor from raw breakpoints.
    pub fn from_breakpoints(l: f64, breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        Self::new(Partition::new(l, breakpoints)?, values)
    }

    /// The constant `c` on the single cell `[-l, l)`.
    pub fn constant(l: f64, c: f64) -> Result<Self> {
        Self::new(Partition::trivial(l)?, vec![c])
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn half_length(&self) -> f64 {
        self.partition.l
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        Ok(self.values[self.partition.cell_index(x)?])
    }

    /// Re-expresses `self` on a finer partition by sampling each refined cell
    /// at its midpoint.
    pub fn restrict_to(&self, partition: &Partition) -> Result<StepFunction> {
        if !same_half_length(self.half_length(), partition.l) {
            return Err(Error::MismatchedHalfLength(self.half_length(), partition.l));
        }
        let values = (0..partition.num_cells())
            .map(|k| self.eval(partition.midpoint(k)))
            .collect::<Result<Vec<_>>>()?;
        StepFunction::new(partition.clone(), values)
    }
}

/// Sorted union of the breakpoints of `fs`, merging points closer than
/// `BREAKPOINT_TOLERANCE * l`.
pub fn common_refinement<'a, I>(fs: I) -> Result<Partition>
where
    I: IntoIterator<Item = &'a StepFunction>,
{
    refine_partitions(fs.into_iter().map(StepFunction::partition))
}

pub fn refine_partitions<'a, I>(partitions: I) -> Result<Partition>
where
    I: IntoIterator<Item = &'a Partition>,
{
    let mut iter = partitions.into_iter();
    let first = iter
        .next()
        .ok_or_else(|| Error::InvalidPartition("no partitions to refine".into()))?;
    let l = first.l;
    let mut points = first.breakpoints.clone();
    for p in iter {
        if !same_half_length(l, p.l) {
            return Err(Error::MismatchedHalfLength(l, p.l));
        }
        points.extend_from_slice(p.interior_breakpoints());
    }
    points.sort_by(f64::total_cmp);

    let tol = BREAKPOINT_TOLERANCE * l;
    let mut merged: Vec<f64> = Vec::with_capacity(points.len());
    for x in points {
        match merged.last() {
            Some(&prev) if x - prev <= tol => {}
            _ => merged.push(x),
        }
    }
    // an interior point merged just below l must not displace the endpoint
    if let Some(last) = merged.last_mut() {
        *last = l;
    }
    Partition::new(l, merged)
}

/// Freezes `g` at the midpoints `l(2s + 1 - S)/S` of `S` uniform cells.
pub fn discretize<G>(g: G, l: f64, cells: usize) -> Result<StepFunction>
where
    G: Fn(f64) -> f64,
{
    let partition = Partition::uniform(l, cells)?;
    let s = cells as f64;
    let values = (0..cells)
        .map(|i| {
            let x = l * (2.0 * i as f64 + 1.0 - s) / s;
            let v = g(x);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::NonFinite { x, value: v })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    StepFunction::new(partition, values)
}
