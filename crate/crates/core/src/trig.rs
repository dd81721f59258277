//! Truncated trigonometric series on `[-l, l)`:
//!
//! ```text
//! half_c0 + sum_{k=1..K} c_k cos(k pi x / l) + d_k sin(k pi x / l)
//! ```

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::stepfn::same_half_length;

/// Harmonic count used when none is given.
pub const DEFAULT_HARMONICS: usize = 20;

/// Smallest node count `analyze` accepts for `harmonics` harmonics.
pub fn min_nodes(harmonics: usize) -> usize {
    4 * harmonics + 1
}

/// Neumaier compensated summation.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(self) -> f64 {
        self.sum + self.carry
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrigSeries {
    l: f64,
    half_c0: f64,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl TrigSeries {
    pub fn new(l: f64, half_c0: f64, cos: Vec<f64>, sin: Vec<f64>) -> Result<Self> {
        if !(l.is_finite() && l > 0.0) {
            return Err(Error::InvalidHalfLength(l));
        }
        if cos.len() != sin.len() {
            return Err(Error::LengthMismatch {
                what: "sine coefficients",
                expected: cos.len(),
                found: sin.len(),
            });
        }
        if let Some(&v) = std::iter::once(&half_c0)
            .chain(&cos)
            .chain(&sin)
            .find(|v| !v.is_finite())
        {
            return Err(Error::NonFinite {
                x: f64::NAN,
                value: v,
            });
        }
        Ok(Self {
            l,
            half_c0,
            cos,
            sin,
        })
    }

    pub fn zero(l: f64, harmonics: usize) -> Result<Self> {
        Self::new(l, 0.0, vec![0.0; harmonics], vec![0.0; harmonics])
    }

    pub(crate) fn from_parts(l: f64, half_c0: f64, cos: Vec<f64>, sin: Vec<f64>) -> Self {
        debug_assert_eq!(cos.len(), sin.len());
        Self {
            l,
            half_c0,
            cos,
            sin,
        }
    }

    pub fn half_length(&self) -> f64 {
        self.l
    }

    pub fn half_c0(&self) -> f64 {
        self.half_c0
    }

    pub fn cos_coeffs(&self) -> &[f64] {
        &self.cos
    }

    pub fn sin_coeffs(&self) -> &[f64] {
        &self.sin
    }

    /// Number of harmonics `K`.
    pub fn harmonics(&self) -> usize {
        self.cos.len()
    }

    /// `(c_k, d_k)` for `k >= 1`; zero past the last stored harmonic.
    pub fn harmonic(&self, k: usize) -> (f64, f64) {
        assert!(k >= 1, "harmonics are numbered from 1");
        if k <= self.cos.len() {
            (self.cos[k - 1], self.sin[k - 1])
        } else {
            (0.0, 0.0)
        }
    }

    /// Angular wavenumber `k pi / l`.
    pub fn wavenumber(&self, k: usize) -> f64 {
        wavenumber(k, self.l)
    }

    pub fn is_zero(&self) -> bool {
        self.half_c0 == 0.0
            && self.cos.iter().all(|&c| c == 0.0)
            && self.sin.iter().all(|&d| d == 0.0)
    }

    /// Zero-pads or truncates to exactly `harmonics` harmonics.
    pub fn with_harmonics(&self, harmonics: usize) -> TrigSeries {
        let mut cos = self.cos.clone();
        let mut sin = self.sin.clone();
        cos.resize(harmonics, 0.0);
        sin.resize(harmonics, 0.0);
        Self::from_parts(self.l, self.half_c0, cos, sin)
    }

    /// Sums the series at `x` in ascending harmonic order with compensated
    /// accumulation. The series is `2l`-periodic.
    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = CompensatedSum::default();
        acc.add(self.half_c0);
        for (i, (&c, &d)) in self.cos.iter().zip(&self.sin).enumerate() {
            let (s, co) = (self.wavenumber(i + 1) * x).sin_cos();
            acc.add(c * co);
            acc.add(d * s);
        }
        acc.value()
    }

    /// Exact `n`-th derivative, term by term.
    pub fn derivative(&self, n: u32) -> TrigSeries {
        if n == 0 {
            return self.clone();
        }
        let mut cos = Vec::with_capacity(self.harmonics());
        let mut sin = Vec::with_capacity(self.harmonics());
        for (i, (&c, &d)) in self.cos.iter().zip(&self.sin).enumerate() {
            let scale = self.wavenumber(i + 1).powi(n as i32);
            let (dc, dd) = match n % 4 {
                0 => (c, d),
                1 => (d, -c),
                2 => (-c, -d),
                _ => (-d, c),
            };
            cos.push(dc * scale);
            sin.push(dd * scale);
        }
        Self::from_parts(self.l, 0.0, cos, sin)
    }

    /// Coefficient-wise `alpha * self + beta * other`.
    pub fn lin_comb(&self, alpha: f64, beta: f64, other: &TrigSeries) -> Result<TrigSeries> {
        combine(alpha, self, beta, other)
    }
}

pub(crate) fn wavenumber(k: usize, l: f64) -> f64 {
    k as f64 * PI / l
}

/// `alpha * a + beta * b`, zero-padding the shorter series.
pub fn combine(alpha: f64, a: &TrigSeries, beta: f64, b: &TrigSeries) -> Result<TrigSeries> {
    if !same_half_length(a.l, b.l) {
        return Err(Error::MismatchedHalfLength(a.l, b.l));
    }
    let k = a.harmonics().max(b.harmonics());
    let (mut cos, mut sin) = (Vec::with_capacity(k), Vec::with_capacity(k));
    for j in 1..=k {
        let (ac, ad) = a.harmonic(j);
        let (bc, bd) = b.harmonic(j);
        cos.push(alpha * ac + beta * bc);
        sin.push(alpha * ad + beta * bd);
    }
    TrigSeries::new(a.l, alpha * a.half_c0 + beta * b.half_c0, cos, sin)
}

/// Fourier coefficients of `g` on `[-l, l)` from `nodes` uniformly spaced
/// samples.
///
/// The periodic extension of a non-periodic `g` jumps by `g(l) - g(-l)` at the
/// endpoints. That jump is split off as a multiple of the sawtooth `x / (2l)`,
/// whose coefficients are known in closed form, and the continuous remainder
/// goes through the periodic trapezoid rule. For periodic `g` the jump is zero
/// and this is the plain trapezoid rule, exact for trig polynomials of degree
/// below `nodes - harmonics`.
pub fn analyze<G>(g: G, l: f64, harmonics: usize, nodes: usize) -> Result<TrigSeries>
where
    G: Fn(f64) -> f64,
{
    check_analysis_args(l, harmonics, nodes)?;
    let sample = |x: f64| {
        let v = g(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { x, value: v })
        }
    };
    let jump = sample(l)? - sample(-l)?;
    let samples = (0..nodes)
        .map(|j| {
            let x = node(l, j, nodes);
            Ok(sample(x)? - jump * x / (2.0 * l))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut series = trapezoid(&samples, l, harmonics);
    for (i, d) in series.sin.iter_mut().enumerate() {
        let k = (i + 1) as f64;
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        *d += jump * sign / (k * PI);
    }
    Ok(series)
}

/// Fourier coefficients from samples on the uniform grid
/// `x_j = -l + 2l j / n`, `j = 0..n`, treating them as one period.
pub fn analyze_samples(samples: &[f64], l: f64, harmonics: usize) -> Result<TrigSeries> {
    check_analysis_args(l, harmonics, samples.len())?;
    if let Some((j, &v)) = samples.iter().enumerate().find(|(_, v)| !v.is_finite()) {
        return Err(Error::NonFinite {
            x: node(l, j, samples.len()),
            value: v,
        });
    }
    Ok(trapezoid(samples, l, harmonics))
}

fn check_analysis_args(l: f64, harmonics: usize, nodes: usize) -> Result<()> {
    if !(l.is_finite() && l > 0.0) {
        return Err(Error::InvalidHalfLength(l));
    }
    if harmonics == 0 {
        return Err(Error::Validation(
            "harmonic count must be at least 1".into(),
        ));
    }
    if nodes < min_nodes(harmonics) {
        return Err(Error::QuadratureTooCoarse {
            nodes,
            min: min_nodes(harmonics),
            harmonics,
        });
    }
    Ok(())
}

fn node(l: f64, j: usize, n: usize) -> f64 {
    -l + 2.0 * l * j as f64 / n as f64
}

fn trapezoid(samples: &[f64], l: f64, harmonics: usize) -> TrigSeries {
    let n = samples.len();
    let weight = 2.0 / n as f64;
    let mut mean = CompensatedSum::default();
    for &v in samples {
        mean.add(v);
    }
    let mut cos = Vec::with_capacity(harmonics);
    let mut sin = Vec::with_capacity(harmonics);
    for k in 1..=harmonics {
        let (mut c, mut d) = (CompensatedSum::default(), CompensatedSum::default());
        for (j, &v) in samples.iter().enumerate() {
            // angle k*pi*x_j/l reduced to k*(2 pi j/n - pi) with exact integer wrap
            let m = (k * j) % n;
            let theta = 2.0 * PI * m as f64 / n as f64 - k as f64 * PI;
            let (s, co) = theta.sin_cos();
            c.add(v * co);
            d.add(v * s);
        }
        cos.push(weight * c.value());
        sin.push(weight * d.value());
    }
    TrigSeries::from_parts(l, mean.value() / n as f64, cos, sin)
}
