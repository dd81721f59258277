//! JSON problem files.
//!
//! ```json
//! {
//!   "l": 3.141592653589793,
//!   "order": 2,
//!   "coefficients": [1, 0, {"breakpoints": [-3.141592653589793, 0, 3.141592653589793], "values": [-1, -2]}],
//!   "forcing": {"half_c0": 0.5, "cos": [0], "sin": [1]},
//!   "harmonics": 20
//! }
//! ```
//!
//! A coefficient is a bare number (a constant), a step function, or
//! `{"samples": [...]}`: values on a uniform grid over the closed interval
//! `[-l, l]`, joined linearly. Sampled coefficients are continuous and only
//! usable by convergence studies. The forcing is a series (the shorter of
//! `cos` and `sin` is zero-padded) or `{"samples": [...]}` on the uniform
//! grid over `[-l, l)`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::solver::OdeProblem;
use crate::stepfn::StepFunction;
use crate::trig::{analyze_samples, TrigSeries, DEFAULT_HARMONICS};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    l: f64,
    order: usize,
    coefficients: Vec<Value>,
    forcing: Value,
    #[serde(default)]
    harmonics: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStep {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSeries {
    half_c0: f64,
    #[serde(default)]
    cos: Vec<f64>,
    #[serde(default)]
    sin: Vec<f64>,
}

#[derive(Serialize)]
struct CanonicalProblem {
    l: f64,
    order: usize,
    coefficients: Vec<Value>,
    forcing: RawSeries,
    #[serde(skip_serializing_if = "Option::is_none")]
    harmonics: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSamples {
    samples: Vec<f64>,
}

/// Piecewise-linear interpolant of samples on a uniform grid over `[-l, l]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    l: f64,
    samples: Vec<f64>,
}

impl SampledFunction {
    pub fn new(l: f64, samples: Vec<f64>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::Validation(
                "a sampled coefficient needs at least two samples".into(),
            ));
        }
        if let Some(&v) = samples.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                x: f64::NAN,
                value: v,
            });
        }
        Ok(Self { l, samples })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.samples.len() - 1;
        let t = ((x + self.l) / (2.0 * self.l) * n as f64).clamp(0.0, n as f64);
        let i = (t.floor() as usize).min(n - 1);
        let frac = t - i as f64;
        self.samples[i] + frac * (self.samples[i + 1] - self.samples[i])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Coefficient {
    Step(StepFunction),
    Sampled(SampledFunction),
}

impl Coefficient {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            // x = l is outside a step function's domain; use the last cell
            Coefficient::Step(s) => {
                let p = s.partition();
                match s.eval(x) {
                    Ok(v) => v,
                    Err(_) if x >= p.half_length() => *s.values().last().expect("nonempty"),
                    Err(_) => s.values()[0],
                }
            }
            Coefficient::Sampled(f) => f.eval(x),
        }
    }
}

/// A parsed problem file, before it is committed to step coefficients.
#[derive(Debug, Clone)]
pub struct ProblemInput {
    pub l: f64,
    pub coefficients: Vec<Coefficient>,
    pub forcing: TrigSeries,
    pub harmonics: usize,
}

impl ProblemInput {
    /// The step-coefficient problem; fails if any coefficient is sampled.
    pub fn to_problem(&self) -> Result<OdeProblem> {
        let steps = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(n, c)| match c {
                Coefficient::Step(s) => Ok(s.clone()),
                Coefficient::Sampled(_) => Err(Error::Validation(format!(
                    "coefficient A_{n} is sampled; sampled coefficients are only supported by `converge`"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        OdeProblem::new(steps, self.forcing.clone())
    }

    pub fn coefficient_fns(&self) -> Vec<Box<dyn Fn(f64) -> f64 + '_>> {
        self.coefficients
            .iter()
            .map(|c| Box::new(move |x| c.eval(x)) as Box<dyn Fn(f64) -> f64>)
            .collect()
    }
}

fn parse_err(path: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_owned(),
        message: message.into(),
    }
}

fn field<T: serde::de::DeserializeOwned>(value: &Value, path: &str, what: &str) -> Result<T> {
    T::deserialize(value).map_err(|e| parse_err(path, format!("{what}: {e}")))
}

/// Parses a problem from JSON text. `source` names the input in errors.
/// `harmonics` overrides the file's harmonic count.
pub fn parse_problem(text: &str, source: &str, harmonics: Option<usize>) -> Result<ProblemInput> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        parse_err(
            source,
            format!("line {}, column {}: {e}", e.line(), e.column()),
        )
    })?;
    let raw: RawProblem = field(&value, source, "top level")?;

    if !(raw.l.is_finite() && raw.l > 0.0) {
        return Err(Error::Validation(format!(
            "l must be positive, got {}",
            raw.l
        )));
    }
    if !raw.order.is_multiple_of(2) {
        return Err(Error::Validation(format!(
            "order must be even, got {}",
            raw.order
        )));
    }
    if raw.coefficients.len() != raw.order + 1 {
        return Err(Error::Validation(format!(
            "order {} needs {} coefficients, got {}",
            raw.order,
            raw.order + 1,
            raw.coefficients.len()
        )));
    }
    let harmonics = harmonics.or(raw.harmonics).unwrap_or(DEFAULT_HARMONICS);
    if harmonics == 0 {
        return Err(Error::Validation("harmonics must be at least 1".into()));
    }

    let l = raw.l;
    let coefficients = raw
        .coefficients
        .iter()
        .enumerate()
        .map(|(n, v)| {
            let what = format!("coefficients[{n}]");
            let wrap = |e: Error| match e {
                Error::Parse { .. } => e,
                other => Error::Validation(format!("{what}: {other}")),
            };
            match v {
                Value::Number(_) => {
                    let c: f64 = field(v, source, &what)?;
                    StepFunction::constant(l, c)
                        .map(Coefficient::Step)
                        .map_err(wrap)
                }
                Value::Object(o) if o.contains_key("samples") => {
                    let s: RawSamples = field(v, source, &what)?;
                    SampledFunction::new(l, s.samples)
                        .map(Coefficient::Sampled)
                        .map_err(wrap)
                }
                _ => {
                    let s: RawStep = field(v, source, &what)?;
                    StepFunction::from_breakpoints(l, s.breakpoints, s.values)
                        .map(Coefficient::Step)
                        .map_err(wrap)
                }
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let forcing = match &raw.forcing {
        Value::Object(o) if o.contains_key("samples") => {
            let s: RawSamples = field(&raw.forcing, source, "forcing")?;
            analyze_samples(&s.samples, l, harmonics)
        }
        _ => {
            let mut s: RawSeries = field(&raw.forcing, source, "forcing")?;
            let k = s.cos.len().max(s.sin.len());
            s.cos.resize(k, 0.0);
            s.sin.resize(k, 0.0);
            TrigSeries::new(l, s.half_c0, s.cos, s.sin)
        }
    }
    .map_err(|e| Error::Validation(format!("forcing: {e}")))?;

    Ok(ProblemInput {
        l,
        coefficients,
        forcing,
        harmonics,
    })
}

pub fn load_input(path: &Path, harmonics: Option<usize>) -> Result<ProblemInput> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
    parse_problem(&text, &path.display().to_string(), harmonics)
}

/// Reads and validates a step-coefficient problem file.
pub fn load_problem(path: &Path) -> Result<OdeProblem> {
    load_input(path, None)?.to_problem()
}

/// Canonical JSON for a problem: single-cell coefficients become bare
/// numbers, floats use the shortest round-trip representation.
pub fn canonical_json(problem: &OdeProblem, harmonics: Option<usize>) -> String {
    let coefficients: Vec<Value> = problem
        .coefficients()
        .iter()
        .map(|c| {
            if c.values().len() == 1 {
                serde_json::json!(c.values()[0])
            } else {
                serde_json::to_value(RawStep {
                    breakpoints: c.partition().breakpoints().to_vec(),
                    values: c.values().to_vec(),
                })
                .expect("plain data")
            }
        })
        .collect();
    let f = problem.forcing();
    let doc = CanonicalProblem {
        l: problem.half_length(),
        order: problem.order(),
        coefficients,
        forcing: RawSeries {
            half_c0: f.half_c0(),
            cos: f.cos_coeffs().to_vec(),
            sin: f.sin_coeffs().to_vec(),
        },
        harmonics,
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("plain data");
    out.push('\n');
    out
}
