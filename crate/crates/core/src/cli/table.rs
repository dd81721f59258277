use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Named columns of equal length.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    names: Vec<String>,
    columns: Vec<Vec<f64>>,
}

fn number(v: f64, buf: &mut ryu::Buffer) -> &str {
    if v.is_finite() {
        buf.format_finite(v)
    } else if v.is_nan() {
        "NaN"
    } else if v > 0.0 {
        "inf"
    } else {
        "-inf"
    }
}

impl Table {
    pub fn new<S: Into<String>>(columns: Vec<(S, Vec<f64>)>) -> Result<Self> {
        let (names, columns): (Vec<String>, Vec<Vec<f64>>) =
            columns.into_iter().map(|(n, c)| (n.into(), c)).unzip();
        let rows = columns.first().map_or(0, Vec::len);
        if rows == 0 {
            return Err(Error::Validation("refusing to emit an empty table".into()));
        }
        if let Some(c) = columns.iter().find(|c| c.len() != rows) {
            return Err(Error::LengthMismatch {
                what: "table rows",
                expected: rows,
                found: c.len(),
            });
        }
        Ok(Self { names, columns })
    }

    pub fn rows(&self) -> usize {
        self.columns[0].len()
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| self.columns[i].as_slice())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.names.join(",");
        out.push('\n');
        let mut buf = ryu::Buffer::new();
        for r in 0..self.rows() {
            for (i, c) in self.columns.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(number(c[r], &mut buf));
            }
            out.push('\n');
        }
        out
    }

    /// `{"x": [...], "psi": [...]}` with keys in column order.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{");
        let mut buf = ryu::Buffer::new();
        for (i, (name, col)) in self.names.iter().zip(&self.columns).enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            let key = serde_json::to_string(name).expect("string");
            write!(out, "{key}: [").expect("string write");
            for (j, &v) in col.iter().enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                // JSON has no NaN or infinity
                out.push_str(if v.is_finite() {
                    number(v, &mut buf)
                } else {
                    "null"
                });
            }
            out.push(']');
        }
        out.push_str("}\n");
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

pub fn emit_table(table: &Table, format: Format, path: &Path) -> Result<()> {
    std::fs::write(path, table.render(format))?;
    Ok(())
}
