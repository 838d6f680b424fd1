// Copyright 2026 Zeno Gate Contributors
// SPDX-License-Identifier: Apache-2.0

//! Header blocks, number formatting and serialisation of run outputs.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;
use zeno_core::linalg::ComplexMatrix;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Significant digits of CSV numbers.
pub const CSV_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Provenance recorded at the top of every output.
#[derive(Debug, Clone, Serialize)]
pub struct Header {
    pub subcommand: &'static str,
    pub version: &'static str,
    pub seed: Option<u64>,
    /// Parameter name and its value as given to the run, in a fixed order.
    pub params: Vec<(String, String)>,
}

impl Header {
    pub fn new(subcommand: &'static str) -> Self {
        Self {
            subcommand,
            version: VERSION,
            seed: None,
            params: Vec::new(),
        }
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn param(mut self, name: &str, value: impl ToString) -> Self {
        self.params.push((name.to_string(), value.to_string()));
        self
    }

    fn csv_block(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# zeno {}", self.subcommand);
        let _ = writeln!(s, "# version: {}", self.version);
        match self.seed {
            Some(seed) => {
                let _ = writeln!(s, "# seed: {seed}");
            }
            None => s.push_str("# seed: none\n"),
        }
        for (k, v) in &self.params {
            let _ = writeln!(s, "# {k} = {v}");
        }
        s
    }
}

#[derive(Serialize)]
struct JsonHeader<'a> {
    subcommand: &'a str,
    version: &'a str,
    seed: Option<u64>,
    params: serde_json::Map<String, serde_json::Value>,
}

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    header: JsonHeader<'a>,
    data: &'a T,
}

/// `%.12g`: 12 significant digits, trailing zeros removed, exponent form
/// outside `[1e-4, 1e12)`.
pub fn format_number(x: f64) -> String {
    format_g(x, CSV_DIGITS)
}

pub fn format_g(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Row-major `[[re, im], ...]` rows.
pub fn matrix_json(m: &ComplexMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
        .collect()
}

/// A table that can be written as CSV or as a JSON array of row objects.
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone, Copy)]
pub enum Cell {
    Num(f64),
    UInt(u64),
}

impl Cell {
    fn csv(&self) -> String {
        match *self {
            Cell::Num(x) => format_number(x),
            Cell::UInt(u) => u.to_string(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match *self {
            Cell::Num(x) => serde_json::json!(x),
            Cell::UInt(u) => serde_json::json!(u),
        }
    }
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn csv_body(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    fn json_rows(&self) -> Vec<serde_json::Map<String, serde_json::Value>> {
        self.rows
            .iter()
            .map(|row| {
                self.columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), v.json()))
                    .collect()
            })
            .collect()
    }
}

pub fn render_table(header: &Header, table: &Table, format: Format) -> Result<String> {
    match format {
        Format::Csv => Ok(header.csv_block() + &table.csv_body()),
        Format::Json => render_json(header, &table.json_rows()),
    }
}

pub fn render_json<T: Serialize>(header: &Header, data: &T) -> Result<String> {
    let params = header
        .params
        .iter()
        .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
        .collect();
    let doc = Document {
        header: JsonHeader {
            subcommand: header.subcommand,
            version: header.version,
            seed: header.seed,
            params,
        },
        data,
    };
    let mut s = serde_json::to_string_pretty(&doc).context("serialising report")?;
    s.push('\n');
    Ok(s)
}

pub fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes()).context("writing to stdout")?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_format_matches_c() {
        assert_eq!(format_number(1.0), "1");
        assert_eq!(format_number(0.5), "0.5");
        assert_eq!(format_number(-2.25), "-2.25");
        assert_eq!(format_number(std::f64::consts::PI), "3.14159265359");
        assert_eq!(format_number(1e-5), "1e-05");
        assert_eq!(format_number(1.5e-7), "1.5e-07");
        assert_eq!(format_number(0.0001234), "0.0001234");
        assert_eq!(format_number(123456789012.0), "123456789012");
        assert_eq!(format_number(1234567890123.0), "1.23456789012e+12");
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(2.0 / 3.0), "0.666666666667");
        assert_eq!(format_number(9.9999999999999e-1), "1");
    }

    #[test]
    fn csv_has_header_then_columns() {
        let mut t = Table::new(vec!["t", "p"]);
        t.push(vec![Cell::Num(0.0), Cell::Num(1.0)]);
        let h = Header::new("rabi").param("steps", 2);
        let s = render_table(&h, &t, Format::Csv).unwrap();
        assert_eq!(
            s,
            format!("# zeno rabi\n# version: {VERSION}\n# seed: none\n# steps = 2\nt,p\n0,1\n")
        );
    }

    #[test]
    fn json_header_comes_first() {
        let h = Header::new("gate").seed(3);
        let s = render_json(&h, &vec![1, 2]).unwrap();
        assert!(s.find("\"header\"").unwrap() < s.find("\"data\"").unwrap());
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["header"]["seed"], 3);
    }
}
