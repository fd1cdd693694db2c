//! Deterministic file output. CSV files carry a `#`-prefixed configuration
//! echo line followed by the header; JSON files embed the same configuration
//! object. Floating-point values are written in Rust's shortest
//! round-trip representation.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Serialize;

use crate::config::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Serialize, Clone, Copy)]
pub struct ConfigEcho {
    pub alpha: [f64; 2],
    pub h: f64,
    pub m: usize,
    pub version: &'static str,
}

impl ConfigEcho {
    pub fn new(alpha: Complex64, h: f64, m: usize) -> Self {
        ConfigEcho {
            alpha: [alpha.re, alpha.im],
            h,
            m,
            version: env!("CARGO_PKG_VERSION"),
        }
    }

    fn comment_line(&self) -> String {
        let sign = if self.alpha[1] < 0.0 { "" } else { "+" };
        format!(
            "# alpha={}{}{}i h={} m={} version={}",
            self.alpha[0], sign, self.alpha[1], self.h, self.m, self.version
        )
    }
}

/// One output record: serializable for JSON and expressible as CSV cells.
pub trait Record: Serialize {
    const COLUMNS: &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

pub fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

fn fmt_opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

#[derive(Serialize)]
pub struct FunctionRow {
    pub address: String,
    pub x: f64,
    pub y: f64,
    pub value: f64,
}

impl Record for FunctionRow {
    const COLUMNS: &'static [&'static str] = &["address", "x", "y", "value"];
    fn cells(&self) -> Vec<String> {
        vec![
            self.address.clone(),
            fmt_f64(self.x),
            fmt_f64(self.y),
            fmt_f64(self.value),
        ]
    }
}

#[derive(Serialize)]
pub struct EigenvectorRow {
    pub address: String,
    pub x: f64,
    pub y: f64,
    pub value: f64,
    pub k: usize,
}

impl Record for EigenvectorRow {
    const COLUMNS: &'static [&'static str] = &["address", "x", "y", "value", "k"];
    fn cells(&self) -> Vec<String> {
        vec![
            self.address.clone(),
            fmt_f64(self.x),
            fmt_f64(self.y),
            fmt_f64(self.value),
            self.k.to_string(),
        ]
    }
}

#[derive(Serialize)]
pub struct TraceRow {
    pub x: f64,
    pub value: f64,
    pub birth_level: usize,
}

impl Record for TraceRow {
    const COLUMNS: &'static [&'static str] = &["x", "value", "birth_level"];
    fn cells(&self) -> Vec<String> {
        vec![
            fmt_f64(self.x),
            fmt_f64(self.value),
            self.birth_level.to_string(),
        ]
    }
}

#[derive(Serialize)]
pub struct ThetaRow {
    pub x_q: f64,
    pub theta: f64,
    pub level: usize,
    pub excluded: bool,
}

impl Record for ThetaRow {
    const COLUMNS: &'static [&'static str] = &["x_q", "theta", "level", "excluded"];
    fn cells(&self) -> Vec<String> {
        vec![
            fmt_f64(self.x_q),
            fmt_f64(self.theta),
            self.level.to_string(),
            self.excluded.to_string(),
        ]
    }
}

#[derive(Serialize)]
pub struct EigenRow {
    pub k: usize,
    pub lambda: f64,
    pub label: &'static str,
    pub paired_k: Option<usize>,
    pub pair_mismatch: Option<f64>,
    pub residual: f64,
}

impl Record for EigenRow {
    const COLUMNS: &'static [&'static str] = &[
        "k",
        "lambda",
        "label",
        "paired_k",
        "pair_mismatch",
        "residual",
    ];
    fn cells(&self) -> Vec<String> {
        vec![
            self.k.to_string(),
            fmt_f64(self.lambda),
            self.label.to_string(),
            fmt_opt(&self.paired_k),
            fmt_opt(&self.pair_mismatch.map(fmt_f64)),
            fmt_f64(self.residual),
        ]
    }
}

#[derive(Serialize)]
struct TableDoc<'a, T: Serialize> {
    config: ConfigEcho,
    rows: &'a [T],
}

/// Writes a table in the requested format and returns the path.
pub fn write_table<T: Record>(
    dir: &Path,
    stem: &str,
    format: Format,
    echo: ConfigEcho,
    rows: &[T],
) -> Result<PathBuf, CliError> {
    fs::create_dir_all(dir)?;
    let path = dir.join(format!("{stem}.{}", format.extension()));
    let mut buf = Vec::new();
    match format {
        Format::Csv => {
            writeln!(buf, "{}", echo.comment_line())?;
            writeln!(buf, "{}", T::COLUMNS.join(","))?;
            for row in rows {
                writeln!(buf, "{}", row.cells().join(","))?;
            }
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut buf, &TableDoc { config: echo, rows })
                .map_err(|e| CliError::Io(e.to_string()))?;
            buf.push(b'\n');
        }
    }
    fs::write(&path, &buf)?;
    Ok(path)
}

#[derive(Serialize)]
pub struct MeshVertex {
    pub id: usize,
    pub address: String,
    pub x: f64,
    pub y: f64,
    pub boundary: bool,
    pub on01: bool,
    pub birth_level: usize,
}

#[derive(Serialize)]
pub struct MeshEdge {
    pub u: usize,
    pub v: usize,
    pub conductance: f64,
}

#[derive(Serialize)]
pub struct MeshDoc {
    pub level: usize,
    pub alpha: [f64; 2],
    pub h: f64,
    pub version: &'static str,
    pub vertices: Vec<MeshVertex>,
    pub edges: Vec<MeshEdge>,
}

pub fn write_mesh(dir: &Path, doc: &MeshDoc) -> Result<PathBuf, CliError> {
    fs::create_dir_all(dir)?;
    let path = dir.join("mesh.json");
    let mut buf = serde_json::to_vec_pretty(doc).map_err(|e| CliError::Io(e.to_string()))?;
    buf.push(b'\n');
    fs::write(&path, &buf)?;
    Ok(path)
}
