//! Run configuration: validation of the flags into core types, error
//! classification, and the exit-code contract (2 invalid configuration,
//! 3 numerical failure, 4 I/O failure).

use std::fmt;
use std::path::PathBuf;

use hata_core::{Error as CoreError, HarmonicStructure, IfsParams};
use num_complex::Complex64;

pub type Triple = [f64; 3];

pub fn parse_triple(s: &str) -> Result<Triple, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated values, got {s:?}"));
    }
    let mut out = [0.0; 3];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("bad number {part:?}: {e}"))?;
    }
    Ok(out)
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "invalid configuration: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(m) => write!(f, "i/o failure: {m}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InadmissibleAlpha { .. }
            | CoreError::StructureParamOutOfRange { .. }
            | CoreError::EigenCountTooLarge { .. }
            | CoreError::NotPrimary { .. }
            | CoreError::NotClassified
            | CoreError::LevelMismatch { .. } => CliError::Config(e.to_string()),
            CoreError::EigenResidual { .. }
            | CoreError::AxisSiblingMismatch { .. }
            | CoreError::TraceNotUnitBoundary { .. }
            | CoreError::TraceMissingEndpoints { .. } => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Validated run parameters shared by every command.
pub struct RunConfig {
    pub params: IfsParams,
    pub structure: HarmonicStructure,
    pub level: usize,
    pub out_dir: PathBuf,
}

impl RunConfig {
    pub fn from_opts(
        alpha_re: f64,
        alpha_im: f64,
        h: f64,
        level: usize,
        out: Option<PathBuf>,
    ) -> Result<Self, CliError> {
        let params = IfsParams::new(Complex64::new(alpha_re, alpha_im))?;
        let structure = HarmonicStructure::new(h)?;
        let out_dir = out
            .or_else(|| std::env::var_os("HATA_OUT_DIR").map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("."));
        Ok(RunConfig {
            params,
            structure,
            level,
            out_dir,
        })
    }
}
