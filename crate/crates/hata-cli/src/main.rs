//! `hata`: build the discrete structures of the Hata tree set, compute
//! harmonic functions and Dirichlet eigenfunctions, and export the data
//! behind their interval restrictions. All output is deterministic:
//! identical invocations produce byte-identical files.

mod commands;
mod config;
mod output;

use clap::{Args, Parser, Subcommand};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hata",
    version,
    about = "Harmonic structure, Laplacian spectra and interval traces of the Hata tree set"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CommonOpts {
    /// Real part of the IFS parameter alpha
    #[arg(long = "alpha-re", default_value_t = 0.5)]
    alpha_re: f64,

    /// Imaginary part of the IFS parameter alpha (default sqrt(3)/6)
    #[arg(long = "alpha-im", default_value_t = 0.28867513459481287)]
    alpha_im: f64,

    /// Structure parameter h > 1
    #[arg(long = "h")]
    h: f64,

    /// Refinement level m
    #[arg(long = "m", default_value_t = 10)]
    m: usize,

    /// Output directory (default: $HATA_OUT_DIR, else the current directory)
    #[arg(long = "out")]
    out: Option<std::path::PathBuf>,

    /// Output format for tabular files
    #[arg(long = "format", value_enum, default_value_t = output::Format::Csv)]
    format: output::Format,
}

#[derive(Subcommand)]
enum Command {
    /// Print the resistance and Euclidean dimensions and the h where they coincide
    Dimension {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Harmonic function from boundary data: vertex-function and trace files
    Harmonic {
        #[command(flatten)]
        common: CommonOpts,
        /// Boundary data u(alpha),u(0),u(1), e.g. 0,0,1
        #[arg(long = "boundary", value_parser = config::parse_triple)]
        boundary: config::Triple,
    },
    /// Dirichlet eigenvalues (and optionally eigenvectors)
    Eigen {
        #[command(flatten)]
        common: CommonOpts,
        /// How many of the smallest eigenpairs to compute
        #[arg(long = "count", default_value_t = 20)]
        count: usize,
        /// Also write one vertex-function file per eigenvector
        #[arg(long = "vectors", default_value_t = false)]
        vectors: bool,
    },
    /// Middle-point proportion reports at levels m-1 and m
    Theta {
        #[command(flatten)]
        common: CommonOpts,
        /// 1-based index of the eigenfunction to analyze
        #[arg(long = "eigen-index", conflicts_with = "boundary")]
        eigen_index: Option<usize>,
        /// Analyze the harmonic function with this boundary data instead
        #[arg(long = "boundary", value_parser = config::parse_triple)]
        boundary: Option<config::Triple>,
    },
    /// Export the level-m vertex graph as JSON
    Mesh {
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Dimension { common } => commands::dimension(&common),
        Command::Harmonic { common, boundary } => commands::harmonic(&common, boundary),
        Command::Eigen {
            common,
            count,
            vectors,
        } => commands::eigen(&common, count, vectors),
        Command::Theta {
            common,
            eigen_index,
            boundary,
        } => commands::theta(&common, eigen_index, boundary),
        Command::Mesh { common } => commands::mesh(&common),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
