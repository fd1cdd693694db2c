//! Numerical core for analysis on the Hata tree set: vertex graphs of the
//! self-similar approximations, the one-parameter family of harmonic
//! structures and its graph Laplacians, harmonic extension, the self-similar
//! measure, the Dirichlet eigenproblem, and restrictions of vertex functions
//! to the unit interval with their singularity diagnostics.
//!
//! The set is the attractor of `F1(z) = alpha conj(z)` and
//! `F2(z) = (1 - |alpha|^2) conj(z) + |alpha|^2`, a dendrite whose boundary
//! is `{alpha, 0, 1}`. All computation is deterministic; no randomness is
//! used anywhere in production paths.

pub mod address;
pub mod eig;
pub mod error;
pub mod graph;
pub mod harmonic;
pub mod ifs;
pub mod laplacian;
pub mod measure;
pub mod spectral;
pub mod structure;
pub mod trace;

pub use address::{
    cell_vertex_ids, vertex_address, vertex_count, vertex_id, words, Address, Corner,
};
pub use error::{Error, Result};
pub use graph::{build_graph, Cell, Edge, VertexGraph, VertexInfo};
pub use harmonic::{
    check_harmonicity, evaluate_at_address, extend_data, extend_once, harmonic_from_boundary,
    FunctionKind, VertexFunction,
};
pub use ifs::IfsParams;
pub use laplacian::{assemble_laplacian, LaplacianMatrix};
pub use measure::{mu_vertex, mu_zero, MeasureWeights};
pub use spectral::{
    classify_support, derive_eigenfunction, pair_spectrum, rayleigh_quotient, solve_dirichlet,
    Classification, DerivedEigenfunction, DirichletProblem, PairEntry, PairingReport,
    SpectralResult, SupportLabel,
};
pub use structure::{euclidean_dimension, HarmonicStructure};
pub use trace::{
    functional_equation_check, monotonicity_check, restrict_to_interval, theta_analysis,
    MonotonicityReport, ThetaPoint, ThetaReport, TracePoint, TraceSeries,
};
