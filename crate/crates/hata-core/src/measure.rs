//! The self-similar measure with weights `(r1^d, r2^d)` and the per-vertex
//! normalizing integrals of the harmonic splines.

use crate::graph::VertexGraph;
use crate::structure::HarmonicStructure;

/// Measure data for one working level.
#[derive(Debug, Clone)]
pub struct MeasureWeights {
    level: usize,
    dimension: f64,
    mu1: f64,
    mu2: f64,
    mu0: [f64; 3],
    per_vertex: Vec<f64>,
}

/// Integrals of the three boundary splines against the measure, indexed by
/// corner: `(mu_alpha^0, mu_0^0, mu_1^0)`. Closed forms over the common
/// denominator `mu1*mu2 + (h^2 - 1)*mu1 + mu2`.
pub fn mu_zero(s: &HarmonicStructure, mu1: f64, mu2: f64) -> [f64; 3] {
    let hh = s.h() * s.h();
    let q = mu1 * mu2 + (hh - 1.0) * mu1 + mu2;
    [mu1 * mu2 / q, (hh - 1.0) * mu1 / q, mu2 / q]
}

/// `mu_p^m = sum over cells containing p of mu_w * mu0[corner of p in w]`.
/// Iterates cells rather than vertices: a vertex shared by two cells receives
/// two contributions, one per cell.
pub fn mu_vertex(g: &VertexGraph, mu1: f64, mu2: f64, mu0: [f64; 3]) -> Vec<f64> {
    let mut acc = vec![0.0; g.vertex_count()];
    for cell in g.cells() {
        let mu_w: f64 = cell
            .word
            .iter()
            .map(|&d| if d == 1 { mu1 } else { mu2 })
            .product();
        for corner in 0..3 {
            acc[cell.vertices[corner]] += mu_w * mu0[corner];
        }
    }
    acc
}

impl MeasureWeights {
    /// Solves the dimension equation for the graph's structure and assembles
    /// all measure data at the graph's level.
    pub fn for_graph(g: &VertexGraph) -> Self {
        let s = g.structure();
        let d = s.resistance_dimension();
        let mu1 = s.r1().powf(d);
        let mu2 = s.r2().powf(d);
        let mu0 = mu_zero(s, mu1, mu2);
        let per_vertex = mu_vertex(g, mu1, mu2, mu0);
        Self {
            level: g.level(),
            dimension: d,
            mu1,
            mu2,
            mu0,
            per_vertex,
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// The resistance dimension `d`.
    pub fn dimension(&self) -> f64 {
        self.dimension
    }

    pub fn mu1(&self) -> f64 {
        self.mu1
    }

    pub fn mu2(&self) -> f64 {
        self.mu2
    }

    /// `(mu_alpha^0, mu_0^0, mu_1^0)`, indexed by corner.
    pub fn mu0(&self) -> [f64; 3] {
        self.mu0
    }

    /// `mu_p^m` by vertex id.
    pub fn per_vertex(&self) -> &[f64] {
        &self.per_vertex
    }

    /// `mu_w` for a word over {1, 2}.
    pub fn cell_measure(&self, word: &[u8]) -> f64 {
        word.iter()
            .map(|&d| if d == 1 { self.mu1 } else { self.mu2 })
            .product()
    }
}
