//! Assembly of the discrete Laplacian `H_m` as a conductance-weighted graph
//! Laplacian.

use crate::graph::VertexGraph;

/// Sparse symmetric `H_m`: at most three off-diagonal entries per row,
/// negative diagonal, zero row sums. Boundary rows are ids `0..3`.
#[derive(Debug, Clone)]
pub struct LaplacianMatrix {
    level: usize,
    diag: Vec<f64>,
    rows: Vec<Vec<(usize, f64)>>,
}

/// `H[u][v] = conductance of (u, v)`, `H[u][u] = -(sum of incident
/// conductances)`. Both triangles are written from the same edge list, so the
/// matrix is symmetric exactly.
pub fn assemble_laplacian(g: &VertexGraph) -> LaplacianMatrix {
    let n = g.vertex_count();
    let mut diag = vec![0.0; n];
    let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for id in 0..n {
        for &(v, c) in g.neighbors(id) {
            rows[id].push((v, c));
            diag[id] -= c;
        }
    }
    LaplacianMatrix {
        level: g.level(),
        diag,
        rows,
    }
}

impl LaplacianMatrix {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn entry(&self, u: usize, v: usize) -> f64 {
        if u == v {
            self.diag[u]
        } else {
            self.rows[u]
                .iter()
                .find(|&&(w, _)| w == v)
                .map_or(0.0, |&(_, c)| c)
        }
    }

    pub fn row(&self, u: usize) -> &[(usize, f64)] {
        &self.rows[u]
    }

    pub fn diagonal(&self, u: usize) -> f64 {
        self.diag[u]
    }

    /// `(H x)(p)`.
    pub fn apply_at(&self, x: &[f64], p: usize) -> f64 {
        let mut acc = self.diag[p] * x[p];
        for &(v, c) in &self.rows[p] {
            acc += c * x[v];
        }
        acc
    }

    /// `y = H x`.
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (p, out) in y.iter_mut().enumerate() {
            *out = self.apply_at(x, p);
        }
    }

    pub fn interior_range(&self) -> std::ops::Range<usize> {
        3..self.dim()
    }
}
