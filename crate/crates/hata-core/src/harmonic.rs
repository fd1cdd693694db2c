//! Harmonic extension: the closed-form cell rule that fills in the two new
//! vertices of each cell when passing from level m to level m + 1.

use crate::address::{self, Address, Corner};
use crate::error::{Error, Result};
use crate::laplacian::LaplacianMatrix;
use crate::structure::HarmonicStructure;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionKind {
    Harmonic,
    Spline,
    Eigenfunction,
    Generic,
}

/// Real values on every vertex of one level, indexed by vertex id.
#[derive(Debug, Clone)]
pub struct VertexFunction {
    pub level: usize,
    pub values: Vec<f64>,
    pub kind: FunctionKind,
}

impl VertexFunction {
    pub fn new(level: usize, values: Vec<f64>, kind: FunctionKind) -> Self {
        assert_eq!(values.len(), address::vertex_count(level));
        Self {
            level,
            values,
            kind,
        }
    }

    /// Boundary data `(u(alpha), u(0), u(1))` as a level-0 function.
    pub fn from_boundary(b: [f64; 3]) -> Self {
        Self::new(0, b.to_vec(), FunctionKind::Harmonic)
    }

    /// The level-m spline: 1 at vertex `p`, 0 at every other level-m vertex.
    pub fn spline(p: usize, level: usize) -> Self {
        let mut values = vec![0.0; address::vertex_count(level)];
        values[p] = 1.0;
        Self::new(level, values, FunctionKind::Spline)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |a, v| a.max(v.abs()))
    }
}

/// One refinement step. Level-m values are copied (ids are level-stable) and
/// for each cell `w` of `W_m` the two new vertices receive
///
/// ```text
/// u(p_w10) = (1 - 1/h^2) u(p_w1) + (1/h^2) u(p_w2)
/// u(p_w20) = u(p_w10)
/// ```
///
/// Applied to a harmonic function this yields the harmonic function on
/// `V_{m+1}` with the same boundary data; applied to anything else it is the
/// piecewise-harmonic extension that keeps level-m values fixed.
pub fn extend_once(u: &VertexFunction, s: &HarmonicStructure) -> VertexFunction {
    let m = u.level;
    let theta = s.theta();
    let mut values = Vec::with_capacity(address::vertex_count(m + 1));
    values.extend_from_slice(&u.values);
    values.resize(address::vertex_count(m + 1), 0.0);
    let base = address::vertex_count(m + 1) - (2 << m);
    for (c, word) in address::words(m).enumerate() {
        let ids = address::cell_vertex_ids(&word);
        let mid = (1.0 - theta) * u.values[ids[1]] + theta * u.values[ids[2]];
        values[base + 2 * c] = mid; // p_w10, word w·1
        values[base + 2 * c + 1] = mid; // p_w20, word w·2
    }
    VertexFunction::new(m + 1, values, u.kind)
}

/// Piecewise-harmonic extension of level-m data up to `target`.
pub fn extend_data(u: &VertexFunction, target: usize, s: &HarmonicStructure) -> VertexFunction {
    assert!(target >= u.level);
    let mut out = u.clone();
    while out.level < target {
        out = extend_once(&out, s);
    }
    out
}

/// The harmonic function on `V_m` with boundary data `b = (u(alpha), u(0), u(1))`.
pub fn harmonic_from_boundary(b: [f64; 3], level: usize, s: &HarmonicStructure) -> VertexFunction {
    extend_data(&VertexFunction::from_boundary(b), level, s)
}

/// `max |H_m u(p)|` over interior vertices.
pub fn check_harmonicity(u: &VertexFunction, lap: &LaplacianMatrix) -> Result<f64> {
    if u.level != lap.level() {
        return Err(Error::LevelMismatch {
            expected: lap.level(),
            actual: u.level,
        });
    }
    let mut worst: f64 = 0.0;
    for p in lap.interior_range() {
        worst = worst.max(lap.apply_at(&u.values, p).abs());
    }
    Ok(worst)
}

/// Value of the piecewise-harmonic function at the point `F_word(p_corner)`
/// for any word extending the function's level: descends cell by cell with
/// the same two coefficients, so no global extension is materialized.
pub fn evaluate_at_address(
    u: &VertexFunction,
    word: &[u8],
    corner: Corner,
    s: &HarmonicStructure,
) -> f64 {
    let theta = s.theta();
    let head: Vec<u8> = word[..u.level.min(word.len())].to_vec();
    if word.len() <= u.level {
        let id = address::vertex_id(&Address::new(head, corner).canonicalize());
        return u.values[id];
    }
    let ids = address::cell_vertex_ids(&head);
    let mut va = u.values[ids[0]];
    let mut v1 = u.values[ids[1]];
    let mut v2 = u.values[ids[2]];
    for &d in &word[u.level..] {
        let mid = (1.0 - theta) * v1 + theta * v2;
        if d == 1 {
            // sub-cell corners: (p_w10, p_w11, p_w12) = (mid, v1, va)
            v2 = va;
            va = mid;
        } else {
            // sub-cell corners: (p_w20, p_w21, p_w22) = (mid, mid, v2)
            va = mid;
            v1 = mid;
        }
    }
    match corner {
        Corner::Alpha => va,
        Corner::Origin => v1,
        Corner::Unit => v2,
    }
}
