//! Level-m vertex graphs of the Hata set: canonical vertices, conductance
//! weighted edges and the cell list.

use num_complex::Complex64;

use crate::address::{self, Address, Corner};
use crate::ifs::IfsParams;
use crate::structure::HarmonicStructure;

/// Vertices this close to the real axis (and with real part in [0, 1]) are
/// flagged as lying on the unit interval. At levels <= 12 with the default
/// alpha the nearest genuinely off-axis vertex sits around 5e-7, and on-axis
/// coordinates only carry rounding noise around 1e-16, so the margin is wide
/// on both sides. Tests cross-check the flag against a symbolic oracle.
const AXIS_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct VertexInfo {
    pub address: Address,
    pub position: Complex64,
    pub is_boundary: bool,
    pub on_unit_interval: bool,
    pub birth_level: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub conductance: f64,
}

/// A level-m cell `K_w` with the ids of its three corners `(p_w0, p_w1, p_w2)`.
#[derive(Debug, Clone)]
pub struct Cell {
    pub word: Vec<u8>,
    pub vertices: [usize; 3],
    pub resistance: f64,
}

/// The level-m approximation graph. Vertex ids follow [`address::vertex_id`],
/// so ids `0..3` are the boundary `{alpha, 0, 1}` and the graph of any
/// coarser level occupies a prefix of the id range.
#[derive(Debug, Clone)]
pub struct VertexGraph {
    level: usize,
    params: IfsParams,
    structure: HarmonicStructure,
    vertices: Vec<VertexInfo>,
    edges: Vec<Edge>,
    cells: Vec<Cell>,
    adjacency: Vec<Vec<(usize, f64)>>,
}

/// Builds the level-m graph: one vertex per canonical address of
/// `{p_wi : w in W_m}`, and per cell `K_w` the edge `(p_w0, p_w1)` with
/// conductance `h / r_w` and the edge `(p_w1, p_w2)` with conductance
/// `1 / r_w` (corners 0 and 2 are never joined directly).
pub fn build_graph(level: usize, params: IfsParams, structure: HarmonicStructure) -> VertexGraph {
    let n = address::vertex_count(level);
    let vertices: Vec<VertexInfo> = (0..n)
        .map(|id| {
            let addr = address::vertex_address(id);
            let position = addr.coordinate(&params);
            let on_axis = position.im.abs() <= AXIS_TOL
                && position.re >= -AXIS_TOL
                && position.re <= 1.0 + AXIS_TOL;
            VertexInfo {
                birth_level: addr.birth_level(),
                is_boundary: id < 3,
                on_unit_interval: on_axis,
                position,
                address: addr,
            }
        })
        .collect();

    let mut edges = Vec::with_capacity(2 << level);
    let mut cells = Vec::with_capacity(1 << level);
    let mut adjacency = vec![Vec::new(); n];
    let push_edge = |edges: &mut Vec<Edge>, adj: &mut Vec<Vec<(usize, f64)>>, u, v, c| {
        edges.push(Edge {
            u,
            v,
            conductance: c,
        });
        adj[u].push((v, c));
        adj[v].push((u, c));
    };
    for word in address::words(level) {
        let ids = address::cell_vertex_ids(&word);
        let r_w = structure.resistance(&word);
        push_edge(
            &mut edges,
            &mut adjacency,
            ids[0],
            ids[1],
            structure.h() / r_w,
        );
        push_edge(&mut edges, &mut adjacency, ids[1], ids[2], 1.0 / r_w);
        cells.push(Cell {
            word,
            vertices: ids,
            resistance: r_w,
        });
    }
    for list in &mut adjacency {
        list.sort_by_key(|&(v, _)| v);
    }

    VertexGraph {
        level,
        params,
        structure,
        vertices,
        edges,
        cells,
        adjacency,
    }
}

impl VertexGraph {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn params(&self) -> &IfsParams {
        &self.params
    }

    pub fn structure(&self) -> &HarmonicStructure {
        &self.structure
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[VertexInfo] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Neighbors of `id` with edge conductances, sorted by neighbor id.
    pub fn neighbors(&self, id: usize) -> &[(usize, f64)] {
        &self.adjacency[id]
    }

    pub fn degree(&self, id: usize) -> usize {
        self.adjacency[id].len()
    }

    pub fn interior_ids(&self) -> std::ops::Range<usize> {
        3..self.vertices.len()
    }

    /// Id of the critical point `|alpha|^2` (address `1:0`); present from
    /// level 1 on.
    pub fn critical_vertex(&self) -> Option<usize> {
        (self.level >= 1).then(|| address::vertex_id(&Address::new(vec![1], Corner::Alpha)))
    }
}
