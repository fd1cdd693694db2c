//! The Dirichlet eigenproblem `(-H) u = lambda diag(mu) u` on the interior
//! vertices, support classification of the eigenfunctions, and the
//! transport that turns an eigenfunction supported in `L` into one supported
//! in `M`.
//!
//! Eigenvalues come from the dense symmetric path (similarity by
//! `diag(mu)^{-1/2}`, Householder reduction, QL). Each requested pair is then
//! polished by shifted inverse iteration on the sparse pencil; the interior
//! graph is a forest, so the factorization of `A - sigma M` is exact sparse
//! with a leaf-first elimination order. Everything is deterministic.

use crate::address::{self, Address};
use crate::eig;
use crate::error::{Error, Result};
use crate::graph::VertexGraph;
use crate::harmonic::{FunctionKind, VertexFunction};
use crate::laplacian::{assemble_laplacian, LaplacianMatrix};
use crate::measure::MeasureWeights;
use crate::structure::HarmonicStructure;

const BOUNDARY: usize = 3;

/// Interior pencil `(A, M)` with `A` the interior block of `-H_m` and `M`
/// the diagonal of the vertex measures.
#[derive(Debug, Clone)]
pub struct DirichletProblem {
    level: usize,
    lap: LaplacianMatrix,
    /// full-length vertex measures (boundary entries included)
    mass: Vec<f64>,
    /// interior adjacency in interior indices (id - 3), with conductances
    adj: Vec<Vec<(usize, f64)>>,
    /// interior diagonal of A = sum of all incident conductances
    diag_a: Vec<f64>,
}

impl DirichletProblem {
    pub fn new(g: &VertexGraph, w: &MeasureWeights) -> Result<Self> {
        if w.level() != g.level() {
            return Err(Error::LevelMismatch {
                expected: g.level(),
                actual: w.level(),
            });
        }
        let n = g.vertex_count();
        let n_int = n - BOUNDARY;
        let mut adj = vec![Vec::new(); n_int];
        let mut diag_a = vec![0.0; n_int];
        for id in BOUNDARY..n {
            for &(v, c) in g.neighbors(id) {
                diag_a[id - BOUNDARY] += c;
                if v >= BOUNDARY {
                    adj[id - BOUNDARY].push((v - BOUNDARY, c));
                }
            }
        }
        Ok(Self {
            level: g.level(),
            lap: assemble_laplacian(g),
            mass: w.per_vertex().to_vec(),
            adj,
            diag_a,
        })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn interior_dim(&self) -> usize {
        self.diag_a.len()
    }

    fn mu_int(&self, i: usize) -> f64 {
        self.mass[i + BOUNDARY]
    }

    /// Energy `u^T A u` of an interior vector, evaluated as the Dirichlet sum
    /// over all edges of the zero-extended function (exact and nonnegative).
    fn energy(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (i, row) in self.adj.iter().enumerate() {
            acc += (self.diag_a[i] - row.iter().map(|&(_, c)| c).sum::<f64>()) * x[i] * x[i];
            for &(j, c) in row {
                if j > i {
                    let d = x[i] - x[j];
                    acc += c * d * d;
                }
            }
        }
        acc
    }

    fn mu_dot(&self, a: &[f64], b: &[f64]) -> f64 {
        a.iter()
            .zip(b)
            .enumerate()
            .map(|(i, (x, y))| self.mu_int(i) * x * y)
            .sum()
    }

    /// `max_p |(A x - lambda M x)(p)|` over interior rows, via the sparse
    /// Laplacian on the zero-padded vector.
    fn residual(&self, x: &[f64], lambda: f64) -> f64 {
        let padded = self.pad(x);
        let mut worst: f64 = 0.0;
        for p in BOUNDARY..self.lap.dim() {
            let r = -self.lap.apply_at(&padded, p) - lambda * self.mass[p] * x[p - BOUNDARY];
            worst = worst.max(r.abs());
        }
        worst
    }

    fn pad(&self, x: &[f64]) -> Vec<f64> {
        let mut v = vec![0.0; self.lap.dim()];
        v[BOUNDARY..].copy_from_slice(x);
        v
    }

    /// Dense `diag(mu)^{-1/2} A diag(mu)^{-1/2}` on the interior.
    fn dense_similarity(&self) -> Vec<f64> {
        let n = self.interior_dim();
        let mut b = vec![0.0; n * n];
        for i in 0..n {
            b[i * n + i] = self.diag_a[i] / self.mu_int(i);
            for &(j, c) in &self.adj[i] {
                b[i * n + j] = -c / (self.mu_int(i) * self.mu_int(j)).sqrt();
            }
        }
        b
    }

    fn factor(&self, sigma: f64) -> Option<ForestFactor> {
        ForestFactor::new(&self.adj, &self.diag_a, &self.mass[BOUNDARY..], sigma)
    }
}

/// Exact sparse LDL^T of `A - sigma M` in a leaf-first elimination order.
/// The level-m graph is a tree, so the interior is a forest and elimination
/// produces no fill at all.
struct ForestFactor {
    order: Vec<usize>,
    parent: Vec<Option<usize>>,
    mult: Vec<f64>,
    pivot: Vec<f64>,
}

impl ForestFactor {
    fn new(
        adj: &[Vec<(usize, f64)>],
        diag_a: &[f64],
        mu: &[f64],
        sigma: f64,
    ) -> Option<ForestFactor> {
        let n = diag_a.len();
        let mut cdiag: Vec<f64> = (0..n).map(|i| diag_a[i] - sigma * mu[i]).collect();
        let mut rem: Vec<usize> = adj.iter().map(|r| r.len()).collect();
        let mut processed = vec![false; n];
        let mut queue: std::collections::VecDeque<usize> =
            (0..n).filter(|&i| rem[i] <= 1).collect();
        let mut order = Vec::with_capacity(n);
        let mut parent = vec![None; n];
        let mut mult = vec![0.0; n];
        let mut pivot = vec![0.0; n];

        while let Some(i) = queue.pop_front() {
            if processed[i] {
                continue;
            }
            processed[i] = true;
            order.push(i);
            let up = adj[i].iter().find(|&&(j, _)| !processed[j]).copied();
            pivot[i] = cdiag[i];
            if let Some((j, c)) = up {
                if pivot[i] == 0.0 {
                    return None;
                }
                let l = -c / pivot[i];
                mult[i] = l;
                parent[i] = Some(j);
                cdiag[j] -= c * c / pivot[i];
                rem[j] -= 1;
                if rem[j] <= 1 {
                    queue.push_back(j);
                }
            } else if pivot[i] == 0.0 {
                return None;
            }
        }
        assert_eq!(order.len(), n, "interior graph is not a forest");
        Some(ForestFactor {
            order,
            parent,
            mult,
            pivot,
        })
    }

    fn solve(&self, b: &mut [f64]) {
        for &i in &self.order {
            if let Some(j) = self.parent[i] {
                let t = self.mult[i] * b[i];
                b[j] -= t;
            }
        }
        for (v, d) in b.iter_mut().zip(&self.pivot) {
            *v /= d;
        }
        for &i in self.order.iter().rev() {
            if let Some(j) = self.parent[i] {
                b[i] -= self.mult[i] * b[j];
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupportLabel {
    Primary,
    Derived,
    Indeterminate,
}

impl SupportLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            SupportLabel::Primary => "primary",
            SupportLabel::Derived => "derived",
            SupportLabel::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Classification {
    pub label: SupportLabel,
    /// fraction of the squared mu-norm carried by the component of the
    /// critical point
    pub l_mass_fraction: f64,
    /// set when a neighboring eigenvalue is closer than 1e-6 relative, in
    /// which case individual labels are basis-dependent
    pub clustered: bool,
}

#[derive(Debug, Clone)]
pub struct SpectralResult {
    pub level: usize,
    /// ascending
    pub eigenvalues: Vec<f64>,
    /// zero on the boundary, mu-normalized, largest-magnitude entry positive
    pub eigenvectors: Vec<VertexFunction>,
    /// max interior |(-H)u - lambda diag(mu) u| per pair
    pub residuals: Vec<f64>,
    pub classification: Option<Vec<Classification>>,
}

impl SpectralResult {
    pub fn count(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn labels(&self) -> Result<Vec<SupportLabel>> {
        self.classification
            .as_ref()
            .map(|c| c.iter().map(|x| x.label).collect())
            .ok_or(Error::NotClassified)
    }
}

/// Deterministic quasi-random start vector for the inverse iteration.
fn start_vector(n: usize) -> Vec<f64> {
    let mut state = 0x243F6A8885A308D3u64;
    (0..n)
        .map(|_| {
            state = state.wrapping_add(0x9E3779B97F4A7C15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
            z ^= z >> 31;
            1.0 + (z >> 11) as f64 / (1u64 << 53) as f64
        })
        .collect()
}

/// The `count` smallest Dirichlet eigenpairs at the graph's level.
pub fn solve_dirichlet(
    g: &VertexGraph,
    w: &MeasureWeights,
    count: usize,
) -> Result<SpectralResult> {
    let problem = DirichletProblem::new(g, w)?;
    problem.solve(count)
}

impl DirichletProblem {
    pub fn solve(&self, count: usize) -> Result<SpectralResult> {
        let n = self.interior_dim();
        if count > n {
            return Err(Error::EigenCountTooLarge {
                requested: count,
                interior: n,
            });
        }
        if count == 0 {
            return Ok(SpectralResult {
                level: self.level,
                eigenvalues: Vec::new(),
                eigenvectors: Vec::new(),
                residuals: Vec::new(),
                classification: None,
            });
        }

        // dense stage: eigenvalue estimates of the similarity transform
        let estimates = {
            let mut b = self.dense_similarity();
            let (d, e) = eig::tridiagonalize(n, &mut b);
            drop(b);
            eig::tridiagonal_eigenvalues(d, e)
        };

        // sparse stage: shifted inverse iteration with Rayleigh updates
        let mut pairs: Vec<(f64, Vec<f64>, f64)> = Vec::with_capacity(count);
        for &estimate in estimates.iter().take(count) {
            let (lambda, vec, resid) = self.refine_pair(estimate, &pairs);
            pairs.push((lambda, vec, resid));
        }
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite eigenvalues"));

        let mut eigenvalues = Vec::with_capacity(count);
        let mut eigenvectors = Vec::with_capacity(count);
        let mut residuals = Vec::with_capacity(count);
        for (lambda, mut vec, resid) in pairs {
            let max_abs = vec.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let tolerance = 1e-8 * lambda * max_abs;
            // NaN-safe: anything not provably within tolerance is a failure
            let within = resid <= tolerance;
            if !within {
                return Err(Error::EigenResidual {
                    lambda,
                    residual: resid,
                    tolerance,
                });
            }
            // sign: entry of largest magnitude positive (first on ties)
            let lead = vec
                .iter()
                .enumerate()
                .max_by(|(i, a), (j, b)| a.abs().partial_cmp(&b.abs()).unwrap().then(j.cmp(i)))
                .map(|(i, _)| i)
                .unwrap();
            if vec[lead] < 0.0 {
                for v in &mut vec {
                    *v = -*v;
                }
            }
            eigenvalues.push(lambda);
            eigenvectors.push(VertexFunction::new(
                self.level,
                self.pad(&vec),
                FunctionKind::Eigenfunction,
            ));
            residuals.push(resid);
        }

        Ok(SpectralResult {
            level: self.level,
            eigenvalues,
            eigenvectors,
            residuals,
            classification: None,
        })
    }

    /// Polishes one eigenpair near `sigma`, keeping it mu-orthogonal to all
    /// previously accepted vectors.
    fn refine_pair(&self, sigma: f64, accepted: &[(f64, Vec<f64>, f64)]) -> (f64, Vec<f64>, f64) {
        let n = self.interior_dim();
        let mut shift = sigma;
        let mut x = start_vector(n);
        self.orthogonalize(&mut x, accepted);
        let nx = self.mu_dot(&x, &x).sqrt();
        for v in &mut x {
            *v /= nx;
        }

        let mut best: Option<(f64, Vec<f64>, f64)> = None;
        for it in 0..12 {
            let factor = self.factor_perturbed(&mut shift);
            let mut y: Vec<f64> = (0..n).map(|i| self.mu_int(i) * x[i]).collect();
            factor.solve(&mut y);
            self.orthogonalize(&mut y, accepted);
            let ny = self.mu_dot(&y, &y).sqrt();
            if !ny.is_finite() || ny == 0.0 {
                shift *= 1.0 + 1e-10;
                continue;
            }
            for v in &mut y {
                *v /= ny;
            }
            let lambda = self.energy(&y);
            let resid = self.residual(&y, lambda);
            let better = best.as_ref().is_none_or(|b| resid < b.2);
            if better {
                best = Some((lambda, y.clone(), resid));
            }
            let max_abs = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if resid <= 1e-13 * lambda * max_abs && it >= 1 {
                break;
            }
            if it >= 1 {
                shift = lambda;
            }
            x = y;
        }
        best.expect("at least one iteration ran")
    }

    fn factor_perturbed(&self, sigma: &mut f64) -> ForestFactor {
        for _ in 0..24 {
            if let Some(f) = self.factor(*sigma) {
                return f;
            }
            // exact zero pivot: nudge the shift deterministically
            *sigma = if *sigma == 0.0 {
                1e-300
            } else {
                *sigma * (1.0 + 4.0 * f64::EPSILON)
            };
        }
        panic!("could not factor the shifted pencil");
    }

    fn orthogonalize(&self, x: &mut [f64], accepted: &[(f64, Vec<f64>, f64)]) {
        for _ in 0..2 {
            for (_, u, _) in accepted {
                let proj = self.mu_dot(x, u);
                for (xi, ui) in x.iter_mut().zip(u) {
                    *xi -= proj * ui;
                }
            }
        }
    }
}

/// Connected components of the interior graph (boundary removed). Labels the
/// component of the critical point `L`; every eigenvector is classified by
/// where its squared mu-norm lives.
pub fn classify_support(result: &mut SpectralResult, g: &VertexGraph) -> Result<()> {
    if result.level != g.level() {
        return Err(Error::LevelMismatch {
            expected: g.level(),
            actual: result.level,
        });
    }
    let n = g.vertex_count();
    let mut component = vec![usize::MAX; n];
    let mut next = 0usize;
    for seed in BOUNDARY..n {
        if component[seed] != usize::MAX {
            continue;
        }
        let mut stack = vec![seed];
        component[seed] = next;
        while let Some(p) = stack.pop() {
            for &(q, _) in g.neighbors(p) {
                if q >= BOUNDARY && component[q] == usize::MAX {
                    component[q] = next;
                    stack.push(q);
                }
            }
        }
        next += 1;
    }
    let l_component = g
        .critical_vertex()
        .map(|c| component[c])
        .unwrap_or(usize::MAX);

    let w = MeasureWeights::for_graph(g);
    let mu = w.per_vertex();
    let mut out = Vec::with_capacity(result.count());
    for (k, u) in result.eigenvectors.iter().enumerate() {
        let mut l_mass = 0.0;
        let mut total = 0.0;
        for p in BOUNDARY..n {
            let m = mu[p] * u.values[p] * u.values[p];
            total += m;
            if component[p] == l_component {
                l_mass += m;
            }
        }
        let frac = if total > 0.0 { l_mass / total } else { 0.0 };
        let label = if frac >= 1.0 - 1e-8 {
            SupportLabel::Primary
        } else if frac <= 1e-8 {
            SupportLabel::Derived
        } else {
            SupportLabel::Indeterminate
        };
        let lambda = result.eigenvalues[k];
        let near =
            |other: Option<&f64>| other.is_some_and(|o| (o - lambda).abs() < 1e-6 * lambda.abs());
        let clustered =
            near(result.eigenvalues.get(k + 1)) || (k > 0 && near(result.eigenvalues.get(k - 1)));
        out.push(Classification {
            label,
            l_mass_fraction: frac,
            clustered,
        });
    }
    result.classification = Some(out);
    Ok(())
}

/// An `M`-supported eigenfunction built from an `L`-supported one by address
/// transport, together with its predicted eigenvalue.
#[derive(Debug, Clone)]
pub struct DerivedEigenfunction {
    pub function: VertexFunction,
    pub predicted_eigenvalue: f64,
}

/// Transports the `k`-th eigenfunction (must be classified primary) one level
/// up: the value at a vertex whose canonical word starts with digit 1 is the
/// value at the address with that digit stripped; all other vertices get 0.
/// The predicted eigenvalue is `lambda / (r1 * mu1)`.
pub fn derive_eigenfunction(
    result: &SpectralResult,
    k: usize,
    s: &HarmonicStructure,
    w: &MeasureWeights,
) -> Result<DerivedEigenfunction> {
    let labels = result.labels()?;
    if labels.get(k) != Some(&SupportLabel::Primary) {
        return Err(Error::NotPrimary { index: k });
    }
    let phi = &result.eigenvectors[k];
    let level = result.level + 1;
    let values: Vec<f64> = (0..address::vertex_count(level))
        .map(|id| {
            if id < BOUNDARY {
                return 0.0;
            }
            let addr: Address = address::vertex_address(id);
            match addr.strip_leading_one() {
                Some(src) if src.birth_level() <= result.level => {
                    phi.values[address::vertex_id(&src)]
                }
                _ => 0.0,
            }
        })
        .collect();
    Ok(DerivedEigenfunction {
        function: VertexFunction::new(level, values, FunctionKind::Eigenfunction),
        predicted_eigenvalue: result.eigenvalues[k] / (s.r1() * w.mu1()),
    })
}

#[derive(Debug, Clone, Copy)]
pub struct PairEntry {
    /// index (into the result) of a derived eigenvalue
    pub derived: usize,
    /// primary index minimizing the relative mismatch, if any primary exists
    pub primary: Option<usize>,
    /// `lambda_derived * r1 * mu1`
    pub transported: f64,
    /// `|transported - lambda_primary| / lambda_primary`
    pub mismatch: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct PairingReport {
    pub r1_mu1: f64,
    pub entries: Vec<PairEntry>,
}

/// For each derived eigenvalue, the primary eigenvalue closest to
/// `lambda_derived * r1 * mu1` in relative terms. Diagnostic only: nothing is
/// asserted about the size of the mismatch.
pub fn pair_spectrum(
    result: &SpectralResult,
    s: &HarmonicStructure,
    w: &MeasureWeights,
) -> Result<PairingReport> {
    let labels = result.labels()?;
    let r1_mu1 = s.r1() * w.mu1();
    let primaries: Vec<usize> = (0..result.count())
        .filter(|&k| labels[k] == SupportLabel::Primary)
        .collect();
    let entries = (0..result.count())
        .filter(|&k| labels[k] == SupportLabel::Derived)
        .map(|k| {
            let transported = result.eigenvalues[k] * r1_mu1;
            let primary = primaries.iter().copied().min_by(|&a, &b| {
                let ma = (transported - result.eigenvalues[a]).abs() / result.eigenvalues[a];
                let mb = (transported - result.eigenvalues[b]).abs() / result.eigenvalues[b];
                ma.partial_cmp(&mb).unwrap()
            });
            let mismatch = primary
                .map(|p| (transported - result.eigenvalues[p]).abs() / result.eigenvalues[p]);
            PairEntry {
                derived: k,
                primary,
                transported,
                mismatch,
            }
        })
        .collect();
    Ok(PairingReport { r1_mu1, entries })
}

/// Rayleigh quotient `u^T (-H) u / u^T diag(mu) u` of a vertex function that
/// vanishes on the boundary.
pub fn rayleigh_quotient(u: &VertexFunction, g: &VertexGraph, w: &MeasureWeights) -> f64 {
    let mut energy = 0.0;
    for e in g.edges() {
        let d = u.values[e.u] - u.values[e.v];
        energy += e.conductance * d * d;
    }
    let mut mass = 0.0;
    for (p, &m) in w.per_vertex().iter().enumerate() {
        mass += m * u.values[p] * u.values[p];
    }
    energy / mass
}
