//! Restrictions of vertex functions to the unit interval and the
//! singularity diagnostics run on them.

use crate::address::{self, Address, Corner};
use crate::error::{Error, Result};
use crate::graph::VertexGraph;
use crate::harmonic::VertexFunction;
use crate::structure::HarmonicStructure;

#[derive(Debug, Clone, Copy)]
pub struct TracePoint {
    pub x: f64,
    pub value: f64,
    pub birth_level: usize,
    /// vertex id in the graph (stable across levels)
    pub vertex: usize,
    /// indices into the series of the flanking parents `(p_w1, p_w2)`;
    /// `None` for the endpoints 0 and 1
    pub parents: Option<(usize, usize)>,
}

/// The restriction of a vertex function to `V_m ∩ [0, 1]`, sorted by
/// coordinate, with middle-point parentage resolved by address.
#[derive(Debug, Clone)]
pub struct TraceSeries {
    pub level: usize,
    pub points: Vec<TracePoint>,
}

impl TraceSeries {
    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.value)
    }

    pub fn position_of_vertex(&self, vertex: usize) -> Option<usize> {
        self.points.iter().position(|p| p.vertex == vertex)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ThetaPoint {
    pub x: f64,
    pub theta: f64,
    pub birth_level: usize,
    pub vertex: usize,
    pub excluded: bool,
}

#[derive(Debug, Clone)]
pub struct ThetaReport {
    /// the harmonic value `1/h^2`
    pub reference: f64,
    pub points: Vec<ThetaPoint>,
    /// max `|theta - 1/h^2|` over the non-excluded points
    pub max_deviation: f64,
    pub excluded_count: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct MonotonicityReport {
    pub is_nondecreasing: bool,
    /// first index `i` with `value[i+1] < value[i]`
    pub first_violation: Option<usize>,
}

/// Filters the on-interval vertices, sorts them by real coordinate, and
/// attaches to every middle point `q = p_w10` its flanking parents
/// `x = p_w1` (left) and `y = p_w2` (right) of the same cell. `F_w` is
/// orientation-preserving on the axis, so address order equals coordinate
/// order.
pub fn restrict_to_interval(u: &VertexFunction, g: &VertexGraph) -> Result<TraceSeries> {
    if u.level != g.level() {
        return Err(Error::LevelMismatch {
            expected: g.level(),
            actual: u.level,
        });
    }
    let mut ids: Vec<usize> = (0..g.vertex_count())
        .filter(|&id| g.vertices()[id].on_unit_interval)
        .collect();
    ids.sort_by(|&a, &b| {
        g.vertices()[a]
            .position
            .re
            .partial_cmp(&g.vertices()[b].position.re)
            .expect("finite coordinates")
    });
    let series_index: std::collections::HashMap<usize, usize> =
        ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();

    let mut points = Vec::with_capacity(ids.len());
    for &id in &ids {
        let info = &g.vertices()[id];
        let parents = if info.is_boundary {
            None
        } else {
            // canonical word of an interior axis vertex is w·1, its cell
            // siblings are the canonical forms of (w, 1) and (w, 2)
            let word = info.address.word();
            debug_assert_eq!(word.last(), Some(&1));
            let w = &word[..word.len() - 1];
            let left = address::vertex_id(&Address::new(w.to_vec(), Corner::Origin).canonicalize());
            let right = address::vertex_id(&Address::new(w.to_vec(), Corner::Unit).canonicalize());
            let (Some(&li), Some(&ri)) = (series_index.get(&left), series_index.get(&right)) else {
                return Err(Error::AxisSiblingMismatch {
                    address: info.address.to_string(),
                });
            };
            Some((li, ri))
        };
        points.push(TracePoint {
            x: info.position.re,
            value: u.values[id],
            birth_level: info.birth_level,
            vertex: id,
            parents,
        });
    }
    // endpoints are the boundary vertices 0 and 1
    let ok_ends = points.first().is_some_and(|p| p.vertex == 1)
        && points.last().is_some_and(|p| p.vertex == 2);
    if !ok_ends {
        return Err(Error::TraceMissingEndpoints {
            left: points.first().map_or(f64::NAN, |p| p.x),
            right: points.last().map_or(f64::NAN, |p| p.x),
        });
    }
    for (i, p) in points.iter().enumerate() {
        if let Some((l, r)) = p.parents {
            debug_assert!(points[l].x < p.x && p.x < points[r].x);
        }
        if i > 0 {
            debug_assert!(points[i - 1].x < p.x);
        }
    }
    Ok(TraceSeries {
        level: u.level,
        points,
    })
}

/// Solves `u(q) = (1 - theta) u(x) + theta u(y)` at every middle point.
/// Points whose denominator `|u(y) - u(x)|` falls below `1e-9 * sup|u|` are
/// excluded from the deviation summary and counted.
pub fn theta_analysis(t: &TraceSeries, u: &VertexFunction, s: &HarmonicStructure) -> ThetaReport {
    let reference = s.theta();
    let threshold = 1e-9 * u.max_abs();
    let mut points = Vec::new();
    let mut max_deviation: f64 = 0.0;
    let mut excluded_count = 0;
    for p in &t.points {
        let Some((l, r)) = p.parents else { continue };
        let denom = t.points[r].value - t.points[l].value;
        let excluded = denom.abs() < threshold;
        let theta = if excluded {
            f64::NAN
        } else {
            let th = (p.value - t.points[l].value) / denom;
            max_deviation = max_deviation.max((th - reference).abs());
            th
        };
        if excluded {
            excluded_count += 1;
        }
        points.push(ThetaPoint {
            x: p.x,
            theta,
            birth_level: p.birth_level,
            vertex: p.vertex,
            excluded,
        });
    }
    ThetaReport {
        reference,
        points,
        max_deviation,
        excluded_count,
    }
}

/// Scans consecutive values for a decrease.
pub fn monotonicity_check(t: &TraceSeries) -> MonotonicityReport {
    let first_violation = t.points.windows(2).position(|w| w[1].value < w[0].value);
    MonotonicityReport {
        is_nondecreasing: first_violation.is_none(),
        first_violation,
    }
}

/// Residual of the two-branch self-affine system satisfied by the trace of
/// the harmonic function with boundary data `(0, 0, 1)`:
///
/// ```text
/// f(F1(F1(y))) = (1/h^2) f(y)                  left branch,  [0, |alpha|^2]
/// f(F2(y))     = (1 - 1/h^2) f(y) + 1/h^2      right branch, [|alpha|^2, 1]
/// ```
///
/// Points are matched by exact address transport (prepending the word `11`
/// or `2`), never by floating-point division of coordinates. `fine` must sit
/// at least two levels above `coarse` so both branch images exist.
pub fn functional_equation_check(
    fine: &TraceSeries,
    coarse: &TraceSeries,
    s: &HarmonicStructure,
) -> Result<f64> {
    if fine.level < coarse.level + 2 {
        return Err(Error::LevelMismatch {
            expected: coarse.level + 2,
            actual: fine.level,
        });
    }
    let endpoints_ok = |t: &TraceSeries| {
        let first = t.points.first().map_or(f64::NAN, |p| p.value);
        let last = t.points.last().map_or(f64::NAN, |p| p.value);
        if first.abs() <= 1e-12 && (last - 1.0).abs() <= 1e-12 {
            Ok(())
        } else {
            Err(Error::TraceNotUnitBoundary {
                left: first,
                right: last,
            })
        }
    };
    endpoints_ok(fine)?;
    endpoints_ok(coarse)?;

    let fine_by_vertex: std::collections::HashMap<usize, f64> =
        fine.points.iter().map(|p| (p.vertex, p.value)).collect();
    let theta = s.theta();
    let mut worst: f64 = 0.0;
    let lookup = |id: usize| {
        fine_by_vertex
            .get(&id)
            .copied()
            .ok_or_else(|| Error::AxisSiblingMismatch {
                address: address::vertex_address(id).to_string(),
            })
    };
    for p in &coarse.points {
        let addr = address::vertex_address(p.vertex);
        let f_left = lookup(address::vertex_id(&addr.prefixed(&[1, 1])))?;
        let f_right = lookup(address::vertex_id(&addr.prefixed(&[2])))?;
        worst = worst.max((f_left - theta * p.value).abs());
        worst = worst.max((f_right - ((1.0 - theta) * p.value + theta)).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::harmonic::harmonic_from_boundary;
    use crate::ifs::IfsParams;

    fn trace(b: [f64; 3], level: usize, h: f64) -> (TraceSeries, VertexFunction, VertexGraph) {
        let s = HarmonicStructure::new(h).unwrap();
        let g = build_graph(level, IfsParams::default(), s);
        let u = harmonic_from_boundary(b, level, &s);
        let t = restrict_to_interval(&u, &g).unwrap();
        (t, u, g)
    }

    #[test]
    fn level_one_trace_is_three_points() {
        let (t, _, g) = trace([0.0, 0.0, 1.0], 1, 2.0);
        assert_eq!(t.points.len(), 3);
        let xs: Vec<f64> = t.points.iter().map(|p| p.x).collect();
        assert_eq!(xs[0], 0.0);
        assert!((xs[1] - g.params().alpha_sq()).abs() < 1e-15);
        assert_eq!(xs[2], 1.0);
        assert_eq!(t.points[1].parents, Some((0, 2)));
    }

    #[test]
    fn linear_trace_at_the_critical_parameter() {
        let (t, _, _) = trace([0.0, 0.0, 1.0], 10, 3f64.sqrt());
        for p in &t.points {
            assert!((p.value - p.x).abs() < 1e-12, "x = {}", p.x);
        }
    }

    #[test]
    fn alpha_supported_function_vanishes_on_the_interval() {
        let (t, _, _) = trace([1.0, 0.0, 0.0], 8, 2.0);
        for p in &t.points {
            assert!(p.value.abs() <= 1e-13);
        }
    }

    #[test]
    fn harmonic_theta_is_constant() {
        for h in [1.5, 2.0, 3.0] {
            let (t, u, g) = trace([0.0, 0.0, 1.0], 9, h);
            let report = theta_analysis(&t, &u, g.structure());
            assert_eq!(report.excluded_count, 0);
            assert!(
                report.max_deviation < 1e-12,
                "h = {h}: {}",
                report.max_deviation
            );
        }
    }

    #[test]
    fn monotonicity_of_the_increasing_trace() {
        for h in [1.5, 3f64.sqrt(), 2.0, 3.0] {
            let (t, _, _) = trace([0.0, 0.0, 1.0], 10, h);
            let m = monotonicity_check(&t);
            assert!(m.is_nondecreasing, "h = {h}");
        }
        // unordered boundary data is reported, not fatal
        let (t, _, _) = trace([0.0, 1.0, 0.0], 6, 2.0);
        let m = monotonicity_check(&t);
        assert!(!m.is_nondecreasing);
        assert!(m.first_violation.is_some());
        let c = trace([2.0, 2.0, 2.0], 4, 2.0).0;
        assert!(monotonicity_check(&c).is_nondecreasing);
    }

    #[test]
    fn functional_equation_spot_values() {
        let h = 2.0;
        let (t10, ..) = trace([0.0, 0.0, 1.0], 10, h);
        let (t8, ..) = trace([0.0, 0.0, 1.0], 8, h);
        let res =
            functional_equation_check(&t10, &t8, &HarmonicStructure::new(h).unwrap()).unwrap();
        assert!(res < 1e-12, "residual {res}");
        // f(1/3) = 1/4 and f(1/9) = 1/16 for the default alpha
        let crit = t10.points.iter().find(|p| p.vertex == 3).unwrap();
        assert!((crit.value - 0.25).abs() < 1e-14);
        let deep = t10
            .points
            .iter()
            .find(|p| (p.x - 1.0 / 9.0).abs() < 1e-12)
            .unwrap();
        assert!((deep.value - 0.0625).abs() < 1e-14);
    }

    #[test]
    fn functional_equation_rejects_other_boundary_data() {
        let h = 2.0;
        let (t10, ..) = trace([0.0, 1.0, 0.0], 10, h);
        let (t8, ..) = trace([0.0, 1.0, 0.0], 8, h);
        assert!(matches!(
            functional_equation_check(&t10, &t8, &HarmonicStructure::new(h).unwrap()),
            Err(Error::TraceNotUnitBoundary { .. })
        ));
        let (s10, ..) = trace([0.0, 0.0, 1.0], 10, h);
        let (s9, ..) = trace([0.0, 0.0, 1.0], 9, h);
        assert!(matches!(
            functional_equation_check(&s10, &s9, &HarmonicStructure::new(h).unwrap()),
            Err(Error::LevelMismatch { .. })
        ));
    }
}
