//! The one-parameter family of regular harmonic structures on the Hata set,
//! and the two dimension equations attached to it.

use crate::error::{Error, Result};
use crate::ifs::IfsParams;

/// Boundary Laplacian `D` (fixed shape, parameter `h > 1`) together with the
/// resistance weights `r1 = 1/h`, `r2 = 1 - 1/h^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicStructure {
    h: f64,
    r1: f64,
    r2: f64,
}

impl HarmonicStructure {
    pub fn new(h: f64) -> Result<Self> {
        if !h.is_finite() || h <= 1.0 {
            return Err(Error::StructureParamOutOfRange { h });
        }
        Ok(Self {
            h,
            r1: 1.0 / h,
            r2: 1.0 - 1.0 / (h * h),
        })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn r1(&self) -> f64 {
        self.r1
    }

    pub fn r2(&self) -> f64 {
        self.r2
    }

    /// The matrix `D` on the basis `{chi_alpha, chi_0, chi_1}`:
    /// conductance `h` between corners 0 and 1, conductance `1` between
    /// corners 1 and 2, none between corners 0 and 2.
    pub fn boundary_laplacian(&self) -> [[f64; 3]; 3] {
        let h = self.h;
        [[-h, h, 0.0], [h, -(h + 1.0), 1.0], [0.0, 1.0, -1.0]]
    }

    /// `r_w = r_{w_1} * ... * r_{w_m}`.
    pub fn resistance(&self, word: &[u8]) -> f64 {
        word.iter()
            .map(|&d| if d == 1 { self.r1 } else { self.r2 })
            .product()
    }

    /// Interpolation weight `1/h^2` carried by the corner-2 value when a
    /// cell's midpoint is filled in by harmonic extension; also the constant
    /// proportion seen at every interval middle point of a harmonic trace.
    pub fn theta(&self) -> f64 {
        1.0 / (self.h * self.h)
    }

    /// Root `d` of `r1^d + r2^d = 1`: Hausdorff dimension in the effective
    /// resistance metric.
    pub fn resistance_dimension(&self) -> f64 {
        solve_dimension(self.r1, self.r2)
    }
}

/// Root of `|alpha|^D + (1 - |alpha|^2)^D = 1`: Hausdorff dimension in the
/// Euclidean metric (the two maps contract by `|alpha|` and `1 - |alpha|^2`).
/// Coincides with the resistance dimension exactly when `h = 1/|alpha|`.
pub fn euclidean_dimension(p: &IfsParams) -> f64 {
    solve_dimension(p.alpha().norm(), 1.0 - p.alpha_sq())
}

/// Unique root of `a^d + b^d = 1` for `a, b` in `(0, 1)`. The left side is
/// strictly decreasing in `d` from 2 to 0. Bisection down to a bracket of
/// width 1e-14, then one Newton polish; residual below 1e-13.
fn solve_dimension(a: f64, b: f64) -> f64 {
    debug_assert!(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0);
    let f = |d: f64| a.powf(d) + b.powf(d) - 1.0;
    let mut lo = 0.0;
    let mut hi = 1.0;
    while f(hi) > 0.0 {
        hi *= 2.0;
        assert!(hi < 1e6, "dimension bracket failed for ({a}, {b})");
    }
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut d = 0.5 * (lo + hi);
    let fd = f(d);
    let dfd = a.ln() * a.powf(d) + b.ln() * b.powf(d);
    if dfd != 0.0 {
        d -= fd / dfd;
    }
    d
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn rejects_h_at_most_one() {
        assert!(HarmonicStructure::new(1.0).is_err());
        assert!(HarmonicStructure::new(0.5).is_err());
        assert!(HarmonicStructure::new(f64::NAN).is_err());
        assert!(HarmonicStructure::new(f64::INFINITY).is_err());
    }

    #[test]
    fn boundary_laplacian_shape() {
        let s = HarmonicStructure::new(2.0).unwrap();
        let d = s.boundary_laplacian();
        for i in 0..3 {
            // symmetric, zero row sums
            assert_eq!(d[i].iter().sum::<f64>(), 0.0);
            for j in 0..3 {
                assert_eq!(d[i][j], d[j][i]);
            }
        }
        assert_eq!(d[0][2], 0.0);
        assert_eq!(d[0][1], 2.0);
        assert_eq!(d[1][2], 1.0);
    }

    #[test]
    fn resistance_dimension_residual() {
        for h in [1.01, 1.5, 3f64.sqrt(), 2.0, 3.0, 7.5, 10.0] {
            let s = HarmonicStructure::new(h).unwrap();
            let d = s.resistance_dimension();
            let res = (s.r1().powf(d) + s.r2().powf(d) - 1.0).abs();
            assert!(res < 1e-13, "h = {h}: residual {res:e}");
            assert!(d > 1.0 && d < 2.0);
        }
    }

    #[test]
    fn dimensions_coincide_at_h_equal_inverse_alpha_norm() {
        let p = IfsParams::default();
        let h = 1.0 / p.alpha().norm(); // sqrt(3)
        let s = HarmonicStructure::new(h).unwrap();
        assert!((s.resistance_dimension() - euclidean_dimension(&p)).abs() < 1e-12);
        // |alpha|^2 = 1 - |alpha|^2 = 1/2: both slots degenerate, still fine
        let p2 = IfsParams::new(Complex64::new(0.5, 0.5)).unwrap();
        let d2 = euclidean_dimension(&p2);
        let r = (0.5f64.sqrt().powf(d2) + 0.5f64.powf(d2) - 1.0).abs();
        assert!(r < 1e-13);
    }

    #[test]
    fn regularity() {
        for h in [1.0001, 1.5, 2.0, 100.0] {
            let s = HarmonicStructure::new(h).unwrap();
            assert!(s.r1() > 0.0 && s.r1() < 1.0);
            assert!(s.r2() > 0.0 && s.r2() < 1.0);
        }
    }
}
