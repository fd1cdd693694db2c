//! The two-map iterated function system whose attractor is the Hata tree set.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Contraction parameter of the IFS
/// `F1(z) = alpha * conj(z)`, `F2(z) = (1 - |alpha|^2) * conj(z) + |alpha|^2`.
///
/// The attractor is a dendrite with boundary `{alpha, 0, 1}`; the two
/// first-level copies meet only at the critical point `|alpha|^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IfsParams {
    alpha: Complex64,
    alpha_sq: f64,
}

impl IfsParams {
    /// Requires `0 < |alpha| < 1` and `0 < |1 - alpha| < 1`.
    pub fn new(alpha: Complex64) -> Result<Self> {
        let n = alpha.norm();
        let m = (Complex64::new(1.0, 0.0) - alpha).norm();
        let admissible = n.is_finite() && n > 0.0 && n < 1.0 && m > 0.0 && m < 1.0;
        if !admissible {
            return Err(Error::InadmissibleAlpha { alpha });
        }
        Ok(Self {
            alpha,
            alpha_sq: alpha.norm_sqr(),
        })
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    /// `|alpha|^2`, the coordinate of the critical point where the two
    /// first-level cells meet. Real by construction.
    pub fn alpha_sq(&self) -> f64 {
        self.alpha_sq
    }

    pub fn map_one(&self, z: Complex64) -> Complex64 {
        self.alpha * z.conj()
    }

    pub fn map_two(&self, z: Complex64) -> Complex64 {
        (1.0 - self.alpha_sq) * z.conj() + self.alpha_sq
    }

    /// Applies `F1` or `F2` according to `digit` (1 or 2).
    pub fn apply(&self, digit: u8, z: Complex64) -> Complex64 {
        debug_assert!(digit == 1 || digit == 2);
        if digit == 1 {
            self.map_one(z)
        } else {
            self.map_two(z)
        }
    }
}

impl Default for IfsParams {
    /// `alpha = 1/2 + sqrt(3) i / 6`, for which `|alpha|^2 = 1/3`.
    fn default() -> Self {
        Self::new(Complex64::new(0.5, 3f64.sqrt() / 6.0)).expect("default alpha is admissible")
    }
}
