#![allow(dead_code)]

//! Shared helpers for the integration suites: a deterministic pseudo-random
//! stream, an independent Jacobi eigensolver used as an oracle, a small
//! Gaussian solver, and the reference eigenvalue table.

/// SplitMix64-based stream of doubles in [0, 1). Fixed seed = fixed values.
pub fn rng(seed: u64) -> impl FnMut() -> f64 {
    let mut state = seed;
    move || {
        state = state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^= z >> 31;
        (z >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// Cyclic Jacobi eigensolver on a dense symmetric matrix (row-major, full),
/// returning ascending eigenvalues. Brute-force oracle, independent of the
/// production Householder/QL/inverse-iteration path.
pub fn jacobi_eigenvalues(n: usize, mut a: Vec<f64>) -> Vec<f64> {
    let frob = |a: &[f64]| a.iter().map(|x| x * x).sum::<f64>().sqrt();
    for _sweep in 0..200 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += a[i * n + j] * a[i * n + j];
            }
        }
        if off.sqrt() <= 1e-14 * frob(&a).max(1e-300) {
            break;
        }
        for i in 0..n {
            for j in i + 1..n {
                let apq = a[i * n + j];
                if apq == 0.0 {
                    continue;
                }
                let tau = (a[j * n + j] - a[i * n + i]) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let aki = a[k * n + i];
                    let akj = a[k * n + j];
                    a[k * n + i] = c * aki - s * akj;
                    a[k * n + j] = s * aki + c * akj;
                }
                for k in 0..n {
                    let aik = a[i * n + k];
                    let ajk = a[j * n + k];
                    a[i * n + k] = c * aik - s * ajk;
                    a[j * n + k] = s * aik + c * ajk;
                }
            }
        }
    }
    let mut d: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    d.sort_by(|x, y| x.partial_cmp(y).unwrap());
    d
}

/// Solves a 3x3 system given as augmented rows, by Gaussian elimination with
/// partial pivoting.
pub fn solve3(mut m: [[f64; 4]; 3]) -> [f64; 3] {
    for col in 0..3 {
        let piv = (col..3)
            .max_by(|&a, &b| m[a][col].abs().partial_cmp(&m[b][col].abs()).unwrap())
            .unwrap();
        m.swap(col, piv);
        assert!(m[col][col] != 0.0, "singular system");
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            for k in col..4 {
                m[row][k] -= f * m[col][k];
            }
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let mut acc = m[row][3];
        for k in row + 1..3 {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    x
}

pub const PRIMARY: bool = false;
pub const DERIVED: bool = true;

/// Published approximations to the first 20 Dirichlet eigenvalues at
/// level 10 for h = 3/2, with their primary/derived labels.
pub const TABLE1_H_3_2: [(f64, bool); 20] = [
    (2.12748, PRIMARY),
    (5.80965, DERIVED),
    (8.3776, PRIMARY),
    (13.7502, PRIMARY),
    (22.8762, DERIVED),
    (33.3334, PRIMARY),
    (34.0196, PRIMARY),
    (37.5447, DERIVED),
    (53.6119, PRIMARY),
    (59.5265, PRIMARY),
    (91.007, DERIVED),
    (92.8821, DERIVED),
    (98.8091, PRIMARY),
    (109.503, PRIMARY),
    (133.249, PRIMARY),
    (136.474, PRIMARY),
    (146.338, DERIVED),
    (162.469, DERIVED),
    (195.591, PRIMARY),
    (213.997, PRIMARY),
];

/// Same for h = sqrt(3).
pub const TABLE1_H_SQRT3: [(f64, bool); 20] = [
    (10.012, PRIMARY),
    (31.037, PRIMARY),
    (38.7455, DERIVED),
    (83.3496, PRIMARY),
    (106.366, PRIMARY),
    (120.11, DERIVED),
    (193.982, PRIMARY),
    (226.027, PRIMARY),
    (244.389, PRIMARY),
    (322.541, DERIVED),
    (401.184, PRIMARY),
    (411.618, DERIVED),
    (503.566, PRIMARY),
    (580.894, PRIMARY),
    (613.579, PRIMARY),
    (654.576, PRIMARY),
    (750.644, DERIVED),
    (783.032, PRIMARY),
    (874.566, DERIVED),
    (945.709, PRIMARY),
];

/// Same for h = 3.
pub const TABLE1_H_3: [(f64, bool); 20] = [
    (38.7802, PRIMARY),
    (139.978, PRIMARY),
    (255.362, PRIMARY),
    (336.428, PRIMARY),
    (435.129, PRIMARY),
    (566.447, PRIMARY),
    (741.34, PRIMARY),
    (972.052, PRIMARY),
    (1067.3, DERIVED),
    (1266.44, PRIMARY),
    (1623.74, PRIMARY),
    (1814.55, PRIMARY),
    (2248.34, PRIMARY),
    (2574.77, PRIMARY),
    (2909.76, PRIMARY),
    (3013.28, PRIMARY),
    (3299.2, PRIMARY),
    (3812.6, PRIMARY),
    (4001.01, DERIVED),
    (4147.5, PRIMARY),
];
