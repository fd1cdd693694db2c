//! Dense symmetric eigenvalue machinery: Householder reduction to
//! tridiagonal form followed by implicit-shift QL. Eigenvectors are not
//! accumulated here; the spectral module recovers them by shifted inverse
//! iteration on the sparse pencil, which is cheaper and keeps this part
//! simple.

/// Reduces the symmetric matrix `a` (full row-major storage, destroyed) to
/// tridiagonal form by Householder reflections. Returns `(d, e)`: diagonal
/// and subdiagonal (`e[k]` couples rows `k` and `k+1`; `e[n-1]` is unused).
pub fn tridiagonalize(n: usize, a: &mut [f64]) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(a.len(), n * n);
    let mut e = vec![0.0; n];
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];

    for k in 0..n.saturating_sub(1) {
        let l = n - k - 1; // length of the column below the diagonal
        if l == 1 {
            e[k] = a[(k + 1) * n + k];
            continue;
        }
        let x0 = a[(k + 1) * n + k];
        let mut sigma = 0.0;
        for i in k + 2..n {
            sigma += a[i * n + k] * a[i * n + k];
        }
        if sigma == 0.0 {
            e[k] = x0;
            continue;
        }
        let mu = (x0 * x0 + sigma).sqrt();
        // v = x - mu*e1, with v[0] computed stably for either sign of x0
        let v0 = if x0 <= 0.0 {
            x0 - mu
        } else {
            -sigma / (x0 + mu)
        };
        let beta = 2.0 * v0 * v0 / (sigma + v0 * v0);
        v[k + 1] = 1.0;
        for i in k + 2..n {
            v[i] = a[i * n + k] / v0;
        }
        e[k] = mu;

        // p = beta * B * v over the trailing block
        for i in k + 1..n {
            let row = &a[i * n..i * n + n];
            let mut acc = 0.0;
            for j in k + 1..n {
                acc += row[j] * v[j];
            }
            p[i] = beta * acc;
        }
        let mut vtp = 0.0;
        for i in k + 1..n {
            vtp += v[i] * p[i];
        }
        let kappa = 0.5 * beta * vtp;
        for i in k + 1..n {
            p[i] -= kappa * v[i]; // w = p - K v
        }
        // B <- B - v w^T - w v^T
        for i in k + 1..n {
            let vi = v[i];
            let wi = p[i];
            let row = &mut a[i * n..(i + 1) * n];
            for j in k + 1..n {
                row[j] -= vi * p[j] + wi * v[j];
            }
        }
    }

    let d: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    (d, e)
}

/// All eigenvalues of the symmetric tridiagonal matrix `(d, e)`, ascending.
/// Implicit-shift QL with the usual deflation test; the input follows the
/// convention of [`tridiagonalize`].
pub fn tridiagonal_eigenvalues(mut d: Vec<f64>, mut e: Vec<f64>) -> Vec<f64> {
    let n = d.len();
    if n == 0 {
        return d;
    }
    e[n - 1] = 0.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter <= 64, "QL failed to converge at index {l}");

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut pp = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= pp;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - pp;
                r = (d[i] - g) * s + 2.0 * c * b;
                pp = s * r;
                d[i + 1] = g + pp;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= pp;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    d.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
    d
}

/// Convenience: all eigenvalues of a dense symmetric matrix, ascending.
pub fn symmetric_eigenvalues(n: usize, mut a: Vec<f64>) -> Vec<f64> {
    let (d, e) = tridiagonalize(n, &mut a);
    tridiagonal_eigenvalues(d, e)
}
