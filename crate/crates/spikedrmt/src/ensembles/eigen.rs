//! Dense symmetric/Hermitian eigenvalue routines.
//!
//! Householder reduction to real symmetric tridiagonal form followed by the
//! implicit QL iteration with Wilkinson shifts. Hermitian input is reduced
//! with complex reflectors; the resulting complex subdiagonal is made real by
//! a diagonal unitary similarity, so only its moduli are kept.

use nalgebra::{Complex, DMatrix};

const MAX_QL_SWEEPS: usize = 60;

/// Eigenvalues of a real symmetric matrix, ascending.
pub fn symmetric_eigenvalues(a: DMatrix<f64>) -> Vec<f64> {
    let (mut d, mut e) = tridiagonalize_symmetric(a, None);
    tridiagonal_ql(&mut d, &mut e, None);
    d.sort_by(f64::total_cmp);
    d
}

/// Eigenvalues and orthonormal eigenvectors (as columns) of a real symmetric
/// matrix, eigenvalues ascending.
pub fn symmetric_eigen(a: DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = a.nrows();
    let mut z = DMatrix::identity(n, n);
    let (mut d, mut e) = tridiagonalize_symmetric(a, Some(&mut z));
    tridiagonal_ql(&mut d, &mut e, Some(&mut z));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let values = order.iter().map(|&i| d[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| z[(r, order[c])]);
    (values, vectors)
}

/// Eigenvalues of a complex Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(a: DMatrix<Complex<f64>>) -> Vec<f64> {
    let (mut d, mut e) = tridiagonalize_hermitian(a);
    tridiagonal_ql(&mut d, &mut e, None);
    d.sort_by(f64::total_cmp);
    d
}

/// Y†Y for a complex Y = A + iB given by its real and imaginary parts,
/// assembled from real products: (AᵀA + BᵀB) + i(AᵀB − BᵀA).
pub fn complex_gram(re: &DMatrix<f64>, im: &DMatrix<f64>) -> DMatrix<Complex<f64>> {
    let real = re.tr_mul(re) + im.tr_mul(im);
    let imag = re.tr_mul(im) - im.tr_mul(re);
    DMatrix::from_fn(real.nrows(), real.ncols(), |i, j| {
        Complex::new(real[(i, j)], if i == j { 0.0 } else { imag[(i, j)] })
    })
}

/// Householder reduction of a real symmetric matrix. Returns the diagonal
/// and the subdiagonal (`e[k]` couples `k` and `k+1`, last entry unused).
/// When `z` is given it is overwritten with the accumulated transformation.
fn tridiagonalize_symmetric(mut a: DMatrix<f64>, mut z: Option<&mut DMatrix<f64>>) -> (Vec<f64>, Vec<f64>) {
    let n = a.nrows();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    for k in 0..n.saturating_sub(2) {
        let len = n - k - 1;
        let scale: f64 = (k + 1..n).map(|i| a[(i, k)].abs()).sum();
        if scale == 0.0 {
            e[k] = 0.0;
            continue;
        }
        let mut norm2 = 0.0;
        for i in k + 1..n {
            v[i] = a[(i, k)] / scale;
            norm2 += v[i] * v[i];
        }
        let norm = norm2.sqrt();
        let alpha = if v[k + 1] > 0.0 { -norm } else { norm };
        e[k] = alpha * scale;
        // Reflector H = I − v vᵀ / h with v = x − alpha·e₁.
        let h = norm2 - v[k + 1] * alpha;
        v[k + 1] -= alpha;
        if h == 0.0 || len == 0 {
            continue;
        }
        // p = A v / h (read by columns, A is symmetric), then w = p − (vᵀp / 2h) v; A ← A − v wᵀ − w vᵀ.
        for i in k + 1..n {
            p[i] = (k + 1..n).map(|j| a[(j, i)] * v[j]).sum::<f64>() / h;
        }
        let kappa = (k + 1..n).map(|i| v[i] * p[i]).sum::<f64>() / (2.0 * h);
        for i in k + 1..n {
            p[i] -= kappa * v[i];
        }
        for j in k + 1..n {
            for i in k + 1..n {
                a[(i, j)] -= v[i] * p[j] + p[i] * v[j];
            }
        }
        if let Some(z) = z.as_deref_mut() {
            // Z ← Z H (columns k+1..n).
            for r in 0..n {
                let dot = (k + 1..n).map(|j| z[(r, j)] * v[j]).sum::<f64>() / h;
                for j in k + 1..n {
                    z[(r, j)] -= dot * v[j];
                }
            }
        }
    }
    for i in 0..n {
        d[i] = a[(i, i)];
    }
    if n >= 2 {
        e[n - 2] = a[(n - 1, n - 2)];
    }
    (d, e)
}

/// Householder reduction of a Hermitian matrix to a real tridiagonal one
/// with the same eigenvalues.
fn tridiagonalize_hermitian(mut a: DMatrix<Complex<f64>>) -> (Vec<f64>, Vec<f64>) {
    let n = a.nrows();
    let zero = Complex::new(0.0, 0.0);
    let mut e = vec![0.0; n];
    let mut v = vec![zero; n];
    let mut p = vec![zero; n];
    for k in 0..n.saturating_sub(1) {
        let scale: f64 = (k + 1..n).map(|i| a[(i, k)].norm()).sum();
        if scale == 0.0 {
            e[k] = 0.0;
            continue;
        }
        let mut norm2 = 0.0;
        for i in k + 1..n {
            v[i] = a[(i, k)] / scale;
            norm2 += v[i].norm_sqr();
        }
        let norm = norm2.sqrt();
        let lead = v[k + 1];
        let phase = if lead.norm() > 0.0 { lead / lead.norm() } else { Complex::new(1.0, 0.0) };
        let alpha = -phase * norm;
        e[k] = norm * scale;
        if k + 2 == n && lead.norm() == 0.0 {
            continue;
        }
        let h = norm2 + lead.norm() * norm;
        v[k + 1] -= alpha;
        // H = I − v v† / h; A ← H A H.
        for i in k + 1..n {
            p[i] = (k + 1..n).map(|j| a[(j, i)].conj() * v[j]).sum::<Complex<f64>>() / h;
        }
        let kappa = (k + 1..n).map(|i| v[i].conj() * p[i]).sum::<Complex<f64>>() / (2.0 * h);
        for i in k + 1..n {
            p[i] -= v[i] * kappa;
        }
        for j in k + 1..n {
            for i in k + 1..n {
                a[(i, j)] -= v[i] * p[j].conj() + p[i] * v[j].conj();
            }
        }
    }
    let d = (0..n).map(|i| a[(i, i)].re).collect();
    (d, e)
}

/// Implicit QL iteration on a symmetric tridiagonal matrix; on exit `d`
/// holds the eigenvalues (unordered). Rotations are accumulated into `z`.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64], mut z: Option<&mut DMatrix<f64>>) {
    let n = d.len();
    if n == 0 {
        return;
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_QL_SWEEPS {
                break;
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for k in 0..z.nrows() {
                        let f = z[(k, i + 1)];
                        z[(k, i + 1)] = s * z[(k, i)] + c * f;
                        z[(k, i)] = c * z[(k, i)] - s * f;
                    }
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}
