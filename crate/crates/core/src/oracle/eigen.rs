//! Symmetric tridiagonal eigensolver (implicit QL with Wilkinson shifts) and
//! Sturm-sequence eigenvalue counting.

use crate::error::Error;
use crate::Result;

/// A real symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTriMatrix {
    /// Main diagonal, length n.
    pub diag: Vec<f64>,
    /// Sub/superdiagonal, length n-1.
    pub offdiag: Vec<f64>,
}

impl SymTriMatrix {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::domain("SymTriMatrix: empty diagonal"));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::domain(format!(
                "SymTriMatrix: offdiag length {} must be diag length {} minus one",
                offdiag.len(),
                diag.len()
            )));
        }
        Ok(SymTriMatrix { diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Infinity norm, used for residual scales.
    pub fn norm_inf(&self) -> f64 {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let left = if i > 0 { self.offdiag[i - 1].abs() } else { 0.0 };
                let right = if i + 1 < n { self.offdiag[i].abs() } else { 0.0 };
                self.diag[i].abs() + left + right
            })
            .fold(0.0, f64::max)
    }

    /// y = T x
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut y = self.diag[i] * x[i];
                if i > 0 {
                    y += self.offdiag[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    y += self.offdiag[i] * x[i + 1];
                }
                y
            })
            .collect()
    }
}

/// Result of a full symmetric tridiagonal eigendecomposition.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Eigenvalues, ascending.
    pub values: Vec<f64>,
    /// `vectors[k]` is the orthonormal eigenvector paired with `values[k]`.
    pub vectors: Vec<Vec<f64>>,
}

/// Number of eigenvalues strictly below `x`, by the Sturm sequence of the
/// LDLᵀ factorization (count of negative pivots).
pub fn sturm_count(t: &SymTriMatrix, x: f64) -> usize {
    let n = t.dim();
    let guard = 1e-300;
    let mut count = 0;
    let mut q = t.diag[0] - x;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..n {
        let q_safe = if q.abs() < guard {
            if q >= 0.0 {
                guard
            } else {
                -guard
            }
        } else {
            q
        };
        q = (t.diag[i] - x) - t.offdiag[i - 1] * t.offdiag[i - 1] / q_safe;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Implicit-QL core. `rotate(i, c, s)` is invoked for every plane rotation in
/// the (i, i+1) plane so callers can accumulate either full eigenvectors or
/// just their first components.
fn tql2_core<F: FnMut(usize, f64, f64)>(
    d: &mut [f64],
    off: &[f64],
    mut rotate: F,
) -> Result<()> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(off);

    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > 60 {
                    return Err(Error::domain(
                        "symtri_eigen: QL iteration failed to converge".to_string(),
                    ));
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for item in d.iter_mut().take(n).skip(l + 2) {
                    *item -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let gg = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * gg;
                    d[i + 1] = h + s * (c * gg + s * d[i]);
                    rotate(i, c, s);
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

/// Eigenvalues (ascending) and orthonormal eigenvectors of a symmetric
/// tridiagonal matrix.
pub fn symtri_eigen(t: &SymTriMatrix) -> Result<EigenDecomposition> {
    let n = t.dim();
    let mut d = t.diag.clone();
    // columns[i] = i-th eigenvector accumulator, starting from the identity
    let mut columns: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut v = vec![0.0; n];
            v[i] = 1.0;
            v
        })
        .collect();
    tql2_core(&mut d, &t.offdiag, |i, c, s| {
        for k in 0..n {
            let h = columns[i + 1][k];
            columns[i + 1][k] = s * columns[i][k] + c * h;
            columns[i][k] = c * columns[i][k] - s * h;
        }
    })?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    Ok(EigenDecomposition {
        values: order.iter().map(|&i| d[i]).collect(),
        vectors: order.iter().map(|&i| columns[i].clone()).collect(),
    })
}

/// Eigenvalues (ascending) together with the first component of each
/// orthonormal eigenvector. This is all Golub–Welsch needs, at O(n²) instead
/// of O(n³).
pub(crate) fn symtri_eigen_first_components(t: &SymTriMatrix) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = t.dim();
    let mut d = t.diag.clone();
    let mut z = vec![0.0; n];
    z[0] = 1.0;
    tql2_core(&mut d, &t.offdiag, |i, c, s| {
        let h = z[i + 1];
        z[i + 1] = s * z[i] + c * h;
        z[i] = c * z[i] - s * h;
    })?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    Ok((
        order.iter().map(|&i| d[i]).collect(),
        order.iter().map(|&i| z[i]).collect(),
    ))
}
