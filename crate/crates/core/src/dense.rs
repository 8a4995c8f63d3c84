//! Dense engine: Cholesky solves of `I + h L`, an exact Gauss-Jordan inverse
//! for small graphs, and a cyclic Jacobi eigensolver for spectral checks.

use serde::Serialize;

use crate::dsmatrix::{DsMatrix, Engine};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::{laplacian, modified_laplacian, SymMatrix};
use crate::scalar::{ensure_positive, Rational, Scalar};

/// Lower-triangular Cholesky factor `C` with `C C^t = M`, stored row-major.
#[derive(Debug, Clone)]
pub struct Cholesky {
    n: usize,
    lower: Vec<f64>,
}

impl Cholesky {
    pub fn factor(m: &SymMatrix<f64>) -> Result<Self> {
        let n = m.n();
        let mut lower = vec![0.0; n * n];
        for j in 0..n {
            let mut diag = *m.get(j, j);
            for k in 0..j {
                diag -= lower[j * n + k] * lower[j * n + k];
            }
            if diag.is_nan() || diag <= 0.0 || diag.is_infinite() {
                return Err(Error::NotPositiveDefinite { row: j, pivot: diag });
            }
            let d = diag.sqrt();
            lower[j * n + j] = d;
            for i in j + 1..n {
                let mut s = *m.get(i, j);
                for k in 0..j {
                    s -= lower[i * n + k] * lower[j * n + k];
                }
                lower[i * n + j] = s / d;
            }
        }
        Ok(Cholesky { n, lower })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.lower[i * self.n + j]
    }

    /// Solves `M x = b` by forward then backward substitution.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.n;
        if b.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: b.len() });
        }
        let mut y = b.to_vec();
        for i in 0..n {
            let mut s = y[i];
            for k in 0..i {
                s -= self.lower[i * n + k] * y[k];
            }
            y[i] = s / self.lower[i * n + i];
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in i + 1..n {
                s -= self.lower[k * n + i] * y[k];
            }
            y[i] = s / self.lower[i * n + i];
        }
        Ok(y)
    }

    /// `C C^t`, for residual checks.
    pub fn reconstruct(&self) -> SymMatrix<f64> {
        SymMatrix::from_upper_fn(self.n, |i, j| (0..=i.min(j)).map(|k| self.entry(i, k) * self.entry(j, k)).sum())
    }
}

pub fn cholesky_factor(m: &SymMatrix<f64>) -> Result<Cholesky> {
    Cholesky::factor(m)
}

/// `(I + h L_G)^{-1}` by one Cholesky factorization and `n` column solves,
/// then symmetrized.
pub fn compute_b_dense(g: &Graph, h: f64) -> Result<DsMatrix<f64>> {
    let chol = Cholesky::factor(&modified_laplacian(g, h)?)?;
    let n = g.n();
    let mut columns = Vec::with_capacity(n);
    let mut e = vec![0.0; n];
    for k in 0..n {
        e[k] = 1.0;
        columns.push(chol.solve(&e)?);
        e[k] = 0.0;
    }
    Ok(DsMatrix { h, engine: Engine::Dense, matrix: SymMatrix::from_columns_symmetrized(&columns)? })
}

/// Inverse by Gauss-Jordan elimination with first-nonzero pivoting; exact
/// over [`Rational`].
pub fn gauss_jordan_inverse<T: Scalar>(m: &SymMatrix<T>) -> Result<SymMatrix<T>> {
    let n = m.n();
    let mut a: Vec<Vec<T>> = m.rows().map(<[T]>::to_vec).collect();
    let mut inv: Vec<Vec<T>> = SymMatrix::<T>::identity(n).rows().map(<[T]>::to_vec).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular(col))?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
            *x = x.clone() / p.clone();
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                let da = f.clone() * a[col][c].clone();
                a[r][c] = a[r][c].clone() - da;
                let di = f.clone() * inv[col][c].clone();
                inv[r][c] = inv[r][c].clone() - di;
            }
        }
    }
    // Inverse of a symmetric matrix is symmetric; symmetrize against rounding.
    SymMatrix::from_columns_symmetrized(&inv)
}

/// Exact `(I + h L_G)^{-1}` for small graphs of any shape.
pub fn compute_b_exact_dense(g: &Graph, h: &Rational) -> Result<DsMatrix<Rational>> {
    let lt = SymMatrix::<Rational>::modified_laplacian(g, h)?;
    Ok(DsMatrix { h: h.clone(), engine: Engine::Dense, matrix: gauss_jordan_inverse(&lt)? })
}

pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
/// descending. Stops once the off-diagonal Frobenius norm is at most
/// `1e-12 * ||M||_F`.
pub fn jacobi_eigenvalues(m: &SymMatrix<f64>) -> Result<Vec<f64>> {
    let n = m.n();
    let mut a: Vec<f64> = m.rows().flatten().copied().collect();
    let norm = m.frobenius_norm();
    let threshold = 1e-12 * norm;
    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j] * a[i * n + j];
                }
            }
        }
        s.sqrt()
    };
    let mut sweeps = 0;
    while off(&a) > threshold {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::EigenNoConvergence(JACOBI_MAX_SWEEPS));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eigs: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eigs.sort_by(|x, y| y.total_cmp(x));
    Ok(eigs)
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub h: f64,
    /// Laplacian eigenvalues, descending; the last is 0.
    pub laplacian_eigs: Vec<f64>,
    /// Second smallest Laplacian eigenvalue `a(G)`.
    pub algebraic_connectivity: f64,
    /// Eigenvalues of `B`, sorted ascending so that `b_eigs[i]` pairs with
    /// `laplacian_eigs[i]`.
    pub b_eigs: Vec<f64>,
    /// `1 / (1 + h lambda_i)` for each Laplacian eigenvalue.
    pub predicted_b_eigs: Vec<f64>,
    pub max_pair_error: f64,
}

pub fn spectrum_report(g: &Graph, h: f64) -> Result<SpectrumReport> {
    ensure_positive(&h)?;
    let laplacian_eigs = jacobi_eigenvalues(&laplacian(g))?;
    let b = compute_b_dense(g, h)?;
    let mut b_eigs = jacobi_eigenvalues(&b.matrix)?;
    b_eigs.reverse();
    let predicted_b_eigs: Vec<f64> = laplacian_eigs.iter().map(|l| 1.0 / (1.0 + h * l)).collect();
    let max_pair_error = b_eigs.iter().zip(&predicted_b_eigs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let n = laplacian_eigs.len();
    let algebraic_connectivity = if n >= 2 { laplacian_eigs[n - 2] } else { 0.0 };
    Ok(SpectrumReport { h, laplacian_eigs, algebraic_connectivity, b_eigs, predicted_b_eigs, max_pair_error })
}

/// `a(G)`: second smallest Laplacian eigenvalue (0 for a single vertex).
pub fn algebraic_connectivity(g: &Graph) -> Result<f64> {
    let eigs = jacobi_eigenvalues(&laplacian(g))?;
    Ok(if eigs.len() >= 2 { eigs[eigs.len() - 2] } else { 0.0 })
}
