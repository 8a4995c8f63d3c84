//! Dense symmetric matrices and the (modified) Laplacian constructions.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::{ensure_positive, Rational, Scalar};

/// Dense symmetric matrix stored row-major in full; `set` writes both
/// `(i, j)` and `(j, i)` so stored symmetry is exact.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix<T = f64> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> SymMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        SymMatrix { n, data: vec![T::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    /// Fills from `f(i, j)` for `i <= j` and mirrors.
    pub fn from_upper_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Builds from columns, storing `(b_ij + b_ji) / 2`. For exact input that
    /// is already symmetric this is the identity.
    pub fn from_columns_symmetrized(columns: &[Vec<T>]) -> Result<Self> {
        let n = columns.len();
        if let Some(bad) = columns.iter().find(|c| c.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.len() });
        }
        let two = T::from_usize(2);
        Ok(Self::from_upper_fn(n, |i, j| {
            if i == j {
                columns[i][i].clone()
            } else {
                (columns[j][i].clone() + columns[i][j].clone()) / two.clone()
            }
        }))
    }

    /// Builds from a full row-major square, requiring exact symmetry.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            data.extend(row.iter().cloned());
        }
        for i in 0..n {
            for j in i + 1..n {
                if data[i * n + j] != data[j * n + i] {
                    return Err(Error::InvalidParameter(format!("matrix not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(SymMatrix { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[j * self.n + i] = value.clone();
        self.data[i * self.n + j] = value;
    }

    /// Adds `delta` to entry `(i, j)` only, which may break symmetry.
    /// Intended for building perturbed test inputs.
    pub fn perturb_one(&mut self, i: usize, j: usize, delta: T) {
        let k = i * self.n + j;
        self.data[k] = self.data[k].clone() + delta;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.n.max(1)).take(self.n)
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        self.rows().map(|row| row.iter().zip(x).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())).collect()
    }

    /// Product with another matrix; the result is generally not symmetric and
    /// is returned as rows.
    pub fn mul_rows(&self, other: &SymMatrix<T>) -> Vec<Vec<T>> {
        let n = self.n;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(T::zero(), |acc, k| acc + self.get(i, k).clone() * other.get(k, j).clone()))
                    .collect()
            })
            .collect()
    }

    pub fn min_entry(&self) -> T {
        self.data.iter().cloned().reduce(T::min_of).unwrap_or_else(T::zero)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SymMatrix<U> {
        SymMatrix { n: self.n, data: self.data.iter().map(f).collect() }
    }

    pub fn to_f64(&self) -> SymMatrix<f64> {
        self.map(Scalar::to_f64)
    }

    /// Graph Laplacian `D - A`.
    pub fn laplacian(g: &Graph) -> Self {
        let mut m = Self::zeros(g.n());
        for v in 0..g.n() {
            m.set(v, v, T::from_usize(g.degree(v)));
        }
        for &(u, v) in g.edges() {
            m.set(u, v, -T::one());
        }
        m
    }

    /// `I + h L`.
    pub fn modified_laplacian(g: &Graph, h: &T) -> Result<Self> {
        ensure_positive(h)?;
        let mut m = Self::laplacian(g);
        for x in &mut m.data {
            *x = x.clone() * h.clone();
        }
        for i in 0..g.n() {
            let d = m.get(i, i).clone();
            m.set(i, i, d + T::one());
        }
        Ok(m)
    }

    /// Principal submatrix on the first `k` indices.
    pub fn leading(&self, k: usize) -> Self {
        Self::from_upper_fn(k, |i, j| self.get(i, j).clone())
    }

    pub fn max_abs_diff(&self, other: &SymMatrix<T>) -> T {
        self.data.iter().zip(&other.data).map(|(a, b)| (a.clone() - b.clone()).abs()).fold(T::zero(), T::max_of)
    }
}

impl SymMatrix<f64> {
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// `L_G` in floating point.
pub fn laplacian(g: &Graph) -> SymMatrix<f64> {
    SymMatrix::laplacian(g)
}

/// `I + h L_G` in floating point.
pub fn modified_laplacian(g: &Graph, h: f64) -> Result<SymMatrix<f64>> {
    SymMatrix::modified_laplacian(g, &h)
}

/// `I + h L_G` over exact fractions.
pub fn modified_laplacian_exact(g: &Graph, h: &Rational) -> Result<SymMatrix<Rational>> {
    SymMatrix::modified_laplacian(g, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn laplacian_examples() {
        let p2 = families::path(2).unwrap();
        let l = laplacian(&p2);
        assert_eq!(l.row(0), &[1.0, -1.0]);
        assert_eq!(l.row(1), &[-1.0, 1.0]);

        let p4 = families::path(4).unwrap();
        assert_eq!(laplacian(&p4).diagonal(), vec![1.0, 2.0, 2.0, 1.0]);

        let k4 = families::complete(4).unwrap();
        let l = laplacian(&k4);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(*l.get(i, j), if i == j { 3.0 } else { -1.0 });
            }
        }
    }

    #[test]
    fn modified_laplacian_of_p4_matches_display() {
        let p4 = families::path(4).unwrap();
        let m = modified_laplacian(&p4, 1.0).unwrap();
        let expected = [[2.0, -1.0, 0.0, 0.0], [-1.0, 3.0, -1.0, 0.0], [0.0, -1.0, 3.0, -1.0], [0.0, 0.0, -1.0, 2.0]];
        for (row, want) in m.rows().zip(expected) {
            assert_eq!(row, want);
        }
    }

    #[test]
    fn modified_laplacian_scaling_and_rejection() {
        let p2 = families::path(2).unwrap();
        let m = modified_laplacian(&p2, 0.5).unwrap();
        assert_eq!(m.row(0), &[1.5, -0.5]);
        assert!(modified_laplacian(&p2, 0.0).is_err());
        assert!(modified_laplacian(&p2, -1.0).is_err());
    }

    #[test]
    fn row_sums() {
        let g = families::random_connected(15, 30, 3).unwrap();
        let l = SymMatrix::<Rational>::laplacian(&g);
        for row in l.rows() {
            assert_eq!(row.iter().cloned().sum::<Rational>(), Rational::from_usize(0));
        }
        let m = modified_laplacian_exact(&g, &Rational::new(3.into(), 7.into())).unwrap();
        for row in m.rows() {
            assert_eq!(row.iter().cloned().sum::<Rational>(), Rational::from_usize(1));
        }
    }

    #[test]
    fn symmetric_storage() {
        let cols = vec![vec![1.0, 2.0], vec![2.0 + 1e-16, 3.0]];
        let m = SymMatrix::from_columns_symmetrized(&cols).unwrap();
        assert_eq!(m.get(0, 1), m.get(1, 0));
        assert!(SymMatrix::from_rows(vec![vec![1.0, 2.0], vec![3.0, 1.0]]).is_err());
    }
}
