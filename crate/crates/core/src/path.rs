//! Fibonacci closed forms for the path `P_n` at `h = 1`.
//!
//! With `f_1 = f_2 = 1`, the modified Laplacian of `P_n` factors as `L_1 U`
//! with unit lower bidiagonal `L_1` (subdiagonal `x_i`) and upper bidiagonal
//! `U` (diagonal `y_i`, superdiagonal `-1`):
//!
//! - `x_1 = -1/2`, `y_1 = 2`
//! - `x_i = -f_{2i-1}/f_{2i+1}`, `y_i = f_{2i+1}/f_{2i-1}` for `2 <= i <= n-1`
//! - `y_n = f_{2n}/f_{2n-1}`
//!
//! Indices in this module's public functions are 1-based to match those
//! formulas.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::dsmatrix::{DsMatrix, Engine};
use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::scalar::{Rational, Scalar};

/// Memoized Fibonacci numbers; fill sequentially, then share for reads.
#[derive(Debug, Clone)]
pub struct FibCache {
    /// `values[k] = f_k`, with `values[0] = 0`.
    values: Vec<BigUint>,
}

impl Default for FibCache {
    fn default() -> Self {
        FibCache { values: vec![BigUint::zero(), BigUint::one()] }
    }
}

impl FibCache {
    /// Cache holding `f_1 ..= f_upto`.
    pub fn with_upto(upto: usize) -> Self {
        let mut c = Self::default();
        c.fill(upto);
        c
    }

    pub fn fill(&mut self, upto: usize) {
        while self.values.len() <= upto {
            let k = self.values.len();
            let next = &self.values[k - 1] + &self.values[k - 2];
            self.values.push(next);
        }
    }

    /// `f_k`; the cache must already hold it.
    pub fn get(&self, k: usize) -> &BigUint {
        &self.values[k]
    }

    pub fn len(&self) -> usize {
        self.values.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn ratio(&self, num: usize, den: usize) -> Rational {
        Rational::new(BigInt::from(self.get(num).clone()), BigInt::from(self.get(den).clone()))
    }
}

/// The `k`-th Fibonacci number, `f_1 = f_2 = 1`.
pub fn fib(k: usize) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::InvalidParameter("Fibonacci numbers are indexed from 1".into()));
    }
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 1..k {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    Ok(b)
}

#[derive(Debug, Clone, PartialEq)]
pub struct L1UFactors {
    pub n: usize,
    /// Subdiagonal of `L_1`, `x_1 ..= x_{n-1}` (stored 0-based).
    pub x: Vec<Rational>,
    /// Diagonal of `U`, `y_1 ..= y_n` (stored 0-based).
    pub y: Vec<Rational>,
}

impl L1UFactors {
    /// `L_1` as dense rows.
    pub fn l1(&self) -> Vec<Vec<Rational>> {
        let n = self.n;
        let mut rows = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            rows[i][i] = Rational::one();
            if i > 0 {
                rows[i][i - 1] = self.x[i - 1].clone();
            }
        }
        rows
    }

    /// `U` as dense rows.
    pub fn u(&self) -> Vec<Vec<Rational>> {
        let n = self.n;
        let mut rows = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            rows[i][i] = self.y[i].clone();
            if i + 1 < n {
                rows[i][i + 1] = -Rational::one();
            }
        }
        rows
    }

    /// `L_1 U`, exploiting the bidiagonal structure.
    pub fn product(&self) -> Vec<Vec<Rational>> {
        let n = self.n;
        let mut rows = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            // Row i of L_1 has 1 at i and x_{i-1} at i-1.
            rows[i][i] = self.y[i].clone();
            if i + 1 < n {
                rows[i][i + 1] = -Rational::one();
            }
            if i > 0 {
                let x = &self.x[i - 1];
                rows[i][i - 1] = x * &self.y[i - 1];
                rows[i][i] = &rows[i][i] - x;
            }
        }
        rows
    }
}

/// The `L_1 U` factors of the modified Laplacian of `P_n`, `n >= 2`.
pub fn l1u_factors(n: usize) -> Result<L1UFactors> {
    if n < 2 {
        return Err(Error::InvalidParameter("L1U factorization needs n >= 2".into()));
    }
    let fc = FibCache::with_upto(2 * n);
    let mut x = Vec::with_capacity(n - 1);
    let mut y = Vec::with_capacity(n);
    for i in 1..n {
        x.push(-fc.ratio(2 * i - 1, 2 * i + 1));
        y.push(fc.ratio(2 * i + 1, 2 * i - 1));
    }
    y.push(fc.ratio(2 * n, 2 * n - 1));
    Ok(L1UFactors { n, x, y })
}

fn check_index(n: usize, i: usize, j: usize) -> Result<()> {
    if i == 0 || j == 0 || i > n || j > n {
        Err(Error::IndexOutOfRange { i, j, n })
    } else {
        Ok(())
    }
}

/// `U^{-1}[i][j]` (1-based): `f_{2i-1}/f_{2j+1}` for `i <= j < n`,
/// `f_{2i-1}/f_{2n}` for `j = n`, zero below the diagonal.
pub fn u_inverse_entry(fc: &FibCache, n: usize, i: usize, j: usize) -> Result<Rational> {
    check_index(n, i, j)?;
    Ok(if j < i {
        Rational::zero()
    } else if j < n {
        fc.ratio(2 * i - 1, 2 * j + 1)
    } else {
        fc.ratio(2 * i - 1, 2 * n)
    })
}

/// `L_1^{-1}[i][j]` (1-based): `f_{2j-1}/f_{2i-1}` for `j <= i`, zero above.
pub fn l1_inverse_entry(fc: &FibCache, n: usize, i: usize, j: usize) -> Result<Rational> {
    check_index(n, i, j)?;
    Ok(if j > i { Rational::zero() } else { fc.ratio(2 * j - 1, 2 * i - 1) })
}

/// Dense `U^{-1}` (0-based rows).
pub fn u_inverse(n: usize) -> Result<Vec<Vec<Rational>>> {
    let fc = FibCache::with_upto(2 * n + 1);
    (1..=n).map(|i| (1..=n).map(|j| u_inverse_entry(&fc, n, i, j)).collect()).collect()
}

/// Dense `L_1^{-1}` (0-based rows).
pub fn l1_inverse(n: usize) -> Result<Vec<Vec<Rational>>> {
    let fc = FibCache::with_upto(2 * n + 1);
    (1..=n).map(|i| (1..=n).map(|j| l1_inverse_entry(&fc, n, i, j)).collect()).collect()
}

/// `det M_k`, where `M_k` is the modified Laplacian of `P_k` with its (1,1)
/// entry raised to 3: `2, 5, 13, ...` with `det M_k = 3 det M_{k-1} - det M_{k-2}`.
pub fn det_m(k: usize) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::InvalidParameter("det M_k is defined for k >= 1".into()));
    }
    let (mut prev, mut cur) = (BigInt::from(1), BigInt::from(2));
    for _ in 1..k {
        let next = BigInt::from(3) * &cur - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// Last column of `B_{P_n}`: component `k` is `f_{2k-1}/f_{2n}`.
pub fn path_last_column(n: usize) -> Result<Vec<Rational>> {
    if n == 0 {
        return Err(Error::InvalidParameter("path needs n >= 1".into()));
    }
    let fc = FibCache::with_upto(2 * n);
    Ok((1..=n).map(|k| fc.ratio(2 * k - 1, 2 * n)).collect())
}

/// Smallest entry of `B_{P_n}`, `1/f_{2n}`.
pub fn omega_path(n: usize) -> Result<Rational> {
    if n < 2 {
        return Err(Error::InvalidParameter("omega_path needs n >= 2".into()));
    }
    Ok(Rational::new(BigInt::one(), BigInt::from(fib(2 * n)?)))
}

/// `sqrt(5) / (((3 + sqrt 5)/2)^n - ((3 - sqrt 5)/2)^n)`, the radical form
/// of `1/f_{2n}`.
pub fn omega_path_radical(n: usize) -> f64 {
    let s5 = 5f64.sqrt();
    let n = n as i32;
    s5 / (((3.0 + s5) / 2.0).powi(n) - ((3.0 - s5) / 2.0).powi(n))
}

/// Full `B_{P_n} = U^{-1} L_1^{-1}` from the closed-form factor inverses,
/// for a path labeled `0, 1, ..., n-1` in order.
pub fn compute_b_path(n: usize) -> Result<DsMatrix<Rational>> {
    if n == 0 {
        return Err(Error::InvalidParameter("path needs n >= 1".into()));
    }
    if n == 1 {
        return Ok(DsMatrix { h: Rational::one(), engine: Engine::PathClosedForm, matrix: SymMatrix::identity(1) });
    }
    let fc = FibCache::with_upto(2 * n + 1);
    let mut columns = vec![vec![Rational::zero(); n]; n];
    for i in 1..=n {
        for j in i..=n {
            // U^{-1} is upper and L_1^{-1} lower triangular: k runs from j to n.
            let mut s = Rational::zero();
            for k in j..=n {
                s += u_inverse_entry(&fc, n, i, k)? * l1_inverse_entry(&fc, n, k, j)?;
            }
            columns[j - 1][i - 1] = s.clone();
            columns[i - 1][j - 1] = s;
        }
    }
    Ok(DsMatrix {
        h: Rational::one(),
        engine: Engine::PathClosedForm,
        matrix: SymMatrix::from_columns_symmetrized(&columns)?,
    })
}

/// Multiplies dense rational matrices given as rows.
pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    a[i].iter()
                        .zip(b)
                        .filter(|(x, _)| !x.is_zero())
                        .fold(Rational::zero(), |acc, (x, row)| acc + x * &row[j])
                })
                .collect()
        })
        .collect()
}

pub fn is_identity(m: &[Vec<Rational>]) -> bool {
    m.iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() }))
}

/// Converts rows to [`Scalar`] values of another type, e.g. for float checks.
pub fn rows_to<T: Scalar>(rows: &[Vec<Rational>]) -> Vec<Vec<T>> {
    rows.iter().map(|r| r.iter().map(T::from_rational).collect()).collect()
}
