//! Forest distance `rho_ij = b_ii + b_jj - 2 b_ij` and remoteness.

use serde::Serialize;

use crate::analysis::report::CheckReport;
use crate::matrix::SymMatrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct CentralityReport<T> {
    pub rho: SymMatrix<T>,
    /// `sum_j rho_ij`.
    pub remoteness: Vec<T>,
    /// Vertices of smallest remoteness.
    pub least_remote: Vec<usize>,
    /// Vertices of smallest diagonal entry.
    pub min_diagonal: Vec<usize>,
}

/// Indices attaining the minimum, within `tol`.
fn argmin_set<T: Scalar>(values: &[T], tol: &T) -> Vec<usize> {
    let Some(min) = values.iter().cloned().reduce(T::min_of) else {
        return Vec::new();
    };
    (0..values.len()).filter(|&i| values[i].clone() - min.clone() <= *tol).collect()
}

pub fn centrality_report<T: Scalar>(b: &SymMatrix<T>) -> CentralityReport<T> {
    let n = b.n();
    let two = T::from_usize(2);
    let rho = SymMatrix::from_upper_fn(n, |i, j| {
        b.get(i, i).clone() + b.get(j, j).clone() - two.clone() * b.get(i, j).clone()
    });
    let remoteness: Vec<T> = (0..n).map(|i| rho.row(i).iter().cloned().fold(T::zero(), |a, x| a + x)).collect();
    let tol = T::default_tol();
    let least_remote = argmin_set(&remoteness, &tol);
    let min_diagonal = argmin_set(&b.diagonal(), &tol);
    CentralityReport { rho, remoteness, least_remote, min_diagonal }
}

/// Serializable float view of a [`CentralityReport`].
#[derive(Debug, Clone, Serialize)]
pub struct CentralitySummary {
    pub remoteness: Vec<f64>,
    pub least_remote: Vec<usize>,
    pub min_diagonal: Vec<usize>,
    pub rho: Vec<Vec<f64>>,
}

impl<T: Scalar> CentralityReport<T> {
    pub fn summary(&self) -> CentralitySummary {
        CentralitySummary {
            remoteness: self.remoteness.iter().map(Scalar::to_f64).collect(),
            least_remote: self.least_remote.clone(),
            min_diagonal: self.min_diagonal.clone(),
            rho: self.rho.rows().map(|r| r.iter().map(Scalar::to_f64).collect()).collect(),
        }
    }
}

/// Least remote vertices are exactly those of smallest `b_ii`, since
/// `sum_j rho_ij = n b_ii + tr B - 2`.
pub fn check_least_remote<T: Scalar>(rep: &CentralityReport<T>) -> CheckReport {
    let mut r = CheckReport::new("least-remote");
    r.checked += 1;
    if rep.least_remote != rep.min_diagonal {
        r.violation(
            rep.least_remote.clone(),
            format!("least remote {:?} but smallest diagonal {:?}", rep.least_remote, rep.min_diagonal),
        );
    }
    r.finish()
}

/// `rho` is a metric: zero diagonal, positive off-diagonal, triangle
/// inequality.
pub fn check_forest_metric<T: Scalar>(rep: &CentralityReport<T>, tol: &T) -> CheckReport {
    let mut r = CheckReport::new("forest-metric");
    let rho = &rep.rho;
    let n = rho.n();
    for i in 0..n {
        r.checked += 1;
        if rho.get(i, i).abs() > *tol {
            r.violation(vec![i], "nonzero rho_ii".into());
        }
        for j in (0..n).filter(|&j| j != i) {
            r.checked += 1;
            if *rho.get(i, j) <= T::zero() {
                r.violation(vec![i, j], "nonpositive rho_ij".into());
            }
            for k in 0..n {
                r.checked += 1;
                let via = rho.get(i, k).clone() + rho.get(k, j).clone();
                if rho.get(i, j).clone() - via > *tol {
                    r.violation(vec![i, j, k], "rho_ij > rho_ik + rho_kj".into());
                }
            }
        }
    }
    r.finish()
}
