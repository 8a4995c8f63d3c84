//! Extremal bounds on `omega(G)`, the smallest entry of `B` at `h = 1`.

use serde::Serialize;

use crate::analysis::report::CheckReport;
use crate::dense::algebraic_connectivity;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::SymMatrix;
use crate::path::fib;
use crate::scalar::{Rational, Scalar};

/// Slack for the spectral comparison, both sides being floating-point.
pub const BERMAN_SLACK: f64 = 1e-10;
/// Relative tolerance for deciding float equality with a bound.
pub const EQUALITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub omega: String,
    pub omega_f64: f64,
    /// `1 / (n + 1)`.
    pub general_upper: f64,
    pub attains_general_upper: bool,
    /// `[1 / f_{2n}, 1 / (2(n + 1))]`, for trees with `n >= 3`.
    pub tree_interval: Option<(f64, f64)>,
    pub attains_tree_lower: bool,
    pub attains_tree_upper: bool,
    pub algebraic_connectivity: f64,
    pub checks: Vec<CheckReport>,
}

impl BoundsReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }
}

fn equal<T: Scalar>(a: &T, b: &T) -> bool {
    if T::EXACT {
        a == b
    } else {
        let (a, b) = (a.to_f64(), b.to_f64());
        (a - b).abs() <= EQUALITY_TOL * a.abs().max(b.abs())
    }
}

fn fib_recip<T: Scalar>(k: usize) -> Result<T> {
    let f = fib(k)?;
    Ok(T::from_rational(&Rational::from_integer(f.into())).recip())
}

/// `b` must be `B` for `g` at `h = 1`, `g` connected.
pub fn bounds_report<T: Scalar>(g: &Graph, b: &SymMatrix<T>) -> Result<BoundsReport> {
    if b.n() != g.n() {
        return Err(Error::DimensionMismatch { expected: g.n(), found: b.n() });
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = g.n();
    let omega = b.min_entry();
    let omega_f64 = omega.to_f64();
    let mut checks = Vec::new();

    let upper = T::from_usize(n + 1).recip();
    let attains_general_upper = n >= 2 && equal(&omega, &upper);
    if n >= 2 {
        let mut r = CheckReport::new("omega-upper");
        r.checked += 2;
        if omega > upper && !attains_general_upper {
            r.violation(vec![], format!("omega = {omega_f64:e} > 1/(n+1)"));
        }
        if attains_general_upper != g.is_complete() {
            r.violation(vec![], format!("equality {attains_general_upper} but complete {}", g.is_complete()));
        }
        checks.push(r.finish());
    } else {
        checks.push(CheckReport::skipped("omega-upper", "needs at least 2 vertices"));
    }

    let mut tree_interval = None;
    let (mut attains_tree_lower, mut attains_tree_upper) = (false, false);
    if g.is_tree() && n >= 3 {
        let lo: T = fib_recip(2 * n)?;
        let hi = (T::from_usize(2) * T::from_usize(n + 1)).recip();
        attains_tree_lower = equal(&omega, &lo);
        attains_tree_upper = equal(&omega, &hi);
        tree_interval = Some((lo.to_f64(), hi.to_f64()));
        let mut r = CheckReport::new("omega-tree");
        r.checked += 4;
        if omega < lo && !attains_tree_lower {
            r.violation(vec![], format!("omega = {omega_f64:e} below 1/f_2n"));
        }
        if omega > hi && !attains_tree_upper {
            r.violation(vec![], format!("omega = {omega_f64:e} above 1/(2(n+1))"));
        }
        if attains_tree_lower != g.is_path() {
            r.violation(vec![], format!("lower equality {attains_tree_lower} but path {}", g.is_path()));
        }
        if attains_tree_upper != g.is_star() {
            r.violation(vec![], format!("upper equality {attains_tree_upper} but star {}", g.is_star()));
        }
        checks.push(r.finish());
    } else {
        checks.push(CheckReport::skipped("omega-tree", "needs a tree on at least 3 vertices"));
    }

    let a = algebraic_connectivity(g)?;
    if n >= 2 {
        let mut r = CheckReport::new("berman");
        r.checked += 1;
        let rhs = 2.0 * (n as f64 + 1.0) * omega_f64;
        if a < rhs - BERMAN_SLACK {
            r.violation(vec![], format!("a(G) = {a:e} < 2(n+1) omega = {rhs:e}"));
        }
        checks.push(r.finish());
    } else {
        checks.push(CheckReport::skipped("berman", "needs at least 2 vertices"));
    }

    Ok(BoundsReport {
        n,
        omega: omega.json_token().trim_matches('"').to_string(),
        omega_f64,
        general_upper: 1.0 / (n as f64 + 1.0),
        attains_general_upper,
        tree_interval,
        attains_tree_lower,
        attains_tree_upper,
        algebraic_connectivity: a,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::compute_b_dense;
    use crate::families;
    use crate::tree::compute_b_tree;
    use num_traits::One;

    #[test]
    fn complete_graph_attains_upper() {
        let k5 = families::complete(5).unwrap();
        let b = compute_b_dense(&k5, 1.0).unwrap();
        let r = bounds_report(&k5, &b.matrix).unwrap();
        assert!(r.attains_general_upper && r.passed(), "{r:?}");
    }

    #[test]
    fn path_and_star_attain_tree_bounds() {
        let p = families::path(7).unwrap();
        let b = compute_b_tree(&p, &Rational::one()).unwrap();
        let r = bounds_report(&p, &b.matrix).unwrap();
        assert!(r.attains_tree_lower && !r.attains_tree_upper && r.passed(), "{r:?}");

        let s = families::star(7).unwrap();
        let b = compute_b_tree(&s, &Rational::one()).unwrap();
        let r = bounds_report(&s, &b.matrix).unwrap();
        assert!(r.attains_tree_upper && !r.attains_tree_lower && r.passed(), "{r:?}");
        assert_eq!(r.omega, "1/16");
    }

    #[test]
    fn generic_tree_strictly_inside() {
        let t = families::broom(5, 3).unwrap();
        let b = compute_b_tree(&t, &1.0).unwrap();
        let r = bounds_report(&t, &b.matrix).unwrap();
        assert!(!r.attains_tree_lower && !r.attains_tree_upper && r.passed());
    }

    #[test]
    fn rejects_disconnected() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        let b = compute_b_dense(&g, 1.0).unwrap();
        assert!(matches!(bounds_report(&g, &b.matrix), Err(Error::NotConnected)));
    }
}
