//! Property checks, extremal bounds, the forest oracle and centrality.

pub mod bounds;
pub mod centrality;
pub mod checks;
pub mod forest;
pub mod report;

use std::str::FromStr;

use serde::Serialize;

pub use bounds::{bounds_report, BoundsReport};
pub use centrality::{centrality_report, CentralityReport};
pub use checks::*;
pub use forest::{bareiss_determinant, det_modified_laplacian, forest_count_oracle, ForestCount};
pub use report::{CheckReport, Status, Witness};

use crate::dsmatrix::DsMatrix;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::{is_one, Scalar};

/// Check names, in the order [`run_suite`] produces them.
pub const CHECK_NAMES: [&str; 15] = [
    "doubly-stochastic",
    "diagonal-max",
    "pendant",
    "increasing-path",
    "tree-decay",
    "diag-bound",
    "multiplier-bounds",
    "t3-brackets",
    "d-monotone",
    "path-decay",
    "omega-upper",
    "omega-tree",
    "berman",
    "least-remote",
    "forest-metric",
];

/// A group of checks or a single check, as selected on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Suite {
    All,
    Structure,
    Tree,
    Path,
    Bounds,
    Centrality,
    Single(&'static str),
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "structure" => Suite::Structure,
            "tree" => Suite::Tree,
            "path" => Suite::Path,
            "bounds" => Suite::Bounds,
            "centrality" => Suite::Centrality,
            other => match CHECK_NAMES.iter().find(|&&c| c == other) {
                Some(&c) => Suite::Single(c),
                None => return Err(Error::InvalidParameter(format!("unknown suite {other:?}"))),
            },
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub n: usize,
    pub h: String,
    pub mode: &'static str,
    pub engine: String,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }
}

/// Runs `suite` on `b = B(g, h)`.
pub fn run_suite<T: Scalar>(g: &Graph, b: &DsMatrix<T>, suite: Suite) -> Result<SuiteReport> {
    if b.n() != g.n() {
        return Err(Error::DimensionMismatch { expected: g.n(), found: b.n() });
    }
    let m = &b.matrix;
    let h = &b.h;
    let tol = T::default_tol();
    let margin = T::strict_margin();
    let wants = |s: Suite| matches!(suite, Suite::All | Suite::Single(_)) || suite == s;
    let mut out = Vec::new();

    if wants(Suite::Structure) {
        out.push(check_doubly_stochastic(m, &tol));
        out.push(check_diagonal_dominance(m, &margin));
        out.push(check_pendant_relation(g, m, h, &tol));
        out.push(check_increasing_paths(g, m));
    }
    if wants(Suite::Tree) {
        out.push(check_tree_decay(g, m, h, &tol));
        out.push(check_diag_lower_bound(g, m, h, &tol));
        out.push(check_multiplier_bounds_all_roots(g, h, &tol));
        if is_one(h) {
            out.push(check_t3_brackets(g, m, &tol));
        } else {
            out.push(CheckReport::skipped("t3-brackets", "needs h = 1"));
        }
    }
    if wants(Suite::Path) {
        match g.path_order() {
            Some(order) => {
                let pm = permuted(m, &order);
                out.push(check_d_monotone(&pm, &margin));
                out.push(check_path_decay(&pm, h, &tol));
            }
            None => {
                out.push(CheckReport::skipped("d-monotone", "not a path"));
                out.push(CheckReport::skipped("path-decay", "not a path"));
            }
        }
    }
    if wants(Suite::Bounds) {
        let reason = if !is_one(h) {
            Some("needs h = 1")
        } else if !g.is_connected() {
            Some("not connected")
        } else {
            None
        };
        if let Some(reason) = reason {
            for name in ["omega-upper", "omega-tree", "berman"] {
                out.push(CheckReport::skipped(name, reason));
            }
        } else {
            out.extend(bounds_report(g, m)?.checks);
        }
    }
    if wants(Suite::Centrality) {
        let rep = centrality_report(m);
        out.push(centrality::check_least_remote(&rep));
        out.push(centrality::check_forest_metric(&rep, &tol));
    }

    if let Suite::Single(name) = suite {
        out.retain(|c| c.name == name);
    }
    Ok(SuiteReport {
        n: g.n(),
        h: h.json_token().trim_matches('"').to_string(),
        mode: b.mode(),
        engine: b.engine.to_string(),
        checks: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::scalar::Rational;
    use crate::tree::compute_b_tree;
    use num_traits::One;

    #[test]
    fn full_suite_on_small_trees() {
        for g in [families::path(6).unwrap(), families::star(4).unwrap(), families::t3_tree(2).unwrap()] {
            let b = compute_b_tree(&g, &Rational::one()).unwrap();
            let r = run_suite(&g, &b, Suite::All).unwrap();
            assert!(r.passed(), "{}", serde_json::to_string_pretty(&r).unwrap());
        }
    }

    #[test]
    fn suite_names() {
        assert_eq!("tree".parse::<Suite>().unwrap(), Suite::Tree);
        assert_eq!("pendant".parse::<Suite>().unwrap(), Suite::Single("pendant"));
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn single_check_on_non_tree() {
        let k4 = families::complete(4).unwrap();
        let b = crate::dense::compute_b_dense(&k4, 1.0).unwrap();
        let r = run_suite(&k4, &b, "tree-decay".parse().unwrap()).unwrap();
        assert_eq!(r.checks.len(), 1);
        assert_eq!(r.checks[0].message, "skipped: not a tree");

        let all = run_suite(&k4, &b, Suite::All).unwrap();
        let names: Vec<&str> = all.checks.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, CHECK_NAMES);
    }
}
