//! Engine selection for computing `B` from a graph.

use std::str::FromStr;

use num_traits::One;

use crate::dense::{compute_b_dense, compute_b_exact_dense};
use crate::dsmatrix::DsMatrix;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::SymMatrix;
use crate::path::compute_b_path;
use crate::scalar::{ensure_positive, Rational};
use crate::tree::compute_b_tree;

/// Engine requested by the caller.
///
/// `Auto` uses the tree engine for every tree (paths included, since the
/// closed forms are only cheaper for a single column) and the dense engine
/// otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EngineRequest {
    #[default]
    Auto,
    Dense,
    Tree,
    Path,
}

impl FromStr for EngineRequest {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => EngineRequest::Auto,
            "dense" => EngineRequest::Dense,
            "tree" => EngineRequest::Tree,
            "path" | "path-closed-form" => EngineRequest::Path,
            other => return Err(Error::InvalidParameter(format!("unknown engine {other:?}"))),
        })
    }
}

fn mismatch(engine: &str, reason: &str) -> Error {
    Error::EngineMismatch { engine: engine.into(), reason: reason.into() }
}

/// Resolves `Auto` and validates explicit requests against the graph.
pub fn select_engine(g: &Graph, req: EngineRequest, h_is_one: bool) -> Result<EngineRequest> {
    match req {
        EngineRequest::Auto if g.is_tree() => Ok(EngineRequest::Tree),
        EngineRequest::Auto => Ok(EngineRequest::Dense),
        EngineRequest::Dense => Ok(req),
        EngineRequest::Tree if g.is_tree() => Ok(req),
        EngineRequest::Tree => Err(mismatch("tree", "graph is not a tree")),
        EngineRequest::Path if !g.is_path() => Err(mismatch("path", "graph is not a path")),
        EngineRequest::Path if !h_is_one => Err(mismatch("path", "closed forms need h = 1")),
        EngineRequest::Path => Ok(req),
    }
}

/// Closed-form `B` for a path in any labeling.
fn path_matrix(g: &Graph) -> Result<DsMatrix<Rational>> {
    let order = g.path_order().ok_or(Error::NotAPath)?;
    let canonical = compute_b_path(g.n())?;
    let mut pos = vec![0; g.n()];
    for (a, &v) in order.iter().enumerate() {
        pos[v] = a;
    }
    let matrix = SymMatrix::from_upper_fn(g.n(), |i, j| canonical.get(pos[i], pos[j]).clone());
    Ok(DsMatrix { matrix, ..canonical })
}

pub fn compute_exact(g: &Graph, h: &Rational, req: EngineRequest) -> Result<DsMatrix<Rational>> {
    ensure_positive(h)?;
    match select_engine(g, req, h.is_one())? {
        EngineRequest::Tree => compute_b_tree(g, h),
        EngineRequest::Path => path_matrix(g),
        _ => compute_b_exact_dense(g, h),
    }
}

pub fn compute_float(g: &Graph, h: f64, req: EngineRequest) -> Result<DsMatrix<f64>> {
    ensure_positive(&h)?;
    match select_engine(g, req, h == 1.0)? {
        EngineRequest::Tree => compute_b_tree(g, &h),
        EngineRequest::Path => Ok(path_matrix(g)?.to_float()),
        _ => compute_b_dense(g, h),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsmatrix::Engine;
    use crate::families;

    #[test]
    fn auto_policy() {
        let p = families::path(5).unwrap();
        assert_eq!(select_engine(&p, EngineRequest::Auto, true).unwrap(), EngineRequest::Tree);
        let k = families::complete(4).unwrap();
        assert_eq!(select_engine(&k, EngineRequest::Auto, true).unwrap(), EngineRequest::Dense);
        assert!(matches!(select_engine(&k, EngineRequest::Tree, true), Err(Error::EngineMismatch { .. })));
        assert!(select_engine(&p, EngineRequest::Path, false).is_err());
        assert!(select_engine(&families::star(4).unwrap(), EngineRequest::Path, true).is_err());
    }

    #[test]
    fn engines_agree_on_relabeled_path() {
        let g = Graph::new(5, [(3, 0), (0, 4), (4, 1), (1, 2)]).unwrap();
        let one = Rational::one();
        let p = compute_exact(&g, &one, EngineRequest::Path).unwrap();
        assert_eq!(p.engine, Engine::PathClosedForm);
        assert_eq!(p.matrix, compute_exact(&g, &one, EngineRequest::Tree).unwrap().matrix);
        assert_eq!(p.matrix, compute_exact(&g, &one, EngineRequest::Dense).unwrap().matrix);
        let f = compute_float(&g, 1.0, EngineRequest::Path).unwrap();
        assert!(f.matrix.max_abs_diff(&compute_float(&g, 1.0, EngineRequest::Dense).unwrap().matrix) < 1e-14);
    }
}
