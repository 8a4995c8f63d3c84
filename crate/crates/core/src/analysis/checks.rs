//! Executable forms of the structural properties of `B = (I + h L)^{-1}`.
//!
//! Every check is generic over [`Scalar`]: with exact input comparisons are
//! exact, with float input equalities use a tolerance and strict
//! inequalities a margin, with near-ties reported separately.

use serde::Serialize;

use crate::analysis::report::CheckReport;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::SymMatrix;
use crate::scalar::{decay_factor, ensure_positive, is_one, Scalar};
use crate::tree::{self, MultiplierMap, RootedTree};

fn show<T: Scalar>(x: &T) -> String {
    x.json_token().trim_matches('"').to_string()
}

/// Requires `a >= b` up to `tol`.
fn expect_ge<T: Scalar>(r: &mut CheckReport, a: &T, b: &T, tol: &T, vertices: Vec<usize>, what: &str) {
    r.checked += 1;
    if a.clone() - b.clone() < -tol.clone() {
        r.violation(vertices, format!("{what}: {} < {}", show(a), show(b)));
    }
}

/// Requires `a > b` by more than `margin`; raw `a > b` within the margin is a
/// near-tie, anything else a violation.
fn expect_gt<T: Scalar>(r: &mut CheckReport, a: &T, b: &T, margin: &T, vertices: Vec<usize>, what: &str) {
    r.checked += 1;
    let diff = a.clone() - b.clone();
    if diff > *margin {
        return;
    }
    if diff > T::zero() {
        r.near_tie(vertices, format!("{what}: {} > {} within margin", show(a), show(b)));
    } else {
        r.violation(vertices, format!("{what}: {} <= {}", show(a), show(b)));
    }
}

fn expect_eq<T: Scalar>(r: &mut CheckReport, a: &T, b: &T, tol: &T, vertices: Vec<usize>, what: &str) {
    r.checked += 1;
    if (a.clone() - b.clone()).abs() > *tol {
        r.violation(vertices, format!("{what}: {} != {}", show(a), show(b)));
    }
}

/// Unit row and column sums, nonnegativity and symmetry.
pub fn check_doubly_stochastic<T: Scalar>(b: &SymMatrix<T>, tol: &T) -> CheckReport {
    let mut r = CheckReport::new("doubly-stochastic");
    let n = b.n();
    for i in 0..n {
        let row: T = (0..n).fold(T::zero(), |acc, j| acc + b.get(i, j).clone());
        expect_eq(&mut r, &row, &T::one(), tol, vec![i], "row sum");
        let col: T = (0..n).fold(T::zero(), |acc, j| acc + b.get(j, i).clone());
        expect_eq(&mut r, &col, &T::one(), tol, vec![i], "column sum");
        for j in 0..n {
            expect_ge(&mut r, b.get(i, j), &T::zero(), &T::zero(), vec![i, j], "nonnegative");
            if j > i {
                expect_eq(&mut r, b.get(i, j), b.get(j, i), tol, vec![i, j], "symmetric");
            }
        }
    }
    r.finish()
}

/// For every pendant `j` with neighbor `k` and every `i != j`:
/// `b_ik = ((1 + h)/h) b_ij`.
pub fn check_pendant_relation<T: Scalar>(g: &Graph, b: &SymMatrix<T>, h: &T, tol: &T) -> CheckReport {
    let mut r = CheckReport::new("pendant");
    let factor = decay_factor(h);
    for j in 0..g.n() {
        if g.degree(j) != 1 {
            continue;
        }
        let k = g.neighbors(j)[0];
        for i in (0..g.n()).filter(|&i| i != j) {
            let scaled = factor.clone() * b.get(i, j).clone();
            expect_eq(&mut r, b.get(i, k), &scaled, tol, vec![i, k, j], "b_ik = factor * b_ij");
        }
    }
    if r.checked == 0 {
        r.message = "no pendant vertices".into();
    }
    r.finish()
}

/// For every root `i` and every edge `(p, k)` directed away from `i`:
/// `b_ip >= ((1 + h)/h) b_ik`. Every root-to-leaf path is made of such edges.
pub fn check_tree_decay<T: Scalar>(t: &Graph, b: &SymMatrix<T>, h: &T, tol: &T) -> CheckReport {
    let name = "tree-decay";
    if !t.is_tree() {
        return CheckReport::skipped(name, "not a tree");
    }
    let mut r = CheckReport::new(name);
    let factor = decay_factor(h);
    for i in 0..t.n() {
        let rooted = tree::orient(t, i).expect("checked tree");
        for (p, k) in rooted.directed_edges() {
            let scaled = factor.clone() * b.get(i, k).clone();
            expect_ge(&mut r, b.get(i, p), &scaled, tol, vec![i, p, k], "b_ip >= factor * b_ik");
        }
    }
    r.finish()
}

/// Permutes rows and columns so that new index `a` is old index `order[a]`.
pub fn permuted<T: Scalar>(b: &SymMatrix<T>, order: &[usize]) -> SymMatrix<T> {
    SymMatrix::from_upper_fn(order.len(), |a, c| b.get(order[a], order[c]).clone())
}

/// Strict decrease away from the diagonal in every row, both directions.
/// Indices must follow the path order.
pub fn check_d_monotone<T: Scalar>(b: &SymMatrix<T>, margin: &T) -> CheckReport {
    let mut r = CheckReport::new("d-monotone");
    let n = b.n();
    for i in 0..n {
        for j in i..n.saturating_sub(1) {
            expect_gt(&mut r, b.get(i, j), b.get(i, j + 1), margin, vec![i, j, j + 1], "right of diagonal");
        }
        for j in 1..=i {
            expect_gt(&mut r, b.get(i, j), b.get(i, j - 1), margin, vec![i, j, j - 1], "left of diagonal");
        }
    }
    r.finish()
}

/// The sharper path decay: `b_ij >= f b_{i,j+1}` for `i <= j` and
/// `b_ij >= f b_{i,j-1}` for `j <= i`, with `f = (1 + h)/h`. Indices must
/// follow the path order.
pub fn check_path_decay<T: Scalar>(b: &SymMatrix<T>, h: &T, tol: &T) -> CheckReport {
    let mut r = CheckReport::new("path-decay");
    let f = decay_factor(h);
    let n = b.n();
    for i in 0..n {
        for j in i..n.saturating_sub(1) {
            let s = f.clone() * b.get(i, j + 1).clone();
            expect_ge(&mut r, b.get(i, j), &s, tol, vec![i, j, j + 1], "b_ij >= f b_i,j+1");
        }
        for j in 1..=i {
            let s = f.clone() * b.get(i, j - 1).clone();
            expect_ge(&mut r, b.get(i, j), &s, tol, vec![i, j, j - 1], "b_ij >= f b_i,j-1");
        }
    }
    r.finish()
}

/// Greedy path `j -> ... -> i` along edges with strictly increasing row-`i`
/// entries: always step to the neighbor with the largest entry, ties to the
/// smaller index.
pub fn increasing_path<T: Scalar>(b: &SymMatrix<T>, g: &Graph, i: usize, j: usize) -> Result<Vec<usize>> {
    let n = g.n();
    for v in [i, j] {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    if i == j {
        return Err(Error::InvalidParameter("increasing path needs i != j".into()));
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let mut path = vec![j];
    let mut cur = j;
    while cur != i {
        let best = g
            .neighbors(cur)
            .iter()
            .copied()
            .reduce(|a, c| if b.get(i, c) > b.get(i, a) { c } else { a })
            .ok_or(Error::MonotonePathStuck(cur))?;
        if b.get(i, best) <= b.get(i, cur) {
            return Err(Error::MonotonePathStuck(cur));
        }
        path.push(best);
        cur = best;
    }
    Ok(path)
}

/// An increasing path exists for every ordered pair `(i, j)`, `i != j`.
pub fn check_increasing_paths<T: Scalar>(g: &Graph, b: &SymMatrix<T>) -> CheckReport {
    let name = "increasing-path";
    if !g.is_connected() {
        return CheckReport::skipped(name, "not connected");
    }
    let mut r = CheckReport::new(name);
    let margin = T::strict_margin();
    for i in 0..g.n() {
        for j in (0..g.n()).filter(|&j| j != i) {
            r.checked += 1;
            match increasing_path(b, g, i, j) {
                Ok(path) => {
                    for w in path.windows(2) {
                        if b.get(i, w[1]).clone() - b.get(i, w[0]).clone() <= margin {
                            r.near_tie(vec![i, w[0], w[1]], "step within strictness margin".into());
                        }
                    }
                }
                Err(e) => r.violation(vec![i, j], e.to_string()),
            }
        }
    }
    r.finish()
}

/// `b_ii > b_ij` for all `j != i`.
pub fn check_diagonal_dominance<T: Scalar>(b: &SymMatrix<T>, margin: &T) -> CheckReport {
    let mut r = CheckReport::new("diagonal-max");
    for i in 0..b.n() {
        for j in (0..b.n()).filter(|&j| j != i) {
            expect_gt(&mut r, b.get(i, i), b.get(i, j), margin, vec![i, j], "b_ii > b_ij");
        }
    }
    r.finish()
}

/// `(sum_j ((1 + h)/h)^{-d(i, j)})^{-1}`, a lower bound on `b_ii` for trees.
pub fn diag_lower_bound<T: Scalar>(t: &Graph, i: usize, h: &T) -> Result<T> {
    ensure_positive(h)?;
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let dist = t.bfs_distances(i)?;
    let ratio = decay_factor(h).recip();
    let max_d = dist.iter().flatten().copied().max().unwrap_or(0);
    let mut powers = Vec::with_capacity(max_d + 1);
    let mut p = T::one();
    for _ in 0..=max_d {
        powers.push(p.clone());
        p = p * ratio.clone();
    }
    let total = dist.iter().flatten().fold(T::zero(), |acc, &d| acc + powers[d].clone());
    Ok(total.recip())
}

pub fn check_diag_lower_bound<T: Scalar>(t: &Graph, b: &SymMatrix<T>, h: &T, tol: &T) -> CheckReport {
    let name = "diag-bound";
    if !t.is_tree() {
        return CheckReport::skipped(name, "not a tree");
    }
    let mut r = CheckReport::new(name);
    for i in 0..t.n() {
        let bound = diag_lower_bound(t, i, h).expect("checked tree");
        expect_ge(&mut r, b.get(i, i), &bound, tol, vec![i], "b_ii >= distance bound");
    }
    r.finish()
}

/// Distance-based brackets for a tree whose non-pendant vertices all have
/// degree 3 (`h = 1`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Deg3Bounds<T> {
    pub root: usize,
    /// Lower per-vertex ratio bound `b_ij / b_ii` (zero at the root).
    #[serde(skip)]
    pub eta_tilde: Vec<T>,
    /// Upper per-vertex ratio bound `b_ij / b_ii` (zero at the root).
    #[serde(skip)]
    pub eta_hat: Vec<T>,
    #[serde(skip)]
    pub diag_lower: T,
    #[serde(skip)]
    pub diag_upper: T,
    #[serde(skip)]
    pub entry_lower: Vec<T>,
    #[serde(skip)]
    pub entry_upper: Vec<T>,
}

fn require_t3(t: &Graph) -> Result<()> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    match (0..t.n()).find(|&v| t.degree(v) != 1 && t.degree(v) != 3 && t.n() > 1) {
        Some(v) => Err(Error::DegreeCondition { vertex: v, degree: t.degree(v) }),
        None => Ok(()),
    }
}

/// Brackets around row `i`: with `eta~ = (1/4)^d` and `eta^ = (1/3)^d` for
/// non-pendant `j` (and `(1/2)(1/4)^{d-1}`, `(1/2)(1/3)^{d-1}` for pendant
/// `j`), `(1 + sum eta^)^{-1} <= b_ii <= (1 + sum eta~)^{-1}` and
/// `eta~_j (1 + sum eta^)^{-1} <= b_ij <= eta^_j (1 + sum eta~)^{-1}`.
pub fn t3_bounds<T: Scalar>(t: &Graph, i: usize) -> Result<Deg3Bounds<T>> {
    require_t3(t)?;
    let dist = t.bfs_distances(i)?;
    let quarter = T::one() / T::from_usize(4);
    let third = T::one() / T::from_usize(3);
    let eta = |base: &T, j: usize| -> T {
        let d = dist[j].expect("tree is connected");
        if j == i {
            return T::zero();
        }
        if t.degree(j) == 1 {
            num_traits::pow(base.clone(), d - 1) * T::half()
        } else {
            num_traits::pow(base.clone(), d)
        }
    };
    let eta_tilde: Vec<T> = (0..t.n()).map(|j| eta(&quarter, j)).collect();
    let eta_hat: Vec<T> = (0..t.n()).map(|j| eta(&third, j)).collect();
    let sum = |v: &[T]| v.iter().cloned().fold(T::one(), |a, x| a + x);
    let diag_lower = sum(&eta_hat).recip();
    let diag_upper = sum(&eta_tilde).recip();
    let entry_lower = eta_tilde.iter().map(|e| e.clone() * diag_lower.clone()).collect();
    let entry_upper = eta_hat.iter().map(|e| e.clone() * diag_upper.clone()).collect();
    Ok(Deg3Bounds { root: i, eta_tilde, eta_hat, diag_lower, diag_upper, entry_lower, entry_upper })
}

pub fn check_t3_brackets<T: Scalar>(t: &Graph, b: &SymMatrix<T>, tol: &T) -> CheckReport {
    let name = "t3-brackets";
    if let Err(e) = require_t3(t) {
        return CheckReport::skipped(name, &e.to_string());
    }
    let mut r = CheckReport::new(name);
    for i in 0..t.n() {
        let br: Deg3Bounds<T> = t3_bounds(t, i).expect("checked degree condition");
        for (e_lo, e_hi) in br.eta_tilde.iter().zip(&br.eta_hat) {
            expect_ge(&mut r, e_hi, e_lo, &T::zero(), vec![i], "eta^ >= eta~");
        }
        expect_ge(&mut r, b.get(i, i), &br.diag_lower, tol, vec![i], "b_ii lower bracket");
        expect_ge(&mut r, &br.diag_upper, b.get(i, i), tol, vec![i], "b_ii upper bracket");
        for j in (0..t.n()).filter(|&j| j != i) {
            expect_ge(&mut r, b.get(i, j), &br.entry_lower[j], tol, vec![i, j], "b_ij lower bracket");
            expect_ge(&mut r, &br.entry_upper[j], b.get(i, j), tol, vec![i, j], "b_ij upper bracket");
        }
    }
    r.finish()
}

/// Checks every multiplier of one orientation against
/// `1 + 1/h <= (1 - h/(h+1)) d_k + h/(h+1) + 1/h <= m_pk <= d_k + 1/h`
/// and the refinement `m_pk >= (1 - 1/m*) d_k + 1/h + 1/m*`, `m*` the
/// smallest multiplier on an edge out of `k`. At `h = 1` these read
/// `2 <= d_k/2 + 3/2 <= m_pk <= d_k + 1` and
/// `m_pk >= (1 - 1/m*) d_k + 1 + 1/m*`.
pub fn multiplier_bounds_check<T: Scalar>(
    rooted: &RootedTree,
    m: &MultiplierMap<T>,
    degrees: &[usize],
    h: &T,
    tol: &T,
) -> CheckReport {
    let mut r = CheckReport::new("multiplier-bounds");
    let inv_h = h.recip();
    let w = h.clone() / (h.clone() + T::one());
    let floor = T::one() + inv_h.clone();
    for (p, k, mk) in m.iter(rooted) {
        let d = T::from_usize(degrees[k]);
        let mid = (T::one() - w.clone()) * d.clone() + w.clone() + inv_h.clone();
        let top = d.clone() + inv_h.clone();
        let v = vec![rooted.root(), p, k];
        expect_ge(&mut r, &mid, &floor, tol, v.clone(), "middle bound >= 1 + 1/h");
        expect_ge(&mut r, mk, &mid, tol, v.clone(), "m_pk >= middle bound");
        expect_ge(&mut r, &top, mk, tol, v.clone(), "m_pk <= d_k + 1/h");
        let m_star = rooted.children(k).iter().filter_map(|&j| m.into_vertex(j).cloned()).reduce(T::min_of);
        if let Some(ms) = m_star {
            let inv = ms.recip();
            let refined = (T::one() - inv.clone()) * d + inv_h.clone() + inv;
            expect_ge(&mut r, mk, &refined, tol, v, "m_pk >= refined bound");
        } else if is_one(h) || T::EXACT {
            // Pendant edge: equality throughout.
            expect_eq(&mut r, mk, &floor, tol, vec![rooted.root(), p, k], "pendant multiplier");
        }
    }
    r.finish()
}

/// [`multiplier_bounds_check`] for every root of the tree.
pub fn check_multiplier_bounds_all_roots<T: Scalar>(t: &Graph, h: &T, tol: &T) -> CheckReport {
    let name = "multiplier-bounds";
    if !t.is_tree() {
        return CheckReport::skipped(name, "not a tree");
    }
    let degrees = t.degrees();
    let mut total = CheckReport::new(name);
    for i in 0..t.n() {
        let rooted = tree::orient(t, i).expect("checked tree");
        let m = match tree::multipliers(&rooted, &degrees, h) {
            Ok(m) => m,
            Err(e) => return CheckReport::skipped(name, &e.to_string()),
        };
        let part = multiplier_bounds_check(&rooted, &m, &degrees, h, tol);
        total.checked += part.checked;
        for w in part.witnesses {
            total.violation(w.vertices, w.detail);
        }
    }
    total.finish()
}
