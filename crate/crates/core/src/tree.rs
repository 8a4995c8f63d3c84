//! Tree engine: columns of `(I + h L_T)^{-1}` from edge multipliers.
//!
//! For a root `i` every edge is directed away from `i`. Multipliers
//! `m_pk = x_p / x_k` are computed leaves-first from the Laplace equation at
//! `k`:
//!
//! ```text
//! m_pk = 1/h + d_k - sum_{(k, j) child edges} 1/m_kj
//! ```
//!
//! (a pendant `k` gets `(1 + h) / h`, which is `2` at `h = 1`). The root
//! value follows from the equation at `i`, whose right-hand side is 1:
//!
//! ```text
//! x_i = 1 / (1 + h (d_i - sum_{(i, j)} 1/m_ij))
//! ```
//!
//! and the rest of the column is `x_k = x_p / m_pk` outward. Each column
//! costs O(n).

use std::collections::VecDeque;

use crate::dsmatrix::{DsMatrix, Engine};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::SymMatrix;
use crate::scalar::{ensure_positive, Scalar};

/// Orientation of a tree away from `root`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    /// BFS order from the root; reversed it is leaves-first.
    order: Vec<usize>,
}

impl RootedTree {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Vertices root-first (BFS).
    pub fn bfs_order(&self) -> &[usize] {
        &self.order
    }

    pub fn leaves_first(&self) -> impl Iterator<Item = usize> + '_ {
        self.order.iter().rev().copied()
    }

    /// Directed edges `(parent, child)` in BFS order of the child.
    pub fn directed_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.order.iter().filter_map(move |&k| self.parent[k].map(|p| (p, k)))
    }

    /// Vertices on the root-to-`v` path, root first.
    pub fn path_from_root(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }
}

/// Directs every edge of the tree `t` away from `root`.
pub fn orient(t: &Graph, root: usize) -> Result<RootedTree> {
    if root >= t.n() {
        return Err(Error::VertexOutOfRange { vertex: root, n: t.n() });
    }
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    Ok(orient_unchecked(t, root))
}

fn orient_unchecked(t: &Graph, root: usize) -> RootedTree {
    let n = t.n();
    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &w in t.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(u);
                children[u].push(w);
                queue.push_back(w);
            }
        }
    }
    RootedTree { root, parent, children, order }
}

/// Multiplier `m_pk` for each directed edge, indexed by the head `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplierMap<T> {
    pub h: T,
    values: Vec<Option<T>>,
}

impl<T: Scalar> MultiplierMap<T> {
    /// `m_pk`, if `(p, k)` is an edge of the orientation.
    pub fn get(&self, p: usize, k: usize, tree: &RootedTree) -> Option<&T> {
        (tree.parent(k) == Some(p)).then(|| self.values[k].as_ref()).flatten()
    }

    /// Multiplier on the edge entering `k`; `None` for the root.
    pub fn into_vertex(&self, k: usize) -> Option<&T> {
        self.values[k].as_ref()
    }

    pub fn iter<'a>(&'a self, tree: &'a RootedTree) -> impl Iterator<Item = (usize, usize, &'a T)> + 'a {
        tree.directed_edges().map(move |(p, k)| (p, k, self.values[k].as_ref().expect("labeled")))
    }
}

/// Work counter for the per-column cost measurement.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ColumnStats {
    /// Scalar arithmetic operations performed.
    pub ops: usize,
}

fn multipliers_counted<T: Scalar>(r: &RootedTree, degrees: &[usize], h: &T, ops: &mut usize) -> MultiplierMap<T> {
    let inv_h = h.recip();
    *ops += 1;
    let mut values: Vec<Option<T>> = vec![None; r.n()];
    for k in r.leaves_first() {
        if k == r.root() {
            continue;
        }
        let mut m = inv_h.clone() + T::from_usize(degrees[k]);
        *ops += 1;
        for &j in r.children(k) {
            m = m - values[j].as_ref().expect("children labeled first").recip();
            *ops += 2;
        }
        values[k] = Some(m);
    }
    MultiplierMap { h: h.clone(), values }
}

/// Labels every edge of the orientation, leaves first.
pub fn multipliers<T: Scalar>(r: &RootedTree, degrees: &[usize], h: &T) -> Result<MultiplierMap<T>> {
    ensure_positive(h)?;
    if degrees.len() != r.n() {
        return Err(Error::DimensionMismatch { expected: r.n(), found: degrees.len() });
    }
    let mut ops = 0;
    Ok(multipliers_counted(r, degrees, h, &mut ops))
}

fn column_from_multipliers<T: Scalar>(
    r: &RootedTree,
    degrees: &[usize],
    h: &T,
    m: &MultiplierMap<T>,
    ops: &mut usize,
) -> Vec<T> {
    let i = r.root();
    let mut s = T::from_usize(degrees[i]);
    for &j in r.children(i) {
        s = s - m.values[j].as_ref().expect("labeled").recip();
        *ops += 2;
    }
    let mut x = vec![T::zero(); r.n()];
    x[i] = (T::one() + h.clone() * s).recip();
    *ops += 3;
    for &k in &r.order[1..] {
        let p = r.parent[k].expect("non-root");
        x[k] = x[p].clone() / m.values[k].clone().expect("labeled");
        *ops += 1;
    }
    x
}

/// Column `i` of `(I + h L_T)^{-1}`, with the work it took.
pub fn solve_column_with_stats<T: Scalar>(t: &Graph, i: usize, h: &T) -> Result<(Vec<T>, ColumnStats)> {
    ensure_positive(h)?;
    let r = orient(t, i)?;
    let degrees = t.degrees();
    Ok(solve_oriented(&r, &degrees, h))
}

fn solve_oriented<T: Scalar>(r: &RootedTree, degrees: &[usize], h: &T) -> (Vec<T>, ColumnStats) {
    let mut ops = 0;
    let m = multipliers_counted(r, degrees, h, &mut ops);
    let x = column_from_multipliers(r, degrees, h, &m, &mut ops);
    (x, ColumnStats { ops })
}

/// Column `i` of `(I + h L_T)^{-1}`.
pub fn solve_column<T: Scalar>(t: &Graph, i: usize, h: &T) -> Result<Vec<T>> {
    Ok(solve_column_with_stats(t, i, h)?.0)
}

/// The full inverse, one column per root. O(n^2) overall.
pub fn compute_b_tree<T: Scalar>(t: &Graph, h: &T) -> Result<DsMatrix<T>> {
    ensure_positive(h)?;
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let degrees = t.degrees();
    let columns: Vec<Vec<T>> = (0..t.n()).map(|i| solve_oriented(&orient_unchecked(t, i), &degrees, h).0).collect();
    Ok(DsMatrix { h: h.clone(), engine: Engine::Tree, matrix: SymMatrix::from_columns_symmetrized(&columns)? })
}

/// Reusable solver of `(I + h L_T) x = b` for arbitrary right-hand sides.
///
/// Rooted at vertex 0. Elimination leaves-first writes `x_k = a_k x_p + c_k`;
/// `a_k = 1/m_pk` depends only on the tree, so it is computed once.
#[derive(Debug, Clone)]
pub struct TreeFactorization<T> {
    tree: RootedTree,
    h: T,
    /// `1 / m_pk` for the edge entering each non-root vertex.
    inv_multiplier: Vec<T>,
    /// `1 + h d_k - h sum_j a_j`, the pivot at each vertex.
    pivot: Vec<T>,
}

impl<T: Scalar> TreeFactorization<T> {
    pub fn new(t: &Graph, h: &T) -> Result<Self> {
        ensure_positive(h)?;
        let tree = orient(t, 0)?;
        let degrees = t.degrees();
        let n = t.n();
        let mut inv_multiplier = vec![T::zero(); n];
        let mut pivot = vec![T::zero(); n];
        for k in tree.leaves_first() {
            let mut s = T::from_usize(degrees[k]);
            for &j in tree.children(k) {
                s = s - inv_multiplier[j].clone();
            }
            let d = T::one() + h.clone() * s;
            if k != tree.root() {
                inv_multiplier[k] = h.clone() / d.clone();
            }
            pivot[k] = d;
        }
        Ok(TreeFactorization { tree, h: h.clone(), inv_multiplier, pivot })
    }

    pub fn n(&self) -> usize {
        self.tree.n()
    }

    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        let n = self.n();
        if b.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: b.len() });
        }
        let mut c: Vec<T> = b.to_vec();
        for k in self.tree.leaves_first() {
            let mut acc = c[k].clone();
            for &j in self.tree.children(k) {
                acc = acc + self.h.clone() * c[j].clone();
            }
            c[k] = acc / self.pivot[k].clone();
        }
        let mut x = vec![T::zero(); n];
        for &k in self.tree.bfs_order() {
            x[k] = match self.tree.parent(k) {
                None => c[k].clone(),
                Some(p) => self.inv_multiplier[k].clone() * x[p].clone() + c[k].clone(),
            };
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::scalar::Rational;
    use num_bigint::BigInt;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(d))
    }

    fn one() -> Rational {
        q(1, 1)
    }

    /// The six-vertex example tree with labels shifted down by one:
    /// 6-5, 6-4, 5-2, 5-3, 4-1.
    fn example_tree() -> Graph {
        Graph::new(6, [(5, 4), (5, 3), (4, 1), (4, 2), (3, 0)]).unwrap()
    }

    #[test]
    fn orient_examples() {
        let p3 = families::path(3).unwrap();
        let r = orient(&p3, 1).unwrap();
        assert_eq!(r.children(1), &[0, 2]);
        assert!(r.children(0).is_empty() && r.children(2).is_empty());

        let r = orient(&example_tree(), 5).unwrap();
        assert_eq!(r.children(5), &[3, 4]);
        assert_eq!(r.children(4), &[1, 2]);
        assert_eq!(r.children(3), &[0]);
        assert_eq!(r.path_from_root(1), vec![5, 4, 1]);

        let s = families::star(7).unwrap();
        let r = orient(&s, 6).unwrap();
        assert_eq!(r.children(6), &[0, 1, 2, 3, 4, 5]);

        assert!(matches!(orient(&families::complete(3).unwrap(), 0), Err(Error::NotATree)));
        assert!(orient(&p3, 3).is_err());
    }

    #[test]
    fn example_tree_multipliers() {
        let t = example_tree();
        let r = orient(&t, 5).unwrap();
        let m = multipliers(&r, &t.degrees(), &one()).unwrap();
        assert_eq!(m.get(4, 1, &r), Some(&q(2, 1)));
        assert_eq!(m.get(4, 2, &r), Some(&q(2, 1)));
        assert_eq!(m.get(3, 0, &r), Some(&q(2, 1)));
        assert_eq!(m.get(5, 4, &r), Some(&q(3, 1)));
        assert_eq!(m.get(5, 3, &r), Some(&q(5, 2)));
        assert_eq!(m.get(4, 5, &r), None);
    }

    #[test]
    fn example_tree_column() {
        let x = solve_column(&example_tree(), 5, &one()).unwrap();
        assert_eq!(x, vec![q(3, 34), q(5, 68), q(5, 68), q(3, 17), q(5, 34), q(15, 34)]);
    }

    #[test]
    fn star_center_column() {
        for n in 2..12 {
            let x = solve_column(&families::star(n).unwrap(), n - 1, &one()).unwrap();
            let np1 = n as i64 + 1;
            assert_eq!(x[n - 1], q(2, np1));
            for xj in &x[..n - 1] {
                assert_eq!(*xj, q(1, np1));
            }
        }
    }

    #[test]
    fn pendant_multiplier_is_one_plus_inverse_h() {
        let t = families::random_tree(25, 4).unwrap();
        let h = q(2, 7);
        for root in 0..25 {
            let r = orient(&t, root).unwrap();
            let m = multipliers(&r, &t.degrees(), &h).unwrap();
            for (_, k, mk) in m.iter(&r) {
                assert!(*mk > one());
                if t.degree(k) == 1 {
                    assert_eq!(*mk, q(9, 2));
                }
            }
        }
    }

    #[test]
    fn single_vertex_and_edge() {
        let g = Graph::empty(1);
        assert_eq!(solve_column(&g, 0, &q(3, 1)).unwrap(), vec![one()]);
        let p2 = families::path(2).unwrap();
        // (I + h L)^{-1} for P_2 is [[1+h, h], [h, 1+h]] / (1 + 2h).
        let h = q(1, 2);
        assert_eq!(solve_column(&p2, 0, &h).unwrap(), vec![q(3, 4), q(1, 4)]);
    }

    #[test]
    fn h_general_matches_dense() {
        let t = families::random_tree(30, 9).unwrap();
        for h in [0.1, 1.0, 10.0] {
            let tree = compute_b_tree(&t, &h).unwrap();
            let dense = crate::dense::compute_b_dense(&t, h).unwrap();
            assert!(tree.matrix.max_abs_diff(&dense.matrix) < 1e-12, "h = {h}");
        }
    }

    #[test]
    fn op_count_is_linear() {
        let t = families::random_tree(1000, 1).unwrap();
        let (_, stats) = solve_column_with_stats(&t, 0, &1.0).unwrap();
        // Each edge is touched a constant number of times.
        assert!(stats.ops <= 6 * 1000 && stats.ops >= 1000);
    }

    #[test]
    fn factorization_solves_arbitrary_rhs() {
        let t = families::random_tree(40, 2).unwrap();
        let h = q(3, 5);
        let f = TreeFactorization::new(&t, &h).unwrap();
        let m = SymMatrix::<Rational>::modified_laplacian(&t, &h).unwrap();
        let b: Vec<Rational> = (0..40).map(|k| q(k as i64 * 7 % 11 - 5, 3)).collect();
        let x = f.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        assert!(f.solve(&b[..3]).is_err());
    }

    #[test]
    fn non_tree_rejected() {
        assert!(matches!(compute_b_tree(&families::complete(4).unwrap(), &1.0), Err(Error::NotATree)));
        assert!(compute_b_tree(&families::path(3).unwrap(), &0.0).is_err());
    }
}
