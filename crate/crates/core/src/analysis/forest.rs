//! Combinatorial oracle: rooted spanning forests.
//!
//! For `h = 1`, `det(I + L) = xi(G)` counts rooted spanning forests and
//! `b_ij = xi_ji / xi(G)`, where `xi_ji` counts those in which `i` and `j`
//! share a tree rooted at `j`. Both are obtained here by brute-force
//! enumeration of edge subsets that form forests.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::SymMatrix;
use crate::scalar::Rational;

/// Enumeration is exponential in the edge count; larger inputs are refused.
pub const MAX_ORACLE_EDGES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestCount {
    pub n: usize,
    /// Number of rooted spanning forests.
    pub xi_total: u64,
    /// `xi_pair[i][j]`: forests where `i` and `j` share a tree rooted at `j`.
    pub xi_pair: Vec<Vec<u64>>,
}

impl ForestCount {
    /// `B` at `h = 1` as exact fractions `xi_ji / xi`.
    pub fn to_matrix(&self) -> SymMatrix<Rational> {
        let total = BigInt::from(self.xi_total);
        SymMatrix::from_upper_fn(self.n, |i, j| Rational::new(BigInt::from(self.xi_pair[j][i]), total.clone()))
    }
}

/// Union-find with an undo log, no path compression.
struct RollbackDsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    log: Vec<usize>,
}

impl RollbackDsu {
    fn new(n: usize) -> Self {
        RollbackDsu { parent: (0..n).collect(), size: vec![1; n], log: Vec::new() }
    }

    fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.log.push(rb);
        true
    }

    fn undo(&mut self) {
        let rb = self.log.pop().expect("undo without union");
        let ra = self.parent[rb];
        self.size[ra] -= self.size[rb];
        self.parent[rb] = rb;
    }
}

struct Enumerator<'a> {
    edges: &'a [(usize, usize)],
    dsu: RollbackDsu,
    count: ForestCount,
}

impl Enumerator<'_> {
    fn visit(&mut self, e: usize) {
        if e == self.edges.len() {
            self.tally();
            return;
        }
        self.visit(e + 1);
        let (u, v) = self.edges[e];
        if self.dsu.union(u, v) {
            self.visit(e + 1);
            self.dsu.undo();
        }
    }

    /// A forest with components `C` has `prod |C|` rootings; `i, j` in the
    /// same `C` with root `j` account for `prod |C| / |C|` of them.
    fn tally(&mut self) {
        let n = self.count.n;
        let roots: Vec<usize> = (0..n).map(|v| self.dsu.find(v)).collect();
        let product: u64 = (0..n).filter(|&v| roots[v] == v).map(|v| self.dsu.size[v] as u64).product();
        self.count.xi_total += product;
        for i in 0..n {
            let w = product / self.dsu.size[roots[i]] as u64;
            for j in 0..n {
                if roots[j] == roots[i] {
                    self.count.xi_pair[i][j] += w;
                }
            }
        }
    }
}

pub fn forest_count_oracle(g: &Graph) -> Result<ForestCount> {
    if g.m() > MAX_ORACLE_EDGES {
        return Err(Error::TooManyEdges { m: g.m(), max: MAX_ORACLE_EDGES });
    }
    let n = g.n();
    let mut en = Enumerator {
        edges: g.edges(),
        dsu: RollbackDsu::new(n),
        count: ForestCount { n, xi_total: 0, xi_pair: vec![vec![0; n]; n] },
    };
    en.visit(0);
    Ok(en.count)
}

/// Fraction-free Gaussian elimination over the integers.
pub fn bareiss_determinant(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `det(I + L_G)`.
pub fn det_modified_laplacian(g: &Graph) -> BigInt {
    let n = g.n();
    let mut rows = vec![vec![BigInt::zero(); n]; n];
    for (v, row) in rows.iter_mut().enumerate() {
        row[v] = BigInt::from(1 + g.degree(v));
    }
    for &(u, v) in g.edges() {
        rows[u][v] = BigInt::from(-1);
        rows[v][u] = BigInt::from(-1);
    }
    bareiss_determinant(&rows)
}
