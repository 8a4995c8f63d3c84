//! Simple undirected graphs, the edge-list text format, and basic queries.
//!
//! Vertices are `0..n`. Labels in the literature start at 1; label `k`
//! corresponds to index `k - 1` here.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, ParseError, Result};

/// Immutable simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

/// Structural summary used to guard connectivity- and tree-dependent checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub n: usize,
    pub m: usize,
    pub is_connected: bool,
    pub is_tree: bool,
    pub pendant_vertices: Vec<usize>,
    pub degrees: Vec<usize>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range ids.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidParameter(format!("duplicate edge {u} {v}")));
            }
        }
        Ok(Self::from_edge_set(n, set))
    }

    fn from_edge_set(n: usize, set: BTreeSet<(usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &set {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph { n, adjacency, edges: set.into_iter().collect() }
    }

    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph { n, adjacency: vec![Vec::new(); n], edges: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Reads the edge-list format: a header `"n m"`, then `m` lines `"u v"`.
    /// `#` starts a comment; blank lines are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(idx, raw)| (idx + 1, raw.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
        let (n, m) = parse_pair(hline, header)?;

        let mut set = BTreeSet::new();
        let mut found = 0;
        for (line, content) in lines {
            let (u, v) = parse_pair(line, content)?;
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(ParseError::IndexOutOfRange { line, vertex, n });
                }
            }
            if u == v {
                return Err(ParseError::SelfLoop { line, vertex: u });
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(ParseError::DuplicateEdge { line, u, v });
            }
            found += 1;
        }
        if found != m {
            return Err(ParseError::EdgeCountMismatch { expected: m, found });
        }
        Ok(Self::from_edge_set(n, set))
    }

    /// Writes the edge-list format understood by [`Graph::parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.m());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Shortest-path edge counts from `source`; `None` marks unreachable.
    pub fn bfs_distances(&self, source: usize) -> Result<Vec<Option<usize>>> {
        if source >= self.n {
            return Err(Error::VertexOutOfRange { vertex: source, n: self.n });
        }
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    /// Connected component label per vertex, labels in order of first vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adjacency[u] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.m() + 1 == self.n && self.is_connected()
    }

    pub fn classify(&self) -> Classification {
        let is_connected = self.is_connected();
        let degrees = self.degrees();
        Classification {
            n: self.n,
            m: self.m(),
            is_connected,
            is_tree: self.n >= 1 && is_connected && self.m() + 1 == self.n,
            pendant_vertices: (0..self.n).filter(|&v| degrees[v] == 1).collect(),
            degrees,
        }
    }

    /// Adds a vertex `n` adjacent to every existing vertex.
    pub fn cone(&self) -> Graph {
        let w = self.n;
        let set: BTreeSet<_> = self.edges.iter().copied().chain((0..w).map(|v| (v, w))).collect();
        Self::from_edge_set(w + 1, set)
    }

    /// For a path graph, its vertices from one endpoint to the other, starting
    /// at the smaller-indexed endpoint. `None` if the graph is not a path.
    pub fn path_order(&self) -> Option<Vec<usize>> {
        if self.n == 1 {
            return Some(vec![0]);
        }
        if !self.is_tree() || self.adjacency.iter().any(|a| a.len() > 2) {
            return None;
        }
        let start = (0..self.n).find(|&v| self.degree(v) == 1)?;
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while order.len() < self.n {
            let next = *self.adjacency[cur].iter().find(|&&w| w != prev)?;
            order.push(next);
            prev = cur;
            cur = next;
        }
        Some(order)
    }

    pub fn is_path(&self) -> bool {
        self.path_order().is_some()
    }

    /// A tree with a vertex adjacent to all others (includes `P_2`, `P_3`).
    pub fn is_star(&self) -> bool {
        self.is_tree() && (self.n <= 2 || self.adjacency.iter().any(|a| a.len() == self.n - 1))
    }

    pub fn is_complete(&self) -> bool {
        self.m() == self.n * self.n.saturating_sub(1) / 2
    }
}

fn parse_pair(line: usize, content: &str) -> Result<(usize, usize), ParseError> {
    let malformed = || ParseError::Malformed { line, content: content.to_string() };
    let mut parts = content.split_whitespace();
    let a = parts.next().and_then(|t| t.parse().ok()).ok_or_else(malformed)?;
    let b = parts.next().and_then(|t| t.parse().ok()).ok_or_else(malformed)?;
    if parts.next().is_some() {
        return Err(malformed());
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_smallest_tree() {
        let g = Graph::parse_edge_list("2 1\n0 1").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges(), &[(0, 1)]);
    }

    #[test]
    fn parses_path_with_comments() {
        let g = Graph::parse_edge_list("# P4\n4 3\n0 1 # first\n\n1 2\n2 3\n").unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(g.degrees(), vec![1, 2, 2, 1]);
    }

    #[test]
    fn parse_errors_are_distinct() {
        assert_eq!(
            Graph::parse_edge_list("3 3\n0 1\n0 1\n1 2"),
            Err(ParseError::DuplicateEdge { line: 3, u: 0, v: 1 })
        );
        assert_eq!(Graph::parse_edge_list("3 1\n1 1"), Err(ParseError::SelfLoop { line: 2, vertex: 1 }));
        assert_eq!(Graph::parse_edge_list("3 1\n0 3"), Err(ParseError::IndexOutOfRange { line: 2, vertex: 3, n: 3 }));
        assert!(matches!(Graph::parse_edge_list("3 1\n0 x"), Err(ParseError::Malformed { line: 2, .. })));
        assert!(matches!(Graph::parse_edge_list("3 1\n0 1 2"), Err(ParseError::Malformed { .. })));
        assert_eq!(Graph::parse_edge_list("3 2\n0 1"), Err(ParseError::EdgeCountMismatch { expected: 2, found: 1 }));
        assert_eq!(Graph::parse_edge_list("# nothing\n"), Err(ParseError::MissingHeader));
        // 1 -> 0 duplicates 0 -> 1
        assert!(matches!(Graph::parse_edge_list("2 2\n0 1\n1 0"), Err(ParseError::DuplicateEdge { .. })));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::new(5, [(3, 1), (0, 4), (1, 2)]).unwrap();
        assert_eq!(g.to_edge_list(), "5 3\n0 4\n1 2\n1 3\n");
        assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn distances() {
        let p4 = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(p4.bfs_distances(0).unwrap(), vec![Some(0), Some(1), Some(2), Some(3)]);
        let two = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.bfs_distances(0).unwrap(), vec![Some(0), Some(1), None, None]);
        assert!(p4.bfs_distances(4).is_err());
    }

    #[test]
    fn classification() {
        let p5 = Graph::new(5, (0..4).map(|i| (i, i + 1))).unwrap();
        let c = p5.classify();
        assert!(c.is_tree && c.is_connected);
        assert_eq!(c.pendant_vertices, vec![0, 4]);

        let k4 = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let c = k4.classify();
        assert!(c.is_connected && !c.is_tree);
        assert!(c.pendant_vertices.is_empty());
        assert!(k4.is_complete());

        let two = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!two.classify().is_connected);
        assert!(!two.is_tree());
    }

    #[test]
    fn cone_of_small_graphs() {
        let p2 = Graph::new(2, [(0, 1)]).unwrap();
        let k3 = p2.cone();
        assert!(k3.is_complete() && k3.n() == 3);

        let s4 = Graph::empty(3).cone();
        assert!(s4.is_star() && s4.n() == 4);
        assert_eq!(s4.degree(3), 3);
    }

    #[test]
    fn path_order_detection() {
        let g = Graph::new(4, [(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(g.path_order(), Some(vec![1, 3, 0, 2]));
        let star = Graph::new(4, [(0, 3), (1, 3), (2, 3)]).unwrap();
        assert_eq!(star.path_order(), None);
        assert!(star.is_star());
        assert_eq!(Graph::empty(1).path_order(), Some(vec![0]));
        assert_eq!(Graph::empty(2).path_order(), None);
    }
}
