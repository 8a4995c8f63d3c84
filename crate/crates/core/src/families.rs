//! Generators for the graph families used throughout the crate.
//!
//! Labeling conventions (0-based):
//! - `Path(n)`: vertices in order along the path.
//! - `Star(n)`: the center is the last index `n - 1`.
//! - `Broom(k, l)`: path `0..k`, then `l` pendants all attached to `k - 1`.
//! - `Starlike(n_1, .., n_{k-1})`: center `0`, arm centers `1..k`, then the
//!   pendants grouped by arm.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// How a degree-3 tree is produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum T3Spec {
    /// Root with three complete binary subtrees of height `depth - 1`.
    Depth(usize),
    /// Starting from `S_4`, `expansions` times attach two new leaves to a
    /// random leaf. Has `4 + 2 * expansions` vertices.
    Random { expansions: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphFamily {
    Empty(usize),
    Path(usize),
    Star(usize),
    Complete(usize),
    Broom(usize, usize),
    Starlike(Vec<usize>),
    Cone(Box<GraphFamily>),
    RandomTree {
        n: usize,
        seed: u64,
    },
    /// Random connected graph: a random spanning tree plus extra random edges,
    /// `m` edges in total.
    RandomConnected {
        n: usize,
        m: usize,
        seed: u64,
    },
    T3Tree(T3Spec),
}

impl GraphFamily {
    pub fn generate(&self) -> Result<Graph> {
        generate(self)
    }

    /// Parses a command-line family spec such as `["broom", "6", "5"]`.
    pub fn parse(args: &[String]) -> Result<Self> {
        let (name, rest) = args.split_first().ok_or_else(|| Error::InvalidParameter("missing family name".into()))?;
        let nums = || -> Result<Vec<u64>> {
            rest.iter()
                .map(|s| {
                    s.parse::<u64>().map_err(|_| Error::InvalidParameter(format!("not a non-negative integer: {s:?}")))
                })
                .collect()
        };
        let exact = |want: usize| -> Result<Vec<u64>> {
            let v = nums()?;
            if v.len() != want {
                return Err(Error::InvalidParameter(format!(
                    "family {name} takes {want} argument(s), got {}",
                    v.len()
                )));
            }
            Ok(v)
        };
        Ok(match name.as_str() {
            "empty" => GraphFamily::Empty(exact(1)?[0] as usize),
            "path" => GraphFamily::Path(exact(1)?[0] as usize),
            "star" => GraphFamily::Star(exact(1)?[0] as usize),
            "complete" => GraphFamily::Complete(exact(1)?[0] as usize),
            "broom" => {
                let v = exact(2)?;
                GraphFamily::Broom(v[0] as usize, v[1] as usize)
            }
            "starlike" => GraphFamily::Starlike(nums()?.into_iter().map(|x| x as usize).collect()),
            "cone" => GraphFamily::Cone(Box::new(GraphFamily::parse(rest)?)),
            "random-tree" => {
                let v = exact(2)?;
                GraphFamily::RandomTree { n: v[0] as usize, seed: v[1] }
            }
            "random-graph" => {
                let v = exact(3)?;
                GraphFamily::RandomConnected { n: v[0] as usize, m: v[1] as usize, seed: v[2] }
            }
            "t3" => GraphFamily::T3Tree(T3Spec::Depth(exact(1)?[0] as usize)),
            "t3-random" => {
                let v = exact(2)?;
                GraphFamily::T3Tree(T3Spec::Random { expansions: v[0] as usize, seed: v[1] })
            }
            other => return Err(Error::InvalidParameter(format!("unknown family {other:?}"))),
        })
    }
}

fn positive(name: &str, value: usize) -> Result<()> {
    if value == 0 {
        Err(Error::InvalidParameter(format!("{name} must be at least 1")))
    } else {
        Ok(())
    }
}

pub fn generate(family: &GraphFamily) -> Result<Graph> {
    match family {
        GraphFamily::Empty(n) => {
            positive("n", *n)?;
            Ok(Graph::empty(*n))
        }
        GraphFamily::Path(n) => path(*n),
        GraphFamily::Star(n) => star(*n),
        GraphFamily::Complete(n) => complete(*n),
        GraphFamily::Broom(k, l) => broom(*k, *l),
        GraphFamily::Starlike(arms) => starlike(arms),
        GraphFamily::Cone(base) => Ok(generate(base)?.cone()),
        GraphFamily::RandomTree { n, seed } => random_tree(*n, *seed),
        GraphFamily::RandomConnected { n, m, seed } => random_connected(*n, *m, *seed),
        GraphFamily::T3Tree(T3Spec::Depth(depth)) => t3_tree(*depth),
        GraphFamily::T3Tree(T3Spec::Random { expansions, seed }) => random_t3_tree(*expansions, *seed),
    }
}

pub fn path(n: usize) -> Result<Graph> {
    positive("n", n)?;
    Graph::new(n, (1..n).map(|i| (i - 1, i)))
}

pub fn star(n: usize) -> Result<Graph> {
    positive("n", n)?;
    Graph::new(n, (0..n.saturating_sub(1)).map(|i| (i, n - 1)))
}

pub fn complete(n: usize) -> Result<Graph> {
    positive("n", n)?;
    Graph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

pub fn broom(k: usize, l: usize) -> Result<Graph> {
    positive("k", k)?;
    positive("l", l)?;
    let edges = (1..k).map(|i| (i - 1, i)).chain((0..l).map(|q| (k - 1, k + q)));
    Graph::new(k + l, edges)
}

pub fn starlike(arms: &[usize]) -> Result<Graph> {
    if arms.is_empty() {
        return Err(Error::InvalidParameter("starlike tree needs at least one arm".into()));
    }
    for &a in arms {
        positive("arm size", a)?;
    }
    let k = arms.len() + 1;
    let n = k + arms.iter().sum::<usize>();
    let mut edges = Vec::with_capacity(n - 1);
    let mut next = k;
    for (idx, &size) in arms.iter().enumerate() {
        let center = idx + 1;
        edges.push((0, center));
        for _ in 0..size {
            edges.push((center, next));
            next += 1;
        }
    }
    Graph::new(n, edges)
}

/// Uniform random labeled tree decoded from a seeded Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    positive("n", n)?;
    if n <= 2 {
        return path(n);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    Graph::new(n, prufer_decode(n, &code))
}

fn prufer_decode(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    let mut remaining = vec![1usize; n];
    for &c in code {
        remaining[c] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> = (0..n).filter(|&v| remaining[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let Reverse(leaf) = leaves.pop().expect("Prüfer decoding always has a leaf");
        edges.push((leaf, c));
        remaining[c] -= 1;
        if remaining[c] == 1 {
            leaves.push(Reverse(c));
        }
    }
    let Reverse(a) = leaves.pop().expect("two leaves remain");
    let Reverse(b) = leaves.pop().expect("two leaves remain");
    edges.push((a, b));
    edges
}

pub fn random_connected(n: usize, m: usize, seed: u64) -> Result<Graph> {
    positive("n", n)?;
    let max_m = n * (n - 1) / 2;
    if m + 1 < n || m > max_m {
        return Err(Error::InvalidParameter(format!(
            "a connected graph on {n} vertices has between {} and {max_m} edges, got {m}",
            n - 1
        )));
    }
    let tree = random_tree(n, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut missing: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| !tree.has_edge(i, j)).collect();
    missing.shuffle(&mut rng);
    let extra = m - (n - 1);
    Graph::new(n, tree.edges().iter().copied().chain(missing.into_iter().take(extra)))
}

/// Root with three complete binary subtrees; every internal vertex has
/// degree 3. `depth = 1` gives `S_4`. Has `3 * 2^depth - 2` vertices.
pub fn t3_tree(depth: usize) -> Result<Graph> {
    positive("depth", depth)?;
    let mut edges = Vec::new();
    let mut frontier = Vec::new();
    for c in 1..=3 {
        edges.push((0, c));
        frontier.push(c);
    }
    let mut next = 4;
    for _ in 1..depth {
        let mut new_frontier = Vec::with_capacity(frontier.len() * 2);
        for &v in &frontier {
            for _ in 0..2 {
                edges.push((v, next));
                new_frontier.push(next);
                next += 1;
            }
        }
        frontier = new_frontier;
    }
    Graph::new(next, edges)
}

pub fn random_t3_tree(expansions: usize, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = vec![(0, 1), (0, 2), (0, 3)];
    let mut leaves = vec![1, 2, 3];
    let mut next = 4;
    for _ in 0..expansions {
        let idx = rng.gen_range(0..leaves.len());
        let leaf = leaves.swap_remove(idx);
        for _ in 0..2 {
            edges.push((leaf, next));
            leaves.push(next);
            next += 1;
        }
    }
    Graph::new(next, edges)
}
