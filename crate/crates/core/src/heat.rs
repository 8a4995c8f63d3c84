//! Implicit-Euler heat diffusion: `(I + h L) u^{k+1} = u^k`.
//!
//! The scheme discretizes `du/dt = -L u`, so values spread toward the mean.
//! Each step applies `B = (I + h L)^{-1}`, which is doubly stochastic: mass
//! is conserved and every new value is a convex combination of old ones.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::dense::Cholesky;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::modified_laplacian;
use crate::scalar::ensure_positive;
use crate::tree::TreeFactorization;

#[derive(Debug, Clone, PartialEq)]
pub struct HeatState {
    pub u: Vec<f64>,
    pub step_index: usize,
    pub h: f64,
}

impl HeatState {
    pub fn new(u: Vec<f64>, h: f64) -> Result<Self> {
        ensure_positive(&h)?;
        if let Some(i) = u.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter(format!("initial value at vertex {i} is not finite")));
        }
        Ok(HeatState { u, step_index: 0, h })
    }

    pub fn mass(&self) -> f64 {
        self.u.iter().sum()
    }

    pub fn summary(&self) -> StepSummary {
        let n = self.u.len().max(1) as f64;
        let mean = self.mass() / n;
        StepSummary {
            step: self.step_index,
            mass: self.mass(),
            max: self.u.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            min: self.u.iter().copied().fold(f64::INFINITY, f64::min),
            dist_to_mean: self.u.iter().map(|x| (x - mean).powi(2)).sum::<f64>().sqrt(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EngineChoice {
    #[default]
    Auto,
    Dense,
    Tree,
}

impl FromStr for EngineChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(EngineChoice::Auto),
            "dense" => Ok(EngineChoice::Dense),
            "tree" => Ok(EngineChoice::Tree),
            other => Err(Error::InvalidParameter(format!("unknown heat engine {other:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
enum Factor {
    Dense(Cholesky),
    Tree(TreeFactorization<f64>),
}

/// Factorization of `I + h L`, computed once and reused by every step.
#[derive(Debug, Clone)]
pub struct HeatSolver {
    h: f64,
    n: usize,
    graph: Graph,
    factor: Factor,
}

impl HeatSolver {
    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `"tree"` or `"dense"`.
    pub fn engine(&self) -> &'static str {
        match self.factor {
            Factor::Dense(_) => "dense",
            Factor::Tree(_) => "tree",
        }
    }

    fn solve_once(&self, b: &[f64]) -> Result<Vec<f64>> {
        match &self.factor {
            Factor::Dense(c) => c.solve(b),
            Factor::Tree(t) => t.solve(b),
        }
    }

    /// `(I + h L) x`, using the sparse structure.
    pub fn operator(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|v| {
                let lx: f64 = self.graph.neighbors(v).iter().map(|&w| x[v] - x[w]).sum();
                x[v] + self.h * lx
            })
            .collect()
    }

    /// Solves `(I + h L) x = b` with one round of iterative refinement.
    pub fn apply(&self, b: &[f64]) -> Result<Vec<f64>> {
        if b.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: b.len() });
        }
        let mut x = self.solve_once(b)?;
        let r: Vec<f64> = b.iter().zip(self.operator(&x)).map(|(b, ax)| b - ax).collect();
        let dx = self.solve_once(&r)?;
        x.iter_mut().zip(dx).for_each(|(x, d)| *x += d);
        Ok(x)
    }
}

pub fn make_heat_solver(g: &Graph, h: f64, engine: EngineChoice) -> Result<HeatSolver> {
    ensure_positive(&h)?;
    let use_tree = match engine {
        EngineChoice::Auto => g.is_tree(),
        EngineChoice::Dense => false,
        EngineChoice::Tree if g.is_tree() => true,
        EngineChoice::Tree => {
            return Err(Error::EngineMismatch { engine: "tree".into(), reason: "graph is not a tree".into() })
        }
    };
    let factor = if use_tree {
        Factor::Tree(TreeFactorization::new(g, &h)?)
    } else {
        Factor::Dense(Cholesky::factor(&modified_laplacian(g, h)?)?)
    };
    Ok(HeatSolver { h, n: g.n(), graph: g.clone(), factor })
}

pub fn step(solver: &HeatSolver, s: &HeatState) -> Result<HeatState> {
    Ok(HeatState { u: solver.apply(&s.u)?, step_index: s.step_index + 1, h: solver.h })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepSummary {
    pub step: usize,
    pub mass: f64,
    pub max: f64,
    pub min: f64,
    /// Euclidean distance from `u` to its mean vector.
    pub dist_to_mean: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeatTrajectory {
    pub h: f64,
    pub engine: &'static str,
    /// Recorded states: step 0, every `record_every`-th step, and the last.
    pub states: Vec<HeatState>,
    /// Summary of every step, recorded or not.
    pub summaries: Vec<StepSummary>,
}

impl HeatTrajectory {
    /// `step,vertex,value` rows for the recorded states.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,vertex,value\n");
        for s in &self.states {
            for (v, x) in s.u.iter().enumerate() {
                let _ = writeln!(out, "{},{},{:.17e}", s.step_index, v, x);
            }
        }
        out
    }

    /// `step,mass,max,min,dist_to_mean` rows for the recorded states.
    pub fn summary_csv(&self) -> String {
        let mut out = String::from("step,mass,max,min,dist_to_mean\n");
        for s in &self.states {
            let m = s.summary();
            let _ = writeln!(out, "{},{:.17e},{:.17e},{:.17e},{:.17e}", m.step, m.mass, m.max, m.min, m.dist_to_mean);
        }
        out
    }

    pub fn last(&self) -> &HeatState {
        self.states.last().expect("trajectory always holds the initial state")
    }

    /// Geometric-mean per-step shrink of the distance to the mean.
    pub fn observed_rate(&self) -> Option<f64> {
        let first = self.summaries.first()?;
        let last = self.summaries.last()?;
        let k = last.step - first.step;
        (k > 0 && first.dist_to_mean > 0.0).then(|| (last.dist_to_mean / first.dist_to_mean).powf(1.0 / k as f64))
    }
}

pub fn simulate_with(solver: &HeatSolver, u0: Vec<f64>, steps: usize, record_every: usize) -> Result<HeatTrajectory> {
    if record_every == 0 {
        return Err(Error::InvalidParameter("record_every must be at least 1".into()));
    }
    let mut state = HeatState::new(u0, solver.h)?;
    if state.u.len() != solver.n {
        return Err(Error::DimensionMismatch { expected: solver.n, found: state.u.len() });
    }
    let mut summaries = vec![state.summary()];
    let mut states = vec![state.clone()];
    for k in 1..=steps {
        state = step(solver, &state)?;
        summaries.push(state.summary());
        if k % record_every == 0 || k == steps {
            states.push(state.clone());
        }
    }
    Ok(HeatTrajectory { h: solver.h, engine: solver.engine(), states, summaries })
}

pub fn simulate(g: &Graph, u0: Vec<f64>, h: f64, steps: usize, record_every: usize) -> Result<HeatTrajectory> {
    let solver = make_heat_solver(g, h, EngineChoice::Auto)?;
    simulate_with(&solver, u0, steps, record_every)
}

/// Slowest per-step contraction factor on the mean-zero subspace, measured
/// by power iteration: `u` is repeatedly stepped, re-centered and
/// renormalized, and the Rayleigh quotient `<u, Bu> / <u, u>` returned.
/// For connected graphs this converges to `1 / (1 + h a(G))`.
pub fn measure_contraction(solver: &HeatSolver, iterations: usize, seed: u64) -> Result<f64> {
    use rand::{Rng, SeedableRng};
    let n = solver.n;
    if n < 2 {
        return Err(Error::InvalidParameter("contraction needs at least 2 vertices".into()));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut u: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let center = |v: &mut Vec<f64>| {
        let mean = v.iter().sum::<f64>() / v.len() as f64;
        v.iter_mut().for_each(|x| *x -= mean);
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
    };
    center(&mut u);
    let mut rate = 0.0;
    for _ in 0..iterations.max(1) {
        let mut next = solver.apply(&u)?;
        rate = u.iter().zip(&next).map(|(a, b)| a * b).sum::<f64>();
        center(&mut next);
        u = next;
    }
    Ok(rate)
}

/// Initial condition: `delta:k`, `uniform`, or an explicit vector read
/// elsewhere.
pub fn parse_initial(spec: &str, n: usize) -> Result<Option<Vec<f64>>> {
    if spec == "uniform" {
        return Ok(Some(vec![1.0; n]));
    }
    if let Some(k) = spec.strip_prefix("delta:") {
        let k: usize = k.parse().map_err(|_| Error::InvalidParameter(format!("bad vertex in {spec:?}")))?;
        if k >= n {
            return Err(Error::VertexOutOfRange { vertex: k, n });
        }
        let mut u = vec![0.0; n];
        u[k] = 1.0;
        return Ok(Some(u));
    }
    Ok(None)
}

/// Whitespace- or comma-separated values.
pub fn parse_vector(text: &str) -> Result<Vec<f64>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|_| Error::InvalidParameter(format!("bad initial value {t:?}"))))
        .collect()
}
