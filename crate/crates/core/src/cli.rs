//! The `modlap` command-line front end.
//!
//! Exit codes: 0 on success (or all checks passing), 1 when a check fails,
//! 2 on usage or input errors.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{self, centrality, Suite};
use crate::compute::{compute_exact, compute_float, EngineRequest};
use crate::dense::Cholesky;
use crate::dsmatrix::DsMatrix;
use crate::error::{Error, Result};
use crate::families::{self, GraphFamily};
use crate::graph::Graph;
use crate::heat::{self, EngineChoice};
use crate::matrix::modified_laplacian;
use crate::path::path_last_column;
use crate::scalar::{parse_rational, rational_to_f64, Rational, Scalar};
use crate::tree::solve_column;

#[derive(Debug, Parser)]
#[command(name = "modlap", version, about = "Doubly stochastic inverse (I + hL)^-1 of a graph")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated graph as an edge list.
    Gen {
        /// Family name and integer parameters, e.g. `broom 6 5`.
        #[arg(required = true, num_args = 1..)]
        family: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute the full matrix B.
    Compute {
        graph: PathBuf,
        /// Step parameter: integer, decimal or `p/q`.
        #[arg(long, default_value = "1")]
        h: String,
        /// Exact rational arithmetic.
        #[arg(long)]
        exact: bool,
        /// auto, dense, tree or path.
        #[arg(long, default_value = "auto")]
        engine: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run property checks and print a JSON report.
    Check {
        graph: PathBuf,
        #[arg(long, default_value = "1")]
        h: String,
        #[arg(long)]
        exact: bool,
        /// all, a group (structure, tree, path, bounds, centrality) or a
        /// single check name.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value = "auto")]
        engine: String,
    },
    /// Simulate implicit-Euler heat diffusion.
    Heat {
        graph: PathBuf,
        #[arg(long, default_value = "1")]
        h: String,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        /// `delta:k`, `uniform`, or a file of n values.
        #[arg(long, default_value = "delta:0")]
        u0: String,
        #[arg(long, default_value_t = 1)]
        record_every: usize,
        /// auto, dense or tree.
        #[arg(long, default_value = "auto")]
        engine: String,
        /// Trajectory CSV destination (standard output if absent).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Summary CSV destination.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Forest distances and remoteness ranking.
    Centrality {
        graph: PathBuf,
        #[arg(long, default_value = "1")]
        h: String,
        #[arg(long)]
        exact: bool,
    },
    /// Time the engines and print a CSV table.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "1000,2000,4000")]
        sizes: Vec<usize>,
        /// Any of tree, dense, path.
        #[arg(long, value_delimiter = ',', default_value = "tree")]
        engine: Vec<String>,
        /// path or random-tree.
        #[arg(long, default_value = "path")]
        family: String,
        /// Columns averaged for the per-column time.
        #[arg(long, default_value_t = 5)]
        columns: usize,
        /// Also time the full matrix.
        #[arg(long)]
        full: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// Runs the CLI with the process arguments and returns the exit code.
pub fn main() -> i32 {
    run_from(std::env::args_os())
}

pub fn run_from<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path)?;
    Ok(Graph::parse_edge_list(&text)?)
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn parse_h(text: &str) -> Result<Rational> {
    let h = parse_rational(text)?;
    if h <= Rational::from_integer(0.into()) {
        return Err(Error::NonPositiveStep(text.to_string()));
    }
    Ok(h)
}

fn run(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Gen { family, output } => {
            let g = GraphFamily::parse(&family)?.generate()?;
            emit(output.as_deref(), &g.to_edge_list())?;
            Ok(0)
        }
        Command::Compute { graph, h, exact, engine, format, output } => {
            let g = read_graph(&graph)?;
            let h = parse_h(&h)?;
            let req: EngineRequest = engine.parse()?;
            let text = if exact {
                render(&compute_exact(&g, &h, req)?, format)
            } else {
                render(&compute_float(&g, rational_to_f64(&h), req)?, format)
            };
            emit(output.as_deref(), &text)?;
            Ok(0)
        }
        Command::Check { graph, h, exact, suite, engine } => {
            let g = read_graph(&graph)?;
            let h = parse_h(&h)?;
            let suite: Suite = suite.parse()?;
            let req: EngineRequest = engine.parse()?;
            let report = if exact {
                analysis::run_suite(&g, &compute_exact(&g, &h, req)?, suite)?
            } else {
                analysis::run_suite(&g, &compute_float(&g, rational_to_f64(&h), req)?, suite)?
            };
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Heat { graph, h, steps, u0, record_every, engine, output, summary } => {
            let g = read_graph(&graph)?;
            let h = rational_to_f64(&parse_h(&h)?);
            let u = match heat::parse_initial(&u0, g.n())? {
                Some(u) => u,
                None => heat::parse_vector(&fs::read_to_string(&u0)?)?,
            };
            let solver = heat::make_heat_solver(&g, h, engine.parse::<EngineChoice>()?)?;
            let traj = heat::simulate_with(&solver, u, steps, record_every)?;
            emit(output.as_deref(), &traj.to_csv())?;
            if let Some(p) = summary {
                fs::write(p, traj.summary_csv())?;
            }
            Ok(0)
        }
        Command::Centrality { graph, h, exact } => {
            let g = read_graph(&graph)?;
            if !g.is_connected() {
                return Err(Error::NotConnected);
            }
            let h = parse_h(&h)?;
            let text = if exact {
                centrality_json(&compute_exact(&g, &h, EngineRequest::Auto)?)
            } else {
                centrality_json(&compute_float(&g, rational_to_f64(&h), EngineRequest::Auto)?)
            };
            println!("{text}");
            Ok(0)
        }
        Command::Bench { sizes, engine, family, columns, full, seed } => {
            let table = bench(&sizes, &engine, &family, columns.max(1), full, seed)?;
            print!("{table}");
            Ok(0)
        }
    }
}

fn render<T: Scalar>(b: &DsMatrix<T>, format: Format) -> String {
    match format {
        Format::Json => b.to_json(),
        Format::Csv => b.to_csv(),
    }
}

#[derive(Serialize)]
struct Pair {
    pair: [usize; 2],
    value: f64,
}

#[derive(Serialize)]
struct CentralityOutput {
    n: usize,
    mode: &'static str,
    remoteness: Vec<f64>,
    /// Vertices ordered from least to most remote.
    ranking: Vec<usize>,
    least_remote: Vec<usize>,
    min_diagonal: Vec<usize>,
    rho_min: Option<Pair>,
    rho_max: Option<Pair>,
}

fn centrality_json<T: Scalar>(b: &DsMatrix<T>) -> String {
    let rep = centrality::centrality_report(&b.matrix);
    let n = b.n();
    let mut ranking: Vec<usize> = (0..n).collect();
    ranking.sort_by(|&a, &c| rep.remoteness[a].partial_cmp(&rep.remoteness[c]).expect("finite").then(a.cmp(&c)));
    let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    let pick = |better: fn(&T, &T) -> bool| {
        pairs
            .clone()
            .reduce(|a, c| if better(rep.rho.get(c.0, c.1), rep.rho.get(a.0, a.1)) { c } else { a })
            .map(|(i, j)| Pair { pair: [i, j], value: rep.rho.get(i, j).to_f64() })
    };
    let out = CentralityOutput {
        n,
        mode: b.mode(),
        remoteness: rep.remoteness.iter().map(Scalar::to_f64).collect(),
        ranking,
        least_remote: rep.least_remote.clone(),
        min_diagonal: rep.min_diagonal.clone(),
        rho_min: pick(|a, b| a < b),
        rho_max: pick(|a, b| a > b),
    };
    serde_json::to_string_pretty(&out).expect("serializable")
}

fn time<R>(f: impl FnOnce() -> Result<R>) -> Result<f64> {
    let start = Instant::now();
    f()?;
    Ok(start.elapsed().as_secs_f64())
}

fn bench(sizes: &[usize], engines: &[String], family: &str, columns: usize, full: bool, seed: u64) -> Result<String> {
    let mut out = String::from("engine,family,n,per_column_seconds,full_matrix_seconds\n");
    for engine in engines {
        for &n in sizes {
            let g = match family {
                "path" => families::path(n)?,
                "random-tree" => families::random_tree(n, seed)?,
                other => return Err(Error::InvalidParameter(format!("unknown bench family {other:?}"))),
            };
            let k = columns.min(n);
            let (per_column, whole) = match engine.as_str() {
                "tree" => {
                    let t = time(|| (0..k).try_for_each(|i| solve_column(&g, i, &1.0).map(drop)))?;
                    let whole = if full { Some(time(|| compute_float(&g, 1.0, EngineRequest::Tree))?) } else { None };
                    (t / k as f64, whole)
                }
                "dense" => {
                    // One column costs a factorization plus a solve.
                    let t = time(|| {
                        let c = Cholesky::factor(&modified_laplacian(&g, 1.0)?)?;
                        let mut e = vec![0.0; n];
                        e[0] = 1.0;
                        c.solve(&e)
                    })?;
                    let whole = if full { Some(time(|| compute_float(&g, 1.0, EngineRequest::Dense))?) } else { None };
                    (t, whole)
                }
                "path" => {
                    if family != "path" {
                        return Err(Error::EngineMismatch {
                            engine: "path".into(),
                            reason: "graph is not a path".into(),
                        });
                    }
                    let t = time(|| path_last_column(n))?;
                    let whole = if full {
                        Some(time(|| compute_exact(&g, &Rational::from_integer(1.into()), EngineRequest::Path))?)
                    } else {
                        None
                    };
                    (t, whole)
                }
                other => return Err(Error::InvalidParameter(format!("unknown bench engine {other:?}"))),
            };
            let whole = whole.map(|w| format!("{w:.6e}")).unwrap_or_default();
            let _ = writeln!(out, "{engine},{family},{n},{per_column:.6e},{whole}");
        }
    }
    Ok(out)
}
