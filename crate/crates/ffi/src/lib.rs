//! C ABI over `modlap`.
//!
//! Objects are opaque handles created by `*_new`/`*_from_*` functions and
//! released with the matching `*_free`. Every fallible call returns a
//! [`ModlapStatus`]; on failure a description is available from
//! [`modlap_last_error`] on the same thread. Strings returned through `char**`
//! out parameters are owned by the caller and freed with
//! [`modlap_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use modlap::analysis::{run_suite, Suite};
use modlap::compute::{compute_exact, compute_float, EngineRequest};
use modlap::families::GraphFamily;
use modlap::heat::{make_heat_solver, EngineChoice, HeatSolver};
use modlap::scalar::parse_rational;
use modlap::{DsMatrix, Error, Graph};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModlapStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    InvalidArgument = 3,
    NotATree = 4,
    NotConnected = 5,
    EngineMismatch = 6,
    Numerical = 7,
    OutOfRange = 8,
    Io = 9,
    Panic = 10,
}

/// Engine selection; `Auto` uses the tree engine for trees.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModlapEngine {
    Auto = 0,
    Dense = 1,
    Tree = 2,
    Path = 3,
}

impl From<ModlapEngine> for EngineRequest {
    fn from(e: ModlapEngine) -> Self {
        match e {
            ModlapEngine::Auto => EngineRequest::Auto,
            ModlapEngine::Dense => EngineRequest::Dense,
            ModlapEngine::Tree => EngineRequest::Tree,
            ModlapEngine::Path => EngineRequest::Path,
        }
    }
}

/// Opaque simple graph.
pub struct ModlapGraph(Graph);

/// Opaque float matrix `B`.
pub struct ModlapMatrix(DsMatrix<f64>);

/// Opaque reusable heat-step solver.
pub struct ModlapHeatSolver(HeatSolver);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> ModlapStatus {
    match e {
        Error::Parse(_) => ModlapStatus::Parse,
        Error::NotATree | Error::NotAPath | Error::DegreeCondition { .. } => ModlapStatus::NotATree,
        Error::NotConnected => ModlapStatus::NotConnected,
        Error::EngineMismatch { .. } => ModlapStatus::EngineMismatch,
        Error::NotPositiveDefinite { .. } | Error::Singular(_) | Error::EigenNoConvergence(_) => {
            ModlapStatus::Numerical
        }
        Error::VertexOutOfRange { .. } | Error::IndexOutOfRange { .. } | Error::DimensionMismatch { .. } => {
            ModlapStatus::OutOfRange
        }
        Error::Io(_) => ModlapStatus::Io,
        _ => ModlapStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (ModlapStatus, String)>) -> ModlapStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            ModlapStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            ModlapStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (ModlapStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (ModlapStatus, String) {
    (ModlapStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (ModlapStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (ModlapStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn out_string(out: *mut *mut c_char, s: String) -> Result<(), (ModlapStatus, String)> {
    let c = CString::new(s).map_err(|_| (ModlapStatus::Panic, "interior nul".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn modlap_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn modlap_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must come from this library and not be freed already; null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn modlap_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a graph on `n` vertices from `m` edges stored as `2m` indices.
///
/// # Safety
/// `edges` must point to `2 * m` readable values (may be null when `m = 0`);
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn modlap_graph_from_edges(
    n: usize,
    edges: *const usize,
    m: usize,
    out: *mut *mut ModlapGraph,
) -> ModlapStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if edges.is_null() && m > 0 {
            return Err(null("edges"));
        }
        let flat = if m == 0 { &[][..] } else { std::slice::from_raw_parts(edges, 2 * m) };
        let g = Graph::new(n, flat.chunks_exact(2).map(|e| (e[0], e[1]))).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(ModlapGraph(g)));
        Ok(())
    })
}

/// Parses the `n m` header plus `u v` lines edge-list format.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn modlap_graph_parse(text: *const c_char, out: *mut *mut ModlapGraph) -> ModlapStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let g = Graph::parse_edge_list(str_arg(text, "text")?).map_err(|e| lib_err(e.into()))?;
        *out = Box::into_raw(Box::new(ModlapGraph(g)));
        Ok(())
    })
}

/// Generates a family member from a spec such as `"broom 6 5"`.
///
/// # Safety
/// `spec` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn modlap_graph_generate(spec: *const c_char, out: *mut *mut ModlapGraph) -> ModlapStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let words: Vec<String> = str_arg(spec, "spec")?.split_whitespace().map(String::from).collect();
        let g = GraphFamily::parse(&words).and_then(|f| f.generate()).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(ModlapGraph(g)));
        Ok(())
    })
}

/// # Safety
/// `g` must come from this library and not be freed already; null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn modlap_graph_free(g: *mut ModlapGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, or 0 for null.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn modlap_graph_vertex_count(g: *const ModlapGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// Edge count, or 0 for null.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn modlap_graph_edge_count(g: *const ModlapGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.m())
}

/// Returns 1 for a tree, 0 otherwise (including null).
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn modlap_graph_is_tree(g: *const ModlapGraph) -> c_int {
    g.as_ref().is_some_and(|g| g.0.is_tree()) as c_int
}

/// Computes `B = (I + h L)^{-1}` in floating point.
///
/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn modlap_compute(
    g: *const ModlapGraph,
    h: f64,
    engine: ModlapEngine,
    out: *mut *mut ModlapMatrix,
) -> ModlapStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let b = compute_float(&g.0, h, engine.into()).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(ModlapMatrix(b)));
        Ok(())
    })
}

/// Computes `B` exactly and returns it as JSON with `"p/q"` entries. `h` is
/// a decimal or fraction string such as `"1"` or `"1/2"`.
///
/// # Safety
/// `g` must be a live graph handle, `h` nul-terminated and `out_json`
/// writable. Free the result with [`modlap_string_free`].
#[no_mangle]
pub unsafe extern "C" fn modlap_compute_exact_json(
    g: *const ModlapGraph,
    h: *const c_char,
    engine: ModlapEngine,
    out_json: *mut *mut c_char,
) -> ModlapStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        if out_json.is_null() {
            return Err(null("out_json"));
        }
        let h = parse_rational(str_arg(h, "h")?).map_err(lib_err)?;
        let b = compute_exact(&g.0, &h, engine.into()).map_err(lib_err)?;
        out_string(out_json, b.to_json())
    })
}

/// # Safety
/// `b` must come from this library and not be freed already; null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn modlap_matrix_free(b: *mut ModlapMatrix) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Matrix dimension, or 0 for null.
///
/// # Safety
/// `b` must be null or a live matrix handle.
#[no_mangle]
pub unsafe extern "C" fn modlap_matrix_dim(b: *const ModlapMatrix) -> usize {
    b.as_ref().map_or(0, |b| b.0.n())
}

/// Reads entry `(i, j)`.
///
/// # Safety
/// `b` must be a live matrix handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn modlap_matrix_get(b: *const ModlapMatrix, i: usize, j: usize, out: *mut f64) -> ModlapStatus {
    guard(|| {
        let b = b.as_ref().ok_or_else(|| null("matrix"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let n = b.0.n();
        if i >= n || j >= n {
            return Err(lib_err(Error::IndexOutOfRange { i, j, n }));
        }
        *out = *b.0.get(i, j);
        Ok(())
    })
}

/// Copies the matrix row-major into `buf`, which must hold `len >= n * n`
/// values.
///
/// # Safety
/// `b` must be a live matrix handle and `buf` writable for `len` values.
#[no_mangle]
pub unsafe extern "C" fn modlap_matrix_copy(b: *const ModlapMatrix, buf: *mut f64, len: usize) -> ModlapStatus {
    guard(|| {
        let b = b.as_ref().ok_or_else(|| null("matrix"))?;
        if buf.is_null() {
            return Err(null("buf"));
        }
        let n = b.0.n();
        if len < n * n {
            return Err(lib_err(Error::DimensionMismatch { expected: n * n, found: len }));
        }
        let dst = std::slice::from_raw_parts_mut(buf, n * n);
        for (row, chunk) in b.0.matrix.rows().zip(dst.chunks_exact_mut(n)) {
            chunk.copy_from_slice(row);
        }
        Ok(())
    })
}

/// Runs a check suite in floating point. `passed` receives 1 when every
/// check passes; `out_json` (optional, may be null) receives the report.
///
/// # Safety
/// `g` must be a live graph handle, `suite` nul-terminated, `passed`
/// writable; `out_json` null or writable.
#[no_mangle]
pub unsafe extern "C" fn modlap_check(
    g: *const ModlapGraph,
    h: f64,
    suite: *const c_char,
    passed: *mut c_int,
    out_json: *mut *mut c_char,
) -> ModlapStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        if passed.is_null() {
            return Err(null("passed"));
        }
        let suite: Suite = str_arg(suite, "suite")?.parse().map_err(lib_err)?;
        let b = compute_float(&g.0, h, EngineRequest::Auto).map_err(lib_err)?;
        let report = run_suite(&g.0, &b, suite).map_err(lib_err)?;
        *passed = report.passed() as c_int;
        if !out_json.is_null() {
            out_string(out_json, serde_json::to_string(&report).expect("serializable"))?;
        }
        Ok(())
    })
}

/// Factors `I + h L` once for repeated heat steps. `Path` is not accepted.
///
/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn modlap_heat_solver_new(
    g: *const ModlapGraph,
    h: f64,
    engine: ModlapEngine,
    out: *mut *mut ModlapHeatSolver,
) -> ModlapStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let choice = match engine {
            ModlapEngine::Auto => EngineChoice::Auto,
            ModlapEngine::Dense => EngineChoice::Dense,
            ModlapEngine::Tree => EngineChoice::Tree,
            ModlapEngine::Path => {
                return Err((ModlapStatus::EngineMismatch, "heat steps use the dense or tree engine".into()))
            }
        };
        let s = make_heat_solver(&g.0, h, choice).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(ModlapHeatSolver(s)));
        Ok(())
    })
}

/// One implicit-Euler step: solves `(I + h L) u_next = u`. `u` and
/// `u_next` hold `n` values and may alias.
///
/// # Safety
/// `s` must be a live solver; `u` readable and `u_next` writable for `n`
/// values.
#[no_mangle]
pub unsafe extern "C" fn modlap_heat_step(
    s: *const ModlapHeatSolver,
    u: *const f64,
    u_next: *mut f64,
    n: usize,
) -> ModlapStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("solver"))?;
        if u.is_null() || u_next.is_null() {
            return Err(null("vector"));
        }
        let input = std::slice::from_raw_parts(u, n).to_vec();
        let next = s.0.apply(&input).map_err(lib_err)?;
        ptr::copy_nonoverlapping(next.as_ptr(), u_next, n);
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be freed already; null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn modlap_heat_solver_free(s: *mut ModlapHeatSolver) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}
