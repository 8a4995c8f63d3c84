use std::ffi::{c_char, c_int, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use modlap_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(modlap_last_error()) }.to_string_lossy().into_owned()
}

fn graph(spec: &str) -> *mut ModlapGraph {
    let spec = CString::new(spec).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { modlap_graph_generate(spec.as_ptr(), &mut g) }, ModlapStatus::Ok);
    g
}

#[test]
fn p4_float_and_exact() {
    unsafe {
        let edges = [0usize, 1, 1, 2, 2, 3];
        let mut g = ptr::null_mut();
        assert_eq!(modlap_graph_from_edges(4, edges.as_ptr(), 3, &mut g), ModlapStatus::Ok);
        assert_eq!((modlap_graph_vertex_count(g), modlap_graph_edge_count(g), modlap_graph_is_tree(g)), (4, 3, 1));

        let mut b = ptr::null_mut();
        assert_eq!(modlap_compute(g, 1.0, ModlapEngine::Auto, &mut b), ModlapStatus::Ok);
        assert_eq!(modlap_matrix_dim(b), 4);
        let mut x = 0.0;
        assert_eq!(modlap_matrix_get(b, 0, 0, &mut x), ModlapStatus::Ok);
        assert!((x - 13.0 / 21.0).abs() < 1e-15);
        let mut buf = [0.0; 16];
        assert_eq!(modlap_matrix_copy(b, buf.as_mut_ptr(), 16), ModlapStatus::Ok);
        assert!((buf[3] - 1.0 / 21.0).abs() < 1e-15);
        assert_eq!(modlap_matrix_copy(b, buf.as_mut_ptr(), 15), ModlapStatus::OutOfRange);
        assert_eq!(modlap_matrix_get(b, 4, 0, &mut x), ModlapStatus::OutOfRange);
        assert!(last_error().contains("out of range"));
        modlap_matrix_free(b);

        let h = CString::new("1").unwrap();
        let mut json: *mut c_char = ptr::null_mut();
        assert_eq!(modlap_compute_exact_json(g, h.as_ptr(), ModlapEngine::Path, &mut json), ModlapStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_string();
        modlap_string_free(json);
        assert!(text.contains("\"engine\":\"path-closed-form\""));
        assert!(text.contains("[\"13/21\",\"5/21\",\"2/21\",\"1/21\"]"));
        modlap_graph_free(g);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut g = ptr::null_mut();
        let bad = CString::new("3 1\n0 7\n").unwrap();
        assert_eq!(modlap_graph_parse(bad.as_ptr(), &mut g), ModlapStatus::Parse);
        assert!(last_error().contains("out of range"));
        assert!(g.is_null());

        let spec = CString::new("star 0").unwrap();
        assert_eq!(modlap_graph_generate(spec.as_ptr(), &mut g), ModlapStatus::InvalidArgument);
        assert_eq!(modlap_graph_generate(ptr::null(), &mut g), ModlapStatus::NullPointer);

        let k4 = graph("complete 4");
        let mut b = ptr::null_mut();
        assert_eq!(modlap_compute(k4, 1.0, ModlapEngine::Tree, &mut b), ModlapStatus::EngineMismatch);
        assert_eq!(modlap_compute(k4, -1.0, ModlapEngine::Auto, &mut b), ModlapStatus::InvalidArgument);
        assert_eq!(modlap_compute(ptr::null(), 1.0, ModlapEngine::Auto, &mut b), ModlapStatus::NullPointer);
        assert_eq!(modlap_compute(k4, 2.0, ModlapEngine::Auto, &mut b), ModlapStatus::Ok);
        assert_eq!(last_error(), "");
        modlap_matrix_free(b);
        modlap_graph_free(k4);

        // Null handles are tolerated by the destructors and queries.
        modlap_graph_free(ptr::null_mut());
        modlap_matrix_free(ptr::null_mut());
        modlap_heat_solver_free(ptr::null_mut());
        modlap_string_free(ptr::null_mut());
        assert_eq!(modlap_graph_vertex_count(ptr::null()), 0);
    }
}

#[test]
fn check_suite() {
    unsafe {
        let t = graph("broom 6 5");
        let suite = CString::new("pendant").unwrap();
        let mut passed: c_int = -1;
        let mut json = ptr::null_mut();
        assert_eq!(modlap_check(t, 1.0, suite.as_ptr(), &mut passed, &mut json), ModlapStatus::Ok);
        assert_eq!(passed, 1);
        assert!(CStr::from_ptr(json).to_str().unwrap().contains("\"name\":\"pendant\""));
        modlap_string_free(json);
        let bad = CString::new("nope").unwrap();
        assert_eq!(modlap_check(t, 1.0, bad.as_ptr(), &mut passed, ptr::null_mut()), ModlapStatus::InvalidArgument);
        modlap_graph_free(t);
    }
}

#[test]
fn heat_steps() {
    unsafe {
        let p2 = graph("path 2");
        let mut s = ptr::null_mut();
        assert_eq!(modlap_heat_solver_new(p2, 1.0, ModlapEngine::Path, &mut s), ModlapStatus::EngineMismatch);
        assert_eq!(modlap_heat_solver_new(p2, 1.0, ModlapEngine::Auto, &mut s), ModlapStatus::Ok);
        let mut u = [1.0, 0.0];
        // In-place step.
        assert_eq!(modlap_heat_step(s, u.as_ptr(), u.as_mut_ptr(), 2), ModlapStatus::Ok);
        assert!((u[0] - 2.0 / 3.0).abs() < 1e-15 && (u[1] - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(modlap_heat_step(s, u.as_ptr(), u.as_mut_ptr(), 1), ModlapStatus::OutOfRange);
        modlap_heat_solver_free(s);
        modlap_graph_free(p2);
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(modlap_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/modlap.h")).unwrap();
    for f in [
        "modlap_last_error",
        "modlap_graph_from_edges",
        "modlap_graph_parse",
        "modlap_graph_generate",
        "modlap_compute",
        "modlap_compute_exact_json",
        "modlap_matrix_copy",
        "modlap_check",
        "modlap_heat_solver_new",
        "modlap_heat_step",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct ModlapGraph ModlapGraph;"));
    assert!(header.contains("MODLAP_STATUS_ENGINE_MISMATCH = 6"));
}

/// Compiles and runs a C program against the header and the static library.
#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // tests run from target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libmodlap_ffi.a");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if !lib.exists() || Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: static library or C compiler unavailable");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("smoke");
    let status = Command::new(&cc)
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let run = Command::new(&out).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "b00=0.619047619047619 omega=0.047619047619048");
}
