use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn modlap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modlap")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// Generates `family` into `dir/name` and returns its path.
fn gen(dir: &TempDir, name: &str, family: &[&str]) -> PathBuf {
    let path = dir.path().join(name);
    let mut args = vec!["gen"];
    args.extend_from_slice(family);
    args.extend_from_slice(&["--output", path.to_str().unwrap()]);
    let o = modlap(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn gen_examples() {
    let o = modlap(&["gen", "path", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "4 3\n0 1\n1 2\n2 3\n");

    let o = modlap(&["gen", "broom", "6", "5"]);
    assert!(stdout(&o).starts_with("11 10\n"));

    let o = modlap(&["gen", "star", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("at least 1"));
}

#[test]
fn compute_examples() {
    let dir = TempDir::new().unwrap();
    let p4 = gen(&dir, "p4.txt", &["path", "4"]);
    let o = modlap(&["compute", p(&p4), "--exact"]);
    assert_eq!(
        stdout(&o),
        "{\"n\":4,\"h\":\"1/1\",\"mode\":\"exact\",\"engine\":\"tree\",\"rows\":[[\"13/21\",\"5/21\",\"2/21\",\"1/21\"],\
[\"5/21\",\"10/21\",\"4/21\",\"2/21\"],[\"2/21\",\"4/21\",\"10/21\",\"5/21\"],[\"1/21\",\"2/21\",\"5/21\",\"13/21\"]]}\n"
    );

    let s4 = gen(&dir, "star4.txt", &["star", "4"]);
    let o = modlap(&["compute", p(&s4), "--exact"]);
    assert!(stdout(&o).contains("[\"1/5\",\"1/5\",\"1/5\",\"2/5\"]"));
    assert!(stdout(&o).contains("[\"3/5\",\"1/10\",\"1/10\",\"1/5\"]"));

    let k4 = gen(&dir, "k4.txt", &["complete", "4"]);
    let o = modlap(&["compute", p(&k4), "--h", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["engine"], "dense");
    for row in v["rows"].as_array().unwrap() {
        let s: f64 = row.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).sum();
        assert!((s - 1.0).abs() <= 1e-10);
    }

    let o = modlap(&["compute", p(&k4), "--engine", "tree"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a tree"));
    let o = modlap(&["compute", "/nonexistent/graph.txt"]);
    assert_eq!(o.status.code(), Some(2));

    let o = modlap(&["compute", p(&p4), "--exact", "--engine", "path", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().next().unwrap(), "13/21,5/21,2/21,1/21");
}

#[test]
fn round_trip_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let a = gen(&dir, "a.txt", &["random-tree", "15", "3"]);
    let b = gen(&dir, "b.txt", &["random-tree", "15", "3"]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let first = modlap(&["compute", p(&a), "--exact", "--h", "1/2"]).stdout;
    let second = modlap(&["compute", p(&b), "--exact", "--h", "0.5"]).stdout;
    assert!(!first.is_empty());
    assert_eq!(first, second);
}

#[test]
fn check_examples() {
    let dir = TempDir::new().unwrap();
    let p4 = gen(&dir, "p4.txt", &["path", "4"]);
    let o = modlap(&["check", p(&p4)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] != "fail"));

    let t6 = dir.path().join("tree6.txt");
    std::fs::write(&t6, "6 5\n5 4\n5 3\n4 1\n4 2\n3 0\n").unwrap();
    let o = modlap(&["check", p(&t6), "--suite", "pendant", "--exact"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["checks"][0]["name"], "pendant");
    assert_eq!(v["checks"][0]["status"], "pass");

    let k4 = gen(&dir, "k4.txt", &["complete", "4"]);
    let o = modlap(&["check", p(&k4), "--suite", "tree-decay"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("skipped: not a tree"));

    let o = modlap(&["check", p(&k4), "--suite", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn heat_examples() {
    let dir = TempDir::new().unwrap();
    let p2 = gen(&dir, "p2.txt", &["path", "2"]);
    let o = modlap(&["heat", p(&p2), "--u0", "delta:0", "--steps", "1", "--h", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<(usize, usize, f64)> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect();
    let last: Vec<f64> = rows.iter().filter(|r| r.0 == 1).map(|r| r.2).collect();
    assert!((last[0] - 2.0 / 3.0).abs() < 1e-15 && (last[1] - 1.0 / 3.0).abs() < 1e-15);

    let k4 = gen(&dir, "k4.txt", &["complete", "4"]);
    let o = modlap(&["heat", p(&k4), "--u0", "uniform", "--steps", "10"]);
    for line in stdout(&o).lines().skip(1) {
        let v: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!((v - 1.0).abs() < 1e-15);
    }

    let p100 = gen(&dir, "p100.txt", &["path", "100"]);
    let summary = dir.path().join("summary.csv");
    let traj = dir.path().join("traj.csv");
    let o = modlap(&[
        "heat",
        p(&p100),
        "--steps",
        "1000",
        "--record-every",
        "100",
        "--output",
        p(&traj),
        "--summary",
        p(&summary),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&summary).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "step,mass,max,min,dist_to_mean");
    let masses: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(masses.len(), 11);
    assert!(masses.iter().all(|m| (m - 1.0).abs() < 1e-12));
    assert!(std::fs::read_to_string(&traj).unwrap().starts_with("step,vertex,value\n"));

    let o = modlap(&["heat", p(&p2), "--u0", "delta:9"]);
    assert_eq!(o.status.code(), Some(2));
    let u0 = dir.path().join("u0.txt");
    std::fs::write(&u0, "1 2 3\n").unwrap();
    let o = modlap(&["heat", p(&p2), "--u0", p(&u0)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("dimension mismatch"));
}

#[test]
fn centrality_examples() {
    let dir = TempDir::new().unwrap();
    let least = |path: &Path| -> Vec<u64> {
        let o = modlap(&["centrality", p(path), "--exact"]);
        assert_eq!(o.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        v["least_remote"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect()
    };
    assert_eq!(least(&gen(&dir, "s.txt", &["star", "7"])), vec![6]);
    assert_eq!(least(&gen(&dir, "p.txt", &["path", "4"])), vec![1, 2]);
    assert_eq!(least(&gen(&dir, "k.txt", &["complete", "5"])), vec![0, 1, 2, 3, 4]);

    let e = gen(&dir, "e.txt", &["empty", "3"]);
    assert_eq!(modlap(&["centrality", p(&e)]).status.code(), Some(2));
}

#[test]
fn bench_table() {
    let o = modlap(&["bench", "--sizes", "50,100", "--engine", "tree,dense,path", "--full"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "engine,family,n,per_column_seconds,full_matrix_seconds");
    assert_eq!(lines.count(), 6);
    let o = modlap(&["bench", "--sizes", "10", "--engine", "path", "--family", "random-tree"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(modlap(&[]).status.code(), Some(2));
    assert_eq!(modlap(&["compute"]).status.code(), Some(2));
    assert_eq!(modlap(&["--version"]).status.code(), Some(0));
}
