use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use matpoly_core::io::{parse_matroid, parse_rational, parse_weights};
use matpoly_core::multicriteria::project;
use matpoly_core::{Basis, Rational};

const K4: &str = "graph 4\n0 1 1 1\n1 0 1 1\n1 1 0 1\n1 1 1 0\n";
const K4_WEIGHTS: &str = "weights 2 6\n3 1 4 1 5 9\n2 6 5 3 5 8\n";

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        let f = Fixture { dir: TempDir::new().unwrap() };
        f.write("k4.txt", K4);
        f.write("w.txt", K4_WEIGHTS);
        f
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn run(&self, args: &[&str]) -> Output {
        self.run_env(args, &[])
    }

    fn run_env(&self, args: &[&str], env: &[(&str, &str)]) -> Output {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_matpoly"));
        cmd.current_dir(self.dir.path()).args(args).env_remove("MATPOLY_CAP").env_remove("MATPOLY_SUBSET_CAP");
        for (k, v) in env {
            cmd.env(k, v);
        }
        cmd.output().unwrap()
    }

    fn json(&self, args: &[&str]) -> Value {
        let out = self.run(args);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        serde_json::from_slice(&out.stdout).unwrap()
    }
}

fn labels(v: &Value) -> Basis {
    let l: Vec<usize> = v.as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as usize).collect();
    Basis::from_labels(&l).unwrap()
}

fn points(v: &Value) -> Vec<Vec<i64>> {
    v.as_array().unwrap().iter().map(|p| p.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect()).collect()
}

fn read(p: &Path) -> String {
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn ehrhart_of_k4() {
    let f = Fixture::new();
    let v = f.json(&["--matroid", "k4.txt", "ehrhart"]);
    let coeffs: Vec<&str> = v["coefficients"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(coeffs, ["1", "107/30", "21/4", "49/12", "7/4", "7/20"]);
    // round trip: the polynomial counts the 16 vertices at k = 1
    let at_one: Rational = coeffs.iter().map(|c| parse_rational(c).unwrap()).sum();
    assert_eq!(at_one, Rational::from_integer(16.into()));
}

#[test]
fn tree_enumeration_and_bases_agree() {
    let f = Fixture::new();
    let m = parse_matroid(K4).unwrap();
    let trees = f.json(&["-m", "k4.txt", "enumerate-trees"]);
    let bases = f.json(&["-m", "k4.txt", "bases"]);
    assert_eq!(trees["count"], 16);
    let mut t: Vec<Basis> = trees["bases"].as_array().unwrap().iter().map(labels).collect();
    t.sort();
    let b: Vec<Basis> = bases["bases"].as_array().unwrap().iter().map(labels).collect();
    assert_eq!(t, b);
    assert!(b.iter().all(|x| m.is_basis(x.elements()).unwrap()));
    let csv = String::from_utf8(f.run(&["-m", "k4.txt", "bases", "--format", "csv"]).stdout).unwrap();
    assert_eq!(csv.lines().count(), 17);
    assert_eq!(csv.lines().nth(1), Some("1 2 3"));
}

#[test]
fn lattice_count_at_zero_is_one() {
    let f = Fixture::new();
    f.write("u.txt", "uniform 5 2\n");
    f.write("v.txt", "vector 2 5\n1 0 1 -1 2\n1 1 0 1 2\n");
    for file in ["k4.txt", "u.txt", "v.txt"] {
        assert_eq!(f.json(&["-m", file, "lattice-count", "--k", "0"])["count"], "1");
    }
    assert_eq!(f.json(&["-m", "k4.txt", "lattice-count", "--k", "1"])["count"], "16");
}

#[test]
fn heuristic_outputs_revalidate() {
    let f = Fixture::new();
    let m = parse_matroid(K4).unwrap();
    let w = parse_weights(K4_WEIGHTS).unwrap();
    let exact = f.json(&["-m", "k4.txt", "-w", "w.txt", "projected-set"]);
    let all = points(&exact["points"]);
    let fibers: u64 = exact["fibers"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).sum();
    assert_eq!(fibers, 16);
    for args in [
        vec!["btrpt", "--seed", "4"],
        vec!["pb", "--seed", "4"],
        vec!["dfbfs", "--seed", "4", "--depth", "3"],
        vec!["pt", "--seed", "4", "--workers", "3"],
    ] {
        let mut full = vec!["-m", "k4.txt", "-w", "w.txt"];
        full.extend(&args);
        let v = f.json(&full);
        assert_eq!(v["run"]["seed"], 4, "{args:?}");
        let pts = points(&v["points"]);
        for (p, b) in pts.iter().zip(v["bases"].as_array().unwrap()) {
            let b = labels(b);
            assert!(m.is_basis(b.elements()).unwrap());
            assert_eq!(&project(&w, &b).unwrap(), p);
            assert!(all.contains(p));
        }
    }
    let pareto = f.json(&["-m", "k4.txt", "-w", "w.txt", "pareto"]);
    let front = f.json(&["-m", "k4.txt", "-w", "w.txt", "btrpt", "--seed", "9"]);
    assert_eq!(points(&pareto["points"]), points(&front["points"]));
    let pts = String::from_utf8(f.run(&["-m", "k4.txt", "-w", "w.txt", "pareto", "--format", "points"]).stdout).unwrap();
    assert_eq!(pts.lines().count(), points(&pareto["points"]).len());
    assert!(pts.lines().all(|l| l.split(' ').count() == 2));
}

#[test]
fn searches_from_given_start() {
    let f = Fixture::new();
    let ls = f.json(&["-m", "k4.txt", "-w", "w.txt", "ls", "--objective", "linear:1,1", "--start", "1,2,3"]);
    assert_eq!(ls["value"], "18");
    assert_eq!(ls["point"], serde_json::json!([8, 10]));
    let ts = f.json(&["-m", "k4.txt", "-w", "w.txt", "ts", "--objective", "sq:8,10", "--tabu-limit", "5"]);
    assert_eq!(ts["value"], "0");
    let g = f.json(&["-m", "k4.txt", "greedy", "--costs", "1,2,3,4,5,6"]);
    assert_eq!(g["value"], "14");
    let adj = f.json(&["-m", "k4.txt", "adjacency", "--basis", "1,2,3"]);
    assert_eq!(adj["count"], 6);
}

#[test]
fn identical_runs_are_byte_identical() {
    let f = Fixture::new();
    for args in [
        vec!["-m", "k4.txt", "-w", "w.txt", "btrpt", "--seed", "11", "--workers", "2"],
        vec!["-m", "k4.txt", "-w", "w.txt", "dfbfs", "--seed", "11"],
        vec!["-m", "k4.txt", "-w", "w.txt", "pt", "--seed", "11", "--format", "csv"],
    ] {
        let a = f.run(&args);
        let b = f.run(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn output_file_matches_stdout() {
    let f = Fixture::new();
    let out = f.path("out.json");
    let direct = f.run(&["-m", "k4.txt", "ehrhart"]).stdout;
    assert!(f.run(&["-m", "k4.txt", "ehrhart", "--output", out.to_str().unwrap()]).status.success());
    assert_eq!(read(&out).into_bytes(), direct);
}

#[test]
fn uniform_and_determinant_commands() {
    let f = Fixture::new();
    assert_eq!(f.json(&["hstar-uniform", "--n", "4", "--r", "2"])["hstar"], serde_json::json!(["1", "2", "1"]));
    let coll = "vector 6 6\n1 1 0 0 1 0\n1 1 0 0 0 1\n1 0 1 1 0 0\n0 1 1 1 0 0\n0 0 1 0 1 1\n0 0 0 1 1 1\n";
    f.write("x.txt", coll);
    let v = f.json(&["check-unimodular", "--collection", "x.txt"]);
    assert_eq!(v["det"].as_str().unwrap().trim_start_matches('-'), "9");
    assert_eq!(v["reduced"], serde_json::json!([[2, 0, 1], [1, 2, 0], [0, 1, 2]]));
    assert_eq!(v["unimodular"], false);
    f.write("sum.txt", "vector 2 4\n1 1 0 0\n0 0 1 1\n");
    assert_eq!(f.json(&["-m", "sum.txt", "classify2face", "--vertices", "1,3;2,3;1,4;2,4"])["classification"], "square");
}

#[test]
fn exit_codes() {
    let f = Fixture::new();
    f.write("bad.txt", "graph 2\n0 1\n1 x\n");
    let out = f.run(&["-m", "bad.txt", "bases"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3, column 3"));

    f.write("w5.txt", "weights 1 5\n1 2 3 4 5\n");
    assert_eq!(f.run(&["-m", "k4.txt", "-w", "w5.txt", "projected-set"]).status.code(), Some(3));

    let capped = f.run_env(&["-m", "k4.txt", "bases"], &[("MATPOLY_CAP", "3")]);
    assert_eq!(capped.status.code(), Some(4));

    assert_eq!(f.run(&["-m", "k4.txt", "-w", "w.txt", "btrpt"]).status.code(), Some(2), "seed is mandatory");
    assert_eq!(f.run(&["-m", "missing.txt", "bases"]).status.code(), Some(2));
    assert_eq!(f.run(&["-m", "k4.txt", "ehrhart", "--format", "points"]).status.code(), Some(2));
}
