use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use matpoly_core::combinatorics::{classify_square_2face, exchange_graphs, is_unimodular_simplex, reduced_determinant, TwoFace};
use matpoly_core::ehrhart::ehrhart_polynomial;
use matpoly_core::heuristics::{btrpt, dfbfs_driver, extreme_start, local_search, pivot_test, projected_boundary, tabu_search};
use matpoly_core::io::{parse_matroid, parse_rational, parse_vector_rows, parse_weights};
use matpoly_core::linalg::det_i64;
use matpoly_core::multicriteria::{bounding_box, pareto_filter};
use matpoly_core::oracles::{dilation_lattice_count, enumerate_bases, exact_projected_set, spanning_trees};
use matpoly_core::uniform::{ehrhart_uniform, hstar_uniform};
use matpoly_core::{
    Basis, Caps, Matroid, Objective, ProjectedPoint, Rational, SearchOutcome, SearchParams, SearchReport, Searcher, WeightMatrix,
};

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] matpoly_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use matpoly_core::Error as E;
        match self {
            CliError::Core(E::Dimension(_) | E::IndexOutOfRange { .. }) => 3,
            CliError::Core(E::CapExceeded { .. }) => 4,
            CliError::Core(E::Inconsistent(_)) => 5,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
    Points,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SearcherKind {
    Local,
    Tabu,
}

/// Exact matroid polytope computations.
#[derive(Parser, Debug)]
#[command(name = "matpoly", version)]
struct Cli {
    /// Matroid file (`graph n`, `vector m n` or `uniform n r`).
    #[arg(long, short, global = true)]
    matroid: Option<PathBuf>,
    /// Weight file (`weights d n`).
    #[arg(long, short, global = true)]
    weights: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Stochastic {
    /// Random seed; required so runs are reproducible.
    #[arg(long)]
    seed: u64,
}

#[derive(Args, Debug, Clone)]
struct Search {
    /// `linear:c1,c2,..`, `sq:t1,t2,..`, `quartic:t1,t2,..` or `minmax`.
    #[arg(long)]
    objective: String,
    /// Start basis as 1-based labels, e.g. `1,2,4`; defaults to the first basis.
    #[arg(long)]
    start: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All bases, lexicographically.
    Bases,
    /// Bases one exchange away from `--basis`.
    Adjacency {
        #[arg(long)]
        basis: String,
    },
    /// Maximum-weight basis for per-element costs.
    Greedy {
        /// Comma-separated rationals, one per element.
        #[arg(long)]
        costs: String,
    },
    /// Steepest-descent local search.
    Ls(Search),
    /// Tabu search.
    Ts {
        #[command(flatten)]
        search: Search,
        #[arg(long, default_value_t = 20)]
        tabu_limit: usize,
    },
    /// Pivot tests on target points.
    Pt {
        #[command(flatten)]
        rng: Stochastic,
        /// Target `x,y,..`; repeatable. Without targets the whole bounding box is used.
        #[arg(long = "target")]
        targets: Vec<String>,
        #[arg(long, default_value_t = 10)]
        tries: usize,
        #[arg(long, value_enum, default_value = "tabu")]
        searcher: SearcherKind,
        #[arg(long, default_value_t = 20)]
        tabu_limit: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Projected boundary walk in the plane.
    Pb {
        #[command(flatten)]
        rng: Stochastic,
    },
    /// Boundary walk followed by pivot tests on the Pareto candidate region.
    Btrpt {
        #[command(flatten)]
        rng: Stochastic,
        #[arg(long, default_value_t = 10)]
        tries: usize,
        #[arg(long, value_enum, default_value = "tabu")]
        searcher: SearcherKind,
        #[arg(long, default_value_t = 20)]
        tabu_limit: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Fiber-hopping breadth-first search from seeded starts.
    Dfbfs {
        #[command(flatten)]
        rng: Stochastic,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 100)]
        num_searches: usize,
        #[arg(long, default_value_t = 100)]
        boundary_retry_limit: usize,
        #[arg(long, default_value_t = 100)]
        random_retry_limit: usize,
    },
    /// Spanning trees of a graphical matroid.
    EnumerateTrees,
    /// Exact projected set with fiber sizes.
    ProjectedSet,
    /// Pareto-minimal points of the exact projected set.
    Pareto,
    /// Ehrhart polynomial through the generating-function pipeline.
    Ehrhart,
    /// Ehrhart polynomial of the hypersimplex.
    EhrhartUniform {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// h*-vector of the hypersimplex.
    HstarUniform {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// Lattice points in the k-th dilate of the matroid polytope.
    LatticeCount {
        #[arg(long)]
        k: u64,
    },
    /// Determinant checks on a square collection of incidence vectors.
    CheckUnimodular {
        /// File in `vector n n` format holding 0/1 rows.
        #[arg(long)]
        collection: PathBuf,
    },
    /// Square or not a face, for four bases `w1;w2;w3;w4`.
    Classify2face {
        /// Four label lists separated by `;`, e.g. `1,3;2,3;1,4;2,4`.
        #[arg(long)]
        vertices: String,
    },
}

/// Output: JSON object plus tabular rows for `csv` and `points`.
struct Report {
    json: Value,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    points: Vec<ProjectedPoint>,
}

impl Report {
    fn new(json: Value) -> Self {
        Report { json, header: Vec::new(), rows: Vec::new(), points: Vec::new() }
    }

    fn table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.header = header.iter().map(|s| s.to_string()).collect();
        self.rows = rows;
        self
    }

    fn points(mut self, points: Vec<ProjectedPoint>) -> Self {
        self.points = points;
        self
    }

    fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json).expect("values serialize") + "\n"),
            Format::Csv => {
                if self.header.is_empty() {
                    return Err(CliError::Usage("this command has no csv form".into()));
                }
                let mut s = self.header.join(",") + "\n";
                for r in &self.rows {
                    s.push_str(&r.join(","));
                    s.push('\n');
                }
                Ok(s)
            }
            Format::Points => {
                if self.points.is_empty() && self.json.get("points").is_none() {
                    return Err(CliError::Usage("this command emits no projected points".into()));
                }
                Ok(self.points.iter().map(|p| join(p, " ") + "\n").collect())
            }
        }
    }
}

fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn caps_from_env() -> Result<Caps> {
    let mut caps = Caps::default();
    for (var, slot) in [("MATPOLY_CAP", 0), ("MATPOLY_SUBSET_CAP", 1)] {
        if let Ok(v) = std::env::var(var) {
            let parsed: u128 = v.trim().parse().map_err(|_| CliError::Usage(format!("{var} must be a non-negative integer")))?;
            match slot {
                0 => caps.enumeration = parsed,
                _ => caps.constraint_elements = parsed as usize,
            }
        }
    }
    Ok(caps)
}

fn parse_labels(s: &str) -> Result<Basis> {
    let labels: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| CliError::Usage(format!("bad element label `{t}`"))))
        .collect::<Result<_>>()?;
    Ok(Basis::from_labels(&labels)?)
}

fn parse_rationals(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .map(|t| parse_rational(t.trim()).ok_or_else(|| CliError::Usage(format!("bad rational `{t}`"))))
        .collect()
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| CliError::Usage(format!("bad integer `{t}`"))))
        .collect()
}

fn parse_objective(s: &str) -> Result<Objective> {
    let (kind, args) = s.split_once(':').unwrap_or((s, ""));
    Ok(match kind {
        "linear" => Objective::Linear(parse_rationals(args)?),
        "sq" => Objective::SquaredDistance(parse_rationals(args)?),
        "quartic" => Objective::QuarticDistance(parse_rationals(args)?),
        "minmax" => Objective::MinMax,
        _ => return Err(CliError::Usage(format!("unknown objective `{s}`"))),
    })
}

fn searcher(kind: SearcherKind, limit: usize) -> Searcher {
    match kind {
        SearcherKind::Local => Searcher::Local,
        SearcherKind::Tabu => Searcher::Tabu { limit },
    }
}

fn labels_json(b: &Basis) -> Value {
    json!(b.labels())
}

fn outcome_report(command: &str, o: &SearchOutcome) -> Report {
    let json = json!({
        "command": command,
        "basis": labels_json(&o.basis),
        "point": o.point,
        "value": o.value.to_string(),
        "pivots": o.pivots,
        "termination": format!("{:?}", o.termination),
    });
    Report::new(json)
        .table(&["basis", "point", "value"], vec![vec![join(&o.basis.labels(), " "), join(&o.point, " "), o.value.to_string()]])
        .points(vec![o.point.clone()])
}

fn search_report(command: &str, header: Value, r: &SearchReport) -> Report {
    let json = json!({
        "command": command,
        "run": header,
        "count": r.points.len(),
        "points": r.points,
        "bases": r.bases.iter().map(labels_json).collect::<Vec<_>>(),
        "pivots": r.pivots,
        "termination": format!("{:?}", r.termination),
    });
    let rows = r.points.iter().zip(&r.bases).map(|(p, b)| vec![join(p, " "), join(&b.labels(), " ")]).collect();
    Report::new(json).table(&["point", "basis"], rows).points(r.points.clone())
}

fn bases_report(command: &str, bases: &[Basis]) -> Report {
    let json = json!({
        "command": command,
        "count": bases.len(),
        "bases": bases.iter().map(labels_json).collect::<Vec<_>>(),
    });
    Report::new(json).table(&["basis"], bases.iter().map(|b| vec![join(&b.labels(), " ")]).collect())
}

struct Inputs<'a> {
    cli: &'a Cli,
    caps: Caps,
}

impl Inputs<'_> {
    fn matroid(&self) -> Result<Matroid> {
        let path = self.cli.matroid.as_ref().ok_or_else(|| CliError::Usage("--matroid is required".into()))?;
        Ok(parse_matroid(&read(path)?)?)
    }

    fn weights(&self, m: &Matroid) -> Result<WeightMatrix> {
        let path = self.cli.weights.as_ref().ok_or_else(|| CliError::Usage("--weights is required".into()))?;
        let w = parse_weights(&read(path)?)?;
        w.check_matroid(m)?;
        Ok(w)
    }

    fn start(&self, m: &Matroid, start: &Option<String>) -> Result<Basis> {
        match start {
            Some(s) => {
                let b = parse_labels(s)?;
                if !m.is_basis(b.elements())? {
                    return Err(matpoly_core::Error::NotABasis(b.labels()).into());
                }
                Ok(b)
            }
            None => Ok(m.first_basis()),
        }
    }
}

fn run(cli: &Cli) -> Result<Report> {
    let input = Inputs { cli, caps: caps_from_env()? };
    let caps = input.caps;
    Ok(match &cli.command {
        Command::Bases => bases_report("bases", &enumerate_bases(&input.matroid()?, &caps)?),
        Command::Adjacency { basis } => {
            let m = input.matroid()?;
            let b = parse_labels(basis)?;
            let mut report = bases_report("adjacency", &m.adjacent_bases(&b)?);
            report.json["basis"] = labels_json(&b);
            report
        }
        Command::Greedy { costs } => {
            let m = input.matroid()?;
            let (b, value) = m.greedy_max_basis(&parse_rationals(costs)?)?;
            Report::new(json!({ "command": "greedy", "basis": labels_json(&b), "value": value.to_string() }))
                .table(&["basis", "value"], vec![vec![join(&b.labels(), " "), value.to_string()]])
        }
        Command::Ls(s) => {
            let m = input.matroid()?;
            let w = input.weights(&m)?;
            let o = local_search(&m, &w, &parse_objective(&s.objective)?, &input.start(&m, &s.start)?)?;
            outcome_report("ls", &o)
        }
        Command::Ts { search, tabu_limit } => {
            let m = input.matroid()?;
            let w = input.weights(&m)?;
            let o = tabu_search(&m, &w, &parse_objective(&search.objective)?, &input.start(&m, &search.start)?, *tabu_limit)?;
            outcome_report("ts", &o)
        }
        Command::Pt { rng, targets, tries, searcher: kind, tabu_limit, workers } => {
            let m = input.matroid()?;
            let w = input.weights(&m)?;
            let targets: Vec<ProjectedPoint> = if targets.is_empty() {
                let bx = bounding_box(&m, &w)?;
                if bx.lattice_size() > caps.enumeration {
                    return Err(matpoly_core::Error::CapExceeded { what: "bounding box".into(), cap: caps.enumeration }.into());
                }
                bx.lattice_points()
            } else {
                targets.iter().map(|t| parse_ints(t)).collect::<Result<_>>()?
            };
            let report = pivot_test(&m, &w, &m.first_basis(), *tries, &targets, searcher(*kind, *tabu_limit), rng.seed, *workers)?;
            let header = json!({ "seed": rng.seed, "tries": tries, "searcher": format!("{kind:?}").to_lowercase(), "tabu_limit": tabu_limit, "workers": workers, "targets": targets.len() });
            search_report("pt", header, &report)
        }
        Command::Pb { rng } => {
            let m = input.matroid()?;
            let w = input.weights(&m)?;
            let start = extreme_start(&m, &w, rng.seed)?;
            search_report("pb", json!({ "seed": rng.seed, "start": labels_json(&start) }), &projected_boundary(&m, &w, &start)?)
        }
        Command::Btrpt { rng, tries, searcher: kind, tabu_limit, workers } => {
            let m = input.matroid()?;
            let w = input.weights(&m)?;
            let report = btrpt(&m, &w, *tries, searcher(*kind, *tabu_limit), rng.seed, *workers)?;
            let header = json!({ "seed": rng.seed, "tries": tries, "searcher": format!("{kind:?}").to_lowercase(), "tabu_limit": tabu_limit, "workers": workers });
            search_report("btrpt", header, &report)
        }
        Command::Dfbfs { rng, depth, num_searches, boundary_retry_limit, random_retry_limit } => {
            let m = input.matroid()?;
            let w = input.weights(&m)?;
            let params = SearchParams {
                bfs_depth: *depth,
                num_searches: *num_searches,
                boundary_retry_limit: *boundary_retry_limit,
                random_retry_limit: *random_retry_limit,
                seed: rng.seed,
                ..SearchParams::default()
            };
            let header = json!({
                "seed": rng.seed,
                "depth": depth,
                "num_searches": num_searches,
                "boundary_retry_limit": boundary_retry_limit,
                "random_retry_limit": random_retry_limit,
            });
            search_report("dfbfs", header, &dfbfs_driver(&m, &w, &params)?)
        }
        Command::EnumerateTrees => bases_report("enumerate-trees", &spanning_trees(&input.matroid()?, &caps)?),
        Command::ProjectedSet | Command::Pareto => {
            let m = input.matroid()?;
            let w = input.weights(&m)?;
            let exact = exact_projected_set(&m, &w, &caps)?;
            let (name, points): (&str, Vec<ProjectedPoint>) = match cli.command {
                Command::Pareto => ("pareto", pareto_filter(&exact.keys().cloned().collect::<Vec<_>>())),
                _ => ("projected-set", exact.keys().cloned().collect()),
            };
            let fibers: Vec<u64> = points.iter().map(|p| exact[p]).collect();
            let json = json!({ "command": name, "count": points.len(), "points": points, "fibers": fibers });
            let rows = points.iter().zip(&fibers).map(|(p, f)| vec![join(p, " "), f.to_string()]).collect();
            Report::new(json).table(&["point", "fiber"], rows).points(points)
        }
        Command::Ehrhart => {
            let m = input.matroid()?;
            polynomial_report("ehrhart", &ehrhart_polynomial(&m, &caps)?.coefficient_strings())
        }
        Command::EhrhartUniform { n, r } => {
            let mut report = polynomial_report("ehrhart-uniform", &ehrhart_uniform(*n, *r)?.coefficient_strings());
            report.json["n"] = json!(n);
            report.json["r"] = json!(r);
            report
        }
        Command::HstarUniform { n, r } => {
            let h: Vec<String> = hstar_uniform(*n, *r)?.coeffs.iter().map(ToString::to_string).collect();
            let rows = h.iter().enumerate().map(|(i, c)| vec![i.to_string(), c.clone()]).collect();
            Report::new(json!({ "command": "hstar-uniform", "n": n, "r": r, "hstar": h })).table(&["degree", "coefficient"], rows)
        }
        Command::LatticeCount { k } => {
            let count = dilation_lattice_count(&input.matroid()?, *k, &caps)?.to_string();
            Report::new(json!({ "command": "lattice-count", "k": k, "count": count })).table(&["k", "count"], vec![vec![k.to_string(), count]])
        }
        Command::CheckUnimodular { collection } => {
            let rows = parse_vector_rows(&read(collection)?)?;
            let x: Vec<Vec<i64>> = rows
                .iter()
                .map(|r| r.iter().map(|v| if v.is_integer() { v.to_integer().try_into().unwrap_or(2) } else { 2 }).collect())
                .collect();
            let graphs = exchange_graphs(&x)?;
            let reference = match cli.matroid {
                Some(_) => input.matroid()?,
                None => weight_matroid(&x)?,
            };
            let unimodular = is_unimodular_simplex(&x, &reference)?;
            let (reduced, reduced_det) = reduced_determinant(&x)?;
            let det = det_i64(&x);
            let json = json!({
                "command": "check-unimodular",
                "det": det.to_string(),
                "rank": reference.rank_of_matroid(),
                "unimodular": unimodular,
                "row_components": graphs.row_components().len(),
                "column_components": graphs.col_components().len(),
                "reduced": reduced,
                "reduced_det": reduced_det.to_string(),
            });
            Report::new(json).table(&["det", "rank", "unimodular"], vec![vec![det.to_string(), reference.rank_of_matroid().to_string(), unimodular.to_string()]])
        }
        Command::Classify2face { vertices } => {
            let m = input.matroid()?;
            let ws: Vec<Basis> = vertices.split(';').map(parse_labels).collect::<Result<_>>()?;
            let [a, b, c, d] = ws.as_slice() else {
                return Err(CliError::Usage("expected four bases separated by `;`".into()));
            };
            let face = match classify_square_2face(&m, [a, b, c, d])? {
                TwoFace::Square => "square",
                TwoFace::NotAFace => "not-a-face",
            };
            Report::new(json!({ "command": "classify-2face", "classification": face })).table(&["classification"], vec![vec![face.into()]])
        }
    })
}

/// Uniform matroid whose rank is the common row weight; only its rank is used.
fn weight_matroid(x: &[Vec<i64>]) -> Result<Matroid> {
    let n = x.len();
    let weight = x.first().map_or(0, |r| r.iter().sum::<i64>()) as usize;
    if n == 0 || weight == 0 || weight >= n {
        return Err(CliError::Usage("collection rows must have weight between 1 and n - 1".into()));
    }
    Ok(Matroid::uniform(n, weight)?)
}

fn polynomial_report(command: &str, coeffs: &[String]) -> Report {
    let rows = coeffs.iter().enumerate().map(|(i, c)| vec![i.to_string(), c.clone()]).collect();
    Report::new(json!({ "command": command, "coefficients": coeffs })).table(&["degree", "coefficient"], rows)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|r| r.render(cli.format));
    match result {
        Ok(text) => {
            let written = match &cli.output {
                Some(path) => fs::write(path, text).map_err(|source| CliError::Io { path: path.clone(), source }),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(e.exit_code())
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use matpoly_core::Error as E;

    #[test]
    fn exit_codes_follow_error_kind() {
        let code = |e: E| CliError::Core(e).exit_code();
        assert_eq!(code(E::Invalid("x".into())), 2);
        assert_eq!(code(E::Dimension("x".into())), 3);
        assert_eq!(code(E::CapExceeded { what: "x".into(), cap: 1 }), 4);
        assert_eq!(code(E::Inconsistent("x".into())), 5);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
    }

    #[test]
    fn objectives_parse() {
        assert!(matches!(parse_objective("linear:1,-2/3").unwrap(), Objective::Linear(c) if c.len() == 2));
        assert!(matches!(parse_objective("minmax").unwrap(), Objective::MinMax));
        assert!(parse_objective("cubic:1").is_err());
        assert_eq!(parse_labels("3,1,2").unwrap().labels(), vec![1, 2, 3]);
    }
}
