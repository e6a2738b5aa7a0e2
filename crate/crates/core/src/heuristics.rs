//! Search heuristics over the base-exchange graph: local and tabu search, the
//! pivot test, projected boundary, the boundary-and-region Pareto test and
//! different-fiber BFS.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::matroid::{Basis, Matroid};
use crate::multicriteria::{pareto_filter, Objective, ProjectedPoint, WeightMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchParams {
    pub tabu_limit: usize,
    pub tries: usize,
    pub bfs_depth: usize,
    pub num_searches: usize,
    pub boundary_retry_limit: usize,
    pub random_retry_limit: usize,
    pub seed: u64,
    pub workers: usize,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams {
            tabu_limit: 20,
            tries: 10,
            bfs_depth: 2,
            num_searches: 100,
            boundary_retry_limit: 100,
            random_retry_limit: 100,
            seed: 0,
            workers: 1,
        }
    }
}

impl SearchParams {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("tabu limit", self.tabu_limit),
            ("tries", self.tries),
            ("number of searches", self.num_searches),
            ("boundary retry limit", self.boundary_retry_limit),
            ("random retry limit", self.random_retry_limit),
            ("workers", self.workers),
        ];
        match positive.iter().find(|(_, v)| *v == 0) {
            Some((name, _)) => Err(Error::Invalid(format!("{name} must be at least 1"))),
            None => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    LocalMinimum,
    TabuLimit,
    NoUnvisitedNeighbor,
    Completed,
    LimitsReached,
}

/// Result of a single-trajectory search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub basis: Basis,
    pub point: ProjectedPoint,
    pub value: Rational,
    pub pivots: u64,
    pub termination: Termination,
}

/// Result of a set-valued heuristic; `points[i]` is the projection of `bases[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub bases: Vec<Basis>,
    pub points: Vec<ProjectedPoint>,
    pub pivots: u64,
    pub termination: Termination,
}

impl SearchReport {
    fn from_map(map: BTreeMap<ProjectedPoint, Basis>, pivots: u64, termination: Termination) -> Self {
        let (points, bases) = map.into_iter().unzip();
        SearchReport { bases, points, pivots, termination }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Searcher {
    Local,
    Tabu { limit: usize },
}

/// Objective value with an integer fast path.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Value {
    Int(i128),
    Exact(Rational),
}

impl Value {
    fn exact(&self) -> Rational {
        match self {
            Value::Int(v) => Rational::from_integer((*v).into()),
            Value::Exact(q) => q.clone(),
        }
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Value::Int(a), Value::Int(b)) => a.cmp(b),
            _ => self.exact().cmp(&other.exact()),
        }
    }
}

enum Scorer<'a> {
    Squared(Vec<i128>),
    Linear(Vec<i128>),
    MinMax,
    General(&'a Objective),
}

impl<'a> Scorer<'a> {
    fn new(f: &'a Objective) -> Self {
        let ints = |v: &[Rational]| -> Option<Vec<i128>> {
            v.iter().map(|q| if q.is_integer() { i128::try_from(q.to_integer()).ok() } else { None }).collect()
        };
        match f {
            Objective::SquaredDistance(t) => ints(t).map_or(Scorer::General(f), Scorer::Squared),
            Objective::Linear(c) => ints(c).map_or(Scorer::General(f), Scorer::Linear),
            Objective::MinMax => Scorer::MinMax,
            _ => Scorer::General(f),
        }
    }

    fn score(&self, p: &[i64]) -> Value {
        match self {
            Scorer::Squared(t) => Value::Int(t.iter().zip(p).map(|(a, &x)| (x as i128 - a).pow(2)).sum()),
            Scorer::Linear(c) => Value::Int(c.iter().zip(p).map(|(a, &x)| a * x as i128).sum()),
            Scorer::MinMax => Value::Int(p.iter().copied().max().unwrap_or(0) as i128),
            Scorer::General(f) => Value::Exact(f.eval(p)),
        }
    }
}

fn check_inputs(m: &Matroid, w: &WeightMatrix, f: &Objective, b0: &Basis) -> Result<()> {
    w.check_matroid(m)?;
    f.check(w.d())?;
    if !m.is_basis(b0.elements())? {
        return Err(Error::NotABasis(b0.labels()));
    }
    Ok(())
}

fn local_raw(m: &Matroid, w: &WeightMatrix, scorer: &Scorer, b0: &Basis) -> (Basis, ProjectedPoint, Value, u64) {
    let mut cur = b0.clone();
    let mut point = w.project_raw(&cur);
    let mut val = scorer.score(&point);
    let mut pivots = 0;
    loop {
        let mut best: Option<(Value, Basis, ProjectedPoint)> = None;
        for nb in m.adjacent_raw(&cur) {
            let p = w.project_raw(&nb);
            let v = scorer.score(&p);
            if best.as_ref().is_none_or(|(bv, _, _)| v < *bv) {
                best = Some((v, nb, p));
            }
        }
        match best {
            Some((v, nb, p)) if v < val => {
                cur = nb;
                point = p;
                val = v;
                pivots += 1;
            }
            _ => return (cur, point, val, pivots),
        }
    }
}

/// Pivots to the best neighbor while it strictly improves; ties go to the
/// lexicographically least basis.
pub fn local_search(m: &Matroid, w: &WeightMatrix, f: &Objective, b0: &Basis) -> Result<SearchOutcome> {
    check_inputs(m, w, f, b0)?;
    let (basis, point, value, pivots) = local_raw(m, w, &Scorer::new(f), b0);
    Ok(SearchOutcome { basis, point, value: value.exact(), pivots, termination: Termination::LocalMinimum })
}

fn tabu_raw(m: &Matroid, w: &WeightMatrix, scorer: &Scorer, b0: &Basis, limit: usize) -> (Basis, ProjectedPoint, Value, u64, Termination) {
    let mut visited: BTreeSet<Basis> = BTreeSet::new();
    visited.insert(b0.clone());
    let mut cur = b0.clone();
    let mut best_point = w.project_raw(b0);
    let mut best_val = scorer.score(&best_point);
    let mut best = b0.clone();
    let mut stale = 0;
    let mut pivots = 0;
    loop {
        let mut next: Option<(Value, Basis, ProjectedPoint)> = None;
        for nb in m.adjacent_raw(&cur) {
            if visited.contains(&nb) {
                continue;
            }
            let p = w.project_raw(&nb);
            let v = scorer.score(&p);
            if next.as_ref().is_none_or(|(bv, _, _)| v < *bv) {
                next = Some((v, nb, p));
            }
        }
        let Some((v, nb, p)) = next else {
            return (best, best_point, best_val, pivots, Termination::NoUnvisitedNeighbor);
        };
        visited.insert(nb.clone());
        cur = nb;
        pivots += 1;
        if v < best_val {
            best = cur.clone();
            best_point = p;
            best_val = v;
            stale = 0;
        } else {
            stale += 1;
            if stale >= limit {
                return (best, best_point, best_val, pivots, Termination::TabuLimit);
            }
        }
    }
}

/// Always pivots to the best unvisited neighbor and returns the best basis
/// seen; stops after `limit` pivots without improvement.
pub fn tabu_search(m: &Matroid, w: &WeightMatrix, f: &Objective, b0: &Basis, limit: usize) -> Result<SearchOutcome> {
    check_inputs(m, w, f, b0)?;
    if limit == 0 {
        return Err(Error::Invalid("tabu limit must be at least 1".into()));
    }
    let (basis, point, value, pivots, termination) = tabu_raw(m, w, &Scorer::new(f), b0, limit);
    Ok(SearchOutcome { basis, point, value: value.exact(), pivots, termination })
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn mix_seed(seed: u64, point: &[i64], attempt: usize) -> u64 {
    let mut h = splitmix(seed);
    for &x in point {
        h = splitmix(h ^ x as u64);
    }
    splitmix(h ^ attempt as u64)
}

/// For each target, up to `tries` searches on the squared distance; a basis
/// is kept when it projects exactly onto the target. The first try starts
/// at `b0`, later tries at seeded random bases.
#[allow(clippy::too_many_arguments)]
pub fn pivot_test(
    m: &Matroid,
    w: &WeightMatrix,
    b0: &Basis,
    tries: usize,
    targets: &[ProjectedPoint],
    searcher: Searcher,
    seed: u64,
    workers: usize,
) -> Result<SearchReport> {
    w.check_matroid(m)?;
    if !m.is_basis(b0.elements())? {
        return Err(Error::NotABasis(b0.labels()));
    }
    if let Some(t) = targets.iter().find(|t| t.len() != w.d()) {
        return Err(Error::Dimension(format!("target {t:?} does not have {} coordinates", w.d())));
    }
    let draws = crate::matroid::Caps::default().rejection_draws;
    let one_target = |target: &ProjectedPoint| -> Result<(Option<(ProjectedPoint, Basis)>, u64)> {
        let scorer = Scorer::Squared(target.iter().map(|&x| x as i128).collect());
        let mut pivots = 0;
        for attempt in 0..tries {
            let start = if attempt == 0 {
                b0.clone()
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, target, attempt));
                m.random_basis_with(&mut rng, draws)?
            };
            let (basis, point, val, steps) = match searcher {
                Searcher::Local => local_raw(m, w, &scorer, &start),
                Searcher::Tabu { limit } => {
                    let (b, p, v, s, _) = tabu_raw(m, w, &scorer, &start, limit.max(1));
                    (b, p, v, s)
                }
            };
            pivots += steps;
            if val == Value::Int(0) {
                return Ok((Some((point, basis)), pivots));
            }
        }
        Ok((None, pivots))
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
    let chunk = targets.len().div_ceil(workers.max(1)).max(1);
    let results: Vec<Result<(Vec<(ProjectedPoint, Basis)>, u64)>> = pool.install(|| {
        targets
            .par_chunks(chunk)
            .map(|part| {
                let mut found = Vec::new();
                let mut pivots = 0;
                for t in part {
                    let (hit, p) = one_target(t)?;
                    pivots += p;
                    found.extend(hit);
                }
                Ok((found, pivots))
            })
            .collect()
    });
    let mut map = BTreeMap::new();
    let mut pivots = 0;
    for r in results {
        let (found, p) = r?;
        pivots += p;
        for (point, basis) in found {
            map.entry(point).or_insert(basis);
        }
    }
    Ok(SearchReport::from_map(map, pivots, Termination::Completed))
}

fn cross(a: &[i64], b: &[i64]) -> i128 {
    a[0] as i128 * b[1] as i128 - a[1] as i128 * b[0] as i128
}

fn upper_half(d: &[i64]) -> bool {
    d[1] > 0 || (d[1] == 0 && d[0] > 0)
}

/// Largest angular gap between the nonzero directions compared with pi.
/// No directions, or a single direction, count as a full turn.
pub fn max_gap_vs_pi(directions: &[Vec<i64>]) -> Ordering {
    let mut dirs: Vec<&Vec<i64>> = directions.iter().filter(|d| d[0] != 0 || d[1] != 0).collect();
    dirs.sort_by(|a, b| upper_half(b).cmp(&upper_half(a)).then_with(|| 0.cmp(&cross(a, b))));
    dirs.dedup_by(|b, a| upper_half(a) == upper_half(b) && cross(a, b) == 0);
    if dirs.len() <= 1 {
        return Ordering::Greater;
    }
    let mut result = Ordering::Less;
    for i in 0..dirs.len() {
        let c = cross(dirs[i], dirs[(i + 1) % dirs.len()]);
        if c < 0 {
            return Ordering::Greater;
        }
        if c == 0 {
            result = Ordering::Equal;
        }
    }
    result
}

fn neighbor_directions(m: &Matroid, w: &WeightMatrix, b: &Basis, p: &[i64]) -> Vec<Vec<i64>> {
    m.adjacent_raw(b)
        .iter()
        .map(|nb| w.project_raw(nb).iter().zip(p).map(|(x, y)| x - y).collect())
        .collect()
}

/// Projection lies on the boundary of the projected hull.
pub fn is_boundary(m: &Matroid, w: &WeightMatrix, b: &Basis) -> Result<bool> {
    check_plane(w)?;
    let p = w.project_raw(b);
    Ok(max_gap_vs_pi(&neighbor_directions(m, w, b, &p)) != Ordering::Less)
}

/// Projection is a vertex of the projected hull.
pub fn is_extreme(m: &Matroid, w: &WeightMatrix, b: &Basis) -> Result<bool> {
    check_plane(w)?;
    let p = w.project_raw(b);
    Ok(max_gap_vs_pi(&neighbor_directions(m, w, b, &p)) == Ordering::Greater)
}

fn check_plane(w: &WeightMatrix) -> Result<()> {
    if w.d() != 2 {
        return Err(Error::Dimension(format!("planar routine needs 2 criteria, got {}", w.d())));
    }
    Ok(())
}

/// Walks from an extreme basis through neighbors whose projections are new
/// boundary points.
pub fn projected_boundary(m: &Matroid, w: &WeightMatrix, b0: &Basis) -> Result<SearchReport> {
    check_plane(w)?;
    w.check_matroid(m)?;
    if !m.is_basis(b0.elements())? {
        return Err(Error::NotABasis(b0.labels()));
    }
    if !is_extreme(m, w, b0)? {
        return Err(Error::Invalid("start basis does not project to a hull vertex".into()));
    }
    let mut seen: BTreeMap<ProjectedPoint, Basis> = BTreeMap::new();
    seen.insert(w.project_raw(b0), b0.clone());
    let mut queue = VecDeque::from([b0.clone()]);
    let mut pivots = 0;
    while let Some(cur) = queue.pop_front() {
        for nb in m.adjacent_raw(&cur) {
            let p = w.project_raw(&nb);
            if seen.contains_key(&p) {
                continue;
            }
            if max_gap_vs_pi(&neighbor_directions(m, w, &nb, &p)) != Ordering::Less {
                seen.insert(p, nb.clone());
                queue.push_back(nb);
                pivots += 1;
            }
        }
    }
    Ok(SearchReport::from_map(seen, pivots, Termination::Completed))
}

fn random_direction(rng: &mut ChaCha8Rng, d: usize) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..d).map(|_| rng.gen_range(-1000..=1000)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

/// Local search on seeded random linear objectives until the result projects
/// to a hull vertex.
pub fn extreme_start(m: &Matroid, w: &WeightMatrix, seed: u64) -> Result<Basis> {
    check_plane(w)?;
    w.check_matroid(m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = m.first_basis();
    for _ in 0..1000 {
        let c = random_direction(&mut rng, 2);
        let (b, _, _, _) = local_raw(m, w, &Scorer::Linear(c.iter().map(|&x| x as i128).collect()), &start);
        if is_extreme(m, w, &b)? {
            return Ok(b);
        }
    }
    Err(Error::cap("random directions for an extreme start", 1000))
}

fn inside_hull(hull: &[Vec<i64>], p: &[i64]) -> bool {
    match hull.len() {
        0 => false,
        1 => hull[0] == p,
        2 => {
            let (a, b) = (&hull[0], &hull[1]);
            let ab = [b[0] - a[0], b[1] - a[1]];
            let ap = [p[0] - a[0], p[1] - a[1]];
            cross(&ab, &ap) == 0 && (0..2).all(|i| p[i] >= a[i].min(b[i]) && p[i] <= a[i].max(b[i]))
        }
        k => (0..k).all(|i| {
            let (a, b) = (&hull[i], &hull[(i + 1) % k]);
            cross(&[b[0] - a[0], b[1] - a[1]], &[p[0] - a[0], p[1] - a[1]]) >= 0
        }),
    }
}

/// Candidate region for undiscovered Pareto points: lattice points of the
/// projected hull between the two extreme Pareto points that no known
/// Pareto point weakly dominates.
pub fn pareto_candidate_region(boundary: &[ProjectedPoint]) -> Result<Vec<ProjectedPoint>> {
    let front = pareto_filter(boundary);
    if front.len() <= 1 {
        return Ok(Vec::new());
    }
    let hull = crate::oracles::planar_convex_hull(boundary).or_else(|_| -> Result<Vec<Vec<i64>>> {
        let mut pts = boundary.to_vec();
        pts.sort();
        pts.dedup();
        Ok(if pts.len() > 1 { vec![pts[0].clone(), pts[pts.len() - 1].clone()] } else { pts })
    })?;
    let (first, last) = (&front[0], &front[front.len() - 1]);
    let mut out = Vec::new();
    for x in first[0]..=last[0] {
        for y in last[1]..=first[1] {
            let p = vec![x, y];
            if front.iter().any(|q| q[0] <= x && q[1] <= y) {
                continue;
            }
            if inside_hull(&hull, &p) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// Projected boundary, Pareto filter, pivot tests on the candidate region
/// and a final Pareto filter.
pub fn btrpt(m: &Matroid, w: &WeightMatrix, tries: usize, searcher: Searcher, seed: u64, workers: usize) -> Result<SearchReport> {
    check_plane(w)?;
    let start = extreme_start(m, w, seed)?;
    let boundary = projected_boundary(m, w, &start)?;
    let mut known: BTreeMap<ProjectedPoint, Basis> = boundary.points.iter().cloned().zip(boundary.bases.iter().cloned()).collect();
    let region = pareto_candidate_region(&boundary.points)?;
    let found = pivot_test(m, w, &start, tries, &region, searcher, seed, workers)?;
    for (p, b) in found.points.into_iter().zip(found.bases) {
        known.entry(p).or_insert(b);
    }
    let all: Vec<ProjectedPoint> = known.keys().cloned().collect();
    let front: BTreeSet<ProjectedPoint> = pareto_filter(&all).into_iter().collect();
    known.retain(|p, _| front.contains(p));
    Ok(SearchReport::from_map(known, boundary.pivots + found.pivots, Termination::Completed))
}

fn dfbfs_rec(m: &Matroid, w: &WeightMatrix, b: &Basis, depth: usize, level: usize, seen: &mut BTreeMap<ProjectedPoint, Basis>) {
    if level >= depth {
        return;
    }
    let p = w.project_raw(b);
    seen.entry(p.clone()).or_insert_with(|| b.clone());
    let mut frontier = Vec::new();
    for nb in m.adjacent_raw(b) {
        let q = w.project_raw(&nb);
        if q != p && !seen.contains_key(&q) {
            seen.insert(q, nb.clone());
            frontier.push(nb);
        }
    }
    for nb in &frontier {
        dfbfs_rec(m, w, nb, depth, level + 1, seen);
    }
}

/// Depth-limited search that only pivots between different fibers; adds to
/// `seen` and returns nothing at depth 0.
pub fn dfbfs_into(m: &Matroid, w: &WeightMatrix, b0: &Basis, depth: usize, seen: &mut BTreeMap<ProjectedPoint, Basis>) -> Result<()> {
    w.check_matroid(m)?;
    if !m.is_basis(b0.elements())? {
        return Err(Error::NotABasis(b0.labels()));
    }
    dfbfs_rec(m, w, b0, depth, 0, seen);
    Ok(())
}

pub fn dfbfs(m: &Matroid, w: &WeightMatrix, b0: &Basis, depth: usize) -> Result<SearchReport> {
    let mut seen = BTreeMap::new();
    dfbfs_into(m, w, b0, depth, &mut seen)?;
    Ok(SearchReport::from_map(seen, 0, Termination::Completed))
}

/// Two seeding phases, each with its own random stream and seen set:
/// local search on random linear objectives, then random bases. Each fresh
/// projection launches a DFBFS. A phase ends after `num_searches` fresh seeds
/// or after its retry limit of stale seeds.
pub fn dfbfs_driver(m: &Matroid, w: &WeightMatrix, params: &SearchParams) -> Result<SearchReport> {
    params.validate()?;
    w.check_matroid(m)?;
    let draws = crate::matroid::Caps::default().rejection_draws;
    let start = m.first_basis();
    let mut boundary_seen: BTreeMap<ProjectedPoint, Basis> = BTreeMap::new();
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix(params.seed));
    let (mut found, mut failed) = (0, 0);
    while found < params.num_searches && failed < params.boundary_retry_limit {
        let c = random_direction(&mut rng, w.d());
        let (b, p, _, _) = local_raw(m, w, &Scorer::Linear(c.iter().map(|&x| x as i128).collect()), &start);
        if boundary_seen.contains_key(&p) {
            failed += 1;
        } else {
            found += 1;
            dfbfs_rec(m, w, &b, params.bfs_depth, 0, &mut boundary_seen);
            boundary_seen.entry(p).or_insert(b);
        }
    }
    let mut random_seen: BTreeMap<ProjectedPoint, Basis> = BTreeMap::new();
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix(params.seed ^ 0x5DEE_CE66_D1CE_5EED));
    let (mut found, mut failed) = (0, 0);
    while found < params.num_searches && failed < params.random_retry_limit {
        let b = m.random_basis_with(&mut rng, draws)?;
        let p = w.project_raw(&b);
        if random_seen.contains_key(&p) {
            failed += 1;
        } else {
            found += 1;
            dfbfs_rec(m, w, &b, params.bfs_depth, 0, &mut random_seen);
            random_seen.entry(p).or_insert(b);
        }
    }
    for (p, b) in random_seen {
        boundary_seen.entry(p).or_insert(b);
    }
    Ok(SearchReport::from_map(boundary_seen, 0, Termination::LimitsReached))
}

/// Brute-force objective value of a basis, for callers comparing outcomes.
pub fn objective_value(w: &WeightMatrix, f: &Objective, b: &Basis) -> Rational {
    f.eval(&w.project_raw(b))
}
