//! Oracle-backed matroids with uniform, graphical and vector backends.
//!
//! Elements are 0-based internally. File formats and user-facing labels are 1-based.

use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{echelon, Rational};

/// Resource caps guarding exponential sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of candidate subsets or emitted objects in an enumeration.
    pub enumeration: u128,
    /// Maximum ground-set size for which all `2^n` subset constraints are emitted.
    pub constraint_elements: usize,
    /// Maximum rejection-sampling draws in `random_basis`.
    pub rejection_draws: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enumeration: 10_000_000,
            constraint_elements: 16,
            rejection_draws: 10_000_000,
        }
    }
}

/// A basis, stored as a strictly increasing list of 0-based elements.
///
/// The derived order is the lexicographic order on sorted element lists.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Basis(Vec<usize>);

impl Basis {
    /// Sorts the input and rejects duplicates.
    pub fn new(mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid(format!("duplicate element in {elements:?}")));
        }
        Ok(Basis(elements))
    }

    /// Builds from 1-based labels.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        if labels.contains(&0) {
            return Err(Error::Invalid("labels are 1-based".into()));
        }
        Basis::new(labels.iter().map(|&l| l - 1).collect())
    }

    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn labels(&self) -> Vec<usize> {
        self.0.iter().map(|&e| e + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    /// `B - out + inn`, kept sorted.
    pub fn exchange(&self, out: usize, inn: usize) -> Basis {
        let mut v: Vec<usize> = self.0.iter().copied().filter(|&e| e != out).collect();
        let pos = v.binary_search(&inn).unwrap_or_else(|p| p);
        v.insert(pos, inn);
        Basis(v)
    }

    /// 0/1 incidence vector of length `n`.
    pub fn incidence(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        for &e in &self.0 {
            v[e] = 1;
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Backend {
    Uniform { rank: usize },
    /// Edge `e` joins `edges[e].0` and `edges[e].1`.
    Graphical { vertices: usize, edges: Vec<(usize, usize)> },
    /// Columns of `rows` are the ground-set elements.
    Vector { rows: Vec<Vec<Rational>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    n: usize,
    rank: usize,
    backend: Backend,
}

impl Matroid {
    pub fn uniform(n: usize, r: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("ground set must be nonempty".into()));
        }
        if r > n {
            return Err(Error::Invalid(format!("rank {r} exceeds n = {n}")));
        }
        Ok(Matroid { n, rank: r, backend: Backend::Uniform { rank: r } })
    }

    /// Graphical matroid of a 0/1 adjacency matrix; edges are labeled in
    /// row-major order of the upper triangle.
    pub fn graphical(adjacency: &[Vec<u8>]) -> Result<Self> {
        let v = adjacency.len();
        if let Some(i) = adjacency.iter().position(|row| row.len() != v) {
            return Err(Error::Dimension(format!("adjacency row {} has {} entries, expected {v}", i + 1, adjacency[i].len())));
        }
        for (i, row) in adjacency.iter().enumerate() {
            if row[i] != 0 {
                return Err(Error::Invalid(format!("self-loop at vertex {}", i + 1)));
            }
            for (j, &x) in row.iter().enumerate() {
                if x > 1 {
                    return Err(Error::Invalid(format!("entry ({}, {}) is not 0/1", i + 1, j + 1)));
                }
                if x != adjacency[j][i] {
                    return Err(Error::Invalid(format!("adjacency not symmetric at ({}, {})", i + 1, j + 1)));
                }
            }
        }
        let edges = (0..v)
            .flat_map(|i| (i + 1..v).map(move |j| (i, j)))
            .filter(|&(i, j)| adjacency[i][j] == 1)
            .collect();
        Matroid::from_edges(v, edges)
    }

    pub fn from_edges(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::Invalid("graph has no edges".into()));
        }
        for &(a, b) in &edges {
            if a >= vertices || b >= vertices {
                return Err(Error::Invalid(format!("edge ({a}, {b}) uses a missing vertex")));
            }
            if a == b {
                return Err(Error::Invalid(format!("self-loop at vertex {}", a + 1)));
            }
        }
        let n = edges.len();
        let mut m = Matroid { n, rank: 0, backend: Backend::Graphical { vertices, edges } };
        m.rank = m.rank_raw(&(0..n).collect::<Vec<_>>());
        Ok(m)
    }

    /// Column matroid of an `m x n` rational matrix.
    pub fn vector(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.first().map_or(0, |r| r.len());
        if n == 0 {
            return Err(Error::Invalid("matrix has no columns".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        let mut m = Matroid { n, rank: 0, backend: Backend::Vector { rows } };
        m.rank = m.rank_raw(&(0..n).collect::<Vec<_>>());
        Ok(m)
    }

    pub fn vector_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Matroid::vector(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Rank of the whole ground set.
    pub fn rank_of_matroid(&self) -> usize {
        self.rank
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    fn check(&self, set: &[usize]) -> Result<()> {
        match set.iter().find(|&&e| e >= self.n) {
            Some(&index) => Err(Error::IndexOutOfRange { index, n: self.n }),
            None => Ok(()),
        }
    }

    /// Rank of `set` (0-based elements, duplicates ignored).
    pub fn rank(&self, set: &[usize]) -> Result<usize> {
        self.check(set)?;
        Ok(self.rank_raw(set))
    }

    pub(crate) fn rank_raw(&self, set: &[usize]) -> usize {
        match &self.backend {
            Backend::Uniform { rank } => {
                let mut s = set.to_vec();
                s.sort_unstable();
                s.dedup();
                s.len().min(*rank)
            }
            Backend::Graphical { vertices, edges } => {
                let mut uf = UnionFind::new(*vertices);
                set.iter().filter(|&&e| uf.union(edges[e].0, edges[e].1)).count()
            }
            Backend::Vector { rows } => {
                let mut sub: Vec<Vec<Rational>> =
                    rows.iter().map(|r| set.iter().map(|&e| r[e].clone()).collect()).collect();
                echelon(&mut sub).len()
            }
        }
    }

    /// Independence of a duplicate-free set.
    pub(crate) fn independent_raw(&self, set: &[usize]) -> bool {
        self.rank_raw(set) == set.len()
    }

    pub fn is_independent(&self, set: &[usize]) -> Result<bool> {
        self.check(set)?;
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        Ok(s.len() == set.len() && self.independent_raw(set))
    }

    pub fn is_basis(&self, set: &[usize]) -> Result<bool> {
        Ok(set.len() == self.rank && self.is_independent(set)?)
    }

    fn require_basis(&self, b: &Basis) -> Result<()> {
        if self.is_basis(b.elements())? {
            Ok(())
        } else {
            Err(Error::NotABasis(b.labels()))
        }
    }

    /// All bases `B - i + j` with `i in B`, `j not in B`, sorted lexicographically.
    pub fn adjacent_bases(&self, b: &Basis) -> Result<Vec<Basis>> {
        self.require_basis(b)?;
        Ok(self.adjacent_raw(b))
    }

    pub(crate) fn adjacent_raw(&self, b: &Basis) -> Vec<Basis> {
        let mut out = Vec::new();
        self.for_each_exchange(b, |_, _, nb| out.push(nb));
        out.sort();
        out
    }

    /// Calls `f(out, in, B - out + in)` for every basis exchange of `b`.
    pub(crate) fn for_each_exchange(&self, b: &Basis, mut f: impl FnMut(usize, usize, Basis)) {
        let outside: Vec<usize> = (0..self.n).filter(|&e| !b.contains(e)).collect();
        let mut scratch = Vec::with_capacity(b.len());
        for &i in b.elements() {
            for &j in &outside {
                scratch.clear();
                scratch.extend(b.elements().iter().copied().filter(|&e| e != i));
                scratch.push(j);
                if self.independent_raw(&scratch) {
                    f(i, j, b.exchange(i, j));
                }
            }
        }
    }

    /// Maximum-weight basis. Elements are scanned by decreasing weight, ties by
    /// ascending index, which yields the lexicographically least optimum.
    pub fn greedy_max_basis(&self, weights: &[Rational]) -> Result<(Basis, Rational)> {
        if weights.len() != self.n {
            return Err(Error::Dimension(format!("{} weights for {} elements", weights.len(), self.n)));
        }
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by(|&a, &b| weights[b].cmp(&weights[a]).then(a.cmp(&b)));
        let mut chosen = Vec::with_capacity(self.rank);
        for e in order {
            if chosen.len() == self.rank {
                break;
            }
            chosen.push(e);
            if !self.independent_raw(&chosen) {
                chosen.pop();
            }
        }
        let total = chosen.iter().map(|&e| weights[e].clone()).sum();
        Ok((Basis::new(chosen)?, total))
    }

    /// The lexicographically least basis.
    pub fn first_basis(&self) -> Basis {
        let zeros = vec![Rational::zero(); self.n];
        self.greedy_max_basis(&zeros).expect("weights sized to n").0
    }

    /// Uniform random basis by rejection sampling of `rank`-subsets.
    pub fn random_basis(&self, seed: u64) -> Result<Basis> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.random_basis_with(&mut rng, Caps::default().rejection_draws)
    }

    pub fn random_basis_with<R: rand::Rng>(&self, rng: &mut R, max_draws: u64) -> Result<Basis> {
        for _ in 0..max_draws {
            let mut s = sample(rng, self.n, self.rank).into_vec();
            s.sort_unstable();
            if self.independent_raw(&s) {
                return Ok(Basis(s));
            }
        }
        Err(Error::cap("rejection sampling draws", max_draws as u128))
    }

    /// Connected components of the matroid, each sorted, ordered by least element.
    /// Computed from the fundamental circuits of the least basis.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let b = self.first_basis();
        let mut uf = UnionFind::new(self.n);
        let mut scratch = Vec::with_capacity(b.len());
        for j in (0..self.n).filter(|&e| !b.contains(e)) {
            for &i in b.elements() {
                scratch.clear();
                scratch.extend(b.elements().iter().copied().filter(|&e| e != i));
                scratch.push(j);
                if self.independent_raw(&scratch) {
                    uf.union(i, j);
                }
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for e in 0..self.n {
            groups.entry(uf.find(e)).or_default().push(e);
        }
        let mut comps: Vec<Vec<usize>> = groups.into_values().collect();
        comps.sort();
        comps
    }

    /// Dimension of the matroid polytope: `n` minus the number of components.
    pub fn polytope_dimension(&self) -> usize {
        self.n - self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Facet description of the matroid polytope.
    pub fn polytope_constraints(&self, caps: &Caps) -> Result<PolytopeConstraints> {
        if self.n > caps.constraint_elements || self.n >= usize::BITS as usize {
            return Err(Error::cap(format!("ground set of {} elements for subset constraints", self.n), caps.constraint_elements as u128));
        }
        let subset_ranks = (0u64..1 << self.n)
            .map(|mask| {
                let set: Vec<usize> = (0..self.n).filter(|&e| mask >> e & 1 == 1).collect();
                self.rank_raw(&set)
            })
            .collect();
        Ok(PolytopeConstraints { n: self.n, rank: self.rank, subset_ranks })
    }
}

/// `x >= 0`, `sum x = k r`, `sum_{i in A} x_i <= k rank(A)` for every nonempty `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeConstraints {
    pub n: usize,
    pub rank: usize,
    /// Rank of every subset, indexed by bitmask.
    pub subset_ranks: Vec<usize>,
}

impl PolytopeConstraints {
    /// Membership of `x` in the `k`-th dilate.
    pub fn contains(&self, x: &[Rational], k: u64) -> bool {
        if x.len() != self.n || x.iter().any(|v| v < &Rational::zero()) {
            return false;
        }
        let k = Rational::from_integer(k.into());
        let total: Rational = x.iter().cloned().sum();
        if total != &k * Rational::from_integer(self.rank.into()) {
            return false;
        }
        self.subset_ranks.iter().enumerate().skip(1).all(|(mask, &r)| {
            let s: Rational = (0..self.n).filter(|&e| mask >> e & 1 == 1).map(|e| x[e].clone()).sum();
            s <= &k * Rational::from_integer(r.into())
        })
    }

    pub fn contains_integral(&self, x: &[i64], k: u64) -> bool {
        let q: Vec<Rational> = x.iter().map(|&v| Rational::from_integer(v.into())).collect();
        self.contains(&q, k)
    }

    /// Subsets whose constraint is not implied by `0 <= x_i <= k` and the
    /// equation, i.e. those with `rank(A) < min(|A|, r)`.
    pub fn essential_subsets(&self) -> Vec<(u64, usize)> {
        self.subset_ranks
            .iter()
            .enumerate()
            .filter(|&(mask, &r)| {
                let size = (mask as u64).count_ones() as usize;
                mask != 0 && r < size.min(self.rank)
            })
            .map(|(mask, &r)| (mask as u64, r))
            .collect()
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when `a` and `b` were in different classes.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}
