//! Exchange graphs of incidence-vector collections, determinant reduction,
//! unimodular simplices and square 2-faces.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::ehrhart::{placing_triangulation, LatticeFrame, Triangulation};
use crate::error::{Error, Result};
use crate::linalg::{det, det_i64, rank_i64};
use crate::matroid::{Basis, Caps, Matroid, UnionFind};
use crate::oracles::all_bases;

/// `rows`: graph on row indices joining rows that differ by `e_s - e_t`.
/// `cols`: graph on coordinates joining each such pair `{s, t}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeGraphs {
    pub row_count: usize,
    pub col_count: usize,
    pub row_edges: Vec<(usize, usize)>,
    pub col_edges: Vec<(usize, usize)>,
}

impl ExchangeGraphs {
    pub fn row_components(&self) -> Vec<Vec<usize>> {
        components(self.row_count, &self.row_edges)
    }

    pub fn col_components(&self) -> Vec<Vec<usize>> {
        components(self.col_count, &self.col_edges)
    }
}

fn components(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(n);
    for &(a, b) in edges {
        uf.union(a, b);
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..n {
        groups.entry(uf.find(v)).or_default().push(v);
    }
    groups.into_values().collect()
}

fn validate(x: &[Vec<i64>]) -> Result<usize> {
    let Some(first) = x.first() else {
        return Err(Error::Invalid("empty collection".into()));
    };
    let n = first.len();
    let weight: i64 = first.iter().sum();
    for (i, row) in x.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Dimension(format!("row {} has length {}, expected {n}", i + 1, row.len())));
        }
        if row.iter().any(|&v| v != 0 && v != 1) {
            return Err(Error::Invalid(format!("row {} is not a 0/1 vector", i + 1)));
        }
        if row.iter().sum::<i64>() != weight {
            return Err(Error::Invalid(format!("row {} has a different weight", i + 1)));
        }
        if x[..i].contains(row) {
            return Err(Error::Invalid(format!("row {} repeats an earlier row", i + 1)));
        }
    }
    Ok(n)
}

/// Coordinates `(s, t)` with `a - b = e_s - e_t`.
fn single_exchange(a: &[i64], b: &[i64]) -> Option<(usize, usize)> {
    let mut plus = None;
    let mut minus = None;
    for (i, (x, y)) in a.iter().zip(b).enumerate() {
        match x - y {
            0 => {}
            1 if plus.is_none() => plus = Some(i),
            -1 if minus.is_none() => minus = Some(i),
            _ => return None,
        }
    }
    Some((plus?, minus?))
}

pub fn exchange_graphs(x: &[Vec<i64>]) -> Result<ExchangeGraphs> {
    let n = validate(x)?;
    let mut row_edges = Vec::new();
    let mut col_edges = Vec::new();
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            if let Some((s, t)) = single_exchange(&x[i], &x[j]) {
                row_edges.push((i, j));
                col_edges.push((s.min(t), s.max(t)));
            }
        }
    }
    col_edges.sort_unstable();
    col_edges.dedup();
    Ok(ExchangeGraphs { row_count: x.len(), col_count: n, row_edges, col_edges })
}

/// Component-sum matrix: entry `(p, q)` sums a representative row of the
/// `p`-th row component over the `q`-th column component. Its determinant
/// has the absolute value of `det(X)`.
pub fn reduced_determinant(x: &[Vec<i64>]) -> Result<(Vec<Vec<i64>>, BigInt)> {
    let n = validate(x)?;
    if x.len() != n {
        return Err(Error::Dimension(format!("{} rows for {n} coordinates", x.len())));
    }
    if rank_i64(x) < n {
        return Err(Error::Invalid("rows are linearly dependent".into()));
    }
    let g = exchange_graphs(x)?;
    let rows = g.row_components();
    let cols = g.col_components();
    if rows.len() != cols.len() {
        return Err(Error::Inconsistent(format!(
            "{} row components but {} column components",
            rows.len(),
            cols.len()
        )));
    }
    let reduced: Vec<Vec<i64>> = rows
        .iter()
        .map(|rc| cols.iter().map(|cc| cc.iter().map(|&c| x[rc[0]][c]).sum()).collect())
        .collect();
    let d = det_i64(&reduced).abs();
    Ok((reduced, d))
}

/// `|det(X)| = rank(M)`.
pub fn is_unimodular_simplex(x: &[Vec<i64>], m: &Matroid) -> Result<bool> {
    if x.len() != m.n() || x.iter().any(|r| r.len() != m.n()) {
        return Err(Error::Dimension(format!("need {} incidence rows of length {}", m.n(), m.n())));
    }
    Ok(det_i64(x).abs() == BigInt::from(m.rank_of_matroid()))
}

/// `(rank X, components of the column graph)`; requires a connected row graph.
pub fn rank_component_relation(x: &[Vec<i64>]) -> Result<(usize, usize)> {
    let g = exchange_graphs(x)?;
    if g.row_components().len() != 1 {
        return Err(Error::Invalid("row exchange graph is disconnected".into()));
    }
    Ok((rank_i64(x), g.col_components().len()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwoFace {
    Square,
    NotAFace,
}

/// Decides whether `w1 .. w4`, with `w2 = w1 + e_s - e_t`, `w3 = w1 + e_m - e_l`
/// and `w4 = w2 + w3 - w1`, span a square 2-face.
pub fn classify_square_2face(m: &Matroid, w: [&Basis; 4]) -> Result<TwoFace> {
    let n = m.n();
    for b in w {
        if !m.is_basis(b.elements())? {
            return Err(Error::NotABasis(b.labels()));
        }
    }
    let inc: Vec<Vec<i64>> = w.iter().map(|b| b.incidence(n)).collect();
    let pattern = || Error::Invalid("vertices do not form the required parallelogram".into());
    let (s, t) = single_exchange(&inc[1], &inc[0]).ok_or_else(pattern)?;
    let (mm, l) = single_exchange(&inc[2], &inc[0]).ok_or_else(pattern)?;
    if s == mm || t == l {
        return Err(pattern());
    }
    let expected: Vec<i64> = (0..n).map(|i| inc[1][i] + inc[2][i] - inc[0][i]).collect();
    if inc[3] != expected {
        return Err(pattern());
    }
    let shifted = |plus: usize, minus: usize| -> Vec<usize> {
        let mut e: Vec<usize> = w[0].elements().iter().copied().filter(|&x| x != minus).collect();
        e.push(plus);
        e.sort_unstable();
        e
    };
    let w5 = m.is_basis(&shifted(s, l))?;
    let w6 = m.is_basis(&shifted(mm, t))?;
    Ok(if w5 && w6 { TwoFace::NotAFace } else { TwoFace::Square })
}

/// Placing triangulation of the matroid polytope, bases inserted in
/// lexicographic order.
pub fn polytope_triangulation(m: &Matroid, caps: &Caps) -> Result<(Vec<Basis>, Triangulation)> {
    let bases = all_bases(m, caps)?;
    let frame = LatticeFrame::of_matroid(m);
    let points: Vec<Vec<i64>> = bases.iter().map(|b| frame.project(&b.incidence(m.n()))).collect();
    let order: Vec<usize> = (0..points.len()).collect();
    let t = placing_triangulation(&points, &order)?;
    Ok((bases, t))
}

/// `|det|` of the incidence vectors of one maximal cell.
pub fn cell_incidence_determinant(m: &Matroid, bases: &[Basis], cell: &[usize]) -> Result<BigInt> {
    if cell.len() != m.n() {
        return Err(Error::Dimension(format!("cell has {} vertices, need {}", cell.len(), m.n())));
    }
    let rows: Vec<Vec<BigInt>> = cell
        .iter()
        .map(|&i| bases[i].incidence(m.n()).into_iter().map(BigInt::from).collect())
        .collect();
    Ok(det(&rows).abs())
}

/// True when the support sum of every neighbor of `b` is `rank - 1`.
pub fn neighbors_on_support_hyperplane(m: &Matroid, b: &Basis) -> Result<bool> {
    let r = m.rank_of_matroid();
    Ok(m.adjacent_bases(b)?
        .iter()
        .all(|nb| nb.elements().iter().filter(|&&e| b.contains(e)).count() + 1 == r))
}
