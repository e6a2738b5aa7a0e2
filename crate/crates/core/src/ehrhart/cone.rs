//! Tangent cones, their unimodular triangulations and half-open decompositions.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::triangulation::{join_apex, placing_triangulation};
use crate::error::{Error, Result};
use crate::linalg::{adjugate, det, rank_i64};
use crate::matroid::{Basis, Matroid};

/// Coordinates on the lattice `{x in Z^n : x sums to 0 on every block}`,
/// obtained by dropping the least element of each block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeFrame {
    n: usize,
    keep: Vec<usize>,
}

impl LatticeFrame {
    pub fn identity(n: usize) -> Self {
        LatticeFrame { n, keep: (0..n).collect() }
    }

    /// Frame of the direction space of the matroid polytope.
    pub fn of_matroid(m: &Matroid) -> Self {
        let mut dropped = vec![false; m.n()];
        for comp in m.components() {
            dropped[comp[0]] = true;
        }
        LatticeFrame { n: m.n(), keep: (0..m.n()).filter(|&e| !dropped[e]).collect() }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.keep.len()
    }

    pub fn project(&self, v: &[i64]) -> Vec<i64> {
        self.keep.iter().map(|&i| v[i]).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub apex: Vec<i64>,
    pub generators: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfOpenSimplicialCone {
    pub apex: Vec<i64>,
    pub generators: Vec<Vec<i64>>,
    /// `strict[j]`: the facet opposite generator `j` is excluded.
    pub strict: Vec<bool>,
}

/// `sign * z^a / prod_j (1 - z^{b_j})`; `v` is the vertex the term belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenFunTerm {
    pub sign: i64,
    pub a: Vec<i64>,
    pub v: Vec<i64>,
    pub b: Vec<Vec<i64>>,
}

/// Apex `e_B`, one generator `e_B' - e_B` per adjacent basis `B'`.
pub fn tangent_cone(m: &Matroid, b: &Basis) -> Result<Cone> {
    let apex = b.incidence(m.n());
    let generators = m
        .adjacent_bases(b)?
        .iter()
        .map(|nb| nb.incidence(m.n()).iter().zip(&apex).map(|(x, y)| x - y).collect())
        .collect();
    Ok(Cone { apex, generators })
}

fn is_elementary(g: &[i64]) -> bool {
    let plus = g.iter().filter(|&&x| x == 1).count();
    let minus = g.iter().filter(|&&x| x == -1).count();
    plus + minus >= 1 && plus <= 1 && minus <= 1 && g.iter().all(|&x| (-1..=1).contains(&x))
}

/// Splits a full-dimensional cone with elementary generators into simplicial
/// cones: place the origin and then the generators, then join the origin to
/// the boundary facets that avoid it.
pub fn cone_triangulation(c: &Cone, frame: &LatticeFrame) -> Result<Vec<Cone>> {
    if let Some(g) = c.generators.iter().find(|g| !is_elementary(g)) {
        return Err(Error::Invalid(format!("generator {g:?} is not elementary")));
    }
    let projected: Vec<Vec<i64>> = c.generators.iter().map(|g| frame.project(g)).collect();
    let dim = frame.dim();
    if rank_i64(&projected) != dim {
        return Err(Error::Dimension(format!("cone generators do not span the {dim}-dimensional lattice")));
    }
    if projected.len() == dim {
        return Ok(vec![c.clone()]);
    }
    let mut points = vec![vec![0; dim]];
    points.extend(projected);
    let order: Vec<usize> = (0..points.len()).collect();
    let t = placing_triangulation(&points, &order)?;
    Ok(join_apex(&t, 0)
        .into_iter()
        .map(|cell| Cone {
            apex: c.apex.clone(),
            generators: cell[1..].iter().map(|&i| c.generators[i - 1].clone()).collect(),
        })
        .collect())
}

fn generator_matrix(c: &Cone, frame: &LatticeFrame) -> Result<Vec<Vec<BigInt>>> {
    if c.generators.len() != frame.dim() {
        return Err(Error::Dimension(format!(
            "simplicial cell has {} generators in a {}-dimensional lattice",
            c.generators.len(),
            frame.dim()
        )));
    }
    let cols: Vec<Vec<i64>> = c.generators.iter().map(|g| frame.project(g)).collect();
    Ok((0..frame.dim()).map(|r| cols.iter().map(|g| BigInt::from(g[r])).collect()).collect())
}

/// Determinant of the generators over the frame lattice.
pub fn cell_determinant(c: &Cone, frame: &LatticeFrame) -> Result<BigInt> {
    Ok(det(&generator_matrix(c, frame)?))
}

/// Normals `b*_j` with the cell equal to `{x : <b*_j, x> <= 0 for all j}`,
/// in frame coordinates; `<b*_j, g_j> < 0`.
pub fn facet_normals(c: &Cone, frame: &LatticeFrame) -> Result<Vec<Vec<BigInt>>> {
    let g = generator_matrix(c, frame)?;
    let d = det(&g);
    let adj = adjugate(&g).ok_or_else(|| Error::Invalid("simplicial cell is degenerate".into()))?;
    Ok(adj
        .into_iter()
        .map(|row| row.into_iter().map(|x| if d.is_positive() { -x } else { x }).collect())
        .collect())
}

fn dot_big(a: &[BigInt], y: &[BigInt]) -> BigInt {
    a.iter().zip(y).map(|(x, z)| x * z).sum()
}

/// `sum_j xi^j g_j` over all cone generators (frame coordinates), for the
/// first `xi = 1, 2, ...` avoiding every facet hyperplane of every cell.
pub fn generic_interior_point(c: &Cone, cells: &[Cone], frame: &LatticeFrame) -> Result<Vec<BigInt>> {
    let normals: Vec<Vec<BigInt>> = cells
        .iter()
        .map(|cell| facet_normals(cell, frame))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let projected: Vec<Vec<i64>> = c.generators.iter().map(|g| frame.project(g)).collect();
    let bound = 2 + normals.len() * projected.len().max(1);
    for xi in 1..=bound {
        let mut y = vec![BigInt::zero(); frame.dim()];
        let mut power = BigInt::one();
        for g in &projected {
            power *= xi;
            for (yi, &gi) in y.iter_mut().zip(g) {
                *yi += &power * gi;
            }
        }
        if normals.iter().all(|nrm| !dot_big(nrm, &y).is_zero()) {
            return Ok(y);
        }
    }
    Err(Error::Inconsistent("no generic interior point on the moment curve".into()))
}

/// Facet `j` of a cell is strict when `<b*_j, y> > 0`.
pub fn half_open_decompose(cells: &[Cone], frame: &LatticeFrame, y: &[BigInt]) -> Result<Vec<HalfOpenSimplicialCone>> {
    cells
        .iter()
        .map(|cell| {
            let normals = facet_normals(cell, frame)?;
            let mut strict = Vec::with_capacity(normals.len());
            for nrm in &normals {
                let s = dot_big(nrm, y);
                if s.is_zero() {
                    return Err(Error::Invalid("y lies on a facet hyperplane".into()));
                }
                strict.push(s.is_positive());
            }
            Ok(HalfOpenSimplicialCone { apex: cell.apex.clone(), generators: cell.generators.clone(), strict })
        })
        .collect()
}

/// Numerator `a = apex + sum of strict generators` of a unimodular cell.
pub fn genfun_of_halfopen(c: &HalfOpenSimplicialCone, frame: &LatticeFrame) -> Result<GenFunTerm> {
    let closed = Cone { apex: c.apex.clone(), generators: c.generators.clone() };
    let d = cell_determinant(&closed, frame)?;
    if d.abs() != BigInt::one() {
        return Err(Error::Invalid(format!("cell has determinant {d}, not unimodular")));
    }
    let mut a = c.apex.clone();
    for (g, _) in c.generators.iter().zip(&c.strict).filter(|(_, &s)| s) {
        for (ai, gi) in a.iter_mut().zip(g) {
            *ai += gi;
        }
    }
    Ok(GenFunTerm { sign: 1, a, v: c.apex.clone(), b: c.generators.clone() })
}

/// Generating-function terms of the tangent cone at `b`.
pub fn vertex_terms(m: &Matroid, b: &Basis, frame: &LatticeFrame) -> Result<Vec<GenFunTerm>> {
    let cone = tangent_cone(m, b)?;
    if frame.dim() == 0 {
        return Ok(vec![GenFunTerm { sign: 1, a: cone.apex.clone(), v: cone.apex, b: Vec::new() }]);
    }
    let cells = cone_triangulation(&cone, frame)?;
    let y = generic_interior_point(&cone, &cells, frame)?;
    half_open_decompose(&cells, frame, &y)?.iter().map(|h| genfun_of_halfopen(h, frame)).collect()
}
