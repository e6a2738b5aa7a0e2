//! Weight matrices, projected bases and multi-criteria objectives.
//!
//! Minimization is the canonical direction throughout.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{rat, Rational};
use crate::matroid::{Basis, Matroid};

/// Image `W e_B` of a basis.
pub type ProjectedPoint = Vec<i64>;

/// `d x n` integer criteria matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMatrix {
    rows: Vec<Vec<i64>>,
}

impl WeightMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::Dimension("weight matrix needs at least one row".into()));
        };
        let n = first.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("weight rows must share a positive length".into()));
        }
        Ok(WeightMatrix { rows })
    }

    pub fn d(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn check_matroid(&self, m: &Matroid) -> Result<()> {
        if self.n() != m.n() {
            return Err(Error::Dimension(format!("weights have {} columns, matroid has {} elements", self.n(), m.n())));
        }
        Ok(())
    }

    /// `c^T W` as a weight per element.
    pub fn pull_back(&self, c: &[Rational]) -> Vec<Rational> {
        (0..self.n())
            .map(|j| self.rows.iter().zip(c).map(|(r, ci)| ci * rat(r[j])).sum())
            .collect()
    }

    pub(crate) fn project_raw(&self, b: &Basis) -> ProjectedPoint {
        self.rows.iter().map(|r| b.elements().iter().map(|&e| r[e]).sum()).collect()
    }
}

pub fn project(w: &WeightMatrix, b: &Basis) -> Result<ProjectedPoint> {
    if let Some(&e) = b.elements().iter().find(|&&e| e >= w.n()) {
        return Err(Error::Dimension(format!("element {} beyond {} weight columns", e + 1, w.n())));
    }
    Ok(w.project_raw(b))
}

/// Objective `f: Z^d -> Q` to be minimized.
#[derive(Clone)]
pub enum Objective {
    Linear(Vec<Rational>),
    SquaredDistance(Vec<Rational>),
    QuarticDistance(Vec<Rational>),
    MinMax,
    Custom(Arc<dyn Fn(&[i64]) -> Rational + Send + Sync>),
}

impl fmt::Debug for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Objective::Linear(c) => f.debug_tuple("Linear").field(c).finish(),
            Objective::SquaredDistance(t) => f.debug_tuple("SquaredDistance").field(t).finish(),
            Objective::QuarticDistance(t) => f.debug_tuple("QuarticDistance").field(t).finish(),
            Objective::MinMax => f.write_str("MinMax"),
            Objective::Custom(_) => f.write_str("Custom"),
        }
    }
}

impl Objective {
    pub fn squared_distance_to(target: &[i64]) -> Self {
        Objective::SquaredDistance(target.iter().map(|&x| rat(x)).collect())
    }

    pub fn linear(c: &[i64]) -> Self {
        Objective::Linear(c.iter().map(|&x| rat(x)).collect())
    }

    /// Criteria count the objective expects, if fixed.
    pub fn arity(&self) -> Option<usize> {
        match self {
            Objective::Linear(v) | Objective::SquaredDistance(v) | Objective::QuarticDistance(v) => Some(v.len()),
            _ => None,
        }
    }

    pub fn check(&self, d: usize) -> Result<()> {
        match self.arity() {
            Some(a) if a != d => Err(Error::Dimension(format!("objective expects {a} criteria, weights have {d}"))),
            _ => Ok(()),
        }
    }

    pub fn eval(&self, p: &[i64]) -> Rational {
        match self {
            Objective::Linear(c) => c.iter().zip(p).map(|(ci, &x)| ci * rat(x)).sum(),
            Objective::SquaredDistance(t) => t
                .iter()
                .zip(p)
                .map(|(ti, &x)| {
                    let d = rat(x) - ti;
                    &d * &d
                })
                .sum(),
            Objective::QuarticDistance(t) => t
                .iter()
                .zip(p)
                .map(|(ti, &x)| {
                    let d = rat(x) - ti;
                    let d2 = &d * &d;
                    &d2 * &d2
                })
                .sum(),
            Objective::MinMax => rat(minmax_value(p)),
            Objective::Custom(f) => f(p),
        }
    }
}

/// `a` dominates `b` when `a <= b` componentwise and `a != b`.
pub fn dominates(a: &[i64], b: &[i64]) -> bool {
    a != b && a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Non-dominated points, deduplicated and sorted.
pub fn pareto_filter(points: &[ProjectedPoint]) -> Vec<ProjectedPoint> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    pts.iter()
        .filter(|p| !pts.iter().any(|q| dominates(q, p)))
        .cloned()
        .collect()
}

pub fn minmax_value(p: &[i64]) -> i64 {
    p.iter().copied().max().unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundingBox {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl BoundingBox {
    pub fn contains(&self, p: &[i64]) -> bool {
        p.len() == self.lo.len() && p.iter().zip(&self.lo).zip(&self.hi).all(|((x, l), h)| l <= x && x <= h)
    }

    pub fn lattice_size(&self) -> u128 {
        self.lo.iter().zip(&self.hi).map(|(l, h)| (h - l + 1) as u128).product()
    }

    /// All integer points in lexicographic order.
    pub fn lattice_points(&self) -> Vec<ProjectedPoint> {
        let mut out = vec![Vec::new()];
        for (l, h) in self.lo.iter().zip(&self.hi) {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (*l..=*h).map(move |x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        out
    }
}

/// Tight box around all projected bases from `2d` greedy runs.
pub fn bounding_box(m: &Matroid, w: &WeightMatrix) -> Result<BoundingBox> {
    w.check_matroid(m)?;
    let mut lo = Vec::with_capacity(w.d());
    let mut hi = Vec::with_capacity(w.d());
    for row in w.rows() {
        let up: Vec<Rational> = row.iter().map(|&x| rat(x)).collect();
        let down: Vec<Rational> = row.iter().map(|&x| rat(-x)).collect();
        let (_, max) = m.greedy_max_basis(&up)?;
        let (_, neg_min) = m.greedy_max_basis(&down)?;
        hi.push(to_i64(&max));
        lo.push(-to_i64(&neg_min));
    }
    Ok(BoundingBox { lo, hi })
}

fn to_i64(q: &Rational) -> i64 {
    debug_assert!(q.is_integer());
    let z = q.to_integer();
    if z.is_zero() {
        0
    } else {
        i64::try_from(z).expect("projected coordinate fits in i64")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::k4;

    #[test]
    fn projection_examples() {
        let ones = WeightMatrix::new(vec![vec![1; 6]]).unwrap();
        let b = k4().random_basis(3).unwrap();
        assert_eq!(project(&ones, &b).unwrap(), vec![3]);
        let w = WeightMatrix::new(vec![vec![1, 2, 3, 4]]).unwrap();
        let b12 = Basis::from_labels(&[1, 2]).unwrap();
        assert_eq!(project(&w, &b12).unwrap(), vec![3]);
        let w = WeightMatrix::new(vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]]).unwrap();
        assert_eq!(project(&w, &b12).unwrap(), vec![1, 1]);
        let short = WeightMatrix::new(vec![vec![1]]).unwrap();
        assert!(project(&short, &b12).is_err());
    }

    #[test]
    fn pareto_examples() {
        let pts = vec![vec![1, 2], vec![2, 1], vec![2, 2]];
        assert_eq!(pareto_filter(&pts), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(pareto_filter(&[vec![5, 5]]), vec![vec![5, 5]]);
    }

    #[test]
    fn minmax_examples() {
        assert_eq!(minmax_value(&[3, 5, 2]), 5);
        assert_eq!(minmax_value(&[7]), 7);
    }

    #[test]
    fn uniform_box() {
        let u = Matroid::uniform(4, 2).unwrap();
        let w = WeightMatrix::new(vec![vec![1, 2, 3, 4]]).unwrap();
        assert_eq!(bounding_box(&u, &w).unwrap(), BoundingBox { lo: vec![3], hi: vec![7] });
        let ones = WeightMatrix::new(vec![vec![1; 4]]).unwrap();
        assert_eq!(bounding_box(&u, &ones).unwrap(), BoundingBox { lo: vec![2], hi: vec![2] });
    }

    #[test]
    fn box_lattice() {
        let b = BoundingBox { lo: vec![0, 1], hi: vec![1, 2] };
        assert_eq!(b.lattice_points(), vec![vec![0, 1], vec![0, 2], vec![1, 1], vec![1, 2]]);
        assert_eq!(b.lattice_size(), 4);
    }

    #[test]
    fn objectives() {
        let p = [3, 4];
        assert_eq!(Objective::linear(&[1, -1]).eval(&p), rat(-1));
        assert_eq!(Objective::squared_distance_to(&[0, 0]).eval(&p), rat(25));
        assert_eq!(Objective::QuarticDistance(vec![rat(2), rat(4)]).eval(&p), rat(1));
        assert_eq!(Objective::MinMax.eval(&p), rat(4));
        let c = Objective::Custom(Arc::new(|p: &[i64]| rat(p[0] * p[1])));
        assert_eq!(c.eval(&p), rat(12));
        assert!(Objective::linear(&[1]).check(2).is_err());
    }
}
