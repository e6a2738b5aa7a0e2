//! Placing triangulations of integer point sets and joins to an apex.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::lp::{maximize, LpOutcome};
use crate::error::{Error, Result};
use crate::linalg::{rank_i64, rat, Rational};

/// Cells are sorted index lists into `points`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pub points: Vec<Vec<i64>>,
    pub order: Vec<usize>,
    pub cells: Vec<Vec<usize>>,
}

impl Triangulation {
    /// Facets lying in exactly one cell, each with that cell's index.
    pub fn boundary_facets(&self) -> Vec<(Vec<usize>, usize)> {
        boundary_facets(&self.cells)
    }

    pub fn dimension(&self) -> usize {
        self.cells.first().map_or(0, |c| c.len().saturating_sub(1))
    }
}

fn boundary_facets(cells: &[Vec<usize>]) -> Vec<(Vec<usize>, usize)> {
    let mut seen: BTreeMap<Vec<usize>, (usize, usize)> = BTreeMap::new();
    for (ci, cell) in cells.iter().enumerate() {
        for skip in 0..cell.len() {
            let facet: Vec<usize> = cell.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &p)| p).collect();
            seen.entry(facet).and_modify(|e| e.0 += 1).or_insert((1, ci));
        }
    }
    seen.into_iter().filter(|(_, (count, _))| *count == 1).map(|(f, (_, ci))| (f, ci)).collect()
}

/// Dimension of the affine hull.
pub fn affine_rank(points: &[&[i64]]) -> usize {
    let Some(first) = points.first() else { return 0 };
    let diffs: Vec<Vec<i64>> = points[1..].iter().map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect()).collect();
    rank_i64(&diffs)
}

/// Whether `v` sees the facet from outside `conv(points)`: no point of the open
/// segment from the facet centroid towards `v` lies in the hull.
pub fn visible(facet: &[Vec<i64>], points: &[Vec<i64>], v: &[i64]) -> Result<bool> {
    if facet.is_empty() {
        return Err(Error::Invalid("empty facet".into()));
    }
    let refs: Vec<&[i64]> = facet.iter().map(Vec::as_slice).collect();
    if affine_rank(&refs) + 1 != facet.len() {
        return Err(Error::Invalid("facet vertices are affinely dependent".into()));
    }
    let dim = v.len();
    if facet.iter().chain(points).any(|p| p.len() != dim) {
        return Err(Error::Dimension("points of mixed dimension".into()));
    }
    let count = rat(facet.len() as i64);
    let centroid: Vec<Rational> = (0..dim).map(|c| facet.iter().map(|p| rat(p[c])).sum::<Rational>() / &count).collect();
    // variables: one weight per point, then the step t, then the slack of t <= 1
    let t = points.len();
    let mut a = Vec::with_capacity(dim + 2);
    let mut b = Vec::with_capacity(dim + 2);
    for c in 0..dim {
        let mut row: Vec<Rational> = points.iter().map(|p| rat(p[c])).collect();
        row.push(&centroid[c] - rat(v[c]));
        row.push(Rational::zero());
        a.push(row);
        b.push(centroid[c].clone());
    }
    let mut sum_row = vec![rat(1); t];
    sum_row.extend([Rational::zero(), Rational::zero()]);
    a.push(sum_row);
    b.push(rat(1));
    let mut cap_row = vec![Rational::zero(); t];
    cap_row.extend([rat(1), rat(1)]);
    a.push(cap_row);
    b.push(rat(1));
    let mut cost = vec![Rational::zero(); t + 2];
    cost[t] = rat(1);
    match maximize(&a, &b, &cost) {
        LpOutcome::Optimal { value, .. } => Ok(!value.is_positive()),
        other => Err(Error::Inconsistent(format!("visibility program ended as {other:?}"))),
    }
}

/// Inserts points in `order`: a point off the current affine hull is joined to
/// every cell, otherwise it is coned over each boundary facet it sees.
pub fn placing_triangulation(points: &[Vec<i64>], order: &[usize]) -> Result<Triangulation> {
    let Some(&first) = order.first() else {
        return Err(Error::Invalid("placing triangulation needs at least one point".into()));
    };
    let dim = points[first].len();
    if points.iter().any(|p| p.len() != dim) {
        return Err(Error::Dimension("points of mixed dimension".into()));
    }
    if let Some(&bad) = order.iter().find(|&&i| i >= points.len()) {
        return Err(Error::IndexOutOfRange { index: bad, n: points.len() });
    }
    let mut inserted = vec![first];
    let mut cells = vec![vec![first]];
    let mut hull_dim = 0;
    for &p in &order[1..] {
        if inserted.iter().any(|&q| points[q] == points[p]) {
            continue;
        }
        let mut refs: Vec<&[i64]> = inserted.iter().map(|&q| points[q].as_slice()).collect();
        refs.push(&points[p]);
        if affine_rank(&refs) > hull_dim {
            hull_dim += 1;
            for c in cells.iter_mut() {
                c.push(p);
                c.sort_unstable();
            }
        } else {
            let current: Vec<Vec<i64>> = inserted.iter().map(|&q| points[q].clone()).collect();
            let mut added = Vec::new();
            for (facet, _) in boundary_facets(&cells) {
                let verts: Vec<Vec<i64>> = facet.iter().map(|&q| points[q].clone()).collect();
                if visible(&verts, &current, &points[p])? {
                    let mut cell = facet;
                    cell.push(p);
                    cell.sort_unstable();
                    added.push(cell);
                }
            }
            cells.extend(added);
        }
        inserted.push(p);
    }
    Ok(Triangulation { points: points.to_vec(), order: order.to_vec(), cells })
}

/// Cells `F + apex` for every boundary facet `F` avoiding the apex and
/// affinely independent of it.
pub fn join_apex(t: &Triangulation, apex: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for (facet, _) in t.boundary_facets() {
        if facet.contains(&apex) {
            continue;
        }
        let mut refs: Vec<&[i64]> = vec![&t.points[apex]];
        refs.extend(facet.iter().map(|&q| t.points[q].as_slice()));
        if affine_rank(&refs) == facet.len() {
            let mut cell = facet;
            cell.push(apex);
            cell.sort_unstable();
            out.push(cell);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{det_i64, solve};

    fn pts(v: &[&[i64]]) -> Vec<Vec<i64>> {
        v.iter().map(|p| p.to_vec()).collect()
    }

    /// Sign test: the coefficient of the opposite vertex in the affine
    /// coordinates of `v` relative to a full-dimensional cell.
    fn beyond(facet: &[Vec<i64>], opposite: &[i64], v: &[i64]) -> bool {
        let base = &facet[0];
        let mut cols: Vec<Vec<i64>> = facet[1..].iter().map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect()).collect();
        cols.push(opposite.iter().zip(base).map(|(a, b)| a - b).collect());
        let n = cols.len();
        let m: Vec<Vec<Rational>> = (0..n).map(|r| (0..n).map(|c| rat(cols[c][r])).collect()).collect();
        let rhs: Vec<Rational> = (0..n).map(|r| rat(v[r] - base[r])).collect();
        let x = solve(&m, &rhs).unwrap();
        x[n - 1].is_negative()
    }

    #[test]
    fn square_edges() {
        let sq = pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let bottom = pts(&[&[0, 0], &[1, 0]]);
        // doubled coordinates keep the probe points integral
        let sq2: Vec<Vec<i64>> = sq.iter().map(|p| p.iter().map(|x| 2 * x).collect()).collect();
        let bottom2: Vec<Vec<i64>> = bottom.iter().map(|p| p.iter().map(|x| 2 * x).collect()).collect();
        assert!(visible(&bottom2, &sq2, &[1, -2]).unwrap());
        assert!(!visible(&bottom2, &sq2, &[1, 4]).unwrap());
        assert!(visible(&bottom, &pts(&[&[0, 0], &[1, 0], &[0, 1]]), &[0, -1]).unwrap());
    }

    #[test]
    fn degenerate_facet_is_rejected() {
        let f = pts(&[&[0, 0], &[1, 1], &[2, 2]]);
        assert!(visible(&f, &f, &[5, 0]).is_err());
    }

    #[test]
    fn pentagon_visibility_matches_sign_test() {
        let pent = pts(&[&[0, 0], &[4, 0], &[5, 3], &[2, 5], &[-1, 3]]);
        let centroid_side = [2, 2];
        for v in [[2, -3], [7, 0], [6, 6], [-3, 0], [0, 8], [9, 2]] {
            let mut count = 0;
            for i in 0..5 {
                let facet = vec![pent[i].clone(), pent[(i + 1) % 5].clone()];
                let lp = visible(&facet, &pent, &v).unwrap();
                assert_eq!(lp, beyond(&facet, &centroid_side, &v), "v={v:?} facet {i}");
                count += lp as usize;
            }
            assert!(count >= 1);
        }
        let two: usize = (0..5)
            .filter(|&i| visible(&[pent[i].clone(), pent[(i + 1) % 5].clone()], &pent, &[6, -1]).unwrap())
            .count();
        assert_eq!(two, 2);
    }

    #[test]
    fn independent_points_give_one_cell() {
        let p = pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let t = placing_triangulation(&p, &[0, 1, 2, 3]).unwrap();
        assert_eq!(t.cells, vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn square_has_two_triangles() {
        let p = pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let t = placing_triangulation(&p, &[0, 1, 2, 3]).unwrap();
        assert_eq!(t.cells.len(), 2);
        let area: i64 = t
            .cells
            .iter()
            .map(|c| {
                let m: Vec<Vec<i64>> = c[1..].iter().map(|&q| vec![p[q][0] - p[c[0]][0], p[q][1] - p[c[0]][1]]).collect();
                i64::try_from(det_i64(&m).abs()).unwrap()
            })
            .sum();
        assert_eq!(area, 2);
    }

    #[test]
    fn interior_point_is_skipped() {
        let p = pts(&[&[0, 0], &[4, 0], &[0, 4], &[1, 1]]);
        let t = placing_triangulation(&p, &[0, 1, 2, 3]).unwrap();
        assert_eq!(t.cells, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn join_of_segment_chain() {
        // apex below a path of two segments
        let p = pts(&[&[0, 0], &[-1, 1], &[0, 1], &[1, 1]]);
        let t = placing_triangulation(&p, &[0, 1, 2, 3]).unwrap();
        assert_eq!(t.cells, vec![vec![0, 1, 2], vec![0, 2, 3]]);
        assert_eq!(join_apex(&t, 0), vec![vec![0, 1, 2], vec![0, 2, 3]]);
    }
}
