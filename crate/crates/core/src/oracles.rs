//! Brute-force ground truth used to validate the algorithms.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::linalg::{binomial, det};
use crate::matroid::{Backend, Basis, Caps, Matroid, UnionFind};
use crate::multicriteria::{ProjectedPoint, WeightMatrix};
use crate::polynomial::LatticeCountTable;

/// All bases in lexicographic order, by a sweep over `rank`-subsets.
pub fn enumerate_bases(m: &Matroid, caps: &Caps) -> Result<Vec<Basis>> {
    let (n, r) = (m.n(), m.rank_of_matroid());
    let candidates = binomial(n as i64, r as i64);
    if candidates > BigInt::from(caps.enumeration) {
        return Err(Error::cap(format!("C({n}, {r}) candidate subsets"), caps.enumeration));
    }
    let mut out = Vec::new();
    let mut combo: Vec<usize> = (0..r).collect();
    loop {
        if m.independent_raw(&combo) {
            out.push(Basis::new(combo.clone())?);
        }
        // next combination in lexicographic order
        let Some(i) = (0..r).rev().find(|&i| combo[i] < n - r + i) else {
            break;
        };
        combo[i] += 1;
        for j in i + 1..r {
            combo[j] = combo[j - 1] + 1;
        }
    }
    Ok(out)
}

/// Spanning trees of a connected graph, emitted in lexicographic order of
/// their edge sets.
///
/// Backtracking over edges: an edge is included when it joins two current
/// components and excluded when the remaining edges still span. Every branch
/// ends in a tree, so the work per tree is polynomial.
pub fn for_each_spanning_tree(m: &Matroid, mut emit: impl FnMut(&[usize])) -> Result<()> {
    let Backend::Graphical { vertices, edges } = m.backend() else {
        return Err(Error::Invalid("spanning-tree enumeration needs a graphical matroid".into()));
    };
    if m.rank_of_matroid() + 1 != *vertices {
        return Err(Error::Invalid("graph is disconnected".into()));
    }
    let mut chosen = Vec::with_capacity(*vertices);
    walk(*vertices, edges, 0, &mut chosen, &mut emit);
    Ok(())
}

fn walk(v: usize, edges: &[(usize, usize)], idx: usize, chosen: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    if chosen.len() + 1 == v {
        emit(chosen);
        return;
    }
    if idx == edges.len() {
        return;
    }
    let mut uf = UnionFind::new(v);
    for &e in chosen.iter() {
        uf.union(edges[e].0, edges[e].1);
    }
    if uf.find(edges[idx].0) != uf.find(edges[idx].1) {
        chosen.push(idx);
        walk(v, edges, idx + 1, chosen, emit);
        chosen.pop();
    }
    // exclude idx only if chosen plus later edges still span
    let mut comps = v - chosen.len();
    for &(a, b) in &edges[idx + 1..] {
        if uf.union(a, b) {
            comps -= 1;
        }
    }
    if comps == 1 {
        walk(v, edges, idx + 1, chosen, emit);
    }
}

pub fn spanning_trees(m: &Matroid, caps: &Caps) -> Result<Vec<Basis>> {
    let mut out = Vec::new();
    let mut overflow = false;
    for_each_spanning_tree(m, |t| {
        if (out.len() as u128) < caps.enumeration {
            out.push(Basis::new(t.to_vec()).expect("tree edges are distinct"));
        } else {
            overflow = true;
        }
    })?;
    if overflow {
        return Err(Error::cap("spanning trees", caps.enumeration));
    }
    Ok(out)
}

/// Number of spanning trees as a cofactor of the graph Laplacian.
pub fn laplacian_tree_count(m: &Matroid) -> Result<BigInt> {
    let Backend::Graphical { vertices, edges } = m.backend() else {
        return Err(Error::Invalid("Laplacian count needs a graphical matroid".into()));
    };
    let v = *vertices;
    let mut lap = vec![vec![BigInt::from(0); v]; v];
    for &(a, b) in edges {
        lap[a][a] += 1;
        lap[b][b] += 1;
        lap[a][b] -= 1;
        lap[b][a] -= 1;
    }
    let minor: Vec<Vec<BigInt>> = lap[1..].iter().map(|r| r[1..].to_vec()).collect();
    Ok(det(&minor))
}

/// All bases; connected graphs use the tree enumerator, everything else the subset sweep.
pub fn all_bases(m: &Matroid, caps: &Caps) -> Result<Vec<Basis>> {
    match m.backend() {
        Backend::Graphical { vertices, .. } if m.rank_of_matroid() + 1 == *vertices => spanning_trees(m, caps),
        _ => enumerate_bases(m, caps),
    }
}

/// Every projected point with the size of its fiber.
pub fn exact_projected_set(m: &Matroid, w: &WeightMatrix, caps: &Caps) -> Result<BTreeMap<ProjectedPoint, u64>> {
    w.check_matroid(m)?;
    let mut out = BTreeMap::new();
    for b in all_bases(m, caps)? {
        *out.entry(w.project_raw(&b)).or_insert(0) += 1;
    }
    Ok(out)
}

fn cross(o: &[i64], a: &[i64], b: &[i64]) -> i128 {
    (a[0] - o[0]) as i128 * (b[1] - o[1]) as i128 - (a[1] - o[1]) as i128 * (b[0] - o[0]) as i128
}

/// Counter-clockwise hull vertices starting from the lexicographically least
/// point; collinear boundary points are dropped.
pub fn planar_convex_hull(points: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    if points.iter().any(|p| p.len() != 2) {
        return Err(Error::Dimension("planar hull needs 2-dimensional points".into()));
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return Ok(pts);
    }
    let mut lower: Vec<Vec<i64>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec<i64>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    Ok(lower)
}

/// `#(kP_M ∩ Z^n)` by sweeping compositions of `k r` into parts in `0..=k`
/// and testing the subset-rank constraints.
pub fn dilation_lattice_count(m: &Matroid, k: u64, caps: &Caps) -> Result<BigInt> {
    let cons = m.polytope_constraints(caps)?;
    let n = m.n();
    let total = k * m.rank_of_matroid() as u64;
    let essential = cons.essential_subsets();
    let unconstrained = bounded_compositions(total, n, k);
    if essential.is_empty() {
        return Ok(unconstrained);
    }
    if unconstrained > BigInt::from(caps.enumeration) {
        return Err(Error::cap(format!("{unconstrained} compositions at k = {k}"), caps.enumeration));
    }
    // check each constraint once its largest element is assigned
    let mut by_last: Vec<Vec<(u64, u64)>> = vec![Vec::new(); n];
    for (mask, r) in essential {
        let last = 63 - mask.leading_zeros() as usize;
        by_last[last].push((mask, k * r as u64));
    }
    let mut x = vec![0u64; n];
    let mut count = 0u64;
    sweep(&mut x, 0, total, k, &by_last, &mut count);
    Ok(BigInt::from(count))
}

fn sweep(x: &mut [u64], i: usize, remaining: u64, k: u64, by_last: &[Vec<(u64, u64)>], count: &mut u64) {
    let n = x.len();
    if i == n {
        if remaining == 0 {
            *count += 1;
        }
        return;
    }
    let slots = (n - i - 1) as u64;
    let lo = remaining.saturating_sub(slots * k);
    let hi = remaining.min(k);
    for v in lo..=hi {
        x[i] = v;
        let ok = by_last[i].iter().all(|&(mask, bound)| {
            (0..=i).filter(|&e| mask >> e & 1 == 1).map(|e| x[e]).sum::<u64>() <= bound
        });
        if ok {
            sweep(x, i + 1, remaining - v, k, by_last, count);
        }
    }
}

/// Number of ways to write `total` as `parts` integers in `0..=bound`.
fn bounded_compositions(total: u64, parts: usize, bound: u64) -> BigInt {
    let t = total as usize;
    let mut ways = vec![BigInt::from(0); t + 1];
    ways[0] = BigInt::from(1);
    for _ in 0..parts {
        let mut next = vec![BigInt::from(0); t + 1];
        for (s, w) in ways.iter().enumerate() {
            if w == &BigInt::from(0) {
                continue;
            }
            for v in 0..=(bound as usize).min(t - s) {
                next[s + v] += w;
            }
        }
        ways = next;
    }
    ways[t].clone()
}

pub fn dilation_table(m: &Matroid, kmax: u64, caps: &Caps) -> Result<LatticeCountTable> {
    Ok(LatticeCountTable::new((0..=kmax).map(|k| dilation_lattice_count(m, k, caps)).collect::<Result<_>>()?))
}

/// Count as `u64`, for callers that know it fits.
pub fn small(count: &BigInt) -> u64 {
    count.to_u64().expect("count fits in u64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{complete_graph, cube_graph, k4, octahedron_graph};

    #[test]
    fn basis_counts() {
        let caps = Caps::default();
        assert_eq!(enumerate_bases(&Matroid::uniform(4, 2).unwrap(), &caps).unwrap().len(), 6);
        assert_eq!(enumerate_bases(&k4(), &caps).unwrap().len(), 16);
        assert_eq!(enumerate_bases(&Matroid::uniform(1, 1).unwrap(), &caps).unwrap().len(), 1);
    }

    #[test]
    fn sweep_respects_cap() {
        let caps = Caps { enumeration: 5, ..Caps::default() };
        assert!(matches!(enumerate_bases(&Matroid::uniform(4, 2).unwrap(), &caps), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn tree_counts() {
        let caps = Caps::default();
        for (m, expected) in [(k4(), 16u64), (cube_graph(), 384), (octahedron_graph(), 384)] {
            assert_eq!(spanning_trees(&m, &caps).unwrap().len() as u64, expected);
            assert_eq!(laplacian_tree_count(&m).unwrap(), BigInt::from(expected));
        }
        let path = Matroid::from_edges(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(spanning_trees(&path, &caps).unwrap().len(), 1);
        // Cayley: K5 has 5^3 trees
        assert_eq!(spanning_trees(&complete_graph(5), &caps).unwrap().len(), 125);
    }

    #[test]
    fn trees_match_sweep() {
        let caps = Caps::default();
        let m = cube_graph();
        let a = spanning_trees(&m, &caps).unwrap();
        let b = enumerate_bases(&m, &caps).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn disconnected_graph_rejected() {
        let m = Matroid::from_edges(4, vec![(0, 1), (2, 3)]).unwrap();
        assert!(spanning_trees(&m, &Caps::default()).is_err());
    }

    #[test]
    fn projected_set_examples() {
        let caps = Caps::default();
        let u = Matroid::uniform(4, 2).unwrap();
        let w = WeightMatrix::new(vec![vec![1, 2, 3, 4]]).unwrap();
        let set = exact_projected_set(&u, &w, &caps).unwrap();
        let expected: BTreeMap<Vec<i64>, u64> =
            [(vec![3], 1), (vec![4], 1), (vec![5], 2), (vec![6], 1), (vec![7], 1)].into_iter().collect();
        assert_eq!(set, expected);
        let ones = WeightMatrix::new(vec![vec![1; 6]]).unwrap();
        let set = exact_projected_set(&k4(), &ones, &caps).unwrap();
        assert_eq!(set.into_iter().collect::<Vec<_>>(), vec![(vec![3], 16)]);
        let pow = WeightMatrix::new(vec![vec![1, 2, 4, 8, 16, 32]]).unwrap();
        assert_eq!(exact_projected_set(&k4(), &pow, &caps).unwrap().len(), 16);
    }

    #[test]
    fn hull_examples() {
        let sq = vec![vec![0, 0], vec![2, 0], vec![2, 2], vec![0, 2], vec![1, 1]];
        assert_eq!(planar_convex_hull(&sq).unwrap(), vec![vec![0, 0], vec![2, 0], vec![2, 2], vec![0, 2]]);
        let line = vec![vec![0, 0], vec![1, 1], vec![2, 2]];
        assert_eq!(planar_convex_hull(&line).unwrap(), vec![vec![0, 0], vec![2, 2]]);
    }

    #[test]
    fn dilation_examples() {
        let caps = Caps::default();
        assert_eq!(dilation_lattice_count(&k4(), 0, &caps).unwrap(), BigInt::from(1));
        assert_eq!(dilation_lattice_count(&k4(), 1, &caps).unwrap(), BigInt::from(16));
        let u = Matroid::uniform(4, 2).unwrap();
        assert_eq!(dilation_lattice_count(&u, 1, &caps).unwrap(), BigInt::from(6));
        // 2 * hypersimplex(4,2): 19 lattice points
        assert_eq!(dilation_lattice_count(&u, 2, &caps).unwrap(), BigInt::from(19));
    }
}
