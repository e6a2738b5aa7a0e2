use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use matpoly_core::catalog::small_catalog;
use matpoly_core::combinatorics::{classify_square_2face, exchange_graphs, neighbors_on_support_hyperplane, reduced_determinant};
use matpoly_core::linalg::{det_i64, rank_i64};
use matpoly_core::oracles::all_bases;
use matpoly_core::{Basis, Caps, Matroid};

fn connected_catalog(max_n: usize) -> Vec<(String, Matroid, Vec<Basis>)> {
    small_catalog(max_n)
        .into_iter()
        .filter(|e| e.matroid.is_connected())
        .map(|e| {
            let b = all_bases(&e.matroid, &Caps::default()).unwrap();
            (e.name, e.matroid, b)
        })
        .filter(|(_, m, b)| b.len() >= m.n())
        .collect()
}

fn for_each_subset(len: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, len: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..=len - (k - cur.len()) {
            cur.push(i);
            rec(i + 1, len, k, cur, f);
            cur.pop();
        }
    }
    rec(0, len, k, &mut Vec::new(), f);
}

#[test]
fn connected_exchange_graph_forces_unimodular_simplex() {
    for (name, m, bases) in connected_catalog(6) {
        let n = m.n();
        let inc: Vec<Vec<i64>> = bases.iter().map(|b| b.incidence(n)).collect();
        let mut seen = 0u64;
        for_each_subset(inc.len(), n, &mut |pick| {
            let x: Vec<Vec<i64>> = pick.iter().map(|&i| inc[i].clone()).collect();
            let g = exchange_graphs(&x).unwrap();
            if g.row_components().len() == 1 {
                let d = det_i64(&x).abs();
                assert!(d.is_zero() || d == BigInt::from(m.rank_of_matroid()), "{name}: |det| {d}");
                seen += 1;
            }
        });
        assert!(seen > 0, "{name}");
    }
}

#[test]
fn neighbors_share_a_support_hyperplane() {
    for e in small_catalog(8) {
        for b in all_bases(&e.matroid, &Caps::default()).unwrap() {
            assert!(neighbors_on_support_hyperplane(&e.matroid, &b).unwrap(), "{}", e.name);
        }
    }
}

#[test]
fn parallelogram_quadruples_always_classify() {
    for e in small_catalog(6) {
        let m = &e.matroid;
        let bases = all_bases(m, &Caps::default()).unwrap();
        let set: BTreeSet<&Basis> = bases.iter().collect();
        let swap = |b: &Basis, out: usize, inn: usize| -> Option<Basis> {
            if !b.contains(out) || b.contains(inn) {
                return None;
            }
            let nb = b.exchange(out, inn);
            set.contains(&nb).then_some(nb)
        };
        let n = m.n();
        for w1 in &bases {
            for t in w1.elements().iter().copied() {
                for s in (0..n).filter(|&s| !w1.contains(s)) {
                    let Some(w2) = swap(w1, t, s) else { continue };
                    for l in w1.elements().iter().copied().filter(|&l| l != t) {
                        for mm in (0..n).filter(|&x| !w1.contains(x) && x != s) {
                            let Some(w3) = swap(w1, l, mm) else { continue };
                            let Some(w4) = swap(&w2, l, mm) else { continue };
                            assert!(classify_square_2face(m, [w1, &w2, &w3, &w4]).is_ok(), "{}", e.name);
                        }
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn components_and_reduced_determinant(pick in any::<u64>(), order in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let pool = connected_catalog(7);
        let (name, m, bases) = &pool[(pick % pool.len() as u64) as usize];
        let n = m.n();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(order);
        let mut chosen: Vec<&Basis> = bases.iter().collect();
        chosen.shuffle(&mut rng);
        let x: Vec<Vec<i64>> = chosen[..n].iter().map(|b| b.incidence(n)).collect();
        prop_assume!(rank_i64(&x) == n);
        let g = exchange_graphs(&x).unwrap();
        prop_assert_eq!(g.row_components().len(), g.col_components().len(), "{}", name);
        let (_, reduced) = reduced_determinant(&x).unwrap();
        let direct = det_i64(&x).abs();
        prop_assert_eq!(&reduced, &direct);
        prop_assert!((direct % BigInt::from(m.rank_of_matroid())).is_zero());
        prop_assert!(reduced.is_positive());
    }
}
