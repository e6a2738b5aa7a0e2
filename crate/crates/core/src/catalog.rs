//! Named test matroids and seeded random graph instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matroid::Matroid;

pub fn complete_graph(v: usize) -> Matroid {
    let edges = (0..v).flat_map(|i| (i + 1..v).map(move |j| (i, j))).collect();
    Matroid::from_edges(v, edges).expect("complete graph is valid")
}

/// Graphical matroid of K4; edges (1,2),(1,3),(1,4),(2,3),(2,4),(3,4) are labeled 1..6.
pub fn k4() -> Matroid {
    complete_graph(4)
}

pub fn cube_graph() -> Matroid {
    let mut edges = Vec::new();
    for a in 0..8usize {
        for bit in 0..3 {
            let b = a ^ (1 << bit);
            if a < b {
                edges.push((a, b));
            }
        }
    }
    edges.sort();
    Matroid::from_edges(8, edges).expect("cube is valid")
}

/// Vertices `2i` and `2i+1` are antipodal.
pub fn octahedron_graph() -> Matroid {
    let edges = (0..6usize)
        .flat_map(|i| (i + 1..6).map(move |j| (i, j)))
        .filter(|&(i, j)| i / 2 != j / 2)
        .collect();
    Matroid::from_edges(6, edges).expect("octahedron is valid")
}

/// Column matroid of `[[1,0,1,-1,2],[1,1,0,1,2]]`.
pub fn sample_vector_matroid() -> Matroid {
    Matroid::vector_i64(&[vec![1, 0, 1, -1, 2], vec![1, 1, 0, 1, 2]]).expect("valid matrix")
}

/// Rows of the running 6x6 incidence example (rank 3).
pub fn six_by_six_example() -> Vec<Vec<i64>> {
    ["110010", "110001", "101100", "011100", "001011", "000111"]
        .iter()
        .map(|r| r.bytes().map(|c| (c - b'0') as i64).collect())
        .collect()
}

pub struct Entry {
    pub name: String,
    pub matroid: Matroid,
}

fn entry(name: impl Into<String>, matroid: Matroid) -> Entry {
    Entry { name: name.into(), matroid }
}

/// Small matroids used by the property tests: uniform, graphical, vector and
/// disconnected instances with at most `max_n` elements.
pub fn small_catalog(max_n: usize) -> Vec<Entry> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for r in 1..n {
            out.push(entry(format!("U({r},{n})"), Matroid::uniform(n, r).unwrap()));
        }
    }
    let graphs: Vec<(&str, usize, Vec<(usize, usize)>)> = vec![
        ("K4", 4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        ("K4-e", 4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]),
        ("theta122", 4, vec![(0, 1), (0, 2), (2, 1), (0, 3), (3, 1)]),
        ("K23", 5, vec![(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]),
        ("bowtie", 5, vec![(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]),
        ("triangle+tail", 4, vec![(0, 1), (1, 2), (0, 2), (2, 3)]),
        ("W4", 5, vec![(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 1), (4, 2), (4, 3)]),
        ("prism-e", 6, vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)]),
    ];
    for (name, v, edges) in graphs {
        if edges.len() <= max_n {
            out.push(entry(name, Matroid::from_edges(v, edges).unwrap()));
        }
    }
    let vectors: Vec<(&str, Vec<Vec<i64>>)> = vec![
        ("sample-vector", vec![vec![1, 0, 1, -1, 2], vec![1, 1, 0, 1, 2]]),
        ("U12+U12", vec![vec![1, 1, 0, 0], vec![0, 0, 1, 1]]),
        ("rank3-a", vec![vec![1, 0, 0, 1, 1, 0], vec![0, 1, 0, 1, 0, 1], vec![0, 0, 1, 0, 1, 1]]),
        ("rank3-parallel", vec![vec![1, 0, 0, 1, 1, 1], vec![0, 1, 0, 1, 1, 0], vec![0, 0, 1, 0, 0, 1]]),
        ("rank3-b", vec![vec![1, 0, 1, 1, 0, 1, 2], vec![0, 1, 1, 2, 0, 0, 1], vec![0, 0, 0, 0, 1, 1, 1]]),
    ];
    for (name, rows) in vectors {
        if rows[0].len() <= max_n {
            out.push(entry(name, Matroid::vector_i64(&rows).unwrap()));
        }
    }
    for seed in 0..6u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let rows: Vec<Vec<i64>> = (0..3).map(|_| (0..6).map(|_| rng.gen_range(-1..=1)).collect()).collect();
        if let Ok(m) = Matroid::vector_i64(&rows) {
            if m.rank_of_matroid() > 0 && 6 <= max_n {
                out.push(entry(format!("random-vector-{seed}"), m));
            }
        }
    }
    out
}

/// Seeded random connected graph: a random spanning tree plus each remaining
/// pair with probability `density`.
pub fn random_connected_graph(seed: u64, vertices: usize, density: f64) -> Matroid {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut present = vec![vec![false; vertices]; vertices];
    for v in 1..vertices {
        let u = rng.gen_range(0..v);
        present[u][v] = true;
    }
    for i in 0..vertices {
        for j in i + 1..vertices {
            if !present[i][j] && rng.gen_bool(density) {
                present[i][j] = true;
            }
        }
    }
    let edges = (0..vertices)
        .flat_map(|i| (i + 1..vertices).map(move |j| (i, j)))
        .filter(|&(i, j)| present[i][j])
        .collect();
    Matroid::from_edges(vertices, edges).expect("random graph is valid")
}

/// Seeded `d x n` integer matrix with entries in `lo..=hi`.
pub fn random_weights(seed: u64, d: usize, n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..d).map(|_| (0..n).map(|_| rng.gen_range(lo..=hi)).collect()).collect()
}
