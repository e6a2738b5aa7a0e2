//! Fixed inputs shared by the benchmarks.

use matpoly_core::catalog::{k4, random_connected_graph, random_weights};
use matpoly_core::{Matroid, WeightMatrix};

pub struct Instance {
    pub matroid: Matroid,
    pub weights: WeightMatrix,
}

/// K4 with two fixed criteria.
pub fn k4_instance() -> Instance {
    let weights = WeightMatrix::new(vec![vec![3, 1, 4, 1, 5, 9], vec![2, 6, 5, 3, 5, 8]]).unwrap();
    Instance { matroid: k4(), weights }
}

/// A random connected graph with two random criteria.
pub fn graph_instance(seed: u64, vertices: usize) -> Instance {
    let matroid = random_connected_graph(seed, vertices, 0.5);
    let weights = WeightMatrix::new(random_weights(seed, 2, matroid.n(), 0, 20)).unwrap();
    Instance { matroid, weights }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_consistent() {
        for inst in [k4_instance(), graph_instance(1, 7)] {
            inst.weights.check_matroid(&inst.matroid).unwrap();
        }
    }
}
