//! Seeded inputs shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trilin::{CnfFormula, Graph};

/// `G(n, p)` from a fixed seed.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::new(n, edges).expect("ids in range")
}

/// Random 3-CNF with distinct variables per clause.
pub fn random_formula(n: usize, m: usize, seed: u64) -> CnfFormula {
    assert!(n >= 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clauses: Vec<[i64; 3]> = (0..m)
        .map(|_| {
            let mut vars: Vec<i64> = (1..=n as i64).collect();
            for i in (1..n).rev() {
                vars.swap(i, rng.gen_range(0..=i));
            }
            [0, 1, 2].map(|i| if rng.gen_bool(0.5) { vars[i] } else { -vars[i] })
        })
        .collect();
    CnfFormula::from_ints(n, &clauses).expect("valid clauses")
}
