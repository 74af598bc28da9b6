//! Compares the closed-form minimum with the active-set oracle on random
//! resolution graphs.

use std::time::Instant;

use fano_locus::nfopt::{brute_force_bound, closed_form_bound, random_rank5_graph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let start = Instant::now();
    let mut largest_k = 0;
    for n in 0..200 {
        let g = random_rank5_graph(&mut rng, 7);
        let closed = closed_form_bound(&g).expect("valid graph");
        let oracle = brute_force_bound(&g).expect("K <= 7");
        assert_eq!(closed.mu, oracle.mu, "graph {n}: {g:?}");
        largest_k = largest_k.max(g.k);
    }
    println!("200 graphs (K up to {largest_k}) agree in {:.2?}", start.elapsed());
}
