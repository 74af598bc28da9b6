use rand::Rng;

use super::BlowupGraph;

/// A rank-5-context graph with `1 <= K <= max_k`: the chain plus each
/// longer edge with probability 1/3.
pub fn random_rank5_graph<R: Rng>(rng: &mut R, max_k: usize) -> BlowupGraph {
    let k = rng.gen_range(1..=max_k.max(1));
    let l = rng.gen_range(1..=k);
    let l_star = rng.gen_range(1..=l);
    let codims = (1..=k)
        .map(|i| {
            if i <= l_star {
                rng.gen_range(4..=8)
            } else if i <= l {
                rng.gen_range(3..=8)
            } else {
                2
            }
        })
        .collect();
    let mut edges: Vec<(usize, usize)> = (2..=k).map(|i| (i, i - 1)).collect();
    for j in 3..=k {
        for i in 1..j - 1 {
            if rng.gen_bool(1.0 / 3.0) {
                edges.push((j, i));
            }
        }
    }
    BlowupGraph { k, l, l_star, codims, edges }
}

/// Appends a codimension-2 vertex on top, joined to the old top and to each
/// other vertex with probability 1/3.
pub fn with_upper_vertex<R: Rng>(g: &BlowupGraph, rng: &mut R) -> BlowupGraph {
    let mut out = g.clone();
    out.k += 1;
    out.codims.push(2);
    out.edges.push((out.k, g.k));
    for i in 1..g.k {
        if rng.gen_bool(1.0 / 3.0) {
            out.edges.push((out.k, i));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nfopt::Validity;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_graphs_are_rank5_context() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let g = random_rank5_graph(&mut rng, 7);
            assert_eq!(g.validate(), Validity::Rank5Context, "{g:?}");
            assert_eq!(with_upper_vertex(&g, &mut rng).validate(), Validity::Rank5Context);
        }
    }
}
