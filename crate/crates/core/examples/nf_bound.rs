//! Closed-form Noether-Fano bounds on a few resolution graphs.

use fano_locus::nfopt::{brute_force_bound, verify_4n2, BlowupGraph};

fn main() {
    let graphs = [
        ("single codim-3 blow-up", BlowupGraph::chain(1, 1, vec![3])),
        ("single codim-4 blow-up", BlowupGraph::chain(1, 1, vec![4])),
        ("mixed chain", BlowupGraph::chain(2, 1, vec![5, 3, 2])),
        (
            "branching",
            BlowupGraph {
                k: 3,
                l: 3,
                l_star: 3,
                codims: vec![4, 5, 4],
                edges: vec![(2, 1), (3, 2), (3, 1)],
            },
        ),
    ];
    for (name, g) in graphs {
        let r = verify_4n2(&g).unwrap();
        let o = brute_force_bound(&g).unwrap();
        println!("{name}: c = {}, oracle mu = {} n^2, 4n^2 inequality {}", r.bound.c, o.mu, r.verdict);
    }
}
