//! Counts low-rank symmetric matrices over small fields and recovers the
//! dimension of the rank locus from the counts.

use fano_locus::codim::{census_fit_points, census_sym_rank, fit_census_degree, CensusMode, EXHAUSTIVE_BUDGET};

fn main() {
    for q in [2, 3, 5] {
        let c = census_sym_rank(3, 1, q, CensusMode::Exhaustive).unwrap();
        println!("3x3, rank <= 1, q = {q}: {} of {}", c.count, c.total);
    }
    let s = census_sym_rank(4, 3, 5, CensusMode::Sampled { seed: 3, samples: 20_000 }).unwrap();
    println!("4x4, rank <= 3, q = 5, sampled estimate: {} of {}", s.count, s.total);
    for (m, r) in [(2, 1), (3, 2), (4, 2)] {
        let points = census_fit_points(m, r, EXHAUSTIVE_BUDGET).unwrap();
        let fit = fit_census_degree(m, r, &points).unwrap();
        println!("M = {m}, r = {r}: count is a polynomial of degree {} in q (expected {})", fit.degree, fit.expected);
    }
}
