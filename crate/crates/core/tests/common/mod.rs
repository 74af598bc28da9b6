#![allow(dead_code)]

use std::path::PathBuf;

use fano_locus::polyalg::{Field, Polynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

/// `P L U` with unit-triangular `L`, `U` and small entries, so the
/// determinant is `+-1`.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<i64>> {
    let mut l = vec![vec![0i64; n]; n];
    let mut u = vec![vec![0i64; n]; n];
    for i in 0..n {
        l[i][i] = 1;
        u[i][i] = 1;
        for j in 0..i {
            l[i][j] = rng.gen_range(-2..=2);
            u[j][i] = rng.gen_range(-2..=2);
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|t| l[perm[i]][t] * u[t][j]).sum()).collect())
        .collect()
}

/// Images `z_i -> sum_j a_ij z_j`.
pub fn linear_images(field: Field, vars: &[String], a: &[Vec<i64>]) -> Vec<Polynomial> {
    a.iter()
        .map(|row| {
            let terms: Vec<(i64, Vec<u32>)> = row
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(j, &c)| {
                    let mut e = vec![0u32; vars.len()];
                    e[j] = 1;
                    (c, e)
                })
                .collect();
            let refs: Vec<(i64, &[u32])> = terms.iter().map(|(c, e)| (*c, e.as_slice())).collect();
            Polynomial::from_int_terms(field, vars, &refs).unwrap()
        })
        .collect()
}

/// Rank of an integer matrix by exact elimination over the rationals.
#[allow(clippy::needless_range_loop)]
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[rank][c];
                for j in 0..cols {
                    let d = &f * &m[rank][j];
                    m[i][j] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Number of symmetric `n x n` matrices of rank exactly `r` over `F_q`,
/// by MacWilliams' product formula.
pub fn macwilliams_count(n: u32, r: u32, q: u64) -> BigInt {
    if r == 0 {
        return BigInt::one();
    }
    let q = BigRational::from_integer(BigInt::from(q));
    let pow = |e: u32| num_traits::pow(q.clone(), e as usize);
    let s = r / 2;
    let mut out = BigRational::one();
    for i in 1..=s {
        out = out * pow(2 * i) / (pow(2 * i) - BigRational::one());
    }
    for i in 0..r {
        out *= pow(n - i) - BigRational::one();
    }
    assert!(out.is_integer());
    out.to_integer()
}

pub fn binom(n: i128, k: i128) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    let mut out = 1i128;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}
