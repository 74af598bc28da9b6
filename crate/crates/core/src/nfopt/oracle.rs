use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::bound::{constraint_rows, ConstraintRow};
use super::{BlowupGraph, NfError};

pub const MAX_ORACLE_K: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    #[serde(with = "crate::serde_num")]
    pub mu: BigRational,
    #[serde(with = "crate::serde_num::vec")]
    pub nu: Vec<BigRational>,
    /// Constraints tight at the minimizer.
    pub active: Vec<String>,
    pub positivity_active: bool,
    /// Active sets tried and those giving a feasible point.
    pub active_sets: usize,
    pub feasible: usize,
}

/// Minimizes the quadratic form over the polytope by trying every set of at
/// most `K - 1` active inequalities.
///
/// For a fixed active set the problem is `min nu^T W nu` subject to
/// `A nu = b`, solved exactly by `nu = W^{-1} A^T (A W^{-1} A^T)^{-1} b`.
/// The objective is strictly convex, so the true minimizer is the solution
/// for its own active set, and the least feasible candidate is the minimum.
pub fn brute_force_bound(g: &BlowupGraph) -> Result<OracleResult, NfError> {
    search(g, true)
}

/// `fast` tries `i128` fractions first and falls back to big rationals on
/// overflow.
fn search(g: &BlowupGraph, fast: bool) -> Result<OracleResult, NfError> {
    let p = g.path_counts()?;
    let k = g.k;
    if k > MAX_ORACLE_K {
        return Err(NfError::OracleBudget(k));
    }
    let delta = g.deltas();
    let rhs: u64 = p.iter().zip(&delta).map(|(&pi, &di)| pi * di as u64).sum();
    let rhs = BigRational::from_integer(BigInt::from(rhs));
    let int = |v: u64| BigRational::from_integer(BigInt::from(v));
    let weight: Vec<BigRational> = (0..k)
        .map(|i| int(if i < g.l_star { 2 * p[i] } else { p[i] }))
        .collect();
    let inv_weight: Vec<BigRational> = weight.iter().map(|w| w.recip()).collect();

    let constraints = constraint_rows(g);
    let mut rows = vec![p.iter().map(|&v| int(v)).collect::<Vec<_>>()];
    rows.extend(constraints.iter().map(|c| c.dense(k)));
    let n = rows.len();
    let mut gram = vec![vec![BigRational::zero(); n]; n];
    for a in 0..n {
        for b in a..n {
            let v = (0..k).fold(BigRational::zero(), |acc, i| acc + &rows[a][i] * &rows[b][i] * &inv_weight[i]);
            gram[a][b] = v.clone();
            gram[b][a] = v;
        }
    }

    let small_gram: Option<Vec<Vec<Small>>> = gram.iter().map(|row| row.iter().map(Small::from_big).collect::<Option<Vec<_>>>()).collect();
    let small_rows: Option<Vec<Vec<Small>>> = rows.iter().map(|row| row.iter().map(Small::from_big).collect::<Option<Vec<_>>>()).collect();
    let small_weight: Option<Vec<Small>> = weight.iter().map(Small::from_big).collect();
    let small_rhs = Small::from_big(&rhs);
    let small = match (small_gram, small_rows, small_weight, small_rhs) {
        (Some(g), Some(r), Some(w), Some(b)) if fast => Some((g, r, w, b)),
        _ => None,
    };

    let m = constraints.len();
    let mut best: Option<(BigRational, Vec<BigRational>)> = None;
    let mut active_sets = 0;
    let mut feasible = 0;
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize > k - 1 {
            continue;
        }
        active_sets += 1;
        let mut idx = vec![0];
        idx.extend((0..m).filter(|&c| mask >> c & 1 == 1).map(|c| c + 1));
        let fast = small
            .as_ref()
            .and_then(|(g, r, w, b)| candidate(g, r, w, b, &idx, &constraints));
        let found = match fast {
            Some(found) => found.map(|(obj, nu)| (obj.to_big(), nu.iter().map(|s| s.to_big()).collect())),
            None => candidate(&gram, &rows, &weight, &rhs, &idx, &constraints).expect("big rationals do not overflow"),
        };
        let Some((obj, nu)) = found else {
            continue;
        };
        feasible += 1;
        if best.as_ref().is_none_or(|(b, _)| &obj < b) {
            best = Some((obj, nu));
        }
    }
    let (mu, nu) = best.expect("the hyperplane meets the polytope");
    let tight: Vec<&ConstraintRow> = constraints.iter().filter(|c| c.value(&nu).is_zero()).collect();
    Ok(OracleResult {
        positivity_active: tight.iter().any(|c| c.positivity),
        active: tight.iter().map(|c| c.label.clone()).collect(),
        mu,
        nu,
        active_sets,
        feasible,
    })
}

/// Exact arithmetic the active-set solver runs in; every operation may
/// report overflow with `None`.
trait Exact: Clone + Sized {
    fn nil() -> Self;
    fn is_nil(&self) -> bool;
    fn below_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Option<Self>;
    fn minus(&self, o: &Self) -> Option<Self>;
    fn times(&self, o: &Self) -> Option<Self>;
    fn inverse(&self) -> Option<Self>;
}

impl Exact for BigRational {
    fn nil() -> Self {
        Zero::zero()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn below_zero(&self) -> bool {
        Signed::is_negative(self)
    }
    fn plus(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn minus(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn times(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn inverse(&self) -> Option<Self> {
        Some(BigRational::recip(self))
    }
}

/// `i128` fraction in lowest terms, positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Small {
    n: i128,
    d: i128,
}

impl Small {
    fn new(n: i128, d: i128) -> Option<Small> {
        let g = n.gcd(&d);
        let (mut n, mut d) = (n / g, d / g);
        if d < 0 {
            n = n.checked_neg()?;
            d = d.checked_neg()?;
        }
        Some(Small { n, d })
    }

    fn from_big(q: &BigRational) -> Option<Small> {
        Some(Small {
            n: q.numer().to_i128()?,
            d: q.denom().to_i128()?,
        })
    }

    fn to_big(self) -> BigRational {
        BigRational::new(BigInt::from(self.n), BigInt::from(self.d))
    }
}

impl Exact for Small {
    fn nil() -> Self {
        Small { n: 0, d: 1 }
    }
    fn is_nil(&self) -> bool {
        self.n == 0
    }
    fn below_zero(&self) -> bool {
        self.n < 0
    }
    fn plus(&self, o: &Self) -> Option<Self> {
        let g = self.d.gcd(&o.d);
        let (a, b) = (self.d / g, o.d / g);
        Small::new(self.n.checked_mul(b)?.checked_add(o.n.checked_mul(a)?)?, self.d.checked_mul(b)?)
    }
    fn minus(&self, o: &Self) -> Option<Self> {
        self.plus(&Small { n: o.n.checked_neg()?, d: o.d })
    }
    fn times(&self, o: &Self) -> Option<Self> {
        let g1 = self.n.gcd(&o.d).max(1);
        let g2 = o.n.gcd(&self.d).max(1);
        Small::new((self.n / g1).checked_mul(o.n / g2)?, (self.d / g2).checked_mul(o.d / g1)?)
    }
    fn inverse(&self) -> Option<Self> {
        Small::new(self.d, self.n)
    }
}

type Candidate<T> = Option<(T, Vec<T>)>;

/// The minimizer for one active set, if it is feasible. The outer `None`
/// means the arithmetic overflowed.
fn candidate<T: Exact>(
    gram: &[Vec<T>],
    rows: &[Vec<T>],
    weight: &[T],
    rhs: &T,
    idx: &[usize],
    constraints: &[ConstraintRow],
) -> Option<Candidate<T>> {
    let Some(lambda) = solve_first_unit(gram, idx, rhs)? else {
        return Some(None);
    };
    let k = weight.len();
    let mut nu = Vec::with_capacity(k);
    for i in 0..k {
        let mut acc = T::nil();
        for (&a, l) in idx.iter().zip(&lambda) {
            acc = acc.plus(&rows[a][i].times(l)?)?;
        }
        nu.push(acc.times(&weight[i].inverse()?)?);
    }
    for c in constraints {
        let mut v = T::nil();
        for &(i, coeff) in &c.coeffs {
            let term = match coeff {
                1 => nu[i].clone(),
                -1 => T::nil().minus(&nu[i])?,
                2 => nu[i].plus(&nu[i])?,
                _ => unreachable!("constraint coefficients are 2, 1 or -1"),
            };
            v = v.plus(&term)?;
        }
        if v.below_zero() {
            return Some(None);
        }
    }
    let mut obj = T::nil();
    for i in 0..k {
        obj = obj.plus(&weight[i].times(&nu[i])?.times(&nu[i])?)?;
    }
    Some(Some((obj, nu)))
}

/// Solves `G[idx][idx] lambda = (rhs, 0, ..., 0)`; `Some(None)` when
/// singular, `None` on overflow.
#[allow(clippy::needless_range_loop)]
fn solve_first_unit<T: Exact>(gram: &[Vec<T>], idx: &[usize], rhs: &T) -> Option<Option<Vec<T>>> {
    let s = idx.len();
    let mut a: Vec<Vec<T>> = idx
        .iter()
        .enumerate()
        .map(|(r, &i)| {
            let mut row: Vec<T> = idx.iter().map(|&j| gram[i][j].clone()).collect();
            row.push(if r == 0 { rhs.clone() } else { T::nil() });
            row
        })
        .collect();
    for col in 0..s {
        let Some(piv) = (col..s).find(|&r| !a[r][col].is_nil()) else {
            return Some(None);
        };
        a.swap(col, piv);
        let inv = a[col][col].inverse()?;
        for c in col..=s {
            a[col][c] = a[col][c].times(&inv)?;
        }
        for r in 0..s {
            if r == col || a[r][col].is_nil() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..=s {
                a[r][c] = a[r][c].minus(&a[col][c].times(&f)?)?;
            }
        }
    }
    Some(Some(a.into_iter().map(|mut row| row.pop().expect("augmented")).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nfopt::closed_form_bound;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn single_vertex() {
        let r = brute_force_bound(&BlowupGraph::chain(1, 1, vec![4])).unwrap();
        assert_eq!(r.mu, q(8, 1));
        assert_eq!(r.nu, vec![q(2, 1)]);
    }

    #[test]
    fn mixed_chain_matches_closed_form() {
        let g = BlowupGraph::chain(2, 1, vec![5, 3, 2]);
        let r = brute_force_bound(&g).unwrap();
        assert_eq!(r.mu, q(72, 5));
        assert_eq!(r.mu, closed_form_bound(&g).unwrap().mu);
        assert!(!r.positivity_active);
    }

    #[test]
    fn chain_of_two() {
        let r = brute_force_bound(&BlowupGraph::chain(2, 2, vec![4, 4])).unwrap();
        assert_eq!(r.mu, q(16, 1));
        assert_eq!(&r.mu / q(2, 1), q(8, 1));
    }

    #[test]
    fn branching_graph() {
        let g = BlowupGraph {
            k: 4,
            l: 3,
            l_star: 2,
            codims: vec![6, 4, 3, 2],
            edges: vec![(2, 1), (3, 2), (4, 3), (3, 1), (4, 2)],
        };
        assert_eq!(brute_force_bound(&g).unwrap().mu, closed_form_bound(&g).unwrap().mu);
    }

    #[test]
    fn fast_and_big_paths_agree() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let g = crate::nfopt::random_rank5_graph(&mut rng, 5);
            assert_eq!(search(&g, true).unwrap(), search(&g, false).unwrap());
        }
    }

    #[test]
    fn budget() {
        let g = BlowupGraph::chain(1, 1, [4].into_iter().chain([2; 10]).collect());
        assert_eq!(brute_force_bound(&g), Err(NfError::OracleBudget(11)));
    }
}
