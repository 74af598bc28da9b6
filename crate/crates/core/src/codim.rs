//! Codimension arithmetic for the bad loci in the space of hypersurfaces,
//! and finite-field counts of symmetric matrices of bounded rank.
//!
//! `M` is the dimension of the affine chart around a point, `r` a rank.
//! All closed forms use exact integers; binomials are `i128` so `M` is
//! limited to [`MAX_M`].

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const MAX_M: u32 = 1000;

/// Largest enumeration allowed in exhaustive census mode.
pub const EXHAUSTIVE_BUDGET: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CodimError {
    #[error("rank {r} out of range 1..={m}")]
    RankOutOfRange { m: u32, r: u32 },
    #[error("M = {0} is below the minimum {1}")]
    TooSmall(u32, u32),
    #[error("M = {0} exceeds the supported maximum {MAX_M}")]
    TooLarge(u32),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("exhaustive census needs {needed} matrices, budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("need at least {needed} census points, got {found}")]
    TooFewPoints { needed: usize, found: usize },
}

pub fn binom(n: i128, k: i128) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn check_m(m: u32, min: u32) -> Result<i128, CodimError> {
    if m < min {
        return Err(CodimError::TooSmall(m, min));
    }
    if m > MAX_M {
        return Err(CodimError::TooLarge(m));
    }
    Ok(m as i128)
}

fn check_rank(m: u32, r: u32) -> Result<(i128, i128), CodimError> {
    let mm = check_m(m, 1)?;
    if r < 1 || r > m {
        return Err(CodimError::RankOutOfRange { m, r });
    }
    Ok((mm, r as i128))
}

/// Projective dimension of symmetric `M x M` matrices of rank at most `r`,
/// and its codimension in all symmetric matrices.
pub fn sym_rank_locus_dim(m: u32, r: u32) -> Result<(i128, i128), CodimError> {
    let (m, r) = check_rank(m, r)?;
    let dim = binom(r + 1, 2) - 1 + r * (m - r);
    Ok((dim, binom(m - r + 1, 2)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QrBounds {
    /// Codimension of hypersurfaces with a fixed point of rank at most `r`.
    pub point_locus: i128,
    /// Lower bound once the point moves.
    pub locus: i128,
    /// The locus bound reaches `M`.
    pub meets_m: bool,
}

pub fn qr_codim_bounds(m: u32, r: u32) -> Result<QrBounds, CodimError> {
    let (dim, codim) = sym_rank_locus_dim(m, r)?;
    let mm = m as i128;
    let point_locus = mm + binom(mm + 1, 2) - dim;
    debug_assert_eq!(point_locus, 1 + mm + codim);
    let locus = codim + 1;
    Ok(QrBounds {
        point_locus,
        locus,
        meets_m: locus >= mm,
    })
}

/// `b (M-1-b)(M-b)/2 + b^2 + 1`.
pub fn f_of_b(m: u32, b: u32) -> i128 {
    let (m, b) = (m as i128, b as i128);
    b * (m - 1 - b) * (m - b) / 2 + b * b + 1
}

/// The singular-point analogue `b (M-b)(M+1-b)/2 + b^2 + 1`.
pub fn g_of_b(m: u32, b: u32) -> i128 {
    let (m, b) = (m as i128, b as i128);
    b * (m - b) * (m + 1 - b) / 2 + b * b + 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FbMinimum {
    pub m: u32,
    /// `(b, F(b))` for `2 <= b <= M - 2`.
    pub values: Vec<(u32, i128)>,
    pub min: i128,
    pub argmin: u32,
    /// Value on the stratum where a whole line lies in the zero set.
    pub line: i128,
    pub overall: i128,
    /// `(M-2)(M-3) + 5`.
    pub closed_form_min: i128,
    /// `M(M-3)/2 + 3`.
    pub closed_form_overall: i128,
}

impl FbMinimum {
    pub fn matches_closed_form(&self) -> bool {
        self.min == self.closed_form_min && self.argmin == 2 && self.overall == self.closed_form_overall
    }
}

pub fn fb_minimum(m: u32) -> Result<FbMinimum, CodimError> {
    let mm = check_m(m, 5)?;
    let values: Vec<(u32, i128)> = (2..=m - 2).map(|b| (b, f_of_b(m, b))).collect();
    let &(argmin, min) = values.iter().min_by_key(|&&(b, v)| (v, b)).expect("M >= 5");
    let line = mm * (mm + 1) / 2 - 3 - 2 * (mm - 3);
    Ok(FbMinimum {
        m,
        values,
        min,
        argmin,
        line,
        overall: min.min(line),
        closed_form_min: (mm - 2) * (mm - 3) + 5,
        closed_form_overall: mm * (mm - 3) / 2 + 3,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CandidateKind {
    /// `binom(M, i) - (M - 1)` for a smooth point.
    SmoothStratum { i: u32 },
    /// `M(M-3)/2 + 3 - (M - 1)`, replacing `i = M - 1`.
    SmoothImproved,
    /// `binom(M + 1, j) - (M - 1) + M` for a singular point.
    SingularStratum { j: u32 },
    /// `(M+1)(M-2)/2 + 3 - (M - 1) + M`, replacing `j = M`.
    SingularImproved,
}

impl fmt::Display for CandidateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CandidateKind::SmoothStratum { i } => write!(f, "smooth stratum i={i}"),
            CandidateKind::SmoothImproved => write!(f, "smooth improved"),
            CandidateKind::SingularStratum { j } => write!(f, "singular stratum j={j}"),
            CandidateKind::SingularImproved => write!(f, "singular improved"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    #[serde(flatten)]
    pub kind: CandidateKind,
    pub value: i128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityBound {
    pub m: u32,
    pub bound: i128,
    pub witness: Candidate,
    pub candidates: Vec<Candidate>,
    /// `M(M-5)/2 + 4`.
    pub closed_form: i128,
}

/// Lower bound for the codimension of the non-regular locus.
///
/// The weak estimates at `i = M - 1` and `j = M` are replaced by the
/// improved values from the line-stratum analysis.
pub fn regularity_codim_bound(m: u32) -> Result<RegularityBound, CodimError> {
    let mm = check_m(m, 5)?;
    let mut candidates = Vec::new();
    for i in 2..=m - 2 {
        candidates.push(Candidate {
            kind: CandidateKind::SmoothStratum { i },
            value: binom(mm, i as i128) - (mm - 1),
        });
    }
    let fb = fb_minimum(m)?;
    candidates.push(Candidate {
        kind: CandidateKind::SmoothImproved,
        value: fb.overall - (mm - 1),
    });
    for j in 2..m {
        candidates.push(Candidate {
            kind: CandidateKind::SingularStratum { j },
            value: binom(mm + 1, j as i128) - (mm - 1) + mm,
        });
    }
    let singular = singular_line_minimum(m)?;
    candidates.push(Candidate {
        kind: CandidateKind::SingularImproved,
        value: singular.overall - (mm - 1) + mm,
    });
    let witness = *candidates.iter().min_by_key(|c| c.value).expect("nonempty");
    Ok(RegularityBound {
        m,
        bound: witness.value,
        witness,
        candidates,
        closed_form: mm * (mm - 5) / 2 + 4,
    })
}

/// The singular-point analogue of [`fb_minimum`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularLineMinimum {
    /// `(b, G(b))` for `2 <= b <= M`.
    pub values: Vec<(u32, i128)>,
    /// `(M+1)(M-2)/2 + 3`.
    pub line: i128,
    pub overall: i128,
}

pub fn singular_line_minimum(m: u32) -> Result<SingularLineMinimum, CodimError> {
    let mm = check_m(m, 5)?;
    let values: Vec<(u32, i128)> = (2..=m).map(|b| (b, g_of_b(m, b))).collect();
    let line = (mm + 1) * (mm - 2) / 2 + 3;
    let min = values.iter().map(|&(_, v)| v).min().expect("M >= 5");
    Ok(SingularLineMinimum {
        values,
        line,
        overall: min.min(line),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremBounds {
    pub m: u32,
    pub bound: i128,
    /// Rank at most 4 somewhere.
    pub rank_component: i128,
    /// Regularity fails somewhere.
    pub regularity_component: i128,
    /// `binom(M-3, 2) + 1`.
    pub closed_form: i128,
}

pub fn theorem_bounds(m: u32) -> Result<TheoremBounds, CodimError> {
    let mm = check_m(m, 5)?;
    let rank_component = qr_codim_bounds(m, 4)?.locus;
    let regularity_component = regularity_codim_bound(m)?.bound;
    Ok(TheoremBounds {
        m,
        bound: rank_component.min(regularity_component),
        rank_component,
        regularity_component,
        closed_form: binom(mm - 3, 2) + 1,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankRow {
    pub r: u32,
    pub dim_sym_rank: i128,
    pub codim_point_locus: i128,
    pub codim_locus: i128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodimTableEntry {
    pub m: u32,
    pub ranks: Vec<RankRow>,
    pub fb: FbMinimum,
    pub singular: SingularLineMinimum,
    pub regularity: RegularityBound,
    pub theorem: TheoremBounds,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodimTable {
    pub entries: Vec<CodimTableEntry>,
}

pub fn codim_table(mmin: u32, mmax: u32) -> Result<CodimTable, CodimError> {
    let mut entries = Vec::new();
    for m in mmin..=mmax {
        let ranks = (1..=m)
            .map(|r| {
                let (dim, _) = sym_rank_locus_dim(m, r)?;
                let q = qr_codim_bounds(m, r)?;
                Ok(RankRow {
                    r,
                    dim_sym_rank: dim,
                    codim_point_locus: q.point_locus,
                    codim_locus: q.locus,
                })
            })
            .collect::<Result<Vec<_>, CodimError>>()?;
        entries.push(CodimTableEntry {
            m,
            ranks,
            fb: fb_minimum(m)?,
            singular: singular_line_minimum(m)?,
            regularity: regularity_codim_bound(m)?,
            theorem: theorem_bounds(m)?,
        });
    }
    Ok(CodimTable { entries })
}

impl CodimTable {
    const HEADER: [&'static str; 8] = ["M", "rank<=4 point", "rank<=4 locus", "min F(b)", "line", "regularity", "witness", "theorem"];

    fn rows(&self) -> Vec<[String; 8]> {
        self.entries
            .iter()
            .map(|e| {
                let q4 = &e.ranks[3];
                [
                    e.m.to_string(),
                    q4.codim_point_locus.to_string(),
                    q4.codim_locus.to_string(),
                    e.fb.min.to_string(),
                    e.fb.line.to_string(),
                    e.regularity.bound.to_string(),
                    e.regularity.witness.kind.to_string(),
                    e.theorem.bound.to_string(),
                ]
            })
            .collect()
    }

    pub fn to_tsv(&self) -> String {
        let mut s = Self::HEADER.join("\t");
        s.push('\n');
        for row in self.rows() {
            s.push_str(&row.join("\t"));
            s.push('\n');
        }
        s
    }

    pub fn to_text(&self) -> String {
        let rows = self.rows();
        let widths: Vec<usize> = (0..8)
            .map(|c| rows.iter().map(|r| r[c].len()).chain([Self::HEADER[c].len()]).max().unwrap_or(0))
            .collect();
        let line = |cells: Vec<&str>| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut s = line(Self::HEADER.to_vec());
        for r in &rows {
            s.push_str(&line(r.iter().map(|c| c.as_str()).collect()));
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum CensusMode {
    /// Enumerate every matrix.
    Exhaustive,
    /// Exact count by growing a leading block one row and column at a time.
    LeadingBlock,
    /// Monte Carlo estimate.
    Sampled { seed: u64, samples: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusResult {
    pub m: u32,
    pub r: u32,
    pub q: u64,
    pub mode: CensusMode,
    /// Matrices of rank at most `r` (an estimate when sampled).
    #[serde(with = "crate::serde_num")]
    pub count: BigUint,
    /// `q^{M(M+1)/2}`.
    #[serde(with = "crate::serde_num")]
    pub total: BigUint,
    /// Counts of rank exactly `0..=M`; empty when sampled.
    #[serde(with = "crate::serde_num::vec")]
    pub by_rank: Vec<BigUint>,
    pub exact: bool,
    /// Sampled matrices of rank at most `r`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hits: Option<u64>,
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

fn entries(m: u32) -> u32 {
    m * (m + 1) / 2
}

pub fn census_sym_rank(m: u32, r: u32, q: u64, mode: CensusMode) -> Result<CensusResult, CodimError> {
    check_rank(m, r)?;
    if !is_prime(q) || q >= 1 << 31 {
        return Err(CodimError::NotPrime(q));
    }
    let total = BigUint::from(q).pow(entries(m));
    let (by_rank, hits) = match mode {
        CensusMode::Exhaustive => {
            let needed = total.to_u64().filter(|&n| n <= EXHAUSTIVE_BUDGET);
            let Some(n) = needed else {
                return Err(CodimError::BudgetExceeded {
                    needed: total.to_string(),
                    budget: EXHAUSTIVE_BUDGET,
                });
            };
            (exhaustive_by_rank(m as usize, q, n), None)
        }
        CensusMode::LeadingBlock => (leading_block_by_rank(m as usize, q), None),
        CensusMode::Sampled { seed, samples } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = m as usize;
            let mut a = vec![0u64; n * n];
            let mut hits = 0u64;
            for _ in 0..samples {
                for i in 0..n {
                    for j in i..n {
                        let v = rng.gen_range(0..q);
                        a[i * n + j] = v;
                        a[j * n + i] = v;
                    }
                }
                if rank_mod(&mut a, n, q) <= r as usize {
                    hits += 1;
                }
            }
            (Vec::new(), Some(hits))
        }
    };
    let count = match hits {
        Some(h) if samples_of(mode) > 0 => {
            let est = BigRational::new((&total * BigUint::from(h)).into(), BigUint::from(samples_of(mode)).into());
            est.round().to_integer().to_biguint().expect("non-negative")
        }
        Some(_) => BigUint::zero(),
        None => by_rank[..=r as usize].iter().sum(),
    };
    Ok(CensusResult {
        m,
        r,
        q,
        mode,
        count,
        total,
        by_rank,
        exact: hits.is_none(),
        hits,
    })
}

fn samples_of(mode: CensusMode) -> u64 {
    match mode {
        CensusMode::Sampled { samples, .. } => samples,
        _ => 0,
    }
}

/// Rank over `F_q` by elimination; clobbers `a`.
fn rank_mod(a: &mut [u64], n: usize, q: u64) -> usize {
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..n).find(|&i| a[i * n + col] != 0) else {
            continue;
        };
        if p != rank {
            for c in 0..n {
                a.swap(p * n + c, rank * n + c);
            }
        }
        let inv = pow_mod(a[rank * n + col], q - 2, q);
        for i in rank + 1..n {
            let f = a[i * n + col] * inv % q;
            if f == 0 {
                continue;
            }
            for c in col..n {
                a[i * n + c] = (a[i * n + c] + (q - f) * a[rank * n + c]) % q;
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    acc
}

fn exhaustive_by_rank(n: usize, q: u64, total: u64) -> Vec<BigUint> {
    let e = n * (n + 1) / 2;
    // split on the first entry (or two) so the work spreads over threads
    let prefix = if e >= 2 { q * q } else { q };
    let prefix_len = if e >= 2 { 2 } else { 1 };
    let per = total / prefix;
    let counts = (0..prefix)
        .into_par_iter()
        .map(|p| {
            let mut hist = vec![0u64; n + 1];
            let mut digits = vec![0u64; e];
            let mut x = p;
            for d in digits.iter_mut().take(prefix_len) {
                *d = x % q;
                x /= q;
            }
            let mut a = vec![0u64; n * n];
            for _ in 0..per {
                let mut k = 0;
                for i in 0..n {
                    for j in i..n {
                        a[i * n + j] = digits[k];
                        a[j * n + i] = digits[k];
                        k += 1;
                    }
                }
                hist[rank_mod(&mut a, n, q)] += 1;
                // odometer over the non-prefix digits
                for d in digits.iter_mut().skip(prefix_len) {
                    *d += 1;
                    if *d < q {
                        break;
                    }
                    *d = 0;
                }
            }
            hist
        })
        .reduce(|| vec![0u64; n + 1], |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect());
    counts.into_iter().map(BigUint::from).collect()
}

/// Symmetric `[[A, b], [b^T, c]]` with `A` of rank `s`: if `b` is outside
/// the column space the rank is `s + 2`; otherwise `b = A x` and the rank is
/// `s` or `s + 1` as `c` equals `x^T A x` or not.
fn leading_block_by_rank(n: usize, q: u64) -> Vec<BigUint> {
    let q = BigUint::from(q);
    let one = BigUint::one();
    let mut counts = vec![BigUint::zero(); n + 1];
    counts[0] = one.clone();
    if n >= 1 {
        counts[1] = &q - &one;
    }
    for m in 1..n {
        let mut next = vec![BigUint::zero(); n + 1];
        let qm = q.pow(m as u32);
        for s in 0..=m {
            let c = &counts[s];
            if c.is_zero() {
                continue;
            }
            let qs = q.pow(s as u32);
            next[s] += c * &qs;
            next[s + 1] += c * &qs * (&q - &one);
            if s + 2 <= n {
                next[s + 2] += c * (&qm - &qs) * &q;
            }
        }
        counts = next;
    }
    counts
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeFit {
    pub m: u32,
    pub r: u32,
    #[serde(with = "crate::serde_num::pairs")]
    pub points: Vec<(u64, BigUint)>,
    /// Newton divided differences, constant term first.
    pub differences: Vec<String>,
    pub degree: usize,
    /// `sym_rank_locus_dim(M, r) + 1`.
    pub expected: usize,
    /// At least one difference past the degree vanished, so the points do
    /// pin a polynomial down.
    pub determined: bool,
}

impl DegreeFit {
    pub fn matches(&self) -> bool {
        self.determined && self.degree == self.expected
    }
}

/// Fits `count(q)` by exact Newton interpolation and reports its degree.
pub fn fit_census_degree(m: u32, r: u32, points: &[(u64, BigUint)]) -> Result<DegreeFit, CodimError> {
    let (dim, _) = sym_rank_locus_dim(m, r)?;
    if points.len() < 2 {
        return Err(CodimError::TooFewPoints { needed: 2, found: points.len() });
    }
    let xs: Vec<BigRational> = points.iter().map(|&(q, _)| BigRational::from_integer(q.into())).collect();
    let mut col: Vec<BigRational> = points.iter().map(|(_, c)| BigRational::from_integer(c.clone().into())).collect();
    let mut diffs = vec![col[0].clone()];
    for level in 1..points.len() {
        col = (0..col.len() - 1)
            .map(|i| (&col[i + 1] - &col[i]) / (&xs[i + level] - &xs[i]))
            .collect();
        diffs.push(col[0].clone());
    }
    let degree = diffs.iter().rposition(|d| !d.is_zero()).unwrap_or(0);
    Ok(DegreeFit {
        m,
        r,
        points: points.to_vec(),
        differences: diffs.iter().map(|d| d.to_string()).collect(),
        degree,
        expected: (dim + 1) as usize,
        determined: degree + 1 < points.len(),
    })
}

/// Census points for the degree fit: exhaustive counts for `q` in
/// `{2, 3, 5, 7}` where the budget allows, then leading-block counts over
/// further primes until there are `M(M+1)/2 + 2` points.
pub fn census_fit_points(m: u32, r: u32, budget: u64) -> Result<Vec<(u64, BigUint)>, CodimError> {
    let want = entries(m) as usize + 2;
    let mut points = Vec::with_capacity(want);
    for q in (2u64..).filter(|&q| is_prime(q)) {
        if points.len() == want {
            break;
        }
        let fits = BigUint::from(q).pow(entries(m)) <= BigUint::from(budget);
        let mode = if q <= 7 && fits { CensusMode::Exhaustive } else { CensusMode::LeadingBlock };
        points.push((q, census_sym_rank(m, r, q, mode)?.count));
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_locus_dimensions() {
        assert_eq!(sym_rank_locus_dim(5, 4).unwrap().0, 13);
        assert_eq!(sym_rank_locus_dim(3, 2).unwrap().0, 4);
        for m in 1..=12 {
            assert_eq!(sym_rank_locus_dim(m, m).unwrap(), (binom(m as i128 + 1, 2) - 1, 0));
        }
        assert!(sym_rank_locus_dim(4, 5).is_err());
        assert!(sym_rank_locus_dim(4, 0).is_err());
    }

    #[test]
    fn rank_four_bounds() {
        let b = |m| {
            let q = qr_codim_bounds(m, 4).unwrap();
            (q.point_locus, q.locus, q.meets_m)
        };
        assert_eq!(b(5), (7, 2, false));
        assert_eq!(b(7), (14, 7, true));
        assert_eq!(b(6), (10, 4, false));
        assert_eq!(b(10), (32, 22, true));
    }

    #[test]
    fn f_of_b_minimum() {
        let f = fb_minimum(5).unwrap();
        assert_eq!((f.min, f.argmin, f.overall), (11, 2, 8));
        assert_eq!(f.values, vec![(2, 11), (3, 13)]);
        let f = fb_minimum(10).unwrap();
        assert_eq!((f.min, f.argmin, f.overall), (61, 2, 38));
        assert!(f.matches_closed_form());
        assert!(fb_minimum(4).is_err());
    }

    #[test]
    fn f_of_b_is_not_monotone_everywhere() {
        assert!(f_of_b(10, 4) > f_of_b(10, 5));
    }

    #[test]
    fn regularity_bounds() {
        let r5 = regularity_codim_bound(5).unwrap();
        assert_eq!(r5.bound, 4);
        assert_eq!(r5.witness.kind, CandidateKind::SmoothImproved);
        assert_eq!(regularity_codim_bound(6).unwrap().bound, 7);
        assert_eq!(regularity_codim_bound(8).unwrap().bound, 16);
        assert_eq!(regularity_codim_bound(10).unwrap().bound, 29);
    }

    #[test]
    fn theorem_bound_values() {
        let v: Vec<i128> = (5..=8).map(|m| theorem_bounds(m).unwrap().bound).collect();
        assert_eq!(v, vec![2, 4, 7, 11]);
        assert_eq!(theorem_bounds(10).unwrap().bound, 22);
    }

    #[test]
    fn table_has_theorem_column() {
        let t = codim_table(5, 8).unwrap();
        let tsv = t.to_tsv();
        let col: Vec<&str> = tsv.lines().skip(1).map(|l| l.split('\t').next_back().unwrap()).collect();
        assert_eq!(col, ["2", "4", "7", "11"]);
        assert!(t.to_text().lines().count() == 5);
    }

    #[test]
    fn small_exhaustive_census() {
        let c = census_sym_rank(2, 1, 3, CensusMode::Exhaustive).unwrap();
        assert_eq!(c.count, BigUint::from(9u32));
        assert_eq!(c.total, BigUint::from(27u32));
        let full = census_sym_rank(3, 3, 2, CensusMode::Exhaustive).unwrap();
        assert_eq!(full.count, BigUint::from(64u32));
    }

    // Direct count of rank-k symmetric n x n matrices over F_q by the
    // product formula for alternating-free symmetric forms.
    fn product_formula(n: u32, k: u32, q: u64) -> BigUint {
        let q = BigRational::from_integer(q.into());
        let one = BigRational::one();
        let s = k / 2;
        let mut v = one.clone();
        for i in 1..=s {
            let qi = num_traits::pow(q.clone(), 2 * i as usize);
            v = v * &qi / (&qi - &one);
        }
        for i in 0..k {
            v *= num_traits::pow(q.clone(), (n - i) as usize) - &one;
        }
        v.to_integer().to_biguint().unwrap()
    }

    #[test]
    fn leading_block_matches_exhaustive_and_product_formula() {
        for (m, q) in [(2, 2), (2, 5), (3, 2), (3, 3), (3, 5), (4, 2), (4, 3)] {
            let e = census_sym_rank(m, m, q, CensusMode::Exhaustive).unwrap();
            let l = census_sym_rank(m, m, q, CensusMode::LeadingBlock).unwrap();
            assert_eq!(e.by_rank, l.by_rank, "M={m} q={q}");
            for k in 0..=m {
                assert_eq!(l.by_rank[k as usize], product_formula(m, k, q), "M={m} k={k} q={q}");
            }
        }
    }

    #[test]
    fn exhaustive_budget_is_enforced() {
        assert!(matches!(
            census_sym_rank(4, 2, 7, CensusMode::Exhaustive),
            Err(CodimError::BudgetExceeded { .. })
        ));
        assert!(census_sym_rank(2, 1, 4, CensusMode::Exhaustive).is_err());
    }

    #[test]
    fn sampled_census_is_labeled_estimate() {
        let c = census_sym_rank(3, 2, 3, CensusMode::Sampled { seed: 1, samples: 20_000 }).unwrap();
        assert!(!c.exact);
        let exact = census_sym_rank(3, 2, 3, CensusMode::Exhaustive).unwrap().count.to_f64().unwrap();
        let est = c.count.to_f64().unwrap();
        assert!((est - exact).abs() / exact < 0.05, "{est} vs {exact}");
    }

    #[test]
    fn degree_fit_for_three_by_three_rank_two() {
        let pts: Vec<(u64, BigUint)> = [2, 3, 5]
            .iter()
            .map(|&q| (q, census_sym_rank(3, 2, q, CensusMode::Exhaustive).unwrap().count))
            .collect();
        // three points cannot pin down degree 5
        assert!(!fit_census_degree(3, 2, &pts).unwrap().matches());
        let pts = census_fit_points(3, 2, EXHAUSTIVE_BUDGET).unwrap();
        let fit = fit_census_degree(3, 2, &pts).unwrap();
        assert_eq!(fit.degree, 5);
        assert!(fit.matches());
        let json = serde_json::to_string(&fit).unwrap();
        assert_eq!(serde_json::from_str::<DegreeFit>(&json).unwrap(), fit);
    }
}
