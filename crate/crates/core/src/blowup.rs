//! Blow-ups of quadratic hypersurface germs along smooth coordinate centers.
//!
//! A germ `f = c_1 z_1^2 + ... + c_r z_r^2 + f_{>=3}` with
//! `f_{>=3} in (z_1, ..., z_k)^2` is blown up along `B = {z_1 = ... = z_k = 0}`.
//! Chart `i` substitutes `z_j = t_j z_i` for `j <= k, j != i` and divides
//! by `z_i^2`. Points of the strict transform over the origin are then
//! classified: charts `i <= r` must have no singular points on the fiber,
//! and charts `i > r` may only carry smooth or rank `>= r` quadratic points.
//!
//! Everything is a finite jet of order `D`; the dropped terms have degree at
//! least `D - 1 >= 3` in the fiber-normal coordinates, so they never touch the
//! 2-jets that classification reads.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::Matrix;
use crate::polyalg::{formal_inverse_compose, Coefficient, Field, GroebnerBudget, IdealDimension, JetOrder, PolyError, Polynomial, PolynomialRecord, Prime};
use crate::regcheck::PrimeDimension;
use crate::singclass::{classify_point, hessian_rank, ClassifyError, HypersurfaceGerm, SingularityClass};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BlowupError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error("invalid normal form: {0}")]
    InvalidNormalForm(String),
    #[error("tail has a term of degree {0} < 3")]
    LowDegreeTail(u32),
    #[error("tail is not in the square of the center ideal")]
    ClaimViolated,
    #[error("germ must vanish at the origin with zero linear part")]
    NotSingularAtOrigin,
    #[error("center is not contained in the singular locus")]
    CenterNotSingular,
    #[error("multiplicity along the center is {0}, expected 2")]
    Multiplicity(u32),
    #[error("quadratic part is zero on the center directions")]
    DegenerateQuadratic,
    #[error("chart {chart} out of range 1..={k}")]
    ChartOutOfRange { chart: usize, k: usize },
    #[error("strict transform division left a remainder in chart {0}")]
    InexactDivision(usize),
    #[error("center forms are not linearly independent linear forms")]
    BadCenter,
}

/// `sum c_i z_i^2 + tail` with center `{z_1 = ... = z_k = 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GermNormalForm {
    n: usize,
    r: usize,
    k: usize,
    c: Vec<BigRational>,
    tail: Polynomial,
    jet: JetOrder,
}

impl GermNormalForm {
    /// Validates the data; the tail is truncated at the jet order.
    pub fn new(n: usize, r: usize, k: usize, c: Vec<BigRational>, tail: Polynomial, jet: JetOrder) -> Result<Self, BlowupError> {
        let bad = |s: String| Err(BlowupError::InvalidNormalForm(s));
        if n < 2 {
            return bad(format!("n = {n} < 2"));
        }
        if r < 1 || r > k || k > n {
            return bad(format!("need 1 <= r <= k <= n, got r = {r}, k = {k}, n = {n}"));
        }
        if c.len() != r {
            return bad(format!("{} diagonal coefficients for rank {r}", c.len()));
        }
        if c.iter().any(|x| x.is_zero()) {
            return bad("zero diagonal coefficient".into());
        }
        if tail.field() != Field::Rationals {
            return bad("tail must have rational coefficients".into());
        }
        if tail.nvars() != n {
            return bad(format!("tail has {} variables, expected {n}", tail.nvars()));
        }
        let tail = tail.truncate(jet.get());
        if !claim_membership(&tail, k)? {
            return Err(BlowupError::ClaimViolated);
        }
        Ok(GermNormalForm { n, r, k, c, tail, jet })
    }

    /// Normal form with variables `z1..zn`.
    pub fn with_default_vars(n: usize, r: usize, k: usize, c: Vec<BigRational>, tail: &str, jet: JetOrder) -> Result<Self, BlowupError> {
        let vars = default_vars(n);
        let tail = Polynomial::parse(Field::Rationals, &vars, tail)?;
        GermNormalForm::new(n, r, k, c, tail, jet)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.c
    }

    pub fn tail(&self) -> &Polynomial {
        &self.tail
    }

    pub fn jet_order(&self) -> JetOrder {
        self.jet
    }

    pub fn vars(&self) -> &[String] {
        self.tail.vars()
    }

    pub fn quadratic_part(&self) -> Polynomial {
        let mut q = self.tail.zero_like();
        for (i, ci) in self.c.iter().enumerate() {
            let zi = self.tail.var_like(i);
            q = &q + &(&zi * &zi).scale(&Coefficient::Rational(ci.clone()));
        }
        q
    }

    pub fn equation(&self) -> Polynomial {
        &self.quadratic_part() + &self.tail
    }
}

pub fn default_vars(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("z{i}")).collect()
}

/// True iff every term has degree at least 2 in the first `k` variables.
pub fn claim_membership(tail: &Polynomial, k: usize) -> Result<bool, BlowupError> {
    for (e, _) in tail.terms() {
        let d: u32 = e.iter().sum();
        if d < 3 {
            return Err(BlowupError::LowDegreeTail(d));
        }
    }
    Ok(tail.terms().all(|(e, _)| center_degree(e, k) >= 2))
}

fn center_degree(e: &[u32], k: usize) -> u32 {
    e[..k].iter().sum()
}

/// Output of [`normalize_germ`].
#[derive(Clone, Debug)]
pub struct Normalization {
    pub form: GermNormalForm,
    /// `z = P u` on the first `k` coordinates.
    pub congruence: Matrix,
    /// Old `u` as jets in the new coordinates.
    pub inverse: Vec<Polynomial>,
}

/// Brings a germ singular along `{z_1 = ... = z_k = 0}` to normal form.
///
/// The quadratic part is diagonalized by a rational congruence (no square
/// roots, so the `c_i` are kept), then `u'_i = (1/(2 c_i)) df/du_i` for
/// `i <= r` is inverted to order `D`.
pub fn normalize_germ(f: &Polynomial, k: usize, jet: JetOrder) -> Result<Normalization, BlowupError> {
    let n = f.nvars();
    if f.field() != Field::Rationals {
        return Err(BlowupError::InvalidNormalForm("germ must have rational coefficients".into()));
    }
    if k == 0 || k > n {
        return Err(BlowupError::InvalidNormalForm(format!("center codimension {k} out of range 1..={n}")));
    }
    if !f.constant_term().is_zero() || !f.homogeneous_part(1).is_zero() {
        return Err(BlowupError::NotSingularAtOrigin);
    }
    for i in 0..n {
        if f.derivative(i).terms().any(|(e, _)| center_degree(e, k) == 0) {
            return Err(BlowupError::CenterNotSingular);
        }
    }
    let mult = f.terms().map(|(e, _)| center_degree(e, k)).min().unwrap_or(0);
    if mult != 2 {
        return Err(BlowupError::Multiplicity(mult));
    }
    let d = jet.get();
    let f = f.truncate(d);

    // the quadratic part lives in z_1..z_k because f is in (z_1..z_k)^2
    let q2 = f.homogeneous_part(2);
    let a = Matrix::of_quadratic_form(&q2)?;
    let mut block = Matrix::zeros(Field::Rationals, k, k);
    for i in 0..k {
        for j in 0..k {
            block.set(i, j, a.get(i, j).clone());
        }
    }
    let (diag, p) = block.diagonalize_symmetric()?;
    let r = diag.iter().take_while(|c| !c.is_zero()).count();
    if r == 0 {
        return Err(BlowupError::DegenerateQuadratic);
    }

    let linear: Vec<Polynomial> = (0..n)
        .map(|j| {
            if j >= k {
                return f.var_like(j);
            }
            (0..k).fold(f.zero_like(), |acc, l| &acc + &f.var_like(l).scale(p.get(j, l)))
        })
        .collect();
    let f1 = f.substitute_truncated(&linear, d)?;

    let mut map = Vec::with_capacity(n);
    for (i, ci) in diag.iter().enumerate().take(n) {
        if i < r {
            let s = (ci + ci).inv().expect("nonzero");
            map.push(f1.derivative(i).scale(&s).truncate(d));
        } else {
            map.push(f1.var_like(i));
        }
    }
    for i in diag.len()..n {
        map.push(f1.var_like(i));
    }
    map.truncate(n);
    let sigma = formal_inverse_compose(&map, jet)?;
    let f2 = f1.substitute_truncated(&sigma, d)?;

    let c: Vec<BigRational> = diag[..r]
        .iter()
        .map(|x| x.as_rational().expect("rational").clone())
        .collect();
    let quad = (0..r).fold(f2.zero_like(), |acc, i| {
        let u = f2.var_like(i);
        &acc + &(&u * &u).scale(&Coefficient::Rational(c[i].clone()))
    });
    let tail = f2.try_sub(&quad)?;
    if let Some(low) = tail.terms().map(|(e, _)| e.iter().sum::<u32>()).find(|&s| s < 3) {
        return Err(BlowupError::LowDegreeTail(low));
    }
    let form = GermNormalForm::new(n, r, k, c, tail, jet)?;
    Ok(Normalization {
        form,
        congruence: p,
        inverse: sigma,
    })
}

/// Linear change making the center `{l_1 = ... = l_k = 0}` (linear forms
/// through the origin) the coordinate subspace `{z_1 = ... = z_k = 0}`.
pub fn straighten_center(f: &Polynomial, forms: &[Polynomial]) -> Result<Polynomial, BlowupError> {
    let n = f.nvars();
    let field = f.field();
    let mut rows = Vec::with_capacity(n);
    for l in forms {
        f.try_sub(l)?;
        if !l.is_zero() && (!l.is_homogeneous() || l.total_degree() != Some(1)) {
            return Err(BlowupError::BadCenter);
        }
        rows.push((0..n).map(|j| l.coefficient(&unit(n, j))).collect::<Vec<_>>());
    }
    // complete to a basis with unit vectors
    for j in 0..n {
        if rows.len() == n {
            break;
        }
        let mut trial = rows.clone();
        trial.push((0..n).map(|i| if i == j { field.one() } else { field.zero() }).collect());
        if Matrix::from_rows(field, trial.clone())?.rank() == trial.len() {
            rows = trial;
        }
    }
    let m = Matrix::from_rows(field, rows)?;
    let inv = m.inverse().ok_or(BlowupError::BadCenter)?;
    // w = M z, so z = M^{-1} w
    let images: Vec<Polynomial> = (0..n)
        .map(|i| (0..n).fold(f.zero_like(), |acc, j| &acc + &f.var_like(j).scale(inv.get(i, j))))
        .collect();
    Ok(f.substitute(&images)?)
}

fn unit(n: usize, j: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[j] = 1;
    e
}

/// Chart `i` of the blow-up and the strict transform there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartTransform {
    /// 1-based chart index.
    pub chart: usize,
    pub k: usize,
    pub strict: Polynomial,
    /// 0-based positions of `z_i, z_{k+1}, ..., z_n`, which vanish on the
    /// exceptional fiber over the origin.
    pub fiber: Vec<usize>,
}

impl ChartTransform {
    pub fn vars(&self) -> &[String] {
        self.strict.vars()
    }

    /// Positions of the `t_j`, `j != i`.
    pub fn fiber_coordinates(&self) -> Vec<usize> {
        (0..self.k).filter(|&j| j + 1 != self.chart).collect()
    }
}

fn chart_vars(g: &GermNormalForm, chart: usize) -> Vec<String> {
    (0..g.n)
        .map(|j| {
            if j < g.k && j + 1 != chart {
                format!("t{}", j + 1)
            } else {
                g.vars()[j].clone()
            }
        })
        .collect()
}

/// Images of the original coordinates in chart `i`.
pub fn chart_substitution(g: &GermNormalForm, chart: usize) -> Result<Vec<Polynomial>, BlowupError> {
    check_chart(g, chart)?;
    let vars = chart_vars(g, chart);
    let zi = Polynomial::var(Field::Rationals, &vars, chart - 1);
    Ok((0..g.n)
        .map(|j| {
            let v = Polynomial::var(Field::Rationals, &vars, j);
            if j < g.k && j + 1 != chart {
                &v * &zi
            } else {
                v
            }
        })
        .collect())
}

fn check_chart(g: &GermNormalForm, chart: usize) -> Result<(), BlowupError> {
    if chart == 0 || chart > g.k {
        return Err(BlowupError::ChartOutOfRange { chart, k: g.k });
    }
    Ok(())
}

/// Substitutes the chart and divides by `z_i^2` monomial by monomial.
pub fn blowup_chart(g: &GermNormalForm, chart: usize) -> Result<ChartTransform, BlowupError> {
    check_chart(g, chart)?;
    let vars: Arc<[String]> = chart_vars(g, chart).into();
    let i = chart - 1;
    let k = g.k;
    let strict = g
        .equation()
        .map_monomials(vars, |e| {
            let a = center_degree(e, k);
            if a < 2 {
                return None;
            }
            let mut out = e.to_vec();
            out[i] = a - 2;
            Some(out)
        })
        .ok_or(BlowupError::InexactDivision(chart))?;
    let mut fiber = vec![i];
    fiber.extend(k..g.n);
    Ok(ChartTransform { chart, k, strict, fiber })
}

/// `f` pulled back to the chart, before division.
pub fn total_transform(g: &GermNormalForm, chart: usize) -> Result<Polynomial, BlowupError> {
    let images = chart_substitution(g, chart)?;
    Ok(g.equation().substitute(&images)?)
}

/// Maps a point of the exceptional fiber from chart `from` to chart `to`
/// (coordinates in chart variable order). `None` when the point is not in
/// the second chart.
pub fn transfer_fiber_point(k: usize, from: usize, to: usize, point: &[Coefficient]) -> Option<Vec<Coefficient>> {
    let field = point.first()?.field();
    // homogeneous direction in P^{k-1}: slot `from` is 1
    let dir: Vec<Coefficient> = (0..k).map(|j| if j + 1 == from { field.one() } else { point[j].clone() }).collect();
    let s = dir[to - 1].inv()?;
    let mut out = point.to_vec();
    for j in 0..k {
        out[j] = if j + 1 == to { field.zero() } else { &dir[j] * &s };
    }
    Some(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChartCase {
    /// `i <= r`: the strict transform misses the singular candidates.
    Unit,
    /// `i > r`: candidates lie on `{t_1 = ... = t_r = 0}`.
    Translated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidatePoint {
    pub coords: Vec<String>,
    pub class: SingularityClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateReport {
    pub chart: usize,
    pub case: ChartCase,
    /// Dimension of `{s = ds = 0}` on the fiber, per prime.
    pub singular_fiber: Vec<PrimeDimension>,
    /// Free coordinates of the candidate linear space.
    pub candidate_space: Vec<String>,
    /// Classified points: the origin plus sampled points (translated charts only).
    pub points: Vec<CandidatePoint>,
    /// No singular point of the strict transform on the fiber, confirmed by
    /// every prime.
    pub empty: bool,
    pub undecided: bool,
}

/// Singular candidates of the strict transform on the exceptional fiber.
pub fn exceptional_candidates(
    ct: &ChartTransform,
    g: &GermNormalForm,
    primes: &[Prime],
    seed: u64,
    samples: usize,
    budget: &GroebnerBudget,
) -> Result<CandidateReport, BlowupError> {
    let s = &ct.strict;
    let mut gens = vec![s.clone()];
    gens.extend((0..s.nvars()).map(|j| s.derivative(j)));
    gens.extend(ct.fiber.iter().map(|&j| s.var_like(j)));
    let mut singular_fiber = Vec::new();
    for &p in primes {
        match crate::polyalg::ideal_dimension(&gens, p, budget) {
            Ok(dimension) => singular_fiber.push(PrimeDimension { prime: p.get(), dimension }),
            Err(PolyError::DenominatorDivisible { .. }) => continue,
            Err(e) => return Err(e.into()),
        }
    }
    let undecided = singular_fiber.is_empty() || singular_fiber.iter().any(|d| matches!(d.dimension, IdealDimension::Undecided(_)));
    let empty = !singular_fiber.is_empty() && singular_fiber.iter().all(|d| d.dimension == IdealDimension::Empty);

    let case = if ct.chart <= g.r { ChartCase::Unit } else { ChartCase::Translated };
    let free: Vec<usize> = (g.r..g.k).filter(|&j| j + 1 != ct.chart).collect();
    let mut points = Vec::new();
    if case == ChartCase::Translated {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (ct.chart as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let origin = vec![Field::Rationals.zero(); s.nvars()];
        let mut batch = vec![origin];
        if !free.is_empty() {
            for _ in 0..samples {
                let mut x = vec![Field::Rationals.zero(); s.nvars()];
                for &j in &free {
                    x[j] = Field::Rationals.from_i64(rng.gen_range(-3..=3));
                }
                batch.push(x);
            }
        }
        for x in batch {
            let shifted = s.taylor_shift(&x)?;
            if !shifted.constant_term().is_zero() {
                // a bookkeeping failure: candidates always lie on the strict transform
                return Err(BlowupError::InvalidNormalForm(format!("candidate {x:?} is off the strict transform")));
            }
            let class = classify_point(&HypersurfaceGerm::from_polynomial(&shifted)?)?;
            points.push(CandidatePoint {
                coords: x.iter().map(|c| c.to_string()).collect(),
                class,
            });
        }
    }
    Ok(CandidateReport {
        chart: ct.chart,
        case,
        singular_fiber,
        candidate_space: free.iter().map(|&j| s.vars()[j].clone()).collect(),
        points,
        empty,
        undecided,
    })
}

/// Rank of the quadric cut out on the exceptional fiber, after homogenizing
/// the chart coordinates.
pub fn fiber_quadric_rank(ct: &ChartTransform) -> Result<usize, BlowupError> {
    let s = &ct.strict;
    let coords = ct.fiber_coordinates();
    let mut names: Vec<String> = vec!["t0".into()];
    names.extend(coords.iter().map(|&j| s.vars()[j].clone()));
    let mut q = Polynomial::zero(Field::Rationals, &names);
    for (e, c) in s.terms() {
        if ct.fiber.iter().any(|&j| e[j] > 0) {
            continue;
        }
        let d: u32 = coords.iter().map(|&j| e[j]).sum();
        if d > 2 {
            return Err(BlowupError::InvalidNormalForm(format!("fiber restriction has degree {d}")));
        }
        let mut exps = vec![2 - d];
        exps.extend(coords.iter().map(|&j| e[j]));
        let mono = Polynomial::from_terms(Field::Rationals, &names, [(exps, c.clone())])?;
        q = &q + &mono;
    }
    Ok(hessian_rank(&q)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem4Verdict {
    Pass,
    Fail,
    Undecided,
    /// The germ itself has rank below the threshold.
    PreconditionViolated,
}

impl fmt::Display for Theorem4Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Theorem4Verdict::Pass => "PASS",
            Theorem4Verdict::Fail => "FAIL",
            Theorem4Verdict::Undecided => "UNDECIDED",
            Theorem4Verdict::PreconditionViolated => "PRECONDITION VIOLATED",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartReport {
    pub chart: usize,
    pub strict_transform: String,
    pub exact_division: bool,
    pub fiber_quadric_rank: usize,
    pub candidates: CandidateReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem4Report {
    pub n: usize,
    pub r: usize,
    pub k: usize,
    pub threshold: usize,
    pub jet_order: u32,
    pub charts: Vec<ChartReport>,
    /// Classification covers the origin and seeded sample points only.
    pub sampled: bool,
    pub verdict: Theorem4Verdict,
}

impl Theorem4Report {
    pub fn summary(&self) -> String {
        let mut s = format!(
            "n = {}, r = {}, k = {}, threshold {}, jet order {}\n",
            self.n, self.r, self.k, self.threshold, self.jet_order
        );
        for c in &self.charts {
            let classes: Vec<String> = c.candidates.points.iter().map(|p| p.class.to_string()).collect();
            let dims: Vec<String> = c
                .candidates
                .singular_fiber
                .iter()
                .map(|d| format!("{} mod {}", d.dimension, d.prime))
                .collect();
            s.push_str(&format!(
                "chart {}: {}\n  exact division {}, fiber quadric rank {}, singular locus on fiber: {}\n  classified: [{}]\n",
                c.chart,
                c.strict_transform,
                c.exact_division,
                c.fiber_quadric_rank,
                dims.join(", "),
                classes.join(", ")
            ));
        }
        s.push_str(&format!("verdict: {} (sampled points)\n", self.verdict));
        s
    }
}

/// Runs every chart of the blow-up and checks the stability statement at
/// threshold `r`.
pub fn verify_theorem4(
    g: &GermNormalForm,
    threshold: usize,
    seed: u64,
    samples: usize,
    primes: &[Prime],
    budget: &GroebnerBudget,
) -> Result<Theorem4Report, BlowupError> {
    let mut charts = Vec::with_capacity(g.k);
    let mut ok = true;
    let mut undecided = false;
    for chart in 1..=g.k {
        let ct = blowup_chart(g, chart)?;
        let total = total_transform(g, chart)?;
        let zi = ct.strict.var_like(chart - 1);
        let exact_division = &(&zi * &zi) * &ct.strict == total;
        let rank = fiber_quadric_rank(&ct)?;
        let cand = exceptional_candidates(&ct, g, primes, seed, samples, budget)?;
        ok &= exact_division && rank >= threshold;
        match cand.case {
            ChartCase::Unit => {
                undecided |= cand.undecided;
                ok &= cand.empty || cand.undecided;
            }
            ChartCase::Translated => {
                ok &= cand.points.iter().all(|p| p.class.satisfies(threshold));
            }
        }
        charts.push(ChartReport {
            chart,
            strict_transform: ct.strict.to_string(),
            exact_division,
            fiber_quadric_rank: rank,
            candidates: cand,
        });
    }
    let verdict = if g.r < threshold {
        Theorem4Verdict::PreconditionViolated
    } else if !ok {
        Theorem4Verdict::Fail
    } else if undecided {
        Theorem4Verdict::Undecided
    } else {
        Theorem4Verdict::Pass
    };
    Ok(Theorem4Report {
        n: g.n,
        r: g.r,
        k: g.k,
        threshold,
        jet_order: g.jet.get(),
        charts,
        sampled: true,
        verdict,
    })
}

/// Default jet order for a germ of degree `deg`.
pub fn default_jet_order(deg: u32) -> JetOrder {
    JetOrder::new(deg.max(4)).expect("at least 4")
}

/// A seeded normal form: nonzero `c_i` in `[-3, 3]` and a tail of 3 to 8
/// monomials of degree 3 or 4 in `(z_1, ..., z_k)^2`.
pub fn random_normal_form(seed: u64, n: usize, r: usize, k: usize) -> Result<GermNormalForm, BlowupError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c: Vec<BigRational> = (0..r)
        .map(|_| {
            let v = loop {
                let v: i64 = rng.gen_range(-3..=3);
                if v != 0 {
                    break v;
                }
            };
            BigRational::from_integer(BigInt::from(v))
        })
        .collect();
    let vars = default_vars(n);
    let mut tail = Polynomial::zero(Field::Rationals, &vars);
    let terms = rng.gen_range(3..=8);
    for _ in 0..terms {
        let d: u32 = rng.gen_range(3..=4);
        let a = if k == n { d } else { rng.gen_range(2..=d) };
        let mut e = vec![0u32; n];
        for _ in 0..a {
            e[rng.gen_range(0..k)] += 1;
        }
        for _ in a..d {
            e[rng.gen_range(k..n)] += 1;
        }
        let coeff = loop {
            let v: i64 = rng.gen_range(-5..=5);
            if v != 0 {
                break v;
            }
        };
        tail = &tail + &Polynomial::from_terms(Field::Rationals, &vars, [(e, Field::Rationals.from_i64(coeff))])?;
    }
    GermNormalForm::new(n, r, k, c, tail, default_jet_order(4))
}

/// Germ file contents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GermRecord {
    pub n: usize,
    pub r: usize,
    pub k: usize,
    pub c: Vec<String>,
    pub tail: PolynomialRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jet_order: Option<u32>,
}

impl From<&GermNormalForm> for GermRecord {
    fn from(g: &GermNormalForm) -> Self {
        GermRecord {
            n: g.n,
            r: g.r,
            k: g.k,
            c: g.c.iter().map(|q| q.to_string()).collect(),
            tail: PolynomialRecord::from(&g.tail),
            jet_order: Some(g.jet.get()),
        }
    }
}

impl GermRecord {
    /// Builds the normal form; `jet_override` wins over the file's order.
    pub fn into_normal_form(self, jet_override: Option<JetOrder>) -> Result<GermNormalForm, BlowupError> {
        let c = self
            .c
            .iter()
            .map(|s| match Field::Rationals.parse_coefficient(s)? {
                Coefficient::Rational(q) => Ok(q),
                Coefficient::Residue { .. } => Err(BlowupError::InvalidNormalForm("diagonal must be rational".into())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let tail = Polynomial::try_from(self.tail)?;
        let deg = tail.total_degree().unwrap_or(0);
        let jet = match (jet_override, self.jet_order) {
            (Some(j), _) => j,
            (None, Some(d)) => JetOrder::new(d)?,
            (None, None) => default_jet_order(deg),
        };
        GermNormalForm::new(self.n, self.r, self.k, c, tail, jet)
    }
}

/// Convenience for tests and examples: the diagonal `(1, ..., 1)`.
pub fn unit_diagonal(r: usize) -> Vec<BigRational> {
    vec![BigRational::one(); r]
}
