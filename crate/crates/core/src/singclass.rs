//! Pointwise classification of hypersurface singularities: smooth points,
//! quadratic points of a given rank, and points of higher multiplicity.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::Matrix;
use crate::polyalg::{ideal_dimension, Coefficient, Field, GroebnerBudget, IdealDimension, PolyError, Polynomial, Prime};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("point is not on the hypersurface (value {0})")]
    NotOnHypersurface(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("point has no nonzero coordinate")]
    ZeroPoint,
    #[error("point has {found} coordinates, expected {expected}")]
    PointDimension { expected: usize, found: usize },
    #[error("germ piece {degree} is not homogeneous of that degree")]
    BadPiece { degree: usize },
    #[error("germ equation is identically zero")]
    ZeroGerm,
    #[error("germs need at least 2 variables, got {0}")]
    TooFewVariables(usize),
    #[error("no point found after {0} attempts")]
    SamplingFailed(usize),
}

/// Local equation `q_1 + ... + q_d` of a hypersurface at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypersurfaceGerm {
    /// `pieces[i]` is `q_{i+1}`.
    pieces: Vec<Polynomial>,
}

impl HypersurfaceGerm {
    pub fn new(pieces: Vec<Polynomial>) -> Result<Self, ClassifyError> {
        let Some(first) = pieces.first() else {
            return Err(ClassifyError::ZeroGerm);
        };
        if first.nvars() < 2 {
            return Err(ClassifyError::TooFewVariables(first.nvars()));
        }
        for (i, q) in pieces.iter().enumerate() {
            first.try_sub(q)?;
            if !q.is_zero() && (!q.is_homogeneous() || q.total_degree() != Some(i as u32 + 1)) {
                return Err(ClassifyError::BadPiece { degree: i + 1 });
            }
        }
        if pieces.iter().all(|q| q.is_zero()) {
            return Err(ClassifyError::ZeroGerm);
        }
        let mut pieces = pieces;
        while pieces.last().is_some_and(|q| q.is_zero()) {
            pieces.pop();
        }
        Ok(HypersurfaceGerm { pieces })
    }

    /// Splits a local equation with `f(0) = 0` into graded pieces.
    pub fn from_polynomial(f: &Polynomial) -> Result<Self, ClassifyError> {
        let c = f.constant_term();
        if !c.is_zero() {
            return Err(ClassifyError::NotOnHypersurface(c.to_string()));
        }
        let mut parts = f.homogeneous_components();
        if parts.is_empty() {
            return Err(ClassifyError::ZeroGerm);
        }
        parts.remove(0);
        HypersurfaceGerm::new(parts)
    }

    pub fn dim(&self) -> usize {
        self.pieces[0].nvars()
    }

    pub fn field(&self) -> Field {
        self.pieces[0].field()
    }

    pub fn vars(&self) -> &[String] {
        self.pieces[0].vars()
    }

    /// Degree of the highest nonzero piece.
    pub fn degree(&self) -> usize {
        self.pieces.len()
    }

    /// `q_i`; zero past the top degree.
    pub fn piece(&self, i: usize) -> Polynomial {
        assert!(i >= 1, "pieces start at degree 1");
        self.pieces.get(i - 1).cloned().unwrap_or_else(|| self.pieces[0].zero_like())
    }

    pub fn pieces(&self) -> &[Polynomial] {
        &self.pieces
    }

    pub fn multiplicity(&self) -> usize {
        self.pieces.iter().position(|q| !q.is_zero()).expect("nonzero germ") + 1
    }

    pub fn equation(&self) -> Polynomial {
        self.pieces.iter().fold(self.pieces[0].zero_like(), |acc, q| &acc + q)
    }

    /// Applies `z -> images(z)` to every piece; linear images keep the grading.
    pub fn substitute_linear(&self, images: &[Polynomial]) -> Result<Self, ClassifyError> {
        let pieces = self
            .pieces
            .iter()
            .map(|q| q.substitute(images))
            .collect::<Result<Vec<_>, _>>()?;
        HypersurfaceGerm::new(pieces)
    }

    pub fn reduce_mod(&self, p: Prime) -> Result<Self, ClassifyError> {
        let pieces = self.pieces.iter().map(|q| q.reduce_mod(p)).collect::<Result<Vec<_>, _>>()?;
        if pieces.iter().all(|q| q.is_zero()) {
            return Err(ClassifyError::ZeroGerm);
        }
        HypersurfaceGerm::new(pieces)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum SingularityClass {
    Smooth,
    Quadratic { rank: usize },
    HigherMult { multiplicity: usize },
}

impl SingularityClass {
    /// Smooth, or quadratic of rank at least `r`.
    pub fn satisfies(&self, r: usize) -> bool {
        match self {
            SingularityClass::Smooth => true,
            SingularityClass::Quadratic { rank } => *rank >= r,
            SingularityClass::HigherMult { .. } => false,
        }
    }

    pub fn is_smooth(&self) -> bool {
        matches!(self, SingularityClass::Smooth)
    }
}

impl fmt::Display for SingularityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularityClass::Smooth => write!(f, "smooth"),
            SingularityClass::Quadratic { rank } => write!(f, "quadratic(rank {rank})"),
            SingularityClass::HigherMult { multiplicity } => write!(f, "multiplicity {multiplicity}"),
        }
    }
}

/// Moves a projective point of `{F = 0}` to `(1:0:...:0)` and dehomogenizes.
///
/// The first nonzero coordinate `p` of `x` is the pivot; the affine chart
/// uses the remaining coordinates in their original order, so
/// `X = x + sum_j y_j e_j` over `j != p`.
pub fn local_expansion(f: &Polynomial, x: &[Coefficient]) -> Result<HypersurfaceGerm, ClassifyError> {
    if x.len() != f.nvars() {
        return Err(ClassifyError::PointDimension {
            expected: f.nvars(),
            found: x.len(),
        });
    }
    if !f.is_homogeneous() {
        return Err(ClassifyError::NotHomogeneous);
    }
    let Some(pivot) = x.iter().position(|c| !c.is_zero()) else {
        return Err(ClassifyError::ZeroPoint);
    };
    let names: Vec<&str> = f
        .vars()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != pivot)
        .map(|(_, v)| v.as_str())
        .collect();
    let field = f.field();
    let mut images = Vec::with_capacity(x.len());
    for (m, xm) in x.iter().enumerate() {
        let mut img = Polynomial::constant(field, &names, xm.clone())?;
        if m != pivot {
            let j = if m < pivot { m } else { m - 1 };
            img = &img + &Polynomial::var(field, &names, j);
        }
        images.push(img);
    }
    let g = f.substitute(&images)?;
    let value = g.constant_term();
    if !value.is_zero() {
        return Err(ClassifyError::NotOnHypersurface(value.to_string()));
    }
    HypersurfaceGerm::from_polynomial(&g)
}

/// Rank of the symmetric matrix of a quadratic form.
pub fn hessian_rank(q2: &Polynomial) -> Result<usize, ClassifyError> {
    if q2.is_zero() {
        return Ok(0);
    }
    if !q2.is_homogeneous() || q2.total_degree() != Some(2) {
        return Err(PolyError::NotQuadratic.into());
    }
    Ok(Matrix::of_quadratic_form(q2)?.rank())
}

pub fn classify_point(g: &HypersurfaceGerm) -> Result<SingularityClass, ClassifyError> {
    let m = g.multiplicity();
    Ok(match m {
        1 => SingularityClass::Smooth,
        2 => SingularityClass::Quadratic {
            rank: hessian_rank(&g.piece(2))?,
        },
        _ => SingularityClass::HigherMult { multiplicity: m },
    })
}

/// Dimension of the singular locus `{f = df = 0}` of the affine hypersurface
/// `{f = 0}` over the algebraic closure of `F_p`.
pub fn singular_locus_dimension(f: &Polynomial, prime: Prime, budget: &GroebnerBudget) -> Result<IdealDimension, ClassifyError> {
    let mut gens = vec![f.clone()];
    gens.extend((0..f.nvars()).map(|i| f.derivative(i)));
    Ok(ideal_dimension(&gens, prime, budget)?)
}

/// Which points a census visits.
#[derive(Clone, Debug)]
pub enum CensusPoints {
    Explicit(Vec<Vec<Coefficient>>),
    Sampled {
        prime: Prime,
        count: usize,
        seed: u64,
        max_attempts: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub point: Vec<String>,
    pub class: SingularityClass,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub threshold: usize,
    /// `"explicit"` or `"sampled"`.
    pub method: String,
    pub field: String,
    pub entries: Vec<CensusEntry>,
    pub violations: usize,
    /// True when no visited point violates the threshold. Only the visited
    /// points are certified.
    pub verdict: bool,
}

impl CensusReport {
    pub fn table(&self) -> String {
        let mut s = format!("{:<32} {:<22} ok\n", "point", "class");
        for e in &self.entries {
            s.push_str(&format!("{:<32} {:<22} {}\n", format!("({})", e.point.join(":")), e.class.to_string(), e.ok));
        }
        s.push_str(&format!(
            "{} {} point(s) over {}, threshold {}: {} violation(s)\n",
            self.entries.len(),
            self.method,
            self.field,
            self.threshold,
            self.violations
        ));
        s
    }
}

/// Classifies `F` at explicit or randomly sampled points of `{F = 0}`.
///
/// Sampling over `F_p` draws all coordinates but the last at random and scans
/// the residues for the last one; draws with no root are retried.
pub fn scan_census(f: &Polynomial, points: &CensusPoints, threshold: usize) -> Result<CensusReport, ClassifyError> {
    let (method, field, pts, poly) = match points {
        CensusPoints::Explicit(list) => ("explicit", f.field(), list.clone(), f.clone()),
        CensusPoints::Sampled {
            prime,
            count,
            seed,
            max_attempts,
        } => {
            let g = f.reduce_mod(*prime)?;
            let pts = sample_points(&g, *prime, *count, *seed, *max_attempts)?;
            ("sampled", Field::Prime(*prime), pts, g)
        }
    };
    let mut entries = Vec::with_capacity(pts.len());
    for x in &pts {
        let germ = local_expansion(&poly, x)?;
        let class = classify_point(&germ)?;
        entries.push(CensusEntry {
            point: x.iter().map(plain_coordinate).collect(),
            class,
            ok: class.satisfies(threshold),
        });
    }
    let violations = entries.iter().filter(|e| !e.ok).count();
    Ok(CensusReport {
        threshold,
        method: method.into(),
        field: field.to_string(),
        entries,
        violations,
        verdict: violations == 0,
    })
}

fn plain_coordinate(c: &Coefficient) -> String {
    match c {
        Coefficient::Rational(q) => q.to_string(),
        Coefficient::Residue { value, .. } => value.to_string(),
    }
}

fn sample_points(f: &Polynomial, p: Prime, count: usize, seed: u64, max_attempts: usize) -> Result<Vec<Vec<Coefficient>>, ClassifyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = Field::Prime(p);
    let n = f.nvars();
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        if attempts == max_attempts {
            return Err(ClassifyError::SamplingFailed(max_attempts));
        }
        attempts += 1;
        let mut x: Vec<Coefficient> = (0..n)
            .map(|_| field.from_i64(rng.gen_range(0..p.get()) as i64))
            .collect();
        let head_zero = x[..n - 1].iter().all(|c| c.is_zero());
        let start = if head_zero { 1 } else { 0 };
        for v in start..p.get() {
            x[n - 1] = field.from_i64(v as i64);
            if f.evaluate(&x)?.is_zero() {
                out.push(x);
                break;
            }
        }
    }
    Ok(out)
}
