//! Regularity conditions at a point of a hypersurface.
//!
//! At a smooth point the pieces `q_1, ..., q_{M-1}` of the local equation
//! must form a regular sequence; at a singular point `{q_2 = ... = q_M = 0}`
//! must be a finite union of lines. For homogeneous pieces both reduce to
//! one dimension check: the common zero locus in affine `M`-space has
//! dimension 1.
//!
//! Rational germs are reduced modulo several primes, standing in for
//! characteristic zero; a verdict needs at least two primes that agree.
//! Germs already over `F_p` are decided over that field alone.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyalg::{ideal_dimension, Coefficient, Field, GroebnerBudget, IdealDimension, PolyError, Polynomial, Prime};
use crate::singclass::{classify_point, local_expansion, ClassifyError, HypersurfaceGerm, SingularityClass};

pub const DEFAULT_PRIMES: [u32; 2] = [31, 101];

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RegularityError {
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("condition (1) applies to smooth points only")]
    NotSmooth,
    #[error("condition (2) applies to singular points only")]
    NotSingular,
    #[error("no primes given")]
    NoPrimes,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    /// Regular sequence at a smooth point.
    One,
    /// Finitely many lines through a singular point.
    Two,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::One => write!(f, "(1)"),
            Condition::Two => write!(f, "(2)"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Undecided,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail => write!(f, "fail"),
            Verdict::Undecided => write!(f, "undecided"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeDimension {
    pub prime: u32,
    pub dimension: IdealDimension,
}

/// Dimension of `{q_first = ... = q_top = 0}` under every prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationStep {
    pub top_degree: usize,
    pub expected: usize,
    pub dimensions: Vec<PrimeDimension>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub class: SingularityClass,
    pub condition: Condition,
    pub steps: Vec<TruncationStep>,
    pub verdict: Verdict,
    pub primes: Vec<u32>,
    pub undecided: bool,
    /// Primes skipped because a coefficient denominator vanished there.
    pub skipped_primes: Vec<u32>,
    /// Smooth or quadratic of rank at least 5.
    pub qsing_at_least_5: bool,
}

impl RegularityReport {
    pub fn top_dimensions(&self) -> &[PrimeDimension] {
        &self.steps.last().expect("at least one step").dimensions
    }

    pub fn summary(&self) -> String {
        let mut s = format!("class: {}\ncondition {}: {}\n", self.class, self.condition, self.verdict);
        for step in &self.steps {
            let dims: Vec<String> = step
                .dimensions
                .iter()
                .map(|d| format!("{} mod {}", d.dimension, d.prime))
                .collect();
            s.push_str(&format!(
                "  up to degree {}: dimension {} (expected {})\n",
                step.top_degree,
                dims.join(", "),
                step.expected
            ));
        }
        if !self.skipped_primes.is_empty() {
            s.push_str(&format!("  skipped primes: {:?}\n", self.skipped_primes));
        }
        s.push_str(&format!("qsing >= 5: {}\n", self.qsing_at_least_5));
        s
    }
}

pub fn check_condition1(g: &HypersurfaceGerm, primes: &[Prime], budget: &GroebnerBudget) -> Result<RegularityReport, RegularityError> {
    if g.multiplicity() != 1 {
        return Err(RegularityError::NotSmooth);
    }
    check(g, Condition::One, primes, budget)
}

pub fn check_condition2(g: &HypersurfaceGerm, primes: &[Prime], budget: &GroebnerBudget) -> Result<RegularityReport, RegularityError> {
    if g.multiplicity() == 1 {
        return Err(RegularityError::NotSingular);
    }
    check(g, Condition::Two, primes, budget)
}

/// Classifies `x` on `{F = 0}` and checks the matching condition.
pub fn regularity_report(f: &Polynomial, x: &[Coefficient], primes: &[Prime], budget: &GroebnerBudget) -> Result<RegularityReport, RegularityError> {
    let g = local_expansion(f, x)?;
    if g.multiplicity() == 1 {
        check_condition1(&g, primes, budget)
    } else {
        check_condition2(&g, primes, budget)
    }
}

fn check(g: &HypersurfaceGerm, condition: Condition, primes: &[Prime], budget: &GroebnerBudget) -> Result<RegularityReport, RegularityError> {
    if primes.is_empty() {
        return Err(RegularityError::NoPrimes);
    }
    let m = g.dim();
    let (first, top) = match condition {
        Condition::One => (1, m - 1),
        Condition::Two => (2, m),
    };
    let class = classify_point(g)?;
    let (primes, min_agree) = match g.field() {
        Field::Prime(p) => (vec![p], 1),
        Field::Rationals => (primes.to_vec(), 2),
    };
    let mut skipped = Vec::new();
    let mut used = Vec::new();
    let mut steps: Vec<TruncationStep> = (first..=top)
        .map(|d| TruncationStep {
            top_degree: d,
            expected: m - (d - first + 1),
            dimensions: Vec::new(),
        })
        .collect();
    for &p in &primes {
        let reduced: Result<Vec<Polynomial>, PolyError> = (first..=top).map(|i| g.piece(i).reduce_mod(p)).collect();
        let gens = match reduced {
            Ok(gens) => gens,
            Err(PolyError::DenominatorDivisible { .. }) => {
                skipped.push(p.get());
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        used.push(p.get());
        for (step, s) in steps.iter_mut().enumerate() {
            let dimension = ideal_dimension(&gens[..=step], p, budget)?;
            s.dimensions.push(PrimeDimension { prime: p.get(), dimension });
        }
    }
    let verdict = decide(&steps, min_agree);
    Ok(RegularityReport {
        class,
        condition,
        verdict,
        undecided: verdict == Verdict::Undecided,
        primes: used,
        skipped_primes: skipped,
        qsing_at_least_5: class.satisfies(5),
        steps,
    })
}

/// The dimension all primes agree on, if there are enough of them.
fn agreed(dims: &[PrimeDimension], min_agree: usize) -> Option<IdealDimension> {
    let first = dims.first()?.dimension;
    let decided = !matches!(first, IdealDimension::Undecided(_));
    (dims.len() >= min_agree && decided && dims.iter().all(|d| d.dimension == first)).then_some(first)
}

/// Pass when every step has its expected dimension; fail when the top step
/// does not reach dimension 1.
fn decide(steps: &[TruncationStep], min_agree: usize) -> Verdict {
    let top = steps.last().expect("nonempty range");
    match agreed(&top.dimensions, min_agree) {
        Some(d) if d != IdealDimension::Dimension(1) => Verdict::Fail,
        Some(_) if steps.iter().all(|s| agreed(&s.dimensions, min_agree) == Some(IdealDimension::Dimension(s.expected))) => {
            Verdict::Pass
        }
        _ => Verdict::Undecided,
    }
}

/// Parses the primes listed in a string such as `"31,101"`.
pub fn parse_primes(s: &str) -> Result<Vec<Prime>, PolyError> {
    s.split(',')
        .map(|t| t.trim())
        .filter(|t| !t.is_empty())
        .map(|t| {
            let v: u64 = t.parse().map_err(|_| PolyError::Parse(format!("bad prime {t:?}")))?;
            Prime::new(v)
        })
        .collect()
}

pub fn default_primes() -> Vec<Prime> {
    DEFAULT_PRIMES.iter().map(|&p| Prime::new(p as u64).expect("prime")).collect()
}
