use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Aggregates, BlowupGraph, NfError, Validity};

fn rat(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// One inequality on the multiplicities and whether it is tight at the
/// optimum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintStatus {
    pub constraint: String,
    pub active: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NFBoundReport {
    pub validity: Validity,
    pub p: Vec<u64>,
    pub delta: Vec<u32>,
    pub aggregates: Aggregates,
    /// Common value of `nu_i` for `i <= L_*`, in units of `n`; the rest
    /// equal `2 theta`.
    #[serde(with = "crate::serde_num")]
    pub theta: BigRational,
    /// Minimum of the quadratic form, in units of `n^2`.
    #[serde(with = "crate::serde_num")]
    pub mu: BigRational,
    /// `mu / Sigma_l`: the self-intersection has multiplicity above `c n^2`.
    #[serde(with = "crate::serde_num")]
    pub c: BigRational,
    /// `2 (2 Sigma_l + Sigma_u)^2 / (Sigma_l (Sigma_* + 2 Sigma^*))`, valid
    /// when every lower `delta_i >= 2`.
    #[serde(with = "crate::serde_num")]
    pub c_lower_bound: BigRational,
    /// `2 Sigma_l^2 + Sigma_u^2 - 2 Sigma_l Sigma_l^*`.
    #[serde(with = "crate::serde_num")]
    pub slack: BigInt,
    pub constraints: Vec<ConstraintStatus>,
    /// Lower indices with `delta_i < 2`.
    pub low_delta: Vec<usize>,
    /// `2 nu_1^2` at the optimum, the bound used when `nu_1 >= sqrt(2) n`.
    #[serde(with = "crate::serde_num")]
    pub direct_bound: BigRational,
    /// `theta^2 >= 2`, so the optimum itself lies in the large-`nu_1` branch.
    pub direct_route_applies: bool,
    /// `c > 4`.
    pub exceeds_four: bool,
}

impl NFBoundReport {
    pub fn summary(&self) -> String {
        let a = &self.aggregates;
        let join = |v: &[String]| v.join(", ");
        let mut s = format!(
            "graph: {}\np = ({})\ndelta = ({})\nSigma_* = {}, Sigma^* = {}, Sigma_l = {}, Sigma_l^* = {}, Sigma_u = {}\n",
            self.validity,
            join(&self.p.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            join(&self.delta.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            a.sigma_star,
            a.sigma_upper_star,
            a.sigma_l,
            a.sigma_l_star,
            a.sigma_u
        );
        s.push_str(&format!(
            "theta = {} n\nmu = {} n^2\nc = {} (mult_B Z > c n^2)\nc lower bound = {}\nslack = {}\n",
            self.theta, self.mu, self.c, self.c_lower_bound, self.slack
        ));
        for c in &self.constraints {
            s.push_str(&format!("  {} : {}\n", c.constraint, if c.active { "active" } else { "inactive" }));
        }
        if !self.low_delta.is_empty() {
            s.push_str(&format!("delta_i < 2 at i = {:?}\n", self.low_delta));
        }
        s.push_str(&format!(
            "2 nu_1^2 = {} n^2 (direct route {})\nc > 4: {}\n",
            self.direct_bound,
            if self.direct_route_applies { "applies" } else { "does not apply" },
            self.exceeds_four
        ));
        s
    }
}

/// Minimizes `2 sum_{i <= L_*} p_i nu_i^2 + sum_{i > L_*} p_i nu_i^2` on the
/// hyperplane `sum p_i nu_i = n sum p_i delta_i`.
///
/// The minimizer on the whole hyperplane already has `nu_i = theta` below
/// `L_*` and `2 theta` above, which meets every ordering constraint with
/// equality, so it is also the minimizer over the polytope.
pub fn closed_form_bound(g: &BlowupGraph) -> Result<NFBoundReport, NfError> {
    let p = g.path_counts()?;
    let validity = g.validate();
    let a = g.aggregates()?;
    let delta = g.deltas();
    let rhs: u64 = p.iter().zip(&delta).map(|(&pi, &di)| pi * di as u64).sum();
    let denom = rat(a.sigma_star + 2 * a.sigma_upper_star);
    let theta = rat(rhs) / &denom;
    let mu = BigRational::from_integer(2.into()) * &theta * &theta * &denom;
    let c = &mu / rat(a.sigma_l);
    let s = rat(2 * a.sigma_l + a.sigma_u);
    let c_lower_bound = BigRational::from_integer(2.into()) * &s * &s / (rat(a.sigma_l) * &denom);
    let (sl, su, sls) = (BigInt::from(a.sigma_l), BigInt::from(a.sigma_u), BigInt::from(a.sigma_l_star));
    let slack = BigInt::from(2) * &sl * &sl + &su * &su - BigInt::from(2) * &sl * &sls;

    let nu = optimum(g, &theta);
    let constraints = constraint_rows(g)
        .into_iter()
        .map(|row| ConstraintStatus {
            active: row.value(&nu).is_zero(),
            constraint: row.label,
        })
        .collect();
    let low_delta = (1..=g.l).filter(|&i| delta[i - 1] < 2).collect();
    let direct_bound = BigRational::from_integer(2.into()) * &theta * &theta;
    let direct_route_applies = &theta * &theta >= BigRational::from_integer(2.into());
    let exceeds_four = c > BigRational::from_integer(4.into());
    Ok(NFBoundReport {
        validity,
        p,
        delta,
        aggregates: a,
        theta,
        mu,
        c,
        c_lower_bound,
        slack,
        constraints,
        low_delta,
        direct_bound,
        direct_route_applies,
        exceeds_four,
    })
}

pub(super) fn optimum(g: &BlowupGraph, theta: &BigRational) -> Vec<BigRational> {
    (0..g.k)
        .map(|idx| if idx < g.l_star { theta.clone() } else { theta * BigRational::from_integer(2.into()) })
        .collect()
}

/// A homogeneous linear inequality `coeffs . nu >= 0`.
pub(super) struct ConstraintRow {
    pub label: String,
    pub coeffs: Vec<(usize, i64)>,
    pub positivity: bool,
}

impl ConstraintRow {
    pub fn value(&self, nu: &[BigRational]) -> BigRational {
        self.coeffs
            .iter()
            .fold(BigRational::zero(), |acc, &(i, c)| acc + &nu[i] * BigRational::from_integer(c.into()))
    }

    pub fn dense(&self, k: usize) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); k];
        for &(i, c) in &self.coeffs {
            v[i] = BigRational::from_integer(c.into());
        }
        v
    }
}

/// The ordering constraints `nu_1 >= ... >= nu_{L_*}`,
/// `2 nu_{L_*} >= nu_{L_*+1} >= ... >= nu_K`, then `nu_i >= 0`.
pub(super) fn constraint_rows(g: &BlowupGraph) -> Vec<ConstraintRow> {
    let mut rows = Vec::with_capacity(2 * g.k);
    for i in 1..g.k {
        let (label, coeffs) = if i == g.l_star {
            (format!("2 nu_{i} >= nu_{}", i + 1), vec![(i - 1, 2), (i, -1)])
        } else {
            (format!("nu_{i} >= nu_{}", i + 1), vec![(i - 1, 1), (i, -1)])
        };
        rows.push(ConstraintRow {
            label,
            coeffs,
            positivity: false,
        });
    }
    for i in 1..=g.k {
        rows.push(ConstraintRow {
            label: format!("nu_{i} >= 0"),
            coeffs: vec![(i - 1, 1)],
            positivity: true,
        });
    }
    rows
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FourN2Verdict {
    Holds,
    Fails,
    /// The graph is not in the rank-5 context; `c` is still reported.
    NotApplicable,
}

impl fmt::Display for FourN2Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FourN2Verdict::Holds => "holds",
            FourN2Verdict::Fails => "fails",
            FourN2Verdict::NotApplicable => "not applicable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourN2Report {
    pub verdict: FourN2Verdict,
    #[serde(with = "crate::serde_num")]
    pub slack: BigInt,
    /// `(2 Sigma_l + Sigma_u)^2 - 2 Sigma_l (Sigma_* + 2 Sigma^*)` equals the
    /// slack.
    pub forms_agree: bool,
    pub bound: NFBoundReport,
}

/// `mult_B Z > 4 n^2` via `2 Sigma_l^2 + Sigma_u^2 > 2 Sigma_l Sigma_l^*`.
pub fn verify_4n2(g: &BlowupGraph) -> Result<FourN2Report, NfError> {
    let bound = closed_form_bound(g)?;
    let a = &bound.aggregates;
    let s = BigInt::from(2 * a.sigma_l + a.sigma_u);
    let other = &s * &s - BigInt::from(2 * a.sigma_l) * BigInt::from(a.sigma_star + 2 * a.sigma_upper_star);
    let forms_agree = other == bound.slack;
    let verdict = match bound.validity {
        Validity::Rank5Context if bound.slack.is_positive() && forms_agree && bound.exceeds_four => FourN2Verdict::Holds,
        Validity::Rank5Context => FourN2Verdict::Fails,
        _ => FourN2Verdict::NotApplicable,
    };
    Ok(FourN2Report {
        verdict,
        slack: bound.slack.clone(),
        forms_agree,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn single_quadratic_point() {
        let r = closed_form_bound(&BlowupGraph::chain(1, 1, vec![4])).unwrap();
        assert_eq!((r.theta.clone(), r.mu.clone(), r.c.clone()), (q(2, 1), q(8, 1), q(8, 1)));
        assert!(r.exceeds_four);
    }

    #[test]
    fn codim_three_center_gives_two() {
        let r = closed_form_bound(&BlowupGraph::chain(1, 1, vec![3])).unwrap();
        assert_eq!(r.c, q(2, 1));
        assert!(!r.exceeds_four);
        assert_eq!(r.low_delta, vec![1]);
        let v = verify_4n2(&BlowupGraph::chain(1, 1, vec![3])).unwrap();
        assert_eq!(v.verdict, FourN2Verdict::NotApplicable);
    }

    #[test]
    fn mixed_chain() {
        let g = BlowupGraph::chain(2, 1, vec![5, 3, 2]);
        let r = closed_form_bound(&g).unwrap();
        assert_eq!(r.theta, q(6, 5));
        assert_eq!(r.mu, q(72, 5));
        assert_eq!(r.c, q(36, 5));
        assert_eq!(r.direct_bound, q(72, 25));
        assert!(!r.direct_route_applies);
        assert!(r.constraints.iter().filter(|c| !c.constraint.ends_with(">= 0")).all(|c| c.active));
        assert!(r.constraints.iter().filter(|c| c.constraint.ends_with(">= 0")).all(|c| !c.active));
        let v = verify_4n2(&g).unwrap();
        assert_eq!(v.verdict, FourN2Verdict::Holds);
        assert_eq!(v.slack, BigInt::from(5));
        assert!(v.forms_agree);
    }

    #[test]
    fn chain_of_two() {
        let v = verify_4n2(&BlowupGraph::chain(2, 2, vec![4, 4])).unwrap();
        assert_eq!(v.bound.c, q(8, 1));
        assert_eq!(v.bound.mu, q(16, 1));
        assert_eq!(v.slack, BigInt::from(8));
    }

    #[test]
    fn invalid_graph_is_an_error() {
        assert!(closed_form_bound(&BlowupGraph::chain(3, 1, vec![4, 3, 2])).is_err());
    }
}
