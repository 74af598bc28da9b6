//! Resolution graphs of a maximal singularity and the quadratic-form bound
//! on the multiplicity of the self-intersection of a mobile system.
//!
//! Vertex `i` stands for the exceptional divisor of the `i`-th blow-up, whose
//! center has codimension `codims[i-1]`. An edge `j -> i` (`j > i`) means the
//! `j`-th center lies over the `i`-th exceptional divisor. Multiplicities are
//! measured in units of `n`, so `theta` is a multiple of `n` and `mu` of `n^2`.

mod bound;
mod oracle;
mod random;

pub use bound::{closed_form_bound, verify_4n2, ConstraintStatus, FourN2Report, FourN2Verdict, NFBoundReport};
pub use oracle::{brute_force_bound, OracleResult, MAX_ORACLE_K};
pub use random::{random_rank5_graph, with_upper_vertex};

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Path counts stay below `2^58` up to this many vertices.
pub const MAX_K: usize = 60;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NfError {
    #[error("invalid graph: {}", .0.join("; "))]
    InvalidGraph(Vec<String>),
    #[error("oracle supports K <= {MAX_ORACLE_K}, got {0}")]
    OracleBudget(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupGraph {
    pub k: usize,
    pub l: usize,
    pub l_star: usize,
    /// `codims[i-1]` is the codimension of the `i`-th center.
    pub codims: Vec<u32>,
    /// Pairs `[j, i]` with `j > i`.
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "validity", rename_all = "snake_case")]
pub enum Validity {
    Invalid { reasons: Vec<String> },
    WellFormed,
    /// Well formed, and every multiplicity-2 center has codimension at least 4.
    Rank5Context,
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        !matches!(self, Validity::Invalid { .. })
    }
}

impl fmt::Display for Validity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Validity::Invalid { reasons } => write!(f, "invalid ({})", reasons.join("; ")),
            Validity::WellFormed => f.write_str("well-formed"),
            Validity::Rank5Context => f.write_str("rank-5 context"),
        }
    }
}

impl BlowupGraph {
    /// The chain `K -> K-1 -> ... -> 1`.
    pub fn chain(l: usize, l_star: usize, codims: Vec<u32>) -> BlowupGraph {
        let k = codims.len();
        BlowupGraph {
            k,
            l,
            l_star,
            codims,
            edges: (2..=k).map(|i| (i, i - 1)).collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<BlowupGraph, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serializes")
    }

    pub fn validate(&self) -> Validity {
        let mut reasons = Vec::new();
        let k = self.k;
        if k == 0 {
            reasons.push("K must be at least 1".to_string());
        }
        if k > MAX_K {
            reasons.push(format!("K = {k} exceeds {MAX_K}"));
        }
        if self.codims.len() != k {
            reasons.push(format!("{} codimensions for K = {k}", self.codims.len()));
        }
        if !(1 <= self.l_star && self.l_star <= self.l && self.l <= k) {
            reasons.push(format!("need 1 <= L_* <= L <= K, got L_* = {}, L = {}, K = {k}", self.l_star, self.l));
        }
        let mut seen = BTreeSet::new();
        for &(j, i) in &self.edges {
            if !(1 <= i && i < j && j <= k) {
                reasons.push(format!("edge {j}->{i} must satisfy 1 <= i < j <= K"));
            }
            if !seen.insert((j, i)) {
                reasons.push(format!("duplicate edge {j}->{i}"));
            }
        }
        for i in 2..=k {
            if !seen.contains(&(i, i - 1)) {
                reasons.push(format!("edge i->i-1 required: {i}->{} missing", i - 1));
            }
        }
        if self.codims.len() == k {
            for (idx, &c) in self.codims.iter().enumerate() {
                let i = idx + 1;
                if i <= self.l && c < 3 {
                    reasons.push(format!("codim >= 3 required for i <= L: codim_{i} = {c}"));
                }
                if i > self.l && c != 2 {
                    reasons.push(format!("codim = 2 required for i > L: codim_{i} = {c}"));
                }
            }
        }
        if !reasons.is_empty() {
            return Validity::Invalid { reasons };
        }
        if self.codims[..self.l_star].iter().all(|&c| c >= 4) {
            Validity::Rank5Context
        } else {
            Validity::WellFormed
        }
    }

    fn require_valid(&self) -> Result<(), NfError> {
        match self.validate() {
            Validity::Invalid { reasons } => Err(NfError::InvalidGraph(reasons)),
            _ => Ok(()),
        }
    }

    /// `codim - 2` up to `L_*`, `codim - 1` above.
    pub fn deltas(&self) -> Vec<u32> {
        self.codims
            .iter()
            .enumerate()
            .map(|(idx, &c)| if idx < self.l_star { c.saturating_sub(2) } else { c.saturating_sub(1) })
            .collect()
    }

    /// Number of paths from the top vertex `K` to each vertex.
    pub fn path_counts(&self) -> Result<Vec<u64>, NfError> {
        self.require_valid()?;
        let k = self.k;
        let mut p = vec![0u64; k + 1];
        p[k] = 1;
        let mut into: Vec<Vec<usize>> = vec![Vec::new(); k + 1];
        for &(j, i) in &self.edges {
            into[i].push(j);
        }
        for i in (1..k).rev() {
            p[i] = into[i].iter().map(|&j| p[j]).sum();
        }
        Ok(p[1..].to_vec())
    }

    pub fn aggregates(&self) -> Result<Aggregates, NfError> {
        let p = self.path_counts()?;
        Ok(Aggregates::new(&p, self.l, self.l_star))
    }
}

/// The sums of path counts over the ranges cut out by `L_*` and `L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Aggregates {
    /// `i <= L_*`
    pub sigma_star: u64,
    /// `i > L_*`
    pub sigma_upper_star: u64,
    /// `i <= L`
    pub sigma_l: u64,
    /// `L_* < i <= L`
    pub sigma_l_star: u64,
    /// `i > L`
    pub sigma_u: u64,
}

impl Aggregates {
    fn new(p: &[u64], l: usize, l_star: usize) -> Aggregates {
        let sum = |a: usize, b: usize| p[a..b].iter().sum::<u64>();
        let k = p.len();
        let a = Aggregates {
            sigma_star: sum(0, l_star),
            sigma_upper_star: sum(l_star, k),
            sigma_l: sum(0, l),
            sigma_l_star: sum(l_star, l),
            sigma_u: sum(l, k),
        };
        debug_assert!(a.relations_hold());
        a
    }

    /// `Sigma_l = Sigma_* + Sigma_l^*` and `Sigma^* = Sigma_l^* + Sigma_u`.
    pub fn relations_hold(&self) -> bool {
        self.sigma_l == self.sigma_star + self.sigma_l_star && self.sigma_upper_star == self.sigma_l_star + self.sigma_u
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mixed() -> BlowupGraph {
        BlowupGraph::chain(2, 1, vec![5, 3, 2])
    }

    #[test]
    fn chain_of_two_is_rank5_context() {
        let g = BlowupGraph::chain(2, 2, vec![4, 4]);
        assert_eq!(g.validate(), Validity::Rank5Context);
        assert_eq!(g.deltas(), vec![2, 2]);
    }

    #[test]
    fn missing_chain_edge_is_invalid() {
        let mut g = BlowupGraph::chain(2, 2, vec![4, 4]);
        g.edges.clear();
        let Validity::Invalid { reasons } = g.validate() else { panic!() };
        assert!(reasons[0].contains("edge i->i-1 required"));
    }

    #[test]
    fn low_codim_in_lower_part_is_invalid() {
        let g = BlowupGraph::chain(3, 1, vec![4, 3, 2]);
        let Validity::Invalid { reasons } = g.validate() else { panic!() };
        assert!(reasons[0].contains("codim >= 3 required for i <= L"));
    }

    #[test]
    fn codim_three_point_is_only_well_formed() {
        assert_eq!(BlowupGraph::chain(1, 1, vec![3]).validate(), Validity::WellFormed);
    }

    #[test]
    fn path_counts_examples() {
        assert_eq!(mixed().path_counts().unwrap(), vec![1, 1, 1]);
        let g = BlowupGraph {
            k: 3,
            l: 3,
            l_star: 3,
            codims: vec![4, 4, 4],
            edges: vec![(3, 2), (3, 1), (2, 1)],
        };
        assert_eq!(g.path_counts().unwrap(), vec![2, 1, 1]);
        assert_eq!(BlowupGraph::chain(1, 1, vec![4]).path_counts().unwrap(), vec![1]);
    }

    #[test]
    fn aggregates_examples() {
        let g = mixed();
        assert_eq!(g.deltas(), vec![3, 2, 1]);
        let a = g.aggregates().unwrap();
        assert_eq!(
            (a.sigma_star, a.sigma_upper_star, a.sigma_l, a.sigma_l_star, a.sigma_u),
            (1, 2, 2, 1, 1)
        );
        let a = BlowupGraph::chain(1, 1, vec![4]).aggregates().unwrap();
        assert_eq!((a.sigma_star, a.sigma_l, a.sigma_upper_star, a.sigma_l_star, a.sigma_u), (1, 1, 0, 0, 0));
        let a = BlowupGraph::chain(2, 2, vec![4, 4]).aggregates().unwrap();
        assert_eq!((a.sigma_star, a.sigma_l, a.sigma_upper_star, a.sigma_l_star, a.sigma_u), (2, 2, 0, 0, 0));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"k":3,"l":2,"l_star":1,"codims":[5,3,2],"edges":[[2,1],[3,2]]}"#;
        let g = BlowupGraph::from_json(text).unwrap();
        assert_eq!(g, mixed());
        assert_eq!(BlowupGraph::from_json(&g.to_json()).unwrap(), g);
    }
}
