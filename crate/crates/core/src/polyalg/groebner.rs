//! Buchberger's algorithm over `F_p` in graded reverse lexicographic order,
//! with the Gebauer–Möller pair criteria, and the Krull dimension of the
//! affine vanishing locus read off the leading-term ideal.
//!
//! The engine runs under a [`GroebnerBudget`]. Exceeding it yields
//! [`GroebnerOutcome::Undecided`] rather than a guess.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::field::{Coefficient, Field, Prime};
use super::{PolyError, Polynomial};

/// Hard limits for a Gröbner run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerBudget {
    /// S-pairs reduced before giving up.
    pub max_pairs: usize,
    /// Largest allowed total degree of a basis element.
    pub max_degree: u32,
    /// Largest allowed number of basis elements.
    pub max_basis: usize,
}

impl Default for GroebnerBudget {
    fn default() -> Self {
        GroebnerBudget {
            max_pairs: 50_000,
            max_degree: 64,
            max_basis: 20_000,
        }
    }
}

/// Why a Gröbner run stopped early.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BudgetExceeded {
    Pairs(usize),
    Degree(u32),
    Basis(usize),
}

impl fmt::Display for BudgetExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BudgetExceeded::Pairs(n) => write!(f, "pair budget of {n} exhausted"),
            BudgetExceeded::Degree(d) => write!(f, "basis degree exceeded {d}"),
            BudgetExceeded::Basis(n) => write!(f, "basis size exceeded {n}"),
        }
    }
}

/// Krull dimension of an affine vanishing locus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IdealDimension {
    /// The ideal is the unit ideal.
    Empty,
    Dimension(usize),
    Undecided(BudgetExceeded),
}

impl IdealDimension {
    pub fn value(&self) -> Option<usize> {
        match self {
            IdealDimension::Dimension(d) => Some(*d),
            _ => None,
        }
    }
}

impl fmt::Display for IdealDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealDimension::Empty => write!(f, "empty"),
            IdealDimension::Dimension(d) => write!(f, "{d}"),
            IdealDimension::Undecided(why) => write!(f, "undecided ({why})"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum GroebnerOutcome {
    Complete(GroebnerBasis),
    Undecided(BudgetExceeded),
}

/// A reduced-leading-term Gröbner basis over `F_p` (grevlex).
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    prime: Prime,
    vars: Arc<[String]>,
    elements: Vec<MPoly>,
}

impl GroebnerBasis {
    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Basis elements as monic polynomials over `F_p`.
    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.elements.iter().map(|g| self.to_poly(g)).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Vec<u32>> {
        self.elements
            .iter()
            .map(|g| g[0].0.exps.iter().map(|&k| k as u32).collect())
            .collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.elements.iter().any(|g| g[0].0.deg == 0)
    }

    /// Normal form of `f` modulo the basis.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial, PolyError> {
        let m = to_mpoly(f, self.prime, self.vars.len())?;
        let all: Vec<usize> = (0..self.elements.len()).collect();
        let r = normal_form(m, &self.elements, &all, self.prime);
        Ok(self.to_poly(&r))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, PolyError> {
        Ok(self.reduce(f)?.is_zero())
    }

    /// Dimension of the vanishing locus: the largest set of variables
    /// containing the support of no leading monomial.
    pub fn dimension(&self) -> IdealDimension {
        if self.is_unit_ideal() {
            return IdealDimension::Empty;
        }
        let supports: Vec<u64> = self
            .elements
            .iter()
            .map(|g| {
                g[0].0
                    .exps
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .fold(0u64, |acc, (i, _)| acc | (1 << i))
            })
            .collect();
        IdealDimension::Dimension(max_independent_set(self.vars.len(), &supports))
    }

    fn to_poly(&self, g: &MPoly) -> Polynomial {
        let p = self.prime;
        let mut out = Polynomial::zero_in(Field::Prime(p), self.vars.clone());
        for (m, c) in g {
            out.add_term(
                m.exps.iter().map(|&k| k as u32).collect(),
                Coefficient::Residue {
                    value: *c,
                    modulus: p,
                },
            );
        }
        out
    }
}

/// Largest subset `S` of `0..n` such that no support mask lies inside `S`.
fn max_independent_set(n: usize, supports: &[u64]) -> usize {
    fn search(next: usize, n: usize, chosen: u64, size: usize, supports: &[u64], best: &mut usize) {
        if size + (n - next) <= *best {
            return;
        }
        if next == n {
            *best = size;
            return;
        }
        let with = chosen | (1 << next);
        if supports.iter().all(|&s| s & !with != 0) {
            search(next + 1, n, with, size + 1, supports, best);
        }
        search(next + 1, n, chosen, size, supports, best);
    }
    let mut best = 0;
    search(0, n, 0, 0, supports, &mut best);
    best
}

/// Computes a Gröbner basis of the ideal generated by `generators` over `F_p`.
///
/// Rational generators are reduced modulo `p` first; a denominator divisible
/// by `p` is an error.
pub fn groebner_basis(generators: &[Polynomial], prime: Prime, budget: &GroebnerBudget) -> Result<GroebnerOutcome, PolyError> {
    let Some(first) = generators.first() else {
        return Err(PolyError::NoGenerators);
    };
    let vars = first.shared_vars();
    let n = vars.len();
    if n > 63 {
        return Err(PolyError::TooManyVariables(n));
    }
    let mut gens = Vec::with_capacity(generators.len());
    for g in generators {
        if g.vars() != &*vars {
            return Err(PolyError::VariableMismatch {
                left: vars.to_vec(),
                right: g.vars().to_vec(),
            });
        }
        gens.push(to_mpoly(g, prime, n)?);
    }
    let mut engine = Buchberger::new(prime, *budget);
    match engine.run(gens) {
        Ok(()) => Ok(GroebnerOutcome::Complete(GroebnerBasis {
            prime,
            vars,
            elements: engine.minimal_basis(),
        })),
        Err(why) => Ok(GroebnerOutcome::Undecided(why)),
    }
}

/// Krull dimension of `V(generators)` in affine space over the algebraic
/// closure of `F_p`.
pub fn ideal_dimension(generators: &[Polynomial], prime: Prime, budget: &GroebnerBudget) -> Result<IdealDimension, PolyError> {
    Ok(match groebner_basis(generators, prime, budget)? {
        GroebnerOutcome::Complete(gb) => gb.dimension(),
        GroebnerOutcome::Undecided(why) => IdealDimension::Undecided(why),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Mono {
    deg: u32,
    exps: Box<[u16]>,
}

impl Mono {
    fn one(n: usize) -> Mono {
        Mono {
            deg: 0,
            exps: vec![0; n].into_boxed_slice(),
        }
    }

    fn divides(&self, other: &Mono) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    fn lcm(&self, other: &Mono) -> Mono {
        let exps: Box<[u16]> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.max(b)).collect();
        Mono {
            deg: exps.iter().map(|&k| k as u32).sum(),
            exps,
        }
    }

    fn coprime(&self, other: &Mono) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono {
            deg: self.deg + other.deg,
            exps: self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self / other`, assuming `other` divides `self`.
    fn div(&self, other: &Mono) -> Mono {
        Mono {
            deg: self.deg - other.deg,
            exps: self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Ord for Mono {
    /// Graded reverse lexicographic order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| {
            for (a, b) in self.exps.iter().zip(other.exps.iter()).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Terms sorted by decreasing monomial; nonzero coefficients in `[0, p)`.
type MPoly = Vec<(Mono, u32)>;

fn to_mpoly(f: &Polynomial, p: Prime, n: usize) -> Result<MPoly, PolyError> {
    let mut terms = Vec::with_capacity(f.num_terms());
    for (e, c) in f.terms() {
        let v = c.residue_value(p)?;
        if v == 0 {
            continue;
        }
        let exps: Box<[u16]> = e
            .iter()
            .map(|&k| u16::try_from(k).map_err(|_| PolyError::ExponentOverflow(k)))
            .collect::<Result<_, _>>()?;
        debug_assert_eq!(exps.len(), n);
        terms.push((
            Mono {
                deg: e.iter().sum(),
                exps,
            },
            v,
        ));
    }
    terms.sort_by(|a, b| b.0.cmp(&a.0));
    // rational inputs with distinct exponents never collide, but residues of
    // a rational polynomial are already one per monomial
    Ok(terms)
}

fn make_monic(f: &mut MPoly, p: Prime) {
    if let Some(&(_, lc)) = f.first() {
        if lc != 1 {
            let inv = p.inv(lc);
            for t in f.iter_mut() {
                t.1 = p.mul(t.1, inv);
            }
        }
    }
}

/// Full reduction of `f` by the basis elements listed in `reducers`.
fn normal_form(f: MPoly, basis: &[MPoly], reducers: &[usize], p: Prime) -> MPoly {
    let mut acc: BTreeMap<Mono, u32> = f.into_iter().collect();
    let mut out = Vec::new();
    while let Some((m, c)) = acc.pop_last() {
        let divisor = reducers.iter().map(|&i| &basis[i]).find(|g| g[0].0.divides(&m));
        match divisor {
            Some(g) => {
                // g is monic: subtract c * (m / lm g) * g, whose leading term cancels
                let q = m.div(&g[0].0);
                for (gm, gc) in &g[1..] {
                    let t = gm.mul(&q);
                    let sub = p.mul(c, *gc);
                    use std::collections::btree_map::Entry;
                    match acc.entry(t) {
                        Entry::Vacant(v) => {
                            v.insert(p.neg(sub));
                        }
                        Entry::Occupied(mut o) => {
                            let nv = p.sub(*o.get(), sub);
                            if nv == 0 {
                                o.remove();
                            } else {
                                *o.get_mut() = nv;
                            }
                        }
                    }
                }
            }
            None => out.push((m, c)),
        }
    }
    out
}

fn s_polynomial(f: &MPoly, g: &MPoly, p: Prime) -> MPoly {
    let l = f[0].0.lcm(&g[0].0);
    let qf = l.div(&f[0].0);
    let qg = l.div(&g[0].0);
    let mut acc: BTreeMap<Mono, u32> = BTreeMap::new();
    for (m, c) in &f[1..] {
        acc.insert(m.mul(&qf), *c);
    }
    for (m, c) in &g[1..] {
        let t = m.mul(&qg);
        let v = p.sub(acc.get(&t).copied().unwrap_or(0), *c);
        if v == 0 {
            acc.remove(&t);
        } else {
            acc.insert(t, v);
        }
    }
    let mut out: MPoly = acc.into_iter().collect();
    out.reverse();
    out
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
}

struct Buchberger {
    p: Prime,
    budget: GroebnerBudget,
    basis: Vec<MPoly>,
    /// indices of basis elements whose leading monomials are minimal so far
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl Buchberger {
    fn new(p: Prime, budget: GroebnerBudget) -> Self {
        Buchberger {
            p,
            budget,
            basis: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
        }
    }

    fn run(&mut self, gens: Vec<MPoly>) -> Result<(), BudgetExceeded> {
        for g in gens {
            let h = normal_form(g, &self.basis, &self.active, self.p);
            if self.insert(h)? {
                return Ok(());
            }
        }
        let mut processed = 0usize;
        while !self.pairs.is_empty() {
            // normal strategy: smallest lcm first
            let (idx, _) = self
                .pairs
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.lcm.cmp(&b.1.lcm))
                .expect("nonempty");
            let pair = self.pairs.swap_remove(idx);
            processed += 1;
            if processed > self.budget.max_pairs {
                return Err(BudgetExceeded::Pairs(self.budget.max_pairs));
            }
            let s = s_polynomial(&self.basis[pair.i], &self.basis[pair.j], self.p);
            let h = normal_form(s, &self.basis, &self.active, self.p);
            if self.insert(h)? {
                return Ok(());
            }
        }
        Ok(())
    }

    /// Adds a reduced element; returns `true` once the unit ideal is reached.
    fn insert(&mut self, mut h: MPoly) -> Result<bool, BudgetExceeded> {
        if h.is_empty() {
            return Ok(false);
        }
        make_monic(&mut h, self.p);
        let n = h[0].0.exps.len();
        if h[0].0.deg > self.budget.max_degree {
            return Err(BudgetExceeded::Degree(self.budget.max_degree));
        }
        if self.basis.len() >= self.budget.max_basis {
            return Err(BudgetExceeded::Basis(self.budget.max_basis));
        }
        if h[0].0.deg == 0 {
            self.basis = vec![vec![(Mono::one(n), 1)]];
            self.active = vec![0];
            self.pairs.clear();
            return Ok(true);
        }
        let t = self.basis.len();
        self.basis.push(h);
        self.update(t);
        Ok(false)
    }

    /// Gebauer–Möller installation of the new element `t`.
    fn update(&mut self, t: usize) {
        let lt = self.basis[t][0].0.clone();
        let mut candidates: Vec<Pair> = self
            .active
            .iter()
            .map(|&i| Pair {
                i,
                j: t,
                lcm: self.basis[i][0].0.lcm(&lt),
            })
            .collect();

        // chain criterion among the new pairs; equal lcms keep one representative
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(c) = candidates.pop() {
            let coprime = self.basis[c.i][0].0.coprime(&lt);
            let dominated = candidates.iter().chain(kept.iter()).any(|o| o.lcm.divides(&c.lcm));
            if coprime || !dominated {
                kept.push(c);
            }
        }
        // product criterion
        kept.retain(|c| !self.basis[c.i][0].0.coprime(&lt));

        // old pairs made redundant by the new leading term
        let basis = &self.basis;
        self.pairs.retain(|q| {
            if !lt.divides(&q.lcm) {
                return true;
            }
            let li = basis[q.i][0].0.lcm(&lt);
            let lj = basis[q.j][0].0.lcm(&lt);
            li == q.lcm || lj == q.lcm
        });
        self.pairs.extend(kept);

        self.active.retain(|&i| !lt.divides(&basis[i][0].0));
        self.active.push(t);
    }

    fn minimal_basis(&self) -> Vec<MPoly> {
        let mut out: Vec<MPoly> = self.active.iter().map(|&i| self.basis[i].clone()).collect();
        out.sort_by(|a, b| a[0].0.cmp(&b[0].0));
        out
    }
}
