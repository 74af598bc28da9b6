use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::Signed;

use super::field::{Coefficient, Field, Prime};
use super::PolyError;

/// Exponent vector, one entry per variable.
pub type Exponents = Vec<u32>;

/// Exact sparse multivariate polynomial.
///
/// The term map never stores a zero coefficient and every exponent vector has
/// one entry per variable, so structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    vars: Arc<[String]>,
    terms: BTreeMap<Exponents, Coefficient>,
}

impl Polynomial {
    pub fn zero<S: AsRef<str>>(field: Field, vars: &[S]) -> Self {
        Self::zero_in(field, vars.iter().map(|s| s.as_ref().to_string()).collect())
    }

    pub(crate) fn zero_in(field: Field, vars: Arc<[String]>) -> Self {
        Polynomial {
            field,
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<S: AsRef<str>>(field: Field, vars: &[S], c: Coefficient) -> Result<Self, PolyError> {
        let mut p = Self::zero(field, vars);
        let n = p.nvars();
        p.insert_checked(vec![0; n], c)?;
        Ok(p)
    }

    /// The variable `x_i` (zero-based index).
    pub fn var<S: AsRef<str>>(field: Field, vars: &[S], i: usize) -> Self {
        let mut p = Self::zero(field, vars);
        let mut e = vec![0; p.nvars()];
        e[i] = 1;
        p.terms.insert(e, field.one());
        p
    }

    pub fn from_terms<S, I>(field: Field, vars: &[S], terms: I) -> Result<Self, PolyError>
    where
        S: AsRef<str>,
        I: IntoIterator<Item = (Exponents, Coefficient)>,
    {
        let mut p = Self::zero(field, vars);
        for (e, c) in terms {
            p.insert_checked(e, c)?;
        }
        Ok(p)
    }

    /// Builds a polynomial from integer coefficients; handy for fixtures.
    pub fn from_int_terms<S: AsRef<str>>(field: Field, vars: &[S], terms: &[(i64, &[u32])]) -> Result<Self, PolyError> {
        Self::from_terms(
            field,
            vars,
            terms.iter().map(|(c, e)| (e.to_vec(), field.from_i64(*c))),
        )
    }

    fn insert_checked(&mut self, e: Exponents, c: Coefficient) -> Result<(), PolyError> {
        if e.len() != self.nvars() {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars(),
                found: e.len(),
            });
        }
        if c.field() != self.field {
            return Err(PolyError::FieldMismatch {
                left: self.field,
                right: c.field(),
            });
        }
        self.add_term(e, c);
        Ok(())
    }

    /// Adds `c * x^e` in place, keeping the canonical form.
    pub(crate) fn add_term(&mut self, e: Exponents, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub(crate) fn shared_vars(&self) -> Arc<[String]> {
        self.vars.clone()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Coefficient)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[u32]) -> Coefficient {
        self.terms.get(e).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> Coefficient {
        self.coefficient(&vec![0; self.nvars()])
    }

    /// Highest total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| degree(e)).max()
    }

    /// Lowest total degree of a term (the order of vanishing at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| degree(e)).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| degree(e));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub(crate) fn same_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.field != other.field {
            return Err(PolyError::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        if !Arc::ptr_eq(&self.vars, &other.vars) && self.vars != other.vars {
            return Err(PolyError::VariableMismatch {
                left: self.vars.to_vec(),
                right: other.vars.to_vec(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.same_ring(other)?;
        Ok(self.mul_bounded(other, None))
    }

    /// Product keeping only terms of total degree `<= bound`.
    pub fn mul_truncated(&self, other: &Polynomial, bound: u32) -> Result<Polynomial, PolyError> {
        self.same_ring(other)?;
        Ok(self.mul_bounded(other, Some(bound)))
    }

    fn mul_bounded(&self, other: &Polynomial, bound: Option<u32>) -> Polynomial {
        let mut out = Polynomial::zero_in(self.field, self.vars.clone());
        for (e1, c1) in &self.terms {
            let d1 = degree(e1);
            for (e2, c2) in &other.terms {
                if let Some(b) = bound {
                    if d1 + degree(e2) > b {
                        continue;
                    }
                }
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Coefficient) -> Polynomial {
        let mut out = Polynomial::zero_in(self.field, self.vars.clone());
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            out.terms.insert(e.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        self.pow_bounded(k, None)
    }

    pub fn pow_truncated(&self, k: u32, bound: u32) -> Polynomial {
        self.pow_bounded(k, Some(bound))
    }

    fn pow_bounded(&self, mut k: u32, bound: Option<u32>) -> Polynomial {
        let mut acc = self.one_like();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_bounded(&base, bound);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_bounded(&base, bound);
            }
        }
        if let Some(b) = bound {
            acc = acc.truncate(b);
        }
        acc
    }

    pub fn one_like(&self) -> Polynomial {
        let mut out = Polynomial::zero_in(self.field, self.vars.clone());
        out.terms.insert(vec![0; self.nvars()], self.field.one());
        out
    }

    pub fn zero_like(&self) -> Polynomial {
        Polynomial::zero_in(self.field, self.vars.clone())
    }

    /// The variable `x_i` in this polynomial's ring.
    pub fn var_like(&self, i: usize) -> Polynomial {
        let mut out = self.zero_like();
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        out.terms.insert(e, self.field.one());
        out
    }

    pub fn constant_like(&self, c: Coefficient) -> Polynomial {
        let mut out = self.zero_like();
        out.add_term(vec![0; self.nvars()], c);
        out
    }

    /// Partial derivative with respect to the `i`-th variable.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * &self.field.from_i64(e[i] as i64));
        }
        out
    }

    /// Drops every term of total degree `> bound`.
    pub fn truncate(&self, bound: u32) -> Polynomial {
        let mut out = self.zero_like();
        out.terms = self
            .terms
            .iter()
            .filter(|(e, _)| degree(e) <= bound)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        out
    }

    /// The homogeneous component of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        let mut out = self.zero_like();
        out.terms = self
            .terms
            .iter()
            .filter(|(e, _)| degree(e) == d)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        out
    }

    /// Components indexed by degree; empty for the zero polynomial.
    pub fn homogeneous_components(&self) -> Vec<Polynomial> {
        let top = match self.total_degree() {
            None => return Vec::new(),
            Some(d) => d,
        };
        let mut parts = vec![self.zero_like(); top as usize + 1];
        for (e, c) in &self.terms {
            parts[degree(e) as usize].terms.insert(e.clone(), c.clone());
        }
        parts
    }

    /// Replaces `x_i` by `images[i]`; the result lives in the images' ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial, PolyError> {
        self.substitute_bounded(images, None)
    }

    /// Like [`Polynomial::substitute`] but discards terms of degree `> bound`
    /// at every intermediate step.
    pub fn substitute_truncated(&self, images: &[Polynomial], bound: u32) -> Result<Polynomial, PolyError> {
        self.substitute_bounded(images, Some(bound))
    }

    fn substitute_bounded(&self, images: &[Polynomial], bound: Option<u32>) -> Result<Polynomial, PolyError> {
        if images.len() != self.nvars() {
            return Err(PolyError::SubstitutionArity {
                expected: self.nvars(),
                found: images.len(),
            });
        }
        let Some(first) = images.first() else {
            // no variables: a constant
            return Ok(self.clone());
        };
        for img in images {
            first.same_ring(img)?;
        }
        if first.field != self.field {
            return Err(PolyError::FieldMismatch {
                left: self.field,
                right: first.field,
            });
        }
        let mut powers: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut out = first.zero_like();
        for (e, c) in &self.terms {
            let mut acc = first.constant_like(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let pw = powers
                    .entry((i, k))
                    .or_insert_with(|| images[i].pow_bounded(k, bound));
                acc = acc.mul_bounded(pw, bound);
                if acc.is_zero() {
                    break;
                }
            }
            for (e2, c2) in acc.terms {
                out.add_term(e2, c2);
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[Coefficient]) -> Result<Coefficient, PolyError> {
        if point.len() != self.nvars() {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars(),
                found: point.len(),
            });
        }
        for a in point {
            if a.field() != self.field {
                return Err(PolyError::FieldMismatch {
                    left: self.field,
                    right: a.field(),
                });
            }
        }
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (a, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = &t * &a.pow(k);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Returns `g` with `g(z) = f(z + a)`.
    pub fn taylor_shift(&self, a: &[Coefficient]) -> Result<Polynomial, PolyError> {
        if a.len() != self.nvars() {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars(),
                found: a.len(),
            });
        }
        let images: Vec<Polynomial> = a
            .iter()
            .enumerate()
            .map(|(i, ai)| {
                if ai.field() != self.field {
                    return Err(PolyError::FieldMismatch {
                        left: self.field,
                        right: ai.field(),
                    });
                }
                let mut x = self.var_like(i);
                x.add_term(vec![0; self.nvars()], ai.clone());
                Ok(x)
            })
            .collect::<Result<_, _>>()?;
        self.substitute(&images)
    }

    /// Image of the polynomial over `F_p`.
    pub fn reduce_mod(&self, p: Prime) -> Result<Polynomial, PolyError> {
        let mut out = Polynomial::zero_in(Field::Prime(p), self.vars.clone());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.reduce_mod(p)?);
        }
        Ok(out)
    }

    /// Same terms over renamed variables.
    pub fn with_vars<S: AsRef<str>>(&self, names: &[S]) -> Result<Polynomial, PolyError> {
        if names.len() != self.nvars() {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars(),
                found: names.len(),
            });
        }
        let mut out = Polynomial::zero(self.field, names);
        out.terms = self.terms.clone();
        Ok(out)
    }

    /// Builds a polynomial in `vars` by mapping each exponent vector;
    /// `None` from the map is a bookkeeping error reported to the caller.
    pub(crate) fn map_monomials<F>(&self, vars: Arc<[String]>, mut map: F) -> Option<Polynomial>
    where
        F: FnMut(&[u32]) -> Option<Exponents>,
    {
        let mut out = Polynomial::zero_in(self.field, vars);
        for (e, c) in &self.terms {
            let e2 = map(e)?;
            debug_assert_eq!(e2.len(), out.nvars());
            out.add_term(e2, c.clone());
        }
        Some(out)
    }
}

#[inline]
pub(crate) fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl<'a> $tr<&'a Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            /// Panics when the operands live in different rings; use the
            /// `try_*` method for a checked variant.
            fn $m(self, rhs: &'a Polynomial) -> Polynomial {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let mut out = self.zero_like();
        out.terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // graded display order: highest degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| degree(b).cmp(&degree(a)).then_with(|| b.cmp(a)));
        for (idx, (e, c)) in terms.into_iter().enumerate() {
            let (neg, mag) = match c {
                Coefficient::Rational(q) if q.is_negative() => (true, Coefficient::Rational(-q)),
                _ => (false, c.clone()),
            };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let is_const = e.iter().all(|&k| k == 0);
            let coeff_str = match &mag {
                Coefficient::Residue { value, .. } => value.to_string(),
                other => other.to_string(),
            };
            let mut wrote = false;
            if is_const || !mag.is_one() {
                write!(f, "{coeff_str}")?;
                wrote = true;
            }
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.vars[i])?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
                wrote = true;
            }
        }
        if let Field::Prime(p) = self.field {
            write!(f, " (mod {p})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qq(vars: &[&str], s: &str) -> Polynomial {
        Polynomial::parse(Field::Rationals, vars, s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let v = ["x", "y"];
        let p = &qq(&v, "x + y") * &qq(&v, "x - y");
        assert_eq!(p, qq(&v, "x^2 - y^2"));
    }

    #[test]
    fn derivative_of_x2y() {
        let v = ["x", "y"];
        assert_eq!(qq(&v, "x^2*y").derivative(0), qq(&v, "2*x*y"));
    }

    #[test]
    fn substitute_scaled_variable() {
        let f = qq(&["x"], "x^2 + x");
        let tz = qq(&["t", "z"], "t*z");
        let g = f.substitute(&[tz]).unwrap();
        assert_eq!(g, qq(&["t", "z"], "t^2*z^2 + t*z"));
    }

    #[test]
    fn substitution_arity_checked() {
        let f = qq(&["x", "y"], "x*y");
        let err = f.substitute(&[qq(&["t"], "t")]).unwrap_err();
        assert_eq!(err, PolyError::SubstitutionArity { expected: 2, found: 1 });
    }

    #[test]
    fn field_mismatch_is_an_error() {
        let f = qq(&["x"], "x");
        let g = f.reduce_mod(Prime::new(7).unwrap()).unwrap();
        assert!(matches!(f.try_add(&g), Err(PolyError::FieldMismatch { .. })));
    }

    #[test]
    fn homogeneous_components_examples() {
        let v = ["x", "y"];
        let parts = qq(&v, "1 + x + x*y").homogeneous_components();
        assert_eq!(parts, vec![qq(&v, "1"), qq(&v, "x"), qq(&v, "x*y")]);
        let parts = qq(&v, "x^2 + y^2").homogeneous_components();
        assert_eq!(parts, vec![qq(&v, "0"), qq(&v, "0"), qq(&v, "x^2 + y^2")]);
        assert!(qq(&v, "0").homogeneous_components().is_empty());
    }

    #[test]
    fn taylor_shift_examples() {
        let q = |n| Coefficient::rational(n, 1);
        assert_eq!(
            qq(&["x"], "x^2").taylor_shift(&[q(1)]).unwrap(),
            qq(&["x"], "x^2 + 2*x + 1")
        );
        let v = ["x", "y"];
        assert_eq!(qq(&v, "x + y").taylor_shift(&[q(0), q(0)]).unwrap(), qq(&v, "x + y"));
        assert_eq!(
            qq(&v, "x*y").taylor_shift(&[q(1), q(-1)]).unwrap(),
            qq(&v, "x*y - x + y - 1")
        );
        assert!(qq(&v, "x").taylor_shift(&[q(1)]).is_err());
    }

    #[test]
    fn truncation_drops_high_degree() {
        let v = ["x", "y"];
        assert_eq!(qq(&v, "1 + x*y + x^3 + y^4").truncate(2), qq(&v, "1 + x*y"));
        assert_eq!(
            qq(&v, "1 + x").pow_truncated(5, 2),
            qq(&v, "1 + 5*x + 10*x^2")
        );
    }

    #[test]
    fn display_is_readable() {
        let p = qq(&["x", "y"], "3/2*x^2*y - y + 1");
        assert_eq!(p.to_string(), "3/2*x^2*y - y + 1");
    }
}
