//! Ground fields: the rationals and prime fields `F_p` with `p < 2^31`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::PolyError;

/// A prime below `2^31`, verified at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self, PolyError> {
        if !(2..1 << 31).contains(&p) || !is_prime(p) {
            return Err(PolyError::NotPrime(p));
        }
        Ok(Prime(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub(crate) fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub(crate) fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.0 as u64) as u32
    }

    #[inline]
    pub(crate) fn sub(self, a: u32, b: u32) -> u32 {
        self.add(a, self.0 - b % self.0)
    }

    #[inline]
    pub(crate) fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    /// Inverse of a nonzero residue (Fermat).
    pub(crate) fn inv(self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.0));
        self.pow(a, (self.0 - 2) as u64)
    }

    pub(crate) fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32 % self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn reduce_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.0 as i64) as u32
    }

    pub(crate) fn reduce_bigint(self, v: &BigInt) -> u32 {
        let m = BigInt::from(self.0);
        v.mod_floor(&m).to_u32().expect("residue fits in u32")
    }

    /// Image of a rational number; fails when `p` divides the denominator.
    pub(crate) fn reduce_rational(self, q: &BigRational) -> Result<u32, PolyError> {
        let den = self.reduce_bigint(q.denom());
        if den == 0 {
            return Err(PolyError::DenominatorDivisible { prime: self.0 });
        }
        Ok(self.mul(self.reduce_bigint(q.numer()), self.inv(den)))
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 4 {
        return p >= 2;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The ground field a polynomial lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(Prime),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self, PolyError> {
        Prime::new(p).map(Field::Prime)
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p.get(),
        }
    }

    pub fn zero(self) -> Coefficient {
        self.from_i64(0)
    }

    pub fn one(self) -> Coefficient {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Coefficient {
        match self {
            Field::Rationals => Coefficient::Rational(BigRational::from_integer(v.into())),
            Field::Prime(p) => Coefficient::Residue {
                value: p.reduce_i64(v),
                modulus: p,
            },
        }
    }

    pub fn from_rational(self, q: &BigRational) -> Result<Coefficient, PolyError> {
        match self {
            Field::Rationals => Ok(Coefficient::Rational(q.clone())),
            Field::Prime(p) => Ok(Coefficient::Residue {
                value: p.reduce_rational(q)?,
                modulus: p,
            }),
        }
    }

    /// Parses a coefficient written as `"3/2"`, `"-7"` or `"7 mod 31"` into this field.
    pub fn parse_coefficient(self, s: &str) -> Result<Coefficient, PolyError> {
        let c: Coefficient = s.parse()?;
        match (self, &c) {
            (Field::Rationals, Coefficient::Rational(_)) => Ok(c),
            (Field::Prime(p), Coefficient::Residue { modulus, .. }) if *modulus == p => Ok(c),
            (Field::Prime(p), Coefficient::Rational(q)) => Field::Prime(p).from_rational(q),
            _ => Err(PolyError::FieldMismatch {
                left: self,
                right: c.field(),
            }),
        }
    }

    /// Parses the field tag used in polynomial files: `"QQ"` or `"GF(p)"`.
    pub fn parse_tag(s: &str) -> Result<Self, PolyError> {
        let t = s.trim();
        if t == "QQ" || t == "Q" {
            return Ok(Field::Rationals);
        }
        let inner = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| PolyError::Parse(format!("unknown field tag {t:?}")))?;
        let p: u64 = inner
            .trim()
            .parse()
            .map_err(|_| PolyError::Parse(format!("bad prime in field tag {t:?}")))?;
        Field::prime(p)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// An exact field element: a reduced rational, or a residue in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Rational(BigRational),
    Residue { value: u32, modulus: Prime },
}

impl Coefficient {
    pub fn field(&self) -> Field {
        match self {
            Coefficient::Rational(_) => Field::Rationals,
            Coefficient::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn rational(num: i64, den: i64) -> Self {
        Coefficient::Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Rational(q) => q.is_zero(),
            Coefficient::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coefficient::Rational(q) => q.is_one(),
            Coefficient::Residue { value, .. } => *value == 1,
        }
    }

    /// `Some(q)` for rational coefficients.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coefficient::Rational(q) => Some(q),
            Coefficient::Residue { .. } => None,
        }
    }

    pub fn inv(&self) -> Option<Coefficient> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Coefficient::Rational(q) => Coefficient::Rational(q.recip()),
            Coefficient::Residue { value, modulus } => Coefficient::Residue {
                value: modulus.inv(*value),
                modulus: *modulus,
            },
        })
    }

    pub fn checked_div(&self, other: &Coefficient) -> Option<Coefficient> {
        other.inv().map(|i| self * &i)
    }

    pub fn pow(&self, e: u32) -> Coefficient {
        match self {
            Coefficient::Rational(q) => Coefficient::Rational(num_traits::pow(q.clone(), e as usize)),
            Coefficient::Residue { value, modulus } => Coefficient::Residue {
                value: modulus.pow(*value, e as u64),
                modulus: *modulus,
            },
        }
    }

    /// Maps the coefficient into `F_p`.
    pub fn reduce_mod(&self, p: Prime) -> Result<Coefficient, PolyError> {
        match self {
            Coefficient::Rational(q) => Ok(Coefficient::Residue {
                value: p.reduce_rational(q)?,
                modulus: p,
            }),
            Coefficient::Residue { modulus, .. } if *modulus == p => Ok(self.clone()),
            Coefficient::Residue { modulus, .. } => Err(PolyError::FieldMismatch {
                left: Field::Prime(*modulus),
                right: Field::Prime(p),
            }),
        }
    }

    pub(crate) fn residue_value(&self, p: Prime) -> Result<u32, PolyError> {
        match self.reduce_mod(p)? {
            Coefficient::Residue { value, .. } => Ok(value),
            Coefficient::Rational(_) => unreachable!(),
        }
    }

    fn binary(&self, other: &Coefficient, op: &str, fq: impl Fn(&BigRational, &BigRational) -> BigRational, fp: impl Fn(Prime, u32, u32) -> u32) -> Coefficient {
        match (self, other) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => Coefficient::Rational(fq(a, b)),
            (
                Coefficient::Residue { value: a, modulus: p },
                Coefficient::Residue { value: b, modulus: q },
            ) if p == q => Coefficient::Residue {
                value: fp(*p, *a, *b),
                modulus: *p,
            },
            _ => panic!(
                "coefficient field mismatch in {op}: {} vs {}",
                self.field(),
                other.field()
            ),
        }
    }
}

impl<'a> Add<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &'a Coefficient) -> Coefficient {
        self.binary(rhs, "add", |a, b| a + b, |p, a, b| p.add(a, b))
    }
}

impl<'a> Sub<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &'a Coefficient) -> Coefficient {
        self.binary(rhs, "sub", |a, b| a - b, |p, a, b| p.sub(a, b))
    }
}

impl<'a> Mul<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &'a Coefficient) -> Coefficient {
        self.binary(rhs, "mul", |a, b| a * b, |p, a, b| p.mul(a, b))
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        match self {
            Coefficient::Rational(q) => Coefficient::Rational(-q),
            Coefficient::Residue { value, modulus } => Coefficient::Residue {
                value: modulus.neg(*value),
                modulus: *modulus,
            },
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Rational(q) => write!(f, "{q}"),
            Coefficient::Residue { value, modulus } => write!(f, "{value} mod {modulus}"),
        }
    }
}

impl std::str::FromStr for Coefficient {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, PolyError> {
        let s = s.trim();
        if let Some((v, m)) = s.split_once("mod") {
            let p: u64 = m
                .trim()
                .parse()
                .map_err(|_| PolyError::Parse(format!("bad modulus in {s:?}")))?;
            let p = Prime::new(p)?;
            let v: BigInt = v
                .trim()
                .parse()
                .map_err(|_| PolyError::Parse(format!("bad residue in {s:?}")))?;
            return Ok(Coefficient::Residue {
                value: p.reduce_bigint(&v),
                modulus: p,
            });
        }
        parse_rational(s).map(Coefficient::Rational)
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational, PolyError> {
    let bad = || PolyError::Parse(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    let q = BigRational::new(n, d);
    debug_assert!(q.denom().is_positive());
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_checked() {
        assert!(Prime::new(31).is_ok());
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(2147483647).is_ok());
        assert!(Prime::new(1).is_err());
        assert!(Prime::new(33).is_err());
        assert!(Prime::new(1 << 31).is_err());
    }

    #[test]
    fn residues_stay_reduced() {
        let f = Field::prime(31).unwrap();
        let a = f.from_i64(-1);
        assert_eq!(a.to_string(), "30 mod 31");
        let b = &a * &a;
        assert!(b.is_one());
        let half = f.from_rational(&BigRational::new(1.into(), 2.into())).unwrap();
        assert!((&half * &f.from_i64(2)).is_one());
    }

    #[test]
    fn rationals_in_lowest_terms() {
        let c: Coefficient = "6/-4".parse().unwrap();
        assert_eq!(c.to_string(), "-3/2");
        let d: Coefficient = "7 mod 31".parse().unwrap();
        assert_eq!(d.field(), Field::prime(31).unwrap());
    }

    #[test]
    fn denominator_divisible_by_p() {
        let p = Prime::new(3).unwrap();
        let q = BigRational::new(1.into(), 6.into());
        assert_eq!(
            Coefficient::Rational(q).reduce_mod(p),
            Err(PolyError::DenominatorDivisible { prime: 3 })
        );
    }

    #[test]
    fn field_tags_roundtrip() {
        for f in [Field::Rationals, Field::prime(101).unwrap()] {
            assert_eq!(Field::parse_tag(&f.to_string()).unwrap(), f);
        }
    }
}
