//! A small reader for sums of monomials such as `3/2*x^2*y - y + 1`.
//!
//! No parentheses; every term is an optional coefficient followed by
//! `var` or `var^k` factors joined with `*`.

use num_rational::BigRational;
use num_traits::One;

use super::field::{parse_rational, Field};
use super::{PolyError, Polynomial};

impl Polynomial {
    pub fn parse<S: AsRef<str>>(field: Field, vars: &[S], text: &str) -> Result<Polynomial, PolyError> {
        let names: Vec<&str> = vars.iter().map(|s| s.as_ref()).collect();
        let mut out = Polynomial::zero(field, vars);
        let src: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(PolyError::Parse("empty polynomial".into()));
        }
        for (negative, body) in split_terms(&src)? {
            let (coeff, exps) = parse_term(body, &names)?;
            let coeff = if negative { -coeff } else { coeff };
            out.add_term(exps, field.from_rational(&coeff)?);
        }
        Ok(out)
    }
}

fn split_terms(src: &str) -> Result<Vec<(bool, &str)>, PolyError> {
    let mut terms = Vec::new();
    let bytes = src.as_bytes();
    let mut start = 0;
    let mut negative = false;
    if bytes[0] == b'-' || bytes[0] == b'+' {
        negative = bytes[0] == b'-';
        start = 1;
    }
    let mut i = start;
    while i < bytes.len() {
        let c = bytes[i];
        // a sign right after '^' or '/' belongs to a number, not a new term
        if (c == b'+' || c == b'-') && i > start && !matches!(bytes[i - 1], b'^' | b'/' | b'*') {
            terms.push((negative, &src[start..i]));
            negative = c == b'-';
            start = i + 1;
        }
        i += 1;
    }
    terms.push((negative, &src[start..]));
    if terms.iter().any(|(_, t)| t.is_empty()) {
        return Err(PolyError::Parse(format!("empty term in {src:?}")));
    }
    Ok(terms)
}

fn parse_term(body: &str, names: &[&str]) -> Result<(BigRational, Vec<u32>), PolyError> {
    let mut coeff = BigRational::one();
    let mut exps = vec![0u32; names.len()];
    for factor in body.split('*') {
        if factor.is_empty() {
            return Err(PolyError::Parse(format!("empty factor in {body:?}")));
        }
        if factor.starts_with(|c: char| c.is_ascii_digit()) {
            coeff *= parse_rational(factor)?;
            continue;
        }
        let (name, power) = match factor.split_once('^') {
            Some((n, k)) => (
                n,
                k.parse::<u32>()
                    .map_err(|_| PolyError::Parse(format!("bad exponent in {factor:?}")))?,
            ),
            None => (factor, 1),
        };
        let idx = names
            .iter()
            .position(|v| *v == name)
            .ok_or_else(|| PolyError::Parse(format!("unknown variable {name:?}")))?;
        exps[idx] += power;
    }
    Ok((coeff, exps))
}
