//! JSON file format for polynomials.
//!
//! ```json
//! {"field":"QQ","vars":["x","y"],"terms":[{"coeff":"3/2","exp":[1,0]}]}
//! ```
//!
//! Terms are written in ascending lexicographic order of exponent vectors and
//! coefficients in lowest terms, so serializing a parsed canonical file
//! reproduces it byte for byte. The `field` key is optional on input; without
//! it the field is taken from the coefficients (`"7 mod 31"` means `GF(31)`),
//! defaulting to the rationals.

use serde::{Deserialize, Serialize};

use super::field::{Coefficient, Field};
use super::{PolyError, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub vars: Vec<String>,
    pub terms: Vec<TermRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coeff: String,
    pub exp: Vec<u32>,
}

impl From<Polynomial> for PolynomialRecord {
    fn from(p: Polynomial) -> Self {
        PolynomialRecord::from(&p)
    }
}

impl From<&Polynomial> for PolynomialRecord {
    fn from(p: &Polynomial) -> Self {
        PolynomialRecord {
            field: Some(p.field().to_string()),
            vars: p.vars().to_vec(),
            terms: p
                .terms()
                .map(|(e, c)| TermRecord {
                    coeff: c.to_string(),
                    exp: e.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<PolynomialRecord> for Polynomial {
    type Error = PolyError;

    fn try_from(r: PolynomialRecord) -> Result<Self, PolyError> {
        let parsed: Vec<Coefficient> = r
            .terms
            .iter()
            .map(|t| t.coeff.parse())
            .collect::<Result<_, _>>()?;
        let field = match &r.field {
            Some(tag) => Field::parse_tag(tag)?,
            None => parsed
                .iter()
                .map(|c| c.field())
                .find(|f| *f != Field::Rationals)
                .unwrap_or(Field::Rationals),
        };
        let mut p = Polynomial::zero(field, &r.vars);
        for (t, c) in r.terms.into_iter().zip(parsed) {
            let c = match (field, &c) {
                (Field::Prime(p), Coefficient::Rational(_)) => c.reduce_mod(p)?,
                _ => c,
            };
            if c.field() != field {
                return Err(PolyError::FieldMismatch {
                    left: field,
                    right: c.field(),
                });
            }
            if t.exp.len() != p.nvars() {
                return Err(PolyError::DimensionMismatch {
                    expected: p.nvars(),
                    found: t.exp.len(),
                });
            }
            p.add_term(t.exp, c);
        }
        Ok(p)
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolynomialRecord::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = PolynomialRecord::deserialize(d)?;
        Polynomial::try_from(r).map_err(serde::de::Error::custom)
    }
}

impl Polynomial {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomial serializes")
    }

    pub fn from_json(s: &str) -> Result<Polynomial, PolyError> {
        let r: PolynomialRecord =
            serde_json::from_str(s).map_err(|e| PolyError::Parse(e.to_string()))?;
        Polynomial::try_from(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_file_roundtrips_bytewise() {
        let text = r#"{"field":"QQ","vars":["x","y"],"terms":[{"coeff":"-1","exp":[0,1]},{"coeff":"3/2","exp":[1,0]}]}"#;
        let p = Polynomial::from_json(text).unwrap();
        assert_eq!(p.to_json(), text);
    }

    #[test]
    fn field_inferred_from_residues() {
        let text = r#"{"vars":["x"],"terms":[{"coeff":"7 mod 31","exp":[1]},{"coeff":"2","exp":[0]}]}"#;
        let p = Polynomial::from_json(text).unwrap();
        assert_eq!(p.field(), Field::prime(31).unwrap());
        assert_eq!(
            p.to_json(),
            r#"{"field":"GF(31)","vars":["x"],"terms":[{"coeff":"2 mod 31","exp":[0]},{"coeff":"7 mod 31","exp":[1]}]}"#
        );
    }

    #[test]
    fn bad_exponent_length() {
        let text = r#"{"vars":["x","y"],"terms":[{"coeff":"1","exp":[1]}]}"#;
        assert!(matches!(
            Polynomial::from_json(text),
            Err(PolyError::DimensionMismatch { expected: 2, found: 1 })
        ));
    }
}
