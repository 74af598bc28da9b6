//! Finite jets: truncation order and formal inversion of near-identity maps.

use serde::{Deserialize, Serialize};

use super::{PolyError, Polynomial};

/// Truncation degree for germ computations; always at least 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct JetOrder(u32);

impl JetOrder {
    pub fn new(d: u32) -> Result<Self, PolyError> {
        if d < 2 {
            return Err(PolyError::InvalidJetOrder(d));
        }
        Ok(JetOrder(d))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl TryFrom<u32> for JetOrder {
    type Error = PolyError;
    fn try_from(d: u32) -> Result<Self, PolyError> {
        JetOrder::new(d)
    }
}

impl From<JetOrder> for u32 {
    fn from(j: JetOrder) -> u32 {
        j.0
    }
}

/// Inverts `z' = map(z)` with `map_i = z_i + (terms of degree >= 2)`.
///
/// Returns `sigma` with `map(sigma(z')) = z' + O(|z'|^(D+1))`. The fixed
/// point `sigma = z' - h(sigma)` (where `map = z + h`) gains one correct
/// degree per sweep, so `D - 1` sweeps suffice.
pub fn formal_inverse_compose(map: &[Polynomial], order: JetOrder) -> Result<Vec<Polynomial>, PolyError> {
    let n = map.len();
    let Some(first) = map.first() else {
        return Ok(Vec::new());
    };
    if first.nvars() != n {
        return Err(PolyError::NotSquare {
            components: n,
            variables: first.nvars(),
        });
    }
    let d = order.get();
    let mut higher = Vec::with_capacity(n);
    for (i, m) in map.iter().enumerate() {
        first.same_ring(m)?;
        let lin = m.homogeneous_part(1);
        if !m.constant_term().is_zero() || lin != m.var_like(i) {
            return Err(PolyError::LinearPartNotIdentity { component: i });
        }
        higher.push(m.try_sub(&m.var_like(i))?.truncate(d));
    }
    let ident: Vec<Polynomial> = (0..n).map(|i| first.var_like(i)).collect();
    let mut sigma = ident.clone();
    for _ in 1..d {
        let next: Vec<Polynomial> = higher
            .iter()
            .zip(&ident)
            .map(|(h, z)| z.try_sub(&h.substitute_truncated(&sigma, d)?))
            .collect::<Result<_, PolyError>>()?;
        if next == sigma {
            break;
        }
        sigma = next;
    }
    Ok(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::Field;

    fn qq(vars: &[&str], s: &str) -> Polynomial {
        Polynomial::parse(Field::Rationals, vars, s).unwrap()
    }

    #[test]
    fn inverts_single_variable_series() {
        let map = [qq(&["z"], "z + 3/2*z^2")];
        let inv = formal_inverse_compose(&map, JetOrder::new(3).unwrap()).unwrap();
        assert_eq!(inv, vec![qq(&["z"], "z - 3/2*z^2 + 9/2*z^3")]);
    }

    #[test]
    fn identity_is_its_own_inverse() {
        let v = ["a", "b"];
        let map = [qq(&v, "a"), qq(&v, "b")];
        for d in 2..6 {
            let inv = formal_inverse_compose(&map, JetOrder::new(d).unwrap()).unwrap();
            assert_eq!(inv, map.to_vec());
        }
    }

    #[test]
    fn triangular_inversion() {
        let v = ["z1", "z2"];
        let map = [qq(&v, "z1 + z2^2"), qq(&v, "z2")];
        let inv = formal_inverse_compose(&map, JetOrder::new(2).unwrap()).unwrap();
        assert_eq!(inv, vec![qq(&v, "z1 - z2^2"), qq(&v, "z2")]);
    }

    #[test]
    fn rejects_non_identity_linear_part() {
        let v = ["x", "y"];
        let map = [qq(&v, "2*x"), qq(&v, "y")];
        assert_eq!(
            formal_inverse_compose(&map, JetOrder::new(3).unwrap()),
            Err(PolyError::LinearPartNotIdentity { component: 0 })
        );
        let map = [qq(&v, "x + y"), qq(&v, "y")];
        assert!(formal_inverse_compose(&map, JetOrder::new(3).unwrap()).is_err());
    }

    #[test]
    fn jet_order_at_least_two() {
        assert!(JetOrder::new(1).is_err());
        assert!(JetOrder::new(2).is_ok());
    }
}
