//! Gröbner bases over a prime field and the dimension of the cone they cut out.

use fano_locus::polyalg::{groebner_basis, ideal_dimension, Field, GroebnerBudget, GroebnerOutcome, Polynomial, Prime};

fn main() {
    let vars = ["x", "y", "z"];
    let p = Prime::new(101).unwrap();
    let budget = GroebnerBudget::default();
    let ideals: [(&str, &[&str]); 3] = [
        ("twisted cubic", &["x*z-y^2", "y*z-x^2", "x*y-z^2"]),
        ("plane", &["x"]),
        ("complete intersection", &["x^2+y^2+z^2", "x^3+y^3+z^3"]),
    ];
    for (name, gens) in ideals {
        let gens: Vec<Polynomial> = gens.iter().map(|s| Polynomial::parse(Field::Rationals, &vars, s).unwrap()).collect();
        let dim = ideal_dimension(&gens, p, &budget).unwrap();
        println!("{name}: affine cone dimension {dim}");
        if let GroebnerOutcome::Complete(gb) = groebner_basis(&gens, p, &budget).unwrap() {
            for g in gb.polynomials() {
                println!("  {g}");
            }
        }
    }
}
