//! Classifies points of two quintic fourfolds and runs a sampled census.

use fano_locus::polyalg::{Field, Polynomial, Prime};
use fano_locus::singclass::{classify_point, local_expansion, scan_census, CensusPoints};

fn main() {
    let vars: Vec<String> = (0..6).map(|i| format!("X{i}")).collect();
    let cone = Polynomial::parse(Field::Rationals, &vars, "X0^3*X1*X2+X0^3*X3*X4+X0^3*X5^2+X5^5").unwrap();
    let origin: Vec<_> = ["1", "0", "0", "0", "0", "0"].iter().map(|c| Field::Rationals.parse_coefficient(c).unwrap()).collect();
    let germ = local_expansion(&cone, &origin).unwrap();
    println!("F = {cone}");
    println!("at (1:0:0:0:0:0): {}", classify_point(&germ).unwrap());

    let fermat = Polynomial::parse(Field::Rationals, &vars, "X0^5+X1^5+X2^5+X3^5+X4^5+X5^5").unwrap();
    let points = CensusPoints::Sampled {
        prime: Prime::new(11).unwrap(),
        count: 20,
        seed: 5,
        max_attempts: 2000,
    };
    let report = scan_census(&fermat, &points, 5).unwrap();
    print!("{}", report.table());
}
