//! Checks both regularity conditions on local equations given piece by piece.

use fano_locus::polyalg::{Field, GroebnerBudget, Polynomial};
use fano_locus::regcheck::{check_condition1, check_condition2, default_primes};
use fano_locus::singclass::HypersurfaceGerm;

fn germ(pieces: &[String]) -> HypersurfaceGerm {
    let vars = ["x1", "x2", "x3", "x4", "x5"];
    HypersurfaceGerm::new(pieces.iter().map(|s| Polynomial::parse(Field::Rationals, &vars, s).unwrap()).collect()).unwrap()
}

fn power_sum(i: u32) -> String {
    (1..=5).map(|j| format!("x{j}^{i}")).collect::<Vec<_>>().join("+")
}

fn main() {
    let primes = default_primes();
    let budget = GroebnerBudget::default();

    let smooth = germ(&(1..=5).map(power_sum).collect::<Vec<_>>());
    print!("{}", check_condition1(&smooth, &primes, &budget).unwrap().summary());

    let pieces: Vec<String> = ["x1", "x1*x2", "x1*x3^2", "x1*x4^3", "x5^5"].iter().map(|s| s.to_string()).collect();
    print!("{}", check_condition1(&germ(&pieces), &primes, &budget).unwrap().summary());

    let mut singular = vec!["0".to_string()];
    singular.extend((2..=5).map(power_sum));
    print!("{}", check_condition2(&germ(&singular), &primes, &budget).unwrap().summary());
}
