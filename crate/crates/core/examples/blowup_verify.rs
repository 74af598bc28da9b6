//! Blows up quadratic germs along coordinate centers and checks that the new
//! singular points keep the rank.

use fano_locus::blowup::{blowup_chart, random_normal_form, unit_diagonal, verify_theorem4, GermNormalForm};
use fano_locus::polyalg::{GroebnerBudget, JetOrder};
use fano_locus::regcheck::default_primes;

fn main() {
    let g = GermNormalForm::with_default_vars(7, 5, 6, unit_diagonal(5), "z1^2*z6", JetOrder::new(4).unwrap()).unwrap();
    println!("germ: {}", g.equation());
    for chart in [1, 6] {
        let ct = blowup_chart(&g, chart).unwrap();
        println!("chart {chart}: {}", ct.strict);
    }
    let primes = default_primes();
    let budget = GroebnerBudget::default();
    print!("{}", verify_theorem4(&g, 5, 7, 20, &primes, &budget).unwrap().summary());

    for seed in 0..3 {
        let g = random_normal_form(seed, 7, 5, 6).unwrap();
        let report = verify_theorem4(&g, 5, seed, 10, &primes, &budget).unwrap();
        println!("random germ {seed}: {} -> {}", g.equation(), report.verdict);
    }
}
