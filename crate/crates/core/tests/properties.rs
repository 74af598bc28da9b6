mod common;

use common::{binom, linear_images, random_unimodular};
use fano_locus::blowup::{claim_membership, normalize_germ, random_normal_form};
use fano_locus::codim::{regularity_codim_bound, theorem_bounds};
use fano_locus::nfopt::{closed_form_bound, random_rank5_graph, verify_4n2, with_upper_vertex, FourN2Verdict};
use fano_locus::polyalg::{formal_inverse_compose, ideal_dimension, Field, GroebnerBudget, IdealDimension, JetOrder, Polynomial, Prime};
use fano_locus::regcheck::{check_condition1, default_primes, Verdict};
use fano_locus::singclass::{classify_point, singular_locus_dimension, HypersurfaceGerm, SingularityClass};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const V3: [&str; 3] = ["x", "y", "z"];

fn vars(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn poly(vars: &[String], terms: &[(i64, Vec<u32>)]) -> Polynomial {
    let refs: Vec<(i64, &[u32])> = terms.iter().map(|(c, e)| (*c, e.as_slice())).collect();
    Polynomial::from_int_terms(Field::Rationals, vars, &refs).unwrap()
}

fn terms(n: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Vec<(i64, Vec<u32>)>> {
    prop::collection::vec((-5i64..=5, prop::collection::vec(0..=max_exp, n)), 0..=max_terms)
}

/// Homogeneous terms of degree `d` in `n` variables.
fn form(n: usize, d: u32, max_terms: usize) -> impl Strategy<Value = Vec<(i64, Vec<u32>)>> {
    prop::collection::vec((-4i64..=4, prop::collection::vec(0..n, d as usize)), 1..=max_terms).prop_map(move |ts| {
        ts.into_iter()
            .map(|(c, idx)| {
                let mut e = vec![0u32; n];
                for i in idx {
                    e[i] += 1;
                }
                (c, e)
            })
            .collect()
    })
}

fn p3(t: &[(i64, Vec<u32>)]) -> Polynomial {
    let v: Vec<String> = V3.iter().map(|s| s.to_string()).collect();
    poly(&v, t)
}

#[allow(clippy::needless_range_loop)]
fn rank_mod_p(rows: &[Vec<i64>], p: i64) -> usize {
    let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p)).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = (1..p).find(|&x| x * m[rank][c] % p == 1).unwrap();
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let f = m[i][c] * inv % p;
                for j in 0..cols {
                    m[i][j] = (m[i][j] - f * m[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in terms(3, 3, 5), b in terms(3, 3, 5), c in terms(3, 3, 5)) {
        let (a, b, c) = (p3(&a), p3(&b), p3(&c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn homogeneous_components_sum_back(a in terms(3, 4, 8)) {
        let f = p3(&a);
        let sum = f.homogeneous_components().iter().fold(f.zero_like(), |acc, q| &acc + q);
        prop_assert_eq!(sum, f);
    }

    #[test]
    fn taylor_shift_round_trip(a in terms(3, 3, 6), shift in prop::collection::vec(-3i64..=3, 3)) {
        let f = p3(&a);
        let pos: Vec<_> = shift.iter().map(|&s| Field::Rationals.from_i64(s)).collect();
        let neg: Vec<_> = shift.iter().map(|&s| Field::Rationals.from_i64(-s)).collect();
        prop_assert_eq!(f.taylor_shift(&pos).unwrap().taylor_shift(&neg).unwrap(), f);
    }

    #[test]
    fn ideal_dimension_ignores_order_and_scaling(
        gens in prop::collection::vec(terms(3, 2, 3), 1..=3),
        rot in 0usize..3,
        scale in prop_oneof![-5i64..=-1, 1i64..=5],
    ) {
        let p = Prime::new(101).unwrap();
        let budget = GroebnerBudget::default();
        let gens: Vec<Polynomial> = gens.iter().map(|t| p3(t)).collect();
        prop_assume!(gens.iter().any(|g| !g.is_zero()));
        let base = ideal_dimension(&gens, p, &budget).unwrap();
        prop_assume!(!matches!(base, IdealDimension::Undecided(_)));
        let mut moved = gens.clone();
        moved.rotate_left(rot % gens.len());
        moved[0] = moved[0].scale(&Field::Rationals.from_i64(scale));
        prop_assert_eq!(ideal_dimension(&moved, p, &budget).unwrap(), base);
    }

    #[test]
    fn linear_forms_cut_expected_dimension(n in 1usize..=8, k in 1usize..=8, seed in any::<u64>()) {
        let k = k.min(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rows: Vec<Vec<i64>> = (0..k).map(|_| (0..n).map(|_| rand::Rng::gen_range(&mut rng, -9..=9)).collect()).collect();
        prop_assume!(rank_mod_p(&rows, 101) == k);
        let v = vars(n);
        let gens = linear_images(Field::Rationals, &v, &rows);
        let dim = ideal_dimension(&gens, Prime::new(101).unwrap(), &GroebnerBudget::default()).unwrap();
        prop_assert_eq!(dim, IdealDimension::Dimension(n - k));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn formal_inverse_composes_to_identity(
        d in 2u32..=5,
        noise in prop::collection::vec(form(3, 2, 3), 3),
        cubic in prop::collection::vec(form(3, 3, 2), 3),
    ) {
        let v: Vec<String> = V3.iter().map(|s| s.to_string()).collect();
        // triangular part: z_i + z_{i+1}^2, then dense noise
        let map: Vec<Polynomial> = (0..3)
            .map(|i| {
                let mut t = noise[i].clone();
                t.extend(cubic[i].iter().cloned());
                let mut e = vec![0u32; 3];
                e[i] = 1;
                t.push((1, e));
                if i + 1 < 3 {
                    let mut e = vec![0u32; 3];
                    e[i + 1] = 2;
                    t.push((1, e));
                }
                poly(&v, &t)
            })
            .collect();
        let inv = formal_inverse_compose(&map, JetOrder::new(d).unwrap()).unwrap();
        for (i, m) in map.iter().enumerate() {
            prop_assert_eq!(m.substitute(&inv).unwrap().truncate(d), Polynomial::var(Field::Rationals, &v, i));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classification_ignores_scaling(q2 in form(4, 2, 5), q3 in form(4, 3, 4), scale in prop_oneof![-7i64..=-1, 1i64..=7]) {
        let v = vars(4);
        let g = HypersurfaceGerm::new(vec![Polynomial::zero(Field::Rationals, &v), poly(&v, &q2), poly(&v, &q3)]).unwrap();
        let c = Field::Rationals.from_i64(scale);
        let scaled = HypersurfaceGerm::new(g.pieces().iter().map(|q| q.scale(&c)).collect()).unwrap();
        prop_assert_eq!(classify_point(&g).unwrap(), classify_point(&scaled).unwrap());
    }

    #[test]
    fn nonzero_linear_part_is_smooth(q1 in form(4, 1, 4), q2 in terms(4, 2, 4), q3 in form(4, 3, 4)) {
        let v = vars(4);
        let q1 = poly(&v, &q1);
        prop_assume!(!q1.is_zero());
        let q2 = poly(&v, &q2).homogeneous_part(2);
        let g = HypersurfaceGerm::new(vec![q1, q2, poly(&v, &q3)]).unwrap();
        prop_assert_eq!(classify_point(&g).unwrap(), SingularityClass::Smooth);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// A quadratic point of rank rho has a singular locus of codimension at
    /// least rho - 1 in the hypersurface.
    #[test]
    fn singular_locus_codimension(n in 3usize..=5, rho in 1usize..=5, seed in any::<u64>(), cubic in form(5, 3, 4)) {
        let rho = rho.min(n);
        let v = vars(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_unimodular(&mut rng, n);
        let mut sq: Vec<(i64, Vec<u32>)> = (0..rho)
            .map(|i| {
                let mut e = vec![0u32; n];
                e[i] = 2;
                (if i % 2 == 0 { 1 } else { -3 }, e)
            })
            .collect();
        sq.extend(cubic.into_iter().filter(|(_, e)| e[n..].iter().all(|&x| x == 0)).map(|(c, e)| (c, e[..n].to_vec())));
        let f = poly(&v, &sq).substitute(&linear_images(Field::Rationals, &v, &a)).unwrap();
        let g = HypersurfaceGerm::from_polynomial(&f).unwrap();
        prop_assert_eq!(classify_point(&g).unwrap(), SingularityClass::Quadratic { rank: rho });
        match singular_locus_dimension(&f, Prime::new(101).unwrap(), &GroebnerBudget::default()).unwrap() {
            IdealDimension::Empty => {}
            IdealDimension::Dimension(s) => prop_assert!((n - 1) - s + 1 >= rho, "dim Sing = {s}"),
            IdealDimension::Undecided(_) => {}
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn common_linear_factor_fails(l in form(5, 1, 5), h2 in form(5, 1, 4), h3 in form(5, 2, 4), h4 in form(5, 3, 4)) {
        let v = vars(5);
        let l = poly(&v, &l);
        prop_assume!(!l.is_zero());
        let pieces = vec![
            l.clone(),
            &l * &poly(&v, &h2),
            &l * &poly(&v, &h3),
            &l * &poly(&v, &h4),
        ];
        let g = HypersurfaceGerm::new(pieces).unwrap();
        let r = check_condition1(&g, &default_primes(), &GroebnerBudget::default()).unwrap();
        prop_assert_eq!(r.verdict, Verdict::Fail);
    }

    /// Normalizing a germ after a linear change of the center coordinates
    /// gives back rank `r` and a tail in the claimed ideal.
    #[test]
    fn normalization_keeps_claim(seed in 0u64..1000, shape in 0usize..4) {
        let (n, r, k) = [(6, 5, 5), (7, 5, 6), (7, 6, 6), (8, 6, 7)][shape];
        let g = random_normal_form(seed, n, r, k).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_unimodular(&mut rng, k);
        let full: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if i < k && j < k { a[i][j] } else { i64::from(i == j) }).collect())
            .collect();
        let f = g.equation().substitute(&linear_images(Field::Rationals, g.vars(), &full)).unwrap();
        let norm = normalize_germ(&f, k, g.jet_order()).unwrap();
        prop_assert_eq!(norm.form.rank(), r);
        prop_assert!(claim_membership(norm.form.tail(), k).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(56))]

    #[test]
    fn regularity_bound_exceeds_theorem_bound_by_m_minus_3(m in 5u32..=60) {
        let mm = m as i128;
        let reg = regularity_codim_bound(m).unwrap().bound;
        let thm = theorem_bounds(m).unwrap();
        prop_assert_eq!(thm.bound, binom(mm - 3, 2) + 1);
        prop_assert_eq!(reg - thm.bound, mm - 3);
        prop_assert!(thm.rank_component <= reg);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn rank5_context_graphs_beat_four(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_rank5_graph(&mut rng, 12);
        let report = closed_form_bound(&g).unwrap();
        prop_assert!(report.c > BigRational::from_integer(BigInt::from(4)), "c = {} on {:?}", report.c, g);
        prop_assert!(report.aggregates.relations_hold());
        let v = verify_4n2(&g).unwrap();
        prop_assert_eq!(v.verdict, FourN2Verdict::Holds);
        prop_assert!(v.forms_agree);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn extra_upper_vertex_keeps_verdict(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = random_rank5_graph(&mut rng, 10);
        for _ in 0..3 {
            let before = verify_4n2(&g).unwrap().verdict;
            g = with_upper_vertex(&g, &mut rng);
            let after = verify_4n2(&g).unwrap().verdict;
            prop_assert!(before != FourN2Verdict::Holds || after == FourN2Verdict::Holds, "{:?}", g);
        }
    }
}
