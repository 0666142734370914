mod common;

use std::collections::BTreeMap;

use num::One;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{random_exact_triple, random_rational};
use cusptorsion::linalg::QMatrix;
use cusptorsion::rational::Rational;
use cusptorsion::torsion::{
    is_acyclic, les_torsion, multiplicativity_check, reidemeister_torsion, reidemeister_torsion_with,
    BasedCochainComplex,
};

/// A random `θ_q` with `d_q θ_q` spanning `im d_q`, or `None` after a few misses.
fn random_theta(rng: &mut ChaCha8Rng, c: &BasedCochainComplex, q: i64) -> Option<QMatrix> {
    let d = c.differential(q);
    let r = d.rank();
    for _ in 0..20 {
        let theta = QMatrix::from_fn(c.dim(q), r, |_, _| random_rational(rng, 3));
        if d.mul(&theta).unwrap().rank() == r {
            return Some(theta);
        }
    }
    None
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplicativity_on_exact_triples(seed in any::<u64>()) {
        let ses = random_exact_triple(&mut ChaCha8Rng::seed_from_u64(seed));
        let r = multiplicativity_check(&ses).unwrap();
        prop_assert!(r.holds, "τ(C) = {}, product = {}", r.tau_total, r.product);
        prop_assert_eq!(&r.tau_total, &r.product);
    }

    #[test]
    fn les_is_acyclic(seed in any::<u64>()) {
        let ses = random_exact_triple(&mut ChaCha8Rng::seed_from_u64(seed));
        let les = ses.long_exact_sequence().unwrap();
        prop_assert!(is_acyclic(&les));
        prop_assert!(les_torsion(&les).is_ok());
    }

    #[test]
    fn torsion_ignores_theta_choice(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_exact_triple(&mut rng).total;
        let mut theta = BTreeMap::new();
        for q in c.degrees() {
            match random_theta(&mut rng, &c, q) {
                Some(t) => { theta.insert(q, t); }
                None => return Ok(()),
            }
        }
        prop_assert_eq!(
            reidemeister_torsion_with(&c, &theta).unwrap(),
            reidemeister_torsion(&c).unwrap()
        );
    }

    #[test]
    fn shift_by_one_inverts(seed in any::<u64>()) {
        let c = random_exact_triple(&mut ChaCha8Rng::seed_from_u64(seed)).total;
        let tau = reidemeister_torsion(&c).unwrap();
        let shifted = reidemeister_torsion(&c.shifted(1)).unwrap();
        prop_assert_eq!(&tau * &shifted, Rational::one());
        prop_assert_eq!(reidemeister_torsion(&c.shifted(2)).unwrap(), tau);
    }

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let c = random_exact_triple(&mut ChaCha8Rng::seed_from_u64(seed)).quotient;
        let back = BasedCochainComplex::from_json(&c.to_json()).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn coboundary_shift_of_classes_is_invisible(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_exact_triple(&mut rng).total;
        let Some(q) = c.degrees().find(|&q| !c.cohomology_basis(q).is_empty() && c.dim(q - 1) > 0) else {
            return Ok(());
        };
        let d = c.differential(q - 1);
        let moved: Vec<Vec<Rational>> = c.cohomology_basis(q).iter().map(|z| {
            let pre: Vec<Rational> = (0..d.cols()).map(|_| random_rational(&mut rng, 2)).collect();
            let b = d.mul_vec(&pre).unwrap();
            z.iter().zip(b).map(|(x, y)| x + y).collect()
        }).collect();
        let moved = c.with_cohomology_basis(q, moved).unwrap();
        prop_assert_eq!(reidemeister_torsion(&moved).unwrap(), reidemeister_torsion(&c).unwrap());
    }
}

#[test]
fn two_term_complex_gives_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let n = rng.gen_range(1..=4);
        let a = common::random_invertible(&mut rng, n);
        let c = BasedCochainComplex::acyclic(0, vec![n, n], vec![a.clone()]).unwrap();
        let det = a.determinant().unwrap();
        let abs = if det < Rational::from_integer(0.into()) { -det } else { det };
        assert_eq!(reidemeister_torsion(&c).unwrap(), abs);
    }
}
