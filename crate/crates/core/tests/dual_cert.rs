mod common;

use common::{ev, oracle_char_vector};
use netoa::corpus::{faure, hammersley, random_pointset};
use netoa::dual_cert::{build_block_family, char_vector, gram_certificate, FunctionTuple};
use netoa::net_verify::ShapeMode;
use netoa::ooa_bridge::{enumerate_profiles, net_to_mooa, KappaProfile};
use netoa::{canonical_beta, MixedOOA, Witness};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_tuple(z: &MixedOOA, rng: &mut ChaCha8Rng) -> FunctionTuple {
    let values = z
        .beta()
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            (0..b)
                .map(|_| rng.gen_range(0..z.block_alphabet(i)))
                .collect()
        })
        .collect();
    FunctionTuple::new(z, values).unwrap()
}

#[test]
fn char_vectors_match_direct_phase() {
    let p = hammersley(2, 4).unwrap();
    let e = ev(&[1, 2]);
    let z = net_to_mooa(&p, 0, &e, &canonical_beta(4, 0, &e)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let d = random_tuple(&z, &mut rng);
        let got = char_vector(&z, &d).unwrap();
        let want = oracle_char_vector(&z, d.values());
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).norm() < 1e-9);
            assert!((g.norm() - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn block_families_certify_on_corpus() {
    let cases = [
        (hammersley(2, 4).unwrap(), ev(&[1, 1]), 0),
        (hammersley(2, 4).unwrap(), ev(&[1, 2]), 0),
        (hammersley(3, 3).unwrap(), ev(&[1, 1]), 1),
        (faure(3, 2, 3).unwrap(), ev(&[1, 1, 1]), 0),
    ];
    for (p, e, u) in cases {
        let m = p.precision();
        let beta = canonical_beta(m, u, &e);
        let z = net_to_mooa(&p, u, &e, &beta).unwrap();
        for kappa in enumerate_profiles(m, u, &e, &beta, ShapeMode::Maximal).unwrap() {
            let family = build_block_family(&z, &kappa).unwrap();
            assert_eq!(
                family.len() as u64,
                u64::from(p.base()).pow(kappa.height(&e) as u32)
            );
            let v = gram_certificate(&z, &family, 1e-6 * z.rows() as f64).unwrap();
            assert!(v.pass(), "{kappa}: {:?}", v.witness());
        }
    }
}

#[test]
fn non_net_fails_orthogonality() {
    // a random array usually breaks some profile; find one that does
    let e = ev(&[1, 1]);
    let z = (0..50)
        .map(|seed| net_to_mooa(&random_pointset(2, 3, 2, seed).unwrap(), 0, &e, &[3, 3]).unwrap())
        .find(|z| !common::oracle_is_mooa(z))
        .unwrap();
    let fails = enumerate_profiles(3, 0, &e, &[3, 3], ShapeMode::Maximal)
        .unwrap()
        .iter()
        .any(|kappa| {
            let family = build_block_family(&z, kappa).unwrap();
            !gram_certificate(&z, &family, 1e-6 * 8.0).unwrap().pass()
        });
    assert!(fails);
}

#[test]
fn precondition_is_checked_first() {
    let z = net_to_mooa(&hammersley(2, 2).unwrap(), 0, &ev(&[1, 1]), &[2, 2]).unwrap();
    let a = FunctionTuple::from_columns(&z, &[0, 1, 0, 0]).unwrap();
    let b = FunctionTuple::from_columns(&z, &[0, 0, 0, 1]).unwrap();
    let v = gram_certificate(&z, &[a, b], 1e-6).unwrap();
    assert!(matches!(
        v.witness(),
        Some(Witness::Precondition {
            height: 4,
            budget: 2,
            ..
        })
    ));
    let fam = build_block_family(&z, &KappaProfile::new(vec![0, 0])).unwrap();
    assert_eq!(fam.len(), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn difference_height_is_symmetric(seed in any::<u64>()) {
        let z = net_to_mooa(&hammersley(2, 4).unwrap(), 0, &ev(&[2, 1]), &[2, 4]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_tuple(&z, &mut rng);
        let b = random_tuple(&z, &mut rng);
        prop_assert_eq!(a.diff(&b).unwrap().height(), b.diff(&a).unwrap().height());
        prop_assert_eq!(a.diff(&a).unwrap().height(), 0);
    }
}
