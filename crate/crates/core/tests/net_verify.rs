mod common;

use common::{corpus_nets, ev, oracle_is_net, oracle_u_star};
use netoa::corpus::{flip_digit, grid_1d, hammersley, random_pointset, van_der_corput};
use netoa::net_verify::{
    box_counts, count_box, enumerate_shapes, project, rebase_compress, rebase_expand, u_star,
    u_star_scan, verify_net, verify_net_with_mode, verify_sequence_prefix, ShapeMode, Variant,
};
use netoa::{Error, PointSet, Shape, Witness};
use proptest::prelude::*;

#[test]
fn verifier_matches_oracle_on_corpus() {
    for (name, p, e) in corpus_nets() {
        for u in 0..=p.precision() {
            for variant in [Variant::Narrow, Variant::Tezuka] {
                let got = verify_net(&p, u, &e, variant).unwrap().pass();
                let want = oracle_is_net(&p, u, &e, variant == Variant::Tezuka);
                assert_eq!(got, want, "{name} u={u} {variant}");
            }
        }
        assert_eq!(u_star(&p, &e, Variant::Narrow).unwrap(), 0, "{name}");
    }
}

#[test]
fn flipped_hammersley() {
    let h = hammersley(2, 3).unwrap();
    let flipped = flip_digit(&h, 1, 1, 2).unwrap();
    let v = verify_net(&flipped, 0, &ev(&[1, 1]), Variant::Narrow).unwrap();
    match v.witness() {
        Some(Witness::Box { shape, .. }) => assert_eq!(shape, &Shape::new(vec![0, 3])),
        other => panic!("unexpected witness {other:?}"),
    }
    assert!(verify_net(&flipped, 0, &ev(&[1, 2]), Variant::Narrow)
        .unwrap()
        .pass());
    assert_eq!(u_star(&flipped, &ev(&[1, 1]), Variant::Narrow).unwrap(), 1);
    assert_eq!(u_star(&flipped, &ev(&[1, 2]), Variant::Narrow).unwrap(), 0);
    assert_eq!(oracle_u_star(&flipped, &ev(&[1, 1]), false), 1);
}

#[test]
fn e_coarsening_on_hammersley() {
    let h = hammersley(2, 3).unwrap();
    assert!(verify_net(&h, 0, &ev(&[1, 2]), Variant::Narrow)
        .unwrap()
        .pass());
    let g = grid_1d(2, 4).unwrap();
    assert!(verify_net(&g, 0, &ev(&[4]), Variant::Narrow)
        .unwrap()
        .pass());
}

#[test]
fn box_count_examples() {
    let g = grid_1d(2, 2).unwrap();
    assert_eq!(count_box(&g, &Shape::new(vec![2]), &[3]).unwrap(), 1);
    assert_eq!(count_box(&g, &Shape::new(vec![0]), &[0]).unwrap(), 4);
    let h = hammersley(2, 3).unwrap();
    assert_eq!(count_box(&h, &Shape::new(vec![1, 1]), &[0, 0]).unwrap(), 2);
    assert!(matches!(
        count_box(&h, &Shape::new(vec![1, 1]), &[2, 0]),
        Err(Error::Index(_))
    ));
}

#[test]
fn shape_examples() {
    let all = enumerate_shapes(3, 0, &ev(&[1, 2]), ShapeMode::All).unwrap();
    let want: Vec<Shape> = [[0, 0], [1, 0], [2, 0], [3, 0], [0, 2], [1, 2]]
        .iter()
        .map(|d| Shape::new(d.to_vec()))
        .collect();
    assert_eq!(all, want);
    let max = enumerate_shapes(3, 0, &ev(&[1, 2]), ShapeMode::Maximal).unwrap();
    assert_eq!(max, vec![Shape::new(vec![3, 0]), Shape::new(vec![1, 2])]);
    assert!(enumerate_shapes(2, 3, &ev(&[1]), ShapeMode::All).is_err());
}

#[test]
fn not_net_sized_is_a_parameter_error() {
    let p = van_der_corput(2, 5, 3).unwrap();
    assert!(matches!(
        verify_net(&p, 0, &ev(&[1]), Variant::Narrow),
        Err(Error::Param(_))
    ));
}

#[test]
fn van_der_corput_sequence_prefix() {
    let seq = van_der_corput(2, 16, 4).unwrap();
    assert!(verify_sequence_prefix(&seq, 0, &ev(&[1]), 4)
        .unwrap()
        .pass());
    assert!(verify_sequence_prefix(&seq, 2, &ev(&[1]), 2)
        .unwrap()
        .pass());

    // swap terms 7 and 8: the m=4 block keeps its point set, the first
    // m=3 block does not
    let swapped = PointSet::from_fn(2, 4, 1, 16, |n, i, l| {
        let src = match n {
            7 => 8,
            8 => 7,
            other => other,
        };
        seq.digit(src, i, l)
    })
    .unwrap();
    let v = verify_sequence_prefix(&swapped, 0, &ev(&[1]), 4).unwrap();
    assert!(matches!(
        v.witness(),
        Some(Witness::Block { g: 0, m: 3, .. })
    ));
    assert!(matches!(
        verify_sequence_prefix(&seq, 0, &ev(&[1]), 5),
        Err(Error::Precision(_))
    ));
}

#[test]
fn projection_and_rebase() {
    let h = hammersley(2, 3).unwrap();
    assert_eq!(project(&h, &[0, 1]).unwrap(), h);
    let y = project(&h, &[1]).unwrap();
    assert_eq!(y, grid_1d(2, 3).unwrap());
    assert!(project(&h, &[]).is_err());

    let p = PointSet::new(2, 4, 1, 1, vec![0, 1, 1, 0]).unwrap();
    let q = rebase_compress(&p, 2).unwrap();
    assert_eq!((q.base(), q.coordinate(0, 0)), (4, &[1u16, 2][..]));
    assert_eq!(rebase_expand(&q, 2).unwrap(), p);
    assert!(rebase_compress(&h, 2).is_err());
    assert_eq!(rebase_compress(&h, 1).unwrap(), h);

    let g = grid_1d(2, 4).unwrap();
    assert!(verify_net(&g, 0, &ev(&[2]), Variant::Narrow)
        .unwrap()
        .pass());
    let g4 = rebase_compress(&g, 2).unwrap();
    assert!(verify_net(&g4, 0, &ev(&[1]), Variant::Narrow)
        .unwrap()
        .pass());
}

fn small_pointset() -> impl Strategy<Value = PointSet> {
    (2u32..=3, 1usize..=3, 1usize..=3, any::<u64>())
        .prop_filter("desk scale", |(b, m, _, _)| b.pow(*m as u32) <= 27)
        .prop_map(|(b, m, s, seed)| random_pointset(b, m, s, seed).unwrap())
}

fn e_for(s: usize) -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(1u32..=2, s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn maximal_mode_matches_all_and_oracle(p in small_pointset(), seed in any::<u64>()) {
        let e = ev(&(0..p.dim()).map(|i| 1 + ((seed >> i) & 1) as u32).collect::<Vec<_>>());
        for u in 0..=p.precision() {
            let max = verify_net_with_mode(&p, u, &e, Variant::Narrow, ShapeMode::Maximal).unwrap();
            let all = verify_net_with_mode(&p, u, &e, Variant::Narrow, ShapeMode::All).unwrap();
            prop_assert_eq!(max.pass(), all.pass());
            prop_assert_eq!(max.pass(), oracle_is_net(&p, u, &e, false));
        }
        prop_assert_eq!(
            u_star(&p, &e, Variant::Narrow).unwrap(),
            u_star_scan(&p, &e, Variant::Narrow).unwrap()
        );
    }

    #[test]
    fn narrow_propagates_upward_and_implies_tezuka(p in small_pointset()) {
        let e = netoa::EVector::ones(p.dim());
        let us = u_star(&p, &e, Variant::Narrow).unwrap();
        for u in 0..=p.precision() {
            let narrow = verify_net(&p, u, &e, Variant::Narrow).unwrap().pass();
            prop_assert_eq!(narrow, u >= us);
            if narrow {
                prop_assert!(verify_net(&p, u, &e, Variant::Tezuka).unwrap().pass());
            }
        }
    }

    #[test]
    fn box_counts_sum_to_n(p in small_pointset(), e in e_for(3)) {
        let e = ev(&e[..p.dim()]);
        for shape in enumerate_shapes(p.precision(), 0, &e, ShapeMode::All).unwrap() {
            let counts = box_counts(&p, &shape).unwrap();
            prop_assert_eq!(counts.len() as u64, u64::from(p.base()).pow(shape.order()));
            prop_assert_eq!(counts.iter().sum::<u64>(), p.len() as u64);
        }
    }

    #[test]
    fn e_coarsening_lowers_u_star(p in small_pointset(), mult in e_for(3)) {
        let e = netoa::EVector::ones(p.dim());
        let coarse = ev(&mult[..p.dim()]);
        let fine = u_star(&p, &e, Variant::Narrow).unwrap();
        prop_assert!(u_star(&p, &coarse, Variant::Narrow).unwrap() <= fine);
    }

    #[test]
    fn projection_of_corpus_net_is_net(m in 0usize..=4, keep in 1usize..=7) {
        let p = netoa::corpus::faure(3, m, 3).unwrap();
        let coords: Vec<usize> = (0..3).filter(|i| keep >> i & 1 == 1).collect();
        let q = project(&p, &coords).unwrap();
        prop_assert!(verify_net(&q, 0, &netoa::EVector::ones(coords.len()), Variant::Narrow).unwrap().pass());
    }

    #[test]
    fn truncation_composes(p in small_pointset(), a in 0usize..=3, b in 0usize..=3) {
        let a = a.min(p.precision());
        let b = b.min(a);
        prop_assert_eq!(p.truncate(a).unwrap().truncate(b).unwrap(), p.truncate(b).unwrap());
    }

    #[test]
    fn coordinate_value_is_monotone(p in small_pointset()) {
        let mut pairs: Vec<(Vec<u16>, _)> = (0..p.len())
            .map(|n| (p.coordinate(n, 0).to_vec(), p.coordinate_value(n, 0).unwrap()))
            .collect();
        pairs.sort_by(|x, y| x.0.cmp(&y.0));
        for w in pairs.windows(2) {
            prop_assert_eq!(w[0].0.cmp(&w[1].0), w[0].1.cmp(&w[1].1));
        }
    }
}
