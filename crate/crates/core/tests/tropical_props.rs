use proptest::prelude::*;
use troprbm::cube::is_slicing;
use troprbm::exact::{int, rat, Rational};
use troprbm::tropical::{
    inference_coordinates, inference_function, membership_tm1, phi, slicing_matrix, SlicingMatrixSpec,
    TropParams, TropicalPoint,
};

fn dot_v(n: usize, beta: &[Rational], v: u32) -> Rational {
    (0..n).filter(|j| v >> (n - 1 - j) & 1 == 1).map(|j| beta[j].clone()).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn visible_shift_is_linear(seed in any::<u64>(), n in 1usize..=4, k in 1usize..=3, shift in prop::collection::vec(-9i64..=9, 4)) {
        let p = TropParams::random(n, k, seed, 20).unwrap();
        let beta: Vec<Rational> = shift[..n].iter().map(|&x| rat(x, 3)).collect();
        let moved: Vec<Rational> = p.visible_bias().iter().zip(&beta).map(|(a, b)| a + b).collect();
        let q = phi(&p);
        let q2 = phi(&p.with_visible_bias(moved).unwrap());
        let back: Vec<Rational> = (0..(1u32 << n)).map(|v| q2.get(v) - dot_v(n, &beta, v)).collect();
        prop_assert_eq!(TropicalPoint::new(back).unwrap(), q);
    }

    /// Φ is linear on a region where the argmax pattern is constant.
    #[test]
    fn linear_on_regions(seed in any::<u64>(), n in 1usize..=4, k in 1usize..=3) {
        let p = TropParams::random(n, k, seed, 20).unwrap();
        let d = TropParams::random(n, k, seed ^ 0xABCD, 20).unwrap();
        let eps = rat(1, 1000);
        let p2 = p.interpolate(&d, &(int(1) - &eps)).unwrap();
        let (Ok(a), Ok(b)) = (inference_function(&p), inference_function(&p2)) else {
            return Ok(());
        };
        prop_assume!(a == b);
        let (q, q2) = (phi(&p), phi(&p2));
        for t in [rat(1, 3), rat(1, 2), rat(2, 3)] {
            let mid = phi(&p.interpolate(&p2, &t).unwrap());
            for v in 0..(1u32 << n) {
                prop_assert_eq!(mid.get(v), &(&t * q.get(v) + (int(1) - &t) * q2.get(v)));
            }
        }
    }

    #[test]
    fn inference_coordinates_are_threshold_functions(seed in any::<u64>(), n in 1usize..=4, k in 1usize..=3) {
        let p = TropParams::random(n, k, seed, 20).unwrap();
        if let Ok(map) = inference_function(&p) {
            for c in inference_coordinates(n, k, &map) {
                prop_assert!(is_slicing(&c).is_some());
            }
        }
    }

    #[test]
    fn slicing_matrix_rank_ignores_order(n in 2usize..=4, picks in prop::collection::vec(any::<prop::sample::Index>(), 1..4), rot in 0usize..3) {
        let all = troprbm::cube::slicings(n);
        let chosen: Vec<_> = picks.iter().map(|i| all[i.index(all.len())].clone()).collect();
        let mut rotated = chosen.clone();
        rotated.rotate_left(rot % chosen.len());
        rotated.reverse();
        let a = slicing_matrix(&SlicingMatrixSpec::new(n, chosen).unwrap()).rank();
        let b = slicing_matrix(&SlicingMatrixSpec::new(n, rotated).unwrap()).rank();
        prop_assert_eq!(a, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Every point of TP^3 is in TM¹₂ (all 2×2 tables have rank at most 2).
    #[test]
    fn tm1_2_is_everything(q in prop::collection::vec(-30i64..=30, 4)) {
        let q = TropicalPoint::new(q.iter().map(|&x| rat(x, 7)).collect()).unwrap();
        let m = membership_tm1(&q).unwrap();
        prop_assert!(m.member);
        prop_assert_eq!(phi(&m.params.unwrap().to_trop_params()), q);
    }
}

#[test]
fn membership_round_trips_on_images() {
    for i in 0..60u64 {
        let n = 2 + (i % 3) as usize;
        let p = TropParams::random(n, 1, 1000 + i, 20).unwrap();
        let q = phi(&p);
        let m = membership_tm1(&q).unwrap();
        assert!(m.member, "draw {i}");
        assert_eq!(phi(&m.params.unwrap().to_trop_params()), q, "draw {i}");
    }
}

#[test]
fn tm1_3_excludes_a_diagonal_pattern() {
    // Regression point: rejected by every one of the 104 cone programs.
    let q = TropicalPoint::new([1, 0, 0, 0, 0, 1, 1, 0].iter().map(|&x| int(x)).collect()).unwrap();
    assert!(!membership_tm1(&q).unwrap().member);
}
