use proptest::prelude::*;
use troprbm::exact::{int, Rational};
use troprbm::stats::{
    all_splits, check_membership_necessary, covariance_by_marginal_table, covariance_matrix, draw_seed,
    flattening, hadamard_product, joint_distribution, max_flattening_rank, mixture_covariance,
    mixture_distribution, reparameterize, sample_exp_params, sample_mixture_params, Distribution,
    ExpParams, SAMPLE_BOUND,
};

fn bit(n: usize, v: u32, j: usize) -> bool {
    v >> (n - j) & 1 == 1
}

/// Direct double sum of ψ over (v, h), normalized.
fn oracle_joint(p: &ExpParams) -> Vec<Rational> {
    let (n, k) = (p.n(), p.k());
    let mut w = Vec::new();
    for v in 0..(1u32 << n) {
        let mut total = int(0);
        for h in 0..(1u32 << k) {
            let mut psi = int(1);
            for j in 1..=n {
                if bit(n, v, j) {
                    psi *= &p.beta()[j - 1];
                }
            }
            for i in 1..=k {
                if bit(k, h, i) {
                    psi *= &p.gamma()[i - 1];
                    for j in 1..=n {
                        if bit(n, v, j) {
                            psi *= &p.omega()[i - 1][j - 1];
                        }
                    }
                }
            }
            total += psi;
        }
        w.push(total);
    }
    let z: Rational = w.iter().sum();
    w.into_iter().map(|x| x / &z).collect()
}

fn oracle_cov(p: &Distribution, i: usize, j: usize) -> Rational {
    let n = p.n();
    let mut e = [int(0), int(0), int(0)];
    for v in 0..(1u32 << n) {
        let pv = p.get(v);
        if bit(n, v, i) {
            e[0] += pv;
        }
        if bit(n, v, j) {
            e[1] += pv;
        }
        if bit(n, v, i) && bit(n, v, j) {
            e[2] += pv;
        }
    }
    &e[2] - &e[0] * &e[1]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn factored_equals_double_sum(seed in any::<u64>(), n in 1usize..=4, k in 1usize..=3) {
        let params = sample_exp_params(n, k, seed, SAMPLE_BOUND);
        let p = joint_distribution(&params);
        prop_assert_eq!(p.probabilities().iter().sum::<Rational>(), int(1));
        prop_assert_eq!(p.probabilities(), &oracle_joint(&params)[..]);
    }

    #[test]
    fn mixture_is_reparameterized_rbm(seed in any::<u64>(), n in 1usize..=4) {
        let m = sample_mixture_params(n, seed, SAMPLE_BOUND);
        let p = mixture_distribution(&m);
        prop_assert_eq!(p.probabilities().iter().sum::<Rational>(), int(1));
        prop_assert_eq!(&joint_distribution(&reparameterize(&m)), &p);
    }

    #[test]
    fn hadamard_products_are_stacked_models(seed in any::<u64>(), n in 1usize..=4, k in 2usize..=3) {
        let parts: Vec<ExpParams> = (0..k as u64).map(|i| sample_exp_params(n, 1, draw_seed(seed, i), SAMPLE_BOUND)).collect();
        let mut product = joint_distribution(&parts[0]);
        let mut stacked = parts[0].clone();
        for q in &parts[1..] {
            product = hadamard_product(&product, &joint_distribution(q)).unwrap();
            stacked = stacked.stack(q).unwrap();
        }
        prop_assert_eq!(product, joint_distribution(&stacked));
    }

    #[test]
    fn one_hidden_node_flattenings_have_rank_two(seed in any::<u64>(), n in 3usize..=5) {
        let p = joint_distribution(&sample_exp_params(n, 1, seed, SAMPLE_BOUND));
        for a in all_splits(n) {
            prop_assert!(flattening(&p, &a).unwrap().rank() <= 2);
        }
        prop_assert!(max_flattening_rank(&p).unwrap() <= 2);
        let check = check_membership_necessary(&p).unwrap();
        prop_assert_eq!(check.verdict, "pass");
        prop_assert!(check.necessary_only);
    }

    #[test]
    fn covariance_identities(seed in any::<u64>()) {
        let m = sample_mixture_params(4, seed, SAMPLE_BOUND);
        let p = mixture_distribution(&m);
        let s = covariance_matrix(&p);
        for i in 0..4 {
            for j in 0..4 {
                prop_assert_eq!(s.get(i, j), s.get(j, i));
                if i != j {
                    prop_assert_eq!(s.get(i, j), &oracle_cov(&p, i + 1, j + 1));
                    prop_assert_eq!(s.get(i, j), &covariance_by_marginal_table(&p, i + 1, j + 1));
                    prop_assert_eq!(s.get(i, j), &mixture_covariance(&m, i + 1, j + 1));
                }
            }
        }
        let sg = |i: usize, j: usize| s.get(i - 1, j - 1).clone();
        prop_assert_eq!(sg(1, 2) * sg(3, 4), sg(1, 4) * sg(2, 3));
        prop_assert_eq!(sg(1, 3) * sg(2, 4), sg(1, 4) * sg(2, 3));
        for (i, j, k) in [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)] {
            prop_assert!(sg(i, j) * sg(i, k) * sg(j, k) >= int(0));
        }
    }

    #[test]
    fn distribution_files_round_trip(seed in any::<u64>(), n in 1usize..=4) {
        let p = joint_distribution(&sample_exp_params(n, 2, seed, SAMPLE_BOUND));
        prop_assert_eq!(Distribution::parse(&p.to_text()).unwrap(), p);
    }
}

#[test]
fn uniform_has_rank_one_flattenings() {
    let u = Distribution::uniform(4);
    assert_eq!(max_flattening_rank(&u).unwrap(), 1);
    let s = covariance_matrix(&u);
    for i in 0..4 {
        for j in 0..4 {
            let expect = if i == j { troprbm::exact::rat(1, 4) } else { int(0) };
            assert_eq!(s.get(i, j), &expect);
        }
    }
}
