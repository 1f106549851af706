use proptest::prelude::*;
use troprbm::exact::{
    int, rank_fraction_free, rat, solve_feasibility, Feasibility, LinearSystem, Rational,
    RationalMatrix, Relation,
};

/// Fraction-free elimination over i128, kept separate from the library code.
fn oracle_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let (h, w) = (m.len(), m.first().map_or(0, Vec::len));
    let mut rank = 0;
    let mut prev = 1i128;
    for col in 0..w {
        let Some(p) = (rank..h).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, p);
        for r in rank + 1..h {
            for c in col + 1..w {
                m[r][c] = (m[rank][col] * m[r][c] - m[r][col] * m[rank][c]) / prev;
            }
            m[r][col] = 0;
        }
        prev = m[rank][col];
        rank += 1;
    }
    rank
}

fn matrix_strategy(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    // Small entries and a sparse bias make rank deficiency common.
    prop::collection::vec(prop::collection::vec(prop_oneof![3 => Just(0i64), 5 => -4i64..=4], cols), rows)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn gaussian_bareiss_and_oracle_agree(rows in matrix_strategy(6, 9)) {
        let m = RationalMatrix::from_i64_rows(&rows).unwrap();
        let g = m.rank();
        prop_assert_eq!(g, rank_fraction_free(&m));
        prop_assert_eq!(g, oracle_rank(&rows));
        prop_assert_eq!(g, m.transpose().rank());
    }

    #[test]
    fn low_rank_products(a in matrix_strategy(6, 2), b in matrix_strategy(2, 9)) {
        let p = RationalMatrix::from_i64_rows(&a).unwrap().mul(&RationalMatrix::from_i64_rows(&b).unwrap()).unwrap();
        prop_assert!(p.rank() <= 2);
        prop_assert_eq!(p.rank(), rank_fraction_free(&p));
    }

    #[test]
    fn nullspace_is_annihilated(rows in matrix_strategy(4, 7)) {
        let m = RationalMatrix::from_i64_rows(&rows).unwrap();
        let ns = m.nullspace();
        prop_assert_eq!(ns.cols(), 7 - m.rank());
        for c in 0..ns.cols() {
            prop_assert!(m.mul_vec(&ns.column(c)).iter().all(|x| *x == int(0)));
        }
    }
}

fn relation_strategy() -> impl Strategy<Value = Relation> {
    prop_oneof![Just(Relation::Strict), Just(Relation::Weak), Just(Relation::Equal)]
}

fn system_strategy() -> impl Strategy<Value = Vec<(Vec<i64>, Relation)>> {
    prop::collection::vec((prop::collection::vec(-3i64..=3, 3), relation_strategy()), 1..6)
}

fn build(rows: &[(Vec<i64>, Relation)], scale: &[Rational]) -> LinearSystem {
    let mut sys = LinearSystem::new(3);
    for ((row, rel), s) in rows.iter().zip(scale.iter().cycle()) {
        sys.push(row.iter().map(|&x| int(x) * s).collect(), *rel);
    }
    sys
}

fn holds(row: &[i64], rel: Relation, x: &[Rational]) -> bool {
    let v: Rational = row.iter().zip(x).map(|(&a, b)| int(a) * b).sum();
    match rel {
        Relation::Strict => v > int(0),
        Relation::Weak => v >= int(0),
        Relation::Equal => v == int(0),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn witnesses_satisfy_every_row(rows in system_strategy()) {
        let sys = build(&rows, &[int(1)]);
        if let Feasibility::Feasible(x) = solve_feasibility(&sys).unwrap() {
            prop_assert!(sys.is_satisfied_by(&x));
            for (row, rel) in &rows {
                prop_assert!(holds(row, *rel, &x));
            }
        }
    }

    #[test]
    fn verdict_invariant_under_positive_row_scaling(
        rows in system_strategy(),
        scale in prop::collection::vec((1i64..=9, 1i64..=9), 1..6),
    ) {
        let scale: Vec<Rational> = scale.iter().map(|&(p, q)| rat(p, q)).collect();
        let a = solve_feasibility(&build(&rows, &[int(1)])).unwrap().is_feasible();
        let b = solve_feasibility(&build(&rows, &scale)).unwrap().is_feasible();
        prop_assert_eq!(a, b);
    }

    /// Any grid point satisfying the system forces a feasible verdict.
    #[test]
    fn grid_points_imply_feasibility(rows in system_strategy()) {
        let sys = build(&rows, &[int(1)]);
        let grid: Vec<Rational> = (-4..=4).map(|i| rat(i, 2)).collect();
        let mut found = false;
        'outer: for a in &grid {
            for b in &grid {
                for c in &grid {
                    let x = [a.clone(), b.clone(), c.clone()];
                    if rows.iter().all(|(r, rel)| holds(r, *rel, &x)) {
                        found = true;
                        break 'outer;
                    }
                }
            }
        }
        if found {
            prop_assert!(solve_feasibility(&sys).unwrap().is_feasible());
        }
    }
}

#[test]
fn strictness_is_respected() {
    let mut sys = LinearSystem::new(1);
    sys.weak(vec![int(1)]).weak(vec![int(-1)]);
    assert!(solve_feasibility(&sys).unwrap().is_feasible());
    sys.strict(vec![int(1)]);
    assert_eq!(solve_feasibility(&sys).unwrap(), Feasibility::Infeasible);
}
