use proptest::prelude::*;
use std::collections::BTreeSet;
use troprbm::cube::VertexSet;
use troprbm::exact::{int, Rational};
use troprbm::fan::{
    enumerate_triangulations, lift_from_reduced, reduce_lift, reduced_homology_ranks,
    regular_subdivision_from_lift, single_orbit, tm13_from_fan, SecondaryFan, SimplicialComplexData,
    Triangulation,
};
use troprbm::tropical::{membership_tm1, phi, TropicalPoint};

fn hom(v: usize) -> [i128; 4] {
    [1, (v >> 2 & 1) as i128, (v >> 1 & 1) as i128, (v & 1) as i128]
}

fn det(mut m: Vec<Vec<i128>>) -> i128 {
    // Laplace expansion; the matrices here are at most 5×5.
    if m.len() == 1 {
        return m[0][0];
    }
    let first = m.remove(0);
    (0..first.len())
        .map(|c| {
            let minor: Vec<Vec<i128>> = m
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(i, _)| i != c).map(|(_, &x)| x).collect())
                .collect();
            let s = if c % 2 == 0 { 1 } else { -1 };
            s * first[c] * det(minor)
        })
        .sum()
}

/// Lower-hull triangulation for a generic integer lift, by 5×5 orientation
/// determinants.
fn oracle_regular(w: &[i64; 8]) -> BTreeSet<Vec<usize>> {
    let mut cells = BTreeSet::new();
    for a in 0..8 {
        for b in a + 1..8 {
            for c in b + 1..8 {
                for d in c + 1..8 {
                    let t = [a, b, c, d];
                    let d4 = det(t.iter().map(|&v| hom(v).to_vec()).collect());
                    if d4 == 0 {
                        continue;
                    }
                    let lower = (0..8).filter(|u| !t.contains(u)).all(|u| {
                        let rows = t.iter().chain(std::iter::once(&u))
                            .map(|&v| { let mut r = hom(v).to_vec(); r.push(w[v] as i128); r })
                            .collect();
                        det(rows) * d4 > 0
                    });
                    if lower {
                        cells.insert(t.to_vec());
                    }
                }
            }
        }
    }
    cells
}

fn all_triangulations() -> &'static [Triangulation] {
    static ALL: std::sync::OnceLock<Vec<Triangulation>> = std::sync::OnceLock::new();
    ALL.get_or_init(enumerate_triangulations)
}

fn cells_of(t: &Triangulation) -> BTreeSet<Vec<usize>> {
    t.cells().iter().map(|c| c.to_vec()).collect()
}

#[test]
fn triangulations_fill_the_cube() {
    let ts = enumerate_triangulations();
    assert_eq!(ts.len(), 74);
    for t in &ts {
        let vol: i128 = t.cells().iter().map(|c| det(c.iter().map(|&v| hom(v).to_vec()).collect()).abs()).sum();
        assert_eq!(vol, 6);
        assert_eq!(t.volume(), int(1));
        let lift = t.regular_lift().expect("every triangulation of the 3-cube is regular");
        let sub = regular_subdivision_from_lift(&lift).unwrap();
        assert!(sub.is_triangulation());
        let expect: Vec<VertexSet> = t.cell_sets();
        assert_eq!(sub.cells.iter().collect::<BTreeSet<_>>(), expect.iter().collect::<BTreeSet<_>>());
        assert_eq!(Triangulation::parse(&t.to_text()).unwrap(), *t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn generic_lifts_give_listed_triangulations(w in prop::array::uniform8(-40i64..=40)) {
        let oracle = oracle_regular(&w);
        let vol: i128 = oracle.iter().map(|c| det(c.iter().map(|&v| hom(v).to_vec()).collect()).abs()).sum();
        prop_assume!(vol == 6); // otherwise the lift is not generic
        let lift: Vec<Rational> = w.iter().map(|&x| int(x)).collect();
        let sub = regular_subdivision_from_lift(&lift).unwrap();
        let ours: BTreeSet<Vec<usize>> = sub.cells.iter().map(|c| c.iter().map(|v| v as usize).collect()).collect();
        prop_assert_eq!(&ours, &oracle);
        prop_assert!(all_triangulations().iter().any(|t| cells_of(t) == oracle));
        // Adding an affine function does not change the subdivision.
        let reduced = lift_from_reduced(&reduce_lift(&lift));
        let again = regular_subdivision_from_lift(&reduced).unwrap();
        prop_assert_eq!(again.cells, sub.cells);
    }
}

#[test]
fn tm13_structure() {
    let fan = SecondaryFan::compute();
    assert_eq!(fan.fvector(), [22, 100, 152, 74]);
    assert_eq!(fan.lineality_dim, 4);
    let tm = tm13_from_fan(&fan).unwrap();
    let f = tm.complex.fvector();
    assert_eq!(f, vec![14, 40, 36, 12]);
    assert_eq!(tm.edge_census, (4, 24, 12));

    let h = reduced_homology_ranks(&tm.complex).unwrap();
    assert_eq!(h, vec![0, 3, 0, 0]);
    let euler: i64 = f.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
    let reduced: i64 = h.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
    assert_eq!(euler - 1, reduced);

    let maximal: Vec<Triangulation> = tm.triangulations.iter().map(|&i| tm.all_triangulations[i].clone()).collect();
    assert_eq!(maximal.len(), 12);
    assert!(single_orbit(&maximal));
    assert!(!single_orbit(&tm.all_triangulations));

    // Round trip at each kept face, and rejection at every other face.
    let ray_id = |r: &Vec<num_bigint::BigInt>| fan.rays.iter().position(|x| x == r).unwrap();
    let kept: BTreeSet<Vec<usize>> = tm
        .complex
        .faces_by_dim
        .iter()
        .flatten()
        .map(|face| {
            let mut ids: Vec<usize> = face.iter().map(|&i| ray_id(&tm.rays[i])).collect();
            ids.sort_unstable();
            ids
        })
        .collect();
    for face in fan.faces.keys() {
        let q = TropicalPoint::new(fan.interior_lift(face)).unwrap();
        let m = membership_tm1(&q).unwrap();
        assert_eq!(m.member, kept.contains(face), "{face:?}");
        if let Some(p) = m.params {
            assert_eq!(phi(&p.to_trop_params()), q);
        }
    }
}

#[test]
fn homology_of_small_complexes() {
    let circle = SimplicialComplexData::from_facets(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
    assert_eq!(reduced_homology_ranks(&circle).unwrap(), vec![0, 1]);
    let sphere = SimplicialComplexData::from_facets(4, &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap();
    assert_eq!(reduced_homology_ranks(&sphere).unwrap(), vec![0, 0, 1]);
    let points = SimplicialComplexData::from_facets(3, &[vec![0], vec![1], vec![2]]).unwrap();
    assert_eq!(reduced_homology_ranks(&points).unwrap(), vec![2]);
    let disk = SimplicialComplexData::from_facets(3, &[vec![0, 1, 2]]).unwrap();
    assert_eq!(reduced_homology_ranks(&disk).unwrap(), vec![0, 0, 0]);
    assert!(SimplicialComplexData::new(2, vec![vec![vec![0]], vec![vec![0, 1]]]).is_err());
}
