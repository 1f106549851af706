//! Enumeration of all slicings of the n-cube and zonotope facet counts.

use super::slicing::{is_slicing, separate, Slicing, SlicingError};
use super::vertex::{coord, VertexSet};
use crate::exact::rational::{canonical_direction, int};
use crate::exact::{RationalMatrix, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::sync::OnceLock;

pub const BRUTE_FORCE_LIMIT: usize = 4;
pub const ARRANGEMENT_LIMIT: usize = 5;
pub const ZONOTOPE_LIMIT: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationStrategy {
    /// Test every subset of the vertex set with [`is_slicing`].
    BruteForce,
    /// Enumerate the regions of the central arrangement `{(c, ω): ω·v + c = 0}`.
    Arrangement,
}

/// All slicings of the n-cube (including the empty and full sets), in
/// canonical order. The count is the number of linear threshold functions.
pub fn enumerate_slicings(
    n: usize,
    strategy: EnumerationStrategy,
) -> Result<Vec<Slicing>, SlicingError> {
    let mut out = match strategy {
        EnumerationStrategy::BruteForce => {
            if n > BRUTE_FORCE_LIMIT {
                return Err(SlicingError::DimensionTooLarge {
                    n,
                    limit: BRUTE_FORCE_LIMIT,
                });
            }
            brute_force(n)
        }
        EnumerationStrategy::Arrangement => {
            if n > ARRANGEMENT_LIMIT {
                return Err(SlicingError::DimensionTooLarge {
                    n,
                    limit: ARRANGEMENT_LIMIT,
                });
            }
            arrangement_regions(n)
        }
    };
    out.sort();
    Ok(out)
}

/// Cached canonical enumeration for `n ≤ 4`, shared by the tropical
/// operations that iterate over every slicing.
pub fn slicings(n: usize) -> &'static [Slicing] {
    static CACHE: [OnceLock<Vec<Slicing>>; BRUTE_FORCE_LIMIT + 1] =
        [const { OnceLock::new() }; BRUTE_FORCE_LIMIT + 1];
    assert!(
        n <= BRUTE_FORCE_LIMIT,
        "cached slicing lists exist for n <= {BRUTE_FORCE_LIMIT}"
    );
    CACHE[n].get_or_init(|| {
        enumerate_slicings(n, EnumerationStrategy::Arrangement)
            .expect("n within the arrangement limit")
    })
}

/// Number of linear threshold functions of `n` variables.
pub fn count_slicings(n: usize, strategy: EnumerationStrategy) -> Result<usize, SlicingError> {
    if n <= BRUTE_FORCE_LIMIT && strategy == EnumerationStrategy::Arrangement {
        return Ok(slicings(n).len());
    }
    enumerate_slicings(n, strategy).map(|v| v.len())
}

fn brute_force(n: usize) -> Vec<Slicing> {
    let subsets: u64 = 1u64 << (1u64 << n);
    (0..subsets)
        .into_par_iter()
        .filter_map(|mask| is_slicing(&VertexSet::from_mask(n, mask)))
        .collect()
}

struct Region {
    positive: Vec<u32>,
    negative: Vec<u32>,
    point: (Rational, Vec<Rational>),
}

impl Region {
    fn value_at(&self, n: usize, v: u32) -> Rational {
        let (c, omega) = &self.point;
        let mut acc = c.clone();
        for j in 1..=n {
            if coord(n, v, j) == 1 {
                acc += &omega[j - 1];
            }
        }
        acc
    }
}

/// Inserts the hyperplanes one vertex at a time, splitting every region the
/// new hyperplane crosses. Each region keeps an interior point; a side that
/// the point already lies on needs no program.
fn arrangement_regions(n: usize) -> Vec<Slicing> {
    let zero_point = (Rational::zero(), vec![Rational::zero(); n]);
    let mut regions = vec![Region {
        positive: Vec::new(),
        negative: Vec::new(),
        point: zero_point,
    }];
    for v in 0..(1u32 << n) {
        regions = regions
            .into_par_iter()
            .flat_map_iter(|region| split_region(n, region, v))
            .collect();
    }
    regions
        .into_iter()
        .map(|r| {
            let positive = VertexSet::from_indices(n, r.positive.iter().copied());
            let (c, omega) = r.point;
            Slicing::new(positive, omega, c).expect("region point separates its sign vector")
        })
        .collect()
}

fn split_region(n: usize, region: Region, v: u32) -> Vec<Region> {
    let value = region.value_at(n, v);
    let side = |positive_side: bool| -> Option<Region> {
        let mut positive = region.positive.clone();
        let mut negative = region.negative.clone();
        if positive_side {
            positive.push(v);
        } else {
            negative.push(v);
        }
        let point = separate(n, &positive, &negative)?;
        Some(Region {
            positive,
            negative,
            point,
        })
    };
    let keep = |positive_side: bool| -> Region {
        let mut positive = region.positive.clone();
        let mut negative = region.negative.clone();
        if positive_side {
            positive.push(v);
        } else {
            negative.push(v);
        }
        Region {
            positive,
            negative,
            point: region.point.clone(),
        }
    };
    if value.is_positive() {
        let mut out = vec![keep(true)];
        out.extend(side(false));
        out
    } else if value.is_negative() {
        let mut out: Vec<Region> = side(true).into_iter().collect();
        out.push(keep(false));
        out
    } else {
        side(true).into_iter().chain(side(false)).collect()
    }
}

/// Facets of the zonotope `Σ_v [0, (1, v)]` in `R^(n+1)`: twice the number of
/// distinct linear hyperplanes spanned by `n` of the generators.
pub fn count_zonotope_facets(n: usize) -> Result<usize, SlicingError> {
    if n > ZONOTOPE_LIMIT {
        return Err(SlicingError::DimensionTooLarge {
            n,
            limit: ZONOTOPE_LIMIT,
        });
    }
    Ok(2 * zonotope_hyperplanes(n).len())
}

/// Canonical normals of the hyperplanes spanned by generators `(1, v)`.
pub fn zonotope_hyperplanes(n: usize) -> BTreeSet<Vec<BigInt>> {
    let generators: Vec<Vec<Rational>> = (0..(1u32 << n))
        .map(|v| {
            let mut g = vec![int(1)];
            g.extend((1..=n).map(|j| int(i64::from(coord(n, v, j)))));
            g
        })
        .collect();
    let mut normals = BTreeSet::new();
    for subset in combinations(generators.len(), n) {
        let rows: Vec<Vec<Rational>> = subset.iter().map(|&i| generators[i].clone()).collect();
        let m = RationalMatrix::from_rows(rows, n + 1).expect("uniform rows");
        if m.rank() != n {
            continue;
        }
        let kernel = m.nullspace();
        debug_assert_eq!(kernel.cols(), 1);
        normals.insert(canonical_direction(&kernel.column(0)));
    }
    normals
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            break;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}
