//! Slicing matrices `A | A_{C₁} | ⋯ | A_{C_k}` and the dimension of the tropical
//! model as their maximum rank.

use super::TropError;
use crate::codes::{ball_slicing, packing_code};
use crate::cube::vertex::coord;
use crate::cube::{slicings, Slicing, VertexSet};
use crate::exact::{Rational, RationalMatrix};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Largest `n` for which slicing matrices (with `2^n` rows) are built.
pub const DIMENSION_LIMIT: usize = 12;
/// Largest number of slicing multisets an exhaustive search visits unless
/// long runs are allowed.
pub const EXHAUSTIVE_TUPLE_LIMIT: u128 = 200_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlicingMatrixSpec {
    pub n: usize,
    pub slicings: Vec<Slicing>,
}

impl SlicingMatrixSpec {
    pub fn new(n: usize, slicings: Vec<Slicing>) -> Result<Self, TropError> {
        if let Some(s) = slicings.iter().find(|s| s.n() != n) {
            return Err(TropError::Shape(format!(
                "slicing of dimension {} in a spec for n={n}",
                s.n()
            )));
        }
        Ok(Self { n, slicings })
    }

    pub fn k(&self) -> usize {
        self.slicings.len()
    }
}

/// The `2^n × (n + k(n+1))` matrix with blocks `A` (rows `v`) and `A_C`
/// (rows `(1, v)` for `v ∈ C`, zero elsewhere).
pub fn slicing_matrix(spec: &SlicingMatrixSpec) -> RationalMatrix {
    let sets: Vec<&VertexSet> = spec.slicings.iter().map(Slicing::positive).collect();
    block_matrix(spec.n, &sets)
}

fn block_matrix(n: usize, sets: &[&VertexSet]) -> RationalMatrix {
    let cols = n + sets.len() * (n + 1);
    let mut m = RationalMatrix::zeros(1 << n, cols);
    for v in 0..(1u32 << n) {
        let r = v as usize;
        for j in 1..=n {
            if coord(n, v, j) == 1 {
                m.set(r, j - 1, Rational::one());
            }
        }
        for (i, set) in sets.iter().enumerate() {
            if !set.contains(v) {
                continue;
            }
            let base = n + i * (n + 1);
            m.set(r, base, Rational::one());
            for j in 1..=n {
                if coord(n, v, j) == 1 {
                    m.set(r, base + j, Rational::one());
                }
            }
        }
    }
    m
}

fn block_rank(n: usize, sets: &[&VertexSet]) -> usize {
    block_matrix(n, sets).rank()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimensionStrategy {
    /// Every multiset of `k` slicings (`n ≤ 4`); certifies the maximum.
    Exhaustive { allow_long: bool },
    /// Hill climbing by single-slicing replacement from a seeded start.
    GreedyRandom { seed: u64, restarts: usize, steps: usize },
    /// Radius-1 Hamming balls around the words of a distance-3 code.
    CodeBased,
}

impl DimensionStrategy {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Exhaustive { .. } => "exhaustive",
            Self::GreedyRandom { .. } => "greedy_random",
            Self::CodeBased => "code_based",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionRecord {
    pub n: usize,
    pub k: usize,
    pub strategy: &'static str,
    pub max_rank: usize,
    /// `min(max_rank, 2^n − 1)`.
    pub dim: usize,
    pub certified: bool,
    /// Positive sets of the witnessing slicings as hex masks.
    pub witness: Vec<String>,
}

/// `nk + n + k`, the parameter count.
pub fn expected_dimension(n: usize, k: usize) -> usize {
    n * k + n + k
}

pub fn tropical_dimension(
    n: usize,
    k: usize,
    strategy: DimensionStrategy,
) -> Result<DimensionRecord, TropError> {
    if n == 0 || n > DIMENSION_LIMIT {
        return Err(TropError::DimensionTooLarge {
            what: "slicing matrix",
            n,
            limit: DIMENSION_LIMIT,
        });
    }
    let (max_rank, witness, exhaustive) = match strategy {
        DimensionStrategy::Exhaustive { allow_long } => {
            let (r, w) = exhaustive(n, k, allow_long)?;
            (r, w, true)
        }
        DimensionStrategy::CodeBased => {
            let w = code_slicings(n, k)?;
            let sets: Vec<&VertexSet> = w.iter().collect();
            (block_rank(n, &sets), w, false)
        }
        DimensionStrategy::GreedyRandom {
            seed,
            restarts,
            steps,
        } => {
            let (r, w) = greedy(n, k, seed, restarts, steps);
            (r, w, false)
        }
    };
    let full = 1usize << n;
    assert!(
        max_rank <= expected_dimension(n, k).min(full),
        "rank {max_rank} exceeds min(nk+n+k, 2^n)"
    );
    let dim = max_rank.min(full - 1);
    let certified = exhaustive || max_rank >= expected_dimension(n, k).min(full - 1);
    Ok(DimensionRecord {
        n,
        k,
        strategy: strategy.name(),
        max_rank,
        dim,
        certified,
        witness: witness.iter().map(VertexSet::to_hex).collect(),
    })
}

/// Number of multisets of size `k` from `m` items, `C(m + k − 1, k)`.
fn multiset_count(m: usize, k: usize) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc.saturating_mul(m as u128 + i) / (i + 1);
    }
    acc
}

/// Advances a non-decreasing index tuple; false when exhausted.
fn next_multiset(idx: &mut [usize], m: usize) -> bool {
    let Some(i) = (0..idx.len()).rev().find(|&i| idx[i] + 1 < m) else {
        return false;
    };
    idx[i] += 1;
    for j in i + 1..idx.len() {
        idx[j] = idx[i];
    }
    true
}

fn exhaustive(n: usize, k: usize, allow_long: bool) -> Result<(usize, Vec<VertexSet>), TropError> {
    if n > crate::cube::enumerate::BRUTE_FORCE_LIMIT {
        return Err(TropError::DimensionTooLarge {
            what: "exhaustive dimension search",
            n,
            limit: crate::cube::enumerate::BRUTE_FORCE_LIMIT,
        });
    }
    let all = slicings(n);
    let tuples = multiset_count(all.len(), k);
    if !allow_long && tuples > EXHAUSTIVE_TUPLE_LIMIT {
        return Err(TropError::SearchTooLarge {
            tuples,
            limit: EXHAUSTIVE_TUPLE_LIMIT,
        });
    }
    let mut candidates = Vec::with_capacity(tuples.min(1 << 24) as usize);
    let mut idx = vec![0usize; k];
    loop {
        candidates.push(idx.clone());
        if !next_multiset(&mut idx, all.len()) {
            break;
        }
    }
    let rank_of = |t: &Vec<usize>| {
        let sets: Vec<&VertexSet> = t.iter().map(|&i| all[i].positive()).collect();
        block_rank(n, &sets)
    };
    let cap = expected_dimension(n, k).min(1 << n);
    // The first tuple (in canonical order) attaining the cap, else the first
    // attaining the maximum: the same answer for any thread count.
    let best = match candidates.par_iter().find_first(|t| rank_of(t) == cap) {
        Some(t) => (cap, t.clone()),
        None => {
            let (r, pos) = candidates
                .par_iter()
                .enumerate()
                .map(|(pos, t)| (rank_of(t), pos))
                .reduce(
                    || (0, usize::MAX),
                    |a, b| match a.0.cmp(&b.0) {
                        std::cmp::Ordering::Equal => a.min(b),
                        _ => a.max(b),
                    },
                );
            (r, candidates[pos].clone())
        }
    };
    let witness = best.1.iter().map(|&i| all[i].positive().clone()).collect();
    Ok((best.0, witness))
}


/// Balls around the first `k` words of a distance-3 code; beyond the code
/// size, balls around the smallest strings not yet covered.
fn code_slicings(n: usize, k: usize) -> Result<Vec<VertexSet>, TropError> {
    let code = packing_code(n)?;
    let mut out: Vec<VertexSet> = code
        .words()
        .iter()
        .take(k)
        .map(|&w| ball_slicing(n, w).positive().clone())
        .collect();
    let mut covered = out
        .iter()
        .fold(VertexSet::empty(n), |acc, s| acc.union(s));
    let mut next = 0u32;
    while out.len() < k {
        while next < (1u32 << n) && covered.contains(next) {
            next += 1;
        }
        let centre = if next < (1u32 << n) { next } else { (out.len() as u32) % (1u32 << n) };
        let ball = ball_slicing(n, centre).positive().clone();
        covered = covered.union(&ball);
        out.push(ball);
    }
    Ok(out)
}

/// Positive set of `ωv + c > 0` for integer `ω, c` drawn from `[−2n, 2n]`,
/// redrawn while the hyperplane meets a vertex.
fn random_slicing(n: usize, rng: &mut ChaCha8Rng) -> VertexSet {
    let bound = 2 * n as i64;
    loop {
        let omega: Vec<i64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
        let c = rng.gen_range(-bound..=bound);
        let values: Vec<i64> = (0..(1u32 << n))
            .map(|v| {
                c + (1..=n)
                    .filter(|&j| coord(n, v, j) == 1)
                    .map(|j| omega[j - 1])
                    .sum::<i64>()
            })
            .collect();
        if values.iter().all(|&x| x != 0) {
            return VertexSet::from_indices(n, (0..(1u32 << n)).filter(|&v| values[v as usize] > 0));
        }
    }
}

fn greedy(n: usize, k: usize, seed: u64, restarts: usize, steps: usize) -> (usize, Vec<VertexSet>) {
    let cap = expected_dimension(n, k).min(1 << n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(usize, Vec<VertexSet>)> = None;
    for restart in 0..restarts.max(1) {
        let mut current: Vec<VertexSet> = if restart == 0 {
            code_slicings(n, k)
                .unwrap_or_else(|_| (0..k).map(|_| random_slicing(n, &mut rng)).collect())
        } else {
            (0..k).map(|_| random_slicing(n, &mut rng)).collect()
        };
        let mut rank = block_rank(n, &current.iter().collect::<Vec<_>>());
        for _ in 0..steps {
            if rank >= cap || k == 0 {
                break;
            }
            let i = rng.gen_range(0..k);
            let candidate = random_slicing(n, &mut rng);
            let previous = std::mem::replace(&mut current[i], candidate);
            let r = block_rank(n, &current.iter().collect::<Vec<_>>());
            if r >= rank {
                rank = r;
            } else {
                current[i] = previous;
            }
        }
        if best.as_ref().map_or(true, |(r, _)| rank > *r) {
            best = Some((rank, current));
        }
        if rank >= cap {
            break;
        }
    }
    best.expect("at least one restart")
}

/// Rank of `A` alone, i.e. `k = 0`.
pub fn base_rank(n: usize) -> usize {
    block_rank(n, &[])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::is_slicing;
    use crate::exact::rank_fraction_free;

    fn spec_for(n: usize, sets: &[&[u32]]) -> SlicingMatrixSpec {
        let s = sets
            .iter()
            .map(|idx| is_slicing(&VertexSet::from_indices(n, idx.iter().copied())).unwrap())
            .collect();
        SlicingMatrixSpec::new(n, s).unwrap()
    }

    #[test]
    fn small_slicing_matrices() {
        assert_eq!(base_rank(3), 3);
        let m = slicing_matrix(&spec_for(3, &[&[0]]));
        assert_eq!((m.rows(), m.cols()), (8, 7));
        assert_eq!(m.rank(), 4);
        assert_eq!(rank_fraction_free(&m), 4);
        let m = slicing_matrix(&spec_for(3, &[&[0b000, 0b100, 0b010, 0b001]]));
        assert_eq!(m.rank(), 7);
        assert_eq!(rank_fraction_free(&m), 7);
    }

    #[test]
    fn exhaustive_small() {
        let r = tropical_dimension(3, 1, DimensionStrategy::Exhaustive { allow_long: false }).unwrap();
        assert_eq!((r.max_rank, r.dim, r.certified), (7, 7, true));
        let r = tropical_dimension(2, 1, DimensionStrategy::Exhaustive { allow_long: false }).unwrap();
        assert_eq!((r.max_rank, r.dim), (4, 3));
        assert!(matches!(
            tropical_dimension(4, 3, DimensionStrategy::Exhaustive { allow_long: false }),
            Err(TropError::SearchTooLarge { .. })
        ));
    }

    #[test]
    fn multiset_enumeration() {
        assert_eq!(multiset_count(104, 2), 5460);
        let mut idx = vec![0, 0];
        let mut count = 1;
        while next_multiset(&mut idx, 4) {
            count += 1;
        }
        assert_eq!(count, 10);
    }

    #[test]
    fn code_based_n7() {
        let r = tropical_dimension(7, 15, DimensionStrategy::CodeBased).unwrap();
        assert_eq!((r.max_rank, r.dim, r.certified), (127, 127, true));
        assert_eq!(r.witness.len(), 15);
    }

    #[test]
    fn greedy_is_deterministic() {
        let s = DimensionStrategy::GreedyRandom {
            seed: 3,
            restarts: 2,
            steps: 20,
        };
        let a = tropical_dimension(4, 2, s).unwrap();
        let b = tropical_dimension(4, 2, s).unwrap();
        assert_eq!(a, b);
        assert!(a.max_rank <= 14);
    }
}
