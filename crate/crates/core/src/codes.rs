//! Binary packing and covering codes, the bounds on `A₂(n,3)` and `K₂(n,1)`,
//! and the passage from a distance-3 code to disjoint slicings.

use crate::cube::vertex::{parse_vertex, vertex_string};
use crate::cube::{Slicing, VertexSet};
use crate::exact::rational::{int, rat};
use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;
use std::collections::{BTreeSet, VecDeque};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodeError {
    #[error("a code needs at least one word")]
    Empty,
    #[error("word {word} does not fit in length {n}")]
    WordOutOfRange { n: usize, word: u32 },
    #[error("duplicate codeword {0}")]
    Duplicate(String),
    #[error("minimum distance of a single-word code is undefined")]
    Singleton,
    #[error("minimum distance {0} < 3: Hamming balls would overlap")]
    DistanceTooSmall(u32),
    #[error("unsupported parameter: {0}")]
    Unsupported(String),
    #[error("malformed code file: {0}")]
    Parse(String),
}

/// A binary code of word length `n`; bit order as for cube vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryCode {
    n: usize,
    words: Vec<u32>,
}

impl BinaryCode {
    pub fn new(n: usize, words: Vec<u32>) -> Result<Self, CodeError> {
        if n == 0 || n > 24 {
            return Err(CodeError::Unsupported(format!("word length {n}")));
        }
        if words.is_empty() {
            return Err(CodeError::Empty);
        }
        let mut seen = BTreeSet::new();
        for &w in &words {
            if u64::from(w) >= 1u64 << n {
                return Err(CodeError::WordOutOfRange { n, word: w });
            }
            if !seen.insert(w) {
                return Err(CodeError::Duplicate(vertex_string(n, w)));
            }
        }
        Ok(Self {
            n,
            words: seen.into_iter().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Codewords in increasing index order.
    pub fn words(&self) -> &[u32] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn min_distance(&self) -> Result<u32, CodeError> {
        if self.words.len() < 2 {
            return Err(CodeError::Singleton);
        }
        let mut best = u32::MAX;
        for (i, &a) in self.words.iter().enumerate() {
            for &b in &self.words[i + 1..] {
                best = best.min((a ^ b).count_ones());
            }
        }
        Ok(best)
    }

    /// Largest distance from any string to its nearest codeword
    /// (breadth-first search on the cube graph).
    pub fn covering_radius(&self) -> u32 {
        let size = 1usize << self.n;
        let mut dist = vec![u32::MAX; size];
        let mut queue = VecDeque::new();
        for &w in &self.words {
            dist[w as usize] = 0;
            queue.push_back(w);
        }
        let mut radius = 0;
        while let Some(x) = queue.pop_front() {
            let d = dist[x as usize];
            radius = radius.max(d);
            for j in 0..self.n {
                let y = x ^ (1 << j);
                if dist[y as usize] == u32::MAX {
                    dist[y as usize] = d + 1;
                    queue.push_back(y);
                }
            }
        }
        radius
    }

    /// Code file: `n=<len>` then one binary string per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("n={}\n", self.n);
        for &w in &self.words {
            s.push_str(&vertex_string(self.n, w));
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, CodeError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| CodeError::Parse("missing header".into()))?;
        let n: usize = header
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| CodeError::Parse(format!("bad header {header:?}")))?;
        let mut words = Vec::new();
        for line in lines {
            if line.len() != n {
                return Err(CodeError::Parse(format!("word {line:?} is not of length {n}")));
            }
            words.push(parse_vertex(line).ok_or_else(|| CodeError::Parse(format!("bad word {line:?}")))?);
        }
        Self::new(n, words)
    }
}

/// The perfect Hamming code of length `2^ℓ − 1`: the kernel of the parity-check
/// matrix whose columns are `1, …, 2^ℓ − 1` written in binary.
pub fn hamming_code(ell: u32) -> Result<BinaryCode, CodeError> {
    if !(2..=4).contains(&ell) {
        return Err(CodeError::Unsupported(format!(
            "Hamming code with l = {ell} (supported: 2..=4)"
        )));
    }
    let n = (1usize << ell) - 1;
    let words = (0..(1u32 << n))
        .filter(|&x| {
            // syndrome: XOR of the (1-based) positions holding a one
            (1..=n).fold(0usize, |acc, j| {
                if (x >> (n - j)) & 1 == 1 {
                    acc ^ j
                } else {
                    acc
                }
            }) == 0
        })
        .collect();
    BinaryCode::new(n, words)
}

/// Greedy lexicographic code of minimum distance 3.
pub fn lexicode(n: usize) -> Result<BinaryCode, CodeError> {
    if n == 0 || n > 20 {
        return Err(CodeError::Unsupported(format!("lexicode of length {n}")));
    }
    let mut words: Vec<u32> = Vec::new();
    for x in 0..(1u32 << n) {
        if words.iter().all(|&w| (w ^ x).count_ones() >= 3) {
            words.push(x);
        }
    }
    BinaryCode::new(n, words)
}

/// A distance-3 code used for dimension witnesses: the Hamming code when `n`
/// is a Hamming length, otherwise the lexicode.
pub fn packing_code(n: usize) -> Result<BinaryCode, CodeError> {
    if (n + 1).is_power_of_two() && (3..=15).contains(&n) {
        hamming_code((n + 1).trailing_zeros())
    } else {
        lexicode(n)
    }
}

fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

fn floor_log2(x: u64) -> u32 {
    63 - x.leading_zeros()
}

/// `2^(n − ⌈log₂(n+1)⌉)`, a lower bound on `A₂(n,3)` for `n ≥ 3`.
pub fn varshamov_lower(n: u64) -> Result<BigUint, CodeError> {
    if n < 3 {
        return Err(CodeError::Unsupported(format!("Varshamov bound needs n >= 3, got {n}")));
    }
    Ok(BigUint::one() << (n - u64::from(ceil_log2(n + 1))))
}

/// `2^(n − ⌊log₂(n+1)⌋)`, an upper bound on `K₂(n,1)`.
pub fn covering_upper(n: u64) -> Result<BigUint, CodeError> {
    if n == 0 {
        return Err(CodeError::Unsupported("n must be positive".into()));
    }
    Ok(BigUint::one() << (n - u64::from(floor_log2(n + 1))))
}

/// Positive set of the radius-1 Hamming ball around `word`.
pub fn hamming_ball(n: usize, word: u32) -> VertexSet {
    let mut s = VertexSet::empty(n);
    s.insert(word);
    for j in 0..n {
        s.insert(word ^ (1 << j));
    }
    s
}

/// The radius-1 ball around `word` as a slicing, witnessed by
/// `ω_i = 2w_i − 1`, `c = 3/2 − |w|`, so that `ωv + c = 3/2 − d(v, w)`.
pub fn ball_slicing(n: usize, word: u32) -> Slicing {
    let omega = (1..=n)
        .map(|j| int(2 * i64::from((word >> (n - j)) & 1) - 1))
        .collect();
    let offset = rat(3, 2) - int(i64::from(word.count_ones()));
    Slicing::new(hamming_ball(n, word), omega, offset).expect("Hamming balls are slicings")
}

/// One slicing per codeword. Requires minimum distance at least 3 so that the
/// balls are pairwise disjoint; single-word codes are accepted.
pub fn code_to_slicings(code: &BinaryCode) -> Result<Vec<Slicing>, CodeError> {
    if code.len() >= 2 {
        let d = code.min_distance()?;
        if d < 3 {
            return Err(CodeError::DistanceTooSmall(d));
        }
    }
    Ok(code.words().iter().map(|&w| ball_slicing(code.n(), w)).collect())
}

/// `A₂(n,3)` by maximum-clique search on the distance-≥3 graph, with the
/// first codeword fixed to `0…0`.
pub fn exact_a2(n: usize) -> Result<usize, CodeError> {
    if n == 0 || n > 5 {
        return Err(CodeError::Unsupported(format!("exact A2(n,3) for n = {n} (supported: 1..=5)")));
    }
    let candidates: Vec<u32> = (1..(1u32 << n)).filter(|x| x.count_ones() >= 3).collect();
    let mut best = 1;
    clique(&candidates, 1, &mut best);
    Ok(best)
}

fn clique(candidates: &[u32], size: usize, best: &mut usize) {
    if size > *best {
        *best = size;
    }
    if size + candidates.len() <= *best {
        return;
    }
    for (i, &x) in candidates.iter().enumerate() {
        if size + candidates.len() - i <= *best {
            return;
        }
        let next: Vec<u32> = candidates[i + 1..]
            .iter()
            .copied()
            .filter(|&y| (x ^ y).count_ones() >= 3)
            .collect();
        clique(&next, size + 1, best);
    }
}

/// `K₂(n,1)` by exact minimum set cover with radius-1 balls.
pub fn exact_k2(n: usize) -> Result<usize, CodeError> {
    if n == 0 || n > 4 {
        return Err(CodeError::Unsupported(format!("exact K2(n,1) for n = {n} (supported: 1..=4)")));
    }
    let full: u32 = if n == 5 { u32::MAX } else { (1u32 << (1u32 << n)) - 1 };
    let balls: Vec<u32> = (0..(1u32 << n))
        .map(|w| hamming_ball(n, w).low_mask() as u32)
        .collect();
    let mut size = 1;
    loop {
        if cover_search(&balls, 0, full, size) {
            return Ok(size);
        }
        size += 1;
    }
}

fn cover_search(balls: &[u32], covered: u32, full: u32, remaining: usize) -> bool {
    if covered == full {
        return true;
    }
    if remaining == 0 {
        return false;
    }
    let u = (!covered & full).trailing_zeros();
    // some chosen ball must contain the first uncovered string u
    balls
        .iter()
        .filter(|&&b| (b >> u) & 1 == 1)
        .any(|&b| cover_search(balls, covered | b, full, remaining - 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactValue {
    pub n: usize,
    pub value: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactTable {
    /// `A₂(n,3)` for `n = 1..=5`.
    pub a2: Vec<ExactValue>,
    /// `K₂(n,1)` for `n = 1..=4`.
    pub k2: Vec<ExactValue>,
}

pub fn exact_small_values() -> ExactTable {
    ExactTable {
        a2: (1..=5)
            .map(|n| ExactValue {
                n,
                value: exact_a2(n).expect("n in range"),
            })
            .collect(),
        k2: (1..=4)
            .map(|n| ExactValue {
                n,
                value: exact_k2(n).expect("n in range"),
            })
            .collect(),
    }
}

/// Known bounds for special word lengths: `k_le` is a lower bound on
/// `A₂(n,3)` (expected dimension holds for `k ≤ k_le`), `k_ge` an upper bound
/// on `K₂(n,1)` (full dimension for `k ≥ k_ge`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnownBounds {
    pub n: u32,
    pub k_le: BigUint,
    pub k_ge: Option<BigUint>,
    /// Entry improves on the closed-form bounds.
    pub k_le_improved: bool,
    pub k_ge_improved: bool,
}

#[derive(Clone, Copy)]
enum Upper {
    Pow(u32),
    Lit(u64),
    Missing,
}

struct Row {
    n: u32,
    le_exp: u32,
    le_mult: &'static str,
    le_improved: bool,
    ge: Upper,
    ge_improved: bool,
}

const fn row(n: u32, le_exp: u32, le_mult: &'static str, le_improved: bool, ge: Upper, ge_improved: bool) -> Row {
    Row {
        n,
        le_exp,
        le_mult,
        le_improved,
        ge,
        ge_improved,
    }
}

use Upper::{Lit, Missing, Pow};

// Rows for n = 5..=33 carry both bounds; the remaining lengths only a lower
// bound on A₂(n,3). Improved entries are the ones not given by the
// closed-form Varshamov/covering bounds.
const KNOWN: &[Row] = &[
    row(5, 2, "1", false, Lit(7), true),
    row(6, 3, "1", false, Lit(12), true),
    row(7, 4, "1", false, Pow(4), false),
    row(8, 2, "5", true, Pow(5), false),
    row(9, 3, "5", true, Lit(62), true),
    row(10, 3, "9", true, Lit(120), true),
    row(11, 4, "9", true, Lit(192), true),
    row(12, 8, "1", false, Lit(380), true),
    row(13, 9, "1", false, Lit(736), true),
    row(14, 10, "1", false, Lit(1408), true),
    row(15, 11, "1", false, Pow(11), false),
    row(16, 5, "85", true, Pow(12), false),
    row(17, 6, "83", true, Pow(13), false),
    row(18, 8, "41", true, Pow(14), false),
    row(19, 12, "5", true, Lit(31744), true),
    row(20, 12, "9", true, Lit(63488), true),
    row(21, 13, "9", true, Lit(122880), true),
    row(22, 14, "9", true, Lit(245760), true),
    row(23, 15, "9", true, Lit(393216), true),
    row(24, 19, "1", false, Lit(786432), true),
    row(25, 20, "1", false, Lit(1556480), true),
    row(26, 21, "1", false, Lit(3112960), true),
    row(27, 22, "1", false, Lit(6029312), true),
    row(28, 23, "1", false, Lit(12058624), true),
    row(29, 24, "1", false, Lit(23068672), true),
    row(30, 25, "1", false, Lit(46137344), true),
    row(31, 26, "1", false, Pow(26), false),
    row(32, 20, "85", true, Pow(27), false),
    row(33, 21, "85", true, Pow(28), false),
    row(35, 23, "83", true, Missing, false),
    row(37, 26, "41", true, Missing, false),
    row(39, 31, "5", true, Missing, false),
    row(47, 38, "9", true, Missing, false),
    row(63, 57, "1", false, Missing, false),
    row(70, 43, "1657009", true, Missing, false),
    row(71, 63, "3", true, Missing, false),
    row(75, 63, "41", true, Missing, false),
    row(79, 70, "5", true, Missing, false),
    row(95, 85, "9", true, Missing, false),
    row(127, 120, "1", false, Missing, false),
    row(141, 113, "1657009", true, Missing, false),
    row(143, 134, "3", true, Missing, false),
    row(151, 138, "41", true, Missing, false),
    row(159, 149, "5", true, Missing, false),
    row(163, 151, "19", true, Missing, false),
    row(191, 180, "9", true, Missing, false),
    row(255, 247, "1", false, Missing, false),
    row(270, 202, "1021273028302258913", true, Missing, false),
    row(283, 254, "1657009", true, Missing, false),
    row(287, 277, "3", true, Missing, false),
    row(300, 220, "3348824985082075276195", true, Missing, false),
    row(303, 289, "41", true, Missing, false),
    row(319, 308, "5", true, Missing, false),
    row(327, 314, "19", true, Missing, false),
    row(383, 371, "9", true, Missing, false),
    row(511, 502, "1", false, Missing, false),
    row(512, 443, "1021273028302258913", true, Missing, false),
];

pub fn table_known_bounds(n: u32) -> Option<KnownBounds> {
    let r = KNOWN.iter().find(|r| r.n == n)?;
    let mult: BigUint = r.le_mult.parse().expect("literal multiplier");
    let k_ge = match r.ge {
        Pow(e) => Some(BigUint::one() << e),
        Lit(x) => Some(BigUint::from(x)),
        Missing => None,
    };
    Some(KnownBounds {
        n,
        k_le: mult << r.le_exp,
        k_ge,
        k_le_improved: r.le_improved,
        k_ge_improved: r.ge_improved,
    })
}

/// Word lengths with a stored row.
pub fn known_lengths() -> Vec<u32> {
    KNOWN.iter().map(|r| r.n).collect()
}
