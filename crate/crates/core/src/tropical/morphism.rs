//! The tropical morphism `Φ(W, b, c)_v = max_h (hᵀWv + bᵀv + cᵀh)` and the
//! inference functions `v ↦ argmax_h`.

use super::TropError;
use crate::cube::vertex::coord;
use crate::cube::VertexSet;
use crate::exact::rational::{parse_rational, Pq};
use crate::exact::Rational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt;

/// Real parameters `(W, b, c)` of an RBM with `n` visible and `k` hidden units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropParams {
    n: usize,
    k: usize,
    /// `k` rows of length `n`.
    weights: Vec<Vec<Rational>>,
    visible_bias: Vec<Rational>,
    hidden_bias: Vec<Rational>,
}

impl TropParams {
    pub fn new(
        weights: Vec<Vec<Rational>>,
        visible_bias: Vec<Rational>,
        hidden_bias: Vec<Rational>,
    ) -> Result<Self, TropError> {
        let n = visible_bias.len();
        let k = hidden_bias.len();
        if weights.len() != k || weights.iter().any(|row| row.len() != n) {
            return Err(TropError::Shape(format!(
                "W must be {k}x{n} to match b (len {n}) and c (len {k})"
            )));
        }
        if n == 0 || n > 24 || k > 20 {
            return Err(TropError::Shape(format!("unsupported dimensions n={n}, k={k}")));
        }
        Ok(Self {
            n,
            k,
            weights,
            visible_bias,
            hidden_bias,
        })
    }

    /// The `k = 1` parameters `b, ω, c` written as in `bᵀv + max{0, ωv + c}`.
    pub fn single(
        visible_bias: Vec<Rational>,
        omega: Vec<Rational>,
        offset: Rational,
    ) -> Result<Self, TropError> {
        Self::new(vec![omega], visible_bias, vec![offset])
    }

    pub fn zeros(n: usize, k: usize) -> Self {
        Self::new(
            vec![vec![Rational::zero(); n]; k],
            vec![Rational::zero(); n],
            vec![Rational::zero(); k],
        )
        .expect("consistent shapes")
    }

    /// Seeded parameters with entries `a/b`, `|a| ≤ bound`, `1 ≤ b ≤ bound`.
    pub fn random(n: usize, k: usize, seed: u64, bound: i64) -> Result<Self, TropError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = |_| Rational::new(rng.gen_range(-bound..=bound).into(), rng.gen_range(1..=bound).into());
        let weights = (0..k).map(|_| (0..n).map(&mut draw).collect()).collect();
        let visible_bias = (0..n).map(&mut draw).collect();
        let hidden_bias = (0..k).map(&mut draw).collect();
        Self::new(weights, visible_bias, hidden_bias)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn weights(&self) -> &[Vec<Rational>] {
        &self.weights
    }

    pub fn visible_bias(&self) -> &[Rational] {
        &self.visible_bias
    }

    pub fn hidden_bias(&self) -> &[Rational] {
        &self.hidden_bias
    }

    pub fn with_visible_bias(&self, visible_bias: Vec<Rational>) -> Result<Self, TropError> {
        Self::new(self.weights.clone(), visible_bias, self.hidden_bias.clone())
    }

    /// `W_i·v + c_i`, the activation of hidden unit `i` (0-based) at `v`.
    pub fn activation(&self, i: usize, v: u32) -> Rational {
        let mut acc = self.hidden_bias[i].clone();
        for j in 1..=self.n {
            if coord(self.n, v, j) == 1 {
                acc += &self.weights[i][j - 1];
            }
        }
        acc
    }

    pub fn visible_term(&self, v: u32) -> Rational {
        let mut acc = Rational::zero();
        for j in 1..=self.n {
            if coord(self.n, v, j) == 1 {
                acc += &self.visible_bias[j - 1];
            }
        }
        acc
    }

    /// Score `hᵀWv + bᵀv + cᵀh` of hidden state `h` (bit `i` of `h`, most
    /// significant first, is `h_{i+1}`).
    pub fn score(&self, v: u32, h: u32) -> Rational {
        let mut acc = self.visible_term(v);
        for i in 0..self.k {
            if coord(self.k, h, i + 1) == 1 {
                acc += self.activation(i, v);
            }
        }
        acc
    }

    /// Affine combination `t·self + (1−t)·other` of two parameter vectors.
    pub fn interpolate(&self, other: &Self, t: &Rational) -> Result<Self, TropError> {
        if self.n != other.n || self.k != other.k {
            return Err(TropError::Shape("interpolating different shapes".into()));
        }
        let s = Rational::from_integer(1.into()) - t;
        let mix = |a: &[Rational], b: &[Rational]| -> Vec<Rational> {
            a.iter().zip(b).map(|(x, y)| t * x + &s * y).collect()
        };
        Self::new(
            self.weights
                .iter()
                .zip(&other.weights)
                .map(|(a, b)| mix(a, b))
                .collect(),
            mix(&self.visible_bias, &other.visible_bias),
            mix(&self.hidden_bias, &other.hidden_bias),
        )
    }
}

/// A point of tropical projective space: a vector indexed by `{0,1}^n`
/// modulo adding multiples of the all-ones vector.
#[derive(Debug, Clone, Eq)]
pub struct TropicalPoint {
    n: usize,
    coords: Vec<Rational>,
}

impl TropicalPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self, TropError> {
        let len = coords.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(TropError::Shape(format!(
                "tropical point needs 2^n coordinates with n >= 1, got {len}"
            )));
        }
        Ok(Self {
            n: len.trailing_zeros() as usize,
            coords,
        })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            coords: vec![Rational::zero(); 1 << n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn get(&self, v: u32) -> &Rational {
        &self.coords[v as usize]
    }

    /// Representative with `q(0…0) = 0`.
    pub fn normalized(&self) -> Vec<Rational> {
        let base = &self.coords[0];
        self.coords.iter().map(|x| x - base).collect()
    }

    pub fn add(&self, other: &[Rational]) -> Self {
        assert_eq!(other.len(), self.coords.len());
        Self {
            n: self.n,
            coords: self.coords.iter().zip(other).map(|(a, b)| a + b).collect(),
        }
    }

    /// The file form: one `p/q` rational per line in lexicographic order.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for x in &self.coords {
            s.push_str(&Pq(x).to_string());
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, TropError> {
        let coords = parse_rational_lines(text)?;
        Self::new(coords)
    }
}

impl PartialEq for TropicalPoint {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.normalized() == other.normalized()
    }
}

impl fmt::Display for TropicalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub(crate) fn parse_rational_lines(text: &str) -> Result<Vec<Rational>, TropError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| parse_rational(l).map_err(|e| TropError::Parse(e.to_string())))
        .collect()
}

/// Evaluates the tropical morphism by enumerating all `2^k` hidden states.
pub fn phi(params: &TropParams) -> TropicalPoint {
    let coords = (0..(1u32 << params.n))
        .map(|v| {
            (0..(1u32 << params.k))
                .map(|h| params.score(v, h))
                .max()
                .expect("at least one hidden state")
        })
        .collect();
    TropicalPoint {
        n: params.n,
        coords,
    }
}

/// A visible state at which several hidden states attain the maximum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArgmaxTie {
    pub visible: u32,
    pub hidden: Vec<u32>,
}

/// The explanation map `v ↦ argmax_h`, one hidden state per visible state.
pub fn inference_function(params: &TropParams) -> Result<Vec<u32>, TropError> {
    let mut map = Vec::with_capacity(1 << params.n);
    let mut ties = Vec::new();
    for v in 0..(1u32 << params.n) {
        let scores: Vec<Rational> = (0..(1u32 << params.k)).map(|h| params.score(v, h)).collect();
        let best = scores.iter().max().expect("nonempty").clone();
        let winners: Vec<u32> = (0..(1u32 << params.k))
            .filter(|&h| scores[h as usize] == best)
            .collect();
        if winners.len() > 1 {
            ties.push(ArgmaxTie {
                visible: v,
                hidden: winners,
            });
        } else {
            map.push(winners[0]);
        }
    }
    if !ties.is_empty() {
        return Err(TropError::AmbiguousArgmax(ties));
    }
    Ok(map)
}

/// Preimages of `h_i = 1` for each coordinate of an inference function.
pub fn inference_coordinates(n: usize, k: usize, map: &[u32]) -> Vec<VertexSet> {
    (0..k)
        .map(|i| {
            VertexSet::from_indices(
                n,
                (0..(1u32 << n)).filter(|&v| coord(k, map[v as usize], i + 1) == 1),
            )
        })
        .collect()
}
