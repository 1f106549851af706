//! The probability side of the RBM model: exact distributions, the mixture
//! parameterization of `M¹ₙ`, Hadamard products, flattenings, covariances and
//! the necessary membership conditions.

use crate::cube::vertex::coord;
use crate::exact::rational::{parse_rational, Pq};
use crate::exact::{Rational, RationalMatrix};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Largest `n` for which all flattenings are examined.
pub const FLATTENING_LIMIT: usize = 6;
/// Default bound on numerators and denominators of sampled parameters.
pub const SAMPLE_BOUND: i64 = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StatsError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("malformed distribution file: {0}")]
    Parse(String),
    #[error("{what} needs n <= {limit}, got {n}")]
    TooLarge { what: &'static str, n: usize, limit: usize },
}

fn positive(values: &[Rational]) -> bool {
    values.iter().all(Signed::is_positive)
}

/// `β_j = e^{b_j}`, `γ_i = e^{c_i}`, `ω_ij = e^{W_ij}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpParams {
    n: usize,
    k: usize,
    beta: Vec<Rational>,
    gamma: Vec<Rational>,
    omega: Vec<Vec<Rational>>,
}

impl ExpParams {
    pub fn new(
        beta: Vec<Rational>,
        gamma: Vec<Rational>,
        omega: Vec<Vec<Rational>>,
    ) -> Result<Self, StatsError> {
        let (n, k) = (beta.len(), gamma.len());
        if n == 0 || n > 16 {
            return Err(StatsError::Shape(format!("unsupported n = {n}")));
        }
        if omega.len() != k || omega.iter().any(|r| r.len() != n) {
            return Err(StatsError::Shape(format!("omega must be {k}x{n}")));
        }
        if !positive(&beta) || !positive(&gamma) || omega.iter().any(|r| !positive(r)) {
            return Err(StatsError::InvalidParams("all entries must be positive".into()));
        }
        Ok(Self {
            n,
            k,
            beta,
            gamma,
            omega,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn beta(&self) -> &[Rational] {
        &self.beta
    }

    pub fn gamma(&self) -> &[Rational] {
        &self.gamma
    }

    pub fn omega(&self) -> &[Vec<Rational>] {
        &self.omega
    }

    /// Parameters with the hidden rows of `self` followed by those of `other`
    /// and visible factors multiplied.
    pub fn stack(&self, other: &Self) -> Result<Self, StatsError> {
        if self.n != other.n {
            return Err(StatsError::Shape("stacking different n".into()));
        }
        Self::new(
            self.beta.iter().zip(&other.beta).map(|(a, b)| a * b).collect(),
            self.gamma.iter().chain(&other.gamma).cloned().collect(),
            self.omega.iter().chain(&other.omega).cloned().collect(),
        )
    }

    /// `ψ(v, h) = ∏ β_j^{v_j} ∏ γ_i^{h_i} ∏ ω_ij^{h_i v_j}`.
    pub fn psi(&self, v: u32, h: u32) -> Rational {
        let mut acc = Rational::one();
        for j in 1..=self.n {
            if coord(self.n, v, j) == 1 {
                acc *= &self.beta[j - 1];
            }
        }
        for i in 0..self.k {
            if coord(self.k, h, i + 1) == 1 {
                acc *= &self.gamma[i];
                for j in 1..=self.n {
                    if coord(self.n, v, j) == 1 {
                        acc *= &self.omega[i][j - 1];
                    }
                }
            }
        }
        acc
    }
}

/// A strictly positive probability vector on `{0,1}^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    n: usize,
    p: Vec<Rational>,
}

impl Distribution {
    pub fn new(p: Vec<Rational>) -> Result<Self, StatsError> {
        let len = p.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(StatsError::Shape(format!("need 2^n entries, got {len}")));
        }
        if !positive(&p) {
            return Err(StatsError::InvalidParams("entries must be positive".into()));
        }
        let total: Rational = p.iter().sum();
        if !total.is_one() {
            return Err(StatsError::InvalidParams(format!(
                "entries sum to {}, not 1",
                Pq(&total)
            )));
        }
        Ok(Self {
            n: len.trailing_zeros() as usize,
            p,
        })
    }

    /// Rescales positive weights to sum to one.
    pub fn from_weights(weights: Vec<Rational>) -> Result<Self, StatsError> {
        if !positive(&weights) {
            return Err(StatsError::InvalidParams("weights must be positive".into()));
        }
        let total: Rational = weights.iter().sum();
        Self::new(weights.into_iter().map(|w| w / &total).collect())
    }

    pub fn uniform(n: usize) -> Self {
        let size = 1usize << n;
        Self {
            n,
            p: vec![Rational::new(1.into(), (size as i64).into()); size],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn probabilities(&self) -> &[Rational] {
        &self.p
    }

    pub fn get(&self, v: u32) -> &Rational {
        &self.p[v as usize]
    }

    /// `P(X_i = 1)` for 1-based `i`.
    pub fn marginal(&self, i: usize) -> Rational {
        (0..(1u32 << self.n))
            .filter(|&v| coord(self.n, v, i) == 1)
            .map(|v| self.p[v as usize].clone())
            .sum()
    }

    /// `P(X_i = 1, X_j = 1)`.
    pub fn pair_marginal(&self, i: usize, j: usize) -> Rational {
        (0..(1u32 << self.n))
            .filter(|&v| coord(self.n, v, i) == 1 && coord(self.n, v, j) == 1)
            .map(|v| self.p[v as usize].clone())
            .sum()
    }

    pub fn to_text(&self) -> String {
        self.p.iter().map(|x| format!("{}\n", Pq(x))).collect()
    }

    pub fn parse(text: &str) -> Result<Self, StatsError> {
        let values = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| parse_rational(l).map_err(|e| StatsError::Parse(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(values)
    }
}

/// Two-component product mixture: weight `λ`, component Bernoulli
/// parameters `P(v_i = 0) = δ_i` resp. `ε_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixtureParams {
    lambda: Rational,
    delta: Vec<Rational>,
    epsilon: Vec<Rational>,
}

fn in_open_unit(x: &Rational) -> bool {
    x.is_positive() && x < &Rational::one()
}

impl MixtureParams {
    pub fn new(lambda: Rational, delta: Vec<Rational>, epsilon: Vec<Rational>) -> Result<Self, StatsError> {
        if delta.is_empty() || delta.len() != epsilon.len() || delta.len() > 16 {
            return Err(StatsError::Shape("delta and epsilon need equal length 1..=16".into()));
        }
        if !in_open_unit(&lambda) || !delta.iter().chain(&epsilon).all(in_open_unit) {
            return Err(StatsError::InvalidParams(
                "lambda, delta and epsilon must lie strictly between 0 and 1".into(),
            ));
        }
        Ok(Self {
            lambda,
            delta,
            epsilon,
        })
    }

    pub fn n(&self) -> usize {
        self.delta.len()
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn delta(&self) -> &[Rational] {
        &self.delta
    }

    pub fn epsilon(&self) -> &[Rational] {
        &self.epsilon
    }
}

/// Unnormalized RBM weights from the factored form
/// `∏ β_j^{v_j} ∏_i (1 + γ_i ∏_j ω_ij^{v_j})`.
pub fn unnormalized_weights(params: &ExpParams) -> Vec<Rational> {
    let n = params.n;
    (0..(1u32 << n))
        .map(|v| {
            let mut acc = Rational::one();
            for j in 1..=n {
                if coord(n, v, j) == 1 {
                    acc *= &params.beta[j - 1];
                }
            }
            for i in 0..params.k {
                let mut term = params.gamma[i].clone();
                for j in 1..=n {
                    if coord(n, v, j) == 1 {
                        term *= &params.omega[i][j - 1];
                    }
                }
                acc *= Rational::one() + term;
            }
            acc
        })
        .collect()
}

/// The partition function `Z = Σ_{v,h} ψ(v, h)`.
pub fn partition_function(params: &ExpParams) -> Rational {
    unnormalized_weights(params).into_iter().sum()
}

pub fn joint_distribution(params: &ExpParams) -> Distribution {
    Distribution::from_weights(unnormalized_weights(params)).expect("positive weights")
}

/// The same distribution by summing `ψ(v, h)` over all hidden states.
pub fn joint_distribution_brute_force(params: &ExpParams) -> Distribution {
    let weights = (0..(1u32 << params.n))
        .map(|v| (0..(1u32 << params.k)).map(|h| params.psi(v, h)).sum())
        .collect();
    Distribution::from_weights(weights).expect("positive weights")
}

pub fn mixture_distribution(params: &MixtureParams) -> Distribution {
    let n = params.n();
    let one = Rational::one();
    let product = |q: &[Rational], v: u32| -> Rational {
        (1..=n)
            .map(|j| {
                if coord(n, v, j) == 1 {
                    &one - &q[j - 1]
                } else {
                    q[j - 1].clone()
                }
            })
            .product()
    };
    let weights = (0..(1u32 << n))
        .map(|v| {
            &params.lambda * product(&params.delta, v)
                + (&one - &params.lambda) * product(&params.epsilon, v)
        })
        .collect();
    Distribution::new(weights).expect("mixture of probability measures")
}

/// `β_i = (1−δ_i)/δ_i`, `ω_i = (δ_i/(1−δ_i))·((1−ε_i)/ε_i)`,
/// `γ = Z(1−λ)∏ε_i` with `Z = (λ∏δ_i)^{-1}`.
pub fn reparameterize(params: &MixtureParams) -> ExpParams {
    let one = Rational::one();
    let beta: Vec<Rational> = params.delta.iter().map(|d| (&one - d) / d).collect();
    let omega: Vec<Rational> = params
        .delta
        .iter()
        .zip(&params.epsilon)
        .map(|(d, e)| (d / (&one - d)) * ((&one - e) / e))
        .collect();
    let z = (&params.lambda * params.delta.iter().product::<Rational>()).recip();
    let gamma = z * (&one - &params.lambda) * params.epsilon.iter().product::<Rational>();
    ExpParams::new(beta, vec![gamma], vec![omega]).expect("positive by construction")
}

pub fn hadamard_product(p: &Distribution, q: &Distribution) -> Result<Distribution, StatsError> {
    if p.n != q.n {
        return Err(StatsError::Shape(format!("n = {} vs n = {}", p.n, q.n)));
    }
    Distribution::from_weights(p.p.iter().zip(&q.p).map(|(a, b)| a * b).collect())
}

/// Splits `{1..n}` into the sorted set `a` and its complement.
fn split(n: usize, a: &[usize]) -> Result<(Vec<usize>, Vec<usize>), StatsError> {
    let mut a = a.to_vec();
    a.sort_unstable();
    a.dedup();
    if a.iter().any(|&i| i == 0 || i > n) {
        return Err(StatsError::Shape(format!("indices must lie in 1..={n}")));
    }
    if a.is_empty() || a.len() == n {
        return Err(StatsError::Shape("split must be nonempty on both sides".into()));
    }
    let b = (1..=n).filter(|i| !a.contains(i)).collect();
    Ok((a, b))
}

/// Index of the restriction of `v` to `coords` (lexicographic).
fn restrict(n: usize, v: u32, coords: &[usize]) -> usize {
    coords
        .iter()
        .fold(0usize, |acc, &j| (acc << 1) | coord(n, v, j) as usize)
}

/// The `2^|A| × 2^|B|` flattening for the split `A | B` (1-based indices).
pub fn flattening(p: &Distribution, a_set: &[usize]) -> Result<RationalMatrix, StatsError> {
    let (a, b) = split(p.n, a_set)?;
    let mut m = RationalMatrix::zeros(1 << a.len(), 1 << b.len());
    for v in 0..(1u32 << p.n) {
        m.set(restrict(p.n, v, &a), restrict(p.n, v, &b), p.p[v as usize].clone());
    }
    Ok(m)
}

/// The `2^(n−1) − 1` nontrivial splits, each listed by the side containing 1.
pub fn all_splits(n: usize) -> Vec<Vec<usize>> {
    (0..(1u32 << (n - 1)))
        .map(|mask| {
            let mut a = vec![1];
            a.extend((2..=n).filter(|&i| (mask >> (i - 2)) & 1 == 1));
            a
        })
        .filter(|a| a.len() < n)
        .collect()
}

pub fn max_flattening_rank(p: &Distribution) -> Result<usize, StatsError> {
    if p.n > FLATTENING_LIMIT {
        return Err(StatsError::TooLarge {
            what: "flattening ranks",
            n: p.n,
            limit: FLATTENING_LIMIT,
        });
    }
    Ok(all_splits(p.n)
        .iter()
        .map(|a| flattening(p, a).expect("valid split").rank())
        .max()
        .unwrap_or(1))
}

/// `σ_ij = E[X_i X_j] − E[X_i] E[X_j]` (0-based matrix indices).
pub fn covariance_matrix(p: &Distribution) -> RationalMatrix {
    let n = p.n;
    let means: Vec<Rational> = (1..=n).map(|i| p.marginal(i)).collect();
    let mut m = RationalMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let s = p.pair_marginal(i + 1, j + 1) - &means[i] * &means[j];
            m.set(i, j, s.clone());
            m.set(j, i, s);
        }
    }
    m
}

/// `σ_ij` as the determinant of the 2×2 table of `(X_i, X_j)` obtained by
/// summing out every other coordinate (1-based `i ≠ j`).
pub fn covariance_by_marginal_table(p: &Distribution, i: usize, j: usize) -> Rational {
    let mut t = [[Rational::zero(), Rational::zero()], [Rational::zero(), Rational::zero()]];
    for v in 0..(1u32 << p.n) {
        t[coord(p.n, v, i) as usize][coord(p.n, v, j) as usize] += &p.p[v as usize];
    }
    &t[0][0] * &t[1][1] - &t[0][1] * &t[1][0]
}

/// Covariance of the mixture in closed form,
/// `σ_ij = λ(1−λ)(δ_i − ε_i)(δ_j − ε_j)` (1-based `i ≠ j`).
pub fn mixture_covariance(params: &MixtureParams, i: usize, j: usize) -> Rational {
    let l = &params.lambda;
    l * (Rational::one() - l)
        * (&params.delta[i - 1] - &params.epsilon[i - 1])
        * (&params.delta[j - 1] - &params.epsilon[j - 1])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NecessaryCheck {
    pub n: usize,
    pub max_flattening_rank: usize,
    pub flattening_rank_ok: bool,
    pub triple_sign_ok: bool,
    pub covariance_binomial_ok: bool,
    /// `"pass"` or `"fail"`.
    pub verdict: &'static str,
    /// Always true: passing does not imply membership in `M¹ₙ`.
    pub necessary_only: bool,
    pub failures: Vec<String>,
}

/// Flattening ranks `≤ 2`, `σ_ij σ_ik σ_jk ≥ 0` for distinct triples, and
/// `σ_ij σ_kl = σ_ik σ_jl = σ_il σ_jk` for distinct quadruples.
pub fn check_membership_necessary(p: &Distribution) -> Result<NecessaryCheck, StatsError> {
    let n = p.n;
    let max_rank = max_flattening_rank(p)?;
    let sigma = covariance_matrix(p);
    let s = |i: usize, j: usize| sigma.get(i - 1, j - 1).clone();
    let mut failures = Vec::new();
    if max_rank > 2 {
        failures.push(format!("a flattening has rank {max_rank} > 2"));
    }
    let mut triple_ok = true;
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                if (s(i, j) * s(i, k) * s(j, k)).is_negative() {
                    triple_ok = false;
                    failures.push(format!("sigma{i}{j} * sigma{i}{k} * sigma{j}{k} < 0"));
                }
            }
        }
    }
    let mut binomial_ok = true;
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                for l in k + 1..=n {
                    let a = s(i, j) * s(k, l);
                    let b = s(i, k) * s(j, l);
                    let c = s(i, l) * s(j, k);
                    if a != b || b != c {
                        binomial_ok = false;
                        failures.push(format!("covariance binomials fail on {{{i},{j},{k},{l}}}"));
                    }
                }
            }
        }
    }
    let pass = max_rank <= 2 && triple_ok && binomial_ok;
    Ok(NecessaryCheck {
        n,
        max_flattening_rank: max_rank,
        flattening_rank_ok: max_rank <= 2,
        triple_sign_ok: triple_ok,
        covariance_binomial_ok: binomial_ok,
        verdict: if pass { "pass" } else { "fail" },
        necessary_only: true,
        failures,
    })
}

/// Seed of the `index`-th draw of a batch with root seed `root`.
pub fn draw_seed(root: u64, index: u64) -> u64 {
    root.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ index.wrapping_add(1).wrapping_mul(0xD1B5_4A32_D192_ED03)
}

/// `a/b` with `1 ≤ a, b ≤ bound`.
pub fn random_positive(rng: &mut impl Rng, bound: i64) -> Rational {
    Rational::new(rng.gen_range(1..=bound).into(), rng.gen_range(1..=bound).into())
}

/// `a/b` with `1 ≤ a < b ≤ bound`.
pub fn random_unit(rng: &mut impl Rng, bound: i64) -> Rational {
    let b = rng.gen_range(2..=bound.max(2));
    Rational::new(rng.gen_range(1..b).into(), b.into())
}

pub fn sample_exp_params(n: usize, k: usize, seed: u64, bound: i64) -> ExpParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let beta = (0..n).map(|_| random_positive(&mut rng, bound)).collect();
    let gamma = (0..k).map(|_| random_positive(&mut rng, bound)).collect();
    let omega = (0..k)
        .map(|_| (0..n).map(|_| random_positive(&mut rng, bound)).collect())
        .collect();
    ExpParams::new(beta, gamma, omega).expect("positive samples")
}

pub fn sample_mixture_params(n: usize, seed: u64, bound: i64) -> MixtureParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lambda = random_unit(&mut rng, bound);
    let delta = (0..n).map(|_| random_unit(&mut rng, bound)).collect();
    let epsilon = (0..n).map(|_| random_unit(&mut rng, bound)).collect();
    MixtureParams::new(lambda, delta, epsilon).expect("samples in (0,1)")
}
