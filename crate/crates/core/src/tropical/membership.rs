//! Membership in the first tropical RBM model `TM¹ₙ` and the count of
//! inference functions.

use super::{TropError, TropParams, TropicalPoint};
use crate::cube::enumerate::BRUTE_FORCE_LIMIT;
use crate::cube::vertex::coord;
use crate::cube::{slicings, EnumerationStrategy, Slicing};
use crate::exact::{solve_feasibility, Feasibility, LinearSystem, Rational};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

/// Parameters `(b, ω, c)` and shift `μ` with
/// `q(v) = bᵀv + max{0, ωv + c} + μ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tm1Params {
    pub b: Vec<Rational>,
    pub omega: Vec<Rational>,
    pub c: Rational,
    pub mu: Rational,
}

impl Tm1Params {
    pub fn to_trop_params(&self) -> TropParams {
        TropParams::single(self.b.clone(), self.omega.clone(), self.c.clone())
            .expect("shapes match by construction")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    /// The slicing whose (closed) cone contains the point.
    pub slicing: Option<Slicing>,
    pub params: Option<Tm1Params>,
}

/// Decides `q ∈ TM¹ₙ` with one exact program per slicing, in canonical
/// slicing order; the first feasible slicing is reported.
///
/// Variables are `(b, ω, c, μ, x)` with `x > 0` homogenizing the data:
/// `q(v)·x = bᵀv + μ + [v ∈ C](ωv + c)`, `ωv + c ≥ 0` on `C` and `≤ 0` off it.
pub fn membership_tm1(q: &TropicalPoint) -> Result<Membership, TropError> {
    let n = q.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(TropError::DimensionTooLarge {
            what: "membership oracle",
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let found = slicings(n)
        .par_iter()
        .find_map_first(|s| solve_for_slicing(q, s).map(|p| (s.clone(), p)));
    Ok(match found {
        Some((slicing, params)) => Membership {
            member: true,
            slicing: Some(slicing),
            params: Some(params),
        },
        None => Membership {
            member: false,
            slicing: None,
            params: None,
        },
    })
}

fn solve_for_slicing(q: &TropicalPoint, s: &Slicing) -> Option<Tm1Params> {
    let n = q.n();
    let vars = 2 * n + 3;
    let (b0, w0, c_idx, mu_idx, x_idx) = (0, n, 2 * n, 2 * n + 1, 2 * n + 2);
    let mut sys = LinearSystem::new(vars);
    for v in 0..(1u32 << n) {
        let inside = s.positive().contains(v);
        let mut eq = vec![Rational::zero(); vars];
        let mut hyper = vec![Rational::zero(); vars];
        hyper[c_idx] = Rational::one();
        for j in 1..=n {
            if coord(n, v, j) == 1 {
                eq[b0 + j - 1] = -Rational::one();
                hyper[w0 + j - 1] = Rational::one();
            }
        }
        eq[mu_idx] = -Rational::one();
        eq[x_idx] = q.get(v).clone();
        if inside {
            for (e, h) in eq.iter_mut().zip(&hyper) {
                *e -= h;
            }
            sys.weak(hyper);
        } else {
            sys.weak(hyper.into_iter().map(|x| -x).collect());
        }
        sys.equal(eq);
    }
    let mut positive_x = vec![Rational::zero(); vars];
    positive_x[x_idx] = Rational::one();
    sys.strict(positive_x);
    let Feasibility::Feasible(z) = solve_feasibility(&sys).expect("well-formed system") else {
        return None;
    };
    let x = z[x_idx].clone();
    let scaled: Vec<Rational> = z.iter().map(|t| t / &x).collect();
    Some(Tm1Params {
        b: scaled[b0..b0 + n].to_vec(),
        omega: scaled[w0..w0 + n].to_vec(),
        c: scaled[c_idx].clone(),
        mu: scaled[mu_idx].clone(),
    })
}

/// `λ(n)^k`, the number of inference functions for `n ≤ 4`.
pub fn count_inference_functions(n: usize, k: u32) -> Result<BigUint, TropError> {
    if n > BRUTE_FORCE_LIMIT {
        return Err(TropError::DimensionTooLarge {
            what: "inference function count",
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let lambda = crate::cube::count_slicings(n, EnumerationStrategy::Arrangement)?;
    Ok(BigUint::from(lambda).pow(k))
}
