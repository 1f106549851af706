//! The tropical RBM model: the morphism Φ, inference functions, slicing
//! matrices, dimension computations and a membership oracle for `k = 1`.

pub mod dimension;
pub mod membership;
pub mod morphism;

pub use dimension::{
    slicing_matrix, tropical_dimension, DimensionRecord, DimensionStrategy, SlicingMatrixSpec,
    DIMENSION_LIMIT, EXHAUSTIVE_TUPLE_LIMIT,
};
pub use membership::{count_inference_functions, membership_tm1, Membership, Tm1Params};
pub use morphism::{
    inference_coordinates, inference_function, phi, ArgmaxTie, TropParams, TropicalPoint,
};

use crate::codes::CodeError;
use crate::cube::SlicingError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TropError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("argmax is not unique at {} visible state(s)", .0.len())]
    AmbiguousArgmax(Vec<ArgmaxTie>),
    #[error("{what} for n={n} is beyond the supported limit {limit}")]
    DimensionTooLarge { what: &'static str, n: usize, limit: usize },
    #[error("exhaustive search over {tuples} slicing tuples exceeds the guard {limit}; allow long runs to proceed")]
    SearchTooLarge { tuples: u128, limit: u128 },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Slicing(#[from] SlicingError),
}
