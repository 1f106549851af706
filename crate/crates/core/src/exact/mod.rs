//! Exact arithmetic substrate: rationals, dense matrices, and the
//! feasibility solver used for every slicing and membership decision.

pub mod bareiss;
pub mod lp;
pub mod matrix;
pub mod rational;

pub use bareiss::{rank_fraction_free, rank_integer};
pub use lp::{solve_feasibility, Feasibility, LinearSystem, LpError, Relation};
pub use matrix::{MatrixError, RationalMatrix};
pub use rational::{int, parse_rational, rat, to_pq, Rational};
