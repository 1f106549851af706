//! Exact computations for the tropical and algebraic geometry of restricted
//! Boltzmann machines.

pub mod codes;
pub mod cube;
pub mod exact;
pub mod fan;
pub mod poly;
pub mod stats;
pub mod tropical;
