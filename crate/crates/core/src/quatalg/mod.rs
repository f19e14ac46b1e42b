//! Exact arithmetic in the definite quaternion algebra ramified at `p` and `∞`.

mod algebra;
pub(crate) mod linalg;
mod lattice;
mod order;

use thiserror::Error;

pub use algebra::{make_algebra, ramified_places, QuatElement, QuaternionAlgebra};
pub use lattice::{lattice_index, lattice_intersect, lattice_product, lattice_sum, Lattice4};
pub use order::{
    eichler_order, left_order, maximal_order, right_order, verify_order_axioms,
    zero_divisor_ideals, OrderInfo,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuatalgError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("structure constants ramify at {found:?}, expected exactly {p} and infinity")]
    WrongRamification { p: u64, found: Vec<String> },
    #[error("degenerate structure constants")]
    DegenerateStructure,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("generators do not span a rank-4 lattice")]
    RankDeficient,
    #[error("lattice is not contained in the ambient lattice")]
    NotContained,
    #[error("lattice is not an order")]
    NotAnOrder,
    #[error("order has discriminant {discriminant}, expected maximal discriminant {p}")]
    NotMaximal { p: u64, discriminant: u64 },
    #[error("level {0} equals the ramified prime")]
    RamifiedLevel(u64),
    #[error("embedding seed {seed} out of range (only {count} choices)")]
    InvalidSeed { seed: usize, count: usize },
    #[error("internal error: {0}")]
    Internal(String),
}
