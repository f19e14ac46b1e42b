//! Brute-force checks for the closed forms: ideal classes by neighbour
//! walks, unit groups by short vectors, and small finite counts.

mod ideals;
mod local;
mod shortvec;

use num_rational::BigRational;
use thiserror::Error;

use crate::quatalg::{Lattice4, OrderInfo, QuatalgError};

pub use ideals::{
    class_set_mass, eichler_mass, enumerate_right_ideal_classes, h123_bruteforce,
    h_eichler_bruteforce, unit_group_order,
};
pub use local::{count_eichler_lattices, double_coset_table, DoubleCosetTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("discriminant {discriminant} exceeds enumeration bound {bound}")]
    BoundExceeded { discriminant: u64, bound: u64 },
    #[error("mass mismatch: enumerated {found}, expected {expected}")]
    MassMismatch { found: String, expected: String },
    #[error("unexpected unit group order {0}")]
    UnexpectedUnitOrder(u64),
    #[error("unsupported order: {0}")]
    UnsupportedOrder(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Quatalg(#[from] QuatalgError),
}

/// Limits for class enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumConfig {
    /// Largest reduced discriminant that will be enumerated.
    pub discriminant_bound: u64,
    /// Neighbour primes are taken up to this value.
    pub max_neighbour_prime: u64,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig { discriminant_bound: 200, max_neighbour_prime: 13 }
    }
}

/// Right ideal class representatives of an order.
#[derive(Clone, Debug)]
pub struct IdealClassSet {
    pub order: OrderInfo,
    pub representatives: Vec<Lattice4>,
    /// `|O_l(I)^×|` for each representative.
    pub unit_orders: Vec<u64>,
}

impl IdealClassSet {
    pub fn mass(&self) -> BigRational {
        class_set_mass(self)
    }
}
