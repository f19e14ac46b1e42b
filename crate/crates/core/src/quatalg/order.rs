use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::algebra::{auxiliary_prime, QuatElement, QuaternionAlgebra};
use super::lattice::{left_order_lattice, right_order_lattice, Lattice4};
use super::linalg;
use super::QuatalgError;
use crate::numth::is_prime;

/// An order together with its reduced discriminant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderInfo {
    lattice: Lattice4,
    discriminant: u64,
}

impl OrderInfo {
    /// Checks the order axioms and computes the reduced discriminant.
    pub fn new(lattice: Lattice4) -> Result<Self, QuatalgError> {
        if !verify_order_axioms(&lattice) {
            return Err(QuatalgError::NotAnOrder);
        }
        let discriminant = reduced_discriminant(&lattice)?;
        Ok(OrderInfo { lattice, discriminant })
    }

    pub fn lattice(&self) -> &Lattice4 {
        &self.lattice
    }

    pub fn algebra(&self) -> &Arc<QuaternionAlgebra> {
        self.lattice.algebra()
    }

    pub fn discriminant(&self) -> u64 {
        self.discriminant
    }

    /// The level `N = disc / p`.
    pub fn level(&self) -> u64 {
        self.discriminant / self.algebra().p()
    }
}

/// True iff `1 ∈ L`, `L·L ⊆ L` and every basis product has integral
/// reduced trace and norm.
pub fn verify_order_axioms(l: &Lattice4) -> bool {
    if !l.contains(&QuatElement::one()) {
        return false;
    }
    let alg = l.algebra();
    let b = l.basis();
    for x in &b {
        for y in &b {
            let xy = alg.mul(x, y);
            if !xy.reduced_trace().is_integer() || !alg.reduced_norm(&xy).is_integer() {
                return false;
            }
            if !l.contains(&xy) {
                return false;
            }
        }
    }
    true
}

/// `sqrt(|det Trd(b_r·conj(b_c))|)`, which must be a positive integer.
fn reduced_discriminant(l: &Lattice4) -> Result<u64, QuatalgError> {
    let d = linalg::det(&l.gram()).abs();
    if !d.is_integer() || d.is_zero() {
        return Err(QuatalgError::Internal(format!("non-integral discriminant square {d}")));
    }
    let n = d.to_integer();
    let r = n.sqrt();
    if &r * &r != n {
        return Err(QuatalgError::Internal(format!("discriminant square {n} is not a square")));
    }
    r.to_u64()
        .ok_or_else(|| QuatalgError::Internal("discriminant overflow".into()))
}

/// A maximal order of `algebra`, certified by reduced discriminant `p`.
///
/// The bases are the standard ones for the structure constants chosen by
/// [`super::make_algebra`].
pub fn maximal_order(algebra: &QuaternionAlgebra) -> Result<OrderInfo, QuatalgError> {
    let p = algebra.p();
    let int = |n: i64| BigRational::from_integer(n.into());
    let pi = p as i64;
    let (a, b) = (algebra.a(), algebra.b());
    let gens = if p == 2 && (a, b) == (&int(-1), &int(-1)) {
        vec![
            QuatElement::from_ints([1, 0, 0, 0]),
            QuatElement::from_ints([0, 1, 0, 0]),
            QuatElement::from_ints([0, 0, 1, 0]),
            QuatElement::from_fracs([(1, 2), (1, 2), (1, 2), (1, 2)]),
        ]
    } else if p % 4 == 3 && (a, b) == (&int(-1), &int(-pi)) {
        vec![
            QuatElement::from_fracs([(1, 2), (0, 1), (1, 2), (0, 1)]),
            QuatElement::from_fracs([(0, 1), (1, 2), (0, 1), (1, 2)]),
            QuatElement::from_ints([0, 0, 1, 0]),
            QuatElement::from_ints([0, 0, 0, 1]),
        ]
    } else if p % 8 == 5 && (a, b) == (&int(-2), &int(-pi)) {
        vec![
            QuatElement::from_fracs([(1, 2), (0, 1), (1, 2), (1, 2)]),
            QuatElement::from_fracs([(0, 1), (1, 4), (1, 2), (1, 4)]),
            QuatElement::from_ints([0, 0, 1, 0]),
            QuatElement::from_ints([0, 0, 0, 1]),
        ]
    } else if p % 8 == 1 && a == &int(-pi) && b == &int(-(auxiliary_prime(p) as i64)) {
        let q = auxiliary_prime(p);
        let c = (0..q)
            .find(|c| (c * c % q * (p % q) + 1) % q == 0)
            .ok_or_else(|| QuatalgError::Internal(format!("no square root of -1/{p} mod {q}")))?;
        let (qi, ci) = (q as i64, c as i64);
        vec![
            QuatElement::from_fracs([(1, 2), (0, 1), (1, 2), (0, 1)]),
            QuatElement::from_fracs([(0, 1), (1, 2), (0, 1), (1, 2)]),
            QuatElement::from_fracs([(0, 1), (0, 1), (1, qi), (ci, qi)]),
            QuatElement::from_ints([0, 0, 0, 1]),
        ]
    } else {
        return Err(QuatalgError::Internal(format!(
            "no standard maximal order for {algebra}"
        )));
    };
    let arc = Arc::new(algebra.clone());
    let order = OrderInfo::new(Lattice4::from_generators(&arc, &gens)?)?;
    if order.discriminant != p {
        return Err(QuatalgError::NotMaximal { p, discriminant: order.discriminant });
    }
    Ok(order)
}

/// The `ℓ`-neighbour right ideals `xO + ℓO` of `O`, one per nonzero zero
/// divisor class of `O/ℓO`, deduplicated and listed in order of first
/// appearance of `x` (coordinates in the basis of `O`, lexicographic).
pub fn zero_divisor_ideals(order: &OrderInfo, ell: u64) -> Result<Vec<Lattice4>, QuatalgError> {
    let o = order.lattice();
    let alg = order.algebra();
    let ell_q = BigRational::from_integer(ell.into());
    let ell_o = o.scale(&ell_q)?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for idx in 1..ell.pow(4) {
        let coords: [BigInt; 4] = std::array::from_fn(|k| BigInt::from(idx / ell.pow(3 - k as u32) % ell));
        let x = o.element(&coords);
        if !(alg.reduced_norm(&x) / &ell_q).is_integer() {
            continue;
        }
        let ideal = o.left_mul(&x)?.sum(&ell_o);
        let key = (ideal.denominator().clone(), ideal.hnf_rows().clone());
        if seen.insert(key) {
            out.push(ideal);
        }
    }
    Ok(out)
}

/// The Eichler order `O ∩ O_l(I)` of level `ℓ`, where `I` is the
/// `seed`-th ideal of [`zero_divisor_ideals`].
pub fn eichler_order(maximal: &OrderInfo, ell: u64, seed: usize) -> Result<OrderInfo, QuatalgError> {
    let p = maximal.algebra().p();
    if !is_prime(ell) {
        return Err(QuatalgError::NotPrime(ell));
    }
    if ell == p {
        return Err(QuatalgError::RamifiedLevel(ell));
    }
    if maximal.discriminant() != p {
        return Err(QuatalgError::NotMaximal { p, discriminant: maximal.discriminant() });
    }
    let ideals = zero_divisor_ideals(maximal, ell)?;
    let ideal = ideals
        .get(seed)
        .ok_or(QuatalgError::InvalidSeed { seed, count: ideals.len() })?;
    let other = left_order_lattice(ideal)?;
    let order = OrderInfo::new(maximal.lattice().intersect(&other))?;
    if order.discriminant() != p * ell {
        return Err(QuatalgError::Internal(format!(
            "Eichler order of level {ell} has discriminant {}",
            order.discriminant()
        )));
    }
    Ok(order)
}

pub fn left_order(i: &Lattice4) -> Result<OrderInfo, QuatalgError> {
    OrderInfo::new(left_order_lattice(i)?)
}

pub fn right_order(i: &Lattice4) -> Result<OrderInfo, QuatalgError> {
    OrderInfo::new(right_order_lattice(i)?)
}
