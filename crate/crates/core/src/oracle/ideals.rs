use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::shortvec::{count_norm, has_norm};
use super::{EnumConfig, IdealClassSet, OracleError};
use crate::classno::ClassNumberBundle;
use crate::numth::{factorize, is_prime};
use crate::quatalg::{eichler_order, make_algebra, maximal_order, Lattice4, OrderInfo};

type Q = BigRational;

const UNIT_ORDERS: [u64; 6] = [2, 4, 6, 8, 12, 24];

/// `|O^×|`, the number of elements of reduced norm 1.
pub fn unit_group_order(order: &OrderInfo) -> u64 {
    count_norm(order.lattice(), &Q::one()) as u64
}

/// `Σ 1/|O_l(I)^× / ±1|` over right ideal classes of an order of squarefree
/// level `N` coprime to `p`: `(p - 1)/12 · Π_{ℓ | N} (ℓ + 1)`.
pub fn eichler_mass(order: &OrderInfo) -> BigRational {
    let p = order.algebra().p();
    let level = order.level();
    let lift: u64 = factorize(level).iter().map(|&(l, _)| l + 1).product();
    BigRational::new(BigInt::from((p - 1) * lift), BigInt::from(12))
}

/// `|O_l(I)^×|` computed inside `I·conj(I) = Nrd(I)·O_l(I)`.
fn left_unit_count(i: &Lattice4) -> u64 {
    let n = i.reduced_norm();
    count_norm(&i.product(&i.conj()), &(&n * &n)) as u64
}

fn is_equivalent(i: &Lattice4, j: &Lattice4) -> bool {
    let target = i.reduced_norm() * j.reduced_norm();
    has_norm(&i.product(&j.conj()), &target)
}

/// The `q + 1` right ideals `J ⊂ I` with `[I : J] = q²` and `Nrd(J) = q·Nrd(I)`.
fn neighbours(order: &OrderInfo, i: &Lattice4, q: u64) -> Vec<Lattice4> {
    let alg = order.algebra();
    let o = order.lattice();
    let qq = Q::from_integer(q.into());
    let qi = i.scale(&qq).expect("nonzero scale");
    let target = i.reduced_norm() * &qq;
    let mut out: Vec<Lattice4> = Vec::new();
    for idx in 1..q.pow(4) {
        let coords: [BigInt; 4] =
            std::array::from_fn(|k| BigInt::from(idx / q.pow(3 - k as u32) % q));
        let x = i.element(&coords);
        if !(alg.reduced_norm(&x) / &target).is_integer() {
            continue;
        }
        let j = o.left_mul(&x).expect("x is nonzero").sum(&qi);
        if !out.contains(&j) {
            out.push(j);
        }
    }
    out
}

/// Right ideal classes of a maximal or Eichler order, found by walking
/// neighbour graphs and certified by the mass formula.
pub fn enumerate_right_ideal_classes(
    order: &OrderInfo,
    config: &EnumConfig,
) -> Result<IdealClassSet, OracleError> {
    let disc = order.discriminant();
    if disc > config.discriminant_bound {
        return Err(OracleError::BoundExceeded { discriminant: disc, bound: config.discriminant_bound });
    }
    let level = order.level();
    if factorize(level).iter().any(|&(l, e)| e > 1 || l == order.algebra().p()) {
        return Err(OracleError::UnsupportedOrder(format!("level {level} is not squarefree and prime to p")));
    }
    let target = eichler_mass(order);
    let two = Q::from_integer(2.into());

    let start = order.lattice().clone();
    let u = left_unit_count(&start);
    check_unit_order(u)?;
    let mut reps = vec![start];
    let mut units = vec![u];
    let mut mass = &two / Q::from_integer(u.into());

    let primes: Vec<u64> = (2..=config.max_neighbour_prime)
        .filter(|&q| is_prime(q) && disc % q != 0)
        .collect();
    'outer: for &q in &primes {
        let mut k = 0;
        while k < reps.len() {
            if mass == target {
                break 'outer;
            }
            let cur = reps[k].clone();
            for j in neighbours(order, &cur, q) {
                let uj = left_unit_count(&j);
                check_unit_order(uj)?;
                let known = reps
                    .iter()
                    .zip(&units)
                    .any(|(r, &ur)| ur == uj && is_equivalent(&j, r));
                if !known {
                    mass += &two / Q::from_integer(uj.into());
                    reps.push(j);
                    units.push(uj);
                    if mass > target {
                        return Err(OracleError::MassMismatch { found: mass.to_string(), expected: target.to_string() });
                    }
                }
            }
            k += 1;
        }
    }
    if mass != target {
        return Err(OracleError::MassMismatch { found: mass.to_string(), expected: target.to_string() });
    }
    Ok(IdealClassSet { order: order.clone(), representatives: reps, unit_orders: units })
}

fn check_unit_order(u: u64) -> Result<(), OracleError> {
    if UNIT_ORDERS.contains(&u) {
        Ok(())
    } else {
        Err(OracleError::UnexpectedUnitOrder(u))
    }
}

fn require_prime(p: u64) -> Result<(), OracleError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(OracleError::InvalidInput(format!("{p} is not prime")))
    }
}

/// `(h, h₁, h₂, h₃)` by counting classes whose left order has `2`, `4` or `6` units.
pub fn h123_bruteforce(p: u64, config: &EnumConfig) -> Result<ClassNumberBundle, OracleError> {
    require_prime(p)?;
    if p < 5 {
        return Err(OracleError::InvalidInput(format!("need p >= 5 (got {p})")));
    }
    let order = maximal_order(&make_algebra(p)?)?;
    let set = enumerate_right_ideal_classes(&order, config)?;
    let mut b = ClassNumberBundle { h: 0, h1: 0, h2: 0, h3: 0 };
    for &u in &set.unit_orders {
        match u {
            2 => b.h1 += 1,
            4 => b.h2 += 1,
            6 => b.h3 += 1,
            other => return Err(OracleError::UnexpectedUnitOrder(other)),
        }
        b.h += 1;
    }
    Ok(b)
}

/// Class number of the Eichler order of level `ℓ` by enumeration.
pub fn h_eichler_bruteforce(p: u64, ell: u64, config: &EnumConfig) -> Result<u64, OracleError> {
    require_prime(p)?;
    require_prime(ell)?;
    if p == ell {
        return Err(OracleError::InvalidInput(format!("level {ell} equals p")));
    }
    if p * ell > config.discriminant_bound {
        return Err(OracleError::BoundExceeded { discriminant: p * ell, bound: config.discriminant_bound });
    }
    let o = maximal_order(&make_algebra(p)?)?;
    let e = eichler_order(&o, ell, 0)?;
    let set = enumerate_right_ideal_classes(&e, config)?;
    Ok(set.representatives.len() as u64)
}

/// Mass recomputed from an enumeration, `Σ 2/|O_l(I)^×|`.
pub fn class_set_mass(set: &IdealClassSet) -> BigRational {
    set.unit_orders
        .iter()
        .map(|&u| BigRational::new(2.into(), u.into()))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classno::{h123, h_eichler_pizer, h_maximal};
    use crate::quatalg::{left_order, right_order};

    fn max_order(p: u64) -> OrderInfo {
        maximal_order(&make_algebra(p).unwrap()).unwrap()
    }

    #[test]
    fn unit_group_orders() {
        assert_eq!(unit_group_order(&max_order(2)), 24);
        assert_eq!(unit_group_order(&max_order(3)), 12);
        assert_eq!(unit_group_order(&max_order(13)), 2);
    }

    #[test]
    fn classes_for_small_primes() {
        let cfg = EnumConfig::default();
        for (p, h) in [(5u64, 1usize), (11, 2), (23, 3)] {
            let set = enumerate_right_ideal_classes(&max_order(p), &cfg).unwrap();
            assert_eq!(set.representatives.len(), h, "p = {p}");
            assert_eq!(set.representatives.len() as u64, h_maximal(p).unwrap());
            assert_eq!(class_set_mass(&set), eichler_mass(&set.order));
        }
        let set = enumerate_right_ideal_classes(&max_order(11), &cfg).unwrap();
        let mut u = set.unit_orders.clone();
        u.sort();
        assert_eq!(u, vec![4, 6]);
        for i in &set.representatives {
            assert_eq!(right_order(i).unwrap(), set.order);
            assert_eq!(left_order(i).unwrap().discriminant(), 11);
        }
    }

    #[test]
    fn h123_matches_closed_form() {
        let cfg = EnumConfig::default();
        for p in [7u64, 11, 13, 17, 19] {
            assert_eq!(h123_bruteforce(p, &cfg).unwrap(), h123(p).unwrap(), "p = {p}");
        }
    }

    #[test]
    fn eichler_class_numbers() {
        let cfg = EnumConfig::default();
        for (p, ell, h) in [(7u64, 2u64, 2u64), (11, 3, 4), (5, 2, 1), (13, 5, 6)] {
            assert_eq!(h_eichler_bruteforce(p, ell, &cfg).unwrap(), h, "({p}, {ell})");
            assert_eq!(h_eichler_pizer(p, ell).unwrap(), h);
        }
    }

    #[test]
    fn bound_is_enforced() {
        let cfg = EnumConfig { discriminant_bound: 20, ..EnumConfig::default() };
        assert!(matches!(
            enumerate_right_ideal_classes(&max_order(23), &cfg),
            Err(OracleError::BoundExceeded { .. })
        ));
        assert!(matches!(h_eichler_bruteforce(11, 2, &cfg), Err(OracleError::BoundExceeded { .. })));
    }
}
