use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::QuatalgError;
use crate::numth::{factorize, hilbert_symbol, is_prime, kronecker, Place};

/// The quaternion algebra `(a, b / Q)` with basis `1, i, j, ij`, where
/// `i² = a`, `j² = b` and `ij = -ji`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuaternionAlgebra {
    a: BigRational,
    b: BigRational,
    p: u64,
}

impl QuaternionAlgebra {
    /// Builds `(a, b / Q)` and checks that it ramifies exactly at `p` and `∞`.
    pub fn new(a: BigRational, b: BigRational, p: u64) -> Result<Self, QuatalgError> {
        if !is_prime(p) {
            return Err(QuatalgError::NotPrime(p));
        }
        let ramified = ramified_places(&a, &b)?;
        if ramified != [Place::Finite(p), Place::Infinite] {
            return Err(QuatalgError::WrongRamification {
                p,
                found: ramified.iter().map(|v| v.to_string()).collect(),
            });
        }
        Ok(QuaternionAlgebra { a, b, p })
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    /// The finite ramified prime.
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn mul(&self, x: &QuatElement, y: &QuatElement) -> QuatElement {
        let [x0, x1, x2, x3] = &x.coords;
        let [y0, y1, y2, y3] = &y.coords;
        let (a, b) = (&self.a, &self.b);
        let ab = a * b;
        QuatElement::new([
            x0 * y0 + a * (x1 * y1) + b * (x2 * y2) - &ab * (x3 * y3),
            x0 * y1 + x1 * y0 - b * (x2 * y3) + b * (x3 * y2),
            x0 * y2 + x2 * y0 + a * (x1 * y3) - a * (x3 * y1),
            x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
        ])
    }

    /// `Nrd(x) = x · conj(x) = x0² - a x1² - b x2² + ab x3²`.
    pub fn reduced_norm(&self, x: &QuatElement) -> BigRational {
        let [x0, x1, x2, x3] = &x.coords;
        let (a, b) = (&self.a, &self.b);
        x0 * x0 - a * (x1 * x1) - b * (x2 * x2) + a * b * (x3 * x3)
    }

    /// `Trd(x conj(y))`, twice the bilinear form attached to `Nrd`.
    pub fn trace_pairing(&self, x: &QuatElement, y: &QuatElement) -> BigRational {
        let [x0, x1, x2, x3] = &x.coords;
        let [y0, y1, y2, y3] = &y.coords;
        let (a, b) = (&self.a, &self.b);
        let two = BigRational::from_integer(2.into());
        two * (x0 * y0 - a * (x1 * y1) - b * (x2 * y2) + a * b * (x3 * y3))
    }

    pub fn inverse(&self, x: &QuatElement) -> Result<QuatElement, QuatalgError> {
        let n = self.reduced_norm(x);
        if n.is_zero() {
            return Err(QuatalgError::NotInvertible);
        }
        Ok(x.conj().scale(&n.recip()))
    }
}

impl fmt::Display for QuaternionAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {} / Q)", self.a, self.b)
    }
}

/// Places where `(a, b / Q)` is ramified, in increasing order with `∞` last.
pub fn ramified_places(a: &BigRational, b: &BigRational) -> Result<Vec<Place>, QuatalgError> {
    if a.is_zero() || b.is_zero() {
        return Err(QuatalgError::DegenerateStructure);
    }
    let mut candidates = vec![2u64];
    for x in [a.numer(), a.denom(), b.numer(), b.denom()] {
        let m = x
            .abs()
            .to_u64()
            .ok_or(QuatalgError::DegenerateStructure)?;
        candidates.extend(factorize(m).into_iter().map(|(q, _)| q));
    }
    candidates.sort_unstable();
    candidates.dedup();
    let mut places = Vec::new();
    for q in candidates {
        if hilbert_symbol(a, b, Place::Finite(q)).map_err(|_| QuatalgError::DegenerateStructure)? == -1 {
            places.push(Place::Finite(q));
        }
    }
    if hilbert_symbol(a, b, Place::Infinite).map_err(|_| QuatalgError::DegenerateStructure)? == -1 {
        places.push(Place::Infinite);
    }
    Ok(places)
}

/// Auxiliary prime for `p ≡ 1 (mod 8)`: the least `q ≡ 3 (mod 4)` with
/// `(p/q) = -1`.
pub(crate) fn auxiliary_prime(p: u64) -> u64 {
    (3u64..)
        .step_by(4)
        .filter(|&q| is_prime(q))
        .find(|&q| kronecker(p as i64, q as i64).unwrap().value() == -1)
        .expect("a non-residue prime exists")
}

/// Standard structure constants for `D_{p,∞}`:
/// `(-1,-1)` for `p = 2`, `(-1,-p)` for `p ≡ 3 (4)`, `(-2,-p)` for
/// `p ≡ 5 (8)` and `(-p,-q)` for `p ≡ 1 (8)` with `q` from [`auxiliary_prime`].
pub fn make_algebra(p: u64) -> Result<QuaternionAlgebra, QuatalgError> {
    if !is_prime(p) {
        return Err(QuatalgError::NotPrime(p));
    }
    let int = |n: i64| BigRational::from_integer(BigInt::from(n));
    let pi = p as i64;
    let (a, b) = if p == 2 {
        (int(-1), int(-1))
    } else if p % 4 == 3 {
        (int(-1), int(-pi))
    } else if p % 8 == 5 {
        (int(-2), int(-pi))
    } else {
        (int(-pi), int(-(auxiliary_prime(p) as i64)))
    };
    QuaternionAlgebra::new(a, b, p)
}

/// An element `x0 + x1 i + x2 j + x3 ij`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuatElement {
    pub coords: [BigRational; 4],
}

impl QuatElement {
    pub fn new(coords: [BigRational; 4]) -> Self {
        QuatElement { coords }
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        QuatElement::new(c.map(|x| BigRational::from_integer(x.into())))
    }

    /// Coordinates given as `(numerator, denominator)` pairs.
    pub fn from_fracs(c: [(i64, i64); 4]) -> Self {
        QuatElement::new(c.map(|(n, d)| BigRational::new(n.into(), d.into())))
    }

    pub fn zero() -> Self {
        QuatElement::from_ints([0; 4])
    }

    pub fn one() -> Self {
        QuatElement::from_ints([1, 0, 0, 0])
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn conj(&self) -> Self {
        let [x0, x1, x2, x3] = &self.coords;
        QuatElement::new([x0.clone(), -x1, -x2, -x3])
    }

    /// `Trd(x) = x + conj(x) = 2 x0`.
    pub fn reduced_trace(&self) -> BigRational {
        &self.coords[0] * BigRational::from_integer(2.into())
    }

    pub fn add(&self, other: &Self) -> Self {
        QuatElement::new(std::array::from_fn(|k| &self.coords[k] + &other.coords[k]))
    }

    pub fn sub(&self, other: &Self) -> Self {
        QuatElement::new(std::array::from_fn(|k| &self.coords[k] - &other.coords[k]))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        QuatElement::new(std::array::from_fn(|k| &self.coords[k] * s))
    }

    pub fn scale_int(&self, s: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(s.clone()))
    }

    pub fn is_integral_coords(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }
}

impl fmt::Display for QuatElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "i", "j", "k"];
        let mut first = true;
        for (c, name) in self.coords.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let mag = c.abs();
            if name.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "({mag}){name}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
