//! Closed forms for class numbers and the terms `o(n̄)` of the census
//! `H(2, D_{p,∞})`.
//!
//! Every formula is evaluated in exact rationals and then checked to be a
//! nonnegative integer.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use crate::cyclo::{dagger, CycloError, NTuple, INDEX_PAIRS, SUPPORTED_N};
use crate::numth::{is_prime, kronecker};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassnoError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{what} at p = {p}: deferred to sequel")]
    Deferred { what: String, p: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{what} evaluated to {value}, which is not a nonnegative integer")]
    NonIntegral { what: String, value: String },
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

/// `h(O)` together with its split by unit group `C₂`, `C₄`, `C₆`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClassNumberBundle {
    pub h: u64,
    pub h1: u64,
    pub h2: u64,
    pub h3: u64,
}

/// The assembled census for one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub p: u64,
    /// All 19 types; `None` marks a term deferred at this prime.
    pub terms: BTreeMap<NTuple, Option<u64>>,
    pub total: Option<u64>,
    pub assumptions_ok: bool,
    pub notes: Vec<String>,
}

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn chi(d: i64, p: u64) -> Q {
    q(kronecker(d, p as i64).expect("nonzero modulus").value())
}

fn to_count(what: &str, x: Q) -> Result<u64, ClassnoError> {
    if x.is_integer() && !x.is_negative() {
        if let Some(v) = x.to_integer().to_u64() {
            return Ok(v);
        }
    }
    Err(ClassnoError::NonIntegral { what: what.to_string(), value: x.to_string() })
}

fn require_prime(p: u64) -> Result<(), ClassnoError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(ClassnoError::NotPrime(p))
    }
}

fn deferred(what: impl Into<String>, p: u64) -> ClassnoError {
    ClassnoError::Deferred { what: what.into(), p }
}

fn h_maximal_q(p: u64) -> Q {
    let (c3, c4) = (chi(-3, p), chi(-4, p));
    frac(p as i64 - 1, 12) + frac(1, 3) * (q(1) - c3) + frac(1, 4) * (q(1) - c4)
}

/// Class number of a maximal order in `D_{p,∞}`.
pub fn h_maximal(p: u64) -> Result<u64, ClassnoError> {
    require_prime(p)?;
    to_count("h(O)", h_maximal_q(p))
}

/// Class number of an Eichler order of prime level `ℓ ≠ p`.
pub fn h_eichler_pizer(p: u64, ell: u64) -> Result<u64, ClassnoError> {
    require_prime(p)?;
    require_prime(ell)?;
    if ell == p {
        return Err(ClassnoError::InvalidArgument(format!("level {ell} equals p")));
    }
    let (c3, c4) = (chi(-3, p), chi(-4, p));
    let (l3, l4) = (chi(-3, ell), chi(-4, ell));
    let v = frac((p as i64 - 1) * (ell as i64 + 1), 12)
        + frac(1, 3) * (q(1) - c3) * (q(1) + l3)
        + frac(1, 4) * (q(1) - c4) * (q(1) + l4);
    to_count("h(O^(l))", v)
}

pub fn h123(p: u64) -> Result<ClassNumberBundle, ClassnoError> {
    require_prime(p)?;
    if p < 5 {
        return Err(ClassnoError::InvalidArgument(format!("h1, h2, h3 need p >= 5 (got {p})")));
    }
    let h = h_maximal(p)?;
    let h2 = to_count("h2", frac(1, 2) * (q(1) - chi(-4, p)))?;
    let h3 = to_count("h3", frac(1, 2) * (q(1) - chi(-3, p)))?;
    Ok(ClassNumberBundle { h, h1: h - h2 - h3, h2, h3 })
}

/// Class number of the order `O₈(1,2)`.
#[allow(non_snake_case)]
pub fn h_O8(p: u64) -> Result<u64, ClassnoError> {
    require_prime(p)?;
    if p == 2 {
        return Err(ClassnoError::InvalidArgument("h(O8) needs p odd".into()));
    }
    let t = q(p as i64) - chi(-4, p);
    to_count("h(O8)", &t * &t / q(16))
}

/// Class number of the order `O₁₆(1,2)`.
#[allow(non_snake_case)]
pub fn h_O16(p: u64) -> Result<u64, ClassnoError> {
    require_prime(p)?;
    match p {
        2 => Err(ClassnoError::InvalidArgument("h(O16) needs p odd".into())),
        3 => Ok(1),
        _ => {
            let pm = p as i64 - 1;
            let v = frac(pm * pm, 24)
                + frac(1, 4) * (q(1) - chi(-4, p))
                + frac(2, 3) * (q(1) - chi(-3, p));
            to_count("h(O16)", v)
        }
    }
}

/// `o(n)` for a single cyclotomic type.
pub fn o_isotypic(n: u32, p: u64) -> Result<u64, ClassnoError> {
    require_prime(p)?;
    if !SUPPORTED_N.contains(&n) {
        return Err(CycloError::UnsupportedN(n).into());
    }
    let what = format!("o({n})");
    match n {
        1 | 2 => Ok(1),
        3 | 6 => {
            if p == 3 {
                return Err(deferred(what, p));
            }
            to_count(&what, q(2) - chi(-3, p))
        }
        4 => {
            if p == 2 {
                return Err(deferred(what, p));
            }
            to_count(&what, q(2) - chi(-4, p))
        }
        5 | 10 => Ok(match p % 5 {
            0 => 1,
            1 => 0,
            4 => 4,
            _ => 2,
        }),
        8 => Ok(match p % 8 {
            _ if p == 2 => 1,
            1 => 0,
            _ => 4,
        }),
        12 => Ok(match p % 12 {
            _ if p == 2 || p == 3 => 3,
            1 => 0,
            _ => 4,
        }),
        _ => unreachable!(),
    }
}

/// The tabulated representative of a pair type under `†`.
pub fn normalize_pair(n_tuple: &NTuple) -> Result<NTuple, ClassnoError> {
    if n_tuple.len() != 2 {
        return Err(CycloError::UnsupportedTuple(n_tuple.clone()).into());
    }
    let is_tab = |t: &NTuple| INDEX_PAIRS.iter().any(|&(a, b)| t.entries() == [a, b]);
    if is_tab(n_tuple) {
        return Ok(n_tuple.clone());
    }
    let d = dagger(n_tuple);
    if is_tab(&d) {
        Ok(d)
    } else {
        Err(CycloError::UnsupportedTuple(n_tuple.clone()).into())
    }
}

/// `o(n1, n2)` for a pair type, reduced to its tabulated representative.
pub fn o_pair(n_tuple: &NTuple, p: u64) -> Result<u64, ClassnoError> {
    require_prime(p)?;
    let t = normalize_pair(n_tuple)?;
    let what = format!("o{n_tuple}");
    let (c3, c4) = (chi(-3, p), chi(-4, p));
    let (u3, u4) = (q(1) - &c3, q(1) - &c4);
    let pq = q(p as i64);
    let v = match t.entries() {
        [1, 2] => match p {
            2 => return Err(deferred(what, p)),
            3 => return Ok(3),
            _ => {
                let pm = q(p as i64 - 1);
                &pm * &pm / q(9)
                    + (&pq + q(15)) / q(18) * &u3
                    + (&pq + q(2)) / q(6) * &u4
                    + frac(1, 6) * &u3 * &u4
            }
        },
        [2, 3] => {
            if p == 3 {
                return Err(deferred(what, p));
            }
            &u3 * h_maximal_q(p)
        }
        [2, 4] => {
            if p == 2 {
                return Err(deferred(what, p));
            }
            ((&pq + q(3)) / q(3) - &c3 / q(3)) * &u4
        }
        [2, 6] => {
            if p == 3 {
                return Err(deferred(what, p));
            }
            ((q(5) * &pq + q(18)) / q(12) + &c3 / q(3) - &c4 / q(4)) * &u3
        }
        [3, 4] => {
            if p <= 3 {
                return Err(deferred(what, p));
            }
            &u3 * &u4
        }
        [3, 6] => {
            if p <= 3 {
                return Err(deferred(what, p));
            }
            q(2) * &u3 * &u3
        }
        _ => unreachable!("normalize_pair returns a tabulated pair"),
    };
    to_count(&what, v)
}

/// The 19 types entering the census, singles first, then pairs.
pub fn census_types() -> Vec<NTuple> {
    let mut out: Vec<NTuple> = SUPPORTED_N.iter().map(|&n| NTuple::single(n)).collect();
    for (a, b) in [(1, 2), (1, 3), (1, 4), (1, 6), (2, 3), (2, 4), (2, 6), (3, 4), (3, 6), (4, 6)] {
        out.push(NTuple::pair(a, b));
    }
    out
}

fn term(t: &NTuple, p: u64) -> Result<u64, ClassnoError> {
    match t.entries() {
        [n] => o_isotypic(*n, p),
        _ => o_pair(t, p),
    }
}

/// `H(2, D_{p,∞})` term by term. For `p ∈ {2, 3, 5}` only the terms with a
/// known value are filled in and the total is left out.
pub fn census(p: u64) -> Result<CensusReport, ClassnoError> {
    require_prime(p)?;
    let assumptions_ok = p > 5;
    let mut terms = BTreeMap::new();
    let mut notes = Vec::new();
    for t in census_types() {
        match term(&t, p) {
            Ok(v) => {
                terms.insert(t, Some(v));
            }
            Err(ClassnoError::Deferred { .. }) => {
                notes.push(format!("o{t} deferred at p = {p}"));
                terms.insert(t, None);
            }
            Err(e) => return Err(e),
        }
    }
    if p != 2 && p % 4 != 3 {
        notes.push("o(2,4) = o(1,4) = 0 since p is not 3 mod 4".into());
    }
    let total = if assumptions_ok {
        let values: Option<Vec<u64>> = terms.values().copied().collect();
        Some(values.expect("all terms defined for p > 5").iter().sum())
    } else {
        notes.push(format!("full census deferred (ramified small prime p = {p})"));
        None
    };
    Ok(CensusReport { p, terms, total, assumptions_ok, notes })
}

/// `H(2, D_{p,∞}) · 9 / p²`, which tends to 1.
pub fn asymptotic_ratio(p: u64) -> Result<BigRational, ClassnoError> {
    let report = census(p)?;
    let total = report.total.ok_or_else(|| deferred("H(2, D)", p))?;
    let pp = BigInt::from(p) * BigInt::from(p);
    Ok(BigRational::new(BigInt::from(total) * 9, pp))
}
