//! Cyclotomic data behind the census: splitting of `p` in `K_n = Q(ζ_n)`,
//! the embedding degree `e(n)`, admissible pairs, the `†` involution and the
//! conductor index of `A_n̄ = Z[T]/(Φ_{n1} Φ_{n2})` in its normalization.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::numth::{cyclotomic_poly, euler_phi, is_prime, kronecker, IntPolynomial};

/// The `n` with `φ(n) ≤ 4`, which are the only ones admitting `e(n) ≤ 2`.
pub const SUPPORTED_N: [u32; 9] = [1, 2, 3, 4, 5, 6, 8, 10, 12];

/// Pairs for which the conductor index is tabulated.
pub const INDEX_PAIRS: [(u32, u32); 6] = [(1, 2), (2, 3), (2, 4), (2, 6), (3, 4), (3, 6)];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    #[error("n = {0} is not supported (need φ(n) ≤ 4)")]
    UnsupportedN(u32),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("tuple entries must be positive and strictly increasing: {0:?}")]
    InvalidTuple(Vec<u32>),
    #[error("tuple {0} is not one of the tabulated pairs")]
    UnsupportedTuple(NTuple),
    #[error("admissible pairs are only enumerated for d ≤ 2 (got d = {0})")]
    UnsupportedDimension(u32),
}

/// Strictly increasing tuple of positive integers `(n_1 < … < n_r)`.
///
/// Ordered first by length and then lexicographically, so single entries
/// sort before pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NTuple(Vec<u32>);

impl NTuple {
    pub fn new(entries: Vec<u32>) -> Result<Self, CycloError> {
        let ok = !entries.is_empty()
            && entries[0] >= 1
            && entries.windows(2).all(|w| w[0] < w[1]);
        if ok {
            Ok(NTuple(entries))
        } else {
            Err(CycloError::InvalidTuple(entries))
        }
    }

    pub fn single(n: u32) -> Self {
        NTuple::new(vec![n]).expect("n >= 1")
    }

    pub fn pair(n1: u32, n2: u32) -> Self {
        NTuple::new(vec![n1, n2]).expect("n1 < n2")
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Comma-joined entries, e.g. `"1,2"`.
    pub fn key(&self) -> String {
        self.0
            .iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl Ord for NTuple {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for NTuple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.key())
    }
}

/// A pair `(n̄, m̄)` with `Σ m_i e(n_i) = d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissiblePair {
    pub n_tuple: NTuple,
    pub m_tuple: Vec<u32>,
}

/// How `p` decomposes in `K_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SplittingType {
    Rational,
    QuadraticSplit,
    QuadraticInert,
    QuadraticRamified,
    QuarticSplitCompletely,
    QuarticOther,
    QuarticRamified,
}

fn check_supported(n: u32) -> Result<(), CycloError> {
    if SUPPORTED_N.contains(&n) {
        Ok(())
    } else {
        Err(CycloError::UnsupportedN(n))
    }
}

fn check_prime(p: u64) -> Result<(), CycloError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(CycloError::NotPrime(p))
    }
}

/// Conductor of `Q(ζ_n)`: `n/2` when `n ≡ 2 (mod 4)`, else `n`.
fn conductor(n: u32) -> u32 {
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

pub fn splitting_type(n: u32, p: u64) -> Result<SplittingType, CycloError> {
    check_supported(n)?;
    check_prime(p)?;
    let f = conductor(n) as u64;
    let ramified = f % p == 0;
    Ok(match euler_phi(n as u64) {
        1 => SplittingType::Rational,
        2 => {
            let disc = if n == 4 { -4 } else { -3 };
            if ramified {
                SplittingType::QuadraticRamified
            } else if kronecker(disc, p as i64).unwrap().value() == 1 {
                SplittingType::QuadraticSplit
            } else {
                SplittingType::QuadraticInert
            }
        }
        _ => {
            if ramified {
                SplittingType::QuarticRamified
            } else if p % f == 1 {
                SplittingType::QuarticSplitCompletely
            } else {
                SplittingType::QuarticOther
            }
        }
    })
}

/// Smallest `e` with an embedding `K_n ↪ Mat_e(D_{p,∞})`.
///
/// When `p` splits completely in a quartic `K_n` this returns 4; callers only
/// rely on it exceeding 2.
pub fn e_of_n(n: u32, p: u64) -> Result<u32, CycloError> {
    Ok(match splitting_type(n, p)? {
        SplittingType::Rational => 1,
        SplittingType::QuadraticSplit => 2,
        SplittingType::QuadraticInert | SplittingType::QuadraticRamified => 1,
        SplittingType::QuarticSplitCompletely => 4,
        SplittingType::QuarticOther | SplittingType::QuarticRamified => 2,
    })
}

/// All `d`-admissible pairs with entries from [`SUPPORTED_N`], sorted.
pub fn admissible_pairs(d: u32, p: u64) -> Result<Vec<AdmissiblePair>, CycloError> {
    if d == 0 || d > 2 {
        return Err(CycloError::UnsupportedDimension(d));
    }
    check_prime(p)?;
    let es: Vec<(u32, u32)> = SUPPORTED_N
        .iter()
        .map(|&n| e_of_n(n, p).map(|e| (n, e)))
        .collect::<Result<_, _>>()?;

    let mut out = Vec::new();
    let mut ns = Vec::new();
    let mut ms = Vec::new();
    extend_pairs(&es, 0, d, &mut ns, &mut ms, &mut out);
    out.sort();
    Ok(out)
}

fn extend_pairs(
    es: &[(u32, u32)],
    start: usize,
    remaining: u32,
    ns: &mut Vec<u32>,
    ms: &mut Vec<u32>,
    out: &mut Vec<AdmissiblePair>,
) {
    if remaining == 0 {
        if !ns.is_empty() {
            out.push(AdmissiblePair {
                n_tuple: NTuple(ns.clone()),
                m_tuple: ms.clone(),
            });
        }
        return;
    }
    for (idx, &(n, e)) in es.iter().enumerate().skip(start) {
        let mut m = 1;
        while m * e <= remaining {
            ns.push(n);
            ms.push(m);
            extend_pairs(es, idx + 1, remaining - m * e, ns, ms, out);
            ns.pop();
            ms.pop();
            m += 1;
        }
    }
}

/// The involution induced by `x ↦ -x`: odd `n` doubles, `n ≡ 2 (mod 4)`
/// halves, multiples of 4 stay; entries are then re-sorted.
pub fn dagger(n_tuple: &NTuple) -> NTuple {
    let mut entries: Vec<u32> = n_tuple
        .entries()
        .iter()
        .map(|&n| {
            if n % 2 == 1 {
                2 * n
            } else if n % 4 == 0 {
                n
            } else {
                n / 2
            }
        })
        .collect();
    entries.sort_unstable();
    NTuple(entries)
}

/// Resultant of two polynomials via the Sylvester determinant.
pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> BigInt {
    let (m, n) = match (f.degree(), g.degree()) {
        (Some(m), Some(n)) => (m, n),
        _ => return BigInt::zero(),
    };
    let size = m + n;
    if size == 0 {
        return BigInt::from(1);
    }
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for row in 0..n {
        for (k, c) in f.coeffs().iter().rev().enumerate() {
            mat[row][row + k] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in g.coeffs().iter().rev().enumerate() {
            mat[n + row][row + k] = c.clone();
        }
    }
    bareiss_det(mat)
}

/// Fraction-free Gaussian elimination.
pub(crate) fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// `[O_{K_n̄} : A_n̄] = |Z[T]/(Φ_{n1}, Φ_{n2})| = |Res(Φ_{n1}, Φ_{n2})|` for the
/// tabulated pairs.
pub fn index_ok_over_a(n_tuple: &NTuple) -> Result<u64, CycloError> {
    let e = n_tuple.entries();
    if e.len() != 2 || !INDEX_PAIRS.contains(&(e[0], e[1])) {
        return Err(CycloError::UnsupportedTuple(n_tuple.clone()));
    }
    let res = resultant(
        &cyclotomic_poly(e[0] as u64),
        &cyclotomic_poly(e[1] as u64),
    );
    Ok(res.abs().to_u64().expect("small resultant"))
}
