//! Small exact linear algebra over `Z` and `Q` in dimension 4.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntRow = [BigInt; 4];
pub type RatMatrix = [[BigRational; 4]; 4];

/// Row-style Hermite normal form of a full-rank integer generating set.
///
/// The result is upper triangular with positive pivots and entries above
/// each pivot reduced into `[0, pivot)`. Returns `None` if the rows do not
/// span a rank-4 lattice.
pub fn hnf(rows: Vec<IntRow>) -> Option<[IntRow; 4]> {
    let mut rows: Vec<IntRow> = rows
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    for col in 0..4 {
        loop {
            let pivot = (col..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .min_by(|&r, &s| rows[r][col].abs().cmp(&rows[s][col].abs()))?;
            rows.swap(col, pivot);
            let mut done = true;
            for r in col + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = rows[r][col].div_floor(&rows[col][col]);
                let (head, tail) = rows.split_at_mut(r);
                sub_multiple(&mut tail[0], &head[col], &q);
                if !tail[0][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[col][col].is_negative() {
            for x in rows[col].iter_mut() {
                *x = -&*x;
            }
        }
        for r in 0..col {
            let q = rows[r][col].div_floor(&rows[col][col]);
            if !q.is_zero() {
                let (head, tail) = rows.split_at_mut(col);
                sub_multiple(&mut head[r], &tail[0], &q);
            }
        }
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    debug_assert_eq!(rows.len(), 4);
    let mut it = rows.into_iter();
    Some(std::array::from_fn(|_| it.next().unwrap()))
}

fn sub_multiple(target: &mut IntRow, row: &IntRow, q: &BigInt) {
    for (t, x) in target.iter_mut().zip(row) {
        *t -= q * x;
    }
}

pub fn det(m: &RatMatrix) -> BigRational {
    let mut a = m.clone();
    let mut d = BigRational::one();
    for c in 0..4 {
        let Some(p) = (c..4).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        for r in c + 1..4 {
            let f = &a[r][c] / &a[c][c];
            for k in c..4 {
                let v = &f * &a[c][k];
                a[r][k] -= v;
            }
        }
    }
    d
}

pub fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    let mut a = m.clone();
    let mut inv: RatMatrix = std::array::from_fn(|r| {
        std::array::from_fn(|c| if r == c { BigRational::one() } else { BigRational::zero() })
    });
    for c in 0..4 {
        let p = (c..4).find(|&r| !a[r][c].is_zero())?;
        a.swap(p, c);
        inv.swap(p, c);
        let s = a[c][c].recip();
        for k in 0..4 {
            a[c][k] *= &s;
            inv[c][k] *= &s;
        }
        for r in 0..4 {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for k in 0..4 {
                let v = &f * &a[c][k];
                a[r][k] -= v;
                let w = &f * &inv[c][k];
                inv[r][k] -= w;
            }
        }
    }
    Some(inv)
}

pub fn transpose(m: &RatMatrix) -> RatMatrix {
    std::array::from_fn(|r| std::array::from_fn(|c| m[c][r].clone()))
}

/// Least common multiple of all denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Gcd of a set of rationals, as a non-negative rational.
pub fn rational_gcd<'a>(xs: impl IntoIterator<Item = &'a BigRational>) -> BigRational {
    let xs: Vec<&BigRational> = xs.into_iter().collect();
    let d = common_denominator(xs.iter().copied());
    let g = xs
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(&(x.numer() * (&d / x.denom()))));
    BigRational::new(g, d)
}
