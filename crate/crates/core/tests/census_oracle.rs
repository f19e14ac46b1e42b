//! Rebuilds `H(2, D_{p,∞})` from enumerated class numbers and compares with
//! the closed-form census.

use ssgl2::classno::census;
use ssgl2::cyclo::NTuple;
use ssgl2::oracle::{double_coset_table, h123_bruteforce, h_eichler_bruteforce, EnumConfig};

/// Legendre symbol by searching for a square root, for odd primes `p > 3`.
fn legendre(a: i64, p: u64) -> i64 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        0
    } else if (1..p).any(|x| x * x % p == a) {
        1
    } else {
        -1
    }
}

#[test]
fn census_from_enumeration() {
    let cfg = EnumConfig::default();
    let c = double_coset_table().entries;
    for p in [7u64, 11, 13, 17, 19, 23, 29, 31] {
        let (c3, c4) = (legendre(-3, p), legendre(-4, p));
        let b = h123_bruteforce(p, &cfg).unwrap();
        let h = b.h as i64;
        let e2 = h_eichler_bruteforce(p, 2, &cfg).unwrap() as i64;
        let e3 = h_eichler_bruteforce(p, 3, &cfg).unwrap() as i64;
        let hs = [b.h1 as i64, b.h2 as i64, b.h3 as i64];
        let mut o16 = 0;
        for i in 0..3 {
            for j in 0..3 {
                o16 += hs[i] * hs[j] * c[i][j] as i64;
            }
        }
        let o12 = h * h + e2 * e2 + o16;
        let o23 = (1 - c3) * h;
        let o24 = if p % 4 == 3 { 2 * h + 2 * e2 } else { 0 };
        let o26 = if p % 3 == 2 { 2 * h + 2 * e3 } else { 0 };
        let o34 = (1 - c3) * (1 - c4);
        let o36 = 2 * (1 - c3) * (1 - c3);
        let o3 = 2 - c3;
        let o4 = 2 - c4;
        let o5 = [0, 0, 2, 2, 4][(p % 5) as usize];
        let o8 = if p % 8 == 1 { 0 } else { 4 };
        let o12s = if p % 12 == 1 { 0 } else { 4 };
        let total = 2 + 2 * o3 + o4 + 2 * o5 + o8 + o12s
            + o12 + 2 * o23 + 2 * o24 + 2 * o26 + 2 * o34 + o36;

        let r = census(p).unwrap();
        assert_eq!(r.total, Some(total as u64), "p = {p}");
        assert_eq!(r.terms[&NTuple::pair(1, 2)], Some(o12 as u64), "p = {p}");
        assert_eq!(r.terms[&NTuple::pair(2, 4)], Some(o24 as u64), "p = {p}");
        assert_eq!(r.terms[&NTuple::pair(2, 6)], Some(o26 as u64), "p = {p}");
    }
}
