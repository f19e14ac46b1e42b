//! Exact short-vector enumeration for the reduced norm form of a lattice.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::quatalg::linalg::RatMatrix;
use crate::quatalg::{Lattice4, QuatElement};

type Q = BigRational;
type Coeffs = [BigInt; 4];

fn form(m: &RatMatrix, u: &Coeffs, v: &Coeffs) -> Q {
    let mut s = Q::zero();
    for i in 0..4 {
        if u[i].is_zero() {
            continue;
        }
        let mut row = Q::zero();
        for j in 0..4 {
            if !v[j].is_zero() {
                row += &m[i][j] * Q::from_integer(v[j].clone());
            }
        }
        s += Q::from_integer(u[i].clone()) * row;
    }
    s
}

fn round(x: &Q) -> BigInt {
    (x + Q::new(1.into(), 2.into())).floor().to_integer()
}

/// Gram–Schmidt data of the rows of `b` under the form `m`.
fn gso(m: &RatMatrix, b: &[Coeffs; 4]) -> ([[Q; 4]; 4], [Q; 4]) {
    let mut mu: [[Q; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| Q::zero()));
    let mut bstar: [Q; 4] = std::array::from_fn(|_| Q::zero());
    // r[i][j] = <b_i, b*_j>
    let mut r: [[Q; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| Q::zero()));
    for i in 0..4 {
        for j in 0..=i {
            let mut v = form(m, &b[i], &b[j]);
            for k in 0..j {
                v -= &mu[j][k] * &r[i][k];
            }
            r[i][j] = v;
            if j < i {
                mu[i][j] = &r[i][j] / &bstar[j];
            }
        }
        bstar[i] = r[i][i].clone();
    }
    (mu, bstar)
}

/// LLL reduction (`δ = 3/4`) of the standard basis of `Z⁴` under the
/// positive definite form `m`; returns the transformation rows.
pub(crate) fn lll(m: &RatMatrix) -> [Coeffs; 4] {
    let mut b: [Coeffs; 4] = std::array::from_fn(|r| {
        std::array::from_fn(|c| if r == c { BigInt::one() } else { BigInt::zero() })
    });
    let delta = Q::new(3.into(), 4.into());
    let mut k = 1;
    while k < 4 {
        for j in (0..k).rev() {
            let (mu, _) = gso(m, &b);
            let r = round(&mu[k][j]);
            if !r.is_zero() {
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= &r * y;
                }
            }
        }
        let (mu, bstar) = gso(m, &b);
        let lhs = &bstar[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &bstar[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    b
}

/// Enumerator for `{x ∈ L : Nrd(x) ≤ bound}`.
pub(crate) struct NormEnumerator {
    #[cfg_attr(not(test), allow(dead_code))]
    basis: [QuatElement; 4],
    /// `Nrd(Σ x_i b_i) = Σ_i q_ii (x_i + Σ_{j>i} q_ij x_j)²`.
    q: RatMatrix,
}

impl NormEnumerator {
    pub(crate) fn new(l: &Lattice4) -> Self {
        let half = Q::new(1.into(), 2.into());
        let g = l.gram();
        let m: RatMatrix = std::array::from_fn(|r| std::array::from_fn(|c| &g[r][c] * &half));
        let u = lll(&m);
        let basis = std::array::from_fn(|r| l.element(&u[r]));
        let reduced: RatMatrix = std::array::from_fn(|r| std::array::from_fn(|c| form(&m, &u[r], &u[c])));
        let mut q = reduced;
        for i in 0..4 {
            for j in i + 1..4 {
                q[j][i] = q[i][j].clone();
                q[i][j] = &q[i][j] / &q[i][i];
            }
            for k in i + 1..4 {
                for l in k..4 {
                    let v = &q[k][i] * &q[i][l];
                    q[k][l] -= v;
                }
            }
        }
        NormEnumerator { basis, q }
    }

    #[cfg_attr(not(test), allow(dead_code))]
    pub(crate) fn element(&self, x: &Coeffs) -> QuatElement {
        let mut acc = QuatElement::zero();
        for (c, b) in x.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = acc.add(&b.scale_int(c));
            }
        }
        acc
    }

    /// Calls `f` on the coordinates of every nonzero `x` with `Nrd(x) ≤ bound`
    /// together with its norm, until `f` breaks.
    pub(crate) fn for_each<B>(
        &self,
        bound: &Q,
        mut f: impl FnMut(&Coeffs, Q) -> ControlFlow<B>,
    ) -> Option<B> {
        let mut x: Coeffs = std::array::from_fn(|_| BigInt::zero());
        match self.recurse(3, bound, bound.clone(), &mut x, &mut f) {
            ControlFlow::Break(b) => Some(b),
            ControlFlow::Continue(()) => None,
        }
    }

    fn recurse<B>(
        &self,
        i: usize,
        bound: &Q,
        budget: Q,
        x: &mut Coeffs,
        f: &mut impl FnMut(&Coeffs, Q) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let q = &self.q;
        let mut center = Q::zero();
        for j in i + 1..4 {
            center -= &q[i][j] * Q::from_integer(x[j].clone());
        }
        let r = &budget / &q[i][i];
        let s: BigInt = Roots::sqrt(&r.floor().to_integer()) + 1;
        let lo = center.floor().to_integer() - &s;
        let hi = center.ceil().to_integer() + &s;
        let mut xi = lo;
        while xi <= hi {
            let d = Q::from_integer(xi.clone()) - &center;
            let used = &q[i][i] * &d * &d;
            if used <= budget {
                x[i] = xi.clone();
                let rest = &budget - &used;
                if i == 0 {
                    if x.iter().any(|c| !c.is_zero()) {
                        f(x, bound - &rest)?;
                    }
                } else {
                    self.recurse(i - 1, bound, rest, x, f)?;
                }
            }
            xi += 1;
        }
        x[i] = BigInt::zero();
        ControlFlow::Continue(())
    }
}

/// Number of `x ∈ L` with `Nrd(x) = target`.
pub(crate) fn count_norm(l: &Lattice4, target: &Q) -> usize {
    let e = NormEnumerator::new(l);
    let mut n = 0usize;
    e.for_each::<()>(target, |_, norm| {
        if &norm == target {
            n += 1;
        }
        ControlFlow::Continue(())
    });
    n
}

/// Whether some `x ∈ L` has `Nrd(x) = target`.
pub(crate) fn has_norm(l: &Lattice4, target: &Q) -> bool {
    let e = NormEnumerator::new(l);
    e.for_each(target, |_, norm| {
        if &norm == target {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })
    .is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quatalg::{make_algebra, maximal_order};
    use num_traits::Signed;

    #[test]
    fn lll_output_is_reduced_and_unimodular() {
        let o = maximal_order(&make_algebra(101).unwrap()).unwrap();
        let g = o.lattice().gram();
        let u = lll(&g);
        let um: RatMatrix = u.clone().map(|r| r.map(Q::from_integer));
        assert_eq!(crate::quatalg::linalg::det(&um).abs(), Q::one());
        let (mu, _) = gso(&g, &u);
        for i in 0..4 {
            for j in 0..i {
                assert!(mu[i][j].abs() <= Q::new(1.into(), 2.into()));
            }
        }
    }

    #[test]
    fn enumeration_matches_box_search() {
        for p in [2u64, 3, 11, 13, 17] {
            let o = maximal_order(&make_algebra(p).unwrap()).unwrap();
            let l = o.lattice();
            let alg = l.algebra();
            let bound = Q::from_integer(6.into());
            let e = NormEnumerator::new(l);
            let mut found = Vec::new();
            e.for_each::<()>(&bound, |x, n| {
                let el = e.element(x);
                assert_eq!(alg.reduced_norm(&el), n);
                found.push(el);
                ControlFlow::Continue(())
            });
            // brute force in the coordinates 1, i, j, ij with denominator d
            let d = l.denominator().clone();
            let coef = [Q::one(), -alg.a(), -alg.b(), alg.a() * alg.b()];
            let ranges: Vec<i64> = coef
                .iter()
                .map(|c| {
                    let r = (&bound / c) * Q::from_integer(&d * &d);
                    let s: i64 = r.floor().to_integer().sqrt().try_into().unwrap();
                    s + 1
                })
                .collect();
            let mut brute = 0;
            let den: i64 = (&d).try_into().unwrap();
            for a in -ranges[0]..=ranges[0] {
                for b in -ranges[1]..=ranges[1] {
                    for c in -ranges[2]..=ranges[2] {
                        for e4 in -ranges[3]..=ranges[3] {
                            if (a, b, c, e4) == (0, 0, 0, 0) {
                                continue;
                            }
                            let x = QuatElement::from_fracs([(a, den), (b, den), (c, den), (e4, den)]);
                            if alg.reduced_norm(&x) <= bound && l.contains(&x) {
                                brute += 1;
                            }
                        }
                    }
                }
            }
            assert_eq!(found.len(), brute, "p = {p}");
        }
    }

    #[test]
    fn norm_counts() {
        let hurwitz = maximal_order(&make_algebra(2).unwrap()).unwrap();
        assert_eq!(count_norm(hurwitz.lattice(), &Q::one()), 24);
        assert_eq!(count_norm(hurwitz.lattice(), &Q::from_integer(2.into())), 24);
        assert!(has_norm(hurwitz.lattice(), &Q::from_integer(3.into())));
        let o = maximal_order(&make_algebra(3).unwrap()).unwrap();
        assert_eq!(count_norm(o.lattice(), &Q::one()), 12);
    }
}
