use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use super::algebra::{QuatElement, QuaternionAlgebra};
use super::linalg::{self, IntRow, RatMatrix};
use super::QuatalgError;

/// A full-rank lattice in a quaternion algebra.
///
/// Stored as `H / d` with `d` minimal and `H` the integer Hermite normal form,
/// so two lattices are equal exactly when their representations are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice4 {
    algebra: Arc<QuaternionAlgebra>,
    denom: BigInt,
    hnf: [IntRow; 4],
}

impl Lattice4 {
    /// The lattice spanned by `gens`, which must have rank 4.
    pub fn from_generators(
        algebra: &Arc<QuaternionAlgebra>,
        gens: &[QuatElement],
    ) -> Result<Self, QuatalgError> {
        let rows: Vec<[BigRational; 4]> = gens.iter().map(|g| g.coords.clone()).collect();
        Self::from_rational_rows(algebra, rows)
    }

    fn from_rational_rows(
        algebra: &Arc<QuaternionAlgebra>,
        rows: Vec<[BigRational; 4]>,
    ) -> Result<Self, QuatalgError> {
        let d = linalg::common_denominator(rows.iter().flatten());
        let int_rows = rows
            .iter()
            .map(|r| std::array::from_fn(|k| (&r[k] * &d).to_integer()))
            .collect();
        let h = linalg::hnf(int_rows).ok_or(QuatalgError::RankDeficient)?;
        let g = h.iter().flatten().fold(d.clone(), |acc, x| acc.gcd(x));
        Ok(Lattice4 {
            algebra: Arc::clone(algebra),
            denom: &d / &g,
            hnf: h.map(|r| r.map(|x| x / &g)),
        })
    }

    pub fn algebra(&self) -> &Arc<QuaternionAlgebra> {
        &self.algebra
    }

    /// Least `d ≥ 1` with `d·L` contained in `Z⁴`.
    pub fn denominator(&self) -> &BigInt {
        &self.denom
    }

    /// Integer HNF rows of `d·L`.
    pub fn hnf_rows(&self) -> &[IntRow; 4] {
        &self.hnf
    }

    pub fn basis(&self) -> [QuatElement; 4] {
        std::array::from_fn(|r| {
            QuatElement::new(std::array::from_fn(|c| {
                BigRational::new(self.hnf[r][c].clone(), self.denom.clone())
            }))
        })
    }

    fn basis_matrix(&self) -> RatMatrix {
        self.basis().map(|b| b.coords)
    }

    /// Integer coordinates of `x` in [`Self::basis`], if `x` lies in the lattice.
    pub fn coordinates(&self, x: &QuatElement) -> Option<[BigInt; 4]> {
        let d = BigRational::from_integer(self.denom.clone());
        let mut c: Vec<BigInt> = Vec::with_capacity(4);
        for j in 0..4 {
            let mut rhs = &x.coords[j] * &d;
            for (i, ci) in c.iter().enumerate() {
                rhs -= BigRational::from_integer(ci * &self.hnf[i][j]);
            }
            let q = rhs / BigRational::from_integer(self.hnf[j][j].clone());
            if !q.is_integer() {
                return None;
            }
            c.push(q.to_integer());
        }
        let mut it = c.into_iter();
        Some(std::array::from_fn(|_| it.next().unwrap()))
    }

    pub fn contains(&self, x: &QuatElement) -> bool {
        self.coordinates(x).is_some()
    }

    pub fn is_subset_of(&self, other: &Lattice4) -> bool {
        self.basis().iter().all(|b| other.contains(b))
    }

    /// Element with the given coordinates in [`Self::basis`].
    pub fn element(&self, coords: &[BigInt; 4]) -> QuatElement {
        let d = BigRational::from_integer(self.denom.clone());
        QuatElement::new(std::array::from_fn(|c| {
            let s: BigInt = (0..4).map(|r| &coords[r] * &self.hnf[r][c]).sum();
            BigRational::from_integer(s) / &d
        }))
    }

    pub fn sum(&self, other: &Lattice4) -> Lattice4 {
        let mut gens = self.basis().to_vec();
        gens.extend(other.basis());
        Self::from_generators(&self.algebra, &gens).expect("sum of full-rank lattices")
    }

    /// Dual lattice with respect to the standard coordinate pairing.
    fn dual(&self) -> Lattice4 {
        let inv = linalg::inverse(&self.basis_matrix()).expect("full rank");
        Self::from_rational_rows(&self.algebra, linalg::transpose(&inv).to_vec())
            .expect("dual of a full-rank lattice")
    }

    pub fn intersect(&self, other: &Lattice4) -> Lattice4 {
        self.dual().sum(&other.dual()).dual()
    }

    /// The lattice spanned by all products `x·y` with `x ∈ self`, `y ∈ other`.
    pub fn product(&self, other: &Lattice4) -> Lattice4 {
        let (a, b) = (self.basis(), other.basis());
        let gens: Vec<QuatElement> = a
            .iter()
            .flat_map(|x| b.iter().map(move |y| (x, y)))
            .map(|(x, y)| self.algebra.mul(x, y))
            .collect();
        Self::from_generators(&self.algebra, &gens).expect("product of full-rank lattices")
    }

    pub fn scale(&self, s: &BigRational) -> Result<Lattice4, QuatalgError> {
        let gens: Vec<QuatElement> = self.basis().iter().map(|b| b.scale(s)).collect();
        Self::from_generators(&self.algebra, &gens)
    }

    pub fn left_mul(&self, x: &QuatElement) -> Result<Lattice4, QuatalgError> {
        let gens: Vec<QuatElement> = self.basis().iter().map(|b| self.algebra.mul(x, b)).collect();
        Self::from_generators(&self.algebra, &gens)
    }

    pub fn right_mul(&self, x: &QuatElement) -> Result<Lattice4, QuatalgError> {
        let gens: Vec<QuatElement> = self.basis().iter().map(|b| self.algebra.mul(b, x)).collect();
        Self::from_generators(&self.algebra, &gens)
    }

    pub fn conj(&self) -> Lattice4 {
        let gens: Vec<QuatElement> = self.basis().iter().map(|b| b.conj()).collect();
        Self::from_generators(&self.algebra, &gens).expect("conjugation preserves rank")
    }

    /// Absolute determinant of the basis matrix.
    pub fn covolume(&self) -> BigRational {
        let p: BigInt = self.hnf.iter().enumerate().map(|(i, r)| r[i].clone()).product();
        BigRational::new(p, self.denom.pow(4))
    }

    /// `[sup : self]` for `self ⊆ sup`.
    pub fn index_in(&self, sup: &Lattice4) -> Result<BigRational, QuatalgError> {
        if !self.is_subset_of(sup) {
            return Err(QuatalgError::NotContained);
        }
        Ok(self.covolume() / sup.covolume())
    }

    /// Gram matrix of `Trd(x·conj(y))` on the basis.
    pub fn gram(&self) -> RatMatrix {
        let b = self.basis();
        std::array::from_fn(|r| std::array::from_fn(|c| self.algebra.trace_pairing(&b[r], &b[c])))
    }

    /// The reduced norm of the lattice: the positive generator of the
    /// fractional ideal of `Q` spanned by `Nrd(x)` for `x` in the lattice.
    pub fn reduced_norm(&self) -> BigRational {
        let b = self.basis();
        let g = self.gram();
        let mut vals: Vec<BigRational> = b.iter().map(|x| self.algebra.reduced_norm(x)).collect();
        for r in 0..4 {
            for c in r + 1..4 {
                vals.push(g[r][c].clone());
            }
        }
        linalg::rational_gcd(&vals)
    }

    /// Total order on representations, used to sort class representatives.
    pub fn canonical_cmp(&self, other: &Lattice4) -> Ordering {
        self.denom.cmp(&other.denom).then_with(|| self.hnf.cmp(&other.hnf))
    }
}

impl fmt::Display for Lattice4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.basis().iter().map(|b| b.to_string()).collect();
        write!(f, "<{}>", rows.join(", "))
    }
}

pub fn lattice_sum(l1: &Lattice4, l2: &Lattice4) -> Lattice4 {
    l1.sum(l2)
}

pub fn lattice_intersect(l1: &Lattice4, l2: &Lattice4) -> Lattice4 {
    l1.intersect(l2)
}

pub fn lattice_product(l1: &Lattice4, l2: &Lattice4) -> Lattice4 {
    l1.product(l2)
}

pub fn lattice_index(sub: &Lattice4, sup: &Lattice4) -> Result<BigRational, QuatalgError> {
    sub.index_in(sup)
}

/// `{x : x·I ⊆ I}`, as an intersection of the lattices `I·b⁻¹`.
pub(crate) fn left_order_lattice(i: &Lattice4) -> Result<Lattice4, QuatalgError> {
    let mut acc: Option<Lattice4> = None;
    for b in i.basis() {
        let l = i.right_mul(&i.algebra.inverse(&b)?)?;
        acc = Some(match acc {
            None => l,
            Some(a) => a.intersect(&l),
        });
    }
    Ok(acc.expect("four basis vectors"))
}

/// `{x : I·x ⊆ I}`.
pub(crate) fn right_order_lattice(i: &Lattice4) -> Result<Lattice4, QuatalgError> {
    let mut acc: Option<Lattice4> = None;
    for b in i.basis() {
        let l = i.left_mul(&i.algebra.inverse(&b)?)?;
        acc = Some(match acc {
            None => l,
            Some(a) => a.intersect(&l),
        });
    }
    Ok(acc.expect("four basis vectors"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quatalg::make_algebra;
    use num_traits::One;
    use proptest::prelude::*;

    fn alg() -> Arc<QuaternionAlgebra> {
        Arc::new(make_algebra(11).unwrap())
    }

    fn lattice(a: &Arc<QuaternionAlgebra>, m: &[[i64; 4]; 4], d: i64) -> Option<Lattice4> {
        let gens: Vec<QuatElement> = m
            .iter()
            .map(|r| QuatElement::from_fracs(r.map(|x| (x, d))))
            .collect();
        Lattice4::from_generators(a, &gens).ok()
    }

    #[test]
    fn denominator_is_minimal() {
        let a = alg();
        let l = lattice(&a, &[[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [1, 1, 1, 1]], 4).unwrap();
        assert_eq!(l.denominator(), &BigInt::from(4));
        let z = lattice(&a, &[[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]], 2).unwrap();
        assert_eq!(z.denominator(), &BigInt::one());
        assert_eq!(z.covolume(), BigRational::one());
    }

    #[test]
    fn coordinates_roundtrip() {
        let a = alg();
        let l = lattice(&a, &[[1, 0, 1, 0], [0, 1, 0, 1], [0, 0, 2, 0], [0, 0, 0, 2]], 2).unwrap();
        let x = QuatElement::from_fracs([(3, 2), (1, 2), (1, 2), (-1, 2)]);
        let c = l.coordinates(&x).unwrap();
        assert_eq!(l.element(&c), x);
        assert!(!l.contains(&QuatElement::from_fracs([(1, 2), (0, 1), (0, 1), (0, 1)])));
    }

    #[test]
    fn intersection_of_scaled_lattices() {
        let a = alg();
        let id = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
        let two = lattice(&a, &id, 1).unwrap().scale(&BigRational::from_integer(2.into())).unwrap();
        let three = lattice(&a, &id, 1).unwrap().scale(&BigRational::from_integer(3.into())).unwrap();
        let six = lattice(&a, &id, 1).unwrap().scale(&BigRational::from_integer(6.into())).unwrap();
        assert_eq!(two.intersect(&three), six);
        assert_eq!(two.sum(&three), lattice(&a, &id, 1).unwrap());
    }

    fn lat_strategy() -> impl Strategy<Value = ([[i64; 4]; 4], i64)> {
        (prop::array::uniform4(prop::array::uniform4(-6i64..7)), 1i64..5)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn sum_and_intersection_laws(x in lat_strategy(), y in lat_strategy(), z in lat_strategy()) {
            let a = alg();
            let (Some(l1), Some(l2), Some(l3)) =
                (lattice(&a, &x.0, x.1), lattice(&a, &y.0, y.1), lattice(&a, &z.0, z.1))
            else {
                return Ok(());
            };
            prop_assert_eq!(l1.sum(&l2), l2.sum(&l1));
            prop_assert_eq!(l1.intersect(&l2), l2.intersect(&l1));
            prop_assert_eq!(l1.sum(&l1), l1.clone());
            prop_assert_eq!(l1.intersect(&l1), l1.clone());
            prop_assert_eq!(l1.sum(&l2).sum(&l3), l1.sum(&l2.sum(&l3)));
            prop_assert_eq!(l1.intersect(&l2).intersect(&l3), l1.intersect(&l2.intersect(&l3)));
            let meet = l1.intersect(&l2);
            let join = l1.sum(&l2);
            prop_assert!(meet.is_subset_of(&l1) && meet.is_subset_of(&l2));
            prop_assert!(l1.is_subset_of(&join) && l2.is_subset_of(&join));
            // [L1+L2 : L1] = [L2 : L1∩L2]
            prop_assert_eq!(l1.index_in(&join).unwrap(), meet.index_in(&l2).unwrap());
        }
    }
}
