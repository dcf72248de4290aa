//! The rank-5 nilpotent group `N = <b1, b2> x| <a1, a2, a3>`.
//!
//! The kernel `<a1, a2, a3>` is free abelian of rank 3; `a1` and `a2`
//! are central, and the only nontrivial relations are
//! `[a3, b1] = a1` and `[a3, b2] = a2`. Elements are kept in the normal
//! form `b1^{m1} b2^{m2} a1^{k1} a2^{k2} a3^{k3}`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linear::UnimodularMatrix;

use super::triangular::TriangularElement;

/// Element of `N` in normal form `b1^{m1} b2^{m2} a1^{k1} a2^{k2} a3^{k3}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NElement {
    m1: BigInt,
    m2: BigInt,
    k1: BigInt,
    k2: BigInt,
    k3: BigInt,
}

impl NElement {
    pub fn new(m1: BigInt, m2: BigInt, k1: BigInt, k2: BigInt, k3: BigInt) -> Self {
        NElement { m1, m2, k1, k2, k3 }
    }

    pub fn identity() -> Self {
        NElement::new(
            BigInt::zero(),
            BigInt::zero(),
            BigInt::zero(),
            BigInt::zero(),
            BigInt::zero(),
        )
    }

    pub fn m1(&self) -> &BigInt {
        &self.m1
    }

    pub fn m2(&self) -> &BigInt {
        &self.m2
    }

    pub fn k(&self) -> [&BigInt; 3] {
        [&self.k1, &self.k2, &self.k3]
    }

    pub fn is_identity(&self) -> bool {
        self.m1.is_zero()
            && self.m2.is_zero()
            && self.k1.is_zero()
            && self.k2.is_zero()
            && self.k3.is_zero()
    }

    /// Normal-form product: moving `a3^{k3}` of the left factor past the
    /// `b`-part of the right factor emits `a1^{k3 m1'} a2^{k3 m2'}`.
    pub fn mul(&self, other: &Self) -> Self {
        NElement {
            m1: &self.m1 + &other.m1,
            m2: &self.m2 + &other.m2,
            k1: &self.k1 + &other.k1 + &self.k3 * &other.m1,
            k2: &self.k2 + &other.k2 + &self.k3 * &other.m2,
            k3: &self.k3 + &other.k3,
        }
    }

    pub fn inverse(&self) -> Self {
        NElement {
            m1: -&self.m1,
            m2: -&self.m2,
            k1: &self.k3 * &self.m1 - &self.k1,
            k2: &self.k3 * &self.m2 - &self.k2,
            k3: -&self.k3,
        }
    }

    /// Action of conjugation on kernel coordinates `(k1, k2, k3)`:
    /// `g^{-1} h g` has coordinates `phi(g) * coords(h)` with
    /// `phi(g) = I + m1 E_{13} + m2 E_{23}`, depending only on the
    /// `b`-part of `g`.
    pub fn conj_representation(&self) -> UnimodularMatrix {
        let rows = vec![
            vec![BigInt::one(), BigInt::zero(), self.m1.clone()],
            vec![BigInt::zero(), BigInt::one(), self.m2.clone()],
            vec![BigInt::zero(), BigInt::zero(), BigInt::one()],
        ];
        UnimodularMatrix::new(rows).expect("upper unitriangular matrices are unimodular")
    }

    /// Faithful image in the 4x4 lower unitriangular group under
    /// `b1 -> E_{32}, b2 -> E_{31}, a1 -> E_{42}, a2 -> E_{41},
    /// a3 -> E_{43}`. The image matrix carries the exponents directly as
    /// entries, and matrix multiplication reproduces the normal-form
    /// product.
    pub fn triangular_form(&self) -> TriangularElement {
        let mut rows: Vec<Vec<BigInt>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        rows[2][0] = self.m2.clone();
        rows[2][1] = self.m1.clone();
        rows[3][0] = self.k2.clone();
        rows[3][1] = self.k1.clone();
        rows[3][2] = self.k3.clone();
        TriangularElement::new(rows).expect("image is lower unitriangular by construction")
    }

    /// Coordinates `(k1, k2, k3)` when the element lies in the kernel
    /// `<a1, a2, a3>`.
    pub fn kernel_coordinates(&self) -> Option<Vec<BigInt>> {
        if self.m1.is_zero() && self.m2.is_zero() {
            Some(vec![self.k1.clone(), self.k2.clone(), self.k3.clone()])
        } else {
            None
        }
    }

    /// Image `(m1, m2)` in the abelian quotient by the kernel.
    pub fn quotient_coordinates(&self) -> Vec<BigInt> {
        vec![self.m1.clone(), self.m2.clone()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(m1: i64, m2: i64, k1: i64, k2: i64, k3: i64) -> NElement {
        NElement::new(
            BigInt::from(m1),
            BigInt::from(m2),
            BigInt::from(k1),
            BigInt::from(k2),
            BigInt::from(k3),
        )
    }

    #[test]
    fn defining_relations_hold() {
        let b1 = el(1, 0, 0, 0, 0);
        let b2 = el(0, 1, 0, 0, 0);
        let a3 = el(0, 0, 0, 0, 1);
        // [a3, b1] = a3^{-1} b1^{-1} a3 b1 = a1.
        let comm1 = a3
            .inverse()
            .mul(&b1.inverse())
            .mul(&a3)
            .mul(&b1);
        assert_eq!(comm1, el(0, 0, 1, 0, 0));
        let comm2 = a3
            .inverse()
            .mul(&b2.inverse())
            .mul(&a3)
            .mul(&b2);
        assert_eq!(comm2, el(0, 0, 0, 1, 0));
        // a1 is central.
        let a1 = el(0, 0, 1, 0, 0);
        let g = el(2, -3, 1, 4, -2);
        assert_eq!(a1.mul(&g), g.mul(&a1));
    }

    #[test]
    fn product_matches_triangular_embedding() {
        let g = el(2, -1, 3, 0, 5);
        let h = el(-1, 4, 0, 2, -3);
        let gh = g.mul(&h);
        assert_eq!(
            gh.triangular_form(),
            g.triangular_form().mul(&h.triangular_form()).unwrap()
        );
        assert!(g.mul(&g.inverse()).is_identity());
        assert!(g.inverse().mul(&g).is_identity());
    }

    #[test]
    fn conjugation_matches_elementary_shears() {
        let b1 = el(1, 0, 0, 0, 0);
        let a3 = el(0, 0, 0, 0, 1);
        let conj = b1.inverse().mul(&a3).mul(&b1);
        assert_eq!(
            conj.kernel_coordinates().unwrap(),
            b1.conj_representation()
                .apply(&a3.kernel_coordinates().unwrap())
                .unwrap()
        );
        // The representation forgets the kernel part of the conjugator.
        let g = el(3, -2, 7, 1, -4);
        let expected = el(3, -2, 0, 0, 0).conj_representation();
        assert_eq!(g.conj_representation().rows(), expected.rows());
    }
}
