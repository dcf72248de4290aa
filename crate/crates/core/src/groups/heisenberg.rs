//! The discrete Heisenberg groups `H_{2n+1}`.
//!
//! Elements are kept in the normal form `y^b x^a z^c` with integer
//! exponent vectors `b`, `a` and a central exponent `c`. The commutator
//! convention is `[x_i, y_i] = x_i^{-1} y_i^{-1} x_i y_i = z`; all other
//! generator pairs commute.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linear::LnMatrix;

use super::GroupError;

/// Element of `H_{2n+1}` in normal form `y^b x^a z^c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeisenbergElement {
    n: usize,
    b: Vec<BigInt>,
    a: Vec<BigInt>,
    c: BigInt,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl HeisenbergElement {
    pub fn new(n: usize, b: Vec<BigInt>, a: Vec<BigInt>, c: BigInt) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::InvalidSize { size: 0 });
        }
        if b.len() != n || a.len() != n {
            return Err(GroupError::ExponentLength {
                want: n,
                got: if b.len() != n { b.len() } else { a.len() },
            });
        }
        Ok(HeisenbergElement { n, b, a, c })
    }

    pub fn identity(n: usize) -> Self {
        HeisenbergElement {
            n,
            b: vec![BigInt::zero(); n],
            a: vec![BigInt::zero(); n],
            c: BigInt::zero(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn b(&self) -> &[BigInt] {
        &self.b
    }

    pub fn a(&self) -> &[BigInt] {
        &self.a
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn is_identity(&self) -> bool {
        self.b.iter().all(Zero::is_zero) && self.a.iter().all(Zero::is_zero) && self.c.is_zero()
    }

    /// Normal-form product. Moving `x^a` of the left factor past `y^{b'}`
    /// of the right factor emits `z^{<a, b'>}`.
    pub fn mul(&self, other: &Self) -> Result<Self, GroupError> {
        if self.n != other.n {
            return Err(GroupError::GroupMismatch {
                left: format!("heisenberg n={}", self.n),
                right: format!("heisenberg n={}", other.n),
            });
        }
        let b = self.b.iter().zip(&other.b).map(|(x, y)| x + y).collect();
        let a = self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect();
        let c = &self.c + &other.c + dot(&self.a, &other.b);
        Ok(HeisenbergElement { n: self.n, b, a, c })
    }

    pub fn inverse(&self) -> Self {
        HeisenbergElement {
            n: self.n,
            b: self.b.iter().map(|x| -x).collect(),
            a: self.a.iter().map(|x| -x).collect(),
            c: -&self.c + dot(&self.a, &self.b),
        }
    }

    /// Upper unitriangular `(n+2) x (n+2)` matrix image: `a` along the
    /// top row, `b` down the last column, `c` in the corner. Matrix
    /// multiplication reproduces the normal-form product, which makes
    /// this an independent oracle for `mul`.
    pub fn matrix_form(&self) -> Vec<Vec<BigInt>> {
        let dim = self.n + 2;
        let mut m: Vec<Vec<BigInt>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        for i in 0..self.n {
            m[0][1 + i] = self.a[i].clone();
            m[1 + i][dim - 1] = self.b[i].clone();
        }
        m[0][dim - 1] = self.c.clone();
        m
    }

    /// Action of conjugation on the kernel subgroup `<x_1..x_n, z>` in
    /// the coordinates `(a_1, ..., a_n, c)`: `g^{-1} h g` has kernel
    /// coordinates `phi(g) * coords(h)`, and `phi(g)` depends only on the
    /// `y`-part of `g`, giving a matrix with identity block and last row
    /// `b`.
    pub fn conj_representation(&self) -> LnMatrix {
        LnMatrix::new(self.n + 1, self.b.clone()).expect("length n is valid for an (n+1) shear")
    }

    /// Coordinates `(a_1, ..., a_n, c)` when the element lies in the
    /// kernel subgroup `<x, z>`, i.e. has no `y`-part.
    pub fn kernel_coordinates(&self) -> Option<Vec<BigInt>> {
        if self.b.iter().all(Zero::is_zero) {
            let mut coords = self.a.clone();
            coords.push(self.c.clone());
            Some(coords)
        } else {
            None
        }
    }

    /// Image in the abelian quotient by the kernel subgroup: the
    /// `y`-exponents.
    pub fn quotient_coordinates(&self) -> Vec<BigInt> {
        self.b.clone()
    }
}
