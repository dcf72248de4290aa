//! Crate-internal engine for exact multiplicative questions about radical
//! expressions: finite sums `sum q_m sqrt(m)` over squarefree integers `m`
//! (with `m = 1` the rational part), closed under multiplication via
//! `sqrt(m) sqrt(m') = gcd(m, m') sqrt(m m' / gcd^2)`.
//!
//! The public scalar type deliberately has no product, because its span is
//! not closed under one. Determinants and solvability tests for matrices
//! with radical entries still need products, so they run here. Square roots
//! of distinct squarefree integers are linearly independent over the
//! rationals, which makes the zero test a plain coefficient check.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{sqrt_enclosure, ExactScalar, Rational, Sign};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RadicalSum {
    /// Map from squarefree radicand to coefficient; no zero coefficients are
    /// stored, and the key `1` holds the rational part.
    terms: BTreeMap<BigUint, Rational>,
}

impl RadicalSum {
    pub fn zero() -> Self {
        RadicalSum {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        RadicalSum::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(BigUint::one(), q);
        }
        RadicalSum { terms }
    }

    pub fn from_scalar(s: &ExactScalar) -> Self {
        let mut out = RadicalSum::zero();
        out.accumulate(BigUint::one(), s.coeffs()[0].clone());
        for (i, &d) in s.basis().values().iter().enumerate() {
            out.accumulate(BigUint::from(d), s.coeffs()[i + 1].clone());
        }
        out
    }

    fn accumulate(&mut self, key: BigUint, q: Rational) {
        if q.is_zero() {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, q) in &other.terms {
            out.accumulate(k.clone(), q.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        RadicalSum {
            terms: self
                .terms
                .iter()
                .map(|(k, q)| (k.clone(), -q))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = RadicalSum::zero();
        for (m, p) in &self.terms {
            for (m2, q) in &other.terms {
                // sqrt(m) sqrt(m') = g sqrt((m/g)(m'/g)) with g = gcd(m, m');
                // both factors squarefree makes the product key squarefree.
                let g = m.gcd(m2);
                let key = (m / &g) * (m2 / &g);
                let coeff = p * q * Rational::from_integer(BigInt::from(g));
                out.accumulate(key, coeff);
            }
        }
        out
    }

    /// Exact sign by interval refinement, same scheme as the scalar type.
    pub fn sign(&self) -> Sign {
        if self.terms.is_empty() {
            return Sign::Zero;
        }
        if self.terms.len() == 1 {
            if let Some(q) = self.terms.get(&BigUint::one()) {
                return Sign::of_rational(q);
            }
            // A single radical term has the sign of its coefficient.
            return Sign::of_rational(self.terms.values().next().unwrap());
        }
        let mut bits = 16u32;
        loop {
            let mut lo = Rational::zero();
            let mut hi = Rational::zero();
            for (m, q) in &self.terms {
                if m.is_one() {
                    lo += q;
                    hi += q;
                    continue;
                }
                let (slo, shi) = sqrt_enclosure(m, bits);
                if q.is_positive() {
                    lo += q * &slo;
                    hi += q * &shi;
                } else {
                    lo += q * &shi;
                    hi += q * &slo;
                }
            }
            if lo.is_positive() {
                return Sign::Positive;
            }
            if hi.is_negative() {
                return Sign::Negative;
            }
            bits *= 2;
        }
    }
}

/// Determinant of a square matrix with radical entries, by Laplace
/// expansion with memoization over column subsets (no division, so the
/// whole computation stays inside the multiplicative closure).
pub(crate) fn determinant(matrix: &[Vec<RadicalSum>]) -> RadicalSum {
    let n = matrix.len();
    if n == 0 {
        return RadicalSum::one();
    }
    debug_assert!(matrix.iter().all(|row| row.len() == n));
    debug_assert!(n <= 20, "determinant expansion is for small ranks");
    // minors[mask] = determinant of the submatrix on rows 0..popcount(mask)
    // and the column set encoded by mask.
    let full = (1u32 << n) - 1;
    let mut minors: Vec<Option<RadicalSum>> = vec![None; (full + 1) as usize];
    minors[0] = Some(RadicalSum::one());
    for mask in 1..=full {
        let row = (mask.count_ones() - 1) as usize;
        let mut acc = RadicalSum::zero();
        // Cofactor sign for entry (row, j-th column of the mask) is
        // (-1)^(row + j), so the leading sign of the expansion is (-1)^row.
        let mut sign_flip = row % 2 == 1;
        for col in 0..n {
            if mask & (1 << col) == 0 {
                continue;
            }
            let sub = minors[(mask & !(1 << col)) as usize]
                .as_ref()
                .expect("minor computed in mask order")
                .clone();
            let term = matrix[row][col].mul(&sub);
            acc = if sign_flip { acc.sub(&term) } else { acc.add(&term) };
            sign_flip = !sign_flip;
        }
        minors[mask as usize] = Some(acc);
    }
    minors[full as usize].take().expect("full minor computed")
}

/// Signs of the coordinates of `z` in the column basis `cols` (solving
/// `G x = z` by Cramer), or `None` when the columns are dependent.
pub(crate) fn coordinate_signs(cols: &[Vec<RadicalSum>], z: &[BigInt]) -> Option<Vec<Sign>> {
    let n = cols.len();
    debug_assert!(cols.iter().all(|c| c.len() == n));
    debug_assert_eq!(z.len(), n);
    let matrix: Vec<Vec<RadicalSum>> = (0..n)
        .map(|row| (0..n).map(|col| cols[col][row].clone()).collect())
        .collect();
    let det = determinant(&matrix);
    let det_sign = det.sign();
    if det_sign == Sign::Zero {
        return None;
    }
    let z_rad: Vec<RadicalSum> = z
        .iter()
        .map(|w| RadicalSum::from_rational(Rational::from_integer(w.clone())))
        .collect();
    let mut signs = Vec::with_capacity(n);
    for i in 0..n {
        let mut replaced = matrix.clone();
        for row in 0..n {
            replaced[row][i] = z_rad[row].clone();
        }
        let di = determinant(&replaced).sign();
        let combined = match (di, det_sign) {
            (Sign::Zero, _) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        };
        signs.push(combined);
    }
    Some(signs)
}

/// Exact equality of products `a*b == c*d`, used for proportionality tests
/// between functionals with radical entries.
pub(crate) fn products_equal(a: &RadicalSum, b: &RadicalSum, c: &RadicalSum, d: &RadicalSum) -> bool {
    a.mul(b).sub(&c.mul(d)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Radicands;
    use std::sync::Arc;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn sqrt_term(m: u64, n: i64, d: i64) -> RadicalSum {
        let mut s = RadicalSum::zero();
        s.accumulate(BigUint::from(m), rat(n, d));
        s
    }

    #[test]
    fn product_of_radicals_reduces_to_squarefree_keys() {
        // sqrt(2) * sqrt(3) = sqrt(6)
        let p = sqrt_term(2, 1, 1).mul(&sqrt_term(3, 1, 1));
        assert_eq!(p, sqrt_term(6, 1, 1));
        // sqrt(6) * sqrt(10) = 2 sqrt(15)
        let q = sqrt_term(6, 1, 1).mul(&sqrt_term(10, 1, 1));
        assert_eq!(q, sqrt_term(15, 2, 1));
        // sqrt(2) * sqrt(2) = 2
        let r = sqrt_term(2, 1, 1).mul(&sqrt_term(2, 1, 1));
        assert_eq!(r, RadicalSum::from_rational(rat(2, 1)));
    }

    #[test]
    fn sign_of_mixed_sum() {
        // sqrt(6) - 2 is positive (6 > 4), sqrt(6) - 3 negative (6 < 9).
        let a = sqrt_term(6, 1, 1).add(&RadicalSum::from_rational(rat(-2, 1)));
        assert_eq!(a.sign(), Sign::Positive);
        let b = sqrt_term(6, 1, 1).add(&RadicalSum::from_rational(rat(-3, 1)));
        assert_eq!(b.sign(), Sign::Negative);
    }

    #[test]
    fn determinant_matches_rational_cofactors() {
        let m = vec![
            vec![RadicalSum::from_rational(rat(2, 1)), RadicalSum::from_rational(rat(3, 1))],
            vec![RadicalSum::from_rational(rat(5, 1)), RadicalSum::from_rational(rat(7, 1))],
        ];
        let det = determinant(&m);
        assert_eq!(det, RadicalSum::from_rational(rat(-1, 1)));
    }

    #[test]
    fn determinant_with_radical_entries() {
        // det [[sqrt2, 1], [1, sqrt2]] = 2 - 1 = 1
        let m = vec![
            vec![sqrt_term(2, 1, 1), RadicalSum::one()],
            vec![RadicalSum::one(), sqrt_term(2, 1, 1)],
        ];
        assert_eq!(determinant(&m), RadicalSum::one());
    }

    #[test]
    fn coordinate_signs_solve_small_system() {
        // Columns (1,-1) and (1,0); z = (2,-1) has coordinates (1,1).
        let cols = vec![
            vec![RadicalSum::from_rational(rat(1, 1)), RadicalSum::from_rational(rat(-1, 1))],
            vec![RadicalSum::from_rational(rat(1, 1)), RadicalSum::from_rational(rat(0, 1))],
        ];
        let z = vec![BigInt::from(2), BigInt::from(-1)];
        let signs = coordinate_signs(&cols, &z).unwrap();
        assert_eq!(signs, vec![Sign::Positive, Sign::Positive]);
        // z = (0,1) has coordinates (-1, 1).
        let z2 = vec![BigInt::from(0), BigInt::from(1)];
        assert_eq!(
            coordinate_signs(&cols, &z2).unwrap(),
            vec![Sign::Negative, Sign::Positive]
        );
    }

    #[test]
    fn from_scalar_round_trip_sign() {
        let basis = Radicands::new(vec![2, 3]).unwrap();
        let s = ExactScalar::new(
            Arc::clone(&basis),
            vec![rat(-3, 1), rat(1, 1), rat(1, 1)],
        )
        .unwrap();
        assert_eq!(RadicalSum::from_scalar(&s).sign(), s.sign());
    }
}
