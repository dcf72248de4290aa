//! Lower unitriangular integer matrix groups `N_k`.
//!
//! `N_k` consists of the `k x k` integer matrices with ones on the
//! diagonal and zeros above it. The elementary matrices
//! `E_{i,j} = I + e_{i,j}` (for `j < i`) generate, with the commutator
//! identity `[E_{i,j}, E_{j,l}] = E_{i,l}` and all other elementary
//! pairs commuting.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::GroupError;

/// A lower unitriangular `k x k` integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularElement {
    size: usize,
    entries: Vec<Vec<BigInt>>,
}

fn identity_rows(size: usize) -> Vec<Vec<BigInt>> {
    (0..size)
        .map(|i| {
            (0..size)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

impl TriangularElement {
    /// Validates shape: square of size at least 2, unit diagonal, zero
    /// above the diagonal.
    pub fn new(entries: Vec<Vec<BigInt>>) -> Result<Self, GroupError> {
        let size = entries.len();
        if size < 2 {
            return Err(GroupError::InvalidSize { size });
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != size {
                return Err(GroupError::ExponentLength {
                    want: size,
                    got: row.len(),
                });
            }
            for (j, value) in row.iter().enumerate() {
                if i == j && !value.is_one() {
                    return Err(GroupError::NotUnitriangular {
                        row: i + 1,
                        col: j + 1,
                    });
                }
                if i < j && !value.is_zero() {
                    return Err(GroupError::NotUnitriangular {
                        row: i + 1,
                        col: j + 1,
                    });
                }
            }
        }
        Ok(TriangularElement { size, entries })
    }

    pub fn identity(size: usize) -> Result<Self, GroupError> {
        TriangularElement::new(identity_rows(size))
    }

    /// The elementary generator `E_{i,j} = I + e_{i,j}`, with 1-indexed
    /// `1 <= j < i <= size`.
    pub fn generator(size: usize, i: usize, j: usize) -> Result<Self, GroupError> {
        if !(1 <= j && j < i && i <= size) {
            return Err(GroupError::BadGeneratorPosition { size, row: i, col: j });
        }
        let mut rows = identity_rows(size);
        rows[i - 1][j - 1] = BigInt::one();
        TriangularElement::new(rows)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    /// Entry at 1-indexed position `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i - 1][j - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, v)| if i == j { v.is_one() } else { v.is_zero() })
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, GroupError> {
        if self.size != other.size {
            return Err(GroupError::GroupMismatch {
                left: format!("triangular k={}", self.size),
                right: format!("triangular k={}", other.size),
            });
        }
        let size = self.size;
        let entries: Vec<Vec<BigInt>> = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| (0..size).map(|l| &self.entries[i][l] * &other.entries[l][j]).sum())
                    .collect()
            })
            .collect();
        TriangularElement::new(entries)
    }

    /// Inverse via the terminating Neumann series: with `N = A - I`
    /// strictly lower triangular, `A^{-1} = I - N + N^2 - ...` stops
    /// after `size` terms because `N` is nilpotent.
    pub fn inverse(&self) -> Self {
        let size = self.size;
        let mut n: Vec<Vec<BigInt>> = self.entries.clone();
        for (i, row) in n.iter_mut().enumerate() {
            row[i] = BigInt::zero();
        }
        let mut result = identity_rows(size);
        let mut power = identity_rows(size);
        let mut negate = true;
        for _ in 1..size {
            // power <- power * n
            power = (0..size)
                .map(|i| {
                    (0..size)
                        .map(|j| (0..size).map(|l| &power[i][l] * &n[l][j]).sum())
                        .collect()
                })
                .collect();
            for i in 0..size {
                for j in 0..size {
                    if negate {
                        result[i][j] -= &power[i][j];
                    } else {
                        result[i][j] += &power[i][j];
                    }
                }
            }
            negate = !negate;
        }
        TriangularElement {
            size,
            entries: result,
        }
    }

    /// `[g, h] = g^{-1} h^{-1} g h`.
    pub fn commutator(&self, other: &Self) -> Result<Self, GroupError> {
        self.inverse()
            .mul(&other.inverse())?
            .mul(self)?
            .mul(other)
    }

    /// Generators of the lower central term `gamma_l`: the `E_{i,j}`
    /// with `i - j > l`, for `0 <= l <= size - 1`, in lexicographic
    /// position order.
    pub fn lower_central_generators(size: usize, l: usize) -> Result<Vec<Self>, GroupError> {
        if size < 2 {
            return Err(GroupError::InvalidSize { size });
        }
        if l > size - 1 {
            return Err(GroupError::BadCentralIndex { size, index: l });
        }
        let mut gens = Vec::new();
        for i in 2..=size {
            for j in 1..i {
                if i - j > l {
                    gens.push(TriangularElement::generator(size, i, j)?);
                }
            }
        }
        Ok(gens)
    }

    /// Embeds `N_k` into `N_{k+1}` as the top-left block.
    pub fn embed(&self) -> Self {
        let size = self.size + 1;
        let mut rows = identity_rows(size);
        for i in 0..self.size {
            for j in 0..self.size {
                rows[i][j] = self.entries[i][j].clone();
            }
        }
        TriangularElement {
            size,
            entries: rows,
        }
    }
}
