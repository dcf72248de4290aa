//! Orders on `Z^n` presented by defining-functional sequences.
//!
//! A sequence `v_0, ..., v_t` of vectors with entries in a radical span
//! defines a positive cone: `w` is positive when the first index with
//! `<v_i, w> != 0` has a positive inner product. The joint integer
//! kernels of the prefixes form the chain of convex sublattices
//! attached to the order; the strict constructor demands a trivial
//! final kernel (a total order), while the permissive one also accepts
//! sequences that leave part of the lattice unseparated — those arise
//! as restrictions to sublattices and as kernel factors of group orders.

use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::linear::{
    canonical_sublattice_basis, kernel_sublattice, transform_functional, LinearError,
    UnimodularMatrix,
};
use crate::radical::{products_equal, RadicalSum};
use crate::scalar::{inner_product, ExactScalar, Radicands, ScalarError, Sign};

/// Errors from order construction and queries.
#[derive(Debug, Error)]
pub enum OrderError {
    #[error("an order needs at least one defining vector")]
    EmptyOrder,
    #[error("defining vector {index} has length {got}, expected rank {want}")]
    WrongVectorLength { index: usize, got: usize, want: usize },
    #[error("defining vectors leave a nontrivial sublattice unseparated (joint kernel has rank {kernel_rank})")]
    NontotalOrder { kernel_rank: usize },
    #[error("defining vector {index} is redundant: it vanishes on the joint kernel of its predecessors")]
    RedundantVector { index: usize },
    #[error("vector has length {got}, expected rank {want}")]
    LengthMismatch { got: usize, want: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("sublattice is not a level of the order's kernel chain")]
    NotConvex,
    #[error(transparent)]
    Linear(#[from] LinearError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// An order (total or partial) on `Z^n` given by defining functionals.
#[derive(Debug, Clone)]
pub struct LatticeOrder {
    rank: usize,
    basis: Arc<Radicands>,
    vectors: Vec<Vec<ExactScalar>>,
    /// `chain[i]` is the canonical basis of the joint integer kernel of
    /// `v_0, ..., v_i`; the final entry is empty exactly for total orders.
    chain: Vec<Vec<Vec<BigInt>>>,
    total: bool,
}

impl LatticeOrder {
    /// Builds a total order; rejects sequences whose joint kernel is
    /// nontrivial.
    pub fn new(rank: usize, vectors: Vec<Vec<ExactScalar>>) -> Result<Self, OrderError> {
        let order = Self::new_partial(rank, vectors)?;
        if !order.total {
            return Err(OrderError::NontotalOrder {
                kernel_rank: order.chain.last().map(|k| k.len()).unwrap_or(0),
            });
        }
        Ok(order)
    }

    /// Builds an order that may leave a sublattice unseparated. All other
    /// invariants (vector lengths, no redundant vectors) are still
    /// enforced; `classify` answers `Zero` on the unseparated part.
    pub fn new_partial(rank: usize, vectors: Vec<Vec<ExactScalar>>) -> Result<Self, OrderError> {
        if rank == 0 {
            return Err(OrderError::Linear(LinearError::ZeroDimension));
        }
        if vectors.is_empty() {
            return Err(OrderError::EmptyOrder);
        }
        for (index, v) in vectors.iter().enumerate() {
            if v.len() != rank {
                return Err(OrderError::WrongVectorLength {
                    index,
                    got: v.len(),
                    want: rank,
                });
            }
        }
        // Share one radicand basis across all vectors so later arithmetic
        // never has to reconcile bases.
        let mut basis = Radicands::rationals();
        for v in &vectors {
            for s in v {
                basis = Radicands::merge(&basis, s.basis());
            }
        }
        let vectors: Vec<Vec<ExactScalar>> = vectors
            .iter()
            .map(|v| v.iter().map(|s| s.with_basis(&basis)).collect())
            .collect::<Result<_, _>>()?;
        // Incremental kernel chain; a vector that does not cut the
        // previous kernel any further is redundant.
        let mut chain: Vec<Vec<Vec<BigInt>>> = Vec::with_capacity(vectors.len());
        let full_rank_basis: Vec<Vec<BigInt>> = UnimodularMatrix::identity(rank).rows().to_vec();
        for i in 0..vectors.len() {
            let kernel = kernel_sublattice(&vectors[..=i], rank)?;
            let previous: &[Vec<BigInt>] = match i {
                0 => &full_rank_basis,
                _ => &chain[i - 1],
            };
            if kernel.len() == previous.len() {
                return Err(OrderError::RedundantVector { index: i });
            }
            chain.push(kernel);
        }
        let total = chain.last().map(|k| k.is_empty()).unwrap_or(false);
        Ok(LatticeOrder {
            rank,
            basis,
            vectors,
            chain,
            total,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vectors(&self) -> &[Vec<ExactScalar>] {
        &self.vectors
    }

    pub fn basis(&self) -> &Arc<Radicands> {
        &self.basis
    }

    /// Whether the order separates all of `Z^n`.
    pub fn is_total(&self) -> bool {
        self.total
    }

    /// Canonical bases of the kernel chain; entry `i` belongs to the
    /// prefix `v_0, ..., v_i`.
    pub fn chain(&self) -> &[Vec<Vec<BigInt>>] {
        &self.chain
    }

    /// Sign of `w` under the order: the sign of the first nonzero inner
    /// product, or `Zero` when every functional vanishes on `w`.
    pub fn classify(&self, w: &[BigInt]) -> Result<Sign, OrderError> {
        Ok(self.classify_with_level(w)?.0)
    }

    /// Like [`classify`](Self::classify), also reporting which functional
    /// decided (none when all vanish).
    pub fn classify_with_level(&self, w: &[BigInt]) -> Result<(Sign, Option<usize>), OrderError> {
        if w.len() != self.rank {
            return Err(OrderError::LengthMismatch {
                got: w.len(),
                want: self.rank,
            });
        }
        for (i, v) in self.vectors.iter().enumerate() {
            let sign = inner_product(v, w)?.sign();
            if sign != Sign::Zero {
                return Ok((sign, Some(i)));
            }
        }
        Ok((Sign::Zero, None))
    }

    /// Transports the order along the lattice automorphism `a`: the image
    /// order classifies `a * w` the way this order classifies `w`, and is
    /// defined by the functionals `(a^{-1})^T v_i`.
    pub fn act(&self, a: &UnimodularMatrix) -> Result<LatticeOrder, OrderError> {
        if a.n() != self.rank {
            return Err(OrderError::RankMismatch {
                left: self.rank,
                right: a.n(),
            });
        }
        let vectors = self
            .vectors
            .iter()
            .map(|v| transform_functional(v, a))
            .collect::<Result<Vec<_>, _>>()?;
        // Transport preserves validity and totality, so revalidation
        // through the permissive constructor cannot reject.
        LatticeOrder::new_partial(self.rank, vectors)
    }

    /// Exact semantic equality: the two orders classify every vector of
    /// `Z^n` identically.
    ///
    /// Criterion: the kernel chains must agree level by level (canonical
    /// bases are directly comparable), and at each level the deciding
    /// functionals, restricted to the sublattice they act on, must be
    /// positive multiples of one another — checked by cross-products and
    /// a shared leading sign, with no division.
    pub fn orders_equal(&self, other: &LatticeOrder) -> bool {
        if self.rank != other.rank || self.chain != other.chain {
            return false;
        }
        let identity = UnimodularMatrix::identity(self.rank);
        for i in 0..self.vectors.len() {
            // Level i functionals act on the joint kernel of the previous
            // levels (all of Z^n for i = 0).
            let sublattice: &[Vec<BigInt>] = match i {
                0 => identity.rows(),
                _ => &self.chain[i - 1],
            };
            let s: Vec<RadicalSum> = match restrict_to_rows(&self.vectors[i], sublattice) {
                Ok(v) => v,
                Err(_) => return false,
            };
            let t: Vec<RadicalSum> = match restrict_to_rows(&other.vectors[i], sublattice) {
                Ok(v) => v,
                Err(_) => return false,
            };
            if !proportional_with_positive_ratio(&s, &t) {
                return false;
            }
        }
        true
    }

    /// Restriction of the order to a convex sublattice, in the
    /// coordinates of the given basis rows. The sublattice must be a
    /// level of the kernel chain (or all of `Z^n`); those are exactly the
    /// convex ones.
    pub fn restrict(&self, sublattice_basis: &[Vec<BigInt>]) -> Result<LatticeOrder, OrderError> {
        for row in sublattice_basis {
            if row.len() != self.rank {
                return Err(OrderError::LengthMismatch {
                    got: row.len(),
                    want: self.rank,
                });
            }
        }
        let canonical = canonical_sublattice_basis(sublattice_basis);
        if canonical.len() != sublattice_basis.len() {
            // Dependent rows can never present a chain level faithfully.
            return Err(OrderError::NotConvex);
        }
        let identity = UnimodularMatrix::identity(self.rank);
        let survivors: &[Vec<ExactScalar>] = if canonical == identity.rows() {
            &self.vectors
        } else {
            let level = self
                .chain
                .iter()
                .position(|kernel| *kernel == canonical)
                .ok_or(OrderError::NotConvex)?;
            &self.vectors[level + 1..]
        };
        let restricted: Vec<Vec<ExactScalar>> = survivors
            .iter()
            .map(|v| {
                sublattice_basis
                    .iter()
                    .map(|row| inner_product(v, row))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;
        // Restriction to a chain level keeps the sequence minimal, and
        // totality carries over for total orders.
        LatticeOrder::new_partial(sublattice_basis.len(), restricted)
    }
}

fn restrict_to_rows(
    v: &[ExactScalar],
    rows: &[Vec<BigInt>],
) -> Result<Vec<RadicalSum>, ScalarError> {
    rows.iter()
        .map(|row| Ok(RadicalSum::from_scalar(&inner_product(v, row)?)))
        .collect()
}

/// Whether `t = lambda * s` for some real `lambda > 0`: all cross
/// products agree and the leading nonzero entries share a sign.
fn proportional_with_positive_ratio(s: &[RadicalSum], t: &[RadicalSum]) -> bool {
    debug_assert_eq!(s.len(), t.len());
    for j in 0..s.len() {
        for k in j + 1..s.len() {
            if !products_equal(&s[j], &t[k], &s[k], &t[j]) {
                return false;
            }
        }
    }
    for j in 0..s.len() {
        let (sj, tj) = (s[j].sign(), t[j].sign());
        if sj != Sign::Zero || tj != Sign::Zero {
            return sj == tj;
        }
    }
    // Both identically zero on the sublattice; cannot happen for
    // validated orders (redundant vectors are rejected) but compare as
    // equal for safety.
    true
}
