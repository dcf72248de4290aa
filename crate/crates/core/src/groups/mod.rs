//! Nilpotent group families and lexicographic orders on them.
//!
//! Three families are supported: the Heisenberg groups `H_{2n+1}`, the
//! rank-5 group `N = <b1, b2> x| <a1, a2, a3>`, and the lower
//! unitriangular matrix groups `N_k`. Each carries a canonical convex
//! chain with free abelian factors ([`convex_series`]); a
//! [`LexGroupOrder`] combines one lattice order per factor, and
//! conjugation acts on it by transporting the kernel factor.

mod heisenberg;
mod lex;
mod ngroup;
mod triangular;

pub use heisenberg::HeisenbergElement;
pub use lex::{
    convex_series, ChainDescription, ChainLevel, Element, GroupDescriptor, LexGroupOrder,
};
pub use ngroup::NElement;
pub use triangular::TriangularElement;

use thiserror::Error;

use crate::linear::LinearError;
use crate::order::OrderError;

/// Errors from group arithmetic and order construction.
#[derive(Debug, Error)]
pub enum GroupError {
    #[error("group size {size} is not supported")]
    InvalidSize { size: usize },
    #[error("exponent vector has length {got}, expected {want}")]
    ExponentLength { want: usize, got: usize },
    #[error("elements belong to different groups: {left} vs {right}")]
    GroupMismatch { left: String, right: String },
    #[error("matrix is not lower unitriangular at row {row}, column {col}")]
    NotUnitriangular { row: usize, col: usize },
    #[error("no elementary generator at row {row}, column {col} in size {size}")]
    BadGeneratorPosition { size: usize, row: usize, col: usize },
    #[error("lower central index {index} out of range for size {size}")]
    BadCentralIndex { size: usize, index: usize },
    #[error("order expects {want} factor orders, got {got}")]
    FactorCount { want: usize, got: usize },
    #[error("factor order {index} has rank {got}, expected {want}")]
    FactorRank { index: usize, want: usize, got: usize },
    #[error("element belongs to {got}, but the order is on {want}")]
    DescriptorMismatch { want: String, got: String },
    #[error("conjugation does not fix the factor above the kernel at generator {generator}")]
    SeriesNotFixed { generator: String },
    #[error("unknown generator name {name:?}")]
    UnknownGenerator { name: String },
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Linear(#[from] LinearError),
}
