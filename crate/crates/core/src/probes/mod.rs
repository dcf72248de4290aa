//! Certificates about the transport orbits of orders.
//!
//! Two regimes are covered. Discreteness probes produce finite witness
//! sets showing that an order is isolated in its orbit under the shear
//! family `L_n`, together with an exhaustively checked verification log.
//! Condensation probes produce, for suitable group orders, conjugators
//! whose transported order stays inside an arbitrarily tight
//! neighborhood while remaining distinct — the opposite behavior.
//! Orbit enumeration and order-axiom spot checks round out the toolkit.

mod axioms;
mod condense;
mod discrete;
mod orbit;

pub use axioms::{axiom_check, axiom_check_lex, AxiomReport, AxiomViolation};
pub use condense::{
    condensation_certificate, condensation_sequence, lift_and_condense, CondensationSample,
    NeighborhoodSpec,
};
pub use discrete::{
    discreteness_witness_set, ln_smoothness_probe, separating_witness, CertificateScope,
    DiscretenessCertificate, LnVerification, VerifyOutcome,
};
pub use orbit::{orbit_enumerate, OrbitEntry, OrbitListing};

use thiserror::Error;

use crate::groups::GroupError;
use crate::linear::LinearError;
use crate::order::OrderError;
use crate::scalar::ScalarError;

/// Errors from probe preconditions and verification.
#[derive(Debug, Error)]
pub enum ProbeError {
    #[error("conjugator is the identity; nothing to separate")]
    IdentityConjugator,
    #[error("leading functional has zero last coordinate; every shear fixes it")]
    LastCoordinateZero,
    #[error("functional length {got} does not match shear dimension {want}")]
    DimensionMismatch { want: usize, got: usize },
    #[error("verification box bound must be at least 1, got {got}")]
    InvalidBox { got: i64 },
    #[error("a neighborhood needs at least one constraint vector")]
    EmptyNeighborhood,
    #[error("neighborhood vector {index} is not positive for the base order")]
    NeighborhoodNotInterior { index: usize },
    #[error("dyadic margin search exhausted without a bound")]
    EpsilonSearchFailed,
    #[error("conjugator pair search exhausted after {shells} shells")]
    PairSearchExhausted { shells: u64 },
    #[error("kernel factor must be defined by a single functional of rank 3")]
    KernelOrderShape,
    #[error("kernel functional components are rationally dependent")]
    DependentSpectrum,
    #[error("conjugation by {which} must shear only the third kernel coordinate, with a nonzero shift")]
    ShiftShape { which: String },
    #[error("shift exponents overflow the supported range")]
    ShiftTooLarge,
    #[error("condensation sequences are defined on the group N, got {got}")]
    WrongGroup { got: String },
    #[error("no condensation exists for triangular size {k}: chain orders on sizes 2 and 3 are isolated; use size 4 or larger")]
    SmoothTriangular { k: usize },
    #[error("internal verification failed: {detail}")]
    InternalVerification { detail: String },
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linear(#[from] LinearError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
