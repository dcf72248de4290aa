//! ordlab-core: exact computation with left-invariant orders.
//!
//! The crate works over two kinds of objects:
//!
//! * lattice orders on `Z^n`, presented by a finite sequence of defining
//!   functionals whose entries live in the rational span of square roots
//!   of squarefree integers ([`order::LatticeOrder`]);
//! * lexicographic orders on torsion-free nilpotent groups (discrete
//!   Heisenberg groups, a rank-5 two-step group, and groups of lower
//!   unitriangular integer matrices), built from a fixed convex-subgroup
//!   chain with one lattice order per abelian factor
//!   ([`groups::LexGroupOrder`]).
//!
//! On top of the order arithmetic the crate produces two families of
//! finitely verified certificates: discreteness certificates, which pin an
//! order inside a basic open neighbourhood so that no conjugate other than
//! the order itself meets the neighbourhood ([`probes::ln_smoothness_probe`]),
//! and condensation certificates, which exhibit conjugates distinct from a
//! base order inside arbitrarily small neighbourhoods
//! ([`probes::condensation_sequence`]).
//!
//! Every comparison that feeds a certificate is exact: signs of radical
//! expressions are decided by interval refinement with rational endpoints,
//! never by floating point.

// Module list grows as the crate is built bottom-up.
pub mod groups;
pub mod json;
pub mod linear;
pub mod order;
pub mod probes;
mod radical;
pub mod scalar;

pub use groups::{
    convex_series, ChainDescription, ChainLevel, Element, GroupDescriptor, GroupError,
    HeisenbergElement, LexGroupOrder, NElement, TriangularElement,
};
pub use json::JsonError;
pub use linear::{LinearError, LnMatrix, UnimodularMatrix};
pub use order::{LatticeOrder, OrderError};
pub use probes::{
    axiom_check, axiom_check_lex, condensation_certificate, condensation_sequence,
    discreteness_witness_set, lift_and_condense, ln_smoothness_probe, orbit_enumerate,
    separating_witness, AxiomReport, AxiomViolation, CertificateScope, CondensationSample,
    DiscretenessCertificate, LnVerification, NeighborhoodSpec, OrbitEntry, OrbitListing,
    ProbeError, VerifyOutcome,
};
pub use scalar::{ExactScalar, Radicands, Rational, ScalarError, Sign};
