//! Workbench for finite right-residuated magmas and nonassociative right
//! hoops (narhoops): exhaustive axiom checking with counterexample
//! witnesses, isomorphism-free enumeration, structural analysis, congruence
//! and normal-subnarhoop computation, and an executable theorem suite.
//!
//! All algebras are finite and given by full operation tables; every check
//! is exact and exhaustive. Values are immutable after construction and all
//! operations are pure functions, so everything can be shared freely across
//! threads.

pub mod axioms;
pub mod congruence;
pub mod enumeration;
pub mod magma;
pub mod structure;
pub mod suite;

pub use axioms::{check_axioms, check_residuation, classify, Axiom, AxiomReport, Verdict};
pub use magma::{derive, DerivedStructure, Element, FiniteMagma};

use thiserror::Error as ThisError;

/// Errors shared across the workbench.
#[derive(Debug, ThisError)]
pub enum Error {
    /// An operation table is malformed (wrong shape or out-of-range entry).
    #[error("invalid table: {0}")]
    InvalidTable(String),

    /// An operation was called on input violating its stated precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Two routes that must agree by a proved equivalence disagreed;
    /// this indicates a bug, never valid data.
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),

    /// A verified theorem failed on concrete data; this indicates a bug,
    /// never valid data.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("unknown axiom name: {0}")]
    UnknownAxiom(String),

    #[error("unknown model class: {0}")]
    UnknownClass(String),

    /// The requested enumeration is beyond what the chosen mode can do.
    #[error("infeasible enumeration: {0}")]
    Infeasible(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
