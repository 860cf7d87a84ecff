//! Mahler measures of Laurent polynomials on unit tori.
//!
//! The crate has four layers:
//!
//! * [`laurent`] — exact sparse Laurent polynomials over the Gaussian
//!   rationals: parsing, canonical formatting, evaluation on the torus,
//!   power substitution `P^(A)`, and monomial normalization.
//! * [`torushom`] — integer matrices acting as continuous homomorphisms
//!   between tori: composition, the angle action, exact Boyd heights with
//!   minimal annihilator witnesses, and the base-`b` height family.
//! * [`measures`] — the classic measure `m_n` together with the max and
//!   prod variants, computed exactly by Jensen's formula in one variable,
//!   by singularity-aware quadrature on the circle, or by randomized
//!   quasi-Monte Carlo on higher tori.
//! * [`experiments`] — convergence studies along height-controlled matrix
//!   families and a verification suite for the known closed-form zeta-value
//!   identities.

pub mod experiments;
pub mod laurent;
pub mod measures;
pub mod torushom;

pub use laurent::{GaussianRational, LaurentPoly, TorusPoint};
pub use measures::{MeasureEstimate, MeasureKind, Method, QmcConfig};
pub use torushom::{BoydHeight, HeightResult, TorusHom};

/// Errors shared by every layer of the crate.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("{kind} takes exactly {expected} polynomial(s), got {got}")]
    KindMismatch {
        kind: String,
        expected: usize,
        got: usize,
    },
    #[error("method not applicable: {0}")]
    InapplicableMethod(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("root finding did not converge: worst certified residual {worst_residual:e} after {iterations} iterations")]
    RootFinding {
        worst_residual: f64,
        iterations: u32,
    },
    #[error("power substitution produced the zero polynomial (family parameter b = {b} is below the non-vanishing bound; increase b)")]
    ZeroSubstitution { b: u64 },
    #[error("degenerate experiment: every scheduled step was skipped")]
    AllStepsSkipped,
}

pub type Result<T> = std::result::Result<T, Error>;
