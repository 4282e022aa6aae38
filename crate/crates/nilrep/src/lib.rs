//! Exact operator algebra for a 3-step nilpotent group.
//!
//! The group N lives on coordinates (s, x, y, t) with multiplication
//!
//! ```text
//! (s, x, y, t)(s', x', y', t')
//!   = (s + s', x + x', s x' + y + y',
//!      t + t' + (y' x + s x x' - x' y) / 2)
//! ```
//!
//! a semidirect product of a line acting on a polarized Heisenberg
//! group. Everything structural is computed over exact rationals:
//! the algebra and its brackets ([`lie`]), the center-fixing
//! automorphism family and its A x| (H x| R^3) anatomy ([`aut`]),
//! the coadjoint action with its orbit invariants, radicals, and
//! polarizations ([`coadjoint`]), and the phase-shift operators
//! f(u) -> exp(i p(u)) f(u - a) that realize each orbit as a
//! representation together with the twisting operators omega(k)
//! ([`rep`]).
//!
//! On top of that sits a verifier ([`verify`]) that replays the
//! whole chain of algebraic identities behind the multiplicity-free
//! decomposition of these representations under the abelian twisting
//! group K, over seeded random inputs, and reports every check with a
//! witness on failure. Five deliberate fault injections confirm the
//! checks can actually fail. A small floating-point layer ([`grid`])
//! realizes the operators on a sampled line to watch unitarity
//! survive discretization.
//!
//! The `nilrep` binary exposes all of this on the command line.

pub mod scalar;
pub mod linalg;
pub mod lie;
pub mod aut;
pub mod coadjoint;
pub mod rep;
pub mod grid;
pub mod sample;
pub mod verify;

pub use scalar::Scalar;

use thiserror::Error as ThisError;

/// Everything that can go wrong outside of a failed mathematical
/// check; failed checks are data (reports), not errors.
#[derive(Debug, ThisError)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix does not preserve brackets and the center")]
    NotAutomorphism,
    #[error("matrix is outside the parametrized family: {0}")]
    OutsideFamily(String),
    #[error("scale parameter must be positive")]
    NonPositiveScale,
    #[error("representation parameter lambda must be nonzero")]
    ZeroLambda,
    #[error("not a rational: {0:?} (expected an integer or p/q)")]
    InvalidRational(String),
    #[error("duplicate sample point {0} makes the character samples degenerate")]
    DuplicateSample(String),
    #[error("need at least one sample point")]
    EmptySample,
    #[error("need at least one representation case")]
    EmptyCases,
    #[error("shift {shift} is not a multiple of the grid step {step}")]
    NonLatticeShift { shift: Scalar, step: Scalar },
    #[error("grid size {0} must be a positive power of two")]
    GridSize(usize),
    #[error("grid half-width must be positive")]
    GridWidth,
}
