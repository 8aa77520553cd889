//! Kirkwood-Rihaczek phase-space distributions of hydrogen bound states.
//!
//! The K-R function of a pure state is the product of the position
//! wavefunction, a plane-wave phase and the conjugated momentum wavefunction,
//!
//! ```text
//! K(x, p) = (2π)^{-3/2} ψ(x) exp(-i x·p) conj(ψ̃(p))
//! ```
//!
//! so for hydrogen it is available in closed form at every phase-space point.
//! The crate provides:
//!
//! - [`special`]: Laguerre, Gegenbauer, spherical harmonics, spherical Bessel.
//! - [`hydrogen`]: normalized bound-state wavefunctions in both representations.
//! - [`kr`]: the 6-D hydrogen K-R function, closed-form reference shapes and
//!   1-D K-R / Wigner evaluators for tabulated states.
//! - [`quadrature`] and [`verify`]: Gauss-Legendre rules and the numerical
//!   checks (normalization, marginals, Fourier consistency).
//! - [`slice`], [`extrema`], [`export`], [`suite`]: (r, p) cross-sections,
//!   maxima detection, CSV/JSON output and the verification driver behind the
//!   `hydrogen-kr` binary.
//!
//! Atomic units (ħ = mₑ = e = 1) are used throughout.

pub mod error;
pub mod export;
pub mod extrema;
pub mod hydrogen;
pub mod kr;
pub mod quadrature;
pub mod slice;
pub mod special;
pub mod suite;
pub mod verify;

pub use error::{Error, Result};
pub use hydrogen::{NuclearCharge, QuantumNumbers, SphericalCoord};
pub use kr::{NormalizationConvention, PhasePoint};
pub use special::AngularPoint;

/// Complex value carried by every distribution evaluation.
pub type ComplexValue = num_complex::Complex64;

/// Crate version, echoed into exported metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
