//! Doubly periodic standing waves of the massless `(1+1)`-dimensional `φ⁴`
//! wave equation `φₓₓ − φₜₜ − εφ³ = 0`, built by a Poincaré–Lindstedt
//! expansion around an elliptic-cosine leading term.
//!
//! * [`coeff_algebra`]: exact product-to-sum algebra on sine–sine series and
//!   the diagonal resonance residuals `R_jj`.
//! * [`galerkin`]: iterative solution of the truncated resonance system.
//! * [`elliptic`]: AGM, nome, `cn` Fourier data and the nome equation.
//! * [`perturbation`]: `φ₀`, `φ₁`, `φ₂`, the frequency expansion and PDE
//!   residual checks.
//!
//! All arithmetic runs on [`Real`], an MPFR float at a configurable number
//! of decimal digits.

pub mod coeff_algebra;
pub mod elliptic;
pub mod error;
pub mod galerkin;
pub mod par;
pub mod perturbation;
pub mod real;

pub use error::{Error, Result};
pub use par::Exec;
pub use real::{Precision, Real};
