//! First- and second-order Poincaré–Lindstedt corrections around the
//! elliptic-cosine standing wave, and checks against the full PDE.
//!
//! With `t̃ = ωt` and `ω = 1 + εω₁ + ε²ω₂`, the field is
//! `φ = φ₀ + εφ₁ + ε²φ₂`, each term a sine–sine series in `(x, t̃)`.
//! The diagonal coefficients of `φ₁` and `φ₂` are free; they are fixed to
//! zero here.

mod build;
mod field;
mod record;

pub use build::{
    build_phi0, build_phi1, build_phi1_with, build_phi2, build_phi2_with, frequency,
    resonance_tolerance, AsymptoticSolution, BuildOptions, DEFAULT_HARMONIC_CAP,
    DEFAULT_PHI0_MODES, RESONANCE_RELATIVE_TOLERANCE,
};
pub use field::{
    evaluate_field, field_on_grid, pde_residual_scan, pde_residual_scan_with, write_field_csv,
    ResidualPoint, MIN_SCAN_GRID,
};
pub use record::SolutionRecord;
