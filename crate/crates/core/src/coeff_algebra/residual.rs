//! Residuals of the first-order resonance system.
//!
//! Normalization: `R_jj` is 16 times the `sin(jx) sin(jt)` coefficient of
//! `φ₀³ + 2ω₁ ∂²φ₀/∂t²`, i.e. `R_jj = 16·D_jj − 32 j² ω₁ a_j`, divided by
//! `a₁³` in the normalized (`c₁ = 1`) form. Single mode: `R₁₁ = 9 − 32 c_ω`.

use crate::error::{Error, Result};
use crate::real::Real;

use super::product::{cos_series_product, cosine_cube, cube_diagonal_field};
use super::{CoeffGrid, DiagonalSeq};

/// `16·D_jj − 32 j² ω₁ a_j` for every odd `j ≤ 6N − 1` (the `3N` equations of
/// the truncated system; the last one is identically zero).
///
/// Homogeneous of degree three under `a ↦ λa`, `ω₁ ↦ λ²ω₁`.
pub fn diagonal_residuals_unscaled(a: &DiagonalSeq, omega1: &Real) -> DiagonalSeq {
    let prec = a.precision();
    let modes = 3 * a.len();
    let g = cosine_cube(a);
    let six_sum = a.sum_of_squares() * 6;
    let zero = Real::zero(prec);
    let coeffs = (0..modes)
        .map(|i| {
            let j = 2 * i + 1;
            let aj = a.at(j).unwrap_or(&zero);
            // 16·D_jj = 4·[U³]_j + 6 (Σ a²) a_j along the light cone
            let mut r = g.get(j).map_or_else(|| zero.clone(), |gj| gj * 4);
            r.mul_add_assign(&six_sum, aj);
            let w = omega1 * (32 * j * j) as i64;
            r.mul_sub_assign(&w, aj);
            r
        })
        .collect();
    DiagonalSeq::new(coeffs).expect("residuals of a finite sequence are finite")
}

/// A single `16·D_jj − 32 j² ω₁ a_j`, without forming the whole cube.
pub fn diagonal_residual_at(a: &DiagonalSeq, omega1: &Real, harmonic: usize) -> Real {
    let prec = a.precision();
    let zero = Real::zero(prec);
    let mut u = vec![Real::zero(prec); a.max_harmonic() + 1];
    for (j, c) in a.harmonics() {
        u[j] = c.clone();
    }
    let u2 = cos_series_product(&u, &u);
    let at = |i: usize| u.get(i).unwrap_or(&zero);
    // [U³]_j = ½ Σ_a [U²]_a (U_{j−a} + U_{a−j} + U_{a+j})
    let mut g = Real::zero(prec);
    for (i, w) in u2.iter().enumerate().filter(|(_, w)| !w.is_zero()) {
        if i <= harmonic {
            g.mul_add_assign(w, at(harmonic - i));
        }
        if i >= harmonic {
            g.mul_add_assign(w, at(i - harmonic));
        }
        g.mul_add_assign(w, at(i + harmonic));
    }
    let aj = a.at(harmonic).unwrap_or(&zero);
    let mut r = g * 2;
    r.mul_add_assign(&(a.sum_of_squares() * 6), aj);
    r.mul_sub_assign(&(omega1 * (32 * harmonic * harmonic) as i64), aj);
    r
}

/// `R_jj(c)` for a normalized sequence (`c₁ = 1`), with `ω₁ = c_ω a₁²`.
pub fn diagonal_residuals(c: &DiagonalSeq, c_omega: &Real) -> Result<DiagonalSeq> {
    let c1 = &c.coeffs()[0];
    if *c1 != 1.0 {
        return Err(Error::Normalization(c1.to_sci(20)));
    }
    Ok(diagonal_residuals_unscaled(c, c_omega))
}

/// Full residual grid of the first-order equation
/// `φ₁ₓₓ − φ₁ₜₜ − 2ω₁ φ₀ₜₜ − φ₀³ = Σ R_nj sin(nx) sin(jt)`:
/// `R_nj = (j² − n²) b_nj + 2ω₁ j² a_j δ_nj − D_nj`.
///
/// Linear in `b` for fixed `a`. The grid covers the union of the `b` and
/// `φ₀³` truncations.
pub fn offdiagonal_residuals(a: &DiagonalSeq, b: &CoeffGrid, omega1: &Real) -> CoeffGrid {
    let d = cube_diagonal_field(a);
    let lin = b.map_indexed(|n, j, v| {
        let k = (j * j) as i64 - (n * n) as i64;
        v * k
    });
    let mut r = lin.add_scaled(&d, &-Real::one(a.precision()));
    let two_w = omega1 * 2;
    for (j, aj) in a.harmonics() {
        if j <= r.nx() && j <= r.nt() {
            let t = &two_w * aj * (j * j) as i64;
            *r.get_mut(j, j) += t;
        }
    }
    r
}
