//! Elliptic cosine: Fourier-series and Landen evaluations, plus checks of
//! its differential equation and of the cube proportionality identity.

use crate::coeff_algebra::cube_diagonal_field;
use crate::error::Result;
use crate::par::Exec;
use crate::real::{Precision, Real};

use super::fseq::{f_sequence, FSeq};
use super::params::EllipticParams;

/// Truncated `cn(z, k) = (γ/k) Σ f_{2n-1} cos((2n-1) γ z / 4)`.
#[derive(Clone, Debug)]
pub struct CnSeries {
    /// `(γ/k) f_{2n-1}`.
    amplitudes: Vec<Real>,
    /// `γ / 4`.
    rate: Real,
}

impl CnSeries {
    /// Keeps terms until `q^{n-½}` drops below the working precision.
    pub fn new(params: &EllipticParams) -> Result<Self> {
        Self::with_modes(params, Self::modes_for(params))
    }

    pub fn with_modes(params: &EllipticParams, modes: usize) -> Result<Self> {
        let f = f_sequence(&params.q, modes)?;
        let scale = &params.gamma / &params.k;
        Ok(Self {
            amplitudes: f.coeffs().iter().map(|c| c * &scale).collect(),
            rate: &params.gamma / 4,
        })
    }

    /// Modes needed for a geometric tail below `10^-(digits+10)`.
    pub fn modes_for(params: &EllipticParams) -> usize {
        let digits = f64::from(params.precision().digits()) + 10.0;
        let lq = -params.q.to_f64().log10();
        ((digits / lq).ceil() as usize + 2).max(2)
    }

    pub fn modes(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn eval(&self, z: &Real) -> Real {
        let mut acc = Real::zero(z.precision());
        for (i, a) in self.amplitudes.iter().enumerate() {
            let m = (2 * i + 1) as i64;
            acc.mul_add_assign(a, &(&self.rate * z * m).cos());
        }
        acc
    }

    /// `(cn, cn'')` by term-by-term differentiation.
    pub fn eval_with_second_derivative(&self, z: &Real) -> (Real, Real) {
        let p = z.precision();
        let mut v = Real::zero(p);
        let mut d2 = Real::zero(p);
        for (i, a) in self.amplitudes.iter().enumerate() {
            let m = (2 * i + 1) as i64;
            let w = &self.rate * m;
            let c = (&w * z).cos();
            let t = a * &c;
            d2.mul_sub_assign(&t, &w.square());
            v += t;
        }
        (v, d2)
    }
}

pub fn cn_eval(z: &Real, params: &EllipticParams) -> Result<Real> {
    Ok(CnSeries::new(params)?.eval(z))
}

/// `cn(z, k)` by the descending Landen (AGM) recurrence, independent of the
/// Fourier data.
pub fn cn_landen(z: &Real, k: &Real) -> Real {
    let p = z.precision();
    let eps = Real::from_i64(p, 2).powi(-(p.bits() as i32));
    let mut a = vec![Real::one(p)];
    let mut c = vec![k.clone()];
    let mut b = (Real::one(p) - k.square()).sqrt();
    while c.last().unwrap().abs() > eps && a.len() < 64 {
        let an = a.last().unwrap().clone();
        a.push((&an + &b) / 2);
        c.push((&an - &b) / 2);
        b = (an * b).sqrt();
    }
    let n = a.len() - 1;
    let mut phi = a[n].clone() * z * Real::from_i64(p, 2).powi(n as i32);
    for i in (1..=n).rev() {
        let s = (&c[i] / &a[i] * phi.sin()).asin();
        phi = (phi + s) / 2;
    }
    phi.cos()
}

/// Max over `samples` points of `|cn'' − (2k²−1) cn + 2k² cn³|` on one period
/// `[0, 4K)`, using the series truncated to `modes` terms (all needed terms
/// when `None`).
pub fn verify_cn_ode(
    params: &EllipticParams,
    samples: usize,
    modes: Option<usize>,
    exec: Exec,
) -> Result<Real> {
    let series = match modes {
        Some(m) => CnSeries::with_modes(params, m)?,
        None => CnSeries::new(params)?,
    };
    let p = params.precision();
    let k2 = params.k.square();
    let lin = &k2 * 2 - Real::one(p);
    let cub = &k2 * 2;
    let period = &params.big_k * 4;
    let defects = exec.map(samples, |i| {
        let z = &period * i as i64 / samples as i64;
        let (v, d2) = series.eval_with_second_derivative(&z);
        (d2 - &lin * &v + &cub * v.powi(3)).abs()
    });
    Ok(defects.into_iter().fold(Real::zero(p), Real::max))
}

#[derive(Clone, Debug)]
pub struct ProportionalityReport {
    /// `(j, F_j, (2(2k²−1)/γ² + j²/8) f_j, relative defect)` for odd `j`.
    pub rows: Vec<(usize, Real, Real, Real)>,
    pub max_relative_defect: Real,
}

/// Cube coefficients `F_j` of the profile, taken from the sine–sine cube:
/// `F_j = 16 D_jj − 6 (Σ f²) f_j`.
pub fn cube_profile(f: &FSeq) -> Vec<Real> {
    let d = cube_diagonal_field(f);
    let six_sum = f.sum_of_squares() * 6;
    let zero = Real::zero(f.precision());
    (1..=d.nx())
        .step_by(2)
        .map(|j| d.get(j, j) * 16 - &six_sum * f.at(j).unwrap_or(&zero))
        .collect()
}

/// Checks `F_j = (2(2k²−1)/γ² + j²/8) f_j` for odd `j ≤ max_j`, with the
/// profile truncated to `modes` entries.
pub fn verify_proportionality(
    params: &EllipticParams,
    modes: usize,
    max_j: usize,
) -> Result<ProportionalityReport> {
    let p: Precision = params.precision();
    let f = f_sequence(&params.q, modes)?;
    let cube = cube_profile(&f);
    let base = (params.k.square() * 4 - Real::from_i64(p, 2)) / params.gamma.square();
    let zero = Real::zero(p);
    let mut rows = Vec::new();
    let mut worst = Real::zero(p);
    for j in (1..=max_j).step_by(2) {
        let fj = f.at(j).unwrap_or(&zero);
        let fj_cube = cube.get(j / 2).cloned().unwrap_or_else(|| zero.clone());
        let rhs = (&base + Real::ratio(p, (j * j) as i64, 8)) * fj;
        let rel = if rhs.is_zero() {
            fj_cube.abs()
        } else {
            ((&fj_cube - &rhs) / &rhs).abs()
        };
        worst = worst.max(rel.clone());
        rows.push((j, fj_cube, rhs, rel));
    }
    Ok(ProportionalityReport {
        rows,
        max_relative_defect: worst,
    })
}
