use crate::coeff_algebra::{
    cube_diagonal_field_with, mul_cos_sine_with, product_sine_sine_with, CoeffGrid, DiagonalSeq,
};
use crate::elliptic::{f_sequence, EllipticParams};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::real::Real;

pub const DEFAULT_PHI0_MODES: usize = 20;
/// Highest harmonic kept in `φ₁` and `φ₂`, in both `x` and `t̃`.
pub const DEFAULT_HARMONIC_CAP: usize = 60;
/// Diagonal forcing counts as resonant above this fraction of the grid max.
pub const RESONANCE_RELATIVE_TOLERANCE: f64 = 1e-15;

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    pub modes: usize,
    pub cap: usize,
    pub exec: Exec,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            modes: DEFAULT_PHI0_MODES,
            cap: DEFAULT_HARMONIC_CAP,
            exec: Exec::default(),
        }
    }
}

/// `φ₀ + εφ₁ + ε²φ₂` with its frequency expansion.
#[derive(Clone, Debug)]
pub struct AsymptoticSolution {
    pub amplitude: Real,
    pub params: EllipticParams,
    pub phi0: DiagonalSeq,
    pub phi1: CoeffGrid,
    pub phi2: CoeffGrid,
    pub omega1: Real,
    pub omega2: Real,
    pub epsilon: Real,
}

impl AsymptoticSolution {
    pub fn build(params: &EllipticParams, amplitude: &Real, epsilon: &Real) -> Result<Self> {
        Self::build_with(params, amplitude, epsilon, BuildOptions::default())
    }

    pub fn build_with(
        params: &EllipticParams,
        amplitude: &Real,
        epsilon: &Real,
        opts: BuildOptions,
    ) -> Result<Self> {
        if epsilon.is_negative() || !epsilon.is_finite() {
            return Err(Error::Domain {
                what: "epsilon",
                value: epsilon.to_sci(17),
                domain: "[0, ∞)",
            });
        }
        let phi0 = build_phi0(params, amplitude, opts.modes)?;
        let omega1 = params.omega1_coeff() * amplitude.square();
        let phi1 = build_phi1_with(&phi0, &omega1, opts.cap, opts.exec)?;
        let (phi2, omega2) = build_phi2_with(&phi0, &phi1, &omega1, opts.cap, opts.exec)?;
        Ok(Self {
            amplitude: amplitude.clone(),
            params: params.clone(),
            phi0,
            phi1,
            phi2,
            omega1,
            omega2,
            epsilon: epsilon.clone(),
        })
    }

    /// `ω(ε) = 1 + εω₁ + ε²ω₂` at the stored `ε`.
    pub fn omega(&self) -> Real {
        self.omega_at(&self.epsilon)
    }

    pub fn omega_at(&self, eps: &Real) -> Real {
        let mut w = &self.omega2 * eps + &self.omega1;
        w = w * eps;
        w + Real::one(eps.precision())
    }

    /// Combined coefficient grid of `φ₀ + εφ₁ + ε²φ₂`.
    pub fn combined_grid(&self, eps: &Real) -> CoeffGrid {
        CoeffGrid::from_diagonal(&self.phi0)
            .add_scaled(&self.phi1, eps)
            .add_scaled(&self.phi2, &eps.square())
    }
}

/// `a_{2n−1} = 2Aγ f_{2n−1} / k`, `n = 1..=modes`.
pub fn build_phi0(params: &EllipticParams, amplitude: &Real, modes: usize) -> Result<DiagonalSeq> {
    if modes == 0 {
        return Err(Error::Config("phi0 needs at least one mode".into()));
    }
    let f = f_sequence(&params.q, modes)?;
    let s = amplitude * 2 * &params.gamma / &params.k;
    Ok(f.scaled(&s))
}

/// Absolute resonance threshold for a forcing grid.
pub fn resonance_tolerance(forcing: &CoeffGrid) -> Real {
    let p = forcing.precision();
    forcing.max_abs() * Real::from_f64(p, RESONANCE_RELATIVE_TOLERANCE)
}

/// Fails on the first diagonal entry of `defect` above `tol`.
///
/// Harmonics absent from `φ₀` are reported first: no frequency shift can
/// cancel forcing there, so they are the genuine obstruction.
fn check_diagonal(
    defect: impl Fn(usize) -> Real,
    size: usize,
    phi0: &DiagonalSeq,
    tol: &Real,
) -> Result<()> {
    let bad: Vec<(usize, Real)> = (1..=size)
        .map(|j| (j, defect(j)))
        .filter(|(_, r)| r.abs() > *tol)
        .collect();
    let absent = |j: usize| phi0.at(j).map_or(true, Real::is_zero);
    let worst = bad
        .iter()
        .find(|(j, _)| absent(*j))
        .or_else(|| bad.first());
    match worst {
        Some((n, r)) => Err(Error::Resonance {
            n: *n,
            magnitude: r.abs().to_sci(6),
            tolerance: tol.to_sci(6),
        }),
        None => Ok(()),
    }
}

pub fn build_phi1(phi0: &DiagonalSeq, omega1: &Real) -> Result<CoeffGrid> {
    build_phi1_with(phi0, omega1, DEFAULT_HARMONIC_CAP, Exec::default())
}

/// `b_nj = D_nj / (j² − n²)` off the diagonal, `b_nn = 0`, where `D` holds
/// the coefficients of `φ₀³`.
///
/// Solvable only when every diagonal `2ω₁ j² a_j − D_jj` vanishes.
pub fn build_phi1_with(
    phi0: &DiagonalSeq,
    omega1: &Real,
    cap: usize,
    exec: Exec,
) -> Result<CoeffGrid> {
    let p = phi0.precision();
    let d = cube_diagonal_field_with(phi0, exec);
    let tol = resonance_tolerance(&d);
    let size = d.nx().min(d.nt());
    check_diagonal(
        |j| {
            let aj = phi0.at(j).cloned().unwrap_or_else(|| Real::zero(p));
            omega1 * 2 * aj * (j * j) as i64 - d.get(j, j)
        },
        size,
        phi0,
        &tol,
    )?;
    let (nx, nt) = (d.nx().min(cap), d.nt().min(cap));
    Ok(d.resized(nx, nt).map_indexed(|n, j, v| divide_off_diagonal(n, j, v)))
}

fn divide_off_diagonal(n: usize, j: usize, v: &Real) -> Real {
    if n == j {
        Real::zero(v.precision())
    } else {
        v / ((j * j) as i64 - (n * n) as i64)
    }
}

pub fn build_phi2(phi0: &DiagonalSeq, phi1: &CoeffGrid, omega1: &Real) -> Result<(CoeffGrid, Real)> {
    build_phi2_with(phi0, phi1, omega1, DEFAULT_HARMONIC_CAP, Exec::default())
}

/// `H = 2ω₁ ∂²φ₁/∂t̃² + 3φ₁φ₀²`, `h_nj = H_nj / (j² − n²)`, `h_nn = 0` and
/// `ω₂ = −ω₁²/2`, which removes the `φ₀` forcing from the diagonal.
pub fn build_phi2_with(
    phi0: &DiagonalSeq,
    phi1: &CoeffGrid,
    omega1: &Real,
    cap: usize,
    exec: Exec,
) -> Result<(CoeffGrid, Real)> {
    let p = phi0.precision();
    if !phi1.max_abs_diagonal().is_zero() {
        return Err(Error::Config("phi1 must have a zero diagonal".into()));
    }
    let a = CoeffGrid::from_diagonal(phi0);
    let sq = product_sine_sine_with(&a, &a, None, exec);
    let cubic = mul_cos_sine_with(&sq, phi1, Some((cap, cap)), exec);
    let h = cubic
        .scaled(&Real::from_i64(p, 3))
        .add_scaled(&phi1.d2_t(), &(omega1 * 2));
    let tol = resonance_tolerance(&h);
    check_diagonal(|j| h.get(j, j).clone(), h.nx().min(h.nt()), phi0, &tol)?;
    let omega2 = -(omega1.square() / 2);
    Ok((h.map_indexed(|n, j, v| divide_off_diagonal(n, j, v)), omega2))
}

/// `ω = 1 + ω₁ε + ω₂ε²` with `ω₁ = γ²A²/(64k²)` and `ω₂ = −ω₁²/2`.
pub fn frequency(params: &EllipticParams, amplitude: &Real, epsilon: &Real) -> Result<Real> {
    if epsilon.is_negative() {
        return Err(Error::Domain {
            what: "epsilon",
            value: epsilon.to_sci(17),
            domain: "[0, ∞)",
        });
    }
    let w1 = params.omega1_coeff() * amplitude.square();
    let w2 = -(w1.square() / 2);
    Ok(Real::one(epsilon.precision()) + w1 * epsilon + w2 * epsilon.square())
}
