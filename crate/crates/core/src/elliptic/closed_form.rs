use crate::error::Result;
use crate::real::{Precision, Real};

use super::fseq::f_sequence;
use super::nome_eq::{solve_nome, NomeSolution};
use super::params::EllipticParams;
use super::CnSeries;

/// Parameters of the elliptic-cosine leading term at the root of the nome
/// equation.
#[derive(Clone, Debug)]
pub struct ClosedForm {
    pub nome: NomeSolution,
    pub params: EllipticParams,
    /// `γ²/(64k²)`, so that `ω₁ = omega1_coeff · A²`.
    pub omega1_coeff: Real,
    /// `ω₁` when the profile `f` itself is the amplitude sequence: `1/256`.
    pub omega1_f_normalized: Real,
    /// `−½ omega1_coeff²`, so that `ω₂ = omega2_coeff · A⁴`.
    pub omega2_coeff: Real,
    /// `a₁ / A = 2γ f₁ / k`.
    pub amplitude_ratio: Real,
    pub sum_f_squared: Real,
    /// `(1 − 2k²) / (3γ²)`, which `Σ f²` must equal at the root.
    pub sum_f_squared_target: Real,
}

impl ClosedForm {
    pub fn sum_f_squared_defect(&self) -> Real {
        (&self.sum_f_squared - &self.sum_f_squared_target).abs()
    }
}

pub fn closed_form_params(p: Precision) -> Result<ClosedForm> {
    closed_form_params_with_tolerance(p, &p.epsilon(5))
}

pub fn closed_form_params_with_tolerance(p: Precision, tolerance: &Real) -> Result<ClosedForm> {
    closed_form_from_nome(solve_nome(p, tolerance)?)
}

/// Derived parameters for an already solved nome equation.
pub fn closed_form_from_nome(nome: NomeSolution) -> Result<ClosedForm> {
    let p = nome.q.precision();
    let params = EllipticParams::from_nome(&nome.q)?;
    let omega1_coeff = params.omega1_coeff();
    let omega2_coeff = -(omega1_coeff.square() / 2);
    let f = f_sequence(&params.q, CnSeries::modes_for(&params))?;
    let amplitude_ratio = &params.gamma * 2 * &f.coeffs()[0] / &params.k;
    let sum_f_squared_target =
        (Real::one(p) - params.k.square() * 2) / (params.gamma.square() * 3);
    Ok(ClosedForm {
        nome,
        omega1_coeff,
        omega1_f_normalized: Real::ratio(p, 1, 256),
        omega2_coeff,
        amplitude_ratio,
        sum_f_squared: f.sum_of_squares(),
        sum_f_squared_target,
        params,
    })
}
