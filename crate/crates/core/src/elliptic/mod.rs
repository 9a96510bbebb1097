//! Elliptic-function toolkit for the closed-form leading term.

mod closed_form;
mod cn;
mod fseq;
mod integral;
mod nome_eq;
mod params;

pub use closed_form::{closed_form_from_nome, closed_form_params, closed_form_params_with_tolerance, ClosedForm};
pub use cn::{
    cn_eval, cn_landen, cube_profile, verify_cn_ode, verify_proportionality, CnSeries,
    ProportionalityReport,
};
pub use fseq::{d_sequence, f_sequence, FSeq};
pub use integral::{agm, agm_elliptic_k, complementary, modulus_from_nome, nome};
pub use nome_eq::{
    nome_equation_residual, nome_equation_with_derivative, series_terms, solve_nome, solve_nome_with_terms,
    NomeSolution,
};
pub use params::{EllipticParams, ParamsRecord};
