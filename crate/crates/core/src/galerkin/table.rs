use std::fmt::Write as _;
use std::io::Write;

use crate::coeff_algebra::{diagonal_residuals, DiagonalSeq};
use crate::error::Result;
use crate::real::Real;

use super::solve::{eliminate_comega, SolveReport};

#[derive(Clone, Debug)]
pub struct ComparisonRow {
    pub harmonic: usize,
    pub c: Option<Real>,
    pub residual_c: Option<Real>,
    pub d: Option<Real>,
    pub residual_d: Option<Real>,
}

/// Galerkin coefficients side by side with a closed-form sequence `d`.
#[derive(Clone, Debug)]
pub struct ComparisonTable {
    pub c_omega: Real,
    pub c_omega_from_d: Real,
    pub rows: Vec<ComparisonRow>,
}

/// Rows run over the Galerkin residual range, harmonics `1 ..= 6N−1`.
pub fn comparison_table(report: &SolveReport, d: &DiagonalSeq) -> Result<ComparisonTable> {
    let c_omega_from_d = eliminate_comega(d)?;
    let rd = diagonal_residuals(d, &c_omega_from_d)?;
    let top = report.residuals.max_harmonic();
    let rows = (1..=top)
        .step_by(2)
        .map(|h| ComparisonRow {
            harmonic: h,
            c: report.c.at(h).cloned(),
            residual_c: report.residuals.at(h).cloned(),
            d: d.at(h).cloned(),
            residual_d: rd.at(h).cloned(),
        })
        .collect();
    Ok(ComparisonTable {
        c_omega: report.c_omega.clone(),
        c_omega_from_d,
        rows,
    })
}

impl ComparisonTable {
    /// CSV `j,c_j,R_jj(c),d_j,R_jj(d)`; missing entries are empty cells.
    pub fn write_csv<W: Write>(&self, w: W, sig: usize) -> Result<()> {
        let cell = |x: &Option<Real>| x.as_ref().map(|v| v.to_sci(sig)).unwrap_or_default();
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["j", "c_j", "R_jj(c)", "d_j", "R_jj(d)"])?;
        for r in &self.rows {
            out.write_record([
                r.harmonic.to_string(),
                cell(&r.c),
                cell(&r.residual_c),
                cell(&r.d),
                cell(&r.residual_d),
            ])?;
        }
        out.flush()?;
        Ok(())
    }

    /// Fixed-width text with `sig` significant digits per value.
    pub fn render(&self, sig: usize) -> String {
        let w = sig + 8;
        let cell = |x: &Option<Real>| x.as_ref().map(|v| v.to_sci(sig)).unwrap_or_default();
        let mut out = String::new();
        let _ = writeln!(out, "c_omega (galerkin) = {}", self.c_omega.to_sci(sig + 3));
        let _ = writeln!(out, "c_omega (closed)   = {}", self.c_omega_from_d.to_sci(sig + 3));
        let _ = writeln!(
            out,
            "{:>3}  {:>w$}  {:>w$}  {:>w$}  {:>w$}",
            "j", "c_j", "R_jj(c)", "d_j", "R_jj(d)"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:>3}  {:>w$}  {:>w$}  {:>w$}  {:>w$}",
                r.harmonic,
                cell(&r.c),
                cell(&r.residual_c),
                cell(&r.d),
                cell(&r.residual_d)
            );
        }
        out
    }
}
