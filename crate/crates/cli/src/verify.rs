//! Independent checks on a serialized solution.

use std::fmt;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use phi4_standing::coeff_algebra::{diagonal_residuals_unscaled, offdiagonal_residuals};
use phi4_standing::elliptic::{f_sequence, verify_cn_ode, verify_proportionality, CnSeries};
use phi4_standing::perturbation::{build_phi0, build_phi2_with, pde_residual_scan, AsymptoticSolution};
use phi4_standing::{Exec, Precision, Real};
use serde::Serialize;

use crate::commands::write_artifact;

pub const REPORT_FILE: &str = "verify-report.json";

/// Halvings in the ε scan of the PDE residual.
const SCAN_STEPS: usize = 7;
const SCAN_GRID: usize = 64;
/// A third-order remainder shrinks by 8 per halving of ε.
const RATIO_BAND: (f64, f64) = (6.0, 10.0);
const PROPORTIONALITY_MAX_J: usize = 25;

/// Raised when at least one check fails; carries the failed names.
#[derive(Debug)]
pub struct VerifyFailed(pub Vec<String>);

impl fmt::Display for VerifyFailed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "verification failed: {}", self.0.join(", "))
    }
}

impl std::error::Error for VerifyFailed {}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    value: String,
    threshold: String,
}

#[derive(Serialize)]
struct ScanRow {
    epsilon: String,
    residual: String,
    residual_over_eps3: Option<String>,
    halving_ratio: Option<f64>,
}

#[derive(Serialize)]
struct Report {
    solution: String,
    precision_digits: u32,
    passed: bool,
    checks: Vec<Check>,
    pde_scan: Vec<ScanRow>,
}

/// `10^-(digits - slack)`, never looser than `1e-8`.
fn tol(p: Precision, slack: u32) -> Real {
    let e = p.digits().saturating_sub(slack).max(8) as i32;
    Real::from_i64(p, 10).powi(-e)
}

fn check(name: &'static str, value: Real, threshold: Real) -> Check {
    Check {
        name,
        passed: value <= threshold,
        value: value.to_sci(3),
        threshold: threshold.to_sci(3),
    }
}

fn grid_diff(a: &phi4_standing::coeff_algebra::CoeffGrid, b: &phi4_standing::coeff_algebra::CoeffGrid) -> Real {
    let p = a.precision();
    let (nx, nt) = (a.nx().max(b.nx()), a.nt().max(b.nt()));
    let mut worst = Real::zero(p);
    for n in 1..=nx {
        for j in 1..=nt {
            worst = worst.max((a.get_or_zero(n, j) - b.get_or_zero(n, j)).abs());
        }
    }
    worst
}

fn pde_scan(sol: &AsymptoticSolution) -> Result<(Check, Vec<ScanRow>)> {
    let p = sol.phi0.precision();
    let a2 = sol.amplitude.square();
    let mut eps = Real::ratio(p, 1, 100);
    if a2 > 1.0 {
        eps = eps / &a2;
    }
    let epsilons: Vec<Real> = (0..SCAN_STEPS)
        .map(|k| &eps / (1i64 << k))
        .collect();
    let scan = pde_residual_scan(sol, &epsilons, SCAN_GRID)?;
    let ratios: Vec<Option<f64>> = std::iter::once(None)
        .chain(scan.windows(2).map(|w| {
            (!w[1].residual.is_zero()).then(|| (&w[0].residual / &w[1].residual).to_f64())
        }))
        .collect();
    let all_zero = scan.iter().all(|s| s.residual.is_zero());
    let passed = all_zero
        || ratios
            .iter()
            .skip(1)
            .all(|r| r.is_some_and(|x| (RATIO_BAND.0..=RATIO_BAND.1).contains(&x)));
    let worst = ratios
        .iter()
        .flatten()
        .copied()
        .max_by(|x, y| (x - 8.0).abs().total_cmp(&(y - 8.0).abs()));
    let rows = scan
        .iter()
        .zip(&ratios)
        .map(|(s, r)| ScanRow {
            epsilon: s.epsilon.to_sci(6),
            residual: s.residual.to_sci(6),
            residual_over_eps3: s.scaled.as_ref().map(|x| x.to_sci(6)),
            halving_ratio: *r,
        })
        .collect();
    let c = Check {
        name: "pde-residual",
        passed,
        value: match (all_zero, worst) {
            (true, _) => "identically zero".into(),
            (_, Some(w)) => format!("worst halving ratio {w:.4}"),
            (_, None) => "undefined ratio".into(),
        },
        threshold: format!("ratios in [{}, {}]", RATIO_BAND.0, RATIO_BAND.1),
    };
    Ok((c, rows))
}

pub fn verify(solution_path: &Path, out_dir: &Path) -> Result<()> {
    let text = fs::read_to_string(solution_path)
        .map_err(|e| phi4_standing::Error::Config(format!("cannot read {}: {e}", solution_path.display())))?;
    let sol = AsymptoticSolution::from_json(&text)
        .with_context(|| format!("parsing {}", solution_path.display()))?;
    let p = sol.phi0.precision();
    let pr = &sol.params;
    let mut checks = Vec::new();

    checks.push(check("elliptic-params", pr.invariant_defect(), tol(p, 5)));

    let f = f_sequence(&pr.q, CnSeries::modes_for(pr))?;
    let profile = diagonal_residuals_unscaled(&f, &Real::ratio(p, 1, 256)).max_abs();
    checks.push(check("profile-residual", profile, tol(p, 15)));

    let prop = verify_proportionality(pr, CnSeries::modes_for(pr), PROPORTIONALITY_MAX_J)?;
    checks.push(check("cube-proportionality", prop.max_relative_defect, tol(p, 25)));

    checks.push(check("cn-ode", verify_cn_ode(pr, 64, None, Exec::default())?, tol(p, 20)));

    let scale = Real::one(p).max(sol.amplitude.abs().powi(5));
    let phi0 = build_phi0(pr, &sol.amplitude, sol.phi0.len())?;
    let phi0_diff = phi0
        .coeffs()
        .iter()
        .zip(sol.phi0.coeffs())
        .map(|(a, b)| (a - b).abs())
        .fold(Real::zero(p), Real::max);
    checks.push(check("phi0-profile", phi0_diff, tol(p, 10) * &scale));

    let w1 = pr.omega1_coeff() * sol.amplitude.square();
    let w2 = -(w1.square() / 2);
    let freq = (&w1 - &sol.omega1).abs().max((&w2 - &sol.omega2).abs());
    checks.push(check("frequency", freq, tol(p, 10) * &scale));

    let r1 = offdiagonal_residuals(&sol.phi0, &sol.phi1, &sol.omega1);
    let mut phi1_defect = Real::zero(p);
    for n in 1..=sol.phi1.nx().min(r1.nx()) {
        for j in 1..=sol.phi1.nt().min(r1.nt()) {
            phi1_defect = phi1_defect.max(r1.get(n, j).abs());
        }
    }
    checks.push(check("phi1-equation", phi1_defect, tol(p, 10) * &scale));

    let cap = sol.phi2.nx().max(sol.phi2.nt());
    let phi2_defect = match build_phi2_with(&sol.phi0, &sol.phi1, &sol.omega1, cap, Exec::default()) {
        Ok((h, _)) => grid_diff(&h, &sol.phi2),
        Err(e) => {
            eprintln!("phi2-equation: {e}");
            Real::from_i64(p, 1) / 0
        }
    };
    checks.push(check("phi2-equation", phi2_defect, tol(p, 10) * &scale));

    let (pde, rows) = pde_scan(&sol)?;
    checks.push(pde);

    let mut out = String::new();
    for c in &checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("{tag} {}: {} (threshold {})\n", c.name, c.value, c.threshold));
    }
    out.push_str("epsilon residual residual/eps^3 halving_ratio\n");
    for r in &rows {
        out.push_str(&format!(
            "{} {} {} {}\n",
            r.epsilon,
            r.residual,
            r.residual_over_eps3.as_deref().unwrap_or("-"),
            r.halving_ratio.map(|x| format!("{x:.4}")).unwrap_or_else(|| "-".into())
        ));
    }
    let failed: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| c.name.to_string()).collect();
    let report = Report {
        solution: solution_path.display().to_string(),
        precision_digits: p.digits(),
        passed: failed.is_empty(),
        checks,
        pde_scan: rows,
    };
    write_artifact(out_dir, REPORT_FILE, serde_json::to_string_pretty(&report)?.as_bytes())?;
    print!("{out}");
    if failed.is_empty() {
        Ok(())
    } else {
        Err(VerifyFailed(failed).into())
    }
}
