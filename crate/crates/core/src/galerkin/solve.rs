use serde::{Deserialize, Serialize};

use crate::coeff_algebra::io::SeqRecord;
use crate::coeff_algebra::{diagonal_residual_at, diagonal_residuals, DiagonalSeq};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::real::{Precision, Real};

use super::cubic::{interpolate_cubic, solve_cubic_real_unit, RootPick};

pub const MIN_MODES: usize = 2;
pub const MAX_MODES: usize = 50;
pub const DEFAULT_MAX_SWEEPS: usize = 100;

#[derive(Clone, Debug)]
pub struct GalerkinConfig {
    /// Number of odd modes `N`; harmonics `1, 3, …, 2N−1` are unknowns.
    pub modes: usize,
    /// Acceptance threshold on `|R_jj|` for the solved block.
    pub delta: Real,
    /// Sweep cap per added mode.
    pub max_sweeps: usize,
    pub root_pick: RootPick,
}

impl GalerkinConfig {
    pub fn new(modes: usize, delta: Real) -> Self {
        Self {
            modes,
            delta,
            max_sweeps: DEFAULT_MAX_SWEEPS,
            root_pick: RootPick::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(MIN_MODES..=MAX_MODES).contains(&self.modes) {
            return Err(Error::Config(format!(
                "mode count {} outside {MIN_MODES}..={MAX_MODES}",
                self.modes
            )));
        }
        if !(self.delta > 0.0) || !self.delta.is_finite() {
            return Err(Error::Config(format!("delta must be positive, got {}", self.delta)));
        }
        if self.max_sweeps == 0 {
            return Err(Error::Config("max_sweeps must be at least 1".into()));
        }
        Ok(())
    }
}

/// Outcome of a Galerkin solve.
#[derive(Clone, Debug)]
pub struct SolveReport {
    /// `c_1 = 1, c_3, …, c_{2N−1}`.
    pub c: DiagonalSeq,
    pub c_omega: Real,
    /// `R_jj(c)` for harmonics `1 ..= 6N−1` (3N entries); the ones above
    /// `2N−1` are the truncation tail.
    pub residuals: DiagonalSeq,
    /// Total sweeps across all added modes.
    pub iterations: usize,
    pub converged: bool,
    pub delta: Real,
    pub root_pick: RootPick,
}

impl SolveReport {
    pub fn modes(&self) -> usize {
        self.c.len()
    }

    pub fn max_solved_residual(&self) -> Real {
        max_abs(&self.residuals.coeffs()[..self.modes()])
    }

    pub fn max_tail_residual(&self) -> Real {
        max_abs(&self.residuals.coeffs()[self.modes()..])
    }

    /// Every computed `|R_jj|`, solved block and tail, is below `delta`.
    pub fn is_sufficient(&self) -> bool {
        self.converged && self.residuals.max_abs() < self.delta
    }

    pub fn to_record(&self) -> SolveRecord {
        SolveRecord {
            modes: self.modes(),
            c: self.c.to_record(),
            c_omega: self.c_omega.to_decimal(),
            residuals: self.residuals.to_record(),
            iterations: self.iterations,
            converged: self.converged,
            delta: self.delta.to_decimal(),
            root_pick: self.root_pick,
        }
    }

    pub fn from_record(r: &SolveRecord) -> Result<Self> {
        let c = DiagonalSeq::from_record(&r.c)?;
        let p = c.precision();
        Ok(Self {
            c,
            c_omega: Real::parse(p, &r.c_omega)?,
            residuals: DiagonalSeq::from_record(&r.residuals)?,
            iterations: r.iterations,
            converged: r.converged,
            delta: Real::parse(p, &r.delta)?,
            root_pick: r.root_pick,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_record())?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_record(&serde_json::from_str(s)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveRecord {
    pub modes: usize,
    pub c: SeqRecord,
    pub c_omega: String,
    pub residuals: SeqRecord,
    pub iterations: usize,
    pub converged: bool,
    pub delta: String,
    pub root_pick: RootPick,
}

fn max_abs(xs: &[Real]) -> Real {
    xs.iter()
        .map(Real::abs)
        .fold(Real::zero(xs[0].precision()), Real::max)
}

/// `c_ω` making `R_11` vanish: `R_11` is affine in `c_ω` with slope `−32`.
pub fn eliminate_comega(c: &DiagonalSeq) -> Result<Real> {
    let p = c.precision();
    if c.coeffs()[0] != Real::one(p) {
        return Err(Error::Normalization(c.coeffs()[0].to_sci(17)));
    }
    Ok(diagonal_residual_at(c, &Real::zero(p), 1) / 32)
}

const SAMPLES: [i64; 4] = [-1, 0, 1, 2];

/// Cubic in `x` obtained by sampling `f` at four points.
fn sampled_cubic(p: Precision, mut f: impl FnMut(&Real) -> Result<Real>) -> Result<[Real; 4]> {
    let xs = SAMPLES.map(|s| Real::from_i64(p, s));
    let ys = [
        f(&xs[0])?,
        f(&xs[1])?,
        f(&xs[2])?,
        f(&xs[3])?,
    ];
    Ok(interpolate_cubic(&xs, &ys))
}

fn with_coeff(c: &DiagonalSeq, harmonic: usize, x: &Real) -> DiagonalSeq {
    let mut out = c.clone();
    out.set(harmonic, x.clone());
    out
}

fn pick(poly: &[Real; 4], pick: RootPick, harmonic: usize) -> Result<Real> {
    solve_cubic_real_unit(poly, pick).map_err(|e| match e {
        Error::NoQualifyingRoot { context } => Error::NoQualifyingRoot {
            context: format!("harmonic {harmonic}: {context}"),
        },
        other => other,
    })
}

pub fn galerkin_solve(modes: usize, delta: &Real) -> Result<SolveReport> {
    galerkin_solve_with(&GalerkinConfig::new(modes, delta.clone()))
}

/// Mode-by-mode Galerkin solve with sweep repair.
///
/// Mode `k` (harmonic `2k−1`) is added with all higher coefficients zeroed;
/// its equation, after eliminating `c_ω` through `R_11 = 0`, is a cubic in
/// the new coefficient. Then sweeps recompute `c_ω` and re-solve every earlier
/// equation whose residual is at least `delta`, with `c_ω` held fixed, until
/// a sweep finds nothing to repair.
pub fn galerkin_solve_with(cfg: &GalerkinConfig) -> Result<SolveReport> {
    cfg.validate()?;
    let p = cfg.delta.precision();
    let n = cfg.modes;
    let mut c = DiagonalSeq::zeros(p, n);
    c.set(1, Real::one(p));
    let mut c_omega = eliminate_comega(&c)?;
    let mut iterations = 0;

    for k in 2..=n {
        let m = 2 * k - 1;
        for j in k..=n {
            c.set(2 * j - 1, Real::zero(p));
        }
        let poly = sampled_cubic(p, |x| {
            let trial = with_coeff(&c, m, x);
            let w = eliminate_comega(&trial)?;
            Ok(diagonal_residual_at(&trial, &w, m))
        })?;
        c.set(m, pick(&poly, cfg.root_pick, m)?);

        let mut sweeps = 0;
        loop {
            if sweeps == cfg.max_sweeps {
                return Err(Error::NonConvergence { sweeps, harmonic: m });
            }
            sweeps += 1;
            c_omega = eliminate_comega(&c)?;
            let mut clean = true;
            for j in 2..=k {
                let h = 2 * j - 1;
                if diagonal_residual_at(&c, &c_omega, h).abs() >= cfg.delta {
                    clean = false;
                    let poly = sampled_cubic(p, |x| {
                        Ok(diagonal_residual_at(&with_coeff(&c, h, x), &c_omega, h))
                    })?;
                    c.set(h, pick(&poly, cfg.root_pick, h)?);
                }
            }
            if clean {
                break;
            }
        }
        iterations += sweeps;
    }

    let residuals = diagonal_residuals(&c, &c_omega)?;
    Ok(SolveReport {
        c,
        c_omega,
        residuals,
        iterations,
        converged: true,
        delta: cfg.delta.clone(),
        root_pick: cfg.root_pick,
    })
}

#[derive(Clone, Debug)]
pub struct ScanEntry {
    pub modes: usize,
    /// `None` when the solve itself failed.
    pub max_tail_residual: Option<Real>,
    pub sufficient: bool,
}

#[derive(Clone, Debug)]
pub struct SufficiencyScan {
    /// Smallest `N` whose full residual vector is below `delta`.
    pub minimal: Option<usize>,
    pub entries: Vec<ScanEntry>,
}

pub fn sufficiency_scan(n_max: usize, delta: &Real) -> Result<SufficiencyScan> {
    sufficiency_scan_with(n_max, delta, Exec::default())
}

/// Solves `N = 2 ..= n_max` independently and reports the smallest
/// sufficient `N`.
pub fn sufficiency_scan_with(n_max: usize, delta: &Real, exec: Exec) -> Result<SufficiencyScan> {
    if !(MIN_MODES..=MAX_MODES).contains(&n_max) {
        return Err(Error::Config(format!(
            "scan limit {n_max} outside {MIN_MODES}..={MAX_MODES}"
        )));
    }
    let entries = exec.map(n_max - 1, |i| {
        let modes = i + MIN_MODES;
        match galerkin_solve(modes, delta) {
            Ok(r) => ScanEntry {
                modes,
                max_tail_residual: Some(r.max_tail_residual()),
                sufficient: r.is_sufficient(),
            },
            Err(_) => ScanEntry {
                modes,
                max_tail_residual: None,
                sufficient: false,
            },
        }
    });
    let minimal = entries.iter().find(|e| e.sufficient).map(|e| e.modes);
    Ok(SufficiencyScan { minimal, entries })
}
