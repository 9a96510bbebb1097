use std::io::Write;

use crate::coeff_algebra::CoeffGrid;
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::real::{Precision, Real};

use super::build::AsymptoticSolution;

pub const MIN_SCAN_GRID: usize = 64;

/// `[sin(x), sin(2x), …, sin(n x)]`.
fn sines(x: &Real, n: usize) -> Vec<Real> {
    (1..=n).map(|k| (x * k as i64).sin()).collect()
}

fn sum_series(c: &CoeffGrid, sx: &[Real], st: &[Real]) -> Real {
    let mut acc = Real::zero(c.precision());
    for n in 1..=c.nx() {
        let mut inner = Real::zero(c.precision());
        for (j, v) in c.row(n).iter().enumerate() {
            if !v.is_zero() {
                inner.mul_add_assign(v, &st[j]);
            }
        }
        acc.mul_add_assign(&inner, &sx[n - 1]);
    }
    acc
}

/// `φ₀ + εφ₁ + ε²φ₂` at `(x, t)`, with `t̃ = ω(ε) t`, by direct summation.
pub fn evaluate_field(sol: &AsymptoticSolution, x: &Real, t: &Real) -> Real {
    let c = sol.combined_grid(&sol.epsilon);
    let tt = sol.omega() * t;
    sum_series(&c, &sines(x, c.nx()), &sines(&tt, c.nt()))
}

/// Field values `[i][k]` at `(xs[i], ts[k])`, with `ts` in the `t̃` variable.
///
/// Separable: first `Σ_j C_nj sin(j t̃_k)` for each row `n`, then the sum over
/// `n`. Both stages parallelize over independent outputs.
pub fn field_on_grid(c: &CoeffGrid, xs: &[Real], ts: &[Real], exec: Exec) -> Vec<Vec<Real>> {
    let p = c.precision();
    let st = exec.map(ts.len(), |k| sines(&ts[k], c.nt()));
    let sx = exec.map(xs.len(), |i| sines(&xs[i], c.nx()));
    let inner: Vec<Vec<Real>> = exec.map(c.nx(), |i| {
        let row = c.row(i + 1);
        st.iter()
            .map(|s| {
                let mut acc = Real::zero(p);
                for (v, sv) in row.iter().zip(s) {
                    if !v.is_zero() {
                        acc.mul_add_assign(v, sv);
                    }
                }
                acc
            })
            .collect()
    });
    exec.map(xs.len(), |i| {
        (0..ts.len())
            .map(|k| {
                let mut acc = Real::zero(p);
                for (n, row) in inner.iter().enumerate() {
                    acc.mul_add_assign(&row[k], &sx[i][n]);
                }
                acc
            })
            .collect()
    })
}

/// Midpoint grid on one period: `2π (i + ½) / size`.
fn period_grid(p: Precision, size: usize) -> Vec<Real> {
    let step = Real::pi(p) * 2 / size as i64;
    (0..size)
        .map(|i| &step * (2 * i as i64 + 1) / 2)
        .collect()
}

#[derive(Clone, Debug)]
pub struct ResidualPoint {
    pub epsilon: Real,
    /// Sup over the grid of `|φₓₓ − φₜₜ − εφ³|`.
    pub residual: Real,
    /// `residual / ε³`; `None` at `ε = 0`.
    pub scaled: Option<Real>,
}

pub fn pde_residual_scan(
    sol: &AsymptoticSolution,
    epsilons: &[Real],
    grid_size: usize,
) -> Result<Vec<ResidualPoint>> {
    pde_residual_scan_with(sol, epsilons, grid_size, Exec::default())
}

/// PDE residual of the truncated expansion for each `ε`, on a
/// `grid_size × grid_size` grid over one period in `x` and `t̃`.
///
/// Derivatives are taken term by term on the coefficients; only the cube is
/// formed pointwise.
pub fn pde_residual_scan_with(
    sol: &AsymptoticSolution,
    epsilons: &[Real],
    grid_size: usize,
    exec: Exec,
) -> Result<Vec<ResidualPoint>> {
    if grid_size < MIN_SCAN_GRID {
        return Err(Error::Config(format!(
            "scan grid {grid_size} below minimum {MIN_SCAN_GRID}"
        )));
    }
    let p = sol.phi0.precision();
    let pts = period_grid(p, grid_size);
    epsilons
        .iter()
        .map(|eps| {
            if eps.is_negative() {
                return Err(Error::Domain {
                    what: "epsilon",
                    value: eps.to_sci(17),
                    domain: "[0, ∞)",
                });
            }
            let c = sol.combined_grid(eps);
            let w2 = sol.omega_at(eps).square();
            // φₓₓ − ω² φ_t̃t̃ has coefficients (ω² j² − n²) C_nj
            let lin = c.map_indexed(|n, j, v| {
                v * (&w2 * (j * j) as i64 - Real::from_i64(p, (n * n) as i64))
            });
            let phi = field_on_grid(&c, &pts, &pts, exec);
            let l = field_on_grid(&lin, &pts, &pts, exec);
            let rows = exec.map(grid_size, |i| {
                phi[i]
                    .iter()
                    .zip(&l[i])
                    .map(|(f, lv)| (lv - eps * f.powi(3)).abs())
                    .fold(Real::zero(p), Real::max)
            });
            let residual = rows.into_iter().fold(Real::zero(p), Real::max);
            let scaled = (!eps.is_zero()).then(|| &residual / eps.powi(3));
            Ok(ResidualPoint {
                epsilon: eps.clone(),
                residual,
                scaled,
            })
        })
        .collect()
}

/// CSV `x,t,phi` on an `nx × nt` grid covering one period in `x` and in `t`.
pub fn write_field_csv<W: Write>(
    sol: &AsymptoticSolution,
    w: W,
    nx: usize,
    nt: usize,
    sig: usize,
) -> Result<()> {
    if nx == 0 || nt == 0 {
        return Err(Error::Config("field grid must be non-empty".into()));
    }
    let p = sol.phi0.precision();
    let omega = sol.omega();
    let xs = period_grid(p, nx);
    let tts = period_grid(p, nt);
    let c = sol.combined_grid(&sol.epsilon);
    let vals = field_on_grid(&c, &xs, &tts, Exec::default());
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["x", "t", "phi"])?;
    for (i, x) in xs.iter().enumerate() {
        for (k, tt) in tts.iter().enumerate() {
            let t = tt / &omega;
            out.write_record([x.to_sci(sig), t.to_sci(sig), vals[i][k].to_sci(sig)])?;
        }
    }
    out.flush()?;
    Ok(())
}
