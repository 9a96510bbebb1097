//! Real roots of polynomials of degree ≤ 3 in closed form, polished by Newton.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::Real;

/// Which qualifying root to take when several satisfy `|x| < 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootPick {
    /// Smallest `|x|`: the branch connected to decaying coefficients.
    #[default]
    SmallestAbs,
    /// First in ascending order of the real roots.
    FirstFound,
}

impl FromStr for RootPick {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "smallest-abs" => Ok(RootPick::SmallestAbs),
            "first-found" => Ok(RootPick::FirstFound),
            other => Err(Error::Config(format!(
                "unknown root pick {other:?} (expected smallest-abs or first-found)"
            ))),
        }
    }
}

impl fmt::Display for RootPick {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootPick::SmallestAbs => "smallest-abs",
            RootPick::FirstFound => "first-found",
        })
    }
}

/// `c[0] + c[1] x + c[2] x² + c[3] x³`.
pub fn eval_poly(c: &[Real; 4], x: &Real) -> Real {
    let mut acc = c[3].clone();
    for k in (0..3).rev() {
        acc = acc * x + &c[k];
    }
    acc
}

fn eval_deriv(c: &[Real; 4], x: &Real) -> Real {
    (&c[3] * 3 * x + &c[2] * 2) * x + &c[1]
}

fn polish(c: &[Real; 4], x: Real) -> Real {
    let fx = eval_poly(c, &x);
    let d = eval_deriv(c, &x);
    if d.is_zero() || fx.is_zero() {
        return x;
    }
    let y = &x - &(fx.clone() / d);
    if eval_poly(c, &y).abs() <= fx.abs() {
        y
    } else {
        x
    }
}

/// All real roots in ascending order (repeated roots listed once).
///
/// Coefficients below `2^-bits` times the largest one count as zero, so an
/// interpolated cubic whose true degree is lower degrades cleanly.
pub fn real_roots(c: &[Real; 4]) -> Result<Vec<Real>> {
    let p = c[0].precision();
    let scale = c.iter().map(Real::abs).fold(Real::zero(p), Real::max);
    if scale.is_zero() {
        return Err(Error::Domain {
            what: "polynomial",
            value: "0".into(),
            domain: "nonzero polynomials",
        });
    }
    let eps = &scale * Real::from_i64(p, 2).powi(-(p.bits() as i32) + 4);
    let degree = (0..4).rev().find(|&i| c[i].abs() > eps).unwrap_or(0);
    let mut roots = match degree {
        0 => Vec::new(),
        1 => vec![-(&c[0] / &c[1])],
        2 => quadratic(&c[2], &c[1], &c[0]),
        _ => cubic(c),
    };
    roots = roots.into_iter().map(|r| polish(c, r)).collect();
    roots.sort_by(|a, b| a.total_cmp(b));
    roots.dedup();
    Ok(roots)
}

fn quadratic(a: &Real, b: &Real, c: &Real) -> Vec<Real> {
    let disc = b.square() - a * c * 4;
    if disc.is_negative() {
        return Vec::new();
    }
    let sq = disc.sqrt();
    // avoid cancellation: q = -(b + sign(b)√disc)/2
    let q = if b.is_negative() {
        -(b - &sq) / 2
    } else {
        -(b + &sq) / 2
    };
    if q.is_zero() {
        return vec![Real::zero(a.precision())];
    }
    vec![&q / a, c / &q]
}

fn cubic(c: &[Real; 4]) -> Vec<Real> {
    let p = c[0].precision();
    let a = &c[2] / &c[3];
    let b = &c[1] / &c[3];
    let d = &c[0] / &c[3];
    // x = t − a/3:  t³ + P t + Q = 0
    let shift = &a / 3;
    let pp = &b - a.square() / 3;
    let qq = a.powi(3) * 2 / 27 - &a * &b / 3 + &d;
    let disc = -(pp.powi(3) * 4 + qq.square() * 27);
    let ts: Vec<Real> = if disc.is_zero() {
        if pp.is_zero() {
            vec![Real::zero(p)]
        } else {
            vec![&qq * 3 / &pp, -(&qq * 3) / (&pp * 2)]
        }
    } else if disc.is_negative() {
        let s = (qq.square() / 4 + pp.powi(3) / 27).sqrt();
        let half = -(&qq / 2);
        vec![(&half + &s).cbrt() + (&half - &s).cbrt()]
    } else {
        let m = (-(&pp / 3)).sqrt() * 2;
        let arg = (&qq * 3 / (&pp * 2)) * (Real::from_i64(p, -3) / &pp).sqrt();
        let arg = arg.max(Real::from_i64(p, -1));
        let arg = if arg > 1.0 { Real::one(p) } else { arg };
        let theta = arg.acos() / 3;
        let third = Real::pi(p) * 2 / 3;
        (0..3).map(|k| &m * (&theta - &third * k).cos()).collect()
    };
    ts.into_iter().map(|t| t - &shift).collect()
}

/// A real root with `|x| < 1`, chosen by `pick`.
pub fn solve_cubic_real_unit(c: &[Real; 4], pick: RootPick) -> Result<Real> {
    let roots = real_roots(c)?;
    let mut ok = roots.into_iter().filter(|r| r.abs() < 1.0);
    let chosen = match pick {
        RootPick::FirstFound => ok.next(),
        RootPick::SmallestAbs => ok.min_by(|x, y| x.abs().total_cmp(&y.abs())),
    };
    chosen.ok_or_else(|| Error::NoQualifyingRoot {
        context: format!(
            "polynomial {} + {} x + {} x^2 + {} x^3",
            c[0].to_sci(6),
            c[1].to_sci(6),
            c[2].to_sci(6),
            c[3].to_sci(6)
        ),
    })
}

/// Coefficients of the cubic through four points (Newton divided differences).
pub fn interpolate_cubic(xs: &[Real; 4], ys: &[Real; 4]) -> [Real; 4] {
    let mut dd = ys.clone();
    for level in 1..4 {
        for i in (level..4).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // expand dd[0] + dd[1](x−x0) + dd[2](x−x0)(x−x1) + dd[3](x−x0)(x−x1)(x−x2)
    let p = ys[0].precision();
    let mut out = [Real::zero(p), Real::zero(p), Real::zero(p), Real::zero(p)];
    let mut basis = [Real::one(p), Real::zero(p), Real::zero(p), Real::zero(p)];
    for (level, coef) in dd.iter().enumerate() {
        for k in 0..4 {
            out[k].mul_add_assign(coef, &basis[k]);
        }
        if level < 3 {
            let mut next = [Real::zero(p), Real::zero(p), Real::zero(p), Real::zero(p)];
            for k in 0..4 {
                next[k].mul_sub_assign(&basis[k], &xs[level]);
                if k > 0 {
                    next[k] += &basis[k - 1];
                }
            }
            basis = next;
        }
    }
    out
}
