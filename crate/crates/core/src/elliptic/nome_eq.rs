//! The nome equation
//! `3 Σ f_{2n-1}² − (¼ + Σ qⁿ/(1+q²ⁿ))² + 2 (Σ f_{2n-1})² = 0`,
//! whose root makes the elliptic-cosine profile solve the resonance system.

use crate::error::{Error, Result};
use crate::real::{Precision, Real};

/// Terms needed so that `q^N < 10^-(digits + 10)`.
pub fn series_terms(q: &Real) -> usize {
    let digits = f64::from(q.precision().digits()) + 10.0;
    let lq = -q.to_f64().log10();
    if lq <= 0.0 {
        return 1;
    }
    (digits / lq).ceil() as usize + 1
}

/// Left side of the nome equation and its derivative in `q`.
pub fn nome_equation_with_derivative(q: &Real, n_terms: usize) -> (Real, Real) {
    let p = q.precision();
    let one = Real::one(p);
    let mut s1 = Real::zero(p);
    let mut s2 = Real::zero(p);
    let mut ds1 = Real::zero(p);
    let mut ds2 = Real::zero(p);
    let mut d = Real::ratio(p, 1, 4);
    let mut dd = Real::zero(p);
    let sq = q.sqrt();
    for n in 1..=n_terms {
        let m = (2 * n - 1) as i64;
        // f = q^{m/2} / (1 + q^m), f' = f · m/(2q) · (1 − q^m)/(1 + q^m)
        let qm = q.powi(m as i32);
        let f = &sq * q.powi(n as i32 - 1) / (&one + &qm);
        let fp = &f * m / (q * 2) * (&one - &qm) / (&one + &qm);
        s1 += &f;
        s2.mul_add_assign(&f, &f);
        ds1 += &fp;
        ds2.mul_add_assign(&f, &fp);
        // g = qⁿ / (1 + q²ⁿ), g' = g · n/q · (1 − q²ⁿ)/(1 + q²ⁿ)
        let q2n = q.powi(2 * n as i32);
        let g = q.powi(n as i32) / (&one + &q2n);
        let gp = &g * n as i64 / q * (&one - &q2n) / (&one + &q2n);
        d += g;
        dd += gp;
    }
    let value = &s2 * 3 - d.square() + s1.square() * 2;
    let deriv = ds2 * 6 - &d * &dd * 2 + &s1 * &ds1 * 4;
    (value, deriv)
}

pub fn nome_equation_residual(q: &Real, n_terms: usize) -> Real {
    nome_equation_with_derivative(q, n_terms).0
}

/// Root of the nome equation with its provenance.
#[derive(Clone, Debug)]
pub struct NomeSolution {
    pub q: Real,
    pub residual: Real,
    /// Bracket found by the scan.
    pub bracket: (Real, Real),
    /// Sign changes seen on the scan grid; the first one is refined.
    pub sign_changes: usize,
    pub newton_steps: usize,
}

const SCAN_POINTS: usize = 96;
const SCAN_LO: f64 = 1e-4;
const SCAN_HI: f64 = 0.9;

/// Root of the nome equation on `(0, 1)`.
///
/// Scans `(1e-4, 0.9)` on a log grid for sign changes, bisects the first
/// bracket and polishes with safeguarded Newton until the step is below
/// `tolerance`.
pub fn solve_nome(p: Precision, tolerance: &Real) -> Result<NomeSolution> {
    solve_nome_with_terms(p, tolerance, None)
}

/// [`solve_nome`] with every series cut at a fixed `terms` instead of the
/// precision-driven [`series_terms`]. A short truncation gives the root of
/// the truncated equation, which differs from the true root in the last
/// digits.
pub fn solve_nome_with_terms(
    p: Precision,
    tolerance: &Real,
    terms: Option<usize>,
) -> Result<NomeSolution> {
    if terms == Some(0) {
        return Err(Error::Config("nome series needs at least one term".into()));
    }
    let floor = p.epsilon(5);
    if *tolerance < floor {
        return Err(Error::Config(format!(
            "nome tolerance {} is below 1e-{} at {} digits",
            tolerance.to_sci(3),
            p.digits() - 5,
            p.digits()
        )));
    }
    let eval = |q: &Real| nome_equation_with_derivative(q, terms.unwrap_or_else(|| series_terms(q)));

    let grid: Vec<Real> = (0..SCAN_POINTS)
        .map(|i| {
            let t = i as f64 / (SCAN_POINTS - 1) as f64;
            Real::from_f64(p, SCAN_LO.ln() + t * (SCAN_HI.ln() - SCAN_LO.ln())).exp()
        })
        .collect();
    let signs: Vec<bool> = grid.iter().map(|q| eval(q).0.is_negative()).collect();
    let changes: Vec<usize> = (1..grid.len()).filter(|&i| signs[i] != signs[i - 1]).collect();
    let Some(&first) = changes.first() else {
        return Err(Error::Bracket(format!(
            "nome equation keeps one sign on ({SCAN_LO}, {SCAN_HI})"
        )));
    };
    let bracket = (grid[first - 1].clone(), grid[first].clone());

    let (mut lo, mut hi) = bracket.clone();
    let lo_negative = signs[first - 1];
    // bisect to a narrow bracket where Newton is safe
    let coarse = Real::parse(p, "1e-8")?;
    while (&hi - &lo) > coarse {
        let mid = (&lo + &hi) / 2;
        if eval(&mid).0.is_negative() == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let mut q = (&lo + &hi) / 2;
    let mut steps = 0;
    for _ in 0..100 {
        let (v, dv) = eval(&q);
        if v.is_zero() {
            break;
        }
        if v.is_negative() == lo_negative {
            lo = q.clone();
        } else {
            hi = q.clone();
        }
        let mut next = &q - &(v / &dv);
        if next <= lo || next >= hi || dv.is_zero() {
            next = (&lo + &hi) / 2;
        }
        let step = (&next - &q).abs();
        q = next;
        steps += 1;
        if step < (tolerance * &Real::parse(p, "1e-3")?).max(floor.clone() * &Real::parse(p, "1e-3")?) {
            break;
        }
    }
    let residual = eval(&q).0;
    Ok(NomeSolution {
        q,
        residual,
        bracket,
        sign_changes: changes.len(),
        newton_steps: steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vanishing_nome_limit() {
        let p = Precision::default();
        let q = Real::parse(p, "1e-30").unwrap();
        let r = nome_equation_residual(&q, series_terms(&q));
        assert!((r + Real::ratio(p, 1, 16)).abs() < 1e-25);
    }

    #[test]
    fn positive_at_one_half() {
        let p = Precision::default();
        let q = Real::ratio(p, 1, 2);
        assert!(nome_equation_residual(&q, series_terms(&q)) > 0.0);
    }

    #[test]
    fn derivative_matches_central_difference() {
        let p = Precision::default();
        let q = Real::parse(p, "0.03").unwrap();
        let h = Real::parse(p, "1e-15").unwrap();
        let n = series_terms(&q);
        let (_, d) = nome_equation_with_derivative(&q, n);
        let fd = (nome_equation_residual(&(&q + &h), n) - nome_equation_residual(&(&q - &h), n)) / (h * 2);
        assert!((d - fd).abs() < 1e-20);
    }

    #[test]
    fn truncated_series_moves_root_slightly() {
        let p = Precision::default();
        let tol = p.epsilon(5);
        let full = solve_nome(p, &tol).unwrap().q;
        let seven = solve_nome_with_terms(p, &tol, Some(7)).unwrap().q;
        let diff = (full - seven).abs();
        assert!(diff > 1e-16 && diff < 1e-14);
        assert!(solve_nome_with_terms(p, &tol, Some(0)).is_err());
    }

    #[test]
    fn tolerance_floor_enforced() {
        let p = Precision::from_digits(30);
        assert!(solve_nome(p, &Real::parse(p, "1e-29").unwrap()).is_err());
    }
}
