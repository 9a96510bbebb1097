//! Test-only oracles and published reference values.
#![allow(dead_code)]

use phi4_standing::coeff_algebra::{CoeffGrid, CosGrid, DiagonalSeq};
use phi4_standing::{Precision, Real};

pub fn prec() -> Precision {
    Precision::default()
}

pub fn r(s: &str) -> Real {
    Real::parse(prec(), s).unwrap()
}

pub fn seq_from_f64(xs: &[f64]) -> DiagonalSeq {
    DiagonalSeq::new(xs.iter().map(|&x| Real::from_f64(prec(), x)).collect()).unwrap()
}

/// `|a − b| ≤ tol`.
pub fn close(a: &Real, b: &Real, tol: f64) -> bool {
    (a - b).abs() <= tol
}

/// `|a − b| ≤ tol·|b|`.
pub fn rel_close(a: &Real, b: &Real, tol: f64) -> bool {
    (a - b).abs() <= b.abs() * Real::from_f64(b.precision(), tol)
}

/// Tolerance of half a unit in the last printed digit of `printed`.
pub fn half_ulp(printed: &str) -> Real {
    let (mant, exp) = printed.split_once('e').unwrap_or((printed, "0"));
    let exp: i32 = exp.parse().unwrap();
    let decimals = mant.split_once('.').map_or(0, |(_, f)| f.len()) as i32;
    Real::from_i64(prec(), 10).powi(exp - decimals) / 2
}

/// Galerkin column `c_j`, harmonics 1..=15.
pub const TABLE_C: [(usize, &str); 8] = [
    (1, "1"),
    (3, "1.44162661711e-2"),
    (5, "2.04917177408e-4"),
    (7, "2.91274649724e-6"),
    (9, "4.14025418115e-8"),
    (11, "5.88506592014e-10"),
    (13, "8.36488192079e-12"),
    (15, "1.18901919266e-13"),
];

/// Closed-form column `d_j`, harmonics 1..=45.
pub const TABLE_D: [(usize, &str); 23] = [
    (1, "1"),
    (3, "1.44162661711e-2"),
    (5, "2.04917177419e-4"),
    (7, "2.91274651543e-6"),
    (9, "4.14025430425e-8"),
    (11, "5.88506607528e-10"),
    (13, "8.36518729655e-12"),
    (15, "1.1890496659e-13"),
    (17, "1.69014638629e-15"),
    (19, "2.40241840942e-17"),
    (21, "3.41486054743e-19"),
    (23, "4.85397236079e-21"),
    (25, "6.89956364312e-23"),
    (27, "9.8072207518e-25"),
    (29, "1.39402408398e-26"),
    (31, "1.98150240103e-28"),
    (33, "2.81655949163e-30"),
    (35, "4.00353154544e-32"),
    (37, "5.69072475939e-34"),
    (39, "8.08894545219e-36"),
    (41, "1.14978392551e-37"),
    (43, "1.63433303287e-39"),
    (45, "2.32308384477e-41"),
];

/// Series length that reproduces the printed closed-form column.
pub const TABLE_SERIES_TERMS: usize = 7;

pub const REF_Q: &str = "1.42142623201e-2";
pub const REF_K: &str = "0.451075598811";
pub const REF_GAMMA: &str = "3.78191440007";
pub const REF_ALPHA: &str = "1.0576653982";
pub const REF_OMEGA1: &str = "1.0983600974";
pub const REF_OMEGA2: &str = "-0.6031974518";
pub const REF_C_OMEGA: &str = "0.28268003454";

/// `sin(n π i / m)` for `i = 1..m`, `n = 1..=top`.
fn sine_table(m: usize, top: usize) -> Vec<Vec<Real>> {
    let p = prec();
    let pi = Real::pi(p);
    (1..m)
        .map(|i| {
            (1..=top)
                .map(|n| (&pi * (n * i) as i64 / m as i64).sin())
                .collect()
        })
        .collect()
}

fn cosine_table(m: usize, top: usize) -> Vec<Vec<Real>> {
    let p = prec();
    let pi = Real::pi(p);
    (0..=m)
        .map(|i| {
            (0..=top)
                .map(|n| (&pi * (n * i) as i64 / m as i64).cos())
                .collect()
        })
        .collect()
}

/// Oversampling factor for the collocation grids.
pub const OVERSAMPLE: usize = 4;

/// Values of a sine–sine grid at interior nodes `(π i/m, π k/m)`.
fn sample_sine(u: &CoeffGrid, sx: &[Vec<Real>], st: &[Vec<Real>]) -> Vec<Vec<Real>> {
    let p = prec();
    sx.iter()
        .map(|sxi| {
            st.iter()
                .map(|stk| {
                    let mut acc = Real::zero(p);
                    for (n, j, v) in u.entries() {
                        if !v.is_zero() {
                            acc += v * &sxi[n - 1] * &stk[j - 1];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Sine–sine coefficients of `u³` by pointwise cubing on an oversampled
/// grid and a two-dimensional discrete sine transform.
pub fn collocation_cube(u: &CoeffGrid) -> CoeffGrid {
    let p = prec();
    let (ox, ot) = (3 * u.nx(), 3 * u.nt());
    let m = OVERSAMPLE * ox.max(ot) + 1;
    let top = ox.max(ot).max(u.nx()).max(u.nt());
    let s = sine_table(m, top);
    let vals = sample_sine(u, &s, &s);
    let cubes: Vec<Vec<Real>> = vals
        .iter()
        .map(|row| row.iter().map(|v| v.powi(3)).collect())
        .collect();
    // inverse DST-I: c_n = (2/m) Σ_i f_i sin(nπi/m)
    let norm = Real::from_i64(p, 2) / m as i64;
    let mut half = vec![vec![Real::zero(p); ot]; m - 1];
    for (i, row) in cubes.iter().enumerate() {
        for j in 1..=ot {
            let mut acc = Real::zero(p);
            for (k, f) in row.iter().enumerate() {
                acc.mul_add_assign(f, &s[k][j - 1]);
            }
            half[i][j - 1] = acc * &norm;
        }
    }
    let mut out = CoeffGrid::zeros(p, ox, ot);
    for n in 1..=ox {
        for j in 1..=ot {
            let mut acc = Real::zero(p);
            for (i, row) in half.iter().enumerate() {
                acc.mul_add_assign(&row[j - 1], &s[i][n - 1]);
            }
            out.set(n, j, acc * &norm);
        }
    }
    out
}

/// Cosine–cosine coefficients of `u·v` by collocation and a discrete cosine
/// transform; index `(p, r)` runs from 0.
pub fn collocation_product(u: &CoeffGrid, v: &CoeffGrid) -> Vec<Vec<Real>> {
    let p = prec();
    let (px, pt) = (u.nx() + v.nx(), u.nt() + v.nt());
    let m = OVERSAMPLE * px.max(pt) + 1;
    let top = px.max(pt);
    let s = sine_table(m, top);
    let c = cosine_table(m, top);
    // nodes i = 0 and i = m give zero for sine fields; pad them
    let pad = |g: Vec<Vec<Real>>| -> Vec<Vec<Real>> {
        let width = m + 1;
        let mut out = vec![vec![Real::zero(p); width]; width];
        for (i, row) in g.into_iter().enumerate() {
            for (k, x) in row.into_iter().enumerate() {
                out[i + 1][k + 1] = x;
            }
        }
        out
    };
    let fu = pad(sample_sine(u, &s, &s));
    let fv = pad(sample_sine(v, &s, &s));
    let prod: Vec<Vec<Real>> = fu
        .iter()
        .zip(&fv)
        .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x * y).collect())
        .collect();
    // DCT-I with halved endpoint weights, then halve the 0 and m coefficients
    let weight = |i: usize| if i == 0 || i == m { 1i64 } else { 2 };
    let coef = |grid: &dyn Fn(usize) -> Real, n: usize| -> Real {
        let mut acc = Real::zero(p);
        for i in 0..=m {
            acc += grid(i) * &c[i][n] * weight(i);
        }
        let mut v = acc / (2 * m) as i64;
        if n != 0 && n != m {
            v *= 2;
        }
        v
    };
    let half: Vec<Vec<Real>> = (0..=m)
        .map(|i| (0..=pt).map(|r| coef(&|k| prod[i][k].clone(), r)).collect())
        .collect();
    (0..=px)
        .map(|q| (0..=pt).map(|r| coef(&|i| half[i][r].clone(), q)).collect())
        .collect()
}

pub fn cos_grid_rows(g: &CosGrid) -> Vec<Vec<Real>> {
    (0..=g.px()).map(|q| g.row(q).to_vec()).collect()
}

/// Diagonal residual written out term by term as the printed sum formula
/// (harmonic indices `≤ 0` or beyond the truncation read as zero).
pub fn printed_residual(a: &DiagonalSeq, omega1: &Real, j: usize) -> Real {
    let p = a.precision();
    let h = a.max_harmonic() as i64;
    let at = |i: i64| -> Real {
        if i < 1 || i % 2 == 0 || i > h {
            Real::zero(p)
        } else {
            a.at(i as usize).unwrap().clone()
        }
    };
    let j = j as i64;
    let lim = 3 * h + 5;
    let aj = at(j);
    let mut t = aj.powi(3) * 9 + aj.square() * at(3 * j) * 3;
    let mut s1 = Real::zero(p);
    for s in (1..lim).filter(|&s| s != j) {
        s1 += at(s).square() * 2 + at(s) * at(2 * j + s);
    }
    let mut s2 = Real::zero(p);
    for s in (1..2 * j).filter(|&s| s != j) {
        s2 += at(s) * at(2 * j - s);
    }
    let bracket = s1 * 6 + s2 * 3 - omega1 * (32 * j * j);
    t += &aj * bracket;
    let mut s3 = Real::zero(p);
    let mut s4 = Real::zero(p);
    for s in (1..lim).filter(|&s| s != j) {
        for q in (1..lim).filter(|&q| q != j) {
            s3 += at(s) * at(q) * at(j + s + q);
            if q != 2 * j - s {
                s4 += at(s) * at(q) * at(s + q - j);
            }
        }
    }
    t += s3 * 3 + s4 * 3;
    for s in 1..=j - 2 {
        for q in 1..=j - 2 {
            t += at(s) * at(q) * at(j - s - q);
        }
    }
    t
}
