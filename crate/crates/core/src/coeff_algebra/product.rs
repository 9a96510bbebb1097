//! Product-to-sum convolutions for sine–sine and cosine–cosine series.
//!
//! The kernels enumerate, for every output row, the input row pairs that can
//! reach it, so rows are computed independently and the result does not
//! depend on the execution policy.

use crate::par::Exec;
use crate::real::Real;

use super::{CoeffGrid, CosGrid, DiagonalSeq};

/// Input rows `m` such that `sin(nx)·sin(mx)` has a `cos(px)` component,
/// with the sign of that component.
///
/// `sin(nx) sin(mx) = ½[cos((n-m)x) - cos((n+m)x)]`.
fn sine_sine_partners(n: usize, p: usize) -> impl Iterator<Item = (usize, bool)> {
    let a = (n > p).then(|| (n - p, true));
    let b = (p > 0).then_some((n + p, true));
    let c = (p > n).then(|| (p - n, false));
    a.into_iter().chain(b).chain(c)
}

/// Input rows `m` such that `cos(px)·sin(mx)` has a `sin(nx)` component,
/// with its sign. For `p = 0` the row `m = n` appears twice, once per half
/// of `cos(px) sin(mx) = ½[sin((m+p)x) + sin((m-p)x)]`.
fn cos_sine_partners(n: usize, p: usize) -> impl Iterator<Item = (usize, bool)> {
    let a = (n > p).then(|| (n - p, true));
    let b = Some((n + p, true));
    let c = (p > n).then(|| (p - n, false));
    a.into_iter().chain(b).chain(c)
}

fn accumulate(acc: &mut Real, a: &Real, b: &Real, positive: bool) {
    if positive {
        acc.mul_add_assign(a, b);
    } else {
        acc.mul_sub_assign(a, b);
    }
}

/// Exact product of two sine–sine fields in the cosine–cosine basis.
///
/// Output truncation is the sum of the input truncations, so nothing aliases.
pub fn product_sine_sine(u: &CoeffGrid, v: &CoeffGrid) -> CosGrid {
    product_sine_sine_with(u, v, None, Exec::default())
}

/// [`product_sine_sine`] with an optional `(px, pt)` output cap.
pub fn product_sine_sine_with(
    u: &CoeffGrid,
    v: &CoeffGrid,
    cap: Option<(usize, usize)>,
    exec: Exec,
) -> CosGrid {
    let (mut px, mut pt) = (u.nx() + v.nx(), u.nt() + v.nt());
    if let Some((cx, ct)) = cap {
        px = px.min(cx);
        pt = pt.min(ct);
    }
    let prec = u.precision();
    let ur = u.sparse_rows();
    let vr = v.sparse_rows();
    let rows = exec.map(px + 1, |p| {
        let mut acc = vec![Real::zero(prec); pt + 1];
        for (n, urow) in ur.iter().enumerate().map(|(i, r)| (i + 1, r)) {
            if urow.is_empty() {
                continue;
            }
            for (m, xsign) in sine_sine_partners(n, p) {
                let Some(vrow) = vr.get(m - 1) else { continue };
                for &(j, uj) in urow {
                    for &(l, vl) in vrow {
                        let d = j.abs_diff(l);
                        let s = j + l;
                        if d <= pt {
                            accumulate(&mut acc[d], uj, vl, xsign);
                        }
                        if s <= pt {
                            accumulate(&mut acc[s], uj, vl, !xsign);
                        }
                    }
                }
            }
        }
        for a in &mut acc {
            *a /= 4;
        }
        acc
    });
    CosGrid::from_rows(px, pt, rows)
}

/// Product of a cosine–cosine field with a sine–sine field, in the
/// sine–sine basis.
pub fn mul_cos_sine(q: &CosGrid, w: &CoeffGrid) -> CoeffGrid {
    mul_cos_sine_with(q, w, None, Exec::default())
}

/// [`mul_cos_sine`] with an optional `(nx, nt)` output cap.
pub fn mul_cos_sine_with(
    q: &CosGrid,
    w: &CoeffGrid,
    cap: Option<(usize, usize)>,
    exec: Exec,
) -> CoeffGrid {
    let (mut nx, mut nt) = (w.nx() + q.px(), w.nt() + q.pt());
    if let Some((cx, ct)) = cap {
        nx = nx.min(cx);
        nt = nt.min(ct);
    }
    let prec = w.precision();
    let qr = q.sparse_rows();
    let wr = w.sparse_rows();
    let rows = exec.map(nx, |i| {
        let n = i + 1;
        let mut acc = vec![Real::zero(prec); nt + 1];
        for (p, qrow) in qr.iter().enumerate() {
            if qrow.is_empty() {
                continue;
            }
            for (m, xsign) in cos_sine_partners(n, p) {
                let Some(wrow) = wr.get(m - 1) else { continue };
                for &(r, qv) in qrow {
                    for &(l, wv) in wrow {
                        let s = l + r;
                        if s <= nt {
                            accumulate(&mut acc[s], qv, wv, xsign);
                        }
                        if l > r {
                            if l - r <= nt {
                                accumulate(&mut acc[l - r], qv, wv, xsign);
                            }
                        } else if r > l && r - l <= nt {
                            accumulate(&mut acc[r - l], qv, wv, !xsign);
                        }
                    }
                }
            }
        }
        acc.remove(0);
        for a in &mut acc {
            *a /= 4;
        }
        acc
    });
    CoeffGrid::from_rows(nx, nt, rows.into_iter().flatten().collect())
        .expect("product of finite grids is finite")
}

/// `u³` for a general sine–sine field.
pub fn cube_field(u: &CoeffGrid, exec: Exec) -> CoeffGrid {
    let sq = product_sine_sine_with(u, u, None, exec);
    mul_cos_sine_with(&sq, u, None, exec)
}

/// Sine–sine coefficients `D_nj` of `(Σ a_j sin(jx) sin(jt))³`, exact up to
/// harmonic `3(2N-1)` in each direction.
pub fn cube_diagonal_field(a: &DiagonalSeq) -> CoeffGrid {
    cube_diagonal_field_with(a, Exec::default())
}

pub fn cube_diagonal_field_with(a: &DiagonalSeq, exec: Exec) -> CoeffGrid {
    cube_field(&CoeffGrid::from_diagonal(a), exec)
}

/// Product of two cosine series `Σ a_i cos(iz)` and `Σ b_k cos(ik)`.
pub(crate) fn cos_series_product(a: &[Real], b: &[Real]) -> Vec<Real> {
    let prec = a[0].precision();
    let mut out = vec![Real::zero(prec); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
        for (k, bk) in b.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            out[i.abs_diff(k)].mul_add_assign(ai, bk);
            out[i + k].mul_add_assign(ai, bk);
        }
    }
    for o in &mut out {
        *o /= 2;
    }
    out
}

/// Cosine coefficients of `U(z)³` where `U(z) = Σ a_j cos(jz)`; index is the
/// harmonic, length `3(2N-1) + 1`.
///
/// Along the light cone `φ₀ = ½[U(x-t) - U(x+t)]`, so this one-dimensional
/// cube carries every diagonal coefficient of `φ₀³`.
pub fn cosine_cube(a: &DiagonalSeq) -> Vec<Real> {
    let prec = a.precision();
    let mut u = vec![Real::zero(prec); a.max_harmonic() + 1];
    for (j, c) in a.harmonics() {
        u[j] = c.clone();
    }
    let u2 = cos_series_product(&u, &u);
    cos_series_product(&u2, &u)
}
