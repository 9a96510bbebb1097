use crate::error::{Error, Result};
use crate::real::{Precision, Real};

use super::DiagonalSeq;

/// Coefficients `C_nj` of `Σ C_nj sin(nx) sin(jt)`, `1 ≤ n ≤ nx`, `1 ≤ j ≤ nt`,
/// stored dense and row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffGrid {
    nx: usize,
    nt: usize,
    data: Vec<Real>,
}

impl CoeffGrid {
    pub fn zeros(p: Precision, nx: usize, nt: usize) -> Self {
        assert!(nx > 0 && nt > 0, "grid truncations must be positive");
        Self {
            nx,
            nt,
            data: vec![Real::zero(p); nx * nt],
        }
    }

    pub fn from_rows(nx: usize, nt: usize, data: Vec<Real>) -> Result<Self> {
        if nx == 0 || nt == 0 || data.len() != nx * nt {
            return Err(Error::Shape(format!(
                "{} coefficients for a {nx}x{nt} grid",
                data.len()
            )));
        }
        if data.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("coefficient grid"));
        }
        Ok(Self { nx, nt, data })
    }

    /// Square grid with `seq` on the diagonal.
    pub fn from_diagonal(seq: &DiagonalSeq) -> Self {
        let h = seq.max_harmonic();
        let mut g = Self::zeros(seq.precision(), h, h);
        for (j, c) in seq.harmonics() {
            g.set(j, j, c.clone());
        }
        g
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn nt(&self) -> usize {
        self.nt
    }

    pub fn precision(&self) -> Precision {
        self.data[0].precision()
    }

    pub fn data(&self) -> &[Real] {
        &self.data
    }

    fn idx(&self, n: usize, j: usize) -> usize {
        assert!(
            (1..=self.nx).contains(&n) && (1..=self.nt).contains(&j),
            "({n},{j}) outside {}x{} grid",
            self.nx,
            self.nt
        );
        (n - 1) * self.nt + (j - 1)
    }

    pub fn get(&self, n: usize, j: usize) -> &Real {
        &self.data[self.idx(n, j)]
    }

    /// Like `get`, but zero outside the stored truncation.
    pub fn get_or_zero(&self, n: usize, j: usize) -> Real {
        if (1..=self.nx).contains(&n) && (1..=self.nt).contains(&j) {
            self.get(n, j).clone()
        } else {
            Real::zero(self.precision())
        }
    }

    pub fn get_mut(&mut self, n: usize, j: usize) -> &mut Real {
        let i = self.idx(n, j);
        &mut self.data[i]
    }

    pub fn set(&mut self, n: usize, j: usize, v: Real) {
        let i = self.idx(n, j);
        self.data[i] = v;
    }

    /// Row `n` (1-based) as a slice over `j = 1..=nt`.
    pub fn row(&self, n: usize) -> &[Real] {
        let s = (n - 1) * self.nt;
        &self.data[s..s + self.nt]
    }

    /// `(n, j, value)` for every stored entry, row-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Real)> + '_ {
        let nt = self.nt;
        self.data
            .iter()
            .enumerate()
            .map(move |(i, v)| (i / nt + 1, i % nt + 1, v))
    }

    /// Nonzero `(j, value)` pairs of each row; index 0 is row `n = 1`.
    pub(crate) fn sparse_rows(&self) -> Vec<Vec<(usize, &Real)>> {
        (1..=self.nx)
            .map(|n| {
                self.row(n)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(i, v)| (i + 1, v))
                    .collect()
            })
            .collect()
    }

    pub fn map_indexed(&self, f: impl Fn(usize, usize, &Real) -> Real) -> Self {
        Self {
            nx: self.nx,
            nt: self.nt,
            data: self.entries().map(|(n, j, v)| f(n, j, v)).collect(),
        }
    }

    pub fn scaled(&self, s: &Real) -> Self {
        self.map_indexed(|_, _, v| v * s)
    }

    /// Copy into an `nx × nt` grid, truncating or zero-padding.
    pub fn resized(&self, nx: usize, nt: usize) -> Self {
        let mut g = Self::zeros(self.precision(), nx, nt);
        for n in 1..=nx.min(self.nx) {
            for j in 1..=nt.min(self.nt) {
                g.set(n, j, self.get(n, j).clone());
            }
        }
        g
    }

    /// `self + s·other` on the union of both truncations.
    pub fn add_scaled(&self, other: &CoeffGrid, s: &Real) -> Self {
        let mut g = self.resized(self.nx.max(other.nx), self.nt.max(other.nt));
        for (n, j, v) in other.entries() {
            if !v.is_zero() {
                g.get_mut(n, j).mul_add_assign(v, s);
            }
        }
        g
    }

    pub fn transpose(&self) -> Self {
        let mut g = Self::zeros(self.precision(), self.nt, self.nx);
        for (n, j, v) in self.entries() {
            g.set(j, n, v.clone());
        }
        g
    }

    pub fn max_abs(&self) -> Real {
        self.data
            .iter()
            .map(Real::abs)
            .fold(Real::zero(self.precision()), Real::max)
    }

    /// Largest `|C_nn|`.
    pub fn max_abs_diagonal(&self) -> Real {
        (1..=self.nx.min(self.nt))
            .map(|n| self.get(n, n).abs())
            .fold(Real::zero(self.precision()), Real::max)
    }

    /// Largest `|C_nj|` over `n ≠ j`.
    pub fn max_abs_offdiagonal(&self) -> Real {
        self.entries()
            .filter(|(n, j, _)| n != j)
            .map(|(_, _, v)| v.abs())
            .fold(Real::zero(self.precision()), Real::max)
    }

    /// Coefficients of `∂²/∂t²` of the field: `C_nj ↦ -j² C_nj`.
    pub fn d2_t(&self) -> Self {
        self.map_indexed(|_, j, v| -(v * (j * j) as i64))
    }

    /// Coefficients of `∂²/∂x²` of the field: `C_nj ↦ -n² C_nj`.
    pub fn d2_x(&self) -> Self {
        self.map_indexed(|n, _, v| -(v * (n * n) as i64))
    }

    /// Sum of `|C_nj|`, a bound on the sup-norm of the field.
    pub fn abs_sum(&self) -> Real {
        let mut acc = Real::zero(self.precision());
        for v in &self.data {
            acc += v.abs();
        }
        acc
    }
}

/// Coefficients `Q_pr` of `Σ Q_pr cos(px) cos(rt)`, `0 ≤ p ≤ px`, `0 ≤ r ≤ pt`.
///
/// Products of two sine–sine fields land in this basis.
#[derive(Clone, Debug, PartialEq)]
pub struct CosGrid {
    px: usize,
    pt: usize,
    data: Vec<Real>,
}

impl CosGrid {
    pub fn zeros(p: Precision, px: usize, pt: usize) -> Self {
        Self {
            px,
            pt,
            data: vec![Real::zero(p); (px + 1) * (pt + 1)],
        }
    }

    pub(crate) fn from_rows(px: usize, pt: usize, rows: Vec<Vec<Real>>) -> Self {
        debug_assert_eq!(rows.len(), px + 1);
        let data: Vec<Real> = rows.into_iter().flatten().collect();
        debug_assert_eq!(data.len(), (px + 1) * (pt + 1));
        Self { px, pt, data }
    }

    pub fn px(&self) -> usize {
        self.px
    }

    pub fn pt(&self) -> usize {
        self.pt
    }

    pub fn get(&self, p: usize, r: usize) -> &Real {
        assert!(p <= self.px && r <= self.pt);
        &self.data[p * (self.pt + 1) + r]
    }

    pub fn row(&self, p: usize) -> &[Real] {
        let s = p * (self.pt + 1);
        &self.data[s..s + self.pt + 1]
    }

    pub(crate) fn sparse_rows(&self) -> Vec<Vec<(usize, &Real)>> {
        (0..=self.px)
            .map(|p| {
                self.row(p)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Real)> + '_ {
        let w = self.pt + 1;
        self.data
            .iter()
            .enumerate()
            .map(move |(i, v)| (i / w, i % w, v))
    }
}
