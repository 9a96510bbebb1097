use crate::error::{Error, Result};
use crate::real::{Precision, Real};

/// Coefficients `a_j` of an odd-harmonic diagonal standing wave
/// `Σ a_j sin(jx) sin(jt)`, `j = 1, 3, …, 2N-1`.
///
/// Slot `i` holds harmonic `2i + 1`; even harmonics are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalSeq {
    coeffs: Vec<Real>,
}

impl DiagonalSeq {
    pub fn new(coeffs: Vec<Real>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Shape("diagonal sequence needs at least one mode".into()));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("diagonal sequence"));
        }
        Ok(Self { coeffs })
    }

    pub fn zeros(p: Precision, modes: usize) -> Self {
        assert!(modes > 0, "diagonal sequence needs at least one mode");
        Self {
            coeffs: vec![Real::zero(p); modes],
        }
    }

    /// Number of stored odd modes `N`.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn max_harmonic(&self) -> usize {
        2 * self.coeffs.len() - 1
    }

    pub fn precision(&self) -> Precision {
        self.coeffs[0].precision()
    }

    pub fn coeffs(&self) -> &[Real] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Real> {
        self.coeffs
    }

    /// Coefficient at `harmonic`; `None` for even or out-of-range harmonics.
    pub fn at(&self, harmonic: usize) -> Option<&Real> {
        if harmonic % 2 == 0 {
            return None;
        }
        self.coeffs.get(harmonic / 2)
    }

    /// Panics on even or out-of-range harmonics.
    pub fn set(&mut self, harmonic: usize, value: Real) {
        assert!(harmonic % 2 == 1, "only odd harmonics are stored");
        self.coeffs[harmonic / 2] = value;
    }

    /// `(harmonic, coefficient)` pairs.
    pub fn harmonics(&self) -> impl Iterator<Item = (usize, &Real)> + '_ {
        self.coeffs.iter().enumerate().map(|(i, c)| (2 * i + 1, c))
    }

    pub fn scaled(&self, s: &Real) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Keep the first `modes` entries, padding with zeros if needed.
    pub fn resized(&self, modes: usize) -> Self {
        let p = self.precision();
        let mut coeffs: Vec<Real> = self.coeffs.iter().take(modes).cloned().collect();
        coeffs.resize(modes, Real::zero(p));
        Self::new(coeffs).expect("resized sequence stays finite")
    }

    pub fn sum_of_squares(&self) -> Real {
        let mut acc = Real::zero(self.precision());
        for c in &self.coeffs {
            acc.mul_add_assign(c, c);
        }
        acc
    }

    pub fn max_abs(&self) -> Real {
        self.coeffs
            .iter()
            .map(Real::abs)
            .fold(Real::zero(self.precision()), Real::max)
    }
}
