use crate::coeff_algebra::DiagonalSeq;
use crate::error::{Error, Result};
use crate::real::Real;

/// Fourier profile of `cn`: `f_{2n-1} = q^{n-½} / (1 + q^{2n-1})`.
pub type FSeq = DiagonalSeq;

pub fn f_sequence(q: &Real, modes: usize) -> Result<FSeq> {
    if !(*q > 0.0 && *q < 1.0) {
        return Err(Error::Domain {
            what: "nome q",
            value: q.to_sci(20),
            domain: "(0, 1)",
        });
    }
    let one = Real::one(q.precision());
    let sq = q.sqrt();
    let coeffs = (1..=modes)
        .map(|n| &sq * q.powi(n as i32 - 1) / (&one + q.powi(2 * n as i32 - 1)))
        .collect();
    DiagonalSeq::new(coeffs)
}

/// `f_{2j-1} / f₁`, the normalized profile.
pub fn d_sequence(q: &Real, modes: usize) -> Result<DiagonalSeq> {
    let f = f_sequence(q, modes)?;
    let inv = Real::one(q.precision()) / &f.coeffs()[0];
    Ok(f.scaled(&inv))
}
