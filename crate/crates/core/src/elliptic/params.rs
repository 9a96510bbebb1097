use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::{Precision, Real};

use super::integral::{agm_elliptic_k, complementary, modulus_from_nome, nome};

/// Modulus, nome and the period data of `cn(z, k)`.
///
/// `γ = 2π/K` is the angular rate of the Fourier expansion of `cn`, and
/// `α = 2K/π` rescales `cn` so that the standing wave has period `2π`.
#[derive(Clone, Debug, PartialEq)]
pub struct EllipticParams {
    pub k: Real,
    pub kprime: Real,
    pub big_k: Real,
    pub big_kprime: Real,
    pub q: Real,
    pub gamma: Real,
    pub alpha: Real,
}

impl EllipticParams {
    pub fn from_modulus(k: &Real) -> Result<Self> {
        let q = nome(k)?;
        Self::assemble(k.clone(), q)
    }

    pub fn from_nome(q: &Real) -> Result<Self> {
        let k = modulus_from_nome(q)?;
        Self::assemble(k, q.clone())
    }

    fn assemble(k: Real, q: Real) -> Result<Self> {
        let p = k.precision();
        let kprime = complementary(&k);
        let big_k = agm_elliptic_k(&k)?;
        let big_kprime = agm_elliptic_k(&kprime)?;
        let pi = Real::pi(p);
        let gamma = &pi * 2 / &big_k;
        let alpha = &big_k * 2 / &pi;
        Ok(Self {
            k,
            kprime,
            big_k,
            big_kprime,
            q,
            gamma,
            alpha,
        })
    }

    pub fn precision(&self) -> Precision {
        self.k.precision()
    }

    /// Largest violation among `k² + k'² = 1`, `q = e^{−πK'/K}` and `αγ = 4`.
    pub fn invariant_defect(&self) -> Real {
        let p = self.precision();
        let pyth = (self.k.square() + self.kprime.square() - Real::one(p)).abs();
        let q = (-(Real::pi(p) * &self.big_kprime / &self.big_k)).exp();
        let nome = (q - &self.q).abs();
        let four = (&self.alpha * &self.gamma - Real::from_i64(p, 4)).abs();
        pyth.max(nome).max(four)
    }

    pub fn check(&self) -> Result<()> {
        let tol = self.precision().epsilon(5);
        let d = self.invariant_defect();
        if d > tol {
            return Err(Error::Domain {
                what: "elliptic parameter consistency defect",
                value: d.to_sci(5),
                domain: "below working precision",
            });
        }
        Ok(())
    }

    /// `γ²/(64k²)`: first-order frequency shift per unit `A²`.
    pub fn omega1_coeff(&self) -> Real {
        self.gamma.square() / (self.k.square() * 64)
    }

    pub fn to_record(&self) -> ParamsRecord {
        ParamsRecord {
            precision_bits: self.precision().bits(),
            k: self.k.to_decimal(),
            kprime: self.kprime.to_decimal(),
            big_k: self.big_k.to_decimal(),
            big_kprime: self.big_kprime.to_decimal(),
            q: self.q.to_decimal(),
            gamma: self.gamma.to_decimal(),
            alpha: self.alpha.to_decimal(),
        }
    }

    pub fn from_record(r: &ParamsRecord) -> Result<Self> {
        let p = Precision::from_bits(r.precision_bits);
        Ok(Self {
            k: Real::parse(p, &r.k)?,
            kprime: Real::parse(p, &r.kprime)?,
            big_k: Real::parse(p, &r.big_k)?,
            big_kprime: Real::parse(p, &r.big_kprime)?,
            q: Real::parse(p, &r.q)?,
            gamma: Real::parse(p, &r.gamma)?,
            alpha: Real::parse(p, &r.alpha)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamsRecord {
    pub precision_bits: u32,
    pub k: String,
    pub kprime: String,
    #[serde(rename = "K")]
    pub big_k: String,
    #[serde(rename = "Kprime")]
    pub big_kprime: String,
    pub q: String,
    pub gamma: String,
    pub alpha: String,
}
