use serde::{Deserialize, Serialize};

use crate::coeff_algebra::io::{GridRecord, SeqRecord};
use crate::coeff_algebra::{CoeffGrid, DiagonalSeq};
use crate::elliptic::{EllipticParams, ParamsRecord};
use crate::error::Result;
use crate::real::{Precision, Real};

use super::build::AsymptoticSolution;

/// On-disk form of an [`AsymptoticSolution`]; every number is a decimal
/// string that parses back to the identical value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub precision_bits: u32,
    pub precision_digits: u32,
    pub phi0_modes: usize,
    pub harmonic_cap: usize,
    pub amplitude: String,
    pub epsilon: String,
    pub omega1: String,
    pub omega2: String,
    /// `ω(ε)`, informational; recomputed on load.
    pub omega: String,
    pub params: ParamsRecord,
    pub phi0: SeqRecord,
    pub phi1: GridRecord,
    pub phi2: GridRecord,
}

impl AsymptoticSolution {
    pub fn to_record(&self) -> SolutionRecord {
        let p = self.phi0.precision();
        SolutionRecord {
            precision_bits: p.bits(),
            precision_digits: p.digits(),
            phi0_modes: self.phi0.len(),
            harmonic_cap: self.phi1.nx().max(self.phi1.nt()),
            amplitude: self.amplitude.to_decimal(),
            epsilon: self.epsilon.to_decimal(),
            omega1: self.omega1.to_decimal(),
            omega2: self.omega2.to_decimal(),
            omega: self.omega().to_decimal(),
            params: self.params.to_record(),
            phi0: self.phi0.to_record(),
            phi1: self.phi1.to_record(),
            phi2: self.phi2.to_record(),
        }
    }

    pub fn from_record(r: &SolutionRecord) -> Result<Self> {
        let p = Precision::from_bits(r.precision_bits);
        Ok(Self {
            amplitude: Real::parse(p, &r.amplitude)?,
            params: EllipticParams::from_record(&r.params)?,
            phi0: DiagonalSeq::from_record(&r.phi0)?,
            phi1: CoeffGrid::from_record(&r.phi1)?,
            phi2: CoeffGrid::from_record(&r.phi2)?,
            omega1: Real::parse(p, &r.omega1)?,
            omega2: Real::parse(p, &r.omega2)?,
            epsilon: Real::parse(p, &r.epsilon)?,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_record())?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_record(&serde_json::from_str(s)?)
    }
}
