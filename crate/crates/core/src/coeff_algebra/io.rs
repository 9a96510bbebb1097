//! JSON and CSV forms of sequences and grids.
//!
//! Every value is written as a decimal string with enough digits to parse
//! back to the identical binary value at the recorded precision.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::{Precision, Real};

use super::{CoeffGrid, DiagonalSeq};

pub fn reals_to_strings(xs: &[Real]) -> Vec<String> {
    xs.iter().map(Real::to_decimal).collect()
}

pub fn strings_to_reals(p: Precision, xs: &[String]) -> Result<Vec<Real>> {
    xs.iter().map(|s| Real::parse(p, s)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridRecord {
    pub nx: usize,
    pub nt: usize,
    pub precision_bits: u32,
    /// Row-major `C_nj`, `n` outer.
    pub coeffs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeqRecord {
    pub precision_bits: u32,
    /// Coefficients of harmonics `1, 3, 5, …`.
    pub coeffs: Vec<String>,
}

impl CoeffGrid {
    pub fn to_record(&self) -> GridRecord {
        GridRecord {
            nx: self.nx(),
            nt: self.nt(),
            precision_bits: self.precision().bits(),
            coeffs: reals_to_strings(self.data()),
        }
    }

    pub fn from_record(r: &GridRecord) -> Result<Self> {
        let p = Precision::from_bits(r.precision_bits);
        CoeffGrid::from_rows(r.nx, r.nt, strings_to_reals(p, &r.coeffs)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_record())?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_record(&serde_json::from_str(s)?)
    }

    /// `n,j,value` rows for plotting; zero entries are skipped.
    pub fn write_csv<W: Write>(&self, w: W, sig_digits: usize) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["n", "j", "value"])?;
        for (n, j, v) in self.entries().filter(|(_, _, v)| !v.is_zero()) {
            out.write_record([n.to_string(), j.to_string(), v.to_sci(sig_digits)])?;
        }
        out.flush().map_err(Error::Io)
    }
}

impl DiagonalSeq {
    pub fn to_record(&self) -> SeqRecord {
        SeqRecord {
            precision_bits: self.precision().bits(),
            coeffs: reals_to_strings(self.coeffs()),
        }
    }

    pub fn from_record(r: &SeqRecord) -> Result<Self> {
        let p = Precision::from_bits(r.precision_bits);
        DiagonalSeq::new(strings_to_reals(p, &r.coeffs)?)
    }
}
