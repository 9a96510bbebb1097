//! Run configuration: JSON file, then environment, then flags.

use std::fs;
use std::path::{Path, PathBuf};

use phi4_standing::galerkin::{RootPick, MAX_MODES, MIN_MODES};
use phi4_standing::perturbation::{DEFAULT_HARMONIC_CAP, DEFAULT_PHI0_MODES};
use phi4_standing::{Error, Precision, Real, Result};
use serde::Deserialize;

pub const MIN_PRECISION_DIGITS: u32 = 20;
pub const MAX_PRECISION_DIGITS: u32 = 2000;

/// A number in the config file: a decimal string (preferred, exact) or a
/// JSON number.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Text(String),
    Float(f64),
}

impl Num {
    fn into_text(self) -> String {
        match self {
            Num::Text(s) => s,
            Num::Float(x) => x.to_string(),
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub precision_digits: Option<u32>,
    pub n: Option<usize>,
    pub delta: Option<Num>,
    pub amplitude: Option<Num>,
    pub epsilon: Option<Num>,
    pub output_dir: Option<PathBuf>,
    pub root_pick: Option<RootPick>,
    pub phi0_modes: Option<usize>,
    pub harmonic_cap: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }
}

/// Command-line values; `None` falls through to the file, then defaults.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub precision_digits: Option<u32>,
    pub n: Option<usize>,
    pub delta: Option<String>,
    pub amplitude: Option<String>,
    pub epsilon: Option<String>,
    pub output_dir: Option<PathBuf>,
    pub root_pick: Option<RootPick>,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub precision: Precision,
    pub n: usize,
    pub delta: Real,
    pub amplitude: Real,
    pub epsilon: Real,
    pub output_dir: PathBuf,
    pub root_pick: RootPick,
    pub phi0_modes: usize,
    pub harmonic_cap: usize,
}

impl RunConfig {
    pub fn resolve(file: FileConfig, flags: Overrides) -> Result<Self> {
        let digits = flags
            .precision_digits
            .or(file.precision_digits)
            .unwrap_or(Precision::DEFAULT_DIGITS);
        if !(MIN_PRECISION_DIGITS..=MAX_PRECISION_DIGITS).contains(&digits) {
            return Err(Error::Config(format!(
                "precision_digits {digits} outside {MIN_PRECISION_DIGITS}..={MAX_PRECISION_DIGITS}"
            )));
        }
        let p = Precision::from_digits(digits);
        let number = |flag: Option<String>, file: Option<Num>, default: &str, name: &str| {
            let text = flag.or(file.map(Num::into_text)).unwrap_or_else(|| default.to_string());
            let x = Real::parse(p, &text).map_err(|_| Error::Config(format!("{name}: cannot parse {text:?}")))?;
            if !x.is_finite() {
                return Err(Error::Config(format!("{name} must be finite, got {text:?}")));
            }
            Ok(x)
        };

        let n = flags.n.or(file.n).unwrap_or(8);
        if !(MIN_MODES..=MAX_MODES).contains(&n) {
            return Err(Error::Config(format!("n = {n} outside {MIN_MODES}..={MAX_MODES}")));
        }
        let delta = number(flags.delta, file.delta, "1e-11", "delta")?;
        let floor = p.epsilon(5);
        if delta <= floor {
            return Err(Error::Config(format!(
                "delta = {} must exceed 1e-{} at {digits} digits",
                delta.to_sci(3),
                digits - 5
            )));
        }
        let amplitude = number(flags.amplitude, file.amplitude, "1", "amplitude")?;
        let epsilon = number(flags.epsilon, file.epsilon, "0.01", "epsilon")?;
        if epsilon.is_negative() {
            return Err(Error::Config(format!("epsilon must be non-negative, got {}", epsilon.to_sci(6))));
        }
        let phi0_modes = file.phi0_modes.unwrap_or(DEFAULT_PHI0_MODES);
        let harmonic_cap = file.harmonic_cap.unwrap_or(DEFAULT_HARMONIC_CAP);
        if phi0_modes == 0 || harmonic_cap == 0 {
            return Err(Error::Config("phi0_modes and harmonic_cap must be positive".into()));
        }
        Ok(Self {
            precision: p,
            n,
            delta,
            amplitude,
            epsilon,
            output_dir: flags
                .output_dir
                .or(file.output_dir)
                .unwrap_or_else(|| PathBuf::from(".")),
            root_pick: flags.root_pick.or(file.root_pick).unwrap_or_default(),
            phi0_modes,
            harmonic_cap,
        })
    }
}
