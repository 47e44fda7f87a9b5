//! Definition of one quench experiment.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spin::{HalfInt, SpinValue};

/// Largest chain length the packed basis representation supports.
pub const MAX_LENGTH: usize = 32;

/// Gauge-field regularization used for the link raising operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    /// Spin-S quantum link model: raising operator ŝ⁺/√(S(S+1)).
    Qlm,
    /// Truncated Schwinger model: unit-amplitude raising operator τ̂⁺.
    Tsm,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Qlm => "qlm",
            ModelKind::Tsm => "tsm",
        })
    }
}

impl FromStr for ModelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "qlm" => Ok(ModelKind::Qlm),
            "tsm" => Ok(ModelKind::Tsm),
            other => Err(Error::Parse(format!("unknown model `{other}` (expected qlm or tsm)"))),
        }
    }
}

/// Spin, chain length, couplings, and initial vacuum of one quench.
///
/// The chain is periodic with `length` matter sites and `length` links;
/// link `j` (0-based) joins sites `j` and `j+1 mod length`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub spin: SpinValue,
    pub length: usize,
    pub j: f64,
    pub mu: f64,
    pub kappa: f64,
    pub kind: ModelKind,
    pub initial_mz: HalfInt,
}

impl ModelSpec {
    /// Massless, κ = 0 quench from the extreme vacuum m_z = +S.
    pub fn new(spin: SpinValue, length: usize, kind: ModelKind) -> Result<Self> {
        let spec = ModelSpec {
            spin,
            length,
            j: 1.0,
            mu: 0.0,
            kappa: 0.0,
            kind,
            initial_mz: spin.s(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_couplings(mut self, mu: f64, kappa: f64) -> Self {
        self.mu = mu;
        self.kappa = kappa;
        self
    }

    pub fn with_initial_mz(mut self, mz: HalfInt) -> Result<Self> {
        self.initial_mz = mz;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.length < 2 || !self.length.is_multiple_of(2) {
            return Err(Error::OddLength(self.length));
        }
        if self.length > MAX_LENGTH {
            return Err(Error::LengthTooLarge(self.length));
        }
        if !self.spin.admits(self.initial_mz) {
            return Err(Error::InvalidMz {
                mz: self.initial_mz,
                spin: self.spin.s(),
            });
        }
        Ok(())
    }

    /// L = 2 is accepted for oracle checks but is too small to show scarring.
    pub fn is_toy_size(&self) -> bool {
        self.length < 4
    }
}
