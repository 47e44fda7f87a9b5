//! Run configuration: raw key-value input (flags or a TOML file) and its
//! validated, normalized form.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::analysis::DEFAULT_WINDOW;
use crate::error::{Error, Result};
use crate::model::{ModelKind, ModelSpec};
use crate::propagator::PropagatorConfig;
use crate::spin::{HalfInt, SpinValue};

/// Environment variable that redirects relative output prefixes.
pub const OUTPUT_DIR_ENV: &str = "QLM_OUTPUT_DIR";

pub const DEFAULT_TMAX: f64 = 30.0;
pub const DEFAULT_PREFIX: &str = "quench";

/// Unvalidated configuration. Every field is optional so that a config file
/// and command-line flags can be layered.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct RawConfig {
    pub spin: Option<String>,
    pub length: Option<usize>,
    pub mass: Option<f64>,
    pub kappa: Option<f64>,
    pub model: Option<String>,
    pub initial_vacuum: Option<String>,
    pub tmax: Option<f64>,
    pub dt: Option<f64>,
    pub krylov_dim: Option<usize>,
    pub tol: Option<f64>,
    pub window: Option<f64>,
    pub out: Option<PathBuf>,
    pub emit_components: Option<bool>,
}

macro_rules! overlay {
    ($base:expr, $top:expr, $($field:ident),*) => {
        RawConfig { $($field: $top.$field.clone().or_else(|| $base.$field.clone())),* }
    };
}

impl RawConfig {
    /// Parses a TOML key-value file, e.g. `spin = "3/2"` / `length = 12`.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    /// Fields set in `top` win over those in `self`.
    pub fn overlaid_with(&self, top: &RawConfig) -> RawConfig {
        overlay!(
            self, top, spin, length, mass, kappa, model, initial_vacuum, tmax, dt, krylov_dim, tol,
            window, out, emit_components
        )
    }
}

/// Default chain length per spin, keeping the basis small enough for desk runs.
pub fn default_length(spin: SpinValue) -> usize {
    match spin.twice_s() {
        1 => 20,
        2 => 14,
        3 => 12,
        _ => 10,
    }
}

/// Validated configuration of one quench run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub model: ModelSpec,
    pub propagator: PropagatorConfig,
    pub t_max: f64,
    pub output_prefix: PathBuf,
    pub emit_components: bool,
    pub coincidence_window: f64,
}

fn finite(flag: &str, x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::config(flag, format!("must be finite, got {x}")))
    }
}

/// Fills defaults, checks ranges and parity, and resolves the model kind.
///
/// `output_dir` (normally from [`OUTPUT_DIR_ENV`]) is prepended to relative
/// output prefixes.
pub fn validate(raw: &RawConfig, output_dir: Option<&Path>) -> Result<RunConfig> {
    let spin_text = raw.spin.as_deref().ok_or_else(|| Error::config("--spin", "is required"))?;
    let spin: SpinValue = spin_text
        .parse()
        .map_err(|e: Error| Error::config("--spin", e.to_string()))?;

    let length = raw.length.unwrap_or_else(|| default_length(spin));
    if length < 2 || !length.is_multiple_of(2) {
        return Err(Error::config("--length", format!("chain length must be even and ≥ 2, got {length}")));
    }
    if length > crate::model::MAX_LENGTH {
        return Err(Error::config("--length", format!("at most {} sites supported, got {length}", crate::model::MAX_LENGTH)));
    }

    let kind: ModelKind = match &raw.model {
        Some(m) => m.parse().map_err(|e: Error| Error::config("--model", e.to_string()))?,
        None => ModelKind::Qlm,
    };

    let initial_mz: HalfInt = match &raw.initial_vacuum {
        Some(text) => text
            .parse()
            .map_err(|e: Error| Error::config("--initial-vacuum", e.to_string()))?,
        None => spin.s(),
    };
    if !spin.admits(initial_mz) {
        let why = if initial_mz.abs() > spin.s() {
            format!("|m_z| = {} exceeds S = {spin}", initial_mz.abs())
        } else {
            format!("m_z = {initial_mz} has the wrong parity for S = {spin}")
        };
        return Err(Error::config("--initial-vacuum", why));
    }

    let mu = finite("--mass", raw.mass.unwrap_or(0.0))?;
    let kappa = finite("--kappa", raw.kappa.unwrap_or(0.0))?;

    let defaults = PropagatorConfig::default();
    let propagator = PropagatorConfig {
        dt: raw.dt.unwrap_or(defaults.dt),
        krylov_dim: raw.krylov_dim.unwrap_or(defaults.krylov_dim),
        tol: raw.tol.unwrap_or(defaults.tol),
    };
    propagator.validate()?;

    let t_max = raw.tmax.unwrap_or(DEFAULT_TMAX);
    if !(t_max >= 0.0 && t_max.is_finite()) {
        return Err(Error::config("--tmax", format!("must be finite and non-negative, got {t_max}")));
    }

    let window = raw.window.unwrap_or(DEFAULT_WINDOW);
    if !(window > 0.0 && window.is_finite()) {
        return Err(Error::config("--window", format!("must be positive, got {window}")));
    }

    let prefix = raw.out.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_PREFIX));
    if prefix.as_os_str().is_empty() {
        return Err(Error::config("--out", "output prefix is empty"));
    }
    let output_prefix = match output_dir {
        Some(dir) if prefix.is_relative() => dir.join(prefix),
        _ => prefix,
    };

    let model = ModelSpec {
        spin,
        length,
        j: 1.0,
        mu,
        kappa,
        kind,
        initial_mz,
    };
    model.validate()?;

    Ok(RunConfig {
        model,
        propagator,
        t_max,
        output_prefix,
        emit_components: raw.emit_components.unwrap_or(true),
        coincidence_window: window,
    })
}

/// A sweep file: optional `[defaults]` plus one `[[run]]` table per run.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepFile {
    #[serde(default)]
    pub defaults: RawConfig,
    #[serde(default)]
    pub run: Vec<RawConfig>,
}

impl SweepFile {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Validated runs, layered as `base < [defaults] < [[run]]`.
    ///
    /// Output prefixes must be pairwise distinct.
    pub fn resolve(&self, base: &RawConfig, output_dir: Option<&Path>) -> Result<Vec<RunConfig>> {
        let layered = base.overlaid_with(&self.defaults);
        let runs = self
            .run
            .iter()
            .map(|r| validate(&layered.overlaid_with(r), output_dir))
            .collect::<Result<Vec<_>>>()?;
        let mut prefixes: Vec<&PathBuf> = runs.iter().map(|r| &r.output_prefix).collect();
        prefixes.sort();
        if let Some(w) = prefixes.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::config("--sweep", format!("duplicate output prefix {}", w[0].display())));
        }
        Ok(runs)
    }
}
