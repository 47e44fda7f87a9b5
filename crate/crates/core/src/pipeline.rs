//! End-to-end quench run: basis, Hamiltonian, evolution from a vacuum,
//! sampling, event detection, and artifact output.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use log::{info, warn};
use num_complex::Complex64;
use serde::Serialize;

use crate::analysis::{analyze, AnalysisReport, Event};
use crate::basis::{enumerate_basis, vacuum_state};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::model::ModelSpec;
use crate::observables::Observer;
use crate::operators::build_hamiltonian;
use crate::propagator::{Method, Propagator, PropagatorConfig};
use crate::series::QuenchTimeSeries;

/// Everything a run produces besides the files.
#[derive(Debug, Clone)]
pub struct QuenchOutcome {
    pub config: RunConfig,
    pub dim: usize,
    pub nnz: usize,
    pub method: Method,
    pub series: QuenchTimeSeries,
    pub analysis: AnalysisReport,
    /// max |‖ψ(t)‖ − 1| over the samples.
    pub norm_drift: f64,
    /// max |E(t) − E(0)| over the samples.
    pub energy_drift: f64,
    pub max_error_estimate: f64,
    pub elapsed: Duration,
}

impl QuenchOutcome {
    /// One-line human summary: dimension, runtime, event counts.
    pub fn summary(&self) -> String {
        format!(
            "{}: dim={} nnz={} steps={} runtime={:.3}s dqpts={} op_zeros={} rr_minima={} norm_drift={:.1e} energy_drift={:.1e}",
            self.config.output_prefix.display(),
            self.dim,
            self.nnz,
            self.series.len().saturating_sub(1),
            self.elapsed.as_secs_f64(),
            self.analysis.dqpts.len(),
            self.analysis.op_zeros.len(),
            self.analysis.rr_minima.len(),
            self.norm_drift,
            self.energy_drift,
        )
    }
}

/// Runs the quench described by `cfg` without touching the filesystem.
///
/// `parallel` enables the row-parallel matrix-vector product; results are
/// bit-identical either way.
pub fn simulate(cfg: &RunConfig, parallel: bool) -> Result<QuenchOutcome> {
    let start = Instant::now();
    let model = &cfg.model;
    if model.is_toy_size() {
        warn!(
            "L = {} is a toy size; rate functions and event structure are not representative",
            model.length
        );
    }
    let basis = enumerate_basis(model);
    let h = build_hamiltonian(&basis);
    info!("basis dim {} nnz {}", basis.dim(), h.nnz());

    let mut psi0 = vec![Complex64::new(0.0, 0.0); basis.dim()];
    psi0[vacuum_state(&basis, model.initial_mz)?] = Complex64::new(1.0, 0.0);

    let observer = Observer::new(&basis);
    let mz_values: Vec<_> = observer.vacua().iter().map(|&(m, _)| m).collect();
    let mut series = QuenchTimeSeries::new(cfg.propagator.dt, mz_values);

    let prop = Propagator::auto(&h, cfg.propagator)?.parallel(parallel);
    let method = prop.method();
    let mut sampler = |_step: usize, time: f64, psi: &[Complex64]| -> Result<()> {
        let rates = observer.rates(psi, time);
        let sample = observer.observables(&h, psi, time)?;
        series.push(rates, sample);
        Ok(())
    };
    let report = prop.evolve(&psi0, cfg.t_max, &mut sampler)?;

    let e0 = series.samples().first().map_or(0.0, |s| s.energy);
    let norm_drift = series.samples().iter().map(|s| (s.norm - 1.0).abs()).fold(0.0, f64::max);
    let energy_drift = series.samples().iter().map(|s| (s.energy - e0).abs()).fold(0.0, f64::max);
    let analysis = analyze(&series, model.spin, model.initial_mz, cfg.coincidence_window);

    Ok(QuenchOutcome {
        config: cfg.clone(),
        dim: basis.dim(),
        nnz: h.nnz(),
        method,
        series,
        analysis,
        norm_drift,
        energy_drift,
        max_error_estimate: report.max_error_estimate,
        elapsed: start.elapsed(),
    })
}

#[derive(Serialize)]
struct RunMetadata<'a> {
    model: &'a ModelSpec,
    propagator: &'a PropagatorConfig,
    t_max: f64,
    coincidence_window: f64,
    dim: usize,
    samples: usize,
}

/// Layout of `<prefix>_events.json`.
#[derive(Serialize)]
struct EventsFile<'a> {
    run: RunMetadata<'a>,
    /// DQPT crossings, OP zeros, and RR minima merged and sorted by time.
    events: Vec<Event>,
    condensate_minima: &'a [f64],
    first_mjm: &'a Option<Event>,
    first_revival: Option<f64>,
    cutoff: Option<f64>,
    pairings: &'a [crate::analysis::Pairing],
}

/// Events JSON document of a finished run.
pub fn events_json(outcome: &QuenchOutcome) -> Result<String> {
    let a = &outcome.analysis;
    let mut events: Vec<Event> = a
        .dqpts
        .iter()
        .chain(&a.op_zeros)
        .chain(&a.rr_minima)
        .copied()
        .collect();
    events.sort_by(|x, y| x.time.total_cmp(&y.time));
    let file = EventsFile {
        run: RunMetadata {
            model: &outcome.config.model,
            propagator: &outcome.config.propagator,
            t_max: outcome.config.t_max,
            coincidence_window: outcome.config.coincidence_window,
            dim: outcome.dim,
            samples: outcome.series.len(),
        },
        events,
        condensate_minima: &a.condensate_minima,
        first_mjm: &a.first_mjm,
        first_revival: a.first_revival,
        cutoff: a.cutoff,
        pairings: &a.pairings,
    };
    let mut text = serde_json::to_string_pretty(&file)?;
    text.push('\n');
    Ok(text)
}

/// `<prefix><suffix>`, e.g. `runs/s32_timeseries.csv`.
pub fn artifact_path(prefix: &Path, suffix: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

/// Writes `path` via a sibling temporary file and an atomic rename, so a
/// reader never sees a partial file.
fn write_atomic(path: &Path, fill: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    std::fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(|e| Error::io(&dir, e))?;
    {
        let mut w = std::io::BufWriter::new(tmp.as_file_mut());
        fill(&mut w).map_err(|e| Error::io(path, e))?;
        w.flush().map_err(|e| Error::io(path, e))?;
    }
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

/// Writes the time-series CSV and events JSON; returns their paths.
pub fn write_artifacts(outcome: &QuenchOutcome) -> Result<(PathBuf, PathBuf)> {
    let prefix = &outcome.config.output_prefix;
    let csv_path = artifact_path(prefix, "_timeseries.csv");
    let json_path = artifact_path(prefix, "_events.json");
    let json = events_json(outcome)?;
    let emit = outcome.config.emit_components;
    write_atomic(&csv_path, |w| outcome.series.write_csv_with(w, emit))?;
    write_atomic(&json_path, |w| w.write_all(json.as_bytes()))?;
    Ok((csv_path, json_path))
}

/// Simulates and writes the artifacts.
pub fn run(cfg: &RunConfig, parallel: bool) -> Result<QuenchOutcome> {
    let outcome = simulate(cfg, parallel)?;
    write_artifacts(&outcome)?;
    Ok(outcome)
}
