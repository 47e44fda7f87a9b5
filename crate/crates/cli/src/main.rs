//! `qlm-quench`: run a vacuum quench of the spin-S quantum link model or the
//! truncated Schwinger model and write the time series and detected events.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::Parser;
use log::error;
use rayon::prelude::*;

use qlm_core::basis::enumerate_basis;
use qlm_core::config::{validate, RawConfig, RunConfig, SweepFile, OUTPUT_DIR_ENV};
use qlm_core::operators::build_hamiltonian;
use qlm_core::pipeline;

#[derive(Debug, Parser)]
#[command(name = "qlm-quench", version, about, allow_negative_numbers = true)]
struct Cli {
    /// Link spin S, e.g. 1/2, 1, 3/2.
    #[arg(long)]
    spin: Option<String>,
    /// Number of matter sites L (even). Defaults depend on S.
    #[arg(long)]
    length: Option<usize>,
    /// Fermion mass μ in units of J.
    #[arg(long)]
    mass: Option<f64>,
    /// Gauge coupling κ in units of J.
    #[arg(long)]
    kappa: Option<f64>,
    /// Model variant: qlm or tsm.
    #[arg(long)]
    model: Option<String>,
    /// Initial vacuum label m_z. Defaults to +S.
    #[arg(long, allow_hyphen_values = true)]
    initial_vacuum: Option<String>,
    /// Final time in units of 1/J.
    #[arg(long)]
    tmax: Option<f64>,
    /// Sampling and propagation step.
    #[arg(long)]
    dt: Option<f64>,
    /// Maximal Krylov subspace dimension.
    #[arg(long)]
    krylov_dim: Option<usize>,
    /// Per-step Krylov error tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// DQPT / OP-zero coincidence window in units of 1/J.
    #[arg(long)]
    window: Option<f64>,
    /// Output prefix; writes <prefix>_timeseries.csv and <prefix>_events.json.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Omit the per-vacuum lambda[...] columns from the CSV.
    #[arg(long)]
    no_components: bool,
    /// TOML file with [defaults] and [[run]] tables; runs execute in parallel.
    #[arg(long)]
    sweep: Option<PathBuf>,
    /// Worker threads (1 gives serial, bit-reproducible runs; default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// TOML key-value file with the same keys as the flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Also write the Hamiltonian as `row col value` triplets to this file.
    #[arg(long)]
    dump_hamiltonian: Option<PathBuf>,
}

impl Cli {
    fn raw(&self) -> RawConfig {
        RawConfig {
            spin: self.spin.clone(),
            length: self.length,
            mass: self.mass,
            kappa: self.kappa,
            model: self.model.clone(),
            initial_vacuum: self.initial_vacuum.clone(),
            tmax: self.tmax,
            dt: self.dt,
            krylov_dim: self.krylov_dim,
            tol: self.tol,
            window: self.window,
            out: self.out.clone(),
            emit_components: self.no_components.then_some(false),
        }
    }
}

fn dump_hamiltonian(cfg: &RunConfig, path: &Path) -> anyhow::Result<()> {
    let basis = enumerate_basis(&cfg.model);
    let h = build_hamiltonian(&basis);
    let file = std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    h.write_triplets(std::io::BufWriter::new(file))
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn execute(cli: Cli) -> anyhow::Result<()> {
    if cli.threads == Some(0) {
        bail!("invalid value for --threads: must be at least 1");
    }
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let parallel = cli.threads != Some(1);

    let output_dir = std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from);
    let file = match &cli.config {
        Some(path) => RawConfig::from_file(path)?,
        None => RawConfig::default(),
    };
    let base = file.overlaid_with(&cli.raw());

    if let Some(sweep_path) = &cli.sweep {
        let text = std::fs::read_to_string(sweep_path)
            .with_context(|| format!("reading {}", sweep_path.display()))?;
        let runs = SweepFile::from_toml_str(&text)?.resolve(&base, output_dir.as_deref())?;
        if runs.is_empty() {
            bail!("sweep file {} contains no [[run]] tables", sweep_path.display());
        }
        // runs are independent; each one stays serial inside
        let results: Vec<_> = runs.par_iter().map(|cfg| pipeline::run(cfg, false)).collect();
        let mut failures = 0;
        for (cfg, res) in runs.iter().zip(results) {
            match res {
                Ok(outcome) => println!("{}", outcome.summary()),
                Err(e) => {
                    failures += 1;
                    error!("{}: {e}", cfg.output_prefix.display());
                }
            }
        }
        if failures > 0 {
            bail!("{failures} of {} sweep runs failed", runs.len());
        }
        return Ok(());
    }

    let cfg = validate(&base, output_dir.as_deref())?;
    if let Some(path) = &cli.dump_hamiltonian {
        dump_hamiltonian(&cfg, path)?;
    }
    let outcome = pipeline::run(&cfg, parallel)?;
    println!("{}", outcome.summary());
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
