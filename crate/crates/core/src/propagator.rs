//! Unitary time evolution `|ψ(t)⟩ = e^{−iHt}|ψ₀⟩`.
//!
//! The production path is a Lanczos (Krylov) exponential per time step with
//! full reorthogonalization. Small bases use an exact dense eigendecomposition,
//! which also serves as the reference in tests.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{symmetric_eigen, Mat};
use crate::operators::SparseHamiltonian;

/// Bases at or below this dimension are evolved by dense diagonalization.
pub const DENSE_THRESHOLD: usize = 512;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PropagatorConfig {
    /// Time step in units of 1/J.
    pub dt: f64,
    /// Maximum number of Lanczos vectors per step.
    pub krylov_dim: usize,
    /// Error-estimate tolerance per step.
    pub tol: f64,
}

impl Default for PropagatorConfig {
    fn default() -> Self {
        PropagatorConfig {
            dt: 0.01,
            krylov_dim: 30,
            tol: 1e-12,
        }
    }
}

impl PropagatorConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::config("--dt", format!("time step must be positive, got {}", self.dt)));
        }
        if self.krylov_dim < 2 {
            return Err(Error::config(
                "--krylov-dim",
                format!("need at least 2 Krylov vectors, got {}", self.krylov_dim),
            ));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::config("--tol", format!("tolerance must be positive, got {}", self.tol)));
        }
        Ok(())
    }
}

/// Diagnostics of one Krylov step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepInfo {
    pub krylov_vectors: usize,
    pub error_estimate: f64,
    pub happy_breakdown: bool,
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
}

/// `exp(−i T dt) e₁` for the symmetric tridiagonal `T` given by `alpha`, `beta`.
fn tridiag_exp_e1(alpha: &[f64], beta: &[f64], dt: f64) -> Result<Vec<Complex64>> {
    let m = alpha.len();
    let mut t = Mat::<f64>::zeros(m, m);
    for i in 0..m {
        t[(i, i)] = alpha[i];
        if i + 1 < m {
            t[(i, i + 1)] = beta[i];
            t[(i + 1, i)] = beta[i];
        }
    }
    let (values, vectors) = symmetric_eigen(&t)?;
    Ok((0..m)
        .map(|row| {
            (0..m)
                .map(|k| {
                    let phase = Complex64::from_polar(1.0, -values[k] * dt);
                    phase * (vectors[(row, k)] * vectors[(0, k)])
                })
                .sum()
        })
        .collect())
}

/// One Krylov step `v ↦ e^{−iH dt} v`.
///
/// Lanczos vectors are added until the a-posteriori estimate
/// `β_m |[e^{−iT dt} e₁]_m| ‖v‖` drops below `cfg.tol`. The result is not
/// renormalized.
pub fn step(
    h: &SparseHamiltonian,
    v: &[Complex64],
    cfg: &PropagatorConfig,
) -> Result<(Vec<Complex64>, StepInfo)> {
    step_with(h, v, cfg.dt, cfg, false)
}

fn step_with(
    h: &SparseHamiltonian,
    v: &[Complex64],
    dt: f64,
    cfg: &PropagatorConfig,
    parallel: bool,
) -> Result<(Vec<Complex64>, StepInfo)> {
    let dim = h.dim();
    if v.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
    }
    let beta0 = norm(v);
    if dt == 0.0 || beta0 == 0.0 {
        let info = StepInfo { krylov_vectors: 0, error_estimate: 0.0, happy_breakdown: true };
        return Ok((v.to_vec(), info));
    }

    let max_m = cfg.krylov_dim.min(dim).max(1);
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(max_m);
    basis.push(v.iter().map(|x| x / beta0).collect());
    let mut alpha: Vec<f64> = Vec::with_capacity(max_m);
    let mut beta: Vec<f64> = Vec::with_capacity(max_m);
    let mut w = vec![ZERO; dim];
    let mut scale = 0.0f64;

    loop {
        let j = alpha.len();
        if parallel {
            h.apply_par_into(&basis[j], &mut w)?;
        } else {
            h.apply_into(&basis[j], &mut w)?;
        }
        let a = dot(&basis[j], &w).re;
        alpha.push(a);
        scale = scale.max(a.abs());
        // full reorthogonalization, two passes
        for _ in 0..2 {
            for q in &basis {
                let c = dot(q, &w);
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= c * qi;
                }
            }
        }
        let b = norm(&w);
        scale = scale.max(b);

        let coeffs = tridiag_exp_e1(&alpha, &beta, dt)?;
        let happy = b <= 1e-14 * scale.max(1.0);
        let estimate = if happy { 0.0 } else { beta0 * b * coeffs[j].norm() };

        if happy || estimate <= cfg.tol || j + 1 >= max_m {
            if !happy && estimate > cfg.tol && j + 1 < dim {
                return Err(Error::KrylovNotConverged {
                    estimate,
                    tol: cfg.tol,
                    krylov_dim: cfg.krylov_dim,
                    dt,
                });
            }
            let mut out = vec![ZERO; dim];
            for (c, q) in coeffs.iter().zip(&basis) {
                let c = c * beta0;
                for (o, qi) in out.iter_mut().zip(q) {
                    *o += c * qi;
                }
            }
            let info = StepInfo {
                krylov_vectors: alpha.len(),
                error_estimate: estimate,
                happy_breakdown: happy || j + 1 >= dim,
            };
            return Ok((out, info));
        }

        beta.push(b);
        basis.push(w.iter().map(|x| x / b).collect());
    }
}

/// Exact evolution through a full eigendecomposition of `H`.
#[derive(Debug, Clone)]
pub struct DenseEvolver {
    energies: Vec<f64>,
    vectors: Mat<f64>,
}

impl DenseEvolver {
    pub fn new(h: &SparseHamiltonian) -> Result<Self> {
        let (energies, vectors) = symmetric_eigen(&h.to_dense())?;
        Ok(DenseEvolver { energies, vectors })
    }

    /// Eigenvalues in ascending order.
    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// `e^{−iHt} v`.
    pub fn evolve(&self, v: &[Complex64], t: f64) -> Vec<Complex64> {
        let n = self.energies.len();
        assert_eq!(v.len(), n, "dimension mismatch");
        let coeffs: Vec<Complex64> = (0..n)
            .map(|k| {
                let c: Complex64 = (0..n).map(|i| v[i] * self.vectors[(i, k)]).sum();
                c * Complex64::from_polar(1.0, -self.energies[k] * t)
            })
            .collect();
        (0..n)
            .map(|i| (0..n).map(|k| coeffs[k] * self.vectors[(i, k)]).sum())
            .collect()
    }
}

/// Called at `t = 0` and after every step with the current state.
pub trait Sampler {
    fn sample(&mut self, step: usize, time: f64, psi: &[Complex64]) -> Result<()>;
}

impl<F> Sampler for F
where
    F: FnMut(usize, f64, &[Complex64]) -> Result<()>,
{
    fn sample(&mut self, step: usize, time: f64, psi: &[Complex64]) -> Result<()> {
        self(step, time, psi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Krylov,
    Dense,
}

/// Summary of a completed [`Propagator::evolve`] call.
#[derive(Debug, Clone)]
pub struct EvolutionReport {
    pub method: Method,
    pub steps: usize,
    pub max_krylov_vectors: usize,
    pub max_error_estimate: f64,
    pub final_state: Vec<Complex64>,
}

/// Time stepper bound to one Hamiltonian.
pub struct Propagator<'h> {
    h: &'h SparseHamiltonian,
    cfg: PropagatorConfig,
    dense: Option<DenseEvolver>,
    parallel: bool,
}

impl<'h> Propagator<'h> {
    /// Dense path for `dim ≤ DENSE_THRESHOLD`, Krylov otherwise.
    pub fn auto(h: &'h SparseHamiltonian, cfg: PropagatorConfig) -> Result<Self> {
        if h.dim() <= DENSE_THRESHOLD {
            Self::dense(h, cfg)
        } else {
            Self::krylov(h, cfg)
        }
    }

    pub fn krylov(h: &'h SparseHamiltonian, cfg: PropagatorConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Propagator { h, cfg, dense: None, parallel: false })
    }

    pub fn dense(h: &'h SparseHamiltonian, cfg: PropagatorConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Propagator { h, cfg, dense: Some(DenseEvolver::new(h)?), parallel: false })
    }

    /// Use the row-parallel matrix-vector kernel (results are unchanged).
    pub fn parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    pub fn method(&self) -> Method {
        if self.dense.is_some() {
            Method::Dense
        } else {
            Method::Krylov
        }
    }

    pub fn config(&self) -> &PropagatorConfig {
        &self.cfg
    }

    /// Advances `v` by one configured time step.
    pub fn step(&self, v: &[Complex64]) -> Result<(Vec<Complex64>, StepInfo)> {
        self.step_by(v, self.cfg.dt)
    }

    /// Advances `v` by an arbitrary (possibly negative) time.
    pub fn step_by(&self, v: &[Complex64], dt: f64) -> Result<(Vec<Complex64>, StepInfo)> {
        match &self.dense {
            Some(d) => {
                if v.len() != self.h.dim() {
                    return Err(Error::DimensionMismatch { expected: self.h.dim(), got: v.len() });
                }
                let info = StepInfo { krylov_vectors: 0, error_estimate: 0.0, happy_breakdown: true };
                Ok((d.evolve(v, dt), info))
            }
            None => step_with(self.h, v, dt, &self.cfg, self.parallel),
        }
    }

    /// Number of steps covering `[0, t_max]`: `floor(t_max / dt)`.
    pub fn step_count(&self, t_max: f64) -> usize {
        ((t_max / self.cfg.dt) * (1.0 + 1e-12)).floor() as usize
    }

    /// Evolves from `v0` to `t_max`, sampling at `t = k·dt` for every step `k`.
    pub fn evolve<S: Sampler>(
        &self,
        v0: &[Complex64],
        t_max: f64,
        sampler: &mut S,
    ) -> Result<EvolutionReport> {
        if t_max.is_nan() || t_max < 0.0 {
            return Err(Error::config("--tmax", format!("must be non-negative, got {t_max}")));
        }
        let steps = self.step_count(t_max);
        let mut psi = v0.to_vec();
        sampler.sample(0, 0.0, &psi)?;
        let mut max_vectors = 0;
        let mut max_estimate = 0.0f64;
        for k in 1..=steps {
            let (next, info) = self.step(&psi)?;
            psi = next;
            max_vectors = max_vectors.max(info.krylov_vectors);
            max_estimate = max_estimate.max(info.error_estimate);
            sampler.sample(k, k as f64 * self.cfg.dt, &psi)?;
        }
        Ok(EvolutionReport {
            method: self.method(),
            steps,
            max_krylov_vectors: max_vectors,
            max_error_estimate: max_estimate,
            final_state: psi,
        })
    }
}
