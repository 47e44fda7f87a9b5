//! Return-rate components, electric flux, and chiral condensate.
//!
//! Both local observables are diagonal in the occupation basis, so they are
//! weighted sums of `|ψ_b|²` against per-state tables.

use std::fmt;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::basis::{vacua, PhysicalBasis};
use crate::error::Result;
use crate::operators::SparseHamiltonian;
use crate::spin::HalfInt;

/// Squared overlaps below this are reported as [`RateValue::Inf`].
pub const OVERLAP_FLOOR: f64 = 1e-300;

/// One return-rate component: finite, or infinite for an exactly orthogonal branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RateValue {
    Finite(f64),
    Inf,
}

impl RateValue {
    /// `−(1/L) ln p` for a squared overlap `p`.
    pub fn from_overlap(p: f64, length: usize) -> Self {
        if p < OVERLAP_FLOOR {
            RateValue::Inf
        } else {
            // max(0) removes round-off negatives when p exceeds 1 by an ulp
            RateValue::Finite((-p.ln() / length as f64).max(0.0))
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            RateValue::Finite(x) => Some(x),
            RateValue::Inf => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, RateValue::Finite(_))
    }
}

impl fmt::Display for RateValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RateValue::Finite(x) => write!(f, "{x:.16e}"),
            RateValue::Inf => f.write_str("inf"),
        }
    }
}

impl Serialize for RateValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RateValue::Finite(x) => serializer.serialize_f64(*x),
            RateValue::Inf => serializer.serialize_str("inf"),
        }
    }
}

/// Rate components against every vacuum at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct RateComponents {
    pub time: f64,
    /// `(m_z, λ_{m_z})`, m_z descending.
    pub lambda: Vec<(HalfInt, RateValue)>,
    pub lambda_min: f64,
    pub argmin_mz: HalfInt,
}

impl RateComponents {
    /// Builds the record from component values; ties resolve to the first (largest) m_z.
    ///
    /// Panics if every component is infinite.
    pub fn from_values(time: f64, lambda: Vec<(HalfInt, RateValue)>) -> Self {
        let (argmin_mz, lambda_min) = lambda
            .iter()
            .filter_map(|&(m, v)| v.finite().map(|x| (m, x)))
            .fold(None, |best: Option<(HalfInt, f64)>, (m, x)| match best {
                Some((_, bx)) if bx <= x => best,
                _ => Some((m, x)),
            })
            .expect("at least one finite rate component");
        RateComponents {
            time,
            lambda,
            lambda_min,
            argmin_mz,
        }
    }

    pub fn get(&self, mz: HalfInt) -> Option<RateValue> {
        self.lambda.iter().find(|(m, _)| *m == mz).map(|(_, v)| *v)
    }
}

/// Local observables and diagnostics at one time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ObservableSample {
    pub time: f64,
    pub flux: f64,
    pub condensate: f64,
    pub energy: f64,
    pub norm: f64,
}

/// `λ_{m_z} = −(1/L) ln |⟨ψ₀^{m_z}|ψ⟩|²` for each vacuum in `vacua`.
pub fn rate_components(
    basis: &PhysicalBasis,
    psi: &[Complex64],
    vacua: &[(HalfInt, usize)],
    time: f64,
) -> RateComponents {
    let len = basis.length();
    let lambda = vacua
        .iter()
        .map(|&(mz, idx)| (mz, RateValue::from_overlap(psi[idx].norm_sqr(), len)))
        .collect();
    RateComponents::from_values(time, lambda)
}

/// Staggered flux `Σ_i (−1)^i ℓ_i / L` of one configuration (link 0 counted +).
fn configuration_flux(basis: &PhysicalBasis, b: usize) -> f64 {
    let s = basis.state(b);
    let len = basis.length();
    let twice: i32 = (0..len)
        .map(|i| if i % 2 == 0 { s.link_twice(i) } else { -s.link_twice(i) })
        .sum();
    f64::from(twice) * 0.5 / len as f64
}

fn configuration_filling(basis: &PhysicalBasis, b: usize) -> f64 {
    f64::from(basis.state(b).particle_count()) / basis.length() as f64
}

/// Electric-flux order parameter `(1/L) Σ_j (−1)^{j+1} ⟨ŝ^z_{j,j+1}⟩` (1-based j).
pub fn electric_flux(basis: &PhysicalBasis, psi: &[Complex64]) -> f64 {
    psi.iter()
        .enumerate()
        .map(|(b, a)| a.norm_sqr() * configuration_flux(basis, b))
        .sum()
}

/// Chiral condensate `1/2 + (1/2L) Σ_j ⟨σ^z_j⟩`, the mean site filling.
pub fn chiral_condensate(basis: &PhysicalBasis, psi: &[Complex64]) -> f64 {
    psi.iter()
        .enumerate()
        .map(|(b, a)| a.norm_sqr() * configuration_filling(basis, b))
        .sum()
}

/// Precomputed per-configuration tables for fast repeated sampling.
#[derive(Debug, Clone)]
pub struct Observer {
    length: usize,
    vacua: Vec<(HalfInt, usize)>,
    flux: Vec<f64>,
    filling: Vec<f64>,
}

impl Observer {
    pub fn new(basis: &PhysicalBasis) -> Self {
        let dim = basis.dim();
        Observer {
            length: basis.length(),
            vacua: vacua(basis),
            flux: (0..dim).map(|b| configuration_flux(basis, b)).collect(),
            filling: (0..dim).map(|b| configuration_filling(basis, b)).collect(),
        }
    }

    pub fn vacua(&self) -> &[(HalfInt, usize)] {
        &self.vacua
    }

    pub fn rates(&self, psi: &[Complex64], time: f64) -> RateComponents {
        let lambda = self
            .vacua
            .iter()
            .map(|&(mz, idx)| (mz, RateValue::from_overlap(psi[idx].norm_sqr(), self.length)))
            .collect();
        RateComponents::from_values(time, lambda)
    }

    pub fn observables(
        &self,
        h: &SparseHamiltonian,
        psi: &[Complex64],
        time: f64,
    ) -> Result<ObservableSample> {
        let mut flux = 0.0;
        let mut condensate = 0.0;
        let mut norm_sq = 0.0;
        for ((a, f), n) in psi.iter().zip(&self.flux).zip(&self.filling) {
            let p = a.norm_sqr();
            flux += p * f;
            condensate += p * n;
            norm_sq += p;
        }
        Ok(ObservableSample {
            time,
            flux,
            condensate,
            energy: h.expectation(psi)?,
            norm: norm_sq.sqrt(),
        })
    }
}
