//! Uniformly sampled quench time series and its CSV form.

use std::io::Write;

use crate::observables::{ObservableSample, RateComponents, RateValue};
use crate::spin::HalfInt;

/// One row per sample time `t_k = k·dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuenchTimeSeries {
    dt: f64,
    mz_values: Vec<HalfInt>,
    rates: Vec<RateComponents>,
    samples: Vec<ObservableSample>,
}

impl QuenchTimeSeries {
    /// Empty series for the vacuum labels `mz_values` (descending).
    pub fn new(dt: f64, mz_values: Vec<HalfInt>) -> Self {
        QuenchTimeSeries {
            dt,
            mz_values,
            rates: Vec::new(),
            samples: Vec::new(),
        }
    }

    /// Series from raw per-component values, e.g. synthetic detector inputs.
    ///
    /// `components[k]` lists the rate values at `t = k·dt` in the order of
    /// `mz_values`. Energy is set to zero and norm to one.
    pub fn from_components(
        dt: f64,
        mz_values: Vec<HalfInt>,
        components: Vec<Vec<RateValue>>,
        flux: Vec<f64>,
        condensate: Vec<f64>,
    ) -> Self {
        assert_eq!(components.len(), flux.len());
        assert_eq!(components.len(), condensate.len());
        let mut series = QuenchTimeSeries::new(dt, mz_values.clone());
        for (k, row) in components.into_iter().enumerate() {
            assert_eq!(row.len(), mz_values.len());
            let time = k as f64 * dt;
            let rates = RateComponents::from_values(time, mz_values.iter().copied().zip(row).collect());
            series.push(
                rates,
                ObservableSample {
                    time,
                    flux: flux[k],
                    condensate: condensate[k],
                    energy: 0.0,
                    norm: 1.0,
                },
            );
        }
        series
    }

    pub fn push(&mut self, rates: RateComponents, sample: ObservableSample) {
        debug_assert_eq!(rates.time, sample.time);
        self.rates.push(rates);
        self.samples.push(sample);
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn mz_values(&self) -> &[HalfInt] {
        &self.mz_values
    }

    pub fn len(&self) -> usize {
        self.rates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rates.is_empty()
    }

    pub fn rates(&self) -> &[RateComponents] {
        &self.rates
    }

    pub fn samples(&self) -> &[ObservableSample] {
        &self.samples
    }

    pub fn times(&self) -> Vec<f64> {
        self.rates.iter().map(|r| r.time).collect()
    }

    pub fn lambda_min(&self) -> Vec<f64> {
        self.rates.iter().map(|r| r.lambda_min).collect()
    }

    pub fn flux(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.flux).collect()
    }

    pub fn condensate(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.condensate).collect()
    }

    /// Time series of one component; `None` marks infinite values.
    pub fn component(&self, mz: HalfInt) -> Vec<Option<f64>> {
        self.rates
            .iter()
            .map(|r| r.get(mz).and_then(RateValue::finite))
            .collect()
    }

    /// CSV header: `t,lambda_min,argmin_mz,lambda[<mz>]...,flux,condensate,energy,norm`.
    pub fn csv_header(&self) -> String {
        self.header_with(true)
    }

    fn header_with(&self, components: bool) -> String {
        let mut cols = vec!["t".to_string(), "lambda_min".into(), "argmin_mz".into()];
        if components {
            cols.extend(self.mz_values.iter().map(|m| format!("lambda[{m}]")));
        }
        cols.extend(["flux", "condensate", "energy", "norm"].map(String::from));
        cols.join(",")
    }

    /// Writes the header and one row per sample, floats with 17 significant digits.
    pub fn write_csv<W: Write>(&self, w: W) -> std::io::Result<()> {
        self.write_csv_with(w, true)
    }

    /// Like [`write_csv`](Self::write_csv); `components = false` omits the
    /// per-vacuum `lambda[...]` columns.
    pub fn write_csv_with<W: Write>(&self, mut w: W, components: bool) -> std::io::Result<()> {
        writeln!(w, "{}", self.header_with(components))?;
        for (r, s) in self.rates.iter().zip(&self.samples) {
            write!(w, "{:.16e},{:.16e},{}", r.time, r.lambda_min, r.argmin_mz)?;
            if components {
                for (_, v) in &r.lambda {
                    write!(w, ",{v}")?;
                }
            }
            writeln!(
                w,
                ",{:.16e},{:.16e},{:.16e},{:.16e}",
                s.flux, s.condensate, s.energy, s.norm
            )?;
        }
        Ok(())
    }
}
