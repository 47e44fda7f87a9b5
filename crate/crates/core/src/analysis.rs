//! Event detection on a sampled quench: rate-component crossings (DQPTs),
//! order-parameter zeros, and return-rate local minima, plus the
//! coincidence classification of OP zeros against DQPTs.
//!
//! At finite size every rate component is analytic; a DQPT shows up as a
//! change of the dominant (minimal) component between two samples. Event
//! times are refined by linear interpolation inside the sample bracket.

use log::warn;
use serde::Serialize;

use crate::series::QuenchTimeSeries;
use crate::spin::{HalfInt, SpinValue};

/// Default coincidence window in units of 1/J.
pub const DEFAULT_WINDOW: f64 = 0.5;
/// Default midpoint tolerance as a fraction of the flanking-DQPT separation.
pub const DEFAULT_MIDPOINT_FRACTION: f64 = 0.15;
/// Default degeneracy tolerance for simultaneous crossings.
pub const DEFAULT_TOL_DEG: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Rising,
    Falling,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EventKind {
    DqptCrossing { from_mz: HalfInt, to_mz: HalfInt },
    OpZero { direction: Direction },
    RrLocalMin { mz: HalfInt, major: bool },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Event {
    #[serde(flatten)]
    pub kind: EventKind,
    /// Interpolated event time.
    pub time: f64,
    /// Sample interval `(t_lo, t_hi)` containing `time`.
    pub bracket: (f64, f64),
    /// Rate at a crossing or minimum; zero for OP zeros.
    pub value: f64,
}

impl Event {
    pub fn is_dqpt(&self) -> bool {
        matches!(self.kind, EventKind::DqptCrossing { .. })
    }

    /// `(from, to)` of a crossing.
    pub fn crossing(&self) -> Option<(HalfInt, HalfInt)> {
        match self.kind {
            EventKind::DqptCrossing { from_mz, to_mz } => Some((from_mz, to_mz)),
            _ => None,
        }
    }

    /// `(m_z, major)` of a return-rate minimum.
    pub fn minimum(&self) -> Option<(HalfInt, bool)> {
        match self.kind {
            EventKind::RrLocalMin { mz, major } => Some((mz, major)),
            _ => None,
        }
    }

    fn shifted(mut self, dt: f64) -> Self {
        self.time += dt;
        self.bracket = (self.bracket.0 + dt, self.bracket.1 + dt);
        self
    }
}

/// Lower envelope of straight lines on `s ∈ [0, 1]` starting from `start`.
///
/// Each line is `(label, y(0), y(1))`. Returns the successive switches as
/// `(from, to, s, y)`.
fn envelope_switches(
    lines: &[(HalfInt, f64, f64)],
    start: usize,
    tol_deg: f64,
) -> Vec<(HalfInt, HalfInt, f64, f64)> {
    let mut switches = Vec::new();
    let mut cur = start;
    let mut s_cur = 0.0;
    // at most one switch per line: slopes strictly decrease along the chain
    for _ in 0..lines.len() {
        let (_, c0, c1) = lines[cur];
        let c_slope = c1 - c0;
        let y_cur = c0 + c_slope * s_cur;
        let mut best: Option<(usize, f64, f64)> = None;
        for (k, &(_, y0, y1)) in lines.iter().enumerate() {
            let slope = y1 - y0;
            if k == cur || slope >= c_slope {
                continue;
            }
            let gap = y0 + slope * s_cur - y_cur;
            let s = if gap <= tol_deg { s_cur } else { s_cur + gap / (c_slope - slope) };
            if s > 1.0 {
                continue;
            }
            let better = match best {
                None => true,
                Some((_, bs, bslope)) => s < bs || (s == bs && slope < bslope),
            };
            if better {
                best = Some((k, s, slope));
            }
        }
        match best {
            Some((k, s, _)) => {
                switches.push((lines[cur].0, lines[k].0, s, c0 + c_slope * s));
                cur = k;
                s_cur = s;
            }
            None => break,
        }
    }
    switches
}

/// DQPT events: changes of the dominant rate component between consecutive samples.
///
/// Only components finite at both bracket endpoints take part. A switch
/// into or out of a component that is infinite at either endpoint is a
/// dominance-by-appearance and is suppressed with a warning.
pub fn find_dqpts(series: &QuenchTimeSeries, tol_deg: f64) -> Vec<Event> {
    let rates = series.rates();
    let mut events = Vec::new();
    for pair in rates.windows(2) {
        let (lo, hi) = (&pair[0], &pair[1]);
        if lo.argmin_mz == hi.argmin_mz {
            continue;
        }
        let lines: Vec<(HalfInt, f64, f64)> = lo
            .lambda
            .iter()
            .zip(&hi.lambda)
            .filter_map(|(&(m, a), &(_, b))| Some((m, a.finite()?, b.finite()?)))
            .collect();
        let start = lines.iter().position(|l| l.0 == lo.argmin_mz);
        let end_ok = lines.iter().any(|l| l.0 == hi.argmin_mz);
        let Some(start) = start.filter(|_| end_ok) else {
            warn!(
                "suppressed dominance change {} -> {} in [{}, {}]: infinite branch involved",
                lo.argmin_mz, hi.argmin_mz, lo.time, hi.time
            );
            continue;
        };
        let dt = hi.time - lo.time;
        let mut switches = envelope_switches(&lines, start, tol_deg);
        let last = switches.last().map_or(lo.argmin_mz, |s| s.1);
        if last != hi.argmin_mz {
            // exact tie at the right endpoint
            let y = lines.iter().find(|l| l.0 == last).map_or(hi.lambda_min, |l| l.2);
            switches.push((last, hi.argmin_mz, 1.0, y));
        }
        for (from_mz, to_mz, s, y) in switches {
            events.push(Event {
                kind: EventKind::DqptCrossing { from_mz, to_mz },
                time: lo.time + s * dt,
                bracket: (lo.time, hi.time),
                value: y,
            });
        }
    }
    events
}

/// Zeros of the electric flux, by sign change between consecutive samples.
///
/// A sample that is exactly zero is reported at its own time with the
/// following interval as bracket, provided the flux actually changes sign
/// across it.
pub fn find_op_zeros(series: &QuenchTimeSeries) -> Vec<Event> {
    sign_changes(&series.times(), &series.flux())
}

fn sign_changes(times: &[f64], values: &[f64]) -> Vec<Event> {
    let mut events = Vec::new();
    let mut last_sign = 0.0f64;
    for k in 0..values.len().saturating_sub(1) {
        let (a, b) = (values[k], values[k + 1]);
        let (t0, t1) = (times[k], times[k + 1]);
        if a != 0.0 {
            last_sign = a.signum();
        }
        let direction = |rising: bool| if rising { Direction::Rising } else { Direction::Falling };
        if a != 0.0 && b != 0.0 && a.signum() != b.signum() {
            let s = a / (a - b);
            events.push(Event {
                kind: EventKind::OpZero { direction: direction(b > 0.0) },
                time: t0 + s * (t1 - t0),
                bracket: (t0, t1),
                value: 0.0,
            });
        } else if a == 0.0 && b != 0.0 && last_sign != 0.0 && last_sign != b.signum() {
            events.push(Event {
                kind: EventKind::OpZero { direction: direction(b > 0.0) },
                time: t0,
                bracket: (t0, t1),
                value: 0.0,
            });
        }
    }
    events
}

/// A discrete local minimum refined by a three-point parabola.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalMin {
    pub index: usize,
    pub time: f64,
    pub value: f64,
    pub bracket: (f64, f64),
    /// The minimum sits on a plateau of exactly equal samples.
    pub plateau: bool,
}

/// Local minima of a uniformly sampled sequence via `y[i−1] > y[i] < y[i+1]`.
///
/// On a plateau of equal values the leftmost point is reported, unrefined.
pub fn local_minima(times: &[f64], values: &[f64]) -> Vec<LocalMin> {
    let n = values.len();
    let mut out = Vec::new();
    let mut i = 1;
    while i + 1 < n {
        if values[i - 1].partial_cmp(&values[i]) != Some(std::cmp::Ordering::Greater) {
            i += 1;
            continue;
        }
        let mut k = i;
        while k + 1 < n && values[k + 1] == values[i] {
            k += 1;
        }
        if k + 1 < n && values[k + 1] > values[i] {
            if k > i {
                warn!("plateau minimum at t = {} spans {} samples", times[i], k - i + 1);
                out.push(LocalMin {
                    index: i,
                    time: times[i],
                    value: values[i],
                    bracket: (times[i], times[i + 1]),
                    plateau: true,
                });
            } else {
                let (y0, y1, y2) = (values[i - 1], values[i], values[i + 1]);
                let h = times[i + 1] - times[i];
                let curv = y0 - 2.0 * y1 + y2;
                let offset = 0.5 * (y0 - y2) / curv;
                let time = times[i] + offset * h;
                let value = y1 - 0.125 * (y0 - y2) * (y0 - y2) / curv;
                let bracket = if offset >= 0.0 {
                    (times[i], times[i + 1])
                } else {
                    (times[i - 1], times[i])
                };
                out.push(LocalMin { index: i, time, value, bracket, plateau: false });
            }
        }
        i = k + 1;
    }
    out
}

/// Local minima of `λ(t)`, labeled by the dominant vacuum; major iff `|m_z| = S`.
pub fn find_rr_minima(series: &QuenchTimeSeries, spin: SpinValue) -> Vec<Event> {
    let times = series.times();
    local_minima(&times, &series.lambda_min())
        .into_iter()
        .map(|m| {
            let mz = series.rates()[m.index].argmin_mz;
            Event {
                kind: EventKind::RrLocalMin { mz, major: mz.abs() == spin.s() },
                time: m.time,
                bracket: m.bracket,
                value: m.value,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Classification {
    CoincidesWithDqpt { dqpt: Event },
    MidpointBetween { dqpt_a: Event, dqpt_b: Event },
    Unmatched,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Pairing {
    pub op_zero: Event,
    pub classification: Classification,
    /// Signed offset of the zero from its reference time (the paired DQPT,
    /// the flanking midpoint, or the nearest DQPT when unmatched).
    pub time_discrepancy: Option<f64>,
    /// Whether the zero falls inside the robust-scarring window.
    pub enforced: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoincidenceReport {
    pub dqpts: Vec<Event>,
    pub op_zeros: Vec<Event>,
    pub pairings: Vec<Pairing>,
    pub cutoff: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassifyOptions {
    /// Half-integer S: maximal |t_zero − t_dqpt| for a coincidence.
    pub window: f64,
    /// Integer S: maximal |t_zero − midpoint| as a fraction of the flanking separation.
    pub midpoint_fraction: f64,
    /// Pairings after this time are reported but not enforced.
    pub cutoff: Option<f64>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            window: DEFAULT_WINDOW,
            midpoint_fraction: DEFAULT_MIDPOINT_FRACTION,
            cutoff: None,
        }
    }
}

fn nearest<'a>(events: impl Iterator<Item = &'a Event>, t: f64) -> Option<&'a Event> {
    events.min_by(|a, b| (a.time - t).abs().total_cmp(&(b.time - t).abs()))
}

/// Classifies each OP zero against the DQPTs.
///
/// Half-integer S: a zero coincides with the nearest `±1/2` swap if it lies
/// within `window`. Integer S: a zero is the midpoint of the DQPTs entering and
/// leaving `m_z = 0` dominance if it deviates from their midpoint by less than
/// `midpoint_fraction` of their separation.
pub fn classify(
    dqpts: &[Event],
    op_zeros: &[Event],
    spin: SpinValue,
    opts: &ClassifyOptions,
) -> CoincidenceReport {
    let half = HalfInt::HALF;
    let pairings = op_zeros
        .iter()
        .map(|zero| {
            let t = zero.time;
            let fallback = nearest(dqpts.iter(), t).map(|d| t - d.time);
            let (classification, time_discrepancy) = if spin.is_half_integer() {
                let swaps = dqpts.iter().filter(|d| {
                    matches!(d.crossing(), Some((a, b)) if (a == half && b == -half) || (a == -half && b == half))
                });
                match nearest(swaps, t) {
                    Some(d) if (t - d.time).abs() <= opts.window => {
                        (Classification::CoincidesWithDqpt { dqpt: *d }, Some(t - d.time))
                    }
                    Some(d) => (Classification::Unmatched, Some(t - d.time)),
                    None => (Classification::Unmatched, fallback),
                }
            } else {
                let flanks = dqpts.windows(2).filter(|w| {
                    matches!((w[0].crossing(), w[1].crossing()),
                        (Some((_, into)), Some((out, _))) if into == HalfInt::ZERO && out == HalfInt::ZERO)
                });
                let best = flanks.min_by(|a, b| {
                    let da = (t - 0.5 * (a[0].time + a[1].time)).abs();
                    let db = (t - 0.5 * (b[0].time + b[1].time)).abs();
                    da.total_cmp(&db)
                });
                match best {
                    Some(w) => {
                        let mid = 0.5 * (w[0].time + w[1].time);
                        let sep = w[1].time - w[0].time;
                        let dev = t - mid;
                        if dev.abs() < opts.midpoint_fraction * sep {
                            (Classification::MidpointBetween { dqpt_a: w[0], dqpt_b: w[1] }, Some(dev))
                        } else {
                            (Classification::Unmatched, Some(dev))
                        }
                    }
                    None => (Classification::Unmatched, fallback),
                }
            };
            Pairing {
                op_zero: *zero,
                classification,
                time_discrepancy,
                enforced: opts.cutoff.is_none_or(|c| t <= c),
            }
        })
        .collect();
    CoincidenceReport {
        dqpts: dqpts.to_vec(),
        op_zeros: op_zeros.to_vec(),
        pairings,
        cutoff: opts.cutoff,
    }
}

/// All detected events of one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub dqpts: Vec<Event>,
    pub op_zeros: Vec<Event>,
    pub rr_minima: Vec<Event>,
    pub condensate_minima: Vec<f64>,
    pub first_mjm: Option<Event>,
    pub first_revival: Option<f64>,
    pub pairings: Vec<Pairing>,
    pub cutoff: Option<f64>,
}

/// Margin added to the first revival time for the enforced classification window.
pub const REVIVAL_MARGIN: f64 = 1.0;

/// Runs every detector and the classification.
///
/// The first revival is the first major minimum labeled with the initial
/// vacuum; failing that, twice the first major minimum.
pub fn analyze(
    series: &QuenchTimeSeries,
    spin: SpinValue,
    initial_mz: HalfInt,
    window: f64,
) -> AnalysisReport {
    let dqpts = find_dqpts(series, DEFAULT_TOL_DEG);
    let op_zeros = find_op_zeros(series);
    let rr_minima = find_rr_minima(series, spin);
    let condensate_minima = local_minima(&series.times(), &series.condensate())
        .into_iter()
        .map(|m| m.time)
        .collect();
    let first_mjm = rr_minima.iter().find(|e| matches!(e.minimum(), Some((_, true)))).copied();
    let first_revival = rr_minima
        .iter()
        .find(|e| e.minimum() == Some((initial_mz, true)))
        .map(|e| e.time)
        .or_else(|| first_mjm.map(|e| 2.0 * e.time));
    let cutoff = first_revival.map(|t| t + REVIVAL_MARGIN);
    let opts = ClassifyOptions { window, cutoff, ..Default::default() };
    let report = classify(&dqpts, &op_zeros, spin, &opts);
    AnalysisReport {
        dqpts,
        op_zeros,
        rr_minima,
        condensate_minima,
        first_mjm,
        first_revival,
        pairings: report.pairings,
        cutoff,
    }
}

/// Shifts every event time by `dt`; used to check time-shift invariance.
pub fn shift_events(events: &[Event], dt: f64) -> Vec<Event> {
    events.iter().map(|e| e.shifted(dt)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::observables::RateValue;

    fn h(twice: i32) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    fn two_component(dt: f64, f: impl Fn(f64) -> (f64, f64), n: usize) -> QuenchTimeSeries {
        let comps = (0..n)
            .map(|k| {
                let (a, b) = f(k as f64 * dt);
                vec![RateValue::Finite(a), RateValue::Finite(b)]
            })
            .collect();
        QuenchTimeSeries::from_components(dt, vec![h(1), h(-1)], comps, vec![1.0; n], vec![0.0; n])
    }

    #[test]
    fn linear_crossing_is_exact() {
        let s = two_component(0.1, |t| (t, 1.0 - t), 11);
        let ev = find_dqpts(&s, DEFAULT_TOL_DEG);
        assert_eq!(ev.len(), 1);
        assert!((ev[0].time - 0.5).abs() < 1e-12);
        assert_eq!(ev[0].crossing(), Some((h(1), h(-1))));
        assert!(ev[0].bracket.0 <= ev[0].time && ev[0].time <= ev[0].bracket.1);
    }

    #[test]
    fn no_crossing_no_events() {
        let s = two_component(0.1, |t| (t, t + 1.0), 20);
        assert!(find_dqpts(&s, DEFAULT_TOL_DEG).is_empty());
    }

    #[test]
    fn appearance_from_infinity_is_suppressed() {
        let comps = vec![
            vec![RateValue::Finite(0.5), RateValue::Inf],
            vec![RateValue::Finite(0.6), RateValue::Finite(0.1)],
            vec![RateValue::Finite(0.7), RateValue::Finite(0.2)],
        ];
        let s = QuenchTimeSeries::from_components(0.1, vec![h(1), h(-1)], comps, vec![1.0; 3], vec![0.0; 3]);
        assert!(find_dqpts(&s, DEFAULT_TOL_DEG).is_empty());
    }

    #[test]
    fn multiple_switches_in_one_step_follow_the_envelope() {
        // a: 0 → 3, b: 1 → 1, c: 2 → 0 on [0, 1]; envelope a→b at 1/3, b→c at 1/2
        let comps = vec![
            vec![RateValue::Finite(0.0), RateValue::Finite(1.0), RateValue::Finite(2.0)],
            vec![RateValue::Finite(3.0), RateValue::Finite(1.0), RateValue::Finite(0.0)],
        ];
        let s = QuenchTimeSeries::from_components(1.0, vec![h(3), h(1), h(-1)], comps, vec![1.0; 2], vec![0.0; 2]);
        let ev = find_dqpts(&s, DEFAULT_TOL_DEG);
        assert_eq!(ev.len(), 2);
        assert_eq!(ev[0].crossing(), Some((h(3), h(1))));
        assert!((ev[0].time - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(ev[1].crossing(), Some((h(1), h(-1))));
        assert!((ev[1].time - 0.5).abs() < 1e-12);
    }

    #[test]
    fn cosine_zero_near_half_pi() {
        let dt = 0.01;
        let times: Vec<f64> = (0..600).map(|k| k as f64 * dt).collect();
        let flux: Vec<f64> = times.iter().map(|t| t.cos()).collect();
        let ev = sign_changes(&times, &flux);
        assert!((ev[0].time - std::f64::consts::FRAC_PI_2).abs() < 1e-4);
        assert_eq!(ev[0].kind, EventKind::OpZero { direction: Direction::Falling });
        assert_eq!(ev[1].kind, EventKind::OpZero { direction: Direction::Rising });
    }

    #[test]
    fn exact_zero_attaches_to_following_interval() {
        let times = [0.0, 1.0, 2.0, 3.0];
        let ev = sign_changes(&times, &[1.0, 0.0, -1.0, -2.0]);
        assert_eq!(ev.len(), 1);
        assert_eq!(ev[0].time, 1.0);
        assert_eq!(ev[0].bracket, (1.0, 2.0));
        // touching zero without a sign change is not a zero crossing
        assert!(sign_changes(&times, &[1.0, 0.0, 1.0, 2.0]).is_empty());
        assert!(sign_changes(&times, &[0.5; 4]).is_empty());
    }

    #[test]
    fn parabola_vertex_recovered() {
        let dt = 0.1;
        let times: Vec<f64> = (0..50).map(|k| k as f64 * dt).collect();
        let y: Vec<f64> = times.iter().map(|t| (t - 2.345).powi(2) + 0.25).collect();
        let mins = local_minima(&times, &y);
        assert_eq!(mins.len(), 1);
        assert!((mins[0].time - 2.345).abs() < dt * dt);
        assert!((mins[0].value - 0.25).abs() < 1e-12);
        assert!(mins[0].bracket.0 <= mins[0].time && mins[0].time <= mins[0].bracket.1);
    }

    #[test]
    fn plateau_reports_leftmost_point() {
        let times = [0.0, 1.0, 2.0, 3.0, 4.0];
        let mins = local_minima(&times, &[3.0, 1.0, 1.0, 1.0, 2.0]);
        assert_eq!(mins.len(), 1);
        assert_eq!(mins[0].index, 1);
        assert!(mins[0].plateau);
    }

    fn dqpt(from: i32, to: i32, time: f64) -> Event {
        Event {
            kind: EventKind::DqptCrossing { from_mz: h(from), to_mz: h(to) },
            time,
            bracket: (time - 0.005, time + 0.005),
            value: 0.5,
        }
    }

    fn zero(time: f64) -> Event {
        Event {
            kind: EventKind::OpZero { direction: Direction::Falling },
            time,
            bracket: (time - 0.005, time + 0.005),
            value: 0.0,
        }
    }

    #[test]
    fn half_integer_coincidence_uses_middle_swap_only() {
        let spin = SpinValue::new(3).unwrap();
        let d = [dqpt(3, 1, 2.5), dqpt(1, -1, 5.8), dqpt(-1, -3, 9.1)];
        let r = classify(&d, &[zero(6.2), zero(2.6)], spin, &ClassifyOptions::default());
        assert!(matches!(r.pairings[0].classification, Classification::CoincidesWithDqpt { dqpt } if dqpt.time == 5.8));
        assert!((r.pairings[0].time_discrepancy.unwrap() - 0.4).abs() < 1e-12);
        // close to the 3/2→1/2 DQPT, but that is not a ±1/2 swap
        assert_eq!(r.pairings[1].classification, Classification::Unmatched);
    }

    #[test]
    fn integer_midpoint_classification() {
        let spin = SpinValue::new(2).unwrap();
        let d = [dqpt(2, 0, 2.24), dqpt(0, -2, 5.42)];
        let r = classify(&d, &[zero(4.12)], spin, &ClassifyOptions::default());
        match &r.pairings[0].classification {
            Classification::MidpointBetween { dqpt_a, dqpt_b } => {
                assert_eq!(dqpt_a.time, 2.24);
                assert_eq!(dqpt_b.time, 5.42);
            }
            other => panic!("unexpected {other:?}"),
        }
        let far = classify(&d, &[zero(5.0)], spin, &ClassifyOptions::default());
        assert_eq!(far.pairings[0].classification, Classification::Unmatched);
    }

    #[test]
    fn classification_is_shift_invariant() {
        let spin = SpinValue::new(3).unwrap();
        let d = vec![dqpt(3, 1, 2.5), dqpt(1, -1, 5.8), dqpt(-1, -3, 9.1)];
        let z = vec![zero(6.2), zero(18.0)];
        let base = classify(&d, &z, spin, &ClassifyOptions::default());
        let moved = classify(&shift_events(&d, 7.25), &shift_events(&z, 7.25), spin, &ClassifyOptions::default());
        for (a, b) in base.pairings.iter().zip(&moved.pairings) {
            assert_eq!(
                std::mem::discriminant(&a.classification),
                std::mem::discriminant(&b.classification)
            );
            let (da, db) = (a.time_discrepancy.unwrap(), b.time_discrepancy.unwrap());
            assert!((da - db).abs() < 1e-9);
        }
    }

    #[test]
    fn cutoff_marks_late_pairings_unenforced() {
        let spin = SpinValue::new(1).unwrap();
        let d = [dqpt(1, -1, 1.9)];
        let opts = ClassifyOptions { cutoff: Some(10.0), ..Default::default() };
        let r = classify(&d, &[zero(2.0), zero(12.0)], spin, &opts);
        assert!(r.pairings[0].enforced);
        assert!(!r.pairings[1].enforced);
    }

    #[test]
    fn event_json_shape() {
        let e = dqpt(3, 1, 2.5);
        let v = serde_json::to_value(e).unwrap();
        assert_eq!(v["kind"], "dqpt_crossing");
        assert_eq!(v["from_mz"], "3/2");
        assert_eq!(v["to_mz"], "1/2");
        assert_eq!(v["bracket"].as_array().unwrap().len(), 2);
        assert_eq!(v["time"], 2.5);
    }
}
