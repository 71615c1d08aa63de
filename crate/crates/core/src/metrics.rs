//! Static lighting indices and the long-run deficiency-ratio metric.
//!
//! A run's event-indexed luminaire-state trajectory is mapped to
//! working-plane illuminance, each event time is scored against the average
//! illuminance and uniformity requirements, and per-interval deficiency
//! durations are aggregated into the fraction of the horizon spent in
//! violation.

use crate::error::{Error, Result};
use crate::surrogate::SurrogateModel;
use serde::{Deserialize, Serialize};

/// Lighting performance requirements: maintained average illuminance in lux
/// and minimum uniformity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Requirements {
    pub min_avg_lux: f64,
    pub min_uniformity: f64,
}

impl Requirements {
    pub fn new(min_avg_lux: f64, min_uniformity: f64) -> Result<Self> {
        if !(min_avg_lux > 0.0) {
            return Err(Error::domain(format!(
                "illuminance requirement must be > 0 lux, got {min_avg_lux}"
            )));
        }
        if !(min_uniformity > 0.0 && min_uniformity <= 1.0) {
            return Err(Error::domain(format!(
                "uniformity requirement must be in (0, 1], got {min_uniformity}"
            )));
        }
        Ok(Self {
            min_avg_lux,
            min_uniformity,
        })
    }
}

/// Static indices evaluated at each event time of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct PerformanceTrace {
    /// Strictly increasing event times in days.
    pub event_days: Vec<f64>,
    /// Average working-plane illuminance at each event, lux.
    pub avg_lux: Vec<f64>,
    /// Illuminance uniformity at each event, in [0, 1].
    pub uniformity: Vec<f64>,
}

impl PerformanceTrace {
    pub fn new(event_days: Vec<f64>, avg_lux: Vec<f64>, uniformity: Vec<f64>) -> Result<Self> {
        if event_days.len() != avg_lux.len() || event_days.len() != uniformity.len() {
            return Err(Error::data(
                "trace fields must have equal lengths".to_string(),
            ));
        }
        if event_days.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::data(
                "event times must strictly increase".to_string(),
            ));
        }
        if uniformity.iter().any(|u| !(0.0..=1.0).contains(u)) {
            return Err(Error::data("uniformity outside [0, 1]".to_string()));
        }
        Ok(Self {
            event_days,
            avg_lux,
            uniformity,
        })
    }

    pub fn len(&self) -> usize {
        self.event_days.len()
    }

    pub fn is_empty(&self) -> bool {
        self.event_days.is_empty()
    }

    /// Whether either requirement is violated at event index `k`.
    pub fn deficient_at(&self, k: usize, req: &Requirements) -> bool {
        self.avg_lux[k] < req.min_avg_lux || self.uniformity[k] < req.min_uniformity
    }
}

/// Arithmetic mean of a working-plane illuminance vector.
pub fn average_illuminance(illuminance: &[f64]) -> Result<f64> {
    if illuminance.is_empty() {
        return Err(Error::data("empty illuminance vector".to_string()));
    }
    if illuminance.iter().any(|&e| e < 0.0) {
        return Err(Error::data("negative illuminance".to_string()));
    }
    Ok(illuminance.iter().sum::<f64>() / illuminance.len() as f64)
}

/// Uniformity: minimum over mean illuminance. A fully dark plane (zero mean)
/// is scored 0, the worst value, so it always registers as a violation.
pub fn uniformity(illuminance: &[f64]) -> Result<f64> {
    let avg = average_illuminance(illuminance)?;
    if avg == 0.0 {
        return Ok(0.0);
    }
    let min = illuminance.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(min / avg)
}

/// Deficiency duration charged to the interval ending at event `k` (k >= 1):
/// the full interval length if either index violates its requirement at the
/// right endpoint, else zero. Violating both charges the maximum (the whole
/// interval), not the sum.
pub fn deficiency_duration(k: usize, trace: &PerformanceTrace, req: &Requirements) -> Result<f64> {
    if k == 0 || k >= trace.len() {
        return Err(Error::domain(format!(
            "interval index {k} needs a left endpoint (1..{})",
            trace.len()
        )));
    }
    let dt = trace.event_days[k] - trace.event_days[k - 1];
    let e_viol = trace.avg_lux[k] < req.min_avg_lux;
    let u_viol = trace.uniformity[k] < req.min_uniformity;
    let t_e = if e_viol { dt } else { 0.0 };
    let t_u = if u_viol { dt } else { 0.0 };
    Ok(t_e.max(t_u))
}

/// Deficiency ratio: total deficient time over the operating horizon, in
/// [0, 1]. Time before the first event is not charged, so callers should log
/// an event at t = 0.
pub fn deficiency_ratio(trace: &PerformanceTrace, req: &Requirements, t_over: f64) -> Result<f64> {
    if !(t_over > 0.0) {
        return Err(Error::domain(format!(
            "horizon must be > 0 days, got {t_over}"
        )));
    }
    if let (Some(first), Some(last)) = (trace.event_days.first(), trace.event_days.last()) {
        if last - first > t_over + 1e-9 {
            return Err(Error::data(format!(
                "event span {} exceeds horizon {t_over}",
                last - first
            )));
        }
    }
    let mut total = 0.0;
    for k in 1..trace.len() {
        total += deficiency_duration(k, trace, req)?;
    }
    Ok((total / t_over).min(1.0))
}

/// Result of mapping one run's state trajectory through the surrogate and
/// scoring it.
#[derive(Debug, Clone)]
pub struct RunPerformance {
    pub deficiency_ratio: f64,
    pub trace: PerformanceTrace,
}

/// Scores one simulation run: maps the K x J luminaire-state trajectory to
/// illuminance via the surrogate (output scaling Q = 1 - L rowwise), computes
/// the static indices at every event time, and aggregates the per-interval
/// deficiency durations into the deficiency ratio.
pub fn evaluate_run(
    states: &[Vec<f64>],
    event_days: &[f64],
    surrogate: &SurrogateModel,
    req: &Requirements,
    t_over: f64,
) -> Result<RunPerformance> {
    if states.len() != event_days.len() {
        return Err(Error::data(format!(
            "{} state rows but {} event times",
            states.len(),
            event_days.len()
        )));
    }
    if states.is_empty() {
        return Err(Error::data("empty trajectory".to_string()));
    }
    let scaling: Vec<Vec<f64>> = states
        .iter()
        .map(|row| row.iter().map(|&l| 1.0 - l).collect())
        .collect();
    let illum = surrogate.predict_stacked(&scaling)?;
    let mut avg = Vec::with_capacity(illum.len());
    let mut unif = Vec::with_capacity(illum.len());
    for row in &illum {
        avg.push(average_illuminance(row)?);
        unif.push(uniformity(row)?);
    }
    let trace = PerformanceTrace::new(event_days.to_vec(), avg, unif)?;
    let ratio = deficiency_ratio(&trace, req, t_over)?;
    Ok(RunPerformance {
        deficiency_ratio: ratio,
        trace,
    })
}
