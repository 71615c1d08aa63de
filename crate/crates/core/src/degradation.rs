//! Component-level stochastic models for an LED luminaire: a non-homogeneous
//! Gamma process for package light-output loss, a Weibull lifetime for the
//! driver, the Arrhenius temperature link for the Gamma rate parameter, and
//! the competing-failure rule that combines the two mechanisms into a single
//! luminaire state.
//!
//! Conventions:
//! - Degradation `X(t) = 1 - P_out(t)` is dimensionless in [0, 1]; a package
//!   degradation failure is `X > 0.3` (light output below 70%).
//! - The Gamma-process time argument is in **years of operation**; the
//!   simulation clock is in **calendar days**. [`LuminairePath`] carries the
//!   conversion (365.25 days/year times a duty-cycle factor) so everything
//!   above this module works in days.
//! - Driver lifetimes are in calendar days.

use crate::error::{Error, Result};
use crate::rng::Stream;
use crate::special::{gamma, gamma_log_pdf};
use rand::Rng;
use rand_distr::{Distribution, Gamma as GammaDist};
use serde::{Deserialize, Serialize};

/// Boltzmann's constant in eV/K.
pub const BOLTZMANN_EV_PER_K: f64 = 8.62e-5;

/// Calendar days per year used for all day/year conversions.
pub const DAYS_PER_YEAR: f64 = 365.25;

/// Degradation threshold beyond which a package counts as failed
/// (light output below 70% of new).
pub const DEGRADATION_FAILURE_THRESHOLD: f64 = 0.3;

/// Parameters of the non-homogeneous Gamma degradation process with an
/// Arrhenius-linked rate.
///
/// The effective shape function is `exp(ln_a) * (exp(b t) - 1)` (zero at
/// t = 0, strictly increasing for b > 0) and the rate at absolute
/// temperature T is `exp(ln_c + e_a / (k_B T))`. Increment shapes over an
/// interval are unchanged by the `- 1` offset, so likelihoods built from
/// increments are unaffected by it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaDegradationModel {
    /// Log-amplitude of the shape function.
    pub ln_a: f64,
    /// Exponential growth rate of the shape function, per year. Must be > 0.
    pub b: f64,
    /// Log pre-exponential factor of the rate.
    pub ln_c: f64,
    /// Activation energy in eV. Must be >= 0.
    pub e_a: f64,
}

impl GammaDegradationModel {
    pub fn new(ln_a: f64, b: f64, ln_c: f64, e_a: f64) -> Result<Self> {
        if !(b > 0.0) {
            return Err(Error::domain(format!("growth rate b must be > 0, got {b}")));
        }
        if !(e_a >= 0.0) {
            return Err(Error::domain(format!(
                "activation energy must be >= 0, got {e_a}"
            )));
        }
        if !ln_a.is_finite() || !ln_c.is_finite() || !b.is_finite() || !e_a.is_finite() {
            return Err(Error::domain("non-finite degradation parameter".to_string()));
        }
        Ok(Self { ln_a, b, ln_c, e_a })
    }

    /// Effective shape at time `t` in years: `exp(ln_a) * (exp(b t) - 1)`.
    ///
    /// Zero at t = 0 and non-decreasing, so sampled paths start at exactly 0.
    pub fn effective_shape(&self, t_years: f64) -> f64 {
        debug_assert!(t_years >= 0.0);
        self.ln_a.exp() * ((self.b * t_years).exp() - 1.0)
    }

    /// Gamma rate parameter at absolute temperature `temp_k` (Kelvin):
    /// `exp(ln_c + e_a / (k_B T))`.
    ///
    /// With this sign convention the rate *grows* as temperature drops, so the
    /// mean degradation `shape / rate` shrinks at lower temperatures.
    pub fn rate_at_temperature(&self, temp_k: f64) -> Result<f64> {
        if !(temp_k > 0.0) {
            return Err(Error::domain(format!(
                "absolute temperature must be > 0 K, got {temp_k}"
            )));
        }
        Ok((self.ln_c + self.e_a / (BOLTZMANN_EV_PER_K * temp_k)).exp())
    }

    /// Acceleration factor between a stress and a normal temperature:
    /// `rate(T_stress) / rate(T_normal)`. Equal temperatures give exactly 1.
    pub fn acceleration_factor(&self, t_stress_k: f64, t_normal_k: f64) -> Result<f64> {
        let rs = self.rate_at_temperature(t_stress_k)?;
        let rn = self.rate_at_temperature(t_normal_k)?;
        Ok(rs / rn)
    }

    /// Mean degradation at `t_years` and temperature `temp_k`:
    /// effective shape over rate. Zero at t = 0, non-decreasing in t.
    pub fn mean_degradation(&self, t_years: f64, temp_k: f64) -> Result<f64> {
        if !(t_years >= 0.0) {
            return Err(Error::domain(format!(
                "time must be >= 0 years, got {t_years}"
            )));
        }
        Ok(self.effective_shape(t_years) / self.rate_at_temperature(temp_k)?)
    }
}

/// Weibull driver-lifetime model (shape `eta`, scale `lambda` in days).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeibullModel {
    /// Shape parameter, > 0.
    pub eta: f64,
    /// Scale parameter in days, > 0.
    pub lambda: f64,
}

impl WeibullModel {
    pub fn new(eta: f64, lambda: f64) -> Result<Self> {
        if !(eta > 0.0) || !(lambda > 0.0) {
            return Err(Error::domain(format!(
                "Weibull parameters must be positive, got eta={eta}, lambda={lambda}"
            )));
        }
        Ok(Self { eta, lambda })
    }

    /// Lifetime for a fixed uniform draw `u` in (0, 1):
    /// `lambda * (-ln u)^(1/eta)`.
    ///
    /// This is the exact inverse of the survival function, so
    /// `survival(lifetime_from_uniform(u)) == u` to machine precision.
    pub fn lifetime_from_uniform(&self, u: f64) -> f64 {
        debug_assert!(u > 0.0 && u < 1.0);
        self.lambda * (-u.ln()).powf(1.0 / self.eta)
    }

    /// Draw one lifetime in days.
    pub fn sample(&self, rng: &mut Stream) -> f64 {
        // gen() yields [0,1); mapping to (0,1] keeps ln() finite.
        let u = 1.0 - rng.gen::<f64>();
        self.lifetime_from_uniform(u)
    }

    /// Survival function S(t) = exp(-(t/lambda)^eta).
    pub fn survival(&self, t_days: f64) -> f64 {
        if t_days <= 0.0 {
            return 1.0;
        }
        (-(t_days / self.lambda).powf(self.eta)).exp()
    }

    /// CDF F(t) = 1 - S(t).
    pub fn cdf(&self, t_days: f64) -> f64 {
        1.0 - self.survival(t_days)
    }

    /// Quantile: smallest t with CDF(t) >= p.
    pub fn quantile(&self, p: f64) -> f64 {
        assert!((0.0..1.0).contains(&p));
        self.lambda * (-(1.0 - p).ln()).powf(1.0 / self.eta)
    }

    /// Mean time to failure in days: `lambda * Gamma(1 + 1/eta)`.
    pub fn mttf(&self) -> f64 {
        self.lambda * gamma(1.0 + 1.0 / self.eta)
    }
}

/// Mapping from the calendar-day simulation clock to the Gamma-process time
/// argument in years of operation.
///
/// `duty_cycle` scales calendar time into operating time (0.5 for a fleet
/// operating 12 hours per day); 1.0 means calendar-time aging.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AgingClock {
    pub duty_cycle: f64,
}

impl AgingClock {
    pub fn new(duty_cycle: f64) -> Result<Self> {
        if !(duty_cycle > 0.0 && duty_cycle <= 1.0) {
            return Err(Error::domain(format!(
                "duty cycle must be in (0, 1], got {duty_cycle}"
            )));
        }
        Ok(Self { duty_cycle })
    }

    /// Operating years accumulated over `days` calendar days.
    pub fn years(&self, days: f64) -> f64 {
        days * self.duty_cycle / DAYS_PER_YEAR
    }
}

impl Default for AgingClock {
    /// 12 hours of operation per day.
    fn default() -> Self {
        Self { duty_cycle: 0.5 }
    }
}

/// One luminaire's presampled degradation trajectory on a uniform calendar
/// grid, plus its driver failure time and degradation first-passage time.
#[derive(Debug, Clone, PartialEq)]
pub struct LuminairePath {
    /// Grid spacing in calendar days.
    pub grid_step_days: f64,
    /// X(t) at grid times 0, step, 2*step, ...; non-decreasing, in [0, 1],
    /// starts at exactly 0.
    pub values: Vec<f64>,
    /// Driver failure time in days (attached by the caller; +inf until then).
    pub driver_failure_days: f64,
    /// First grid time with X > 0.3, or +inf if never within the horizon.
    pub pf_first_passage_days: f64,
}

impl LuminairePath {
    /// Attach a driver failure time sampled from the fleet's Weibull model.
    pub fn with_driver_failure(mut self, t_days: f64) -> Self {
        self.driver_failure_days = t_days;
        self
    }

    /// Degradation value at `age_days`, read from the stored grid (step
    /// function: value at the largest grid point <= age). Ages beyond the
    /// grid return the last value.
    pub fn value_at(&self, age_days: f64) -> f64 {
        debug_assert!(age_days >= 0.0);
        let idx = (age_days / self.grid_step_days).floor() as usize;
        let idx = idx.min(self.values.len() - 1);
        self.values[idx]
    }

    /// Number of grid points.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Sample a degradation path on a uniform grid.
///
/// Increments over consecutive grid cells are independent
/// `Gamma(shape_diff, rate)` draws (Marsaglia-Tsang via `rand_distr`, with
/// the shape-boost transform below shape 1), accumulated and then clamped at
/// 1.0. Clamping only ever maps values above 1 down to exactly 1, far past
/// the 0.3 failure threshold, so it cannot disturb first-passage detection.
pub fn sample_path(
    model: &GammaDegradationModel,
    temp_k: f64,
    clock: AgingClock,
    grid_step_days: f64,
    horizon_days: f64,
    stream: &mut Stream,
) -> Result<LuminairePath> {
    if !(grid_step_days > 0.0) {
        return Err(Error::domain(format!(
            "grid step must be > 0 days, got {grid_step_days}"
        )));
    }
    if !(horizon_days >= 0.0) {
        return Err(Error::domain(format!(
            "horizon must be >= 0 days, got {horizon_days}"
        )));
    }
    let rate = model.rate_at_temperature(temp_k)?;
    let scale = 1.0 / rate;
    let n_steps = (horizon_days / grid_step_days).ceil() as usize;

    let mut values = Vec::with_capacity(n_steps + 1);
    values.push(0.0);
    let mut x = 0.0_f64;
    let mut prev_shape = 0.0_f64;
    let mut first_passage = f64::INFINITY;
    for k in 1..=n_steps {
        let t_years = clock.years(k as f64 * grid_step_days);
        let shape = model.effective_shape(t_years);
        let d_shape = (shape - prev_shape).max(0.0);
        prev_shape = shape;
        if d_shape > 0.0 {
            let dist = GammaDist::new(d_shape, scale)
                .map_err(|e| Error::numerical(format!("gamma increment: {e}")))?;
            x += dist.sample(stream);
        }
        let clamped = x.min(1.0);
        values.push(clamped);
        if first_passage.is_infinite() && clamped > DEGRADATION_FAILURE_THRESHOLD {
            first_passage = k as f64 * grid_step_days;
        }
    }

    Ok(LuminairePath {
        grid_step_days,
        values,
        driver_failure_days: f64::INFINITY,
        pf_first_passage_days: first_passage,
    })
}

/// Smallest grid time at which the stored path exceeds `threshold`, or +inf.
pub fn first_passage(path: &LuminairePath, threshold: f64) -> f64 {
    assert!(
        threshold > 0.0 && threshold <= 1.0,
        "threshold must be in (0, 1]"
    );
    for (k, &v) in path.values.iter().enumerate() {
        if v > threshold {
            return k as f64 * path.grid_step_days;
        }
    }
    f64::INFINITY
}

/// Competing-failure luminaire state: 1 (dark) if the driver has failed,
/// otherwise the package degradation level.
pub fn luminaire_state(degradation: f64, driver_failed: bool) -> Result<f64> {
    if !(0.0..=1.0).contains(&degradation) {
        return Err(Error::domain(format!(
            "degradation must be in [0, 1], got {degradation}"
        )));
    }
    Ok(if driver_failed { 1.0 } else { degradation })
}

/// Log-density of a Gamma increment, exposed for the calibration likelihood.
pub fn increment_log_pdf(increment: f64, shape: f64, rate: f64) -> f64 {
    gamma_log_pdf(increment, shape, rate)
}
