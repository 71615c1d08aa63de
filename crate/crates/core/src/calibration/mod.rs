//! Bayesian calibration of the Gamma degradation model from
//! multi-temperature accelerated-degradation data.
//!
//! Observations are increment records pooled across stress temperatures;
//! the likelihood is a product of Gamma increment densities with
//! temperature-linked rates. Inference runs an adaptive random-walk
//! Metropolis sampler (see [`mcmc`]) on the transformed parameter vector
//! (`ln_a`, `ln b`, `ln_c`, `ln e_a`), with positivity handled on the log
//! scale and diffuse Normal / half-Normal priors on the natural scale.

mod mcmc;

pub use mcmc::{adaptive_random_walk, metropolis_log_accept_prob, McmcOptions};

use crate::degradation::GammaDegradationModel;
use crate::error::{Error, Result};
use crate::rng::{stream, Stream};
use crate::special::gamma_log_pdf;
use crate::stats::percentile;
use rand_distr::{Distribution, Gamma as GammaDist};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Natural-scale parameter vector, ordered (ln_a, b, ln_c, e_a).
pub type ThetaVec = [f64; 4];

/// Parameter names in `ThetaVec` order, used in diagnostics output.
pub const PARAM_NAMES: [&str; 4] = ["ln_a", "b", "ln_c", "e_a"];

/// Hours per year used to convert inspection clocks (24 * 365.25).
pub const HOURS_PER_YEAR: f64 = 8766.0;

/// Observed degradation increments below this are floored before entering
/// the Gamma density: quantized measurements can report a zero increment,
/// where the density is 0 or infinite depending on shape.
pub const INCREMENT_FLOOR: f64 = 1e-9;

fn theta_to_model(theta: &ThetaVec) -> Option<GammaDegradationModel> {
    GammaDegradationModel::new(theta[0], theta[1], theta[2], theta[3]).ok()
}

/// One inspection interval of one test unit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdtRecord {
    pub unit_id: u32,
    pub temp_k: f64,
    pub t_prev_yr: f64,
    pub t_curr_yr: f64,
    pub x_prev: f64,
    pub x_curr: f64,
}

/// A validated, pooled accelerated-degradation dataset.
///
/// Invariants: each record has `t_curr > t_prev` and
/// `x_curr >= x_prev >= 0`; within a unit the records form a contiguous
/// chain (each record starts where the previous one ended).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AdtDataset {
    records: Vec<AdtRecord>,
}

impl AdtDataset {
    pub fn new(mut records: Vec<AdtRecord>) -> Result<Self> {
        for r in &records {
            if !(r.temp_k > 0.0) {
                return Err(Error::data(format!(
                    "unit {}: non-positive temperature {}",
                    r.unit_id, r.temp_k
                )));
            }
            if !(r.t_curr_yr > r.t_prev_yr) {
                return Err(Error::data(format!(
                    "unit {}: inspection times must increase ({} -> {})",
                    r.unit_id, r.t_prev_yr, r.t_curr_yr
                )));
            }
            if !(r.x_prev >= 0.0) || !(r.x_curr >= r.x_prev) {
                return Err(Error::data(format!(
                    "unit {}: degradation must be non-negative and non-decreasing ({} -> {})",
                    r.unit_id, r.x_prev, r.x_curr
                )));
            }
        }
        records.sort_by(|a, b| {
            (a.unit_id, a.t_prev_yr)
                .partial_cmp(&(b.unit_id, b.t_prev_yr))
                .expect("finite times")
        });
        for w in records.windows(2) {
            if w[0].unit_id == w[1].unit_id {
                if w[1].t_prev_yr != w[0].t_curr_yr || w[1].x_prev != w[0].x_curr {
                    return Err(Error::data(format!(
                        "unit {}: records do not chain at t = {}",
                        w[0].unit_id, w[0].t_curr_yr
                    )));
                }
            }
        }
        Ok(Self { records })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn records(&self) -> &[AdtRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Distinct stress temperatures, ascending.
    pub fn temperatures(&self) -> Vec<f64> {
        let mut ts: Vec<f64> = Vec::new();
        for r in &self.records {
            if !ts.iter().any(|&t| t == r.temp_k) {
                ts.push(r.temp_k);
            }
        }
        ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ts
    }

    /// Subset containing only records whose temperature satisfies `keep`
    /// (units are tested at a single temperature, so chains stay intact).
    pub fn filter_temperature(&self, keep: impl Fn(f64) -> bool) -> AdtDataset {
        AdtDataset {
            records: self
                .records
                .iter()
                .filter(|r| keep(r.temp_k))
                .cloned()
                .collect(),
        }
    }
}

/// Prior specification: Normal(0, sd) on the log-scale parameters and
/// half-Normal(scale) on the non-negative ones.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PriorSpec {
    pub ln_a_sd: f64,
    pub ln_c_sd: f64,
    pub b_scale: f64,
    pub e_a_scale: f64,
}

impl Default for PriorSpec {
    /// Diffuse defaults: N(0, 10^2) on ln_a and ln_c, half-N with variance
    /// 10^6 (scale 1000) on b and e_a.
    fn default() -> Self {
        Self {
            ln_a_sd: 10.0,
            ln_c_sd: 10.0,
            b_scale: 1000.0,
            e_a_scale: 1000.0,
        }
    }
}

impl PriorSpec {
    pub fn validate(&self) -> Result<()> {
        if [self.ln_a_sd, self.ln_c_sd, self.b_scale, self.e_a_scale]
            .iter()
            .any(|s| !(*s > 0.0))
        {
            return Err(Error::domain("prior scales must be positive".to_string()));
        }
        Ok(())
    }

    /// Log prior density at a natural-scale parameter vector; minus infinity
    /// outside the support (b <= 0 or e_a < 0).
    pub fn log_prior(&self, theta: &ThetaVec) -> f64 {
        let [ln_a, b, ln_c, e_a] = *theta;
        if !(b > 0.0) || e_a < 0.0 {
            return f64::NEG_INFINITY;
        }
        let normal = |x: f64, sd: f64| {
            -0.5 * (x / sd) * (x / sd) - sd.ln() - 0.5 * (2.0 * std::f64::consts::PI).ln()
        };
        let half_normal = |x: f64, scale: f64| normal(x, scale) + std::f64::consts::LN_2;
        normal(ln_a, self.ln_a_sd)
            + normal(ln_c, self.ln_c_sd)
            + half_normal(b, self.b_scale)
            + half_normal(e_a, self.e_a_scale)
    }
}

/// Log-likelihood of the pooled increment dataset under the Gamma process:
/// the sum over records of the Gamma increment log-density with shape
/// `alpha(t_curr) - alpha(t_prev)` and rate `beta(temp)`. Empty data gives 0;
/// parameters outside the domain give minus infinity.
pub fn log_likelihood(theta: &ThetaVec, data: &AdtDataset) -> f64 {
    let model = match theta_to_model(theta) {
        Some(m) => m,
        None => return f64::NEG_INFINITY,
    };
    let mut total = 0.0;
    for r in data.records() {
        let shape = model.effective_shape(r.t_curr_yr) - model.effective_shape(r.t_prev_yr);
        let rate = match model.rate_at_temperature(r.temp_k) {
            Ok(b) => b,
            Err(_) => return f64::NEG_INFINITY,
        };
        if !(shape > 0.0) || !shape.is_finite() || !rate.is_finite() {
            return f64::NEG_INFINITY;
        }
        let increment = (r.x_curr - r.x_prev).max(INCREMENT_FLOOR);
        total += gamma_log_pdf(increment, shape, rate);
    }
    total
}

/// Unnormalized log-posterior: log-likelihood plus log-prior.
pub fn log_posterior(theta: &ThetaVec, data: &AdtDataset, prior: &PriorSpec) -> f64 {
    let lp = prior.log_prior(theta);
    if lp == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    lp + log_likelihood(theta, data)
}

/// Retained posterior draws with convergence diagnostics.
#[derive(Debug, Clone)]
pub struct PosteriorSamples {
    /// Post-warmup draws, one vector per chain, natural scale.
    pub chains: Vec<Vec<ThetaVec>>,
    /// Warmup iterations discarded per chain.
    pub warmup: usize,
    /// Split-Rhat per parameter, computed from the retained draws only.
    pub rhat: [f64; 4],
    /// Post-warmup acceptance rate per chain.
    pub accept_rates: Vec<f64>,
}

impl PosteriorSamples {
    /// All retained draws pooled across chains.
    pub fn pooled(&self) -> Vec<ThetaVec> {
        self.chains.iter().flatten().cloned().collect()
    }

    /// Pooled draws of one parameter.
    pub fn parameter(&self, index: usize) -> Vec<f64> {
        self.chains
            .iter()
            .flatten()
            .map(|t| t[index])
            .collect()
    }

    /// Posterior mean vector.
    pub fn mean(&self) -> ThetaVec {
        let pooled = self.pooled();
        let n = pooled.len() as f64;
        let mut m = [0.0; 4];
        for t in &pooled {
            for i in 0..4 {
                m[i] += t[i] / n;
            }
        }
        m
    }

    /// Central credible interval for one parameter.
    pub fn credible_interval(&self, index: usize, mass: f64) -> (f64, f64) {
        let xs = self.parameter(index);
        let tail = (1.0 - mass) / 2.0;
        (percentile(&xs, tail), percentile(&xs, 1.0 - tail))
    }
}

/// Unit-Jacobian triangular change of sampling coordinates that breaks the
/// two near-collinear parameter pairs this posterior exhibits.
///
/// The Arrhenius pair (ln_c, e_a) only enters the likelihood through
/// `ln_c + e_a * u(T)` with u = 1/(kB T) varying little across stress
/// temperatures, and the shape pair (ln_a, b) through the increment shapes,
/// which at test-duration scale behave like `ln_a + ln(exp(b t) - 1)`. The
/// sampler therefore works on
///
/// `phi = (ln_a + ln(exp(b t_ref) - 1),  ln b,  ln_c + e_a * u_ref,  ln e_a)`
///
/// with `t_ref` the longest inspection time and `u_ref` the mean inverse
/// temperature, where the ridges become separate, nearly independent
/// coordinates. The map is triangular with unit diagonal, so the only
/// Jacobian term is from the two log transforms.
#[derive(Debug, Clone, Copy)]
struct SamplingBasis {
    t_ref: f64,
    u_ref: f64,
}

impl SamplingBasis {
    fn from_data(data: &AdtDataset) -> Self {
        let t_ref = data
            .records()
            .iter()
            .map(|r| r.t_curr_yr)
            .fold(0.0, f64::max)
            .max(1e-6);
        let us: Vec<f64> = data
            .records()
            .iter()
            .map(|r| 1.0 / (crate::degradation::BOLTZMANN_EV_PER_K * r.temp_k))
            .collect();
        let u_ref = if us.is_empty() {
            0.0
        } else {
            crate::stats::mean(&us)
        };
        Self { t_ref, u_ref }
    }

    fn to_theta(&self, phi: &[f64; 4]) -> ThetaVec {
        let b = phi[1].exp();
        let e_a = phi[3].exp();
        let ln_a = phi[0] - (self.t_ref * b).exp_m1().ln();
        let ln_c = phi[2] - e_a * self.u_ref;
        [ln_a, b, ln_c, e_a]
    }

    fn from_theta(&self, theta: &ThetaVec) -> [f64; 4] {
        let b = theta[1].max(1e-9);
        let e_a = theta[3].max(1e-9);
        [
            theta[0] + (self.t_ref * b).exp_m1().ln(),
            b.ln(),
            theta[2] + e_a * self.u_ref,
            e_a.ln(),
        ]
    }
}

/// Run `chains` adaptive random-walk Metropolis chains and collect retained
/// draws. Chains execute in parallel over disjoint seed streams; the result
/// depends only on (data, prior, options, seed).
pub fn run_mcmc(
    data: &AdtDataset,
    prior: &PriorSpec,
    opts: &McmcOptions,
    seed: u64,
) -> Result<PosteriorSamples> {
    prior.validate()?;
    opts.validate()?;
    let init = initial_guess(data);
    let basis = SamplingBasis::from_data(data);

    let results: Result<Vec<(Vec<ThetaVec>, f64)>> = (0..opts.chains)
        .into_par_iter()
        .map(|c| {
            let mut s = stream(seed, &[0x6d63, c as u64]);
            let phi0 = jitter(basis.from_theta(&init), &mut s);
            let target = |phi: &[f64; 4]| {
                let theta = basis.to_theta(phi);
                // Jacobian of the log transforms for the positive parameters.
                log_posterior(&theta, data, prior) + phi[1] + phi[3]
            };
            let run = adaptive_random_walk(&target, phi0, opts, &mut s)?;
            let draws: Vec<ThetaVec> = run.draws.iter().map(|phi| basis.to_theta(phi)).collect();
            Ok((draws, run.accept_rate))
        })
        .collect();
    let results = results?;

    let chains: Vec<Vec<ThetaVec>> = results.iter().map(|(d, _)| d.clone()).collect();
    let accept_rates: Vec<f64> = results.iter().map(|(_, a)| *a).collect();
    let mut rhat = [1.0; 4];
    if opts.chains >= 2 && opts.samples >= 4 {
        for p in 0..4 {
            let per_chain: Vec<Vec<f64>> = chains
                .iter()
                .map(|c| c.iter().map(|t| t[p]).collect())
                .collect();
            rhat[p] = split_rhat(&per_chain)?;
        }
    }
    Ok(PosteriorSamples {
        chains,
        warmup: opts.warmup,
        rhat,
        accept_rates,
    })
}

/// Split-Rhat convergence diagnostic: each chain is halved, and the ratio of
/// pooled to within-sequence variance is folded into
/// `sqrt(((n-1)/n W + B/n) / W)`. Identical constant chains return exactly 1.
pub fn split_rhat(chains: &[Vec<f64>]) -> Result<f64> {
    if chains.len() < 2 {
        return Err(Error::data("split-Rhat needs at least two chains".to_string()));
    }
    if chains.iter().any(|c| c.len() < 4) {
        return Err(Error::data(
            "split-Rhat needs at least four draws per chain".to_string(),
        ));
    }
    let half = chains.iter().map(|c| c.len()).min().unwrap() / 2;
    let mut sequences: Vec<&[f64]> = Vec::with_capacity(chains.len() * 2);
    for c in chains {
        sequences.push(&c[..half]);
        sequences.push(&c[c.len() - half..]);
    }
    let m = sequences.len() as f64;
    let n = half as f64;
    let means: Vec<f64> = sequences.iter().map(|s| crate::stats::mean(s)).collect();
    let vars: Vec<f64> = sequences
        .iter()
        .map(|s| crate::stats::sample_variance(s))
        .collect();
    let grand = crate::stats::mean(&means);
    let b = n / (m - 1.0) * means.iter().map(|x| (x - grand) * (x - grand)).sum::<f64>();
    let w = crate::stats::mean(&vars);
    if w == 0.0 {
        // Degenerate chains: identical constants are perfectly converged.
        return Ok(if b == 0.0 { 1.0 } else { f64::INFINITY });
    }
    let var_plus = (n - 1.0) / n * w + b / n;
    Ok((var_plus / w).sqrt())
}

/// Pointwise posterior-predictive band of X(t) at temperature `temp_k`.
#[derive(Debug, Clone)]
pub struct PredictiveBand {
    pub times_yr: Vec<f64>,
    pub mean: Vec<f64>,
    pub lower_2_5: Vec<f64>,
    pub upper_97_5: Vec<f64>,
}

impl PredictiveBand {
    /// Whether `x` at `t` (matching a grid time) lies inside the band.
    pub fn covers(&self, time_yr: f64, x: f64) -> Option<bool> {
        let k = self
            .times_yr
            .iter()
            .position(|&t| (t - time_yr).abs() < 1e-12)?;
        Some(x >= self.lower_2_5[k] && x <= self.upper_97_5[k])
    }
}

/// Simulate one Gamma path per retained draw on `times_yr` (strictly
/// increasing, starting after 0) and report the pointwise mean and central
/// 95% interval. Both parameter and process uncertainty are in the band.
pub fn posterior_predictive(
    samples: &PosteriorSamples,
    temp_k: f64,
    times_yr: &[f64],
    seed: u64,
) -> Result<PredictiveBand> {
    let pooled = samples.pooled();
    if pooled.is_empty() {
        return Err(Error::data("no posterior draws".to_string()));
    }
    if times_yr.is_empty() || times_yr[0] < 0.0 || times_yr.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain(
            "predictive grid must be non-empty and strictly increasing".to_string(),
        ));
    }
    let n = pooled.len();
    let k = times_yr.len();
    let mut values = vec![vec![0.0f64; n]; k];
    for (l, theta) in pooled.iter().enumerate() {
        let model = theta_to_model(theta)
            .ok_or_else(|| Error::data("invalid draw in posterior".to_string()))?;
        let rate = model.rate_at_temperature(temp_k)?;
        let mut s = stream(seed, &[0x7070, l as u64]);
        let mut x = 0.0;
        let mut prev_t = 0.0;
        for (i, &t) in times_yr.iter().enumerate() {
            let d_shape = model.effective_shape(t) - model.effective_shape(prev_t);
            if d_shape > 0.0 {
                let dist = GammaDist::new(d_shape, 1.0 / rate)
                    .map_err(|e| Error::numerical(format!("gamma increment: {e}")))?;
                x += dist.sample(&mut s);
            }
            values[i][l] = x;
            prev_t = t;
        }
    }
    let mut mean = Vec::with_capacity(k);
    let mut lower = Vec::with_capacity(k);
    let mut upper = Vec::with_capacity(k);
    for row in &values {
        mean.push(crate::stats::mean(row));
        lower.push(percentile(row, 0.025));
        upper.push(percentile(row, 0.975));
    }
    Ok(PredictiveBand {
        times_yr: times_yr.to_vec(),
        mean,
        lower_2_5: lower,
        upper_97_5: upper,
    })
}

/// One virtual-luminaire specification from the two-stage uncertainty
/// propagation: a posterior draw plus a process-noise replicate index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathSpec {
    pub theta: ThetaVec,
    pub draw_index: usize,
    pub replicate: usize,
}

/// Two-stage draws: `n_path` distinct posterior draws (taken with an even
/// stride through the pooled retained draws), each paired with `n_ps`
/// process replicates, giving `n_path * n_ps` path specifications.
pub fn two_stage_draws(
    samples: &PosteriorSamples,
    n_path: usize,
    n_ps: usize,
) -> Result<Vec<PathSpec>> {
    let pooled = samples.pooled();
    if n_path == 0 || n_ps == 0 {
        return Err(Error::domain("n_path and n_ps must be positive".to_string()));
    }
    if n_path > pooled.len() {
        return Err(Error::domain(format!(
            "n_path = {n_path} exceeds {} retained draws",
            pooled.len()
        )));
    }
    let mut specs = Vec::with_capacity(n_path * n_ps);
    for l in 0..n_path {
        let idx = l * pooled.len() / n_path;
        for m in 0..n_ps {
            specs.push(PathSpec {
                theta: pooled[idx],
                draw_index: idx,
                replicate: m,
            });
        }
    }
    Ok(specs)
}

/// Synthesize an LM-80-shaped dataset: `units_per_temp` units at each
/// temperature, inspected every `step_hours` up to `total_hours`, with
/// increments drawn from the Gamma process under `true_theta`.
pub fn synth_lm80(
    true_theta: &GammaDegradationModel,
    temps_k: &[f64],
    units_per_temp: usize,
    step_hours: f64,
    total_hours: f64,
    seed: u64,
) -> Result<AdtDataset> {
    if !(step_hours > 0.0) || !(total_hours >= step_hours) && total_hours != 0.0 {
        return Err(Error::domain(
            "inspection step must be positive and not exceed the total".to_string(),
        ));
    }
    let inspections = (total_hours / step_hours).floor() as usize;
    let mut records = Vec::new();
    let mut unit_id = 0u32;
    for (ti, &temp) in temps_k.iter().enumerate() {
        let rate = true_theta.rate_at_temperature(temp)?;
        for u in 0..units_per_temp {
            let mut s = stream(seed, &[0x736e, ti as u64, u as u64]);
            let mut x = 0.0;
            let mut t_prev = 0.0;
            for k in 1..=inspections {
                let t_curr = k as f64 * step_hours / HOURS_PER_YEAR;
                let d_shape =
                    true_theta.effective_shape(t_curr) - true_theta.effective_shape(t_prev);
                let inc = if d_shape > 0.0 {
                    GammaDist::new(d_shape, 1.0 / rate)
                        .map_err(|e| Error::numerical(format!("gamma increment: {e}")))?
                        .sample(&mut s)
                } else {
                    0.0
                };
                records.push(AdtRecord {
                    unit_id,
                    temp_k: temp,
                    t_prev_yr: t_prev,
                    t_curr_yr: t_curr,
                    x_prev: x,
                    x_curr: x + inc,
                });
                x += inc;
                t_prev = t_curr;
            }
            unit_id += 1;
        }
    }
    AdtDataset::new(records)
}

/// Moment-based starting point for the sampler, on the natural scale.
///
/// Per temperature, the mean and variance of per-unit total degradation give
/// a rate estimate (mean/variance) and a total-shape estimate; rates are
/// regressed on inverse temperature for the Arrhenius pair, and the shape
/// amplitude follows with a unit growth-rate guess. Falls back to a generic
/// point when the data are too thin.
fn initial_guess(data: &AdtDataset) -> ThetaVec {
    let fallback = [0.0, 0.5, 0.0, 0.05];
    if data.is_empty() {
        return fallback;
    }
    let temps = data.temperatures();
    let mut ln_rates = Vec::new();
    let mut inv_temps = Vec::new();
    let mut shape_totals = Vec::new();
    let mut t_total = 0.0f64;
    for &temp in &temps {
        let sub = data.filter_temperature(|t| t == temp);
        let mut by_unit: std::collections::BTreeMap<u32, (f64, f64)> =
            std::collections::BTreeMap::new();
        for r in sub.records() {
            let e = by_unit.entry(r.unit_id).or_insert((0.0, 0.0));
            e.0 += r.x_curr - r.x_prev;
            e.1 = e.1.max(r.t_curr_yr);
        }
        let sums: Vec<f64> = by_unit.values().map(|&(s, _)| s).collect();
        let t_max = by_unit.values().map(|&(_, t)| t).fold(0.0, f64::max);
        t_total = t_total.max(t_max);
        if sums.len() < 2 {
            continue;
        }
        let m = crate::stats::mean(&sums);
        let v = crate::stats::sample_variance(&sums);
        if m <= 0.0 || v <= 0.0 {
            continue;
        }
        let rate = m / v;
        ln_rates.push(rate.ln());
        inv_temps.push(1.0 / (crate::degradation::BOLTZMANN_EV_PER_K * temp));
        shape_totals.push(m * rate);
    }
    if ln_rates.is_empty() || t_total <= 0.0 {
        return fallback;
    }
    let (ln_c, e_a) = if ln_rates.len() >= 2 {
        // Least squares of ln(rate) on 1/(kB T).
        let mx = crate::stats::mean(&inv_temps);
        let my = crate::stats::mean(&ln_rates);
        let sxx: f64 = inv_temps.iter().map(|x| (x - mx) * (x - mx)).sum();
        let sxy: f64 = inv_temps
            .iter()
            .zip(&ln_rates)
            .map(|(x, y)| (x - mx) * (y - my))
            .sum();
        let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
        let slope = slope.max(1e-4);
        (my - slope * mx, slope)
    } else {
        (ln_rates[0] - 0.05 * inv_temps[0], 0.05)
    };
    let b0 = 1.0f64;
    let denom = (b0 * t_total).exp() - 1.0;
    let amp = crate::stats::mean(&shape_totals) / denom;
    if !amp.is_finite() || amp <= 0.0 || !ln_c.is_finite() {
        return fallback;
    }
    [amp.ln(), b0, ln_c, e_a]
}

fn jitter(mut phi: [f64; 4], s: &mut Stream) -> [f64; 4] {
    use rand_distr::StandardNormal;
    for p in phi.iter_mut() {
        let z: f64 = StandardNormal.sample(s);
        *p += 0.2 * z;
    }
    phi
}
