//! Adaptive random-walk Metropolis sampler on a 4-dimensional transformed
//! parameter space.
//!
//! Proposals are multivariate normal steps `x + lambda * L z`, where `L` is
//! the Cholesky factor of the running chain covariance (per-parameter scales
//! plus their cross-correlations) and the global step size `lambda` follows a
//! Robbins-Monro recursion toward the target acceptance rate. Adaptation
//! runs during warmup only; both `L` and `lambda` are frozen afterwards so
//! the retained draws come from a fixed Markov kernel.

use crate::error::{Error, Result};
use crate::rng::Stream;
use nalgebra::{Cholesky, Matrix4, Vector4};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

/// Sampler settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McmcOptions {
    pub chains: usize,
    pub warmup: usize,
    pub samples: usize,
    /// Robbins-Monro acceptance target during warmup.
    pub target_accept: f64,
    /// Initial per-parameter proposal scale.
    pub initial_scale: f64,
    /// Disable to freeze the kernel at its initial settings.
    pub adapt: bool,
}

impl Default for McmcOptions {
    /// Four chains of 2000 warmup + 2000 retained draws.
    fn default() -> Self {
        Self {
            chains: 4,
            warmup: 2000,
            samples: 2000,
            target_accept: 0.3,
            initial_scale: 0.1,
            adapt: true,
        }
    }
}

impl McmcOptions {
    pub fn validate(&self) -> Result<()> {
        if self.chains == 0 || self.samples == 0 {
            return Err(Error::domain(
                "chains and samples must be positive".to_string(),
            ));
        }
        if !(self.target_accept > 0.0 && self.target_accept < 1.0) {
            return Err(Error::domain("target acceptance must be in (0,1)".to_string()));
        }
        if !(self.initial_scale >= 0.0) {
            return Err(Error::domain("initial scale must be >= 0".to_string()));
        }
        Ok(())
    }
}

/// Output of one chain.
pub struct ChainRun {
    /// Post-warmup draws in the transformed space.
    pub draws: Vec<[f64; 4]>,
    /// Acceptance rate over the post-warmup phase.
    pub accept_rate: f64,
}

/// Metropolis log acceptance probability for a symmetric proposal:
/// `min(0, log_target(new) - log_target(old))`.
pub fn metropolis_log_accept_prob(log_new: f64, log_old: f64) -> f64 {
    if log_new >= log_old {
        0.0
    } else {
        log_new - log_old
    }
}

/// Running mean/covariance accumulator (Welford).
struct Moments {
    n: f64,
    mean: Vector4<f64>,
    m2: Matrix4<f64>,
}

impl Moments {
    fn new() -> Self {
        Self {
            n: 0.0,
            mean: Vector4::zeros(),
            m2: Matrix4::zeros(),
        }
    }

    fn push(&mut self, x: &Vector4<f64>) {
        self.n += 1.0;
        let delta = x - self.mean;
        self.mean += delta / self.n;
        let delta2 = x - self.mean;
        self.m2 += delta * delta2.transpose();
    }

    fn covariance(&self) -> Option<Matrix4<f64>> {
        if self.n < 2.0 {
            return None;
        }
        Some(self.m2 / (self.n - 1.0))
    }
}

/// Lower Cholesky factor of the proposal covariance; a zero covariance maps
/// to a zero factor (degenerate proposal that never moves), and indefinite
/// running estimates get a growing diagonal jitter.
fn proposal_factor(cov: &Matrix4<f64>) -> Matrix4<f64> {
    if cov.iter().all(|&v| v == 0.0) {
        return Matrix4::zeros();
    }
    let mut jitter = 1e-12;
    loop {
        let regularized = cov + Matrix4::identity() * jitter;
        if let Some(c) = Cholesky::new(regularized) {
            return c.l();
        }
        jitter *= 10.0;
        if jitter > 1e6 {
            return Matrix4::identity();
        }
    }
}

/// Run one adaptive random-walk Metropolis chain against `log_target`,
/// starting from `init`, drawing randomness from `stream`.
///
/// Fails if the starting point has zero density or if every warmup proposal
/// is rejected (adaptation failure), reporting the stuck state.
pub fn adaptive_random_walk<F>(
    log_target: &F,
    init: [f64; 4],
    opts: &McmcOptions,
    stream: &mut Stream,
) -> Result<ChainRun>
where
    F: Fn(&[f64; 4]) -> f64,
{
    opts.validate()?;
    let mut x = Vector4::from_column_slice(&init);
    let mut log_px = log_target(&init);
    if !log_px.is_finite() {
        return Err(Error::numerical(format!(
            "sampler started at zero-density point {init:?} (log target {log_px})"
        )));
    }

    // 2.38 / sqrt(d) is the classic random-walk step factor.
    let mut lambda: f64 = 2.38 / 2.0;
    let base_cov = Matrix4::identity() * (opts.initial_scale * opts.initial_scale);
    let mut factor = proposal_factor(&base_cov);
    let mut moments = Moments::new();
    let mut warmup_accepts = 0usize;

    let total = opts.warmup + opts.samples;
    let mut draws = Vec::with_capacity(opts.samples);
    let mut post_accepts = 0usize;

    for it in 0..total {
        let in_warmup = it < opts.warmup;
        let mut z = Vector4::zeros();
        for v in z.iter_mut() {
            *v = StandardNormal.sample(stream);
        }
        let proposal = &x + factor * z * lambda;
        let prop_arr = [proposal[0], proposal[1], proposal[2], proposal[3]];
        let log_pp = log_target(&prop_arr);
        let log_alpha = metropolis_log_accept_prob(log_pp, log_px);
        let u: f64 = stream.gen();
        let accepted = u.ln() < log_alpha;
        if accepted {
            x = proposal;
            log_px = log_pp;
            if in_warmup {
                warmup_accepts += 1;
            } else {
                post_accepts += 1;
            }
        }

        if in_warmup && opts.adapt {
            // Robbins-Monro on the global step size.
            let gamma = (it as f64 + 1.0).powf(-0.6).min(0.5);
            let alpha = log_alpha.exp().min(1.0);
            lambda = (lambda.ln() + gamma * (alpha - opts.target_accept)).exp();
            moments.push(&x);
            // Refresh the proposal shape periodically once the running
            // covariance has something to say.
            if it >= 100 && it % 50 == 0 {
                if let Some(cov) = moments.covariance() {
                    factor = proposal_factor(&cov);
                }
            }
        }

        if !in_warmup {
            draws.push([x[0], x[1], x[2], x[3]]);
        }
    }

    if opts.warmup > 0 && opts.adapt && warmup_accepts == 0 && opts.initial_scale > 0.0 {
        return Err(Error::numerical(format!(
            "all {} warmup proposals rejected; chain stuck at {:?} (log target {log_px:.3}, \
             final step scale {lambda:.3e})",
            opts.warmup,
            [x[0], x[1], x[2], x[3]],
        )));
    }

    Ok(ChainRun {
        accept_rate: post_accepts as f64 / opts.samples as f64,
        draws,
    })
}
