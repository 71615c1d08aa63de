//! Stochastic degradation modeling, maintenance simulation, and policy
//! optimization for large LED lighting fleets.
//!
//! The crate covers the full pipeline:
//!
//! 1. [`degradation`] — Gamma-process package degradation with an Arrhenius
//!    temperature link, Weibull driver lifetimes, and the competing-failure
//!    luminaire state.
//! 2. [`calibration`] — Bayesian inference of the degradation parameters from
//!    multi-temperature accelerated-test data, with convergence diagnostics
//!    and uncertainty-propagation draws.
//! 3. [`surrogate`] — an affine map from luminaire output scalings to
//!    working-plane illuminance, trained on scrambled-Sobol state samples.
//! 4. [`metrics`] — static lighting indices and the long-run deficiency
//!    ratio.
//! 5. [`simulator`] — discrete-event simulation of PM/CM/OM maintenance over
//!    multi-decade horizons.
//! 6. [`optimizer`] — grid sweep, Pareto filtering, and Welch-test pruning of
//!    candidate policies.
//!
//! The `config` and `fileio` modules provide the file formats and run
//! configuration used by the companion CLI.

pub mod calibration;
pub mod config;
pub mod degradation;
pub mod error;
pub mod fileio;
pub mod metrics;
pub mod optimizer;
pub mod pipeline;
pub mod rng;
pub mod simulator;
pub mod sobol;
pub mod special;
pub mod stats;
pub mod surrogate;

pub use error::{Error, Result};
