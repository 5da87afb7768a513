//! Simulation and matched-filter retrodiction of multi-mode optomechanical
//! homodyne measurements.
//!
//! A set of harmonic oscillators is dispersively coupled to a resonantly
//! driven optical cavity, and the reflected phase quadrature is recorded with
//! a homodyne detector. From the recorded transient, linear temporal filters
//! retrodict the oscillators' quadratures at the start of the record, and
//! ensembles of repeated records let the initial Gaussian state covariance be
//! inferred once the noise added by shot noise, thermal diffusion, and
//! measurement backaction is subtracted.
//!
//! The crate is organized around the measurement chain:
//!
//! - [`model`] — physical parameters, derived quantities, and validation.
//! - [`gaussian`] — Gaussian states over the `2N` oscillator quadratures:
//!   thermal, squeezed, and two-mode squeezed constructors plus phase-space
//!   sampling.
//! - [`sim`] — semi-classical stochastic integration of the oscillator
//!   trajectories and synthesis of discretely sampled homodyne records.
//! - [`psd`] — Welch spectral estimation of record ensembles, normalized to
//!   the shot-noise floor.
//! - [`kernels`] — closed-form two-time diffusion correlation kernels.
//! - [`filters`] — response functions, the OLS / exponential / GLS / averaged
//!   filter families, the normalization matrix `J`, and estimate application.
//! - [`noise`] — added-noise covariances (shot, thermal, backaction), state
//!   covariance inference with Wishart uncertainties, the mean-square-signal
//!   check, and second-moment recovery under inhomogeneous broadening.
//! - [`sweep`] — parameter sweeps for single-oscillator and two-mode
//!   imprecision limits.
//! - [`records`] — on-disk containers for record ensembles.
//!
//! Conventions used throughout: `hbar = 1`, `[X, P] = i`, vacuum variance
//! `1/2` per quadrature; angular frequencies in rad/s internally (file
//! formats accept Hz and convert on load); quadratures ordered
//! `(X_1, P_1, X_2, P_2, ...)`.

pub mod error;
pub mod filters;
pub mod gaussian;
pub mod kernels;
pub mod model;
pub mod noise;
pub mod psd;
pub mod records;
pub mod sim;
pub mod streams;
pub mod sweep;

pub use error::Error;
pub use filters::{FilterBank, FilterFamily, GlsGrid};
pub use gaussian::GaussianState;
pub use model::{CavityParams, OscillatorParams, SamplingGrid, System, SystemConfig};
pub use noise::{CovarianceEstimate, NoiseCovarianceSet};
pub use sim::{HomodyneRecord, ShotOutcome, TrajectorySet};

/// Convenience result alias for fallible crate operations.
pub type Result<T> = std::result::Result<T, Error>;
