//! Semi-classical stochastic simulation of the measured oscillators and
//! synthesis of discretely sampled homodyne records.
//!
//! Each oscillator's quadratures follow the linear stochastic system
//!
//! ```text
//! dX = (-Gamma/2 X + w P) dt + sqrt(Gamma) dW_X
//! dP = (-Gamma/2 P - w X) dt + sqrt(Gamma) dW_P - sqrt(2 C Gamma) dW_BA
//! ```
//!
//! with symmetrized-vacuum noise intensities: the thermal quadrature drives
//! carry spectral density `nu + 1/2` each (plus any extra diffusion), and the
//! backaction drive `dW_BA` — one process shared by every oscillator — the
//! vacuum amplitude-quadrature density `1/2`, kicking only the momentum-like
//! quadrature. The deterministic part advances by the exact rotation-decay
//! propagator `exp(-Gamma dt / 2) R(w dt)` per step, so only the noise
//! accumulation is discretized (Euler-Maruyama increments).
//!
//! The emitted record is
//! `S(t_n) = sqrt(2) sum_i g_eff_i X~_i(t_n) + sqrt(P_SN fs) z_n`, where
//! `X~_i` is the measured (sideband-phase-rotated) displacement and `z_n` is
//! i.i.d. standard normal shot noise, independent of the backaction stream.
//! Every stochastic input draws from its own per-shot stream derived from the
//! master seed (see [`crate::streams`]), so ensembles are reproducible and
//! shots embarrassingly parallel.

use nalgebra::DVector;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::gaussian::GaussianState;
use crate::model::{SamplingGrid, System};
use crate::streams::{stream, Purpose};
use crate::Result;

/// Per-oscillator quadrature time series on the sampling grid.
#[derive(Debug, Clone)]
pub struct TrajectorySet {
    pub grid: SamplingGrid,
    /// `quads[i][n] = (X_i(t_n), P_i(t_n))`.
    pub quads: Vec<Vec<[f64; 2]>>,
}

/// One synthesized homodyne record plus the randomness bookkeeping that
/// produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomodyneRecord {
    /// Scalar signal samples `S(t_n)`.
    pub samples: Vec<f64>,
    /// Master seed of the ensemble this shot belongs to.
    pub master_seed: u64,
    /// Shot index within the ensemble.
    pub shot: u64,
    /// Oscillator frequencies actually used this shot (rad/s).
    pub omega_realized: Vec<f64>,
}

/// Record plus the ground-truth initial phase-space point, retained for
/// validation of estimates.
#[derive(Debug, Clone)]
pub struct ShotOutcome {
    pub record: HomodyneRecord,
    pub initial: DVector<f64>,
}

/// Draw the per-shot oscillator frequencies, `w_i ~ Normal(w_i, sigma_i^2)`
/// independently. Draws are rejected beyond six sigma so the realized
/// frequency always satisfies the record's sanity invariant; `sigma_i = 0`
/// returns the nominal frequency exactly.
pub fn sample_frequencies<R: Rng + ?Sized>(sys: &System, rng: &mut R) -> Vec<f64> {
    sys.config
        .oscillators
        .iter()
        .map(|o| {
            if o.sigma == 0.0 {
                o.omega
            } else {
                loop {
                    let draw: f64 = rng.sample(StandardNormal);
                    if draw.abs() <= 6.0 {
                        break o.omega + o.sigma * draw;
                    }
                }
            }
        })
        .collect()
}

/// Integrate the stochastic trajectories of all oscillators from a given
/// initial phase-space point, with explicitly provided noise streams.
///
/// `thermal` must hold one stream per oscillator; `backaction` is the single
/// shared stream. The grid's step guard was enforced at validation.
pub fn simulate_trajectory(
    sys: &System,
    initial: &DVector<f64>,
    omega_realized: &[f64],
    thermal: &mut [ChaCha8Rng],
    backaction: &mut ChaCha8Rng,
) -> Result<TrajectorySet> {
    let n_osc = sys.n_osc();
    if initial.len() != 2 * n_osc || omega_realized.len() != n_osc || thermal.len() != n_osc {
        return Err(Error::Mismatch(
            "initial point / frequency / stream counts must match the oscillator count".into(),
        ));
    }
    let grid = sys.grid().clone();
    let nt = grid.nt;
    let dt = grid.dt();

    // Per-oscillator step constants. Noise increments are propagated by half
    // a step (midpoint timing), which matches the continuous diffusion
    // kernels to second order in dt.
    let decay: Vec<f64> = sys
        .config
        .oscillators
        .iter()
        .map(|o| (-0.5 * o.gamma * dt).exp())
        .collect();
    let half_decay: Vec<f64> = sys
        .config
        .oscillators
        .iter()
        .map(|o| (-0.25 * o.gamma * dt).exp())
        .collect();
    let (cos_wdt, sin_wdt): (Vec<f64>, Vec<f64>) = omega_realized
        .iter()
        .map(|w| ((w * dt).cos(), (w * dt).sin()))
        .unzip();
    let (cos_half, sin_half): (Vec<f64>, Vec<f64>) = omega_realized
        .iter()
        .map(|w| ((0.5 * w * dt).cos(), (0.5 * w * dt).sin()))
        .unzip();
    let thermal_step: Vec<f64> = sys
        .derived
        .iter()
        .map(|d| (d.thermal_intensity * dt).sqrt())
        .collect();
    let ba_kick: Vec<f64> = sys
        .derived
        .iter()
        .map(|d| (2.0 * d.backaction_rate).sqrt())
        .collect();

    let mut quads: Vec<Vec<[f64; 2]>> = (0..n_osc).map(|_| Vec::with_capacity(nt)).collect();
    let mut x: Vec<f64> = (0..n_osc).map(|i| initial[2 * i]).collect();
    let mut p: Vec<f64> = (0..n_osc).map(|i| initial[2 * i + 1]).collect();

    for n in 0..nt {
        for i in 0..n_osc {
            quads[i].push([x[i], p[i]]);
        }
        if n + 1 == nt {
            break;
        }
        // shared backaction increment, density 1/2
        let w_ba: f64 = {
            let z: f64 = backaction.sample(StandardNormal);
            z * (0.5 * dt).sqrt()
        };
        for i in 0..n_osc {
            let (c, s) = (cos_wdt[i], sin_wdt[i]);
            let xr = decay[i] * (c * x[i] + s * p[i]);
            let pr = decay[i] * (-s * x[i] + c * p[i]);
            let zx: f64 = thermal[i].sample(StandardNormal);
            let zp: f64 = thermal[i].sample(StandardNormal);
            let kx = thermal_step[i] * zx;
            let kp = thermal_step[i] * zp - ba_kick[i] * w_ba;
            let (ch, sh) = (cos_half[i], sin_half[i]);
            x[i] = xr + half_decay[i] * (ch * kx + sh * kp);
            p[i] = pr + half_decay[i] * (-sh * kx + ch * kp);
        }
    }

    Ok(TrajectorySet { grid, quads })
}

/// Project the trajectories onto the homodyne signal and add detection shot
/// noise.
pub fn synthesize_signal<R: Rng + ?Sized>(
    sys: &System,
    traj: &TrajectorySet,
    omega_realized: &[f64],
    shot_rng: &mut R,
    master_seed: u64,
    shot: u64,
) -> Result<HomodyneRecord> {
    if traj.grid != *sys.grid() {
        return Err(Error::Mismatch("trajectory grid differs from config grid".into()));
    }
    let nt = traj.grid.nt;
    let shot_amp = (sys.psn * traj.grid.fs).sqrt();
    let mut samples = vec![0.0; nt];
    for (i, d) in sys.derived.iter().enumerate() {
        let scale = 2.0_f64.sqrt() * d.g_eff;
        let (cph, sph) = (d.phi.cos(), d.phi.sin());
        let q = &traj.quads[i];
        for (n, sample) in samples.iter_mut().enumerate() {
            // measured displacement of the phase-delayed oscillator
            *sample += scale * (cph * q[n][0] - sph * q[n][1]);
        }
    }
    for sample in samples.iter_mut() {
        let z: f64 = shot_rng.sample(StandardNormal);
        *sample += shot_amp * z;
    }
    for (i, &w) in omega_realized.iter().enumerate() {
        let o = &sys.config.oscillators[i];
        if (w - o.omega).abs() > 6.0 * o.sigma + 1e-12 * o.omega.abs() {
            return Err(Error::Mismatch(format!(
                "realized frequency of oscillator {i} outside six sigma"
            )));
        }
    }
    Ok(HomodyneRecord {
        samples,
        master_seed,
        shot,
        omega_realized: omega_realized.to_vec(),
    })
}

/// Run one complete shot: frequency draw, initial-state sample, trajectory,
/// record.
pub fn run_shot(sys: &System, state: &GaussianState, master_seed: u64, shot: u64) -> Result<ShotOutcome> {
    if state.n_modes() != sys.n_osc() {
        return Err(Error::Mismatch(format!(
            "state has {} modes, system {}",
            state.n_modes(),
            sys.n_osc()
        )));
    }
    let omega = sample_frequencies(sys, &mut stream(master_seed, shot, Purpose::Frequencies));
    let initial = state.sample(&mut stream(master_seed, shot, Purpose::InitialState))?;
    let mut thermal: Vec<ChaCha8Rng> = (0..sys.n_osc())
        .map(|i| stream(master_seed, shot, Purpose::Thermal(i)))
        .collect();
    let mut ba = stream(master_seed, shot, Purpose::Backaction);
    let traj = simulate_trajectory(sys, &initial, &omega, &mut thermal, &mut ba)?;
    let record = synthesize_signal(
        sys,
        &traj,
        &omega,
        &mut stream(master_seed, shot, Purpose::ShotNoise),
        master_seed,
        shot,
    )?;
    Ok(ShotOutcome { record, initial })
}

/// Simulate an ensemble of `n_s >= 2` independent shots of identically
/// prepared states. Deterministic given the master seed; shots run in
/// parallel and are merged by index.
pub fn run_ensemble(
    sys: &System,
    state: &GaussianState,
    n_s: usize,
    master_seed: u64,
) -> Result<Vec<ShotOutcome>> {
    if n_s < 2 {
        return Err(Error::InsufficientData(format!(
            "ensemble needs at least 2 shots, got {n_s}"
        )));
    }
    (0..n_s as u64)
        .into_par_iter()
        .map(|shot| run_shot(sys, state, master_seed, shot))
        .collect()
}
