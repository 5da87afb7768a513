//! Added-noise covariances of filter estimates, state-covariance inference
//! with Wishart uncertainties, the mean-square-signal consistency check, and
//! second-moment recovery under inhomogeneous broadening.
//!
//! The covariance of an ensemble of filter estimates decomposes as
//! `Sigma = cov[Q] + T + B + M`: the initial-state covariance plus additive
//! bias matrices from thermal diffusion, measurement backaction, and shot
//! noise, all in phonon-occupation units. `T` and `B` are double-time
//! integrals of the filter rows against the closed-form diffusion kernels;
//! the kernels' product form makes those integrals separable around
//! `min(t, t')`, so each one reduces to prefix sums along the grid — an
//! exact `O(nt)` evaluation of the `O(nt^2)` double sum.
//!
//! Subtracting `T + B + M` from the sample covariance of an estimate
//! ensemble retrodicts the initial state covariance; its uncertainty follows
//! from the Wishart distribution of the sample covariance.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::filters::FilterBank;
use crate::gaussian::{symplectic_eigenvalues, GaussianState};
use crate::kernels::{
    self, broadened_sine_correlation, growth, s_co, s_counter, OscMode,
};
use crate::model::System;
use crate::sim::HomodyneRecord;
use crate::streams::{stream, Purpose};
use crate::Result;

pub use crate::kernels::{
    broadened_response_correlation, response_correlation, response_correlation_quadrature,
    sine_correlation,
};

/// The three added-noise covariance matrices of one filter bank, in
/// phonon-occupation units.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseCovarianceSet {
    /// Measurement shot noise.
    pub m: DMatrix<f64>,
    /// Thermal-bath (and extra-diffusion) noise.
    pub t: DMatrix<f64>,
    /// Measurement backaction.
    pub b: DMatrix<f64>,
    /// `true` for the primed (unnormalized-filter) variant used with
    /// broadened ensembles.
    pub primed: bool,
}

impl NoiseCovarianceSet {
    /// `T + B + M`.
    pub fn total(&self) -> DMatrix<f64> {
        &self.t + &self.b + &self.m
    }

    /// Total added occupation of oscillator `i`: half the trace of its
    /// diagonal block of `T + B + M`.
    pub fn added_occupation(&self, i: usize) -> f64 {
        let tot = self.total();
        0.5 * (tot[(2 * i, 2 * i)] + tot[(2 * i + 1, 2 * i + 1)])
    }

    /// Magnitude of the cross-estimate error correlation
    /// `<dA_i^dag dA_j> = (1/2) (1, -i) [T+B+M]_{ij} (1, i)^T`.
    pub fn cross_error(&self, i: usize, j: usize) -> f64 {
        let tot = self.total();
        let b00 = tot[(2 * i, 2 * j)];
        let b01 = tot[(2 * i, 2 * j + 1)];
        let b10 = tot[(2 * i + 1, 2 * j)];
        let b11 = tot[(2 * i + 1, 2 * j + 1)];
        0.5 * Complex64::new(b00 + b11, b01 - b10).norm()
    }

    /// Serialize with full matrices.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&MatrixSetDoc {
            m: dense_to_rows(&self.m),
            t: dense_to_rows(&self.t),
            b: dense_to_rows(&self.b),
            primed: self.primed,
        })
        .expect("noise set serialization cannot fail")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixSetDoc {
    m: Vec<Vec<f64>>,
    t: Vec<Vec<f64>>,
    b: Vec<Vec<f64>>,
    primed: bool,
}

fn dense_to_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

// ---------------------------------------------------------------------------
// Double-time quadrature via prefix sums
// ---------------------------------------------------------------------------

/// One separable piece of a diffusion kernel:
/// `K(t, t') = Re[ phase * a(t) * b(t') * (exp(s min(t,t')) - 1)/s ]`.
struct Piece {
    a: Vec<Complex64>,
    b: Vec<Complex64>,
    h: Vec<Complex64>,
    phase: Complex64,
    coef: f64,
}

impl Piece {
    fn counter(k: &OscMode, l: &OscMode, times: &[f64], coef: f64) -> Self {
        let s = s_counter(k, l);
        Piece {
            a: times.iter().map(|&t| k.rho(t).conj()).collect(),
            b: times.iter().map(|&t| l.rho(t)).collect(),
            h: times.iter().map(|&t| growth(s, t)).collect(),
            phase: Complex64::from_polar(1.0, l.phi - k.phi),
            coef,
        }
    }

    fn corotating(k: &OscMode, l: &OscMode, times: &[f64], coef: f64) -> Self {
        let s = s_co(k, l);
        Piece {
            a: times.iter().map(|&t| k.rho(t)).collect(),
            b: times.iter().map(|&t| l.rho(t)).collect(),
            h: times.iter().map(|&t| growth(s, t)).collect(),
            phase: Complex64::from_polar(1.0, k.phi + l.phi),
            coef,
        }
    }
}

/// Exact double sum `dt^2 sum_{n,m} w_n w_m^T K(t_n, t_m)` for a sum of
/// separable kernel pieces, by splitting at `min(t_n, t_m)` and carrying
/// complex prefix and suffix sums along the grid.
fn double_time_gram(weights: &DMatrix<f64>, dt: f64, pieces: &[Piece]) -> DMatrix<f64> {
    let nq = weights.nrows();
    let nt = weights.ncols();
    let mut total = DMatrix::zeros(nq, nq);
    for piece in pieces {
        let mut gc = vec![Complex64::new(0.0, 0.0); nq * nq];
        // forward pass: m <= n with h(t_m)
        let mut acc = vec![Complex64::new(0.0, 0.0); nq];
        for n in 0..nt {
            let bh = piece.b[n] * piece.h[n];
            for (q, slot) in acc.iter_mut().enumerate() {
                *slot += bh * weights[(q, n)];
            }
            let an = piece.a[n];
            for i in 0..nq {
                let ai = an * weights[(i, n)];
                for (j, a) in acc.iter().enumerate() {
                    gc[i * nq + j] += ai * a;
                }
            }
        }
        // backward pass: m > n with h(t_n)
        let mut acc2 = vec![Complex64::new(0.0, 0.0); nq];
        for n in (0..nt).rev() {
            let ah = piece.a[n] * piece.h[n];
            for i in 0..nq {
                let ai = ah * weights[(i, n)];
                for (j, a) in acc2.iter().enumerate() {
                    gc[i * nq + j] += ai * a;
                }
            }
            let bn = piece.b[n];
            for (q, slot) in acc2.iter_mut().enumerate() {
                *slot += bn * weights[(q, n)];
            }
        }
        let scale = piece.coef * dt * dt;
        for i in 0..nq {
            for j in 0..nq {
                total[(i, j)] += scale * (piece.phase * gc[i * nq + j]).re;
            }
        }
    }
    // exact arithmetic would be symmetric; remove float round-off skew
    
    (&total + total.transpose()) * 0.5
}

fn sandwich(bank: &FilterBank, g: DMatrix<f64>, primed: bool) -> DMatrix<f64> {
    if primed {
        g
    } else {
        &bank.j_inv * g * bank.j_inv.transpose()
    }
}

/// Shot-noise covariance `M = P_SN * dt`-weighted Gram matrix of the
/// (J-normalized) filter rows.
pub fn shot_noise_cov(sys: &System, bank: &FilterBank, primed: bool) -> DMatrix<f64> {
    let w = bank.weight_matrix();
    let gram = &w * w.transpose() * (sys.psn / bank.fs);
    sandwich(bank, gram, primed)
}

/// Thermal-diffusion covariance `T`: per-oscillator double-time integrals of
/// the filter rows against the response-correlation kernel, weighted by the
/// bath intensity `Gamma (nu + 1/2) + extra_diffusion`.
pub fn thermal_cov(sys: &System, bank: &FilterBank, primed: bool) -> DMatrix<f64> {
    thermal_cov_at(sys, bank, primed, None)
}

fn thermal_cov_at(
    sys: &System,
    bank: &FilterBank,
    primed: bool,
    omegas: Option<&[f64]>,
) -> DMatrix<f64> {
    let times = sys.grid().times();
    let w = bank.weight_matrix();
    let pieces: Vec<Piece> = (0..sys.n_osc())
        .map(|k| {
            let mode = match omegas {
                Some(om) => sys.mode_at(k, om[k]),
                None => sys.mode(k),
            };
            let coef = 2.0 * sys.derived[k].g_eff.powi(2) * sys.derived[k].thermal_intensity;
            Piece::counter(&mode, &mode, &times, coef)
        })
        .collect();
    sandwich(bank, double_time_gram(&w, sys.grid().dt(), &pieces), primed)
}

/// Backaction covariance `B`: the shared amplitude-quadrature bath summed
/// over all oscillator pairs. `exact` uses the momentum-drive (sine
/// component) kernel; otherwise the rotating-wave form with half the full
/// response-correlation kernel, valid when `w_k + w_l >> Gamma_k + Gamma_l`.
pub fn backaction_cov(sys: &System, bank: &FilterBank, exact: bool, primed: bool) -> DMatrix<f64> {
    backaction_cov_at(sys, bank, exact, primed, None)
}

fn backaction_cov_at(
    sys: &System,
    bank: &FilterBank,
    exact: bool,
    primed: bool,
    omegas: Option<&[f64]>,
) -> DMatrix<f64> {
    let times = sys.grid().times();
    let w = bank.weight_matrix();
    let mut pieces = Vec::new();
    for k in 0..sys.n_osc() {
        for l in 0..sys.n_osc() {
            let coef = sys.derived[k].g_eff
                * sys.derived[l].g_eff
                * (sys.derived[k].backaction_rate * sys.derived[l].backaction_rate).sqrt();
            if coef == 0.0 {
                continue;
            }
            let mk = match omegas {
                Some(om) => sys.mode_at(k, om[k]),
                None => sys.mode(k),
            };
            let ml = match omegas {
                Some(om) => sys.mode_at(l, om[l]),
                None => sys.mode(l),
            };
            if exact {
                pieces.push(Piece::counter(&mk, &ml, &times, coef));
                pieces.push(Piece::corotating(&mk, &ml, &times, -coef));
            } else {
                pieces.push(Piece::counter(&mk, &ml, &times, coef));
            }
        }
    }
    sandwich(bank, double_time_gram(&w, sys.grid().dt(), &pieces), primed)
}

/// All three added-noise matrices for a bank (standard, J-normalized
/// variant; backaction through the exact momentum-drive kernel).
pub fn noise_covariances(sys: &System, bank: &FilterBank) -> NoiseCovarianceSet {
    NoiseCovarianceSet {
        m: shot_noise_cov(sys, bank, false),
        t: thermal_cov(sys, bank, false),
        b: backaction_cov(sys, bank, true, false),
        primed: false,
    }
}

// ---------------------------------------------------------------------------
// Sample covariance, Wishart uncertainty, and state inference
// ---------------------------------------------------------------------------

/// Sample covariance of an estimate ensemble with its element-wise Wishart
/// standard errors.
#[derive(Debug, Clone)]
pub struct CovarianceEstimate {
    pub sigma: DMatrix<f64>,
    pub mean: DVector<f64>,
    pub n_s: usize,
    pub se: DMatrix<f64>,
}

impl CovarianceEstimate {
    /// Unbiased (`n_s - 1` denominator) sample covariance of the supplied
    /// estimate vectors.
    pub fn from_samples(samples: &[DVector<f64>]) -> Result<Self> {
        let n_s = samples.len();
        if n_s < 2 {
            return Err(Error::InsufficientData(format!(
                "sample covariance needs at least 2 estimates, got {n_s}"
            )));
        }
        let dim = samples[0].len();
        let mut mean = DVector::zeros(dim);
        for s in samples {
            mean += s;
        }
        mean /= n_s as f64;
        let mut sigma = DMatrix::zeros(dim, dim);
        for s in samples {
            let d = s - &mean;
            sigma += &d * d.transpose();
        }
        sigma /= (n_s - 1) as f64;
        let se = wishart_se(&sigma, n_s);
        Ok(Self {
            sigma,
            mean,
            n_s,
            se,
        })
    }
}

/// Element-wise standard errors of a sample covariance with `n_s` samples:
/// `sqrt((Sigma_ij^2 + Sigma_ii Sigma_jj) / (n_s - 1))`.
pub fn wishart_se(sigma: &DMatrix<f64>, n_s: usize) -> DMatrix<f64> {
    let dof = (n_s - 1).max(1) as f64;
    DMatrix::from_fn(sigma.nrows(), sigma.ncols(), |i, j| {
        ((sigma[(i, j)].powi(2) + sigma[(i, i)] * sigma[(j, j)]) / dof).sqrt()
    })
}

/// Initial-state covariance retrodicted from an estimate ensemble.
#[derive(Debug, Clone)]
pub struct InferredState {
    /// `Sigma_hat - T - B - M`.
    pub cov: DMatrix<f64>,
    /// Element-wise Wishart standard errors (the subtraction is treated as
    /// exact, so they equal the sample-covariance errors).
    pub se: DMatrix<f64>,
    /// Smallest symplectic eigenvalue of the PSD part of `cov`.
    pub min_symplectic: f64,
    /// Smallest ordinary eigenvalue of `cov`; negative values already mean
    /// the inferred matrix is not a covariance.
    pub min_eigenvalue: f64,
    /// Physicality flag; violations are reported, never clipped.
    pub physical: bool,
}

/// Subtract the added-noise covariances from a sample covariance and flag
/// (without clipping) any symplectic-eigenvalue violation of the result.
pub fn infer_state_cov(
    estimate: &CovarianceEstimate,
    set: &NoiseCovarianceSet,
) -> Result<InferredState> {
    let total = set.total();
    if total.nrows() != estimate.sigma.nrows() {
        return Err(Error::Mismatch(format!(
            "noise set dimension {} vs covariance {}",
            total.nrows(),
            estimate.sigma.nrows()
        )));
    }
    let cov = &estimate.sigma - total;
    let min_symplectic = symplectic_eigenvalues(&cov)
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    let sym = (&cov + cov.transpose()) * 0.5;
    let min_eigenvalue = sym.symmetric_eigen().eigenvalues.min();
    let tol = 1e-9 * cov.trace().abs().max(1e-30);
    Ok(InferredState {
        cov,
        se: estimate.se.clone(),
        min_symplectic,
        min_eigenvalue,
        physical: min_eigenvalue >= -tol && min_symplectic >= 0.5 - 1e-9,
    })
}

// ---------------------------------------------------------------------------
// Mean-square signal
// ---------------------------------------------------------------------------

/// Model of the mean-square homodyne signal over the grid: coherent decay of
/// the initial second moments, the sampled shot-noise variance
/// `P_SN fs` (the one-sided density `2 P_SN` over the Nyquist band `fs/2`),
/// and relaxation toward the thermal-plus-backaction equilibrium.
pub fn mean_square_signal(sys: &System, state: &GaussianState) -> Vec<f64> {
    let grid = sys.grid();
    let nq = sys.n_quad();
    let second = state.cov() + state.mean() * state.mean().transpose();
    // stacked signal response g_i r_i (signal onset convention)
    let mut rows: Vec<(Vec<f64>, Vec<f64>)> = Vec::with_capacity(sys.n_osc());
    for i in 0..sys.n_osc() {
        let r = crate::filters::signal_response_rows(sys, i, sys.osc(i).sigma > 0.0);
        rows.push(r);
    }
    let modes: Vec<OscMode> = (0..sys.n_osc()).map(|k| sys.mode(k)).collect();
    let shot = sys.psn * grid.fs;
    (0..grid.nt)
        .into_par_iter()
        .map(|n| {
            let t = grid.time(n);
            let mut v = DVector::zeros(nq);
            for (i, (rc, rs)) in rows.iter().enumerate() {
                v[2 * i] = sys.derived[i].g_eff * rc[n];
                v[2 * i + 1] = sys.derived[i].g_eff * rs[n];
            }
            let coherent = 2.0 * (v.transpose() * &second * &v)[(0, 0)];
            let mut diffusion = 0.0;
            for k in 0..sys.n_osc() {
                diffusion += 2.0
                    * sys.derived[k].g_eff.powi(2)
                    * sys.derived[k].thermal_intensity
                    * kernels::broadened_response_correlation(&modes[k], &modes[k], true, t, t);
                for l in 0..sys.n_osc() {
                    let coef = 2.0
                        * sys.derived[k].g_eff
                        * sys.derived[l].g_eff
                        * (sys.derived[k].backaction_rate * sys.derived[l].backaction_rate)
                            .sqrt();
                    if coef != 0.0 {
                        diffusion += coef
                            * broadened_sine_correlation(&modes[k], &modes[l], k == l, t, t);
                    }
                }
            }
            coherent + shot + diffusion
        })
        .collect()
}

/// Per-bin empirical mean of `S^2` over an ensemble, with its standard
/// error.
pub fn mean_square_empirical(records: &[HomodyneRecord]) -> Result<(Vec<f64>, Vec<f64>)> {
    if records.len() < 2 {
        return Err(Error::InsufficientData("need at least two records".into()));
    }
    let nt = records[0].samples.len();
    let n = records.len() as f64;
    let mut mean = vec![0.0; nt];
    let mut sq = vec![0.0; nt];
    for rec in records {
        if rec.samples.len() != nt {
            return Err(Error::Mismatch("records have differing lengths".into()));
        }
        for (i, &s) in rec.samples.iter().enumerate() {
            let s2 = s * s;
            mean[i] += s2;
            sq[i] += s2 * s2;
        }
    }
    for m in mean.iter_mut() {
        *m /= n;
    }
    let se = sq
        .iter()
        .zip(mean.iter())
        .map(|(&q, &m)| ((q / n - m * m).max(0.0) / (n - 1.0)).sqrt())
        .collect();
    Ok((mean, se))
}

// ---------------------------------------------------------------------------
// Broadened ensembles: second-moment recovery
// ---------------------------------------------------------------------------

/// Result of inverting the broadened second-moment relation
/// `<q_i q_j> = sum_kl <J_ik J_jl> <Q_k Q_l> + T'_ij + B'_ij + M'_ij`.
#[derive(Debug, Clone)]
pub struct BroadenedInference {
    /// Recovered initial-state second moments `<Q_k Q_l>`.
    pub q_moments: DMatrix<f64>,
    /// Propagated element-wise standard errors.
    pub q_se: DMatrix<f64>,
    /// The primed (unnormalized) noise matrices, averaged over frequency
    /// draws.
    pub primed: NoiseCovarianceSet,
    /// Smallest singular value of the weighted moment-transfer operator.
    pub smallest_sv: f64,
}

/// Options for the broadened inversion.
#[derive(Debug, Clone)]
pub struct BroadenedOptions {
    /// Monte Carlo frequency draws for the expectation values.
    pub n_omega: usize,
    /// Internal averaging seed (fixed by default for reproducibility).
    pub seed: u64,
}

impl Default for BroadenedOptions {
    fn default() -> Self {
        Self {
            n_omega: 512,
            seed: 0x5EED,
        }
    }
}

/// Recover initial second moments from an ensemble measured with broadened
/// (averaged) filters, by Monte Carlo over the frequency distribution: the
/// normalization second moments `<J (x) J>` and the primed noise matrices
/// are averaged over `n_omega` frequency draws, and the resulting linear
/// system is solved by weighted least squares. Warns via the returned
/// smallest singular value when the system approaches rank deficiency.
pub fn broadened_second_moments(
    sys: &System,
    bank: &FilterBank,
    records: &[HomodyneRecord],
    opts: &BroadenedOptions,
) -> Result<BroadenedInference> {
    let nq = sys.n_quad();
    if records.len() < 2 {
        return Err(Error::InsufficientData("need at least two records".into()));
    }
    // raw (unnormalized) second moments of the filter outputs
    let mut p_hat = DMatrix::zeros(nq, nq);
    for rec in records {
        let q = bank.project(&rec.samples)?;
        p_hat += &q * q.transpose();
    }
    p_hat /= records.len() as f64;
    let var_p = DMatrix::from_fn(nq, nq, |i, j| {
        (p_hat[(i, j)].powi(2) + p_hat[(i, i)] * p_hat[(j, j)]) / records.len() as f64
    });

    // Monte Carlo over frequency draws: <J_ik J_jl>, <T'>, <B'>
    let draws: Vec<(DMatrix<f64>, DMatrix<f64>, DMatrix<f64>)> = (0..opts.n_omega as u64)
        .into_par_iter()
        .map(|s| {
            let mut rng = stream(opts.seed, s, Purpose::Internal(0));
            let omegas: Vec<f64> = sys
                .config
                .oscillators
                .iter()
                .map(|o| o.omega + o.sigma * rng.sample::<f64, _>(StandardNormal))
                .collect();
            let j = crate::filters::normalization_matrix_at(sys, &bank.rows, &omegas);
            let t = thermal_cov_at(sys, bank, true, Some(&omegas));
            let b = backaction_cov_at(sys, bank, true, true, Some(&omegas));
            (j, t, b)
        })
        .collect();
    let n_mc = draws.len() as f64;
    let mut jj = vec![0.0; nq * nq * nq * nq];
    let mut t_mean = DMatrix::zeros(nq, nq);
    let mut b_mean = DMatrix::zeros(nq, nq);
    let mut tb_sq: DMatrix<f64> = DMatrix::zeros(nq, nq);
    for (j, t, b) in &draws {
        for i in 0..nq {
            for k in 0..nq {
                let jik = j[(i, k)];
                for jj_i in 0..nq {
                    for l in 0..nq {
                        jj[((i * nq + jj_i) * nq + k) * nq + l] += jik * j[(jj_i, l)] / n_mc;
                    }
                }
            }
        }
        t_mean += t;
        b_mean += b;
        let tb = t + b;
        for i in 0..nq {
            for jx in 0..nq {
                tb_sq[(i, jx)] += tb[(i, jx)] * tb[(i, jx)];
            }
        }
    }
    t_mean /= n_mc;
    b_mean /= n_mc;
    let m_prime = shot_noise_cov(sys, bank, true);
    // MC variance of the mean of T' + B'
    let tb_mean = &t_mean + &b_mean;
    let var_mc = DMatrix::from_fn(nq, nq, |i, j| {
        let spread: f64 = tb_sq[(i, j)] / n_mc - tb_mean[(i, j)].powi(2);
        spread.max(0.0) / n_mc
    });

    // weighted least squares over the (2N)^2 equations
    let n_eq = nq * nq;
    let mut a = DMatrix::zeros(n_eq, n_eq);
    let mut rhs = DVector::zeros(n_eq);
    let scale = p_hat.trace() / nq as f64;
    for i in 0..nq {
        for j in 0..nq {
            let row = i * nq + j;
            let w = 1.0
                / (var_p[(i, j)] + var_mc[(i, j)] + (1e-12 * scale).powi(2))
                    .sqrt();
            for k in 0..nq {
                for l in 0..nq {
                    a[(row, k * nq + l)] = w * jj[((i * nq + j) * nq + k) * nq + l];
                }
            }
            rhs[row] = w * (p_hat[(i, j)] - tb_mean[(i, j)] - m_prime[(i, j)]);
        }
    }
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if !(smin > 1e-12 * smax) {
        return Err(Error::RankDeficient { smin });
    }
    let x = svd
        .solve(&rhs, 1e-14 * smax)
        .map_err(|e| Error::Factorization(e.to_string()))?;
    // covariance of the solution: (A^T A)^-1 with unit-variance weighted rows
    let ata_inv = (a.transpose() * &a)
        .try_inverse()
        .ok_or(Error::RankDeficient { smin })?;
    let mut q_moments = DMatrix::zeros(nq, nq);
    let mut q_se = DMatrix::zeros(nq, nq);
    for k in 0..nq {
        for l in 0..nq {
            q_moments[(k, l)] = x[k * nq + l];
            q_se[(k, l)] = ata_inv[(k * nq + l, k * nq + l)].sqrt();
        }
    }
    let q_moments = (&q_moments + q_moments.transpose()) * 0.5;
    Ok(BroadenedInference {
        q_moments,
        q_se,
        primed: NoiseCovarianceSet {
            m: m_prime,
            t: t_mean,
            b: b_mean,
            primed: true,
        },
        smallest_sv: smin / smax,
    })
}
