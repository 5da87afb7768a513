//! Response functions, filter banks, the normalization matrix `J`, the
//! two-time noise matrix, and estimate application.
//!
//! A filter bank holds `2N` discrete temporal weight rows `m(t_n)` on the
//! sampling grid. Applying a bank to a record gives the raw projections
//! `dt * sum_n m(t_n) S(t_n)`, which the normalization matrix
//!
//! ```text
//! J[a, b] = sqrt(2) g_eff(b) * dt * sum_n  m_a(t_n) r_b(t_n)
//! ```
//!
//! maps to unbiased quadrature estimates `q = J^-1 (dt sum m S)`.
//!
//! Discrete conventions, shared by every family so that estimates stay
//! exactly unbiased against the simulator:
//! - weight rows are sampled with the half-maximum onset `Theta(0) = 1/2`
//!   (the trapezoid treatment of the signal's step at `t = 0`);
//! - the response `r_b` inside `J` is the signal model itself — full
//!   amplitude at `t = 0`, exactly what [`crate::sim`] emits — so
//!   `E[q] = Q` holds to machine precision by construction;
//! - estimates and `J` use the same `dt`-weighted sum; consistency between
//!   the two, not the quadrature rule itself, is what guarantees
//!   unbiasedness.
//!
//! GLS banks solve `Omega m = r` against the two-time noise matrix. For long
//! records the solve runs on a reduced grid — a window covering the filter
//! support, optionally decimated — and the solution is interpolated back to
//! the full rate for application; the window and stride are chosen so the
//! reduced grid still oversamples every oscillator.

use faer::linalg::solvers::Solve;
use faer::Mat;
use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::kernels::{response_correlation, sine_correlation, OscMode};
use crate::model::System;
use crate::sim::HomodyneRecord;
use crate::Result;

/// Condition-number ceiling beyond which normalization refuses to proceed.
pub const COND_LIMIT: f64 = 1e8;

/// Discrete quadrature response of one oscillator.
#[derive(Debug, Clone)]
pub struct ResponseFunction {
    pub osc: usize,
    /// Cosine-phase row, `env(t) cos(w t - phi)`.
    pub cos_row: Vec<f64>,
    /// Sine-phase row, `env(t) sin(w t - phi)`.
    pub sin_row: Vec<f64>,
}

/// Sample the quadrature response of oscillator `i` on the grid, with the
/// half-maximum onset convention (`Theta(0) = 1/2`). With `averaged` the
/// Gaussian dephasing envelope `exp(-sigma^2 t^2 / 2)` of the
/// frequency-jittered ensemble multiplies the decay. Negative `omega` flips
/// the sign of the sine row.
pub fn response(sys: &System, i: usize, averaged: bool) -> ResponseFunction {
    let (cos_row, sin_row) = response_rows(sys, i, averaged, true, None);
    ResponseFunction {
        osc: i,
        cos_row,
        sin_row,
    }
}

/// Rows of the response, choosing onset convention and an optional frequency
/// override (used for Monte Carlo averaging over realized frequencies).
fn response_rows(
    sys: &System,
    i: usize,
    averaged: bool,
    half_onset: bool,
    omega_override: Option<f64>,
) -> (Vec<f64>, Vec<f64>) {
    let grid = sys.grid();
    let o = sys.osc(i);
    let omega = omega_override.unwrap_or(o.omega);
    let phi = sys.derived[i].phi;
    let sigma2 = if averaged { o.sigma * o.sigma } else { 0.0 };
    let mut cos_row = Vec::with_capacity(grid.nt);
    let mut sin_row = Vec::with_capacity(grid.nt);
    for n in 0..grid.nt {
        let t = grid.time(n);
        let env = (-0.5 * o.gamma * t).exp() * (-0.5 * sigma2 * t * t).exp();
        let arg = omega * t - phi;
        let w = if n == 0 && half_onset { 0.5 } else { 1.0 };
        cos_row.push(w * env * arg.cos());
        sin_row.push(w * env * arg.sin());
    }
    (cos_row, sin_row)
}

/// Filter family tag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum FilterFamily {
    /// Ordinary least squares: the response functions themselves.
    Ols,
    /// Exponentially damped sinusoids with per-oscillator decay rates.
    Exp { gammas: Vec<f64> },
    /// Generalized least squares against the two-time noise matrix.
    Gls,
    /// Dephasing-broadened (averaged) response filters.
    Avg,
}

/// A bank of `2N` filter rows plus its normalization.
#[derive(Debug, Clone)]
pub struct FilterBank {
    pub family: FilterFamily,
    /// `2N` weight rows over the full grid.
    pub rows: Vec<Vec<f64>>,
    /// Normalization matrix (the averaged `<J>` for the broadened family).
    pub j: DMatrix<f64>,
    pub j_inv: DMatrix<f64>,
    pub cond_j: f64,
    pub fs: f64,
    pub nt: usize,
}

impl FilterBank {
    fn assemble(sys: &System, family: FilterFamily, rows: Vec<Vec<f64>>) -> Result<Self> {
        let grid = sys.grid();
        let averaged = matches!(family, FilterFamily::Avg);
        let j = normalization_matrix(sys, &rows, averaged);
        let svd = j.clone().svd(false, false);
        let smax = svd.singular_values.max();
        let smin = svd.singular_values.min();
        let cond_j = if smin > 0.0 { smax / smin } else { f64::INFINITY };
        if !(cond_j < COND_LIMIT) {
            return Err(Error::IllConditioned {
                cond: cond_j,
                limit: COND_LIMIT,
            });
        }
        let j_inv = j
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Factorization("J not invertible".into()))?;
        Ok(Self {
            family,
            rows,
            j,
            j_inv,
            cond_j,
            fs: grid.fs,
            nt: grid.nt,
        })
    }

    /// Raw (unnormalized) projections `dt * sum_n m(t_n) S(t_n)`.
    pub fn project(&self, samples: &[f64]) -> Result<DVector<f64>> {
        if samples.len() != self.nt {
            return Err(Error::Mismatch(format!(
                "record has {} samples, bank expects {}",
                samples.len(),
                self.nt
            )));
        }
        let dt = 1.0 / self.fs;
        Ok(DVector::from_iterator(
            self.rows.len(),
            self.rows.iter().map(|row| {
                dt * row
                    .iter()
                    .zip(samples.iter())
                    .map(|(m, s)| m * s)
                    .sum::<f64>()
            }),
        ))
    }

    /// Normalized quadrature estimate `J^-1 (dt sum m S)`.
    pub fn estimate(&self, record: &HomodyneRecord) -> Result<DVector<f64>> {
        Ok(&self.j_inv * self.project(&record.samples)?)
    }

    /// Estimates for a whole ensemble, in parallel, order preserved.
    pub fn estimate_ensemble(&self, records: &[HomodyneRecord]) -> Result<Vec<DVector<f64>>> {
        records
            .par_iter()
            .map(|r| self.estimate(r))
            .collect::<Result<Vec<_>>>()
    }

    /// Filter rows as a `2N x nt` matrix (row `a` = weight row `a`).
    pub fn weight_matrix(&self) -> DMatrix<f64> {
        let n_rows = self.rows.len();
        DMatrix::from_fn(n_rows, self.nt, |a, n| self.rows[a][n])
    }

    /// Serialize the bank as CSV: `#` metadata lines carrying the family
    /// tag, decay rates, grid, condition number, and the rows of `J`,
    /// followed by one time column and one column per weight row.
    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> Result<()> {
        let family = match &self.family {
            FilterFamily::Ols => "OLS".to_string(),
            FilterFamily::Gls => "GLS".to_string(),
            FilterFamily::Avg => "AVG".to_string(),
            FilterFamily::Exp { gammas } => format!(
                "EXP({})",
                gammas
                    .iter()
                    .map(|g| format!("{g:.17e}"))
                    .collect::<Vec<_>>()
                    .join(";")
            ),
        };
        writeln!(w, "# family={family}")?;
        writeln!(w, "# fs_hz={:.17e} nt={}", self.fs, self.nt)?;
        writeln!(w, "# cond_j={:.17e}", self.cond_j)?;
        for i in 0..self.j.nrows() {
            let row: Vec<String> = (0..self.j.ncols())
                .map(|jx| format!("{:.17e}", self.j[(i, jx)]))
                .collect();
            writeln!(w, "# j_row_{i}={}", row.join(","))?;
        }
        let header: Vec<String> = std::iter::once("time_s".to_string())
            .chain((0..self.rows.len()).map(|a| format!("m{a}")))
            .collect();
        writeln!(w, "{}", header.join(","))?;
        for n in 0..self.nt {
            let mut cells = Vec::with_capacity(self.rows.len() + 1);
            cells.push(format!("{:.17e}", n as f64 / self.fs));
            for row in &self.rows {
                cells.push(format!("{:.17e}", row[n]));
            }
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }

    /// Export the amplitude spectrum of one row as `(frequency Hz,
    /// amplitude)` CSV.
    pub fn write_spectrum_csv<W: std::io::Write>(
        &self,
        mut w: W,
        row: usize,
        pad_factor: usize,
    ) -> Result<()> {
        let (freqs, amps) = self.spectrum(row, pad_factor);
        writeln!(w, "freq_hz,amplitude")?;
        for (f, a) in freqs.iter().zip(amps.iter()) {
            writeln!(w, "{f:.17e},{a:.17e}")?;
        }
        Ok(())
    }

    /// Amplitude spectrum of one filter row: `(freq_hz, |FFT|)` up to the
    /// Nyquist frequency, zero-padded for resolution.
    pub fn spectrum(&self, row: usize, pad_factor: usize) -> (Vec<f64>, Vec<f64>) {
        use rustfft::{num_complex::Complex, FftPlanner};
        let n = (self.nt * pad_factor.max(1)).next_power_of_two();
        let mut buf = vec![Complex::new(0.0, 0.0); n];
        for (i, &v) in self.rows[row].iter().enumerate() {
            buf[i] = Complex::new(v, 0.0);
        }
        FftPlanner::new().plan_fft_forward(n).process(&mut buf);
        let half = n / 2 + 1;
        let freqs = (0..half).map(|k| k as f64 * self.fs / n as f64).collect();
        let amps = buf[..half].iter().map(|c| c.norm()).collect();
        (freqs, amps)
    }
}

/// Signal-model response rows of oscillator `i` (full onset amplitude at
/// `t = 0`, matching what the simulator emits), broadened when requested.
pub(crate) fn signal_response_rows(sys: &System, i: usize, averaged: bool) -> (Vec<f64>, Vec<f64>) {
    response_rows(sys, i, averaged, false, None)
}

/// Normalization of a set of weight rows against the signal response at
/// explicitly given oscillator frequencies (one draw of a broadened
/// ensemble).
pub(crate) fn normalization_matrix_at(
    sys: &System,
    rows: &[Vec<f64>],
    omegas: &[f64],
) -> DMatrix<f64> {
    let nq = sys.n_quad();
    let dt = sys.grid().dt();
    let mut j = DMatrix::zeros(nq, nq);
    for osc in 0..sys.n_osc() {
        let (rc, rs) = response_rows(sys, osc, false, false, Some(omegas[osc]));
        let scale = 2.0_f64.sqrt() * sys.derived[osc].g_eff;
        for (a, row) in rows.iter().enumerate() {
            let mut acc_c = 0.0;
            let mut acc_s = 0.0;
            for n in 0..row.len() {
                acc_c += row[n] * rc[n];
                acc_s += row[n] * rs[n];
            }
            j[(a, 2 * osc)] = scale * dt * acc_c;
            j[(a, 2 * osc + 1)] = scale * dt * acc_s;
        }
    }
    j
}

/// The normalization matrix of a set of weight rows against the signal-model
/// response (broadened mean response when `averaged`).
fn normalization_matrix(sys: &System, rows: &[Vec<f64>], averaged: bool) -> DMatrix<f64> {
    let nq = sys.n_quad();
    let dt = sys.grid().dt();
    let mut j = DMatrix::zeros(nq, nq);
    for osc in 0..sys.n_osc() {
        // signal convention: full amplitude at t = 0
        let (rc, rs) = response_rows(sys, osc, averaged, false, None);
        let scale = 2.0_f64.sqrt() * sys.derived[osc].g_eff;
        for (a, row) in rows.iter().enumerate() {
            let mut acc_c = 0.0;
            let mut acc_s = 0.0;
            for n in 0..row.len() {
                acc_c += row[n] * rc[n];
                acc_s += row[n] * rs[n];
            }
            j[(a, 2 * osc)] = scale * dt * acc_c;
            j[(a, 2 * osc + 1)] = scale * dt * acc_s;
        }
    }
    j
}

/// OLS filters: each oscillator's own response functions.
pub fn ols_filters(sys: &System) -> Result<FilterBank> {
    let mut rows = Vec::with_capacity(sys.n_quad());
    for i in 0..sys.n_osc() {
        let r = response(sys, i, false);
        rows.push(r.cos_row);
        rows.push(r.sin_row);
    }
    FilterBank::assemble(sys, FilterFamily::Ols, rows)
}

/// Broadened (averaged-response) filters for inhomogeneously broadened
/// oscillators; normalized by the averaged `<J>`.
pub fn avg_filters(sys: &System) -> Result<FilterBank> {
    let mut rows = Vec::with_capacity(sys.n_quad());
    for i in 0..sys.n_osc() {
        let r = response(sys, i, true);
        rows.push(r.cos_row);
        rows.push(r.sin_row);
    }
    FilterBank::assemble(sys, FilterFamily::Avg, rows)
}

/// Exponentially damped sinusoidal filters with one decay rate per
/// oscillator. `exp_filters(sys, gammas)` with `gammas[i] = Gamma_i`
/// coincides with the OLS bank exactly.
pub fn exp_filters(sys: &System, gammas: &[f64]) -> Result<FilterBank> {
    if gammas.len() != sys.n_osc() {
        return Err(Error::Mismatch("one decay rate per oscillator".into()));
    }
    if let Some(g) = gammas.iter().find(|&&g| g <= 0.0) {
        return Err(Error::invalid("gamma_filter", format!("must be > 0, got {g}")));
    }
    let grid = sys.grid();
    let mut rows = Vec::with_capacity(sys.n_quad());
    for (i, &gf) in gammas.iter().enumerate() {
        let o = sys.osc(i);
        let phi = sys.derived[i].phi;
        let mut cos_row = Vec::with_capacity(grid.nt);
        let mut sin_row = Vec::with_capacity(grid.nt);
        for n in 0..grid.nt {
            let t = grid.time(n);
            let env = (-0.5 * gf * t).exp();
            let arg = o.omega * t - phi;
            let w = if n == 0 { 0.5 } else { 1.0 };
            cos_row.push(w * env * arg.cos());
            sin_row.push(w * env * arg.sin());
        }
        rows.push(cos_row);
        rows.push(sin_row);
    }
    FilterBank::assemble(sys, FilterFamily::Exp { gammas: gammas.to_vec() }, rows)
}

/// Optimal exponential filter decay rate for one oscillator,
/// `Gamma sqrt(1 + 4 eps C (C + 2 nu + 1))`, written through the raw
/// backaction rate `beta = C Gamma` so the undamped limit stays finite:
/// `sqrt(Gamma^2 + 4 eps beta (beta + Gamma (2 nu + 1)))`.
pub fn optimal_gamma(gamma: f64, backaction_rate: f64, nu: f64, epsilon: f64) -> f64 {
    let beta = backaction_rate;
    (gamma * gamma + 4.0 * epsilon * beta * (beta + gamma * (2.0 * nu + 1.0))).sqrt()
}

/// Exponential bank with each oscillator at its optimal decay rate.
pub fn exp_filters_auto(sys: &System) -> Result<FilterBank> {
    let gammas: Vec<f64> = (0..sys.n_osc())
        .map(|i| {
            optimal_gamma(
                sys.osc(i).gamma,
                sys.derived[i].backaction_rate,
                sys.osc(i).nu,
                sys.config.cavity.epsilon,
            )
        })
        .collect();
    exp_filters(sys, &gammas)
}

// ---------------------------------------------------------------------------
// Two-time noise matrix and GLS filters
// ---------------------------------------------------------------------------

/// Reduced-grid policy for GLS construction.
///
/// The solve grid has two zones: a full-rate head long enough to resolve the
/// fastest optimal filter envelope, and a decimated tail that still
/// oversamples every oscillator. The filters are smooth on the tail's scale,
/// so interpolating the tail back to the full rate costs a negligible
/// fraction of the optimum.
#[derive(Debug, Clone)]
pub struct GlsGrid {
    /// Target sample budget of the solve grid.
    pub max_samples: usize,
    /// Minimum samples per oscillation period on the decimated tail; 10
    /// keeps the decimated Nyquist at five times the fastest oscillator.
    pub min_samples_per_period: f64,
    /// Optional explicit window (s); defaults to the whole record.
    pub window: Option<f64>,
    /// Memory ceiling for the dense noise matrix.
    pub memory_budget_mb: f64,
}

impl Default for GlsGrid {
    fn default() -> Self {
        Self {
            max_samples: 4000,
            min_samples_per_period: 10.0,
            window: None,
            memory_budget_mb: 512.0,
        }
    }
}

/// Resolved solve grid: full-grid indices, the per-index shot-variance
/// scale (inverse of the local stride), and the zone layout.
#[derive(Debug, Clone)]
pub struct SolveGrid {
    pub indices: Vec<usize>,
    /// Per-index factor multiplying `P_SN fs`: 1 in the head, `1/stride` in
    /// the decimated tail (bin-averaged samples carry proportionally less
    /// shot variance).
    pub shot_scale: Vec<f64>,
    /// Number of full-rate head samples.
    pub head_len: usize,
    /// Tail stride (1 when no decimation was needed).
    pub stride: usize,
    pub window: f64,
}

impl GlsGrid {
    /// Choose the head length and tail stride for a system.
    pub fn resolve(&self, sys: &System) -> Result<SolveGrid> {
        let grid = sys.grid();
        let window = self.window.unwrap_or(grid.tf).min(grid.tf);
        let nt_w = ((window * grid.fs).ceil() as usize).clamp(2, grid.nt);
        let f_max = sys
            .config
            .oscillators
            .iter()
            .map(|o| o.omega.abs())
            .fold(0.0, f64::max)
            / (2.0 * std::f64::consts::PI);
        let d_max = ((grid.fs / (self.min_samples_per_period * f_max)).floor() as usize).max(1);

        // head: cover the fastest optimal filter envelope at full rate
        let eps = sys.config.cavity.epsilon;
        let gamma_max = (0..sys.n_osc())
            .map(|i| {
                optimal_gamma(
                    sys.osc(i).gamma,
                    sys.derived[i].backaction_rate,
                    sys.osc(i).nu,
                    eps,
                )
            })
            .fold(0.0, f64::max);
        let head_target = if gamma_max > 0.0 {
            ((25.0 / gamma_max * grid.fs).ceil() as usize).min(nt_w)
        } else {
            nt_w
        };
        let head_cap = self.max_samples * 3 / 5;
        let mut head_len = head_target.min(head_cap);

        let tail_budget = self.max_samples.saturating_sub(head_len).max(1);
        let mut stride = (nt_w - head_len).div_ceil(tail_budget).max(1);
        if stride > d_max {
            stride = d_max;
        }
        // the head only earns its samples when the tail stride would
        // undersample the fastest filter envelope
        if gamma_max * stride as f64 / grid.fs <= 0.08 {
            head_len = 0;
            stride = nt_w.div_ceil(self.max_samples).max(1).min(d_max);
        }
        if stride == 1 {
            head_len = nt_w;
        }
        let mut indices: Vec<usize> = (0..head_len).collect();
        let mut n = head_len;
        while n < nt_w {
            indices.push(n);
            n += stride;
        }
        let n_solve = indices.len();
        let need_mb = (n_solve * n_solve * 8) as f64 / 1e6;
        if need_mb > self.memory_budget_mb {
            return Err(Error::NoiseMatrixBudget {
                nt: n_solve,
                need_mb,
                budget_mb: self.memory_budget_mb,
                suggested_decimation: nt_w.div_ceil(
                    ((self.memory_budget_mb * 1e6 / 8.0).sqrt().floor() as usize).max(2),
                ),
            });
        }
        let shot_scale: Vec<f64> = indices
            .iter()
            .map(|&i| if i < head_len { 1.0 } else { 1.0 / stride as f64 })
            .collect();
        Ok(SolveGrid {
            indices,
            shot_scale,
            head_len,
            stride,
            window,
        })
    }
}

/// Assemble the two-time noise covariance of the sampled signal on the given
/// grid times:
/// `Omega[n, m] = 2 sum_kl g_k g_l <D_k(t_n) D_l(t_m)> + shot_var delta_nm`,
/// with the diffusion correlations from the closed-form kernels — thermal
/// (and extra-diffusion) parts on the diagonal pairs, the shared backaction
/// through the momentum-drive kernel for every pair.
fn assemble_omega(sys: &System, times: &[f64], shot_var: &[f64]) -> Mat<f64> {
    let (thermal, backaction) = assemble_omega_split(sys, times);
    let n = times.len();
    let mut omega = thermal;
    for a in 0..n {
        for b in 0..n {
            omega[(a, b)] += backaction[(a, b)];
        }
    }
    for a in 0..n {
        omega[(a, a)] += shot_var[a];
    }
    omega
}

/// Thermal and backaction kernel parts of the noise matrix on an arbitrary
/// time grid, kept separate so sweeps over the measurement strength can
/// rescale the backaction part instead of reassembling it.
pub(crate) fn assemble_omega_split(sys: &System, times: &[f64]) -> (Mat<f64>, Mat<f64>) {
    let n = times.len();
    let n_osc = sys.n_osc();
    let modes: Vec<OscMode> = (0..n_osc).map(|k| sys.mode(k)).collect();
    let th_w: Vec<f64> = (0..n_osc)
        .map(|k| 2.0 * sys.derived[k].g_eff.powi(2) * sys.derived[k].thermal_intensity)
        .collect();
    let mut ba_w = vec![vec![0.0; n_osc]; n_osc];
    for k in 0..n_osc {
        for l in 0..n_osc {
            ba_w[k][l] = 2.0
                * sys.derived[k].g_eff
                * sys.derived[l].g_eff
                * (sys.derived[k].backaction_rate * sys.derived[l].backaction_rate).sqrt();
        }
    }
    let mut thermal = Mat::zeros(n, n);
    let mut backaction = Mat::zeros(n, n);
    let rows: Vec<(Vec<f64>, Vec<f64>)> = (0..n)
        .into_par_iter()
        .map(|a| {
            let ta = times[a];
            let mut th_row = vec![0.0; a + 1];
            let mut ba_row = vec![0.0; a + 1];
            for b in 0..=a {
                let tb = times[b];
                let mut th = 0.0;
                let mut ba = 0.0;
                for k in 0..n_osc {
                    th += th_w[k] * response_correlation(&modes[k], &modes[k], ta, tb);
                    for l in 0..n_osc {
                        if ba_w[k][l] != 0.0 {
                            ba += ba_w[k][l] * sine_correlation(&modes[k], &modes[l], ta, tb);
                        }
                    }
                }
                th_row[b] = th;
                ba_row[b] = ba;
            }
            (th_row, ba_row)
        })
        .collect();
    for (a, (th_row, ba_row)) in rows.into_iter().enumerate() {
        for (b, (&th, &ba)) in th_row.iter().zip(ba_row.iter()).enumerate() {
            thermal[(a, b)] = th;
            thermal[(b, a)] = th;
            backaction[(a, b)] = ba;
            backaction[(b, a)] = ba;
        }
    }
    (thermal, backaction)
}

/// Public full-grid two-time noise matrix,
/// `Omega[n, m] = 2 sum g g <D D> + P_SN fs delta`, subject to the memory
/// budget (MB). Errors with a suggested decimation factor when the dense
/// matrix would not fit.
pub fn noise_matrix(sys: &System, memory_budget_mb: f64) -> Result<Mat<f64>> {
    let nt = sys.grid().nt;
    let need_mb = (nt * nt * 8) as f64 / 1e6;
    if need_mb > memory_budget_mb {
        let max_n = ((memory_budget_mb * 1e6 / 8.0).sqrt().floor() as usize).max(2);
        return Err(Error::NoiseMatrixBudget {
            nt,
            need_mb,
            budget_mb: memory_budget_mb,
            suggested_decimation: nt.div_ceil(max_n),
        });
    }
    let times = sys.grid().times();
    let shot = vec![sys.psn * sys.grid().fs; times.len()];
    Ok(assemble_omega(sys, &times, &shot))
}

/// GLS filters: solve `Omega m = r` on the reduced grid with one symmetric
/// factorization for all `2N` right-hand sides, then interpolate the rows
/// back to the full rate.
///
/// On the decimated grid the per-sample shot variance is taken as
/// `P_SN fs / stride` — the variance of stride-length bin averages — so the
/// solve sees the same shot-noise *density* as the full-rate record and the
/// interpolated filters keep the full-rate optimum shape.
pub fn gls_filters(sys: &System, opts: &GlsGrid) -> Result<FilterBank> {
    let solve_grid = opts.resolve(sys)?;
    let grid = sys.grid();
    let times: Vec<f64> = solve_grid.indices.iter().map(|&n| grid.time(n)).collect();
    let shot: Vec<f64> = solve_grid
        .shot_scale
        .iter()
        .map(|s| sys.psn * grid.fs * s)
        .collect();
    let omega = assemble_omega(sys, &times, &shot);
    let llt = omega
        .llt(faer::Side::Lower)
        .map_err(|_| Error::Factorization("two-time noise matrix not positive definite".into()))?;

    let n_solve = times.len();
    let nq = sys.n_quad();
    let mut rhs = Mat::zeros(n_solve, nq);
    for i in 0..sys.n_osc() {
        let (rc, rs) = response_rows(sys, i, false, true, None);
        for (a, &n) in solve_grid.indices.iter().enumerate() {
            rhs[(a, 2 * i)] = rc[n];
            rhs[(a, 2 * i + 1)] = rs[n];
        }
    }
    let sol = llt.solve(&rhs);

    let full = solve_grid.stride == 1;
    let mut rows = Vec::with_capacity(nq);
    for q in 0..nq {
        let col: Vec<f64> = (0..n_solve).map(|a| sol[(a, q)]).collect();
        if full && n_solve == grid.nt {
            rows.push(col);
        } else {
            rows.push(interpolate_row(&col, &solve_grid, grid.nt));
        }
    }
    FilterBank::assemble(sys, FilterFamily::Gls, rows)
}

/// Reconstruct a solve-grid row on the full grid: the head copies directly,
/// the decimated tail is Catmull-Rom interpolated; zero outside the window.
fn interpolate_row(col: &[f64], solve_grid: &SolveGrid, nt: usize) -> Vec<f64> {
    let head = solve_grid.head_len;
    let d = solve_grid.stride;
    let mut out = vec![0.0; nt];
    for (a, &idx) in solve_grid.indices.iter().enumerate().take(head) {
        out[idx] = col[a];
    }
    if solve_grid.indices.len() == head {
        return out;
    }
    // tail nodes are uniform with spacing d starting at index `head`
    let tail: &[f64] = &col[head..];
    let n_nodes = tail.len();
    // virtual left neighbor: the head sample one stride before the tail
    let left = if head >= d { col[head - d] } else { col[0] };
    let node = |i: isize| -> f64 {
        if i < 0 {
            left
        } else {
            tail[(i as usize).min(n_nodes - 1)]
        }
    };
    let last_full = solve_grid.indices[solve_grid.indices.len() - 1];
    for n in head..=last_full.min(nt - 1) {
        let u = (n - head) as f64 / d as f64;
        let i = u.floor() as isize;
        let x = u - i as f64;
        let (p0, p1, p2, p3) = (node(i - 1), node(i), node(i + 1), node(i + 2));
        out[n] = p1
            + 0.5
                * x
                * (p2 - p0
                    + x * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3
                        + x * (3.0 * (p1 - p2) + p3 - p0)));
    }
    out
}

/// Exact added covariance of the GLS estimator on the reduced grid,
/// `(R^T Omega^-1 R)^-1`, in phonon-occupation units. This is the
/// minimum-variance bound the interpolated bank approaches; sweeps use it as
/// the analytic GLS imprecision without constructing filter rows.
pub fn gls_added_covariance(sys: &System, opts: &GlsGrid) -> Result<DMatrix<f64>> {
    let solve_grid = opts.resolve(sys)?;
    let grid = sys.grid();
    let times: Vec<f64> = solve_grid.indices.iter().map(|&n| grid.time(n)).collect();
    let shot: Vec<f64> = solve_grid
        .shot_scale
        .iter()
        .map(|s| sys.psn * grid.fs * s)
        .collect();
    let omega = assemble_omega(sys, &times, &shot);
    let llt = omega
        .llt(faer::Side::Lower)
        .map_err(|_| Error::Factorization("two-time noise matrix not positive definite".into()))?;
    let n_solve = times.len();
    let nq = sys.n_quad();
    // signal-model response including couplings
    let mut r = Mat::zeros(n_solve, nq);
    for i in 0..sys.n_osc() {
        let scale = 2.0_f64.sqrt() * sys.derived[i].g_eff;
        let (rc, rs) = response_rows(sys, i, false, false, None);
        for (a, &n) in solve_grid.indices.iter().enumerate() {
            r[(a, 2 * i)] = scale * rc[n];
            r[(a, 2 * i + 1)] = scale * rs[n];
        }
    }
    let z = llt.solve(&r);
    let mut info = DMatrix::zeros(nq, nq);
    for i in 0..nq {
        for j in 0..nq {
            let mut acc = 0.0;
            for a in 0..n_solve {
                acc += r[(a, i)] * z[(a, j)];
            }
            info[(i, j)] = acc;
        }
    }
    info.try_inverse()
        .ok_or_else(|| Error::Factorization("GLS information matrix singular".into()))
}
