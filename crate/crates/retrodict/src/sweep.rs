//! Parameter sweeps of retrodiction imprecision: the single-oscillator
//! added-noise surface over cooperativity and filter decay rate, and the
//! two-mode optimum over frequency splitting and cooperativity.
//!
//! Sweeps are analytic by default — exponential-filter imprecision from the
//! kernel quadratures, GLS imprecision from the reduced-grid information
//! matrix — so figure-level tables take seconds per axis. Monte Carlo
//! validation of individual points goes through [`crate::sim`] and the
//! estimate ensemble machinery instead.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::filters::{exp_filters, gls_added_covariance, optimal_gamma, GlsGrid};
use crate::model::{
    validate, CavityParams, OscillatorParams, SamplingGrid, System, SystemConfig,
};
use crate::noise::{noise_covariances, NoiseCovarianceSet};
use crate::Result;

/// Closed-form added occupation of a single oscillator estimated with an
/// exponential filter of decay rate `gamma_f`, valid for
/// `gamma_f << omega` and long records: the thermal, backaction, and shot
/// contributions `(nu + 1/2) Gamma/gamma_f + (C/2) Gamma/gamma_f +
/// (Gamma + gamma_f)^2 / (8 eps C Gamma gamma_f)`.
pub fn analytic_exp_added_noise(gamma: f64, gamma_f: f64, c: f64, nu: f64, epsilon: f64) -> f64 {
    (nu + 0.5) * gamma / gamma_f
        + 0.5 * c * gamma / gamma_f
        + (gamma + gamma_f).powi(2) / (8.0 * epsilon * c * gamma * gamma_f)
}

/// Logarithmic grid with a fixed density per decade.
pub fn log_grid(lo: f64, hi: f64, points_per_decade: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo);
    let decades = (hi / lo).log10();
    let n = ((decades * points_per_decade as f64).round() as usize).max(2);
    (0..=n)
        .map(|i| lo * 10f64.powf(decades * i as f64 / n as f64))
        .collect()
}

/// One row of a single-oscillator sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SqlPoint {
    pub cooperativity: f64,
    pub gamma_filter: f64,
    /// Total added occupation of the exponential filter at this point.
    pub delta_n: f64,
    /// Condition number of the bank normalization.
    pub cond_j: f64,
    /// Error tag for points that failed to evaluate.
    pub error: Option<String>,
}

/// Per-cooperativity summary of the gamma-optimized filter.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SqlOptimum {
    pub cooperativity: f64,
    /// Grid argmin of the numeric added-noise curve.
    pub gamma_opt_numeric: f64,
    pub delta_n_min: f64,
    /// Closed-form optimal decay rate.
    pub gamma_opt_formula: f64,
    /// GLS imprecision at this cooperativity (reduced-grid bound).
    pub delta_n_gls: Option<f64>,
}

/// Single-oscillator SQL sweep output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SqlSweep {
    pub points: Vec<SqlPoint>,
    pub optima: Vec<SqlOptimum>,
    /// High-cooperativity noise floor `1 / (2 sqrt(eps))`.
    pub asymptote: f64,
}

/// Build a single-oscillator system at a given cooperativity with fixed
/// coupling (the intracavity photon number absorbs the measurement
/// strength, so the shot floor scales as `1/C`).
pub fn single_mode_system(
    omega: f64,
    gamma: f64,
    cooperativity: f64,
    nu: f64,
    epsilon: f64,
    fs: f64,
    tf: f64,
) -> Result<System> {
    two_mode_system(&[(omega, gamma, nu)], cooperativity, epsilon, fs, tf)
}

/// System of oscillators sharing one cooperativity, with fixed couplings
/// `g = Gamma_max` and the photon number solved from the requested `C`.
pub fn two_mode_system(
    oscillators: &[(f64, f64, f64)],
    cooperativity: f64,
    epsilon: f64,
    fs: f64,
    tf: f64,
) -> Result<System> {
    if !(cooperativity > 0.0) {
        return Err(Error::invalid("cooperativity", "must be > 0"));
    }
    let kappa = 2.0 * std::f64::consts::PI * 5.0e8;
    let g = oscillators
        .iter()
        .map(|&(_, gamma, _)| gamma)
        .fold(0.0, f64::max);
    // nbar from C = 4 nbar g^2 / (kappa Gamma) for the first oscillator;
    // remaining oscillators get g_i adjusted to hit the same C.
    let gamma0 = oscillators[0].1;
    let nbar = cooperativity * kappa * gamma0 / (4.0 * g * g);
    let oscs: Vec<OscillatorParams> = oscillators
        .iter()
        .map(|&(omega, gamma, nu)| {
            let gi = g * (gamma / gamma0).sqrt();
            OscillatorParams::new(omega, gamma, gi, nu)
        })
        .collect();
    validate(SystemConfig {
        cavity: CavityParams {
            kappa,
            nbar,
            epsilon,
        },
        oscillators: oscs,
        grid: SamplingGrid::new(fs, tf),
    })
}

/// Analytic added-noise surface of a single oscillator over cooperativity
/// and exponential filter decay rate, plus the gamma-optimized curve and its
/// high-cooperativity asymptote. Failed points carry an error tag rather
/// than poisoning the table.
#[allow(clippy::too_many_arguments)]
pub fn sweep_single_sql(
    omega: f64,
    gamma: f64,
    nu: f64,
    epsilon: f64,
    c_values: &[f64],
    gamma_values: &[f64],
    fs: f64,
    tf: f64,
    with_gls: bool,
) -> Result<SqlSweep> {
    let mut points = Vec::with_capacity(c_values.len() * gamma_values.len());
    let mut optima = Vec::with_capacity(c_values.len());
    for &c in c_values {
        let sys = single_mode_system(omega, gamma, c, nu, epsilon, fs, tf)?;
        let mut best: Option<(f64, f64)> = None;
        for &gf in gamma_values {
            match exp_filters(&sys, &[gf]) {
                Ok(bank) => {
                    let set = noise_covariances(&sys, &bank);
                    let dn = set.added_occupation(0);
                    if best.is_none_or(|(_, b)| dn < b) {
                        best = Some((gf, dn));
                    }
                    points.push(SqlPoint {
                        cooperativity: c,
                        gamma_filter: gf,
                        delta_n: dn,
                        cond_j: bank.cond_j,
                        error: None,
                    });
                }
                Err(e) => points.push(SqlPoint {
                    cooperativity: c,
                    gamma_filter: gf,
                    delta_n: f64::NAN,
                    cond_j: f64::NAN,
                    error: Some(e.to_string()),
                }),
            }
        }
        let (gamma_opt_numeric, delta_n_min) =
            best.ok_or_else(|| Error::InsufficientData("no sweep point succeeded".into()))?;
        let delta_n_gls = if with_gls {
            gls_added_covariance(&sys, &GlsGrid::default())
                .ok()
                .map(|a| 0.5 * (a[(0, 0)] + a[(1, 1)]))
        } else {
            None
        };
        optima.push(SqlOptimum {
            cooperativity: c,
            gamma_opt_numeric,
            delta_n_min,
            gamma_opt_formula: optimal_gamma(gamma, c * gamma, nu, epsilon),
            delta_n_gls,
        });
    }
    Ok(SqlSweep {
        points,
        optima,
        asymptote: 0.5 / epsilon.sqrt(),
    })
}

/// One row of a two-mode sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwoModePoint {
    pub delta: f64,
    pub cooperativity: f64,
    /// GLS imprecision per oscillator.
    pub delta_n_gls: [f64; 2],
    /// Imprecision of the single-oscillator optimal exponential bank.
    pub delta_n_exp: [f64; 2],
    /// Cross-estimate error magnitude `|<dA1^dag dA2>|` of the GLS bound.
    pub cross_error: f64,
    pub error: Option<String>,
}

/// Per-splitting optimum.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwoModeOptimum {
    pub delta: f64,
    /// Cooperativity minimizing the first oscillator's GLS imprecision.
    pub c_opt: f64,
    pub delta_n_at_opt: f64,
    pub cross_error_at_opt: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwoModeSweep {
    pub points: Vec<TwoModePoint>,
    pub optima: Vec<TwoModeOptimum>,
}

/// Two-mode imprecision sweep over frequency splitting and cooperativity:
/// oscillators differing only by `delta = w2 - w1`, equal damping, vacuum
/// baths. Emits the GLS imprecision (information-matrix bound), the
/// single-oscillator exponential-filter imprecision for comparison, the
/// cross-estimate error, and per-splitting optima.
///
/// Within one splitting the couplings are fixed and only the photon number
/// carries the cooperativity, so the noise matrix decomposes as
/// `Omega(C) = thermal + C * backaction_unit + shot(C) I`; the kernel parts
/// are assembled once per splitting and every cooperativity costs one
/// factorization.
pub fn sweep_two_mode(
    omega1: f64,
    gamma: f64,
    epsilon: f64,
    deltas: &[f64],
    c_values: &[f64],
    fs: f64,
    tf: f64,
) -> Result<TwoModeSweep> {
    let mut points = Vec::new();
    let mut optima = Vec::new();
    for &delta in deltas {
        let sweep = sweep_one_delta(omega1, gamma, epsilon, delta, c_values, fs, tf)?;
        let mut best: Option<&TwoModePoint> = None;
        for p in &sweep {
            if p.error.is_none()
                && best.is_none_or(|b| p.delta_n_gls[0] < b.delta_n_gls[0])
            {
                best = Some(p);
            }
        }
        if let Some(b) = best {
            optima.push(TwoModeOptimum {
                delta,
                c_opt: b.cooperativity,
                delta_n_at_opt: b.delta_n_gls[0],
                cross_error_at_opt: b.cross_error,
            });
        }
        points.extend(sweep);
    }
    Ok(TwoModeSweep { points, optima })
}

fn sweep_one_delta(
    omega1: f64,
    gamma: f64,
    epsilon: f64,
    delta: f64,
    c_values: &[f64],
    fs: f64,
    tf: f64,
) -> Result<Vec<TwoModePoint>> {
    use faer::linalg::solvers::Solve;
    let oscillators = [(omega1, gamma, 0.0), (omega1 + delta, gamma, 0.0)];
    let c_max = c_values.iter().copied().fold(1.0, f64::max);
    // size the solve grid for the fastest filter in the sweep
    let sys_ref = two_mode_system(&oscillators, c_max, epsilon, fs, tf)?;
    let solve_grid = GlsGrid::default().resolve(&sys_ref)?;
    let times: Vec<f64> = solve_grid
        .indices
        .iter()
        .map(|&n| sys_ref.grid().time(n))
        .collect();
    // unit-cooperativity system fixes the kernel parts
    let sys_unit = two_mode_system(&oscillators, 1.0, epsilon, fs, tf)?;
    let (thermal, ba_unit) = crate::filters::assemble_omega_split(&sys_unit, &times);
    let n = times.len();
    let nq = 4;
    // signal response (couplings are cooperativity-independent here)
    let mut resp = faer::Mat::zeros(n, nq);
    for i in 0..2 {
        let scale = 2.0_f64.sqrt() * sys_unit.derived[i].g_eff;
        let rows = crate::filters::signal_response_rows(&sys_unit, i, false);
        for (a, &idx) in solve_grid.indices.iter().enumerate() {
            resp[(a, 2 * i)] = scale * rows.0[idx];
            resp[(a, 2 * i + 1)] = scale * rows.1[idx];
        }
    }

    let mut out = Vec::with_capacity(c_values.len());
    for &c in c_values {
        let sys = two_mode_system(&oscillators, c, epsilon, fs, tf)?;
        let point = (|| -> Result<TwoModePoint> {
            let mut omega = thermal.clone();
            for a in 0..n {
                for b in 0..n {
                    omega[(a, b)] += c * ba_unit[(a, b)];
                }
            }
            for (a, scale) in solve_grid.shot_scale.iter().enumerate() {
                omega[(a, a)] += sys.psn * fs * scale;
            }
            let llt = omega.llt(faer::Side::Lower).map_err(|_| {
                Error::Factorization("two-time noise matrix not positive definite".into())
            })?;
            let z = llt.solve(&resp);
            let mut info = nalgebra::DMatrix::zeros(nq, nq);
            for i in 0..nq {
                for j in 0..nq {
                    let mut acc = 0.0;
                    for a in 0..n {
                        acc += resp[(a, i)] * z[(a, j)];
                    }
                    info[(i, j)] = acc;
                }
            }
            let added = info
                .try_inverse()
                .ok_or_else(|| Error::Factorization("GLS information matrix singular".into()))?;
            let gls_set = NoiseCovarianceSet {
                m: added,
                t: nalgebra::DMatrix::zeros(4, 4),
                b: nalgebra::DMatrix::zeros(4, 4),
                primed: false,
            };
            let delta_n_gls = [gls_set.added_occupation(0), gls_set.added_occupation(1)];
            let cross_error = gls_set.cross_error(0, 1);
            let gf = optimal_gamma(gamma, c * gamma, 0.0, epsilon);
            let delta_n_exp = match exp_filters(&sys, &[gf, gf]) {
                Ok(bank) => {
                    let set = noise_covariances(&sys, &bank);
                    [set.added_occupation(0), set.added_occupation(1)]
                }
                Err(_) => [f64::NAN, f64::NAN],
            };
            Ok(TwoModePoint {
                delta,
                cooperativity: c,
                delta_n_gls,
                delta_n_exp,
                cross_error,
                error: None,
            })
        })();
        match point {
            Ok(p) => out.push(p),
            Err(e) => out.push(TwoModePoint {
                delta,
                cooperativity: c,
                delta_n_gls: [f64::NAN; 2],
                delta_n_exp: [f64::NAN; 2],
                cross_error: f64::NAN,
                error: Some(e.to_string()),
            }),
        }
    }
    Ok(out)
}
