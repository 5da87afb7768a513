//! Physical parameters, derived quantities, and validation.
//!
//! [`SystemConfig`] is the raw, serializable description of a run: cavity,
//! oscillators, and sampling grid, with all rates in rad/s. Validation
//! produces a [`System`], which caches every derived quantity the rest of the
//! crate consumes (effective couplings, cooperativities, shot-noise PSD,
//! noise intensities) and is immutable afterwards, so it can be shared freely
//! across threads.
//!
//! Configuration files use Hz for every frequency-like field and are
//! converted on load as `value * 2 * pi`, bit-exactly; see [`ConfigFile`].

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::Error;
use crate::Result;

/// One harmonic oscillator coupled to the cavity.
///
/// `omega` is signed: a negative value describes an effective negative-mass
/// oscillator whose phase-space rotation is reversed. All downstream formulas
/// consume `omega` verbatim, which realizes the sign flip automatically.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OscillatorParams {
    /// Angular frequency (rad/s, signed).
    pub omega: f64,
    /// Energy damping rate Gamma (rad/s, >= 0).
    pub gamma: f64,
    /// Optomechanical coupling g (rad/s, > 0).
    pub g: f64,
    /// Thermal bath occupation (dimensionless, >= 0).
    pub nu: f64,
    /// Shot-to-shot frequency fluctuation std (rad/s, >= 0).
    #[serde(default)]
    pub sigma: f64,
    /// Additional incoherent quadrature diffusion rate (rad/s, >= 0).
    /// Enters each quadrature of this oscillator as an extra white drive.
    #[serde(default)]
    pub extra_diffusion: f64,
}

impl OscillatorParams {
    /// Oscillator with the given frequency, damping, coupling, and bath
    /// occupation; no frequency jitter or extra diffusion.
    pub fn new(omega: f64, gamma: f64, g: f64, nu: f64) -> Self {
        Self {
            omega,
            gamma,
            g,
            nu,
            sigma: 0.0,
            extra_diffusion: 0.0,
        }
    }
}

/// Cavity and detection parameters. The drive is always on resonance; a
/// detuned cavity is outside the model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CavityParams {
    /// Cavity half-linewidth kappa (rad/s, > 0).
    pub kappa: f64,
    /// Mean intracavity photon number (dimensionless, >= 0).
    pub nbar: f64,
    /// Total detection efficiency, 0 < epsilon <= 1.
    pub epsilon: f64,
}

/// Uniform sampling grid for the homodyne record, `t_n = n / fs` for
/// `n = 0 .. nt-1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingGrid {
    /// Sample rate (Hz).
    pub fs: f64,
    /// Record duration (s).
    pub tf: f64,
    /// Sample count, `round(fs * tf)`.
    pub nt: usize,
}

impl SamplingGrid {
    /// Grid from rate and duration; `nt` is derived.
    pub fn new(fs: f64, tf: f64) -> Self {
        let nt = (fs * tf).round() as usize;
        Self { fs, tf, nt }
    }

    /// Sample spacing (s).
    pub fn dt(&self) -> f64 {
        1.0 / self.fs
    }

    /// Sample time of index `n`.
    pub fn time(&self, n: usize) -> f64 {
        n as f64 / self.fs
    }

    /// All sample times.
    pub fn times(&self) -> Vec<f64> {
        (0..self.nt).map(|n| self.time(n)).collect()
    }
}

/// Raw system description: cavity, ordered oscillators, sampling grid.
///
/// Oscillator ordering is fixed and defines the quadrature indexing: the
/// quadrature vector is `(X_1, P_1, X_2, P_2, ...)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemConfig {
    pub cavity: CavityParams,
    pub oscillators: Vec<OscillatorParams>,
    pub grid: SamplingGrid,
}

/// Cooperativity `C = 4 nbar g_eff^2 / (kappa gamma)` of one oscillator,
/// using the sideband-corrected coupling.
///
/// Errors for an undamped oscillator, where the cooperativity is undefined
/// and the raw backaction diffusion rate `4 nbar g_eff^2 / kappa` should be
/// used instead (see [`backaction_rate`]).
pub fn cooperativity(osc: &OscillatorParams, cav: &CavityParams) -> Result<f64> {
    if osc.gamma <= 0.0 {
        return Err(Error::UndampedCooperativity { index: 0 });
    }
    Ok(backaction_rate(osc, cav)? / osc.gamma)
}

/// Raw backaction diffusion rate `4 nbar g_eff^2 / kappa` (rad/s). Equals
/// `C * Gamma` when the oscillator is damped; remains finite as `Gamma -> 0`.
pub fn backaction_rate(osc: &OscillatorParams, cav: &CavityParams) -> Result<f64> {
    let (g_eff, _) = sideband_correction(osc, cav)?;
    Ok(4.0 * cav.nbar * g_eff * g_eff / cav.kappa)
}

/// Shot-noise PSD of the normalized homodyne signal,
/// `P_SN = kappa / (8 epsilon nbar)` (two-sided, 1/Hz in signal units).
pub fn shot_noise_psd(cav: &CavityParams) -> Result<f64> {
    if cav.nbar <= 0.0 {
        return Err(Error::NoProbeLight);
    }
    if cav.epsilon <= 0.0 {
        return Err(Error::invalid("epsilon", "must be > 0".to_string()));
    }
    Ok(cav.kappa / (8.0 * cav.epsilon * cav.nbar))
}

/// Sideband correction for a resonantly driven cavity of finite bandwidth:
/// the effective coupling is reduced, `g_eff = g kappa / sqrt(kappa^2 +
/// omega^2)`, and the optically measured oscillator amplitude acquires a
/// phase delay `phi = atan(omega / kappa)`, applied as a rotation of that
/// oscillator's initial quadrature vector when building response functions.
///
/// Requires `kappa > 100 gamma`; the adiabatic elimination of the cavity is
/// invalid toward the resolved-sideband regime.
pub fn sideband_correction(osc: &OscillatorParams, cav: &CavityParams) -> Result<(f64, f64)> {
    if cav.kappa <= 100.0 * osc.gamma {
        return Err(Error::ResolvedSideband {
            index: 0,
            kappa: cav.kappa,
            gamma: osc.gamma,
        });
    }
    let ratio = osc.omega / cav.kappa;
    let g_eff = osc.g / (1.0 + ratio * ratio).sqrt();
    let phi = ratio.atan();
    Ok((g_eff, phi))
}

/// Per-oscillator derived quantities cached at validation time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OscillatorDerived {
    /// Sideband-corrected coupling (rad/s).
    pub g_eff: f64,
    /// Sideband phase delay (rad).
    pub phi: f64,
    /// Cooperativity; `None` for an undamped oscillator.
    pub cooperativity: Option<f64>,
    /// Raw backaction diffusion rate `4 nbar g_eff^2 / kappa` (rad/s).
    pub backaction_rate: f64,
    /// White-noise intensity per quadrature from the thermal bath plus any
    /// extra diffusion: `gamma (nu + 1/2) + extra_diffusion` (rad/s).
    pub thermal_intensity: f64,
}

/// A validated, immutable system. Everything downstream consumes this.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct System {
    pub config: SystemConfig,
    pub derived: Vec<OscillatorDerived>,
    /// Shot-noise PSD (two-sided) of the recorded signal.
    pub psn: f64,
    /// Pairwise spectral resolution `|omega_i - omega_j| / mean(Gamma)`.
    pub resolution: Vec<(usize, usize, f64)>,
    /// Non-fatal validity warnings (e.g. low quality factor).
    pub warnings: Vec<String>,
}

impl System {
    /// Number of oscillators.
    pub fn n_osc(&self) -> usize {
        self.config.oscillators.len()
    }

    /// Dimension of the quadrature vector, `2 N`.
    pub fn n_quad(&self) -> usize {
        2 * self.n_osc()
    }

    pub fn grid(&self) -> &SamplingGrid {
        &self.config.grid
    }

    pub fn osc(&self, i: usize) -> &OscillatorParams {
        &self.config.oscillators[i]
    }

    /// Bath occupations of all oscillators.
    pub fn nus(&self) -> Vec<f64> {
        self.config.oscillators.iter().map(|o| o.nu).collect()
    }

    /// Kernel-level view of oscillator `k` (nominal frequency).
    pub fn mode(&self, k: usize) -> crate::kernels::OscMode {
        crate::kernels::OscMode {
            gamma: self.config.oscillators[k].gamma,
            omega: self.config.oscillators[k].omega,
            phi: self.derived[k].phi,
            sigma: self.config.oscillators[k].sigma,
        }
    }

    /// Kernel-level view of oscillator `k` at an overridden frequency (used
    /// when averaging over realized frequencies).
    pub fn mode_at(&self, k: usize, omega: f64) -> crate::kernels::OscMode {
        crate::kernels::OscMode {
            gamma: self.config.oscillators[k].gamma,
            omega,
            phi: self.derived[k].phi,
            sigma: 0.0,
        }
    }
}

/// Validate a configuration: check every type invariant, cache the derived
/// quantities, and build the frequency-resolution report. Errors name the
/// offending field and bound. Idempotent: validating the config embedded in a
/// `System` reproduces it.
pub fn validate(config: SystemConfig) -> Result<System> {
    let cav = &config.cavity;
    if !(cav.kappa > 0.0) {
        return Err(Error::invalid("kappa", "must be > 0"));
    }
    if !(cav.nbar >= 0.0) {
        return Err(Error::invalid("nbar", "must be >= 0"));
    }
    if !(cav.epsilon > 0.0 && cav.epsilon <= 1.0) {
        return Err(Error::invalid("epsilon", "must satisfy 0 < epsilon <= 1"));
    }
    if config.oscillators.is_empty() {
        return Err(Error::invalid("oscillators", "need at least one"));
    }

    let mut warnings = Vec::new();
    let mut derived = Vec::with_capacity(config.oscillators.len());
    for (i, osc) in config.oscillators.iter().enumerate() {
        let field = |name: &str| format!("oscillators[{i}].{name}");
        if !(osc.omega.abs() > 0.0) {
            return Err(Error::invalid(&field("omega"), "|omega| must be > 0"));
        }
        if !(osc.gamma >= 0.0) {
            return Err(Error::invalid(&field("gamma"), "must be >= 0"));
        }
        if !(osc.g > 0.0) {
            return Err(Error::invalid(&field("g"), "must be > 0"));
        }
        if !(osc.nu >= 0.0) {
            return Err(Error::invalid(&field("nu"), "must be >= 0"));
        }
        if !(osc.sigma >= 0.0) {
            return Err(Error::invalid(&field("sigma"), "must be >= 0"));
        }
        if !(osc.extra_diffusion >= 0.0) {
            return Err(Error::invalid(&field("extra_diffusion"), "must be >= 0"));
        }
        if osc.omega.abs() < 10.0 * osc.gamma {
            warnings.push(format!(
                "oscillators[{i}]: |omega| = {:.3e} < 10 gamma = {:.3e}; high-Q assumption marginal",
                osc.omega.abs(),
                10.0 * osc.gamma
            ));
        }
        let (g_eff, phi) = sideband_correction(osc, cav).map_err(|e| match e {
            Error::ResolvedSideband { kappa, gamma, .. } => Error::ResolvedSideband {
                index: i,
                kappa,
                gamma,
            },
            other => other,
        })?;
        let backaction_rate = 4.0 * cav.nbar * g_eff * g_eff / cav.kappa;
        let cooperativity = if osc.gamma > 0.0 {
            Some(backaction_rate / osc.gamma)
        } else {
            None
        };
        derived.push(OscillatorDerived {
            g_eff,
            phi,
            cooperativity,
            backaction_rate,
            thermal_intensity: osc.gamma * (osc.nu + 0.5) + osc.extra_diffusion,
        });
    }

    let grid = &config.grid;
    let nt = (grid.fs * grid.tf).round() as usize;
    if grid.nt != nt {
        return Err(Error::invalid(
            "grid.nt",
            format!("must equal round(fs * tf) = {nt}"),
        ));
    }
    if nt < 2 {
        return Err(Error::invalid("grid.nt", "must be >= 2"));
    }
    let f_max = config
        .oscillators
        .iter()
        .map(|o| o.omega.abs())
        .fold(0.0, f64::max)
        / (2.0 * PI);
    if !(grid.fs > 20.0 * f_max) {
        return Err(Error::invalid(
            "grid.fs",
            format!("must exceed 20 * max|omega|/2pi = {:.3e} Hz", 20.0 * f_max),
        ));
    }

    let psn = shot_noise_psd(cav)?;

    let mut resolution = Vec::new();
    for i in 0..config.oscillators.len() {
        for j in (i + 1)..config.oscillators.len() {
            let a = &config.oscillators[i];
            let b = &config.oscillators[j];
            let mean_gamma = 0.5 * (a.gamma + b.gamma);
            let ratio = if mean_gamma > 0.0 {
                (a.omega - b.omega).abs() / mean_gamma
            } else {
                f64::INFINITY
            };
            resolution.push((i, j, ratio));
        }
    }

    Ok(System {
        config,
        derived,
        psn,
        resolution,
        warnings,
    })
}

// ---------------------------------------------------------------------------
// Configuration files
// ---------------------------------------------------------------------------

/// On-disk configuration document. All frequency-like quantities are given in
/// Hz and converted internally as `value * 2 * pi`.
///
/// Two ways to set the measurement strength per oscillator:
/// - explicit `g_hz`, with `kappa_hz` and `nbar` describing the real cavity;
/// - `cooperativity`, in which case `g_hz` is back-solved from
///   `C = 4 nbar g_eff^2 / (kappa gamma)` using the (possibly defaulted)
///   cavity parameters. This covers configurations quoted cooperativity-first,
///   where `nbar g^2 / kappa` is not known individually.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigFile {
    pub cavity: CavityFile,
    pub oscillators: Vec<OscillatorFile>,
    pub grid: GridFile,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CavityFile {
    /// Cavity half-linewidth (Hz). Defaults to 500 MHz, deep in the
    /// unresolved-sideband regime, for cooperativity-first configs.
    #[serde(default = "default_kappa_hz")]
    pub kappa_hz: f64,
    /// Mean intracavity photon number. Defaults to 1 for cooperativity-first
    /// configs (only the combination `nbar g^2 / kappa` matters).
    #[serde(default = "default_nbar")]
    pub nbar: f64,
    pub epsilon: f64,
}

fn default_kappa_hz() -> f64 {
    5.0e8
}

fn default_nbar() -> f64 {
    1.0
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OscillatorFile {
    /// Oscillator frequency (Hz, signed; negative for negative-mass modes).
    pub omega_hz: f64,
    /// Energy damping rate (Hz).
    pub gamma_hz: f64,
    /// Coupling rate (Hz). Exactly one of `g_hz` and `cooperativity` must be
    /// present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_hz: Option<f64>,
    /// Requested effective cooperativity; `g_hz` is back-solved.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cooperativity: Option<f64>,
    #[serde(default)]
    pub nu: f64,
    /// Shot-to-shot frequency fluctuation std (Hz).
    #[serde(default)]
    pub sigma_hz: f64,
    /// Additional incoherent quadrature diffusion rate (Hz).
    #[serde(default)]
    pub extra_diffusion_hz: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridFile {
    pub fs_hz: f64,
    pub tf_s: f64,
}

impl ConfigFile {
    /// Parse a JSON config document.
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Convert to internal rad/s units, back-solving couplings given
    /// cooperativity-first, and validate.
    pub fn build(&self) -> Result<System> {
        let two_pi = 2.0 * PI;
        let cavity = CavityParams {
            kappa: self.cavity.kappa_hz * two_pi,
            nbar: self.cavity.nbar,
            epsilon: self.cavity.epsilon,
        };
        let mut oscillators = Vec::with_capacity(self.oscillators.len());
        for (i, o) in self.oscillators.iter().enumerate() {
            let omega = o.omega_hz * two_pi;
            let gamma = o.gamma_hz * two_pi;
            let g = match (o.g_hz, o.cooperativity) {
                (Some(g_hz), None) => g_hz * two_pi,
                (None, Some(coop)) => {
                    if gamma <= 0.0 {
                        return Err(Error::UndampedCooperativity { index: i });
                    }
                    if !(coop > 0.0) {
                        return Err(Error::invalid(
                            &format!("oscillators[{i}].cooperativity"),
                            "must be > 0",
                        ));
                    }
                    // Solve C = 4 nbar g_eff^2 / (kappa gamma) for the bare g,
                    // undoing the sideband reduction so the effective
                    // cooperativity comes out exactly as requested.
                    let g_eff = (coop * cavity.kappa * gamma / (4.0 * cavity.nbar)).sqrt();
                    let ratio = omega / cavity.kappa;
                    g_eff * (1.0 + ratio * ratio).sqrt()
                }
                (Some(_), Some(_)) => {
                    return Err(Error::invalid(
                        &format!("oscillators[{i}]"),
                        "give either g_hz or cooperativity, not both",
                    ))
                }
                (None, None) => {
                    return Err(Error::invalid(
                        &format!("oscillators[{i}]"),
                        "one of g_hz or cooperativity is required",
                    ))
                }
            };
            oscillators.push(OscillatorParams {
                omega,
                gamma,
                g,
                nu: o.nu,
                sigma: o.sigma_hz * two_pi,
                extra_diffusion: o.extra_diffusion_hz * two_pi,
            });
        }
        let grid = SamplingGrid::new(self.grid.fs_hz, self.grid.tf_s);
        validate(SystemConfig {
            cavity,
            oscillators,
            grid,
        })
    }
}

/// Convenience: a validated single- or multi-oscillator system specified
/// cooperativity-first with an ideal wideband cavity. Used heavily in tests
/// and sweeps.
pub fn cooperativity_first(
    oscillators: &[(f64, f64, f64, f64)], // (omega, gamma, cooperativity, nu), rad/s
    epsilon: f64,
    fs: f64,
    tf: f64,
) -> Result<System> {
    let kappa = default_kappa_hz() * 2.0 * PI;
    let nbar = default_nbar();
    let oscillators = oscillators
        .iter()
        .map(|&(omega, gamma, coop, nu)| {
            let g_eff = (coop * kappa * gamma / (4.0 * nbar)).sqrt();
            let ratio = omega / kappa;
            Ok(OscillatorParams::new(
                omega,
                gamma,
                g_eff * (1.0 + ratio * ratio).sqrt(),
                nu,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    validate(SystemConfig {
        cavity: CavityParams {
            kappa,
            nbar,
            epsilon,
        },
        oscillators,
        grid: SamplingGrid::new(fs, tf),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn unit_cavity() -> CavityParams {
        CavityParams {
            kappa: 1.0,
            nbar: 1.0,
            epsilon: 1.0,
        }
    }

    #[test]
    fn cooperativity_unit_parameters() {
        // C = 4 nbar g^2 / (kappa Gamma): unit substitutions give 4 when
        // nbar g^2 = kappa Gamma; checked in the wideband regime where the
        // sideband correction is exact.
        let cav = CavityParams {
            kappa: 1.0,
            nbar: 1.0,
            epsilon: 1.0,
        };
        let gamma = 1e-3;
        let g4 = (4.0_f64 * cav.kappa * gamma / (4.0 * cav.nbar)).sqrt();
        let osc4 = OscillatorParams::new(1e-6, gamma, g4, 0.0);
        assert_relative_eq!(cooperativity(&osc4, &cav).unwrap(), 4.0, max_relative = 1e-9);
        // the resolved-sideband regime is rejected outright
        let osc_bad = OscillatorParams::new(1.0, 1e-3, 1e-3, 0.0);
        let cav_bad = CavityParams {
            kappa: 1e-3,
            nbar: 1.0,
            epsilon: 1.0,
        };
        assert!(sideband_correction(&osc_bad, &cav_bad).is_err());
    }

    #[test]
    fn cooperativity_low_for_calibrated_spin_parameters() {
        // g = 2pi*18 kHz, nbar = 2.6, with kappa and gamma such that the
        // regime is low-cooperativity.
        let two_pi = 2.0 * PI;
        let osc = OscillatorParams::new(two_pi * 111e3, two_pi * 2.4e3, two_pi * 18e3, 0.0);
        let cav = CavityParams {
            kappa: two_pi * 10e6,
            nbar: 2.6,
            epsilon: 0.2,
        };
        let c = cooperativity(&osc, &cav).unwrap();
        assert!(c < 1.0, "expected low cooperativity, got {c}");
    }

    #[test]
    fn cooperativity_round_trips_through_backsolved_coupling() {
        // omega = 2pi*125 kHz, gamma = 2pi*2 kHz, nbar g^2/kappa tuned for C = 3.
        let two_pi = 2.0 * PI;
        let sys = cooperativity_first(
            &[(two_pi * 125e3, two_pi * 2e3, 3.0, 1.0)],
            1.0,
            5e6,
            2e-3,
        )
        .unwrap();
        assert_relative_eq!(
            sys.derived[0].cooperativity.unwrap(),
            3.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn cooperativity_undefined_for_undamped() {
        let osc = OscillatorParams::new(1.0, 0.0, 1.0, 0.0);
        assert!(matches!(
            cooperativity(&osc, &unit_cavity()),
            Err(Error::UndampedCooperativity { .. })
        ));
    }

    #[test]
    fn shot_noise_identity_normalization() {
        // epsilon = 1, nbar = kappa/8 -> P_SN = 1.
        let cav = CavityParams {
            kappa: 8.0,
            nbar: 1.0,
            epsilon: 1.0,
        };
        assert_abs_diff_eq!(shot_noise_psd(&cav).unwrap(), 1.0);
    }

    #[test]
    fn shot_noise_halving_efficiency_doubles_floor() {
        let mut cav = CavityParams {
            kappa: 2.0 * PI * 1e6,
            nbar: 1e4,
            epsilon: 1.0,
        };
        let p1 = shot_noise_psd(&cav).unwrap();
        cav.epsilon = 0.5;
        let p2 = shot_noise_psd(&cav).unwrap();
        assert_relative_eq!(p2, 2.0 * p1, max_relative = 1e-12);
    }

    #[test]
    fn shot_noise_direct_evaluation() {
        // kappa = 2pi*1 MHz, epsilon = 0.5, nbar = 1e4:
        // P_SN = 2pi*1e6/(8*0.5*1e4) = 2pi*25 = 157.0796...
        let cav = CavityParams {
            kappa: 2.0 * PI * 1e6,
            nbar: 1e4,
            epsilon: 0.5,
        };
        assert_relative_eq!(
            shot_noise_psd(&cav).unwrap(),
            157.07963267948966,
            max_relative = 1e-12
        );
    }

    #[test]
    fn shot_noise_requires_probe_light() {
        let cav = CavityParams {
            kappa: 1.0,
            nbar: 0.0,
            epsilon: 1.0,
        };
        assert!(matches!(shot_noise_psd(&cav), Err(Error::NoProbeLight)));
    }

    #[test]
    fn sideband_zero_frequency_identity() {
        let osc = OscillatorParams::new(0.0, 1e-3, 3.0, 0.0);
        let (g_eff, phi) = sideband_correction(&osc, &unit_cavity()).unwrap();
        assert_abs_diff_eq!(g_eff, 3.0);
        assert_abs_diff_eq!(phi, 0.0);
    }

    #[test]
    fn sideband_symmetry_point() {
        // omega = kappa -> (g/sqrt(2), pi/4).
        let osc = OscillatorParams::new(1.0, 1e-3, 2.0, 0.0);
        let (g_eff, phi) = sideband_correction(&osc, &unit_cavity()).unwrap();
        assert_relative_eq!(g_eff, 2.0 / 2.0f64.sqrt(), max_relative = 1e-12);
        assert_relative_eq!(phi, PI / 4.0, max_relative = 1e-12);
    }

    #[test]
    fn sideband_direct_evaluation() {
        // omega = 2pi*125 kHz, kappa = 2pi*5 MHz.
        let two_pi = 2.0 * PI;
        let osc = OscillatorParams::new(two_pi * 125e3, two_pi * 2e3, 1.0, 0.0);
        let cav = CavityParams {
            kappa: two_pi * 5e6,
            nbar: 1.0,
            epsilon: 1.0,
        };
        let (g_eff, phi) = sideband_correction(&osc, &cav).unwrap();
        assert_relative_eq!(g_eff, 0.9996876464081226, max_relative = 1e-12);
        assert_relative_eq!(phi, 0.024_994_793_618_920_16, max_relative = 1e-12);
    }

    #[test]
    fn sideband_rejects_resolved_regime() {
        let osc = OscillatorParams::new(1.0, 0.5, 1.0, 0.0);
        assert!(matches!(
            sideband_correction(&osc, &unit_cavity()),
            Err(Error::ResolvedSideband { .. })
        ));
    }

    fn two_mode_config() -> SystemConfig {
        let two_pi = 2.0 * PI;
        SystemConfig {
            cavity: CavityParams {
                kappa: two_pi * 5e6,
                nbar: 1e4,
                epsilon: 1.0,
            },
            oscillators: vec![
                OscillatorParams::new(two_pi * 125e3, two_pi * 2e3, two_pi * 1e3, 1.0),
                OscillatorParams::new(two_pi * 135e3, two_pi * 2e3, two_pi * 1e3, 1.0),
            ],
            grid: SamplingGrid::new(5e6, 2e-3),
        }
    }

    #[test]
    fn validate_reports_resolution_and_sample_count() {
        let sys = validate(two_mode_config()).unwrap();
        assert_eq!(sys.config.grid.nt, 10_000);
        assert_eq!(sys.resolution.len(), 1);
        let (_, _, ratio) = sys.resolution[0];
        assert_relative_eq!(ratio, 5.0, max_relative = 1e-12);
    }

    #[test]
    fn validate_rejects_bad_epsilon_by_name() {
        let mut config = two_mode_config();
        config.cavity.epsilon = -0.5;
        let err = validate(config).unwrap_err();
        assert!(err.to_string().contains("epsilon"), "got: {err}");
    }

    #[test]
    fn validate_is_idempotent() {
        let sys = validate(two_mode_config()).unwrap();
        let again = validate(sys.config.clone()).unwrap();
        assert_eq!(sys, again);
    }

    #[test]
    fn validate_warns_on_low_quality_factor() {
        let two_pi = 2.0 * PI;
        let config = SystemConfig {
            cavity: CavityParams {
                kappa: two_pi * 5e6,
                nbar: 100.0,
                epsilon: 1.0,
            },
            oscillators: vec![OscillatorParams::new(
                two_pi * 10e3,
                two_pi * 2e3,
                two_pi * 1e3,
                0.0,
            )],
            grid: SamplingGrid::new(5e6, 1e-3),
        };
        let sys = validate(config).unwrap();
        assert_eq!(sys.warnings.len(), 1);
    }

    #[test]
    fn config_file_units_and_cooperativity_mode() {
        let text = r#"{
            "cavity": {"epsilon": 1.0},
            "oscillators": [
                {"omega_hz": 125e3, "gamma_hz": 2e3, "cooperativity": 3.0, "nu": 1.0}
            ],
            "grid": {"fs_hz": 5e6, "tf_s": 2e-3}
        }"#;
        let sys = ConfigFile::from_json(text).unwrap().build().unwrap();
        assert_relative_eq!(
            sys.config.oscillators[0].omega,
            2.0 * PI * 125e3,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            sys.derived[0].cooperativity.unwrap(),
            3.0,
            max_relative = 1e-12
        );
        assert_eq!(sys.config.grid.nt, 10_000);
    }

    #[test]
    fn config_file_rejects_double_coupling_spec() {
        let text = r#"{
            "cavity": {"epsilon": 1.0},
            "oscillators": [
                {"omega_hz": 125e3, "gamma_hz": 2e3, "g_hz": 1e3, "cooperativity": 3.0}
            ],
            "grid": {"fs_hz": 5e6, "tf_s": 2e-3}
        }"#;
        assert!(ConfigFile::from_json(text).unwrap().build().is_err());
    }

    #[test]
    fn cooperativity_identity_against_formula() {
        // C(nbar, g, kappa, gamma) * kappa*gamma/(4 nbar) = g_eff^2.
        let two_pi = 2.0 * PI;
        let osc = OscillatorParams::new(two_pi * 125e3, two_pi * 2e3, two_pi * 7.3e3, 0.3);
        let cav = CavityParams {
            kappa: two_pi * 5e6,
            nbar: 42.0,
            epsilon: 0.7,
        };
        let c = cooperativity(&osc, &cav).unwrap();
        let (g_eff, _) = sideband_correction(&osc, &cav).unwrap();
        assert_relative_eq!(
            c * cav.kappa * osc.gamma / (4.0 * cav.nbar),
            g_eff * g_eff,
            max_relative = 1e-12
        );
    }
}
