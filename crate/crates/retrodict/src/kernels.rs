//! Closed-form two-time correlation kernels of the oscillator diffusion
//! response.
//!
//! The accumulated diffusion of oscillator `k`, observed through its
//! quadrature response, correlates between two times as
//!
//! ```text
//! R_kl(t, t') = Int_0^inf  r_k(t - tau) . r_l(t' - tau)  d tau
//! ```
//!
//! with `r_i(t) = exp(-Gamma_i t / 2) (cos w_i t, sin w_i t) Theta(t)`. In
//! terms of the complex response `rho_i(t) = exp(-(Gamma_i/2 + i w_i) t)
//! Theta(t)` the integrand is `Re[conj(rho_k(t - tau)) rho_l(t' - tau)]`, and
//! the integral evaluates in closed form to
//!
//! ```text
//! R_kl(t, t') = Re[ conj(rho_k(t)) rho_l(t') (exp(s u) - 1) / s ],
//! s = (Gamma_k + Gamma_l)/2 - i (w_k - w_l),   u = min(t, t'),
//! ```
//!
//! which is exact for all `t, t' >= 0` (in particular `R(t, 0) = 0`) and
//! remains finite in the degenerate limit `s -> 0` through the series form of
//! `(exp(su) - 1)/s`. On the diagonal it reduces to the familiar
//! `R_kk(t, t) = (1 - exp(-Gamma t)) / Gamma`. The equivalent form
//! `Re[(conj(rho_k)(t-t') + rho_l(t'-t) - conj(rho_k)(t) rho_l(t')) / s]`
//! holds for `t, t' > 0` provided the Heaviside convention `Theta(0) = 1/2`;
//! the product form above is what the crate evaluates.
//!
//! The backaction bath drives only the momentum-like quadrature, so its
//! estimate covariance needs the sine-component kernel
//! `R^ss_kl(t,t') = Int r_{k,2}(t-tau) r_{l,2}(t'-tau) d tau`, which splits
//! into the counter-rotating kernel above minus a co-rotating partner with
//! `s+ = (Gamma_k + Gamma_l)/2 + i (w_k + w_l)`:
//! `R^ss = (R - R+) / 2`.
//!
//! A sideband phase delay `phi_i` rotates the measured response; it enters
//! these kernels only as constant phase factors, carried by [`OscMode::phi`].
//! Shot-to-shot Gaussian frequency jitter of width `sigma_i` produces the
//! dephasing-envelope (broadened) variants, valid for small `sigma` relative
//! to the frequency splittings.

use num_complex::Complex64;

/// Minimal oscillator description the kernels need.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscMode {
    /// Energy damping rate (rad/s, >= 0).
    pub gamma: f64,
    /// Signed angular frequency (rad/s).
    pub omega: f64,
    /// Sideband phase delay (rad).
    pub phi: f64,
    /// Shot-to-shot frequency fluctuation std (rad/s).
    pub sigma: f64,
}

impl OscMode {
    pub fn new(gamma: f64, omega: f64) -> Self {
        Self {
            gamma,
            omega,
            phi: 0.0,
            sigma: 0.0,
        }
    }

    /// Complex response `rho(t)` with `Theta(0) = 1/2`.
    pub fn rho(&self, t: f64) -> Complex64 {
        if t < 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let amp = (-0.5 * self.gamma * t).exp();
        let c = Complex64::from_polar(amp, -self.omega * t);
        if t == 0.0 {
            0.5 * c
        } else {
            c
        }
    }

    /// Dephasing-averaged response `<rho(t)>` for Gaussian frequency jitter.
    pub fn rho_mean(&self, t: f64) -> Complex64 {
        self.rho(t) * (-0.5 * self.sigma * self.sigma * t * t).exp()
    }
}

/// `(exp(s u) - 1) / s`, evaluated as `u (exp(z) - 1) / z` with `z = s u` so
/// the degenerate limit `s -> 0` is smooth.
pub(crate) fn growth(s: Complex64, u: f64) -> Complex64 {
    let z = s * u;
    if z.norm() < 1e-5 {
        // (e^z - 1)/z = 1 + z/2 + z^2/6 + z^3/24 + ...
        u * (Complex64::new(1.0, 0.0) + z * 0.5 + z * z / 6.0 + z * z * z / 24.0)
    } else {
        u * (z.exp() - Complex64::new(1.0, 0.0)) / z
    }
}

pub(crate) fn s_counter(k: &OscMode, l: &OscMode) -> Complex64 {
    Complex64::new(0.5 * (k.gamma + l.gamma), -(k.omega - l.omega))
}

pub(crate) fn s_co(k: &OscMode, l: &OscMode) -> Complex64 {
    Complex64::new(0.5 * (k.gamma + l.gamma), k.omega + l.omega)
}

/// Full response correlation `R_kl(t, t')` (both quadrature components).
pub fn response_correlation(k: &OscMode, l: &OscMode, t: f64, tp: f64) -> f64 {
    if t <= 0.0 || tp <= 0.0 {
        return 0.0;
    }
    let u = t.min(tp);
    let phase = Complex64::from_polar(1.0, l.phi - k.phi);
    (phase * k.rho(t).conj() * l.rho(tp) * growth(s_counter(k, l), u)).re
}

/// Co-rotating partner kernel, `Int Re[rho_k(t-tau) rho_l(t'-tau)] d tau`.
pub fn corotating_correlation(k: &OscMode, l: &OscMode, t: f64, tp: f64) -> f64 {
    if t <= 0.0 || tp <= 0.0 {
        return 0.0;
    }
    let u = t.min(tp);
    let phase = Complex64::from_polar(1.0, k.phi + l.phi);
    (phase * k.rho(t) * l.rho(tp) * growth(s_co(k, l), u)).re
}

/// Sine-component (momentum-drive) kernel `R^ss_kl = (R_kl - R+_kl) / 2`.
pub fn sine_correlation(k: &OscMode, l: &OscMode, t: f64, tp: f64) -> f64 {
    0.5 * (response_correlation(k, l, t, tp) - corotating_correlation(k, l, t, tp))
}

/// Broadened response correlation `<R_kl(t, t')>` over Gaussian frequency
/// jitter, in the small-`sigma` approximation: the numerator of the
/// difference form is averaged term by term while the denominator keeps the
/// mean frequencies. `same` marks `k` and `l` as the same physical
/// oscillator, whose jitter is common to both responses. Requires
/// `sigma_k + sigma_l << |w_k - w_l|` for distinct oscillators; callers are
/// expected to check [`broadening_ratio`].
pub fn broadened_response_correlation(
    k: &OscMode,
    l: &OscMode,
    same: bool,
    t: f64,
    tp: f64,
) -> f64 {
    if t <= 0.0 || tp <= 0.0 {
        return 0.0;
    }
    let d = t - tp;
    let cross = if same {
        // common frequency draw: <exp(i w (t - t'))> phases only the lag
        k.rho(t).conj() * l.rho(tp) * (-0.5 * k.sigma * k.sigma * d * d).exp()
    } else {
        k.rho_mean(t).conj() * l.rho_mean(tp)
    };
    let num = k.rho_mean(d).conj() + l.rho_mean(-d) - cross;
    let phase = Complex64::from_polar(1.0, l.phi - k.phi);
    (phase * num / s_counter(k, l)).re
}

/// Broadened co-rotating partner kernel, averaged in the same small-`sigma`
/// approximation.
pub fn broadened_corotating_correlation(
    k: &OscMode,
    l: &OscMode,
    same: bool,
    t: f64,
    tp: f64,
) -> f64 {
    if t <= 0.0 || tp <= 0.0 {
        return 0.0;
    }
    let d = t - tp;
    let cross = if same {
        let sum = t + tp;
        k.rho(t) * l.rho(tp) * (-0.5 * k.sigma * k.sigma * sum * sum).exp()
    } else {
        k.rho_mean(t) * l.rho_mean(tp)
    };
    let num = k.rho_mean(d) + l.rho_mean(-d) - cross;
    let phase = Complex64::from_polar(1.0, k.phi + l.phi);
    (phase * num / s_co(k, l)).re
}

/// Broadened sine-component kernel `( <R> - <R+> ) / 2`.
pub fn broadened_sine_correlation(k: &OscMode, l: &OscMode, same: bool, t: f64, tp: f64) -> f64 {
    0.5 * (broadened_response_correlation(k, l, same, t, tp)
        - broadened_corotating_correlation(k, l, same, t, tp))
}

/// Ratio `(sigma_k + sigma_l) / |w_k - w_l|` gating the broadened
/// approximation for distinct oscillators.
pub fn broadening_ratio(k: &OscMode, l: &OscMode) -> f64 {
    let dw = (k.omega - l.omega).abs();
    if dw == 0.0 {
        f64::INFINITY
    } else {
        (k.sigma + l.sigma) / dw
    }
}

// ---------------------------------------------------------------------------
// Quadrature oracle
// ---------------------------------------------------------------------------

/// Direct numerical integration of the defining kernel integral; slow
/// reference used to validate the closed forms. Composite Gauss-Legendre on
/// `[0, min(t, t')]` with panel count adapted to the oscillation rate.
pub fn response_correlation_quadrature(k: &OscMode, l: &OscMode, t: f64, tp: f64) -> f64 {
    let phase = Complex64::from_polar(1.0, l.phi - k.phi);
    integrate_kernel(t, tp, k, l, move |k, l, a, b| {
        (phase * k.rho(a).conj() * l.rho(b)).re
    })
}

/// Quadrature oracle for the sine-component kernel.
pub fn sine_correlation_quadrature(k: &OscMode, l: &OscMode, t: f64, tp: f64) -> f64 {
    let phik = k.phi;
    let phil = l.phi;
    integrate_kernel(t, tp, k, l, move |k, l, a, b| {
        let rk = -(Complex64::from_polar(1.0, phik) * k.rho(a)).im;
        let rl = -(Complex64::from_polar(1.0, phil) * l.rho(b)).im;
        rk * rl
    })
}

fn integrate_kernel<F>(t: f64, tp: f64, k: &OscMode, l: &OscMode, f: F) -> f64
where
    F: Fn(&OscMode, &OscMode, f64, f64) -> f64,
{
    let upper = t.min(tp);
    if upper <= 0.0 {
        return 0.0;
    }
    // Gauss-Legendre 8-point nodes and weights on [-1, 1].
    const NODES: [f64; 8] = [
        -0.9602898564975363,
        -0.7966664774136267,
        -0.525_532_409_916_329,
        -0.1834346424956498,
        0.1834346424956498,
        0.525_532_409_916_329,
        0.7966664774136267,
        0.9602898564975363,
    ];
    const WEIGHTS: [f64; 8] = [
        0.1012285362903763,
        0.2223810344533745,
        0.3137066458778873,
        0.362_683_783_378_362,
        0.362_683_783_378_362,
        0.3137066458778873,
        0.2223810344533745,
        0.1012285362903763,
    ];
    let rate = k.omega.abs() + l.omega.abs() + k.gamma + l.gamma;
    let panels = ((rate * upper / std::f64::consts::PI).ceil() as usize * 4).clamp(64, 200_000);
    let h = upper / panels as f64;
    let mut acc = 0.0;
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * h;
        for (x, w) in NODES.iter().zip(WEIGHTS.iter()) {
            let tau = mid + 0.5 * h * x;
            acc += w * f(k, l, t - tau, tp - tau);
        }
    }
    acc * 0.5 * h
}
