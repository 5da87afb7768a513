//! Gaussian states of `N` oscillator modes in the `2N`-dimensional quadrature
//! phase space.
//!
//! Conventions: `hbar = 1`, `[X, P] = i`, vacuum variance `1/2` per
//! quadrature, quadrature ordering `(X_1, P_1, X_2, P_2, ...)`. States are
//! immutable; sampling takes an explicit RNG so ensembles stay reproducible.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// Relative tolerance (times the covariance trace) below which negative
/// factorization eigenvalues are clipped to zero rather than rejected.
const PSD_CLIP_TOL: f64 = 1e-10;

/// A Gaussian state: quadrature mean vector and symmetric covariance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    mean: DVector<f64>,
    cov: DMatrix<f64>,
}

impl GaussianState {
    /// Build from a mean vector and covariance matrix. The covariance must be
    /// square, matching the mean length, and symmetric to machine precision.
    pub fn new(mean: DVector<f64>, cov: DMatrix<f64>) -> Result<Self> {
        let n = mean.len();
        if cov.nrows() != n || cov.ncols() != n || !n.is_multiple_of(2) || n == 0 {
            return Err(Error::Mismatch(format!(
                "covariance {}x{} does not match 2N mean length {}",
                cov.nrows(),
                cov.ncols(),
                n
            )));
        }
        let scale = cov.abs().max().max(1e-300);
        for i in 0..n {
            for j in 0..i {
                if (cov[(i, j)] - cov[(j, i)]).abs() > 1e-12 * scale {
                    return Err(Error::Mismatch(format!(
                        "covariance not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(Self { mean, cov })
    }

    /// Number of modes `N`.
    pub fn n_modes(&self) -> usize {
        self.mean.len() / 2
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn cov(&self) -> &DMatrix<f64> {
        &self.cov
    }

    /// Vacuum of `n_modes` oscillators.
    pub fn vacuum(n_modes: usize) -> Self {
        thermal_state(&vec![0.0; n_modes]).expect("vacuum occupations are valid")
    }

    /// Symplectic eigenvalues, one per mode, in descending order. A physical
    /// state has all of them `>= 1/2`.
    ///
    /// Computed as the paired singular values of `L J L`, where `L` is the
    /// symmetric square root of the covariance and `J` the symplectic form.
    pub fn symplectic_eigenvalues(&self) -> Vec<f64> {
        symplectic_eigenvalues(&self.cov)
    }

    /// Minimum symplectic eigenvalue; `>= 1/2` for a physical state.
    pub fn min_symplectic_eigenvalue(&self) -> f64 {
        self.symplectic_eigenvalues()
            .into_iter()
            .fold(f64::INFINITY, f64::min)
    }

    /// Strict physicality check: every symplectic eigenvalue at least
    /// `1/2 - tol`.
    pub fn is_physical(&self, tol: f64) -> bool {
        self.min_symplectic_eigenvalue() >= 0.5 - tol
    }

    /// Draw one phase-space point from the multivariate normal
    /// `(mean, cov)`, via a symmetric eigendecomposition of the covariance.
    /// Eigenvalues more negative than `-1e-10 * trace` are rejected; small
    /// negatives within that tolerance are clipped to zero, so semi-definite
    /// covariances (including `cov = 0`) sample exactly.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<DVector<f64>> {
        let factor = self.factor()?;
        let n = self.mean.len();
        let z = DVector::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal));
        Ok(&self.mean + factor * z)
    }

    /// Draw `count` points, reusing one factorization.
    pub fn sample_many<R: Rng + ?Sized>(
        &self,
        count: usize,
        rng: &mut R,
    ) -> Result<Vec<DVector<f64>>> {
        let factor = self.factor()?;
        let n = self.mean.len();
        Ok((0..count)
            .map(|_| {
                let z = DVector::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal));
                &self.mean + &factor * z
            })
            .collect())
    }

    fn factor(&self) -> Result<DMatrix<f64>> {
        let eig = self.cov.clone().symmetric_eigen();
        let tol = PSD_CLIP_TOL * self.cov.trace().abs().max(f64::MIN_POSITIVE);
        let n = self.mean.len();
        let mut scaled = eig.eigenvectors.clone();
        for (j, &lam) in eig.eigenvalues.iter().enumerate() {
            if lam < -tol {
                return Err(Error::Factorization(format!(
                    "covariance not PSD within tolerance {tol:.3e}: eigenvalue {lam:.3e}"
                )));
            }
            let s = lam.max(0.0).sqrt();
            for i in 0..n {
                scaled[(i, j)] *= s;
            }
        }
        Ok(scaled)
    }

    /// Serialize as `{"mean": [...], "cov": [[...]]}` in the fixed
    /// `(X_1, P_1, ...)` ordering.
    pub fn to_json(&self) -> String {
        let n = self.mean.len();
        let doc = StateDoc {
            mean: self.mean.iter().copied().collect(),
            cov: (0..n)
                .map(|i| (0..n).map(|j| self.cov[(i, j)]).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("state serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: StateDoc = serde_json::from_str(text)?;
        let n = doc.mean.len();
        if doc.cov.len() != n || doc.cov.iter().any(|row| row.len() != n) {
            return Err(Error::Mismatch("ragged covariance".into()));
        }
        let cov = DMatrix::from_fn(n, n, |i, j| doc.cov[i][j]);
        Self::new(DVector::from_vec(doc.mean), cov)
    }
}

#[derive(Serialize, Deserialize)]
struct StateDoc {
    mean: Vec<f64>,
    cov: Vec<Vec<f64>>,
}

/// Symplectic eigenvalues of a covariance matrix (one per mode, descending).
pub fn symplectic_eigenvalues(cov: &DMatrix<f64>) -> Vec<f64> {
    let n = cov.nrows();
    let n_modes = n / 2;
    // Symmetric square root of the covariance.
    let eig = cov.clone().symmetric_eigen();
    let mut root = eig.eigenvectors.clone();
    for (j, &lam) in eig.eigenvalues.iter().enumerate() {
        let s = lam.max(0.0).sqrt();
        for i in 0..n {
            root[(i, j)] *= s;
        }
    }
    let sqrt_cov = &root * eig.eigenvectors.transpose();
    // Symplectic form J: per-mode blocks [[0, 1], [-1, 0]].
    let mut j_form = DMatrix::zeros(n, n);
    for m in 0..n_modes {
        j_form[(2 * m, 2 * m + 1)] = 1.0;
        j_form[(2 * m + 1, 2 * m)] = -1.0;
    }
    let k = &sqrt_cov * j_form * &sqrt_cov;
    // K is antisymmetric; its singular values pair up as the symplectic
    // eigenvalues.
    let mut sv: Vec<f64> = k.svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    (0..n_modes).map(|m| 0.5 * (sv[2 * m] + sv[2 * m + 1])).collect()
}

/// Thermal product state: zero mean, per-quadrature variance `nu_i + 1/2`.
pub fn thermal_state(nu_list: &[f64]) -> Result<GaussianState> {
    if nu_list.is_empty() {
        return Err(Error::Mismatch("need at least one mode".into()));
    }
    if let Some(nu) = nu_list.iter().find(|&&nu| nu < 0.0) {
        return Err(Error::invalid("nu", format!("must be >= 0, got {nu}")));
    }
    let n = 2 * nu_list.len();
    let mut cov = DMatrix::zeros(n, n);
    for (i, &nu) in nu_list.iter().enumerate() {
        cov[(2 * i, 2 * i)] = nu + 0.5;
        cov[(2 * i + 1, 2 * i + 1)] = nu + 0.5;
    }
    GaussianState::new(DVector::zeros(n), cov)
}

/// Single-mode squeezed (and displaced) state.
///
/// The squeeze parameter `zeta = r e^{i theta}` gives covariance eigenvalues
/// `exp(-2r)/2` and `exp(+2r)/2`, with the squeezed axis rotated by
/// `theta / 2` from the `X` axis. The displacement `alpha` sets the mean via
/// `<X> = sqrt(2) Re alpha`, `<P> = sqrt(2) Im alpha`. Pure state:
/// `det(cov) = 1/4` for every `zeta`.
pub fn single_mode_squeezed(zeta: Complex64, displacement: Complex64) -> GaussianState {
    let r = zeta.norm();
    let theta = if r > 0.0 { zeta.arg() } else { 0.0 };
    let ch = (2.0 * r).cosh();
    let sh = (2.0 * r).sinh();
    // cov = (1/2) [cosh(2r) I - sinh(2r) (cos(theta) sz + sin(theta) sx)]
    let cov = DMatrix::from_row_slice(
        2,
        2,
        &[
            0.5 * (ch - sh * theta.cos()),
            -0.5 * sh * theta.sin(),
            -0.5 * sh * theta.sin(),
            0.5 * (ch + sh * theta.cos()),
        ],
    );
    let mean = DVector::from_vec(vec![
        2.0_f64.sqrt() * displacement.re,
        2.0_f64.sqrt() * displacement.im,
    ]);
    GaussianState::new(mean, cov).expect("squeezed covariance is symmetric")
}

/// Two-mode squeezed vacuum with parameter `z = r e^{i theta}`.
///
/// Derived from the Bogoliubov transform `a_1 -> a_1 cosh r - e^{i theta}
/// a_2^dag sinh r` (and `1 <-> 2`) applied to vacuum:
/// single-mode blocks are `cosh(2r)/2 * I`; the cross block carries in-phase
/// `<X_1 X_2> = -sinh(2r)/2` correlations for real `z` and out-of-phase
/// `<X_1 P_2> = -sinh(2r)/2` correlations for imaginary `z`. Each mode seen
/// alone is thermal with effective occupation `sinh^2 r`.
pub fn two_mode_squeezed(z: Complex64) -> GaussianState {
    let r = z.norm();
    let theta = if r > 0.0 { z.arg() } else { 0.0 };
    let ch = (2.0 * r).cosh();
    let sh = (2.0 * r).sinh();
    let mut cov = DMatrix::zeros(4, 4);
    for q in 0..4 {
        cov[(q, q)] = 0.5 * ch;
    }
    let c = 0.5 * sh * theta.cos();
    let s = 0.5 * sh * theta.sin();
    // Cross block rows (X1, P1) x cols (X2, P2):
    //   [ -c  -s ]
    //   [ -s   c ]
    cov[(0, 2)] = -c;
    cov[(0, 3)] = -s;
    cov[(1, 2)] = -s;
    cov[(1, 3)] = c;
    cov[(2, 0)] = -c;
    cov[(3, 0)] = -s;
    cov[(2, 1)] = -s;
    cov[(3, 1)] = c;
    GaussianState::new(DVector::zeros(4), cov).expect("TMSS covariance is symmetric")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::streams::{stream, Purpose};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    /// Truncated-Fock oracle for single-mode squeezed vacuum moments.
    ///
    /// `S(zeta)|0> = cosh(r)^{-1/2} sum_n sqrt((2n)!)/(2^n n!)
    /// (-e^{i theta} tanh r)^n |2n>`; moments follow from ladder algebra on
    /// the truncated coefficient vector. Independent of the covariance
    /// construction above.
    fn fock_single_mode_moments(zeta: Complex64, dim: usize) -> (f64, f64, f64) {
        let r = zeta.norm();
        let theta = zeta.arg();
        let lambda = -Complex64::from_polar(r.tanh(), theta);
        let mut coeff = vec![Complex64::new(0.0, 0.0); dim];
        // ratio of successive even-photon amplitudes:
        // c_{2(n+1)} / c_{2n} = lambda * sqrt((2n+1)(2n+2)) / (2(n+1))
        let mut c = Complex64::new(1.0 / r.cosh().sqrt(), 0.0);
        let mut n = 0usize;
        while 2 * n < dim {
            coeff[2 * n] = c;
            let k = n as f64;
            c *= lambda * ((2.0 * k + 1.0) * (2.0 * k + 2.0)).sqrt() / (2.0 * (k + 1.0));
            n += 1;
        }
        // <a^2> = sum_m conj(c_{m-2}) c_m sqrt(m (m-1)); <n> = sum |c_m|^2 m
        let mut a2 = Complex64::new(0.0, 0.0);
        let mut nbar = 0.0;
        for m in 0..dim {
            nbar += coeff[m].norm_sqr() * m as f64;
            if m >= 2 {
                a2 += coeff[m - 2].conj() * coeff[m] * ((m * (m - 1)) as f64).sqrt();
            }
        }
        let xx = a2.re + nbar + 0.5;
        let pp = -a2.re + nbar + 0.5;
        let xp = a2.im;
        (xx, pp, xp)
    }

    /// Truncated-Fock oracle for two-mode squeezed vacuum cross moments.
    ///
    /// Schmidt form `|z> = sech(r) sum_n (-e^{i theta} tanh r)^n |n, n>`.
    /// Returns `(<n_1>, <X1 X2>, <P1 P2>, <X1 P2>)`.
    fn fock_two_mode_moments(z: Complex64, dim: usize) -> (f64, f64, f64, f64) {
        let r = z.norm();
        let theta = z.arg();
        let lambda = -Complex64::from_polar(r.tanh(), theta);
        let sech = 1.0 / r.cosh();
        let coeff: Vec<Complex64> = (0..dim)
            .map(|n| lambda.powi(n as i32) * sech)
            .collect();
        let mut n1 = 0.0;
        let mut a1a2 = Complex64::new(0.0, 0.0);
        for n in 0..dim {
            n1 += coeff[n].norm_sqr() * n as f64;
            if n >= 1 {
                // a1 a2 |n,n> = n |n-1, n-1>
                a1a2 += coeff[n - 1].conj() * coeff[n] * n as f64;
            }
        }
        // <a1 a2^dag> vanishes by the Schmidt structure.
        let x1x2 = a1a2.re;
        let p1p2 = -a1a2.re;
        let x1p2 = a1a2.im;
        (n1, x1x2, p1p2, x1p2)
    }

    #[test]
    fn thermal_vacuum_and_occupied() {
        let vac = thermal_state(&[0.0]).unwrap();
        assert_abs_diff_eq!(vac.cov()[(0, 0)], 0.5);
        assert_abs_diff_eq!(vac.cov()[(1, 1)], 0.5);

        let nu1 = thermal_state(&[1.0]).unwrap();
        assert_abs_diff_eq!(nu1.cov()[(0, 0)], 1.5);

        let two = thermal_state(&[1.0, 2.7]).unwrap();
        for (idx, want) in [(0, 1.5), (1, 1.5), (2, 3.2), (3, 3.2)] {
            assert_abs_diff_eq!(two.cov()[(idx, idx)], want, epsilon = 1e-15);
        }
        assert!(thermal_state(&[-0.1]).is_err());
    }

    #[test]
    fn squeezed_zero_parameter_is_vacuum() {
        let s = single_mode_squeezed(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        assert_abs_diff_eq!(s.cov()[(0, 0)], 0.5);
        assert_abs_diff_eq!(s.cov()[(1, 1)], 0.5);
        assert_abs_diff_eq!(s.cov()[(0, 1)], 0.0);
    }

    #[test]
    fn squeezed_minus_ten_db() {
        // e^{-2r} = 0.1 at r = ln(10)/2 ~ 1.1513.
        let r = 10.0_f64.ln() / 2.0;
        assert_relative_eq!(r, 1.151, max_relative = 1e-3);
        let s = single_mode_squeezed(Complex64::new(r, 0.0), Complex64::new(0.0, 0.0));
        assert_relative_eq!(s.cov()[(0, 0)], 0.05, max_relative = 1e-12);
        assert_relative_eq!(s.cov()[(1, 1)], 5.0, max_relative = 1e-12);
    }

    #[test]
    fn squeezed_rotation_against_fock_oracle() {
        // arg(zeta) = pi rotates the squeezed axis by pi/2 relative to
        // arg(zeta) = 0; verify all second moments against the oracle.
        let dim = 80;
        for theta in [0.0, std::f64::consts::PI, 0.7, -1.3] {
            let zeta = Complex64::from_polar(0.9, theta);
            let s = single_mode_squeezed(zeta, Complex64::new(0.0, 0.0));
            let (xx, pp, xp) = fock_single_mode_moments(zeta, dim);
            assert_relative_eq!(s.cov()[(0, 0)], xx, max_relative = 1e-9);
            assert_relative_eq!(s.cov()[(1, 1)], pp, max_relative = 1e-9);
            assert_abs_diff_eq!(s.cov()[(0, 1)], xp, epsilon = 1e-9);
        }
        let s0 = single_mode_squeezed(Complex64::new(0.9, 0.0), Complex64::new(0.0, 0.0));
        let spi = single_mode_squeezed(
            Complex64::from_polar(0.9, std::f64::consts::PI),
            Complex64::new(0.0, 0.0),
        );
        assert_relative_eq!(s0.cov()[(0, 0)], spi.cov()[(1, 1)], max_relative = 1e-12);
        assert_relative_eq!(s0.cov()[(1, 1)], spi.cov()[(0, 0)], max_relative = 1e-12);
    }

    #[test]
    fn squeezed_displacement_sets_mean() {
        let s = single_mode_squeezed(Complex64::new(0.5, 0.0), Complex64::new(1.0, -2.0));
        assert_relative_eq!(s.mean()[0], 2.0_f64.sqrt(), max_relative = 1e-12);
        assert_relative_eq!(s.mean()[1], -2.0 * 2.0_f64.sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn tmss_zero_is_two_mode_vacuum() {
        let s = two_mode_squeezed(Complex64::new(0.0, 0.0));
        assert_eq!(s.n_modes(), 2);
        for q in 0..4 {
            assert_abs_diff_eq!(s.cov()[(q, q)], 0.5);
        }
        assert_abs_diff_eq!(s.cov()[(0, 2)], 0.0);
    }

    #[test]
    fn tmss_real_parameter_in_phase_correlations() {
        let r = 0.8;
        let s = two_mode_squeezed(Complex64::new(r, 0.0));
        let sh = (2.0 * r).sinh() / 2.0;
        let ch = (2.0 * r).cosh() / 2.0;
        assert_relative_eq!(s.cov()[(0, 2)], -sh, max_relative = 1e-12);
        assert_relative_eq!(s.cov()[(1, 3)], sh, max_relative = 1e-12);
        assert_abs_diff_eq!(s.cov()[(0, 3)], 0.0);
        for q in 0..4 {
            assert_relative_eq!(s.cov()[(q, q)], ch, max_relative = 1e-12);
        }
        // cross-checked against the truncated-Fock oracle
        let (n1, x1x2, p1p2, x1p2) = fock_two_mode_moments(Complex64::new(r, 0.0), 120);
        assert_relative_eq!(s.cov()[(0, 2)], x1x2, max_relative = 1e-9);
        assert_relative_eq!(s.cov()[(1, 3)], p1p2, max_relative = 1e-9);
        assert_abs_diff_eq!(s.cov()[(0, 3)], x1p2, epsilon = 1e-9);
        assert_relative_eq!(
            s.cov()[(0, 0)] + s.cov()[(1, 1)],
            2.0 * (n1 + 0.5),
            max_relative = 1e-9
        );
    }

    #[test]
    fn tmss_imaginary_parameter_out_of_phase_correlations() {
        // z = 1.15i: per-mode effective occupation sinh^2(1.15) ~ 1.99, and
        // the correlations move entirely into <X1 P2> = <P1 X2>.
        let z = Complex64::new(0.0, 1.15);
        let s = two_mode_squeezed(z);
        let occ = (1.15_f64).sinh().powi(2);
        assert_relative_eq!(occ, 2.0186, max_relative = 1e-3);
        assert_relative_eq!(
            0.5 * (s.cov()[(0, 0)] + s.cov()[(1, 1)]) - 0.5,
            occ,
            max_relative = 1e-12
        );
        assert_abs_diff_eq!(s.cov()[(0, 2)], 0.0);
        assert_abs_diff_eq!(s.cov()[(1, 3)], 0.0);
        let want = -(2.3_f64).sinh() / 2.0;
        assert_relative_eq!(s.cov()[(0, 3)], want, max_relative = 1e-12);
        assert_relative_eq!(s.cov()[(1, 2)], want, max_relative = 1e-12);

        let (_, x1x2, p1p2, x1p2) = fock_two_mode_moments(z, 160);
        assert_abs_diff_eq!(x1x2, 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(p1p2, 0.0, epsilon = 1e-9);
        assert_relative_eq!(s.cov()[(0, 3)], x1p2, max_relative = 1e-7);
    }

    #[test]
    fn sample_zero_covariance_returns_mean() {
        let mean = DVector::from_vec(vec![1.0, -2.0]);
        let s = GaussianState::new(mean.clone(), DMatrix::zeros(2, 2)).unwrap();
        let mut rng = stream(1, 0, Purpose::InitialState);
        let x = s.sample(&mut rng).unwrap();
        assert_eq!(x, mean);
    }

    #[test]
    fn sample_covariance_converges() {
        // 1e5 samples of thermal nu = 1: sample covariance within 3 standard
        // errors of diag(1.5).
        let s = thermal_state(&[1.0]).unwrap();
        let mut rng = stream(2, 0, Purpose::InitialState);
        let n = 100_000;
        let pts = s.sample_many(n, &mut rng).unwrap();
        let mut cov = DMatrix::zeros(2, 2);
        for p in &pts {
            cov += p * p.transpose();
        }
        cov /= n as f64;
        let se = 1.5 * (2.0 / n as f64).sqrt();
        assert!((cov[(0, 0)] - 1.5).abs() < 3.0 * se, "XX = {}", cov[(0, 0)]);
        assert!((cov[(1, 1)] - 1.5).abs() < 3.0 * se, "PP = {}", cov[(1, 1)]);
        let se_off = 1.5 / (n as f64).sqrt();
        assert!(cov[(0, 1)].abs() < 3.0 * se_off, "XP = {}", cov[(0, 1)]);
    }

    #[test]
    fn sampling_is_deterministic_per_stream() {
        let s = thermal_state(&[0.7, 0.2]).unwrap();
        let a = s.sample(&mut stream(9, 3, Purpose::InitialState)).unwrap();
        let b = s.sample(&mut stream(9, 3, Purpose::InitialState)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn symplectic_eigenvalues_of_known_states() {
        let vac = GaussianState::vacuum(2);
        for nu in vac.symplectic_eigenvalues() {
            assert_relative_eq!(nu, 0.5, max_relative = 1e-10);
        }
        let th = thermal_state(&[1.0]).unwrap();
        assert_relative_eq!(th.symplectic_eigenvalues()[0], 1.5, max_relative = 1e-10);
        // Pure squeezed and TMSS states sit exactly on the vacuum bound.
        let sq = single_mode_squeezed(Complex64::new(1.1513, 0.0), Complex64::new(0.0, 0.0));
        assert_relative_eq!(sq.min_symplectic_eigenvalue(), 0.5, max_relative = 1e-9);
        let tm = two_mode_squeezed(Complex64::new(0.0, 1.15));
        assert_relative_eq!(tm.min_symplectic_eigenvalue(), 0.5, max_relative = 1e-9);
    }

    #[test]
    fn squeezed_state_is_pure() {
        for r in [0.0, 0.3, 1.1513, 2.0] {
            let s = single_mode_squeezed(Complex64::from_polar(r, 0.4), Complex64::new(1.0, 1.0));
            let det = s.cov()[(0, 0)] * s.cov()[(1, 1)] - s.cov()[(0, 1)] * s.cov()[(1, 0)];
            assert_relative_eq!(det, 0.25, max_relative = 1e-12);
        }
    }

    #[test]
    fn json_round_trip() {
        let s = two_mode_squeezed(Complex64::new(0.3, 0.9));
        let back = GaussianState::from_json(&s.to_json()).unwrap();
        assert_eq!(s, back);
    }

    proptest! {
        #[test]
        fn constructors_are_physical(r in 0.0..2.0f64, theta in -3.14..3.14f64) {
            let z = Complex64::from_polar(r, theta);
            let sq = single_mode_squeezed(z, Complex64::new(0.3, -0.2));
            prop_assert!(sq.is_physical(1e-9));
            let tm = two_mode_squeezed(z);
            prop_assert!(tm.is_physical(1e-9));
        }

        #[test]
        fn tmss_phase_only_rotates_cross_block(r in 0.01..1.5f64, theta in -3.0..3.0f64) {
            let a = two_mode_squeezed(Complex64::from_polar(r, 0.0));
            let b = two_mode_squeezed(Complex64::from_polar(r, theta));
            // identical single-mode blocks
            for q in 0..4 {
                prop_assert!((a.cov()[(q, q)] - b.cov()[(q, q)]).abs() < 1e-12);
            }
            // cross-block Frobenius norm is invariant under the phase
            let frob = |s: &GaussianState| {
                (s.cov()[(0, 2)].powi(2)
                    + s.cov()[(0, 3)].powi(2)
                    + s.cov()[(1, 2)].powi(2)
                    + s.cov()[(1, 3)].powi(2))
                .sqrt()
            };
            prop_assert!((frob(&a) - frob(&b)).abs() < 1e-10);
        }
    }
}
