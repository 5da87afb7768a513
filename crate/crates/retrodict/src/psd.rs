//! Welch power-spectral-density estimation of homodyne record ensembles.
//!
//! Periodograms of Hann-windowed, half-overlapping segments are averaged over
//! all segments of all records. The returned values are the two-sided PSD
//! divided by the shot-noise PSD, so a pure shot-noise record averages to a
//! flat 1.0 and oscillator responses appear as Lorentzian peaks above that
//! floor.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::Error;
use crate::sim::HomodyneRecord;
use crate::Result;

/// Averaged, shot-noise-normalized PSD estimate.
#[derive(Debug, Clone)]
pub struct Psd {
    /// Frequency bins (Hz), `0 .. fs/2`.
    pub freqs: Vec<f64>,
    /// Two-sided PSD normalized by the shot-noise PSD.
    pub values: Vec<f64>,
    /// Number of averaged segments.
    pub segments: usize,
}

/// Welch-average the records' PSD. `segment_len` must not exceed the record
/// length; overlap is fixed at 50% and the window is Hann.
pub fn estimate_psd(
    records: &[HomodyneRecord],
    fs: f64,
    psn: f64,
    segment_len: usize,
) -> Result<Psd> {
    if records.is_empty() {
        return Err(Error::InsufficientData("need at least one record".into()));
    }
    let nt = records[0].samples.len();
    if segment_len > nt {
        return Err(Error::Mismatch(format!(
            "segment length {segment_len} exceeds record length {nt}"
        )));
    }
    if segment_len < 8 {
        return Err(Error::Mismatch("segment length must be at least 8".into()));
    }
    let window: Vec<f64> = (0..segment_len)
        .map(|n| {
            let x = std::f64::consts::PI * n as f64 / segment_len as f64;
            x.sin().powi(2)
        })
        .collect();
    let w2: f64 = window.iter().map(|w| w * w).sum();
    let hop = segment_len / 2;

    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(segment_len);

    let half = segment_len / 2 + 1;
    let mut acc = vec![0.0; half];
    let mut segments = 0usize;
    let mut buf = vec![Complex::new(0.0, 0.0); segment_len];
    for rec in records {
        if rec.samples.len() != nt {
            return Err(Error::Mismatch("records have differing lengths".into()));
        }
        let mut start = 0;
        while start + segment_len <= nt {
            for (i, b) in buf.iter_mut().enumerate() {
                *b = Complex::new(rec.samples[start + i] * window[i], 0.0);
            }
            fft.process(&mut buf);
            for (k, a) in acc.iter_mut().enumerate() {
                *a += buf[k].norm_sqr();
            }
            segments += 1;
            start += hop;
        }
    }
    if segments == 0 {
        return Err(Error::InsufficientData("no complete segments".into()));
    }
    // Two-sided PSD estimate: |X_k|^2 dt / sum(w^2), averaged, then divided
    // by the shot-noise PSD.
    let scale = 1.0 / (fs * w2 * segments as f64 * psn);
    let values: Vec<f64> = acc.iter().map(|a| a * scale).collect();
    let freqs: Vec<f64> = (0..half)
        .map(|k| k as f64 * fs / segment_len as f64)
        .collect();
    Ok(Psd {
        freqs,
        values,
        segments,
    })
}

impl Psd {
    /// Index of the bin closest to `f_hz`.
    pub fn bin_of(&self, f_hz: f64) -> usize {
        self.freqs
            .iter()
            .enumerate()
            .min_by(|a, b| {
                (a.1 - f_hz)
                    .abs()
                    .partial_cmp(&(b.1 - f_hz).abs())
                    .unwrap()
            })
            .map(|(i, _)| i)
            .unwrap()
    }

    /// Integrated power above the unit shot floor over positive frequencies
    /// (in signal-squared units times the shot PSD normalization), i.e.
    /// `sum (S/P_SN - 1) df`.
    pub fn area_above_floor(&self) -> f64 {
        let df = self.freqs[1] - self.freqs[0];
        self.values.iter().map(|v| (v - 1.0) * df).sum()
    }
}
