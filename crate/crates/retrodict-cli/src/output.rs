//! Report writers: CSV tables with deterministic formatting and a JSON
//! sidecar carrying full provenance. All floats print as `{:.17e}` so
//! repeated runs are byte-identical.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::Result;
use nalgebra::{DMatrix, DVector};
use serde_json::json;

use retrodict::filters::FilterBank;
use retrodict::model::{SamplingGrid, System};
use retrodict::noise::{
    BroadenedInference, CovarianceEstimate, InferredState, NoiseCovarianceSet,
};
use retrodict::psd::Psd;
use retrodict::sweep::{SqlSweep, TwoModeSweep};

/// FNV-1a hash of a byte string, hex encoded; used as the config fingerprint
/// in sidecars.
pub fn fnv1a_hex(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

fn fmt(v: f64) -> String {
    format!("{v:.17e}")
}

fn matrix_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

pub fn write_estimates_csv(path: &Path, estimates: &[DVector<f64>]) -> Result<()> {
    let mut f = fs::File::create(path)?;
    let nq = estimates.first().map_or(0, |e| e.len());
    let header: Vec<String> = (0..nq / 2)
        .flat_map(|i| [format!("x{i}"), format!("p{i}")])
        .collect();
    writeln!(f, "shot,{}", header.join(","))?;
    for (s, est) in estimates.iter().enumerate() {
        let row: Vec<String> = est.iter().map(|&v| fmt(v)).collect();
        writeln!(f, "{s},{}", row.join(","))?;
    }
    Ok(())
}

pub fn write_covariance_json(path: &Path, est: &CovarianceEstimate) -> Result<()> {
    let doc = json!({
        "n_s": est.n_s,
        "mean": est.mean.iter().copied().collect::<Vec<f64>>(),
        "sigma": matrix_rows(&est.sigma),
        "wishart_se": matrix_rows(&est.se),
    });
    fs::write(path, serde_json::to_string_pretty(&doc)?)?;
    Ok(())
}

pub fn write_inferred_json(path: &Path, inf: &InferredState) -> Result<()> {
    let doc = json!({
        "cov": matrix_rows(&inf.cov),
        "se": matrix_rows(&inf.se),
        "min_symplectic_eigenvalue": inf.min_symplectic,
        "min_eigenvalue": inf.min_eigenvalue,
        "physical": inf.physical,
    });
    fs::write(path, serde_json::to_string_pretty(&doc)?)?;
    Ok(())
}

pub fn write_broadened_json(path: &Path, broad: &BroadenedInference) -> Result<()> {
    let doc = json!({
        "q_moments": matrix_rows(&broad.q_moments),
        "q_se": matrix_rows(&broad.q_se),
        "smallest_singular_value": broad.smallest_sv,
        "t_prime": matrix_rows(&broad.primed.t),
        "b_prime": matrix_rows(&broad.primed.b),
        "m_prime": matrix_rows(&broad.primed.m),
    });
    fs::write(path, serde_json::to_string_pretty(&doc)?)?;
    Ok(())
}

pub fn write_mean_square_csv(
    path: &Path,
    grid: &SamplingGrid,
    model: Option<&[f64]>,
    empirical: &[f64],
    se: &[f64],
) -> Result<()> {
    let mut f = fs::File::create(path)?;
    writeln!(f, "time_s,model,empirical,se")?;
    for n in 0..empirical.len() {
        let m = model.map_or("nan".to_string(), |m| fmt(m[n]));
        writeln!(
            f,
            "{},{},{},{}",
            fmt(grid.time(n)),
            m,
            fmt(empirical[n]),
            fmt(se[n])
        )?;
    }
    Ok(())
}

pub fn write_psd_csv(path: &Path, psd: &Psd) -> Result<()> {
    let mut f = fs::File::create(path)?;
    writeln!(f, "freq_hz,psd_over_psn")?;
    for (fr, v) in psd.freqs.iter().zip(psd.values.iter()) {
        writeln!(f, "{},{}", fmt(*fr), fmt(*v))?;
    }
    Ok(())
}

pub fn write_sql_sweep(path: &Path, sweep: &SqlSweep) -> Result<()> {
    let mut f = fs::File::create(path)?;
    writeln!(f, "cooperativity,gamma_filter_rad_s,delta_n,cond_j,error")?;
    for p in &sweep.points {
        if p.error.is_some() {
            writeln!(
                f,
                "{},{},,,{}",
                fmt(p.cooperativity),
                fmt(p.gamma_filter),
                p.error.clone().unwrap_or_default()
            )?;
        } else {
            writeln!(
                f,
                "{},{},{},{},",
                fmt(p.cooperativity),
                fmt(p.gamma_filter),
                fmt(p.delta_n),
                fmt(p.cond_j)
            )?;
        }
    }
    let sidecar = path.with_extension("optima.json");
    let doc = json!({
        "asymptote": sweep.asymptote,
        "optima": sweep.optima,
    });
    fs::write(sidecar, serde_json::to_string_pretty(&doc)?)?;
    Ok(())
}

pub fn write_two_mode_sweep(path: &Path, sweep: &TwoModeSweep) -> Result<()> {
    let mut f = fs::File::create(path)?;
    writeln!(
        f,
        "delta_rad_s,cooperativity,dn1_gls,dn2_gls,dn1_exp,dn2_exp,cross_error,error"
    )?;
    for p in &sweep.points {
        if p.error.is_some() {
            writeln!(
                f,
                "{},{},,,,,,{}",
                fmt(p.delta),
                fmt(p.cooperativity),
                p.error.clone().unwrap_or_default()
            )?;
        } else {
            writeln!(
                f,
                "{},{},{},{},{},{},{},",
                fmt(p.delta),
                fmt(p.cooperativity),
                fmt(p.delta_n_gls[0]),
                fmt(p.delta_n_gls[1]),
                fmt(p.delta_n_exp[0]),
                fmt(p.delta_n_exp[1]),
                fmt(p.cross_error)
            )?;
        }
    }
    let doc = json!({ "optima": sweep.optima });
    fs::write(path.with_extension("optima.json"), serde_json::to_string_pretty(&doc)?)?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub fn write_summary_json(
    path: &Path,
    sys: &System,
    config_text: &str,
    family: &str,
    seed: u64,
    n_records: usize,
    bank: &FilterBank,
    set: &NoiseCovarianceSet,
    inferred: &InferredState,
    truth: Option<&[DVector<f64>]>,
    estimates: &[DVector<f64>],
) -> Result<()> {
    let added: Vec<f64> = (0..sys.n_osc()).map(|i| set.added_occupation(i)).collect();
    // when ground truth is available (simulated input), report the RMS
    // estimator error against it
    let truth_rms = truth.map(|t| {
        let mut acc = 0.0;
        let mut count = 0.0;
        for (tr, est) in t.iter().zip(estimates.iter()) {
            acc += (tr - est).norm_squared();
            count += tr.len() as f64;
        }
        (acc / count).sqrt()
    });
    let doc = json!({
        "tool_version": env!("CARGO_PKG_VERSION"),
        "config_hash": fnv1a_hex(config_text.as_bytes()),
        "config": serde_json::from_str::<serde_json::Value>(config_text)?,
        "family": family,
        "seed": seed,
        "n_records": n_records,
        "cond_j": bank.cond_j,
        "added_occupation": added,
        "cross_error_01": if sys.n_osc() > 1 { Some(set.cross_error(0, 1)) } else { None },
        "physical": inferred.physical,
        "min_symplectic_eigenvalue": inferred.min_symplectic,
        "rms_error_vs_truth": truth_rms,
    });
    fs::write(path, serde_json::to_string_pretty(&doc)?)?;
    Ok(())
}
