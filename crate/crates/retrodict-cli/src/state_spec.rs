//! Parsing of initial-state specifications from the command line.
//!
//! Grammar:
//! - `vacuum`
//! - `thermal:NU` or `thermal:NU1,NU2,...` (one occupation per oscillator)
//! - `smss:zeta=R@THETA[,dx=X][,dp=P]` — single-mode squeezed, squeeze
//!   magnitude `R`, phase `THETA` (rad), optional displacement mean in
//!   quadrature units
//! - `tmss:z=COMPLEX` — two-mode squeezed, e.g. `z=1.15i` or `z=0.4+0.2i`

use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use retrodict::gaussian::{single_mode_squeezed, thermal_state, two_mode_squeezed, GaussianState};

pub fn parse(spec: &str, n_osc: usize) -> Result<GaussianState> {
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    match kind {
        "vacuum" => Ok(GaussianState::vacuum(n_osc)),
        "thermal" => {
            let nus: Vec<f64> = if rest.contains(',') {
                rest.split(',')
                    .map(|v| v.trim().parse::<f64>().context("bad occupation"))
                    .collect::<Result<_>>()?
            } else {
                vec![rest.trim().parse::<f64>().context("bad occupation")?; n_osc]
            };
            if nus.len() != n_osc {
                bail!("thermal state has {} occupations for {n_osc} oscillators", nus.len());
            }
            Ok(thermal_state(&nus)?)
        }
        "smss" => {
            if n_osc != 1 {
                bail!("smss needs a single-oscillator config");
            }
            let mut zeta = None;
            let mut dx = 0.0;
            let mut dp = 0.0;
            for part in rest.split(',') {
                let (key, value) = part
                    .split_once('=')
                    .with_context(|| format!("bad smss field `{part}`"))?;
                match key.trim() {
                    "zeta" => {
                        let (r, theta) = match value.split_once('@') {
                            Some((r, th)) => (r.parse::<f64>()?, th.parse::<f64>()?),
                            None => (value.parse::<f64>()?, 0.0),
                        };
                        zeta = Some(Complex64::from_polar(r, theta));
                    }
                    "dx" => dx = value.parse()?,
                    "dp" => dp = value.parse()?,
                    other => bail!("unknown smss field `{other}`"),
                }
            }
            let zeta = zeta.context("smss needs zeta=R[@THETA]")?;
            // displacement alpha maps to means <X> = sqrt(2) Re, <P> = sqrt(2) Im
            let alpha = Complex64::new(dx / 2.0_f64.sqrt(), dp / 2.0_f64.sqrt());
            Ok(single_mode_squeezed(zeta, alpha))
        }
        "tmss" => {
            if n_osc != 2 {
                bail!("tmss needs a two-oscillator config");
            }
            let value = rest
                .strip_prefix("z=")
                .context("tmss needs z=COMPLEX (e.g. z=1.15i)")?;
            Ok(two_mode_squeezed(parse_complex(value)?))
        }
        other => bail!("unknown state kind `{other}` (vacuum|thermal|smss|tmss)"),
    }
}

/// Parse `A`, `Bi`, `A+Bi`, `A-Bi` (spaces not allowed).
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let t = text.trim();
    if let Some(im) = t.strip_suffix('i') {
        // split into real and imaginary at the last +/- that is not leading
        let bytes = im.as_bytes();
        for pos in (1..bytes.len()).rev() {
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos - 1] == b'e' || bytes[pos - 1] == b'E' {
                    continue;
                }
                let re: f64 = im[..pos].parse()?;
                let sign = if bytes[pos] == b'-' { -1.0 } else { 1.0 };
                let mag = &im[pos + 1..];
                let imag: f64 = if mag.is_empty() { 1.0 } else { mag.parse()? };
                return Ok(Complex64::new(re, sign * imag));
            }
        }
        let imag: f64 = if im.is_empty() || im == "-" {
            if im == "-" {
                -1.0
            } else {
                1.0
            }
        } else {
            im.parse()?
        };
        Ok(Complex64::new(0.0, imag))
    } else {
        Ok(Complex64::new(t.parse()?, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("1.15i").unwrap(), Complex64::new(0.0, 1.15));
        assert_eq!(parse_complex("0.8").unwrap(), Complex64::new(0.8, 0.0));
        assert_eq!(
            parse_complex("0.5+0.3i").unwrap(),
            Complex64::new(0.5, 0.3)
        );
        assert_eq!(
            parse_complex("-0.5-0.3i").unwrap(),
            Complex64::new(-0.5, -0.3)
        );
    }

    #[test]
    fn state_kinds() {
        assert!(parse("vacuum", 2).is_ok());
        assert!(parse("thermal:1.0", 3).is_ok());
        assert!(parse("thermal:1.0,2.7", 2).is_ok());
        assert!(parse("thermal:1.0,2.7", 3).is_err());
        assert!(parse("smss:zeta=1.151@0,dx=1.0", 1).is_ok());
        assert!(parse("tmss:z=1.15i", 2).is_ok());
        assert!(parse("tmss:z=1.15i", 1).is_err());
        assert!(parse("junk", 1).is_err());
    }
}
