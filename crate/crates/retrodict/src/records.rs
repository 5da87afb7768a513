//! On-disk containers for homodyne record ensembles.
//!
//! Binary container layout (all integers and floats little-endian):
//!
//! ```text
//! magic   b"HRC1"            4 bytes
//! n_rec   u32
//! nt      u32
//! n_osc   u32
//! fs      f64                sample rate (Hz)
//! per record:
//!   master_seed u64
//!   shot        u64
//!   omega_realized  n_osc x f64   (rad/s)
//!   samples         nt x f64
//! ```
//!
//! A CSV export is provided for interoperability: `#`-prefixed header lines
//! carry the seed and realized frequencies, then one time column and one
//! column per record.

use std::io::{Read, Write};

use crate::error::Error;
use crate::sim::HomodyneRecord;
use crate::Result;

const MAGIC: &[u8; 4] = b"HRC1";

/// Write an ensemble to the binary container.
pub fn write_records<W: Write>(mut w: W, records: &[HomodyneRecord], fs: f64) -> Result<()> {
    if records.is_empty() {
        return Err(Error::InsufficientData("no records to write".into()));
    }
    let nt = records[0].samples.len();
    let n_osc = records[0].omega_realized.len();
    w.write_all(MAGIC)?;
    w.write_all(&(records.len() as u32).to_le_bytes())?;
    w.write_all(&(nt as u32).to_le_bytes())?;
    w.write_all(&(n_osc as u32).to_le_bytes())?;
    w.write_all(&fs.to_le_bytes())?;
    for rec in records {
        if rec.samples.len() != nt || rec.omega_realized.len() != n_osc {
            return Err(Error::Mismatch("inhomogeneous record ensemble".into()));
        }
        w.write_all(&rec.master_seed.to_le_bytes())?;
        w.write_all(&rec.shot.to_le_bytes())?;
        for &om in &rec.omega_realized {
            w.write_all(&om.to_le_bytes())?;
        }
        for &s in &rec.samples {
            w.write_all(&s.to_le_bytes())?;
        }
    }
    Ok(())
}

/// Read an ensemble from the binary container; returns the records and the
/// sample rate.
pub fn read_records<R: Read>(mut r: R) -> Result<(Vec<HomodyneRecord>, f64)> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::RecordFormat("bad magic".into()));
    }
    let n_rec = read_u32(&mut r)? as usize;
    let nt = read_u32(&mut r)? as usize;
    let n_osc = read_u32(&mut r)? as usize;
    let fs = read_f64(&mut r)?;
    if nt == 0 || n_rec == 0 {
        return Err(Error::RecordFormat("empty container".into()));
    }
    let mut records = Vec::with_capacity(n_rec);
    for _ in 0..n_rec {
        let master_seed = read_u64(&mut r)?;
        let shot = read_u64(&mut r)?;
        let mut omega_realized = Vec::with_capacity(n_osc);
        for _ in 0..n_osc {
            omega_realized.push(read_f64(&mut r)?);
        }
        let mut samples = Vec::with_capacity(nt);
        for _ in 0..nt {
            samples.push(read_f64(&mut r)?);
        }
        records.push(HomodyneRecord {
            samples,
            master_seed,
            shot,
            omega_realized,
        });
    }
    Ok((records, fs))
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

fn read_f64<R: Read>(r: &mut R) -> Result<f64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(f64::from_le_bytes(b))
}

/// CSV export: `#` headers with seeds and realized frequencies, then
/// `time_s` plus one column per record.
pub fn write_records_csv<W: Write>(mut w: W, records: &[HomodyneRecord], fs: f64) -> Result<()> {
    if records.is_empty() {
        return Err(Error::InsufficientData("no records to write".into()));
    }
    let nt = records[0].samples.len();
    writeln!(w, "# fs_hz={fs:.17e}")?;
    for (i, rec) in records.iter().enumerate() {
        let omegas: Vec<String> = rec
            .omega_realized
            .iter()
            .map(|o| format!("{o:.17e}"))
            .collect();
        writeln!(
            w,
            "# rec_{i}: master_seed={} shot={} omega_realized_rad_s=[{}]",
            rec.master_seed,
            rec.shot,
            omegas.join(",")
        )?;
    }
    let header: Vec<String> = std::iter::once("time_s".to_string())
        .chain((0..records.len()).map(|i| format!("rec_{i}")))
        .collect();
    writeln!(w, "{}", header.join(","))?;
    for n in 0..nt {
        let mut row = Vec::with_capacity(records.len() + 1);
        row.push(format!("{:.17e}", n as f64 / fs));
        for rec in records {
            row.push(format!("{:.17e}", rec.samples[n]));
        }
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}
