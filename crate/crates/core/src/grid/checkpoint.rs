//! Binary snapshots of grid states.
//!
//! Layout, all little-endian:
//!
//! ```text
//! magic  b"QRFGRID1"
//! u32    ndim
//! ndim × (u64 n, f64 x_min, f64 x_max)
//! f64    time
//! Π n × (f64 re, f64 im)   row-major, last axis fastest
//! ```

use std::io::{Read, Write};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::grid::{GridAxis, GridSpec, GridState};

const MAGIC: &[u8; 8] = b"QRFGRID1";

pub fn write_checkpoint<W: Write>(mut w: W, state: &GridState<f64>) -> Result<()> {
    let mut buf = Vec::with_capacity(32 + 16 * state.psi.len());
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&(state.spec.ndim() as u32).to_le_bytes());
    for ax in state.spec.axes() {
        buf.extend_from_slice(&(ax.n as u64).to_le_bytes());
        buf.extend_from_slice(&ax.x_min.to_le_bytes());
        buf.extend_from_slice(&ax.x_max.to_le_bytes());
    }
    buf.extend_from_slice(&state.time.to_le_bytes());
    for z in &state.psi {
        buf.extend_from_slice(&z.re.to_le_bytes());
        buf.extend_from_slice(&z.im.to_le_bytes());
    }
    w.write_all(&buf)?;
    Ok(())
}

fn take<const N: usize>(bytes: &[u8], pos: &mut usize) -> Result<[u8; N]> {
    let end = *pos + N;
    let chunk = bytes
        .get(*pos..end)
        .ok_or_else(|| Error::Checkpoint("truncated file".into()))?;
    *pos = end;
    Ok(chunk.try_into().expect("slice length checked"))
}

pub fn read_checkpoint<R: Read>(mut r: R) -> Result<GridState<f64>> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    let mut pos = 0;
    if &take::<8>(&bytes, &mut pos)? != MAGIC {
        return Err(Error::Checkpoint("bad magic".into()));
    }
    let ndim = u32::from_le_bytes(take(&bytes, &mut pos)?) as usize;
    let mut axes = Vec::with_capacity(ndim);
    for _ in 0..ndim {
        let n = u64::from_le_bytes(take(&bytes, &mut pos)?) as usize;
        let x_min = f64::from_le_bytes(take(&bytes, &mut pos)?);
        let x_max = f64::from_le_bytes(take(&bytes, &mut pos)?);
        axes.push(GridAxis::new(x_min, x_max, n).map_err(|e| Error::Checkpoint(e.to_string()))?);
    }
    let spec = GridSpec::new(axes).map_err(|e| Error::Checkpoint(e.to_string()))?;
    let time = f64::from_le_bytes(take(&bytes, &mut pos)?);
    let expected = pos + 16 * spec.len();
    if bytes.len() != expected {
        return Err(Error::Checkpoint(format!(
            "expected {expected} bytes, found {}",
            bytes.len()
        )));
    }
    let psi = bytes[pos..]
        .chunks_exact(16)
        .map(|c| {
            Complex::new(
                f64::from_le_bytes(c[..8].try_into().unwrap()),
                f64::from_le_bytes(c[8..].try_into().unwrap()),
            )
        })
        .collect();
    Ok(GridState { spec, psi, time })
}
