//! `PSF1` binary snapshots.
//!
//! Layout, all little endian:
//!
//! ```text
//! b"PSF1"
//! u32 version (= 1), u32 dim, u32 N, u32 n_components
//! f64 dx, f64 L, f64 w, f64 t
//! per component: N^dim samples as interleaved (re, im) f64, axis 0 slowest
//! ```

use std::io::{Read, Write};
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;

use crate::field::{FieldState, Representation};
use crate::grid::Grid;
use crate::{Error, Result};

pub const MAGIC: &[u8; 4] = b"PSF1";
pub const VERSION: u32 = 1;

/// A position-space field together with its time stamp.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub field: FieldState,
}

pub fn write_snapshot<W: Write>(mut out: W, field: &FieldState, t: f64) -> Result<()> {
    if field.representation() != Representation::Position {
        return Err(Error::Contract("snapshots store position-space fields".into()));
    }
    let g = field.grid();
    out.write_all(MAGIC)?;
    for v in [
        VERSION,
        g.dim() as u32,
        g.points_per_dim() as u32,
        field.n_components() as u32,
    ] {
        out.write_all(&v.to_le_bytes())?;
    }
    for v in [g.dx(), g.interior_half_width(), g.buffer_width(), t] {
        out.write_all(&v.to_le_bytes())?;
    }
    let mut buf = Vec::with_capacity(g.len() * 16);
    for comp in field.components() {
        buf.clear();
        for z in comp {
            buf.extend_from_slice(&z.re.to_le_bytes());
            buf.extend_from_slice(&z.im.to_le_bytes());
        }
        out.write_all(&buf)?;
    }
    Ok(())
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_f64<R: Read>(r: &mut R) -> Result<f64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(f64::from_le_bytes(b))
}

pub fn read_snapshot<R: Read>(mut input: R) -> Result<Snapshot> {
    let mut magic = [0u8; 4];
    input.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Snapshot(format!("bad magic {magic:?}")));
    }
    let version = read_u32(&mut input)?;
    if version != VERSION {
        return Err(Error::Snapshot(format!("unsupported version {version}")));
    }
    let dim = read_u32(&mut input)? as usize;
    let points = read_u32(&mut input)? as usize;
    let n_components = read_u32(&mut input)? as usize;
    let dx = read_f64(&mut input)?;
    let _interior = read_f64(&mut input)?;
    let buffer = read_f64(&mut input)?;
    let t = read_f64(&mut input)?;
    let grid = Grid::from_points(dim, points, dx, buffer)
        .map_err(|e| Error::Snapshot(format!("header describes an invalid grid: {e}")))?;
    let len = grid.len();
    let mut raw = vec![0u8; len * 16];
    let mut components = Vec::with_capacity(n_components);
    for _ in 0..n_components {
        input.read_exact(&mut raw)?;
        let comp = raw
            .chunks_exact(16)
            .map(|b| {
                let re = f64::from_le_bytes(b[..8].try_into().unwrap());
                let im = f64::from_le_bytes(b[8..].try_into().unwrap());
                Complex64::new(re, im)
            })
            .collect();
        components.push(comp);
    }
    let field = FieldState::from_components(Arc::new(grid), components, Representation::Position)?;
    Ok(Snapshot { t, field })
}

pub fn save(path: impl AsRef<Path>, field: &FieldState, t: f64) -> Result<()> {
    let file = std::fs::File::create(path)?;
    let mut w = std::io::BufWriter::new(file);
    write_snapshot(&mut w, field, t)?;
    w.flush()?;
    Ok(())
}

pub fn load(path: impl AsRef<Path>) -> Result<Snapshot> {
    let file = std::fs::File::open(path)?;
    read_snapshot(std::io::BufReader::new(file))
}
