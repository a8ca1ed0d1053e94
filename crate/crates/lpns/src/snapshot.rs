//! On-disk velocity snapshots.
//!
//! Layout, all little-endian: a 44-byte header — magic `LPNS`, format version
//! `u32`, grid size `u32`, viscosity `f64`, time `f64`, 16 reserved zero
//! bytes — followed by the three spectral components in order, each row-major
//! with the third index fastest, each coefficient as `(re, im)` `f64` pairs.
//! Everything is written exactly, so write-then-read reproduces the
//! coefficients bit for bit.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use rustfft::num_complex::Complex64;

use crate::field::SpectralField;
use crate::grid::Grid;
use crate::{Error, Result};

const MAGIC: [u8; 4] = *b"LPNS";
const VERSION: u32 = 1;
const HEADER_LEN: usize = 44;

/// A velocity field together with the scalars needed to resume or re-analyze
/// the run it came from.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub u: SpectralField,
    pub nu: f64,
    pub t: f64,
}

fn file_len(n: usize) -> u64 {
    (HEADER_LEN + 3 * n * n * n * 16) as u64
}

pub fn write_snapshot(path: &Path, u: &SpectralField, nu: f64, t: f64) -> Result<()> {
    let err = |e| Error::io(path.display().to_string(), e);
    let grid = u.grid();
    let file = File::create(path).map_err(err)?;
    let mut out = BufWriter::new(file);

    let mut header = [0u8; HEADER_LEN];
    header[0..4].copy_from_slice(&MAGIC);
    header[4..8].copy_from_slice(&VERSION.to_le_bytes());
    header[8..12].copy_from_slice(&(grid.n() as u32).to_le_bytes());
    header[12..20].copy_from_slice(&nu.to_le_bytes());
    header[20..28].copy_from_slice(&t.to_le_bytes());
    out.write_all(&header).map_err(err)?;

    let mut row = vec![0u8; grid.n() * 16];
    for c in 0..3 {
        for line in u.comp(c).chunks_exact(grid.n()) {
            for (z, slot) in line.iter().zip(row.chunks_exact_mut(16)) {
                slot[0..8].copy_from_slice(&z.re.to_le_bytes());
                slot[8..16].copy_from_slice(&z.im.to_le_bytes());
            }
            out.write_all(&row).map_err(err)?;
        }
    }
    out.flush().map_err(err)
}

/// Reads and validates a snapshot. The returned field carries no
/// divergence-free or dealiased claims; callers who need those guarantees
/// re-apply the projections (a no-op up to rounding for fields this crate
/// wrote).
pub fn read_snapshot(path: &Path) -> Result<Snapshot> {
    let err = |e| Error::io(path.display().to_string(), e);
    let actual = std::fs::metadata(path).map_err(err)?.len();
    let file = File::open(path).map_err(err)?;
    let mut input = BufReader::new(file);

    let mut header = [0u8; HEADER_LEN];
    if actual < HEADER_LEN as u64 {
        return Err(Error::Format(format!(
            "{}: {actual} bytes is shorter than the {HEADER_LEN}-byte header",
            path.display()
        )));
    }
    input.read_exact(&mut header).map_err(err)?;
    if header[0..4] != MAGIC {
        return Err(Error::Format(format!(
            "{}: bad magic {:?}, expected {:?}",
            path.display(),
            &header[0..4],
            MAGIC
        )));
    }
    let version = u32::from_le_bytes(header[4..8].try_into().unwrap());
    if version != VERSION {
        return Err(Error::Format(format!(
            "{}: unsupported snapshot version {version}, expected {VERSION}",
            path.display()
        )));
    }
    let n = u32::from_le_bytes(header[8..12].try_into().unwrap()) as usize;
    let grid = Grid::new(n).map_err(|_| {
        Error::Format(format!("{}: invalid grid size {n}", path.display()))
    })?;
    let nu = f64::from_le_bytes(header[12..20].try_into().unwrap());
    let t = f64::from_le_bytes(header[20..28].try_into().unwrap());
    if actual != file_len(n) {
        return Err(Error::Format(format!(
            "{}: expected {} bytes for n = {n}, found {actual}",
            path.display(),
            file_len(n)
        )));
    }

    let mut comps = [
        vec![Complex64::ZERO; grid.len()],
        vec![Complex64::ZERO; grid.len()],
        vec![Complex64::ZERO; grid.len()],
    ];
    let mut row = vec![0u8; grid.n() * 16];
    for comp in comps.iter_mut() {
        for line in comp.chunks_exact_mut(grid.n()) {
            input.read_exact(&mut row).map_err(err)?;
            for (z, slot) in line.iter_mut().zip(row.chunks_exact(16)) {
                z.re = f64::from_le_bytes(slot[0..8].try_into().unwrap());
                z.im = f64::from_le_bytes(slot[8..16].try_into().unwrap());
            }
        }
    }
    Ok(Snapshot { u: SpectralField::from_comps(grid, comps), nu, t })
}
