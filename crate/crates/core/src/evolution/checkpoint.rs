//! Checkpoint files: an 8-byte magic, a little-endian `u64` header length, a
//! JSON header, then the Fourier coefficients as interleaved little-endian
//! `f64` pairs `(re, im)` in FFT slot order.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::state::SimulationState;
use crate::error::{Error, Result};
use crate::params::EquationParams;
use crate::spectral::Grid1D;

pub const MAGIC: &[u8; 8] = b"HOKDVCK\0";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckpointHeader {
    pub version: u32,
    pub params: EquationParams,
    pub grid: Grid1D,
    pub t: f64,
    pub epsilon: f64,
    pub dt: f64,
    pub steps: u64,
    pub nonlinear: bool,
    pub coefficients: usize,
}

pub fn write_checkpoint(state: &SimulationState, writer: &mut impl Write) -> Result<()> {
    let header = CheckpointHeader {
        version: FORMAT_VERSION,
        params: *state.params(),
        grid: *state.grid(),
        t: state.t(),
        epsilon: state.epsilon(),
        dt: state.dt(),
        steps: state.steps(),
        nonlinear: state.is_nonlinear(),
        coefficients: state.fourier().len(),
    };
    let json = serde_json::to_vec(&header)?;
    writer.write_all(MAGIC)?;
    writer.write_all(&(json.len() as u64).to_le_bytes())?;
    writer.write_all(&json)?;
    for v in state.fourier() {
        writer.write_all(&v.re.to_le_bytes())?;
        writer.write_all(&v.im.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_checkpoint(reader: &mut impl Read) -> Result<SimulationState> {
    let mut magic = [0u8; 8];
    reader.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Format("not a checkpoint file".into()));
    }
    let mut len = [0u8; 8];
    reader.read_exact(&mut len)?;
    let len = u64::from_le_bytes(len) as usize;
    let mut json = vec![0u8; len];
    reader.read_exact(&mut json)?;
    let header: CheckpointHeader = serde_json::from_slice(&json)?;
    if header.version != FORMAT_VERSION {
        return Err(Error::Format(format!(
            "unsupported checkpoint version {} (expected {FORMAT_VERSION})",
            header.version
        )));
    }
    if header.coefficients != header.grid.count() {
        return Err(Error::Dimension {
            expected: header.grid.count(),
            got: header.coefficients,
        });
    }
    let mut uhat = Vec::with_capacity(header.coefficients);
    let mut buf = [0u8; 16];
    for _ in 0..header.coefficients {
        reader.read_exact(&mut buf)?;
        let re = f64::from_le_bytes(buf[..8].try_into().expect("8 bytes"));
        let im = f64::from_le_bytes(buf[8..].try_into().expect("8 bytes"));
        uhat.push(Complex64::new(re, im));
    }
    Ok(SimulationState::restore(
        header.params,
        header.grid,
        header.t,
        uhat,
        header.epsilon,
        header.dt,
        header.steps,
        header.nonlinear,
    ))
}

pub fn save(state: &SimulationState, path: impl AsRef<Path>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_checkpoint(state, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn load(path: impl AsRef<Path>) -> Result<SimulationState> {
    read_checkpoint(&mut BufReader::new(File::open(path)?))
}
