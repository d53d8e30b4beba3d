//! Report emission: CSV tables with header rows, pretty JSON summaries, and
//! two-column plot-data streams.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::Result;

pub fn write_csv<T: Serialize>(path: impl AsRef<Path>, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| crate::Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| crate::Error::Format(e.to_string()))
}

pub fn write_json<T: Serialize + ?Sized>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

/// `x y` per line, `#`-prefixed header.
pub fn write_plot(path: impl AsRef<Path>, header: &str, xs: &[f64], ys: &[f64]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "# {header}")?;
    for (x, y) in xs.iter().zip(ys) {
        writeln!(w, "{x:e} {y:e}")?;
    }
    w.flush()?;
    Ok(())
}
