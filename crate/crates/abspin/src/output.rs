use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::cli::Format;

/// Header of every spectrum and scan table.
pub const SCAN_HEADER: [&str; 9] = ["scan_var", "scan_value", "n", "m", "s", "branch", "energy", "kappa", "exists"];

/// Opens `path`, or standard output when `None`.
pub fn sink(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// CSV with the given header (written even for zero rows), `,` delimiter and
/// LF line endings; floats use the shortest representation that round-trips.
pub fn write_csv<T: Serialize, W: Write>(w: W, header: &[&str], rows: &[T]) -> io::Result<()> {
    let mut out = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w);
    out.write_record(header)?;
    for row in rows {
        out.serialize(row).map_err(io::Error::other)?;
    }
    out.flush()
}

pub fn write_json<T: Serialize + ?Sized, W: Write>(mut w: W, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut w, value).map_err(io::Error::other)?;
    w.write_all(b"\n")?;
    w.flush()
}

pub fn write_table<T: Serialize>(path: Option<&Path>, format: Format, header: &[&str], rows: &[T]) -> io::Result<()> {
    let w = sink(path)?;
    match format {
        Format::Csv => write_csv(w, header, rows),
        Format::Json => write_json(w, rows),
    }
}
