use std::fs::{File, OpenOptions};
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

/// Stdout, or a new file that is only replaced when `force` is set.
pub fn sink(path: Option<&Path>, force: bool) -> Result<Box<dyn Write>, String> {
    let Some(path) = path else {
        return Ok(Box::new(io::stdout().lock()));
    };
    let mut opts = OpenOptions::new();
    opts.write(true);
    if force {
        opts.create(true).truncate(true);
    } else {
        opts.create_new(true);
    }
    let file: File = opts.open(path).map_err(|e| match e.kind() {
        io::ErrorKind::AlreadyExists => {
            format!("{} exists; pass --force to overwrite", path.display())
        }
        _ => format!("cannot open {}: {e}", path.display()),
    })?;
    Ok(Box::new(io::BufWriter::new(file)))
}

/// Comma-separated, LF-terminated CSV writer.
pub fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

pub fn write_csv<W: Write>(
    w: W,
    header: &[String],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<(), String> {
    let mut out = csv_writer(w);
    out.write_record(header).map_err(|e| e.to_string())?;
    for row in rows {
        out.write_record(&row).map_err(|e| e.to_string())?;
    }
    out.flush().map_err(|e| e.to_string())
}

pub fn print_json<T: Serialize>(value: &T) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    println!("{text}");
    Ok(())
}

/// Shortest decimal that parses back to `x`, in exponent form when tiny or huge.
pub fn num(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && a.is_finite() && !(1e-4..1e15).contains(&a) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}
