//! Dataset files.
//!
//! * `csv`: one point per line, comma separated, `.` as decimal point. Lines
//!   starting with `#` and blank lines are ignored. Written with 17
//!   significant digits, which reproduces every `f64` exactly.
//! * `f64le`: the bytes `SPHE`, then `n` and `d` as little-endian `u32`,
//!   then `n * d` little-endian `f64` values in row-major order.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use invsphere_core::{Dataset, Error as CoreError};

use crate::error::{CliError, Result};

pub const MAGIC: &[u8; 4] = b"SPHE";
const HEADER_LEN: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    F64le,
}

impl Format {
    /// `.csv` is csv; `.f64le`, `.bin` and `.sphe` are f64le.
    pub fn from_path(path: &Path) -> Option<Self> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        match ext.as_str() {
            "csv" => Some(Self::Csv),
            "f64le" | "bin" | "sphe" => Some(Self::F64le),
            _ => None,
        }
    }

    pub fn resolve(explicit: Option<Self>, path: &Path) -> Result<Self> {
        explicit.or_else(|| Self::from_path(path)).ok_or_else(|| {
            CliError::Precondition(format!(
                "{}: cannot infer the format from the extension; pass --format",
                path.display()
            ))
        })
    }
}

pub fn read_dataset(path: &Path, format: Format) -> Result<Dataset> {
    let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
    match format {
        Format::Csv => {
            let text = std::str::from_utf8(&bytes).map_err(|e| CliError::parse(path, format!("not UTF-8: {e}")))?;
            parse_csv(text).map_err(|e| e.at(path))
        }
        Format::F64le => decode_f64le(&bytes).map_err(|e| e.at(path)),
    }
}

pub fn write_dataset(x: &Dataset, path: &Path, format: Format) -> Result<()> {
    let bytes = match format {
        Format::Csv => format_csv(x).into_bytes(),
        Format::F64le => encode_f64le(x)?,
    };
    write_atomic(path, &bytes)
}

/// Writes through a temporary file in the destination directory and renames
/// it into place, so a failed run never leaves a partial file behind.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

/// Parse failure before a file path is attached.
#[derive(Debug)]
pub enum DecodeError {
    Malformed(String),
    Core(CoreError),
}

impl DecodeError {
    fn at(self, path: &Path) -> CliError {
        match self {
            Self::Malformed(m) => CliError::parse(path, m),
            Self::Core(e) => CliError::Core {
                context: format!("{}: ", path.display()),
                source: e,
            },
        }
    }
}

impl From<CoreError> for DecodeError {
    fn from(e: CoreError) -> Self {
        Self::Core(e)
    }
}

pub fn parse_csv(text: &str) -> std::result::Result<Dataset, DecodeError> {
    let mut dim = None;
    let mut data = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut count = 0;
        for (j, field) in line.split(',').enumerate() {
            let field = field.trim();
            let value: f64 = field.parse().map_err(|_| {
                DecodeError::Malformed(format!("line {line_no}, column {}: invalid number '{field}'", j + 1))
            })?;
            data.push(value);
            count += 1;
        }
        match dim {
            None => dim = Some(count),
            Some(d) if d != count => {
                return Err(DecodeError::Malformed(format!(
                    "line {line_no}: ragged row with {count} fields, expected {d}"
                )))
            }
            Some(_) => {}
        }
    }
    let Some(dim) = dim else {
        return Err(CoreError::EmptyDataset.into());
    };
    Ok(Dataset::new(dim, data)?)
}

pub fn format_csv(x: &Dataset) -> String {
    let mut out = String::with_capacity(x.len() * x.dim() * 24);
    for row in x.rows() {
        for (j, v) in row.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            write!(out, "{v:.16e}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn decode_f64le(bytes: &[u8]) -> std::result::Result<Dataset, DecodeError> {
    if bytes.is_empty() {
        return Err(CoreError::EmptyDataset.into());
    }
    if bytes.len() < MAGIC.len() || &bytes[..4] != MAGIC {
        return Err(DecodeError::Malformed("bad magic, expected SPHE".into()));
    }
    if bytes.len() < HEADER_LEN {
        return Err(DecodeError::Malformed("truncated header".into()));
    }
    let n = u32::from_le_bytes(bytes[4..8].try_into().unwrap()) as usize;
    let d = u32::from_le_bytes(bytes[8..12].try_into().unwrap()) as usize;
    if n == 0 {
        return Err(CoreError::EmptyDataset.into());
    }
    if d == 0 {
        return Err(DecodeError::Malformed("dimension is zero".into()));
    }
    let payload = &bytes[HEADER_LEN..];
    let row_bytes = d * 8;
    let expected = n.checked_mul(row_bytes).ok_or_else(|| DecodeError::Malformed("size overflow".into()))?;
    if payload.len() < expected {
        return Err(DecodeError::Malformed(format!(
            "truncated payload: record {} is incomplete ({} of {expected} bytes)",
            payload.len() / row_bytes,
            payload.len()
        )));
    }
    if payload.len() > expected {
        return Err(DecodeError::Malformed(format!(
            "{} trailing bytes after {n} records",
            payload.len() - expected
        )));
    }
    let data = payload
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Ok(Dataset::new(d, data)?)
}

pub fn encode_f64le(x: &Dataset) -> Result<Vec<u8>> {
    let n = u32::try_from(x.len()).map_err(|_| CliError::Precondition(format!("{} rows exceed u32", x.len())))?;
    let d = u32::try_from(x.dim()).map_err(|_| CliError::Precondition(format!("dimension {} exceeds u32", x.dim())))?;
    let mut out = Vec::with_capacity(HEADER_LEN + x.as_slice().len() * 8);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&n.to_le_bytes());
    out.extend_from_slice(&d.to_le_bytes());
    for v in x.as_slice() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    Ok(out)
}
