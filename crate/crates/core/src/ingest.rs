//! Delimited-text input, detrending, and the TSV / JSON output formats.
//!
//! TSV numbers are written with 17 significant digits (`{:.16e}`), enough
//! to round-trip any `f64` exactly.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{Provenance, TimeSeries};
use crate::spectral::FourierSpectrum;
use crate::transform::RftSpectrum;

/// What to do with a cell that is missing, empty, or not a finite number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NaPolicy {
    #[default]
    Fail,
    Drop,
    /// Linear between the nearest valid neighbours; an error at either end.
    Interpolate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoadSpec {
    pub path: PathBuf,
    pub delimiter: u8,
    /// Zero-based value column.
    pub column: usize,
    /// Leading records to skip.
    pub skip_header: usize,
    pub na_policy: NaPolicy,
}

impl LoadSpec {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        LoadSpec {
            path: path.into(),
            delimiter: b',',
            column: 0,
            skip_header: 0,
            na_policy: NaPolicy::Fail,
        }
    }

    pub fn column(mut self, column: usize) -> Self {
        self.column = column;
        self
    }

    pub fn skip_header(mut self, lines: usize) -> Self {
        self.skip_header = lines;
        self
    }

    pub fn delimiter(mut self, delimiter: u8) -> Self {
        self.delimiter = delimiter;
        self
    }

    pub fn na_policy(mut self, policy: NaPolicy) -> Self {
        self.na_policy = policy;
        self
    }
}

fn parse_cell(cell: Option<&str>) -> Option<f64> {
    cell.and_then(|c| c.parse::<f64>().ok())
        .filter(|v| v.is_finite())
}

/// Reads one sample per retained record, in file order.
pub fn load_series(spec: &LoadSpec) -> Result<TimeSeries> {
    if !spec.delimiter.is_ascii_graphic() && spec.delimiter != b'\t' && spec.delimiter != b' ' {
        return Err(Error::invalid(format!(
            "delimiter byte {:#04x} is not printable",
            spec.delimiter
        )));
    }
    let file = File::open(&spec.path).map_err(|e| Error::io(&spec.path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(spec.delimiter)
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(file);

    let mut cells: Vec<(u64, Option<f64>)> = Vec::new();
    for record in reader.records().skip(spec.skip_header) {
        let record = record.map_err(|e| {
            let line = e.position().map(|p| p.line()).unwrap_or(0);
            Error::Parse {
                path: spec.path.clone(),
                line,
                column: spec.column,
                message: e.to_string(),
            }
        })?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let value = parse_cell(record.get(spec.column));
        match (value, spec.na_policy) {
            (Some(v), _) => cells.push((line, Some(v))),
            (None, NaPolicy::Fail) => {
                return Err(Error::Parse {
                    path: spec.path.clone(),
                    line,
                    column: spec.column,
                    message: match record.get(spec.column) {
                        Some(c) => format!("'{c}' is not a finite number"),
                        None => format!("record has only {} fields", record.len()),
                    },
                })
            }
            (None, NaPolicy::Drop) => {}
            (None, NaPolicy::Interpolate) => cells.push((line, None)),
        }
    }

    let values = fill_gaps(&cells, spec)?;
    if values.is_empty() {
        return Err(Error::InsufficientData {
            needed: 1,
            got: 0,
            context: format!("samples in {}", spec.path.display()),
        });
    }
    TimeSeries::new(values, Provenance::new(spec.path.display().to_string()))
}

fn fill_gaps(cells: &[(u64, Option<f64>)], spec: &LoadSpec) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(cells.len());
    let mut prev: Option<(usize, f64)> = None;
    for (i, &(line, cell)) in cells.iter().enumerate() {
        if let Some(v) = cell {
            out.push(v);
            prev = Some((i, v));
            continue;
        }
        let next = cells[i + 1..]
            .iter()
            .enumerate()
            .find_map(|(j, &(_, c))| c.map(|v| (i + 1 + j, v)));
        let ((i0, v0), (i1, v1)) = match (prev, next) {
            (Some(p), Some(n)) => (p, n),
            _ => {
                return Err(Error::Parse {
                    path: spec.path.clone(),
                    line,
                    column: spec.column,
                    message: "missing value at the edge of the series cannot be interpolated"
                        .into(),
                })
            }
        };
        let w = (i - i0) as f64 / (i1 - i0) as f64;
        out.push(v0 + w * (v1 - v0));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DetrendMode {
    #[default]
    None,
    Mean,
    Linear,
}

impl DetrendMode {
    pub fn as_str(self) -> &'static str {
        match self {
            DetrendMode::None => "none",
            DetrendMode::Mean => "mean",
            DetrendMode::Linear => "linear",
        }
    }
}

pub fn detrend(series: &TimeSeries, mode: DetrendMode) -> Result<TimeSeries> {
    let t = series.len();
    let mean = series.values().iter().sum::<f64>() / t as f64;
    match mode {
        DetrendMode::None => Ok(series.clone()),
        DetrendMode::Mean => series.map_values(|_, v| v - mean),
        DetrendMode::Linear => {
            if t < 2 {
                return Err(Error::invalid("linear detrending needs at least 2 samples"));
            }
            let n_mean = (t as f64 + 1.0) / 2.0;
            let (mut sxy, mut sxx) = (0.0, 0.0);
            for (i, &v) in series.values().iter().enumerate() {
                let dn = (i + 1) as f64 - n_mean;
                sxy += dn * (v - mean);
                sxx += dn * dn;
            }
            let slope = sxy / sxx;
            series.map_values(|n, v| v - (mean + slope * (n as f64 - n_mean)))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Tsv,
    Json,
}

impl OutputFormat {
    /// `.json` selects JSON; anything else is TSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => OutputFormat::Json,
            _ => OutputFormat::Tsv,
        }
    }
}

/// A spectrum that can be flattened into a two-column table.
pub trait SpectrumTable: Serialize {
    fn columns(&self) -> [&'static str; 2];
    /// `(abscissa, value)` rows; the abscissa is preformatted so integer
    /// scales print as integers.
    fn rows(&self) -> Vec<(String, f64)>;
}

impl SpectrumTable for RftSpectrum {
    fn columns(&self) -> [&'static str; 2] {
        ["q", "a_q"]
    }

    fn rows(&self) -> Vec<(String, f64)> {
        self.coefficients()
            .iter()
            .enumerate()
            .map(|(i, &a)| ((i + 1).to_string(), a))
            .collect()
    }
}

impl SpectrumTable for FourierSpectrum {
    fn columns(&self) -> [&'static str; 2] {
        ["f", "power"]
    }

    fn rows(&self) -> Vec<(String, f64)> {
        self.iter().map(|(f, p)| (fmt_f64(f), p)).collect()
    }
}

/// 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

/// Writes a header line and tab-separated rows.
pub fn write_table<I, R>(path: &Path, header: &[&str], rows: I) -> Result<()>
where
    I: IntoIterator<Item = R>,
    R: AsRef<[String]>,
{
    let mut w = create(path)?;
    let io = |e| Error::io(path, e);
    writeln!(w, "{}", header.join("\t")).map_err(io)?;
    for row in rows {
        writeln!(w, "{}", row.as_ref().join("\t")).map_err(io)?;
    }
    w.flush().map_err(io)
}

pub fn write_json<T: Serialize + ?Sized>(value: &T, path: &Path) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| Error::Json {
        path: path.to_path_buf(),
        source: e,
    })?;
    writeln!(w)
        .and_then(|_| w.flush())
        .map_err(|e| Error::io(path, e))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_reader(BufReader::new(file)).map_err(|e| Error::Json {
        path: path.to_path_buf(),
        source: e,
    })
}

pub fn write_spectrum<S: SpectrumTable>(
    spectrum: &S,
    path: &Path,
    format: OutputFormat,
) -> Result<()> {
    match format {
        OutputFormat::Json => write_json(spectrum, path),
        OutputFormat::Tsv => write_table(
            path,
            &spectrum.columns(),
            spectrum.rows().into_iter().map(|(x, v)| [x, fmt_f64(v)]),
        ),
    }
}

/// Reads the two numeric columns of a spectrum TSV, skipping the header.
pub fn read_spectrum_tsv(path: &Path) -> Result<Vec<(f64, f64)>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate().skip(1) {
        let line = line.map_err(|e| Error::io(path, e))?;
        let bad = |column: usize, message: String| Error::Parse {
            path: path.to_path_buf(),
            line: i as u64 + 1,
            column,
            message,
        };
        let mut fields = line.split('\t');
        let mut next = |column: usize| -> Result<f64> {
            let cell = fields
                .next()
                .ok_or_else(|| bad(column, "missing field".into()))?;
            cell.parse()
                .map_err(|_| bad(column, format!("'{cell}' is not a number")))
        };
        out.push((next(0)?, next(1)?));
    }
    Ok(out)
}

/// One value per line, no header, readable by [`load_series`].
pub fn write_series(series: &TimeSeries, path: &Path) -> Result<()> {
    let mut w = create(path)?;
    let io = |e| Error::io(path, e);
    for v in series.values() {
        writeln!(w, "{}", fmt_f64(*v)).map_err(io)?;
    }
    w.flush().map_err(io)
}
