//! The `rftkit` command line.
//!
//! Every run first prints `effective: rftkit ...`, the full command with all
//! defaults resolved; running that line again reproduces the output files
//! byte for byte. Exit codes: 0 success, 1 usage error, 2 data or compute
//! error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::arith::ArithCache;
use crate::error::{check_range, Error, Result};
use crate::ingest::{
    detrend, fmt_f64, load_series, write_json, write_series, write_spectrum, write_table,
    DetrendMode, LoadSpec, NaPolicy, OutputFormat,
};
use crate::series::TimeSeries;
use crate::spectral::{dft_power, fit_slope, SlopeFit, Window};
use crate::synth::{
    gen_brownian, gen_cosine, gen_modulated_cosine, gen_white_noise, CosineSpec,
    ModulatedCosineSpec, ModulationMode,
};
use crate::transform::{phase_averaged_rft, rft_forward, wk_check, DelayReducer};

/// Largest scale any subcommand will sieve up to.
pub const CLI_CACHE_LIMIT: usize = 100_000;

/// Default ceiling on `--qmax` when it is not given: `min(t, 1000)`.
pub const DEFAULT_QMAX_CEILING: usize = 1000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Clone, Parser)]
#[command(
    name = "rftkit",
    version,
    about = "Ramanujan-Fourier and DFT analysis of time series"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Table of Ramanujan sums c_q(n).
    RsTable(RsTableArgs),
    /// Ramanujan-Fourier spectrum of a series file.
    Rft(RftArgs),
    /// DFT periodogram and 1/f^alpha slope fit.
    Fft(FftArgs),
    /// Write a synthetic test series.
    Synth(SynthArgs),
    /// Compare autocorrelation with the c_q-weighted RFT power.
    WkCheck(WkCheckArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RsTableArgs {
    #[arg(long)]
    pub qmax: u64,
    #[arg(long)]
    pub nmax: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Zero-based value column.
    #[arg(long, default_value_t = 0)]
    pub col: usize,
    /// Header lines to skip.
    #[arg(long, default_value_t = 0)]
    pub skip: usize,
    #[arg(long, default_value = ",")]
    pub delim: char,
    #[arg(long, value_enum, default_value_t = NaArg::Fail)]
    pub na: NaArg,
}

#[derive(Debug, Clone, Args)]
pub struct RftArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Defaults to min(t, 1000).
    #[arg(long)]
    pub qmax: Option<usize>,
    #[arg(long, value_enum, default_value_t = DetrendArg::None)]
    pub detrend: DetrendArg,
    #[arg(long, default_value_t = 1)]
    pub shifts: usize,
    #[arg(long, value_enum, default_value_t = ReducerArg::Rms)]
    pub reducer: ReducerArg,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct FftArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = WindowArg::None)]
    pub window: WindowArg,
    /// Fit band as FLO:FHI in cycles per sample.
    #[arg(long, value_parser = parse_band)]
    pub band: (f64, f64),
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct SynthArgs {
    #[arg(long, value_enum)]
    pub kind: SynthKind,
    #[arg(long, default_value_t = 10)]
    pub n0: u32,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub delta: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub a0: f64,
    #[arg(long, default_value_t = 14)]
    pub n1: u32,
    #[arg(long, default_value_t = 1000)]
    pub t: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Inst)]
    pub mode: ModeArg,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct WkCheckArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Defaults to min(t, 1000).
    #[arg(long)]
    pub qmax: Option<usize>,
    #[arg(long)]
    pub hmax: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NaArg {
    Fail,
    Drop,
    Interpolate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DetrendArg {
    None,
    Mean,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReducerArg {
    Rms,
    Meanabs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WindowArg {
    None,
    Hann,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SynthKind {
    Cosine,
    Modcos,
    Brownian,
    White,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Inst,
    Phase,
}

fn parse_band(s: &str) -> std::result::Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("band '{s}' must look like FLO:FHI"))?;
    let lo: f64 = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad lower edge '{lo}'"))?;
    let hi: f64 = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad upper edge '{hi}'"))?;
    if !(lo > 0.0 && lo < hi && hi.is_finite()) {
        return Err(format!("band {lo}:{hi} must satisfy 0 < FLO < FHI"));
    }
    Ok((lo, hi))
}

fn value_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value()
        .map(|p| p.get_name().to_string())
        .unwrap_or_default()
}

fn quote(arg: &str) -> String {
    if !arg.is_empty()
        && arg
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || "-_./:=+,@%".contains(c))
    {
        arg.to_string()
    } else {
        format!("'{}'", arg.replace('\'', r"'\''"))
    }
}

struct Line(Vec<String>);

impl Line {
    fn new(sub: &str) -> Self {
        Line(vec!["rftkit".into(), sub.into()])
    }

    fn flag(mut self, name: &str, value: impl ToString) -> Self {
        self.0.push(format!("--{name}"));
        self.0.push(quote(&value.to_string()));
        self
    }

    fn path(self, name: &str, value: &Path) -> Self {
        let v = value.display().to_string();
        self.flag(name, v)
    }

    fn input(self, a: &InputArgs) -> Self {
        self.path("in", &a.input)
            .flag("col", a.col)
            .flag("skip", a.skip)
            .flag("delim", a.delim)
            .flag("na", value_name(a.na))
    }

    fn finish(self) -> String {
        self.0.join(" ")
    }
}

impl InputArgs {
    fn load(&self) -> Result<TimeSeries> {
        if !self.delim.is_ascii() {
            return Err(Error::invalid(format!(
                "delimiter '{}' is not ASCII",
                self.delim
            )));
        }
        let policy = match self.na {
            NaArg::Fail => NaPolicy::Fail,
            NaArg::Drop => NaPolicy::Drop,
            NaArg::Interpolate => NaPolicy::Interpolate,
        };
        load_series(
            &LoadSpec::new(&self.input)
                .column(self.col)
                .skip_header(self.skip)
                .delimiter(self.delim as u8)
                .na_policy(policy),
        )
    }
}

fn resolve_qmax(qmax: Option<usize>, t: usize) -> Result<usize> {
    let q = qmax.unwrap_or_else(|| t.min(DEFAULT_QMAX_CEILING));
    check_range("qmax", q as u64, 1, CLI_CACHE_LIMIT as u64)?;
    Ok(q)
}

fn io_stdout(e: std::io::Error) -> Error {
    Error::io("<stdout>", e)
}

/// Parses `args` (including the program name) and runs the subcommand,
/// returning the process exit code.
pub fn run_from_args<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return code;
        }
    };
    match run(&cli, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "rftkit: {e}");
            if e.is_usage() {
                EXIT_USAGE
            } else {
                EXIT_DATA
            }
        }
    }
}

pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::RsTable(a) => cmd_rs_table(a, stdout),
        Command::Rft(a) => cmd_rft(a, stdout),
        Command::Fft(a) => cmd_fft(a, stdout),
        Command::Synth(a) => cmd_synth(a, stdout),
        Command::WkCheck(a) => cmd_wk_check(a, stdout),
    }
}

pub fn cmd_rs_table(a: &RsTableArgs, stdout: &mut dyn Write) -> Result<()> {
    let line = Line::new("rs-table")
        .flag("qmax", a.qmax)
        .flag("nmax", a.nmax)
        .path("out", &a.out)
        .finish();
    writeln!(stdout, "effective: {line}").map_err(io_stdout)?;
    check_range("qmax", a.qmax, 1, CLI_CACHE_LIMIT as u64)?;
    check_range("nmax", a.nmax, 1, u32::MAX as u64)?;

    let cache = ArithCache::new(a.qmax as usize)?;
    let header: Vec<String> = (1..=a.nmax).map(|n| n.to_string()).collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let rows = (1..=a.qmax).map(|q| {
        (1..=a.nmax)
            .map(|n| cache.ramanujan_sum(q, n).map(|c| c.to_string()))
            .collect::<Result<Vec<String>>>()
    });
    let rows = rows.collect::<Result<Vec<_>>>()?;
    write_table(&a.out, &header, rows)?;
    writeln!(
        stdout,
        "wrote c_q(n) for q = 1..{} (rows) and n = 1..{} (columns) to {}",
        a.qmax,
        a.nmax,
        a.out.display()
    )
    .map_err(io_stdout)
}

pub fn cmd_rft(a: &RftArgs, stdout: &mut dyn Write) -> Result<()> {
    let raw = a.input.load()?;
    let t = raw.len();
    let q_max = a.qmax.unwrap_or_else(|| t.min(DEFAULT_QMAX_CEILING));
    let line = Line::new("rft")
        .input(&a.input)
        .flag("qmax", q_max)
        .flag("detrend", value_name(a.detrend))
        .flag("shifts", a.shifts)
        .flag("reducer", value_name(a.reducer))
        .path("out", &a.out)
        .finish();
    writeln!(stdout, "effective: {line}").map_err(io_stdout)?;
    resolve_qmax(Some(q_max), t)?;

    let mode = match a.detrend {
        DetrendArg::None => DetrendMode::None,
        DetrendArg::Mean => DetrendMode::Mean,
        DetrendArg::Linear => DetrendMode::Linear,
    };
    let series = detrend(&raw, mode)?;
    let cache = ArithCache::new(q_max)?;
    let spectrum = if a.shifts == 1 {
        rft_forward(&series, q_max, &cache)?
    } else {
        let reducer = match a.reducer {
            ReducerArg::Rms => DelayReducer::Rms,
            ReducerArg::Meanabs => DelayReducer::MeanAbs,
        };
        phase_averaged_rft(&series, a.shifts, q_max, reducer, &cache)?
    };
    write_spectrum(&spectrum, &a.out, OutputFormat::from_path(&a.out))?;

    let used_t = spectrum.t();
    writeln!(
        stdout,
        "t = {used_t}, q_max = {q_max}, shifts = {}, reducer = {}",
        spectrum.num_shifts(),
        spectrum.delay_reducer().as_str()
    )
    .map_err(io_stdout)?;
    writeln!(stdout, "largest |a_q|:").map_err(io_stdout)?;
    for (q, v) in spectrum.largest(5) {
        let flag = if 2 * q > used_t {
            "  (q > t/2: O(q/t) noise floor)"
        } else {
            ""
        };
        writeln!(stdout, "  q = {q:>6}  a_q = {v:+.6}{flag}").map_err(io_stdout)?;
    }
    writeln!(stdout, "wrote {}", a.out.display()).map_err(io_stdout)
}

#[derive(Debug, Serialize)]
struct FftReport {
    t: usize,
    window: Window,
    fit: SlopeFit,
    dominant_bin: usize,
    dominant_frequency: f64,
    dominant_power_share: f64,
}

/// Where `fft` writes its slope report: `<out>.fit.json`.
pub fn fit_report_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".fit.json");
    PathBuf::from(s)
}

pub fn cmd_fft(a: &FftArgs, stdout: &mut dyn Write) -> Result<()> {
    let line = Line::new("fft")
        .input(&a.input)
        .flag("window", value_name(a.window))
        .flag("band", format!("{}:{}", a.band.0, a.band.1))
        .path("out", &a.out)
        .finish();
    writeln!(stdout, "effective: {line}").map_err(io_stdout)?;

    let series = a.input.load()?;
    let window = match a.window {
        WindowArg::None => Window::None,
        WindowArg::Hann => Window::Hann,
    };
    let spectrum = dft_power(&series, window)?;
    let fit = fit_slope(&spectrum, a.band.0, a.band.1)?;
    let (k, f, share) = spectrum.dominant_bin();
    write_spectrum(&spectrum, &a.out, OutputFormat::from_path(&a.out))?;
    let report_path = fit_report_path(&a.out);
    write_json(
        &FftReport {
            t: spectrum.t(),
            window,
            fit,
            dominant_bin: k,
            dominant_frequency: f,
            dominant_power_share: share,
        },
        &report_path,
    )?;

    writeln!(
        stdout,
        "t = {}, bins = {}, window = {}",
        spectrum.t(),
        spectrum.bins(),
        window.as_str()
    )
    .map_err(io_stdout)?;
    writeln!(
        stdout,
        "alpha = {:.4}  (r^2 = {:.4}, {} bins in {}:{}, {} zero bins skipped)",
        fit.alpha, fit.r_squared, fit.bins_used, a.band.0, a.band.1, fit.zero_bins_skipped
    )
    .map_err(io_stdout)?;
    writeln!(
        stdout,
        "dominant bin k = {k}, f = {f:.6} (period {:.3}), {:.1}% of power",
        1.0 / f,
        100.0 * share
    )
    .map_err(io_stdout)?;
    writeln!(
        stdout,
        "wrote {} and {}",
        a.out.display(),
        report_path.display()
    )
    .map_err(io_stdout)
}

pub fn cmd_synth(a: &SynthArgs, stdout: &mut dyn Write) -> Result<()> {
    let mut line = Line::new("synth").flag("kind", value_name(a.kind));
    line = match a.kind {
        SynthKind::Cosine => line
            .flag("n0", a.n0)
            .flag("delta", a.delta)
            .flag("a0", a.a0)
            .flag("t", a.t),
        SynthKind::Modcos => line
            .flag("n0", a.n0)
            .flag("n1", a.n1)
            .flag("mode", value_name(a.mode))
            .flag("t", a.t),
        SynthKind::Brownian | SynthKind::White => line.flag("t", a.t).flag("seed", a.seed),
    };
    let line = line.path("out", &a.out).finish();
    writeln!(stdout, "effective: {line}").map_err(io_stdout)?;

    let series = match a.kind {
        SynthKind::Cosine => gen_cosine(
            &CosineSpec::new(a.n0, a.t)
                .with_delta(a.delta)
                .with_amplitude(a.a0),
        )?,
        SynthKind::Modcos => {
            let mode = match a.mode {
                ModeArg::Inst => ModulationMode::Instantaneous,
                ModeArg::Phase => ModulationMode::PhaseAccumulated,
            };
            gen_modulated_cosine(&ModulatedCosineSpec::new(a.n0, a.n1, a.t, mode))?
        }
        SynthKind::Brownian => gen_brownian(a.t, a.seed)?,
        SynthKind::White => gen_white_noise(a.t, a.seed)?,
    };
    write_series(&series, &a.out)?;
    writeln!(
        stdout,
        "{}: {} samples -> {}",
        series.label(),
        series.len(),
        a.out.display()
    )
    .map_err(io_stdout)
}

pub fn cmd_wk_check(a: &WkCheckArgs, stdout: &mut dyn Write) -> Result<()> {
    let series = a.input.load()?;
    let t = series.len();
    let q_max = a.qmax.unwrap_or_else(|| t.min(DEFAULT_QMAX_CEILING));
    let line = Line::new("wk-check")
        .input(&a.input)
        .flag("qmax", q_max)
        .flag("hmax", a.hmax)
        .path("out", &a.out)
        .finish();
    writeln!(stdout, "effective: {line}").map_err(io_stdout)?;
    resolve_qmax(Some(q_max), t)?;
    check_range("hmax", a.hmax as u64, 0, t as u64 - 1)?;

    let cache = ArithCache::new(q_max)?;
    let spectrum = rft_forward(&series, q_max, &cache)?;
    let rows = wk_check(&series, &spectrum, a.hmax, &cache)?;
    write_table(
        &a.out,
        &["h", "lhs", "rhs", "residual"],
        rows.iter().map(|r| {
            [
                r.h.to_string(),
                fmt_f64(r.lhs),
                fmt_f64(r.rhs),
                fmt_f64(r.residual),
            ]
        }),
    )?;
    let worst = rows
        .iter()
        .max_by(|x, y| x.residual.abs().total_cmp(&y.residual.abs()))
        .expect("h = 0 is always present");
    writeln!(
        stdout,
        "t = {t}, q_max = {q_max}, h = 0..{}: max |residual| = {:.3e} at h = {}",
        a.hmax,
        worst.residual.abs(),
        worst.h
    )
    .map_err(io_stdout)?;
    writeln!(stdout, "wrote {}", a.out.display()).map_err(io_stdout)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn band_parsing() {
        assert_eq!(parse_band("0.001:0.25").unwrap(), (0.001, 0.25));
        assert!(parse_band("0.25").is_err());
        assert!(parse_band("0.3:0.2").is_err());
        assert!(parse_band("0:0.2").is_err());
    }

    #[test]
    fn quoting() {
        assert_eq!(quote("a/b.tsv"), "a/b.tsv");
        assert_eq!(quote("a b"), "'a b'");
        assert_eq!(quote(""), "''");
    }

    #[test]
    fn qmax_defaults() {
        assert_eq!(resolve_qmax(None, 100).unwrap(), 100);
        assert_eq!(resolve_qmax(None, 5000).unwrap(), 1000);
        assert!(resolve_qmax(Some(CLI_CACHE_LIMIT + 1), 10)
            .unwrap_err()
            .is_usage());
    }

    #[test]
    fn unknown_flag_is_usage_error() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_from_args(["rftkit", "rs-table", "--bogus"], &mut out, &mut err);
        assert_eq!(code, EXIT_USAGE);
    }
}
