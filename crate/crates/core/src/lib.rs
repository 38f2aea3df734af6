//! Ramanujan-Fourier analysis of time series.
//!
//! The crate expands a real sequence `a(n)` over Ramanujan sums,
//! `a(n) = Σ_q a_q c_q(n)`, and sets the result next to a classical DFT
//! periodogram. Modules:
//!
//! - [`arith`]: sieved totient and Möbius tables, exact `c_q(n)`.
//! - [`transform`]: forward and inverse RFT, autocorrelation check,
//!   shift-averaged spectra.
//! - [`spectral`]: periodogram and `1/f^α` slope fit.
//! - [`synth`]: seeded test signals.
//! - [`ingest`]: delimited-text loading, detrending, TSV / JSON output.
//! - [`cli`]: the `rftkit` command line.

pub mod arith;
pub mod cli;
mod error;
pub mod fft;
pub mod ingest;
mod series;
pub mod spectral;
pub mod synth;
pub mod transform;

pub use arith::{ramanujan_sum_direct, sigma_ratio_expansion, ArithCache};
pub use error::{Error, Result};
pub use series::{Provenance, TimeSeries};
pub use spectral::{dft_power, fit_slope, FourierSpectrum, SlopeFit, Window};
pub use transform::{
    autocorrelation, mean_value, phase_averaged_rft, rft_forward, rft_reconstruct, wk_check,
    DelayReducer, RftSpectrum,
};
