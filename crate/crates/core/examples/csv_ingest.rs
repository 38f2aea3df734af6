//! Loading columns from delimited files, with header rows, missing cells
//! and detrending, then running both spectra.
//!
//! Run with: cargo run --example csv_ingest

use std::path::PathBuf;

use rftkit::ingest::{detrend, load_series, DetrendMode, LoadSpec, NaPolicy};
use rftkit::{dft_power, fit_slope, rft_forward, ArithCache, Window};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

fn main() -> rftkit::Result<()> {
    let cache = ArithCache::new(1000)?;

    let walk = load_series(
        &LoadSpec::new(data("walk_sample.csv"))
            .skip_header(1)
            .column(1),
    )?;
    let fit = fit_slope(&dft_power(&walk, Window::Hann)?, 1.0 / 1000.0, 0.25)?;
    println!(
        "walk_sample.csv: {} rows, slope alpha = {:.3} over {} bins (r^2 {:.3})",
        walk.len(),
        fit.alpha,
        fit.bins_used,
        fit.r_squared
    );

    let spec = LoadSpec::new(data("cycle_sample.csv"))
        .delimiter(b';')
        .skip_header(1)
        .column(1);
    match load_series(&spec.clone()) {
        Ok(_) => println!("cycle_sample.csv loaded without gaps"),
        Err(e) => println!("cycle_sample.csv with the default policy: {e}"),
    }
    for na in [NaPolicy::Drop, NaPolicy::Interpolate] {
        let x = load_series(&spec.clone().na_policy(na))?;
        let centred = detrend(&x, DetrendMode::Mean)?;
        let (k, f, share) = dft_power(&x, Window::Hann)?.dominant_bin();
        let top: Vec<usize> = rft_forward(&centred, 400, &cache)?
            .largest(5)
            .iter()
            .map(|p| p.0)
            .collect();
        println!(
            "  {na:?}: {} rows, DFT peak at bin {k} (period {:.1}, {:.0}% of power), RFT top {top:?}",
            x.len(),
            1.0 / f,
            100.0 * share
        );
    }
    Ok(())
}
