//! Log-log periodogram slopes of a Brownian walk (the stand-in for a price
//! index) and of white noise, next to the RFT of the same walk.
//!
//! Run with: cargo run --example brownian_slope

use rftkit::ingest::{detrend, DetrendMode};
use rftkit::synth::{gen_brownian, gen_white_noise};
use rftkit::{dft_power, fit_slope, rft_forward, ArithCache, Window};

fn main() -> rftkit::Result<()> {
    let t = 1 << 14;
    let (f_lo, f_hi) = (1.0 / 2000.0, 0.25);

    for seed in [1u64, 7, 42] {
        let walk = gen_brownian(t, seed)?;
        let noise = gen_white_noise(t, seed)?;
        let fw = fit_slope(&dft_power(&walk, Window::None)?, f_lo, f_hi)?;
        let fh = fit_slope(&dft_power(&walk, Window::Hann)?, f_lo, f_hi)?;
        let fn_ = fit_slope(&dft_power(&noise, Window::None)?, f_lo, f_hi)?;
        println!(
            "seed {seed:>2}: brownian alpha = {:.3} (hann {:.3}, r^2 {:.3}); white alpha = {:+.3}",
            fw.alpha, fh.alpha, fw.r_squared, fn_.alpha
        );
    }

    // periods 100..1000 of a detrended walk: signed, irregular peaks
    let walk = detrend(&gen_brownian(t, 7)?, DetrendMode::Linear)?;
    let cache = ArithCache::new(1000)?;
    let s = rft_forward(&walk, 1000, &cache)?;
    let mut band: Vec<(usize, f64)> = (100..=1000).map(|q| (q, s.get(q).unwrap())).collect();
    band.sort_by(|a, b| b.1.abs().total_cmp(&a.1.abs()));
    println!("\nlargest RFT lines of the detrended walk for 100 <= q <= 1000:");
    for (q, a) in band.iter().take(8) {
        println!("  q = {q:>4}  a_q = {a:+.5}");
    }
    Ok(())
}
