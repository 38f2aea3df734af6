//! Averaging the RFT over start offsets removes most of the phase
//! sensitivity of a single transform.
//!
//! Run with: cargo run --example phase_averaging

use std::f64::consts::PI;

use rftkit::synth::{gen_cosine, CosineSpec};
use rftkit::{phase_averaged_rft, rft_forward, ArithCache, DelayReducer};

fn main() -> rftkit::Result<()> {
    let (n0, t, shifts) = (18u32, 540, 18);
    let cache = ArithCache::new(60)?;
    println!("n0 = {n0}, t = {t}, {shifts} shifts; amplitude at q = n0");
    println!("  delta    single     rms   meanabs");
    for k in 0..8 {
        let delta = k as f64 * PI / 8.0;
        let x = gen_cosine(&CosineSpec::new(n0, t).with_delta(delta))?;
        let single = rft_forward(&x, 60, &cache)?.get(n0 as usize).unwrap();
        let rms = phase_averaged_rft(&x, shifts, 60, DelayReducer::Rms, &cache)?;
        let abs = phase_averaged_rft(&x, shifts, 60, DelayReducer::MeanAbs, &cache)?;
        println!(
            "  {:5.3}  {single:+.5}  {:.5}  {:.5}",
            delta,
            rms.get(n0 as usize).unwrap(),
            abs.get(n0 as usize).unwrap()
        );
    }
    let phi = cache.euler_phi(n0 as u64)? as f64;
    println!(
        "1/phi(n0) = {:.5}; rms over a full turn of phase tends to {:.5}",
        1.0 / phi,
        1.0 / (phi * 2f64.sqrt())
    );
    Ok(())
}
