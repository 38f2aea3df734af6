//! A pure cosine of integer period n0 shows up in the RFT at q = n0 with
//! amplitude cos(delta)/phi(n0). The other lines shrink as the series grows.
//!
//! Run with: cargo run --example cosine_detection

use std::f64::consts::PI;

use rftkit::synth::{gen_cosine, CosineSpec};
use rftkit::{rft_forward, rft_reconstruct, ArithCache};

fn main() -> rftkit::Result<()> {
    let cache = ArithCache::new(100)?;

    println!("t = 100, q_max = 100");
    for n0 in [10u32, 14, 30] {
        let s = rft_forward(&gen_cosine(&CosineSpec::new(n0, 100))?, 100, &cache)?;
        let phi = cache.euler_phi(n0 as u64)? as f64;
        println!(
            "  n0 = {n0:>2}: a_n0 = {:.4}, 1/phi(n0) = {:.4}, top lines {:?}",
            s.get(n0 as usize).unwrap(),
            1.0 / phi,
            s.largest(3).iter().map(|p| p.0).collect::<Vec<_>>()
        );
    }

    println!("\nphase delay, n0 = 38");
    for (name, delta) in [
        ("0", 0.0),
        ("pi/4", PI / 4.0),
        ("pi/2", PI / 2.0),
        ("pi", PI),
    ] {
        let at = |t| -> rftkit::Result<f64> {
            let x = gen_cosine(&CosineSpec::new(38, t).with_delta(delta))?;
            Ok(rft_forward(&x, 100, &cache)?.get(38).unwrap())
        };
        println!(
            "  delta = {name:>4}: t = 100 -> {:+.5}, t = 380 -> {:+.5}",
            at(100)?,
            at(380)?
        );
    }

    println!("\nlargest off-peak |a_q| for n0 = 18");
    for t in [100, 200, 500, 1000, 5000] {
        let s = rft_forward(&gen_cosine(&CosineSpec::new(18, t))?, 100, &cache)?;
        let off = (1..=100)
            .filter(|&q| q != 18)
            .map(|q| s.get(q).unwrap().abs())
            .fold(0.0, f64::max);
        println!("  t = {t:>4}: {off:.5}");
    }

    // a cosine is not in the span of the c_q: the synthesis is only approximate
    let x = gen_cosine(&CosineSpec::new(10, 1000))?;
    let back = rft_reconstruct(&rft_forward(&x, 100, &cache)?, 1, 20, &cache)?;
    println!("\nreconstruction of cos(2 pi n/10) from q <= 100:");
    for n in 1..=10 {
        println!(
            "  n = {n:>2}: {:+.4}  (was {:+.4})",
            back.at(n).unwrap(),
            x.at(n).unwrap()
        );
    }
    Ok(())
}
