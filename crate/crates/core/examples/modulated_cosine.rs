//! Period-modulated cosine (carrier 10, modulation 14, t = 2000): the DFT
//! smears the energy over many bins while the RFT keeps a handful of
//! integer scales.
//!
//! Run with: cargo run --example modulated_cosine

use rftkit::arith::lcm;
use rftkit::synth::{gen_modulated_cosine, ModulatedCosineSpec, ModulationMode};
use rftkit::{dft_power, rft_forward, ArithCache, Window};

fn main() -> rftkit::Result<()> {
    let (n0, n1, t) = (10, 14, 2000);
    let q_max = 200;
    let cache = ArithCache::new(q_max)?;
    println!(
        "carrier n0 = {n0}, modulation n1 = {n1}, lcm = {}, t = {t}\n",
        lcm(n0, n1)
    );

    for mode in [
        ModulationMode::PhaseAccumulated,
        ModulationMode::Instantaneous,
    ] {
        let x = gen_modulated_cosine(&ModulatedCosineSpec::new(n0 as u32, n1 as u32, t, mode))?;

        let p = dft_power(&x, Window::None)?;
        let (k, f, share) = p.dominant_bin();
        let above_1pct = p
            .power()
            .iter()
            .filter(|&&v| v > 0.01 * p.total_power())
            .count();
        println!("--- mode = {} ---", mode.as_str());
        println!(
            "DFT: strongest bin k = {k} (period {:.2}) holds {:.1}% of power; {above_1pct} bins above 1%",
            1.0 / f,
            100.0 * share
        );

        let s = rft_forward(&x, q_max, &cache)?;
        println!("RFT: ten largest |a_q| for q <= {q_max}:");
        for (q, a) in s.largest(10) {
            println!("  q = {q:>4}  a_q = {a:+.5}");
        }
        println!();
    }
    Ok(())
}
