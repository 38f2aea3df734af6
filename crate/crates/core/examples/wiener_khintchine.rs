//! Autocorrelation against the c_q-weighted RFT power. The two agree when
//! the series is a sum of Ramanujan sums over whole common periods, and
//! drift apart otherwise. Lags whose overlap t - h is not a whole number of
//! periods (h = 7 below) are off even for such a series.
//!
//! Run with: cargo run --example wiener_khintchine

use rftkit::synth::{gen_cosine, CosineSpec};
use rftkit::{rft_forward, wk_check, ArithCache, TimeSeries};

fn show(
    name: &str,
    x: &TimeSeries,
    q_max: usize,
    h: &[usize],
    cache: &ArithCache,
) -> rftkit::Result<()> {
    let s = rft_forward(x, q_max, cache)?;
    let rows = wk_check(x, &s, *h.iter().max().unwrap(), cache)?;
    println!("{name} (t = {}, q_max = {q_max})", x.len());
    for &h in h {
        let r = rows[h];
        println!(
            "  h = {h:>2}: lhs {:+.6}  rhs {:+.6}  residual {:+.2e}",
            r.lhs, r.rhs, r.residual
        );
    }
    Ok(())
}

fn main() -> rftkit::Result<()> {
    let cache = ArithCache::new(50)?;
    let basis = |t: u64| -> rftkit::Result<TimeSeries> {
        let v = (1..=t)
            .map(
                |n| Ok(cache.ramanujan_sum(7, n)? as f64 + 0.5 * cache.ramanujan_sum(3, n)? as f64),
            )
            .collect::<rftkit::Result<Vec<f64>>>()?;
        TimeSeries::from_values(v, "c_7 + c_3/2")
    };
    show(
        "c_7 + c_3/2, t a multiple of every lcm",
        &basis(2520)?,
        10,
        &[0, 7, 21, 42, 63],
        &cache,
    )?;
    show(
        "c_7 + c_3/2, 700 samples",
        &basis(700)?,
        20,
        &[0, 7, 14, 21],
        &cache,
    )?;
    show(
        "cos(2 pi n/10)",
        &gen_cosine(&CosineSpec::new(10, 10_000))?,
        50,
        &[0, 5, 10, 20, 30],
        &cache,
    )?;
    Ok(())
}
