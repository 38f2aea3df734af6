//! Ramanujan sums: a small table of c_q(n), the closed form against the
//! direct root-of-unity sum, and the expansion of sigma(n)/n.
//!
//! Run with: cargo run --example ramanujan_sums

use rftkit::arith::sigma_ratio_tail_bound;
use rftkit::{ramanujan_sum_direct, sigma_ratio_expansion, ArithCache};

fn main() -> rftkit::Result<()> {
    let cache = ArithCache::new(100_000)?;

    print!("  q\\n");
    for n in 1..=12 {
        print!("{n:>4}");
    }
    println!();
    for q in 1..=12u64 {
        print!("{q:>5}");
        for n in 1..=12 {
            print!("{:>4}", cache.ramanujan_sum(q, n)?);
        }
        println!(
            "   phi = {:>2}, mu = {:>2}",
            cache.euler_phi(q)?,
            cache.mobius(q)?
        );
    }

    let mut worst = 0.0f64;
    for q in 1..=60 {
        for n in 0..=120 {
            let d = ramanujan_sum_direct(q, n)? - cache.ramanujan_sum(q, n)? as f64;
            worst = worst.max(d.abs());
        }
    }
    println!("\nclosed form vs direct sum, q <= 60, n <= 120: max residual {worst:.2e}");

    println!("\nsigma(n)/n = (pi^2/6) sum c_q(n)/q^2:");
    for n in [1u64, 6, 12, 28, 30] {
        let sigma: u64 = (1..=n).filter(|d| n % d == 0).sum();
        for terms in [100u64, 10_000, 100_000] {
            let approx = sigma_ratio_expansion(n, terms, &cache)?;
            println!(
                "  n = {n:>2}, Q = {terms:>6}: {approx:.8}  exact {:.8}  bound {:.1e}",
                sigma as f64 / n as f64,
                sigma_ratio_tail_bound(n, terms)
            );
        }
    }
    Ok(())
}
