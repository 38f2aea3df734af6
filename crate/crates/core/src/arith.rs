//! Exact integer arithmetic: a smallest-prime-factor sieve that also yields
//! Euler's totient and the Möbius function, and Ramanujan sums `c_q(n)`.
//!
//! `c_q(n)` is evaluated through the closed form
//! `c_q(n) = μ(q/g) φ(q) / φ(q/g)` with `g = gcd(q, n)`, which is exact
//! integer arithmetic once the tables are built. The primitive-root sum
//! [`ramanujan_sum_direct`] is kept as an independent floating-point check.

use std::f64::consts::PI;

use crate::error::{check_range, Error, Result};

/// Smallest-prime-factor, totient and Möbius tables for `1..=limit`.
///
/// Immutable once built; share it freely between threads.
#[derive(Debug, Clone)]
pub struct ArithCache {
    limit: usize,
    spf: Vec<u32>,
    phi: Vec<u32>,
    mu: Vec<i8>,
}

impl ArithCache {
    /// Runs a linear sieve up to `limit`, filling all three tables in one pass.
    pub fn new(limit: usize) -> Result<Self> {
        if limit == 0 {
            return Err(Error::invalid("cache limit must be at least 1"));
        }
        if limit > u32::MAX as usize {
            return Err(Error::invalid(format!(
                "cache limit {limit} exceeds {}",
                u32::MAX
            )));
        }

        let mut spf = vec![0u32; limit + 1];
        let mut phi = vec![0u32; limit + 1];
        let mut mu = vec![0i8; limit + 1];
        let mut primes: Vec<u32> = Vec::new();
        phi[1] = 1;
        mu[1] = 1;

        for i in 2..=limit {
            if spf[i] == 0 {
                spf[i] = i as u32;
                phi[i] = i as u32 - 1;
                mu[i] = -1;
                primes.push(i as u32);
            }
            let spf_i = spf[i];
            for &p in &primes {
                let m = i * p as usize;
                if p > spf_i || m > limit {
                    break;
                }
                spf[m] = p;
                if p == spf_i {
                    phi[m] = phi[i] * p;
                    mu[m] = 0;
                } else {
                    phi[m] = phi[i] * (p - 1);
                    mu[m] = -mu[i];
                }
            }
        }

        Ok(ArithCache {
            limit,
            spf,
            phi,
            mu,
        })
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    fn index(&self, q: u64) -> Result<usize> {
        check_range("q", q, 1, self.limit as u64)?;
        Ok(q as usize)
    }

    pub fn euler_phi(&self, q: u64) -> Result<u64> {
        Ok(self.phi[self.index(q)?] as u64)
    }

    pub fn mobius(&self, q: u64) -> Result<i8> {
        Ok(self.mu[self.index(q)?])
    }

    /// Smallest prime factor of `q`; `1` for `q = 1`.
    pub fn smallest_prime_factor(&self, q: u64) -> Result<u64> {
        let i = self.index(q)?;
        Ok(if i == 1 { 1 } else { self.spf[i] as u64 })
    }

    /// Prime factorization of `q` as `(prime, exponent)` pairs in ascending order.
    pub fn factorize(&self, q: u64) -> Result<Vec<(u64, u32)>> {
        let mut rest = self.index(q)?;
        let mut out: Vec<(u64, u32)> = Vec::new();
        while rest > 1 {
            let p = self.spf[rest] as usize;
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            out.push((p as u64, e));
        }
        Ok(out)
    }

    /// Ramanujan sum `c_q(n)`, exact. `n = 0` gives `φ(q)`.
    pub fn ramanujan_sum(&self, q: u64, n: u64) -> Result<i64> {
        let qi = self.index(q)?;
        Ok(self.ramanujan_sum_unchecked(qi, n))
    }

    #[inline]
    fn ramanujan_sum_unchecked(&self, q: usize, n: u64) -> i64 {
        let g = gcd(q as u64, n) as usize;
        let r = q / g;
        let mu = self.mu[r];
        if mu == 0 {
            return 0;
        }
        // φ(r) divides φ(q) whenever r | q.
        mu as i64 * (self.phi[q] / self.phi[r]) as i64
    }

    /// One period `c_q(1), ..., c_q(q)`.
    pub fn ramanujan_period(&self, q: u64) -> Result<Vec<i64>> {
        let qi = self.index(q)?;
        Ok((1..=q)
            .map(|n| self.ramanujan_sum_unchecked(qi, n))
            .collect())
    }
}

/// Euclid. `gcd(q, 0) = q`.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// `c_q(n)` as the sum of `cos(2πpn/q)` over `1 <= p <= q` coprime to `q`.
///
/// O(q) and inexact; only used to cross-check the closed form.
pub fn ramanujan_sum_direct(q: u64, n: u64) -> Result<f64> {
    if q == 0 {
        return Err(Error::invalid("q must be at least 1"));
    }
    let n_mod = n % q;
    let mut sum = 0.0;
    for p in 1..=q {
        if gcd(p, q) == 1 {
            // reduce p·n mod q before scaling so the angle stays in [0, 2π)
            let k = (p as u128 * n_mod as u128 % q as u128) as f64;
            sum += (2.0 * PI * k / q as f64).cos();
        }
    }
    Ok(sum)
}

/// Truncated expansion `Σ_{q=1}^{Q} π²/(6q²) · c_q(n)` of `σ(n)/n`.
///
/// Since `|c_q(n)| <= n`, the tail beyond `Q` is bounded by `π² n / (6Q)`.
pub fn sigma_ratio_expansion(n: u64, terms: u64, cache: &ArithCache) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    check_range("Q", terms, 1, cache.limit() as u64)?;
    let scale = PI * PI / 6.0;
    let mut sum = 0.0;
    for q in 1..=terms as usize {
        let c = cache.ramanujan_sum_unchecked(q, n);
        if c != 0 {
            let qf = q as f64;
            sum += scale * c as f64 / (qf * qf);
        }
    }
    Ok(sum)
}

/// Upper bound on the truncation error of [`sigma_ratio_expansion`].
pub fn sigma_ratio_tail_bound(n: u64, terms: u64) -> f64 {
    PI * PI * n as f64 / (6.0 * terms as f64)
}
