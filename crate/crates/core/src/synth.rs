//! Deterministic test signals: cosines with a phase delay, a period-modulated
//! cosine, white noise and its running sum (a Brownian walk).
//!
//! Noise comes from ChaCha20 seeded through `seed_from_u64`, turned into
//! normal deviates with the Box-Muller transform: each pair of 64-bit outputs
//! `(u1, u2)` is mapped to `(0, 1]` as `((x >> 11) + 1) / 2^53` and gives
//! `r cos θ, r sin θ` with `r = sqrt(-2 ln u1)`, `θ = 2π u2`. The recipe is
//! fixed so golden outputs stay reproducible.

use std::f64::consts::PI;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::series::{Provenance, TimeSeries};

/// Recorded alongside noise outputs.
pub const NOISE_GENERATOR: &str = "chacha20/seed_from_u64 + box-muller";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosineSpec {
    /// Period in samples.
    pub n0: u32,
    /// Phase delay in radians.
    pub delta: f64,
    pub a0: f64,
    pub t: usize,
}

impl CosineSpec {
    pub fn new(n0: u32, t: usize) -> Self {
        CosineSpec {
            n0,
            delta: 0.0,
            a0: 1.0,
            t,
        }
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn with_amplitude(mut self, a0: f64) -> Self {
        self.a0 = a0;
        self
    }
}

/// `a(n) = a0 cos(2πn/n0 + δ)` for `n = 1..=t`.
pub fn gen_cosine(spec: &CosineSpec) -> Result<TimeSeries> {
    if spec.n0 < 2 {
        return Err(Error::invalid("cosine period n0 must be at least 2"));
    }
    if spec.t == 0 {
        return Err(Error::invalid("length t must be at least 1"));
    }
    if !spec.a0.is_finite() || !spec.delta.is_finite() {
        return Err(Error::invalid("amplitude and delay must be finite"));
    }
    let n0 = spec.n0 as f64;
    let values = (1..=spec.t)
        .map(|n| spec.a0 * (2.0 * PI * n as f64 / n0 + spec.delta).cos())
        .collect();
    TimeSeries::new(
        values,
        Provenance::new(format!(
            "cosine n0={} delta={} a0={} t={}",
            spec.n0, spec.delta, spec.a0, spec.t
        )),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ModulationMode {
    /// The modulated period is substituted straight into the cosine argument.
    /// This form puts the RFT lines at 10, 12, 24 and 70 for `n0 = 10`,
    /// `n1 = 14`.
    #[default]
    Instantaneous,
    /// The phase advances by `2π / period(n)` per sample.
    PhaseAccumulated,
}

impl ModulationMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ModulationMode::Instantaneous => "inst",
            ModulationMode::PhaseAccumulated => "phase",
        }
    }
}

/// Carrier period `n0` swung by `n0 (1 + index · sin(2πn/n1))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulatedCosineSpec {
    pub n0: u32,
    pub n1: u32,
    pub t: usize,
    /// 1 swings the period between 0 and `2 n0`; 0 switches modulation off.
    pub index: f64,
    pub mode: ModulationMode,
}

impl ModulatedCosineSpec {
    pub fn new(n0: u32, n1: u32, t: usize, mode: ModulationMode) -> Self {
        ModulatedCosineSpec {
            n0,
            n1,
            t,
            index: 1.0,
            mode,
        }
    }
}

/// Floor on the modulated period, as a fraction of `n0`.
pub const PERIOD_CLAMP: f64 = 1e-6;

pub fn gen_modulated_cosine(spec: &ModulatedCosineSpec) -> Result<TimeSeries> {
    if spec.n0 < 2 || spec.n1 < 2 {
        return Err(Error::invalid("periods n0 and n1 must be at least 2"));
    }
    if spec.t == 0 {
        return Err(Error::invalid("length t must be at least 1"));
    }
    if !spec.index.is_finite() {
        return Err(Error::invalid("modulation index must be finite"));
    }
    let n0 = spec.n0 as f64;
    let n1 = spec.n1 as f64;
    let floor = PERIOD_CLAMP * n0;
    let period = |n: usize| (n0 * (1.0 + spec.index * (2.0 * PI * n as f64 / n1).sin())).max(floor);

    let values = match spec.mode {
        ModulationMode::Instantaneous => (1..=spec.t)
            .map(|n| (2.0 * PI * n as f64 / period(n)).cos())
            .collect(),
        ModulationMode::PhaseAccumulated => {
            let mut phase: f64 = 0.0;
            let mut out = Vec::with_capacity(spec.t);
            for n in 1..=spec.t {
                out.push(phase.cos());
                phase += 2.0 * PI / period(n);
            }
            out
        }
    };
    TimeSeries::new(
        values,
        Provenance::new(format!(
            "modcos n0={} n1={} t={} index={} mode={}",
            spec.n0,
            spec.n1,
            spec.t,
            spec.index,
            spec.mode.as_str()
        )),
    )
}

struct Normal {
    rng: ChaCha20Rng,
    spare: Option<f64>,
}

impl Normal {
    fn new(seed: u64) -> Self {
        Normal {
            rng: ChaCha20Rng::seed_from_u64(seed),
            spare: None,
        }
    }

    fn unit_open(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn sample(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = self.unit_open();
        let u2 = self.unit_open();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * PI * u2;
        self.spare = Some(r * theta.sin());
        r * theta.cos()
    }
}

/// I.i.d. standard normal samples.
pub fn gen_white_noise(t: usize, seed: u64) -> Result<TimeSeries> {
    if t == 0 {
        return Err(Error::invalid("length t must be at least 1"));
    }
    let mut normal = Normal::new(seed);
    let values = (0..t).map(|_| normal.sample()).collect();
    TimeSeries::new(
        values,
        Provenance::new(format!("white t={t} ({NOISE_GENERATOR})")).with_seed(seed),
    )
}

/// Running sum of [`gen_white_noise`] with the same seed.
pub fn gen_brownian(t: usize, seed: u64) -> Result<TimeSeries> {
    if t < 2 {
        return Err(Error::invalid("brownian walk needs t >= 2"));
    }
    let steps = gen_white_noise(t, seed)?;
    let mut level = 0.0;
    let values = steps
        .values()
        .iter()
        .map(|s| {
            level += s;
            level
        })
        .collect();
    TimeSeries::new(
        values,
        Provenance::new(format!("brownian t={t} ({NOISE_GENERATOR})")).with_seed(seed),
    )
}
