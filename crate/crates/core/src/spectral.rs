//! Classical periodogram and `1/f^α` slope fitting, for comparison with the
//! Ramanujan-Fourier spectrum.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fft;
use crate::series::{Provenance, TimeSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Window {
    #[default]
    None,
    Hann,
}

impl Window {
    pub fn as_str(self) -> &'static str {
        match self {
            Window::None => "none",
            Window::Hann => "hann",
        }
    }
}

/// Periodogram bins `P(f_k)` at `f_k = k/t`, `k = 1..=⌊t/2⌋`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FourierSpectrumRepr", into = "FourierSpectrumRepr")]
pub struct FourierSpectrum {
    power: Vec<f64>,
    t: usize,
    window: Window,
    provenance: Provenance,
}

#[derive(Serialize, Deserialize)]
struct FourierSpectrumRepr {
    kind: String,
    t: usize,
    bins: usize,
    window: Window,
    #[serde(flatten)]
    provenance: Provenance,
    power: Vec<f64>,
}

impl From<FourierSpectrum> for FourierSpectrumRepr {
    fn from(s: FourierSpectrum) -> Self {
        FourierSpectrumRepr {
            kind: "fourier".into(),
            t: s.t,
            bins: s.power.len(),
            window: s.window,
            provenance: s.provenance,
            power: s.power,
        }
    }
}

impl TryFrom<FourierSpectrumRepr> for FourierSpectrum {
    type Error = Error;

    fn try_from(r: FourierSpectrumRepr) -> Result<Self> {
        if r.kind != "fourier" {
            return Err(Error::invalid(format!(
                "expected a fourier spectrum, found '{}'",
                r.kind
            )));
        }
        if r.bins != r.power.len() {
            return Err(Error::invalid(format!(
                "bin count {} does not match {} power values",
                r.bins,
                r.power.len()
            )));
        }
        let mut s = FourierSpectrum::from_power(r.power, r.t, r.window)?;
        s.provenance = r.provenance;
        Ok(s)
    }
}

impl FourierSpectrum {
    /// Wraps precomputed bins; `power[k - 1]` is `P(k/t)`.
    pub fn from_power(power: Vec<f64>, t: usize, window: Window) -> Result<Self> {
        if power.len() != t / 2 || power.is_empty() {
            return Err(Error::invalid(format!(
                "a length-{t} series has {} bins, got {}",
                t / 2,
                power.len()
            )));
        }
        if let Some(k) = power.iter().position(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::invalid(format!(
                "bin {} has invalid power {}",
                k + 1,
                power[k]
            )));
        }
        Ok(FourierSpectrum {
            power,
            t,
            window,
            provenance: Provenance::default(),
        })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn bins(&self) -> usize {
        self.power.len()
    }

    pub fn power(&self) -> &[f64] {
        &self.power
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn frequency(&self, k: usize) -> f64 {
        k as f64 / self.t as f64
    }

    /// `(f_k, P(f_k))` for every bin.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.power
            .iter()
            .enumerate()
            .map(|(i, &p)| (self.frequency(i + 1), p))
    }

    pub fn total_power(&self) -> f64 {
        self.power.iter().sum()
    }

    /// Strongest bin as `(k, f_k, share of total power)`.
    pub fn dominant_bin(&self) -> (usize, f64, f64) {
        let (i, &p) = self
            .power
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1).then(b.0.cmp(&a.0)))
            .expect("spectrum has at least one bin");
        let total = self.total_power();
        let share = if total > 0.0 { p / total } else { 0.0 };
        (i + 1, self.frequency(i + 1), share)
    }
}

fn hann(t: usize) -> Vec<f64> {
    (0..t)
        .map(|j| 0.5 * (1.0 - (2.0 * PI * j as f64 / t as f64).cos()))
        .collect()
}

/// Periodogram `P(f_k) = |(1/t) Σ x(n) e^{-2πikn/t}|²` of the mean-removed,
/// optionally Hann-windowed series.
///
/// The Hann taper is rescaled to unit mean square so windowed and plain
/// spectra have comparable total power.
pub fn dft_power(series: &TimeSeries, window: Window) -> Result<FourierSpectrum> {
    let t = series.len();
    if t < 2 {
        return Err(Error::invalid("periodogram needs at least 2 samples"));
    }
    let mean = series.values().iter().sum::<f64>() / t as f64;
    let mut x: Vec<f64> = series.values().iter().map(|v| v - mean).collect();
    if window == Window::Hann {
        let w = hann(t);
        let gain = (w.iter().map(|v| v * v).sum::<f64>() / t as f64).sqrt();
        for (v, wj) in x.iter_mut().zip(&w) {
            *v *= wj / gain;
        }
    }
    let spectrum = fft::dft_real(&x);
    let norm = 1.0 / t as f64;
    let power = spectrum[1..=t / 2]
        .iter()
        .map(|c| (c * norm).norm_sqr())
        .collect();
    Ok(FourierSpectrum {
        power,
        t,
        window,
        provenance: series.provenance().clone(),
    })
}

/// Least-squares fit of `log P = intercept - alpha · log f` over a band.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeFit {
    pub alpha: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub band: (f64, f64),
    pub bins_used: usize,
    pub zero_bins_skipped: usize,
}

/// Minimum number of positive-power bins [`fit_slope`] accepts.
pub const MIN_FIT_BINS: usize = 8;

pub fn fit_slope(spectrum: &FourierSpectrum, f_lo: f64, f_hi: f64) -> Result<SlopeFit> {
    if !(f_lo.is_finite() && f_hi.is_finite() && f_lo > 0.0 && f_lo < f_hi) {
        return Err(Error::invalid(format!(
            "fit band {f_lo}:{f_hi} must satisfy 0 < f_lo < f_hi"
        )));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut skipped = 0;
    for (f, p) in spectrum.iter().filter(|(f, _)| *f >= f_lo && *f <= f_hi) {
        if p > 0.0 {
            xs.push(f.ln());
            ys.push(p.ln());
        } else {
            skipped += 1;
        }
    }
    if xs.len() < MIN_FIT_BINS {
        return Err(Error::InsufficientData {
            needed: MIN_FIT_BINS,
            got: xs.len(),
            context: format!("positive-power bins in band {f_lo}:{f_hi} ({skipped} zero bins)"),
        });
    }

    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(&ys) {
        let (dx, dy) = (x - mx, y - my);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy > 0.0 {
        (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0)
    } else {
        1.0
    };
    Ok(SlopeFit {
        alpha: -slope,
        intercept,
        r_squared,
        band: (f_lo, f_hi),
        bins_used: xs.len(),
        zero_bins_skipped: skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(values: Vec<f64>) -> TimeSeries {
        TimeSeries::from_values(values, "test").unwrap()
    }

    #[test]
    fn pure_tone_single_bin() {
        let x = series(
            (1..=1000)
                .map(|n| (2.0 * PI * n as f64 / 10.0).cos())
                .collect(),
        );
        let p = dft_power(&x, Window::None).unwrap();
        assert_eq!(p.bins(), 500);
        let (k, f, share) = p.dominant_bin();
        assert_eq!(k, 100);
        assert!((f - 0.1).abs() < 1e-15);
        assert!(share >= 0.99);
    }

    #[test]
    fn constant_has_no_power() {
        let p = dft_power(&series(vec![4.2; 64]), Window::None).unwrap();
        assert!(p.power().iter().all(|&v| v < 1e-25));
        let p = dft_power(&series(vec![4.2; 50]), Window::Hann).unwrap();
        assert!(p.power().iter().all(|&v| v < 1e-25));
    }

    #[test]
    fn too_short() {
        assert!(dft_power(&series(vec![1.0]), Window::None).is_err());
    }

    #[test]
    fn hann_tames_leakage() {
        // off-grid tone: far bins are much quieter with the taper
        let x = series(
            (1..=512)
                .map(|n| (2.0 * PI * n as f64 / 9.7).cos())
                .collect(),
        );
        let plain = dft_power(&x, Window::None).unwrap();
        let tapered = dft_power(&x, Window::Hann).unwrap();
        assert!(tapered.power()[200] < 1e-3 * plain.power()[200]);
        assert_eq!(tapered.window(), Window::Hann);
    }

    #[test]
    fn exact_power_law() {
        let t = 1024;
        let power = (1..=t / 2)
            .map(|k| (k as f64 / t as f64).powf(-1.0))
            .collect();
        let s = FourierSpectrum::from_power(power, t, Window::None).unwrap();
        let fit = fit_slope(&s, 0.5 / t as f64, 0.5).unwrap();
        assert!((fit.alpha - 1.0).abs() < 1e-9);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
        assert_eq!(fit.bins_used, 512);
    }

    #[test]
    fn fit_needs_bins_and_skips_zeros() {
        let t = 64;
        let mut power: Vec<f64> = (1..=t / 2).map(|k| 1.0 / k as f64).collect();
        power[3] = 0.0;
        let s = FourierSpectrum::from_power(power, t, Window::None).unwrap();
        let fit = fit_slope(&s, 0.01, 0.5).unwrap();
        assert_eq!(fit.zero_bins_skipped, 1);
        assert_eq!(fit.bins_used, 31);
        assert!(matches!(
            fit_slope(&s, 0.01, 0.1),
            Err(Error::InsufficientData { .. })
        ));
        assert!(fit_slope(&s, 0.3, 0.2).is_err());
        assert!(fit_slope(&s, 0.0, 0.2).is_err());
    }

    #[test]
    fn from_power_checks_shape() {
        assert!(FourierSpectrum::from_power(vec![1.0; 3], 8, Window::None).is_err());
        assert!(FourierSpectrum::from_power(vec![-1.0; 4], 8, Window::None).is_err());
    }
}
