//! The Ramanujan-Fourier transform.
//!
//! For a finite sample `a(1..=t)` the coefficient at scale `q` is the
//! finite-`t` mean-value estimator
//!
//! ```text
//! a_q = (1 / (φ(q) t)) Σ_{n=1}^{t} a(n) c_q(n)
//! ```
//!
//! and the expansion runs the other way, `â(n) = Σ_q a_q c_q(n)`. Coefficients
//! are signed. Every inner sum runs in ascending `n`, so a given input always
//! produces bit-identical output.
//!
//! A cosine of period `n0` and phase `δ` shows up at `q = n0` with amplitude
//! `a0 cos(δ) / φ(n0)`, plus an `O(n0 / t)` error when `t` is not a multiple
//! of `n0`. The `cos(δ)` factor can hide a line completely, which is what
//! [`phase_averaged_rft`] works around.

use serde::{Deserialize, Serialize};

use crate::arith::ArithCache;
use crate::error::{check_range, Error, Result};
use crate::series::{Provenance, TimeSeries};

/// How per-shift spectra were combined, if at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DelayReducer {
    None,
    Rms,
    MeanAbs,
}

impl DelayReducer {
    pub fn as_str(self) -> &'static str {
        match self {
            DelayReducer::None => "none",
            DelayReducer::Rms => "rms",
            DelayReducer::MeanAbs => "mean-abs",
        }
    }
}

/// Coefficients `a_1, ..., a_{q_max}` and the sample length they came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RftSpectrumRepr", into = "RftSpectrumRepr")]
pub struct RftSpectrum {
    coefficients: Vec<f64>,
    t: usize,
    delay_reducer: DelayReducer,
    num_shifts: usize,
    provenance: Provenance,
}

#[derive(Serialize, Deserialize)]
struct RftSpectrumRepr {
    kind: String,
    t: usize,
    q_max: usize,
    delay_reducer: DelayReducer,
    num_shifts: usize,
    #[serde(flatten)]
    provenance: Provenance,
    coefficients: Vec<f64>,
}

impl From<RftSpectrum> for RftSpectrumRepr {
    fn from(s: RftSpectrum) -> Self {
        RftSpectrumRepr {
            kind: "rft".into(),
            t: s.t,
            q_max: s.coefficients.len(),
            delay_reducer: s.delay_reducer,
            num_shifts: s.num_shifts,
            provenance: s.provenance,
            coefficients: s.coefficients,
        }
    }
}

impl TryFrom<RftSpectrumRepr> for RftSpectrum {
    type Error = Error;

    fn try_from(r: RftSpectrumRepr) -> Result<Self> {
        if r.kind != "rft" {
            return Err(Error::invalid(format!(
                "expected an rft spectrum, found '{}'",
                r.kind
            )));
        }
        if r.q_max != r.coefficients.len() {
            return Err(Error::invalid(format!(
                "q_max {} does not match {} coefficients",
                r.q_max,
                r.coefficients.len()
            )));
        }
        let mut s = RftSpectrum::from_coefficients(r.coefficients, r.t)?;
        s.delay_reducer = r.delay_reducer;
        s.num_shifts = r.num_shifts;
        s.provenance = r.provenance;
        Ok(s)
    }
}

impl RftSpectrum {
    /// Builds a spectrum from explicit coefficients, `coefficients[q - 1] = a_q`.
    pub fn from_coefficients(coefficients: Vec<f64>, t: usize) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::invalid("spectrum needs at least one coefficient"));
        }
        if let Some(i) = coefficients.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("a_{} is not finite", i + 1)));
        }
        Ok(RftSpectrum {
            coefficients,
            t,
            delay_reducer: DelayReducer::None,
            num_shifts: 1,
            provenance: Provenance::default(),
        })
    }

    pub fn q_max(&self) -> usize {
        self.coefficients.len()
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// `a_q`, or `None` outside `1..=q_max`.
    pub fn get(&self, q: usize) -> Option<f64> {
        q.checked_sub(1)
            .and_then(|i| self.coefficients.get(i).copied())
    }

    pub fn delay_reducer(&self) -> DelayReducer {
        self.delay_reducer
    }

    pub fn num_shifts(&self) -> usize {
        self.num_shifts
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// The `k` scales with the largest `|a_q|`, largest first; ties go to the smaller `q`.
    pub fn largest(&self, k: usize) -> Vec<(usize, f64)> {
        let mut idx: Vec<usize> = (0..self.coefficients.len()).collect();
        idx.sort_by(|&a, &b| {
            self.coefficients[b]
                .abs()
                .total_cmp(&self.coefficients[a].abs())
                .then(a.cmp(&b))
        });
        idx.into_iter()
            .take(k)
            .map(|i| (i + 1, self.coefficients[i]))
            .collect()
    }
}

/// `(1/t) Σ a(n)`, the finite-sample mean value.
pub fn mean_value(series: &TimeSeries) -> f64 {
    series.values().iter().sum::<f64>() / series.len() as f64
}

fn coefficients(values: &[f64], q_max: usize, cache: &ArithCache) -> Result<Vec<f64>> {
    check_range("q_max", q_max as u64, 1, cache.limit() as u64)?;
    let t = values.len() as f64;
    let mut out = Vec::with_capacity(q_max);
    for q in 1..=q_max as u64 {
        let period = cache.ramanujan_period(q)?;
        let phi = cache.euler_phi(q)? as f64;
        let sum: f64 = values
            .iter()
            .zip(period.iter().cycle())
            .map(|(&a, &c)| a * c as f64)
            .sum();
        out.push(sum / (phi * t));
    }
    Ok(out)
}

/// Forward transform for scales `1..=q_max`.
pub fn rft_forward(series: &TimeSeries, q_max: usize, cache: &ArithCache) -> Result<RftSpectrum> {
    let coefficients = coefficients(series.values(), q_max, cache)?;
    Ok(RftSpectrum {
        coefficients,
        t: series.len(),
        delay_reducer: DelayReducer::None,
        num_shifts: 1,
        provenance: series.provenance().clone(),
    })
}

/// `â(n) = Σ_{q=1}^{q_max} a_q c_q(n)` for `n` in `n_from..=n_to`.
pub fn rft_reconstruct(
    spectrum: &RftSpectrum,
    n_from: u64,
    n_to: u64,
    cache: &ArithCache,
) -> Result<TimeSeries> {
    if n_from == 0 || n_from > n_to {
        return Err(Error::invalid(format!(
            "reconstruction range {n_from}..={n_to} must satisfy 1 <= from <= to"
        )));
    }
    check_range("q_max", spectrum.q_max() as u64, 1, cache.limit() as u64)?;
    let mut values = vec![0.0; (n_to - n_from + 1) as usize];
    for (i, v) in values.iter_mut().enumerate() {
        let n = n_from + i as u64;
        let mut acc = 0.0;
        for (qi, &a) in spectrum.coefficients.iter().enumerate() {
            if a != 0.0 {
                acc += a * cache.ramanujan_sum(qi as u64 + 1, n)? as f64;
            }
        }
        *v = acc;
    }
    TimeSeries::new(
        values,
        Provenance::new(format!("reconstruction of {}", spectrum.provenance.label)),
    )
}

/// Divisor used for the lag-`h` autocorrelation average.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AcfNormalization {
    /// `1 / (t - h)`: average over the overlapping pairs only.
    #[default]
    Overlap,
    /// `1 / t` for every lag.
    Length,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AutocorrelationTable {
    values: Vec<f64>,
    normalization: AcfNormalization,
}

impl AutocorrelationTable {
    pub fn h_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, h: usize) -> Option<f64> {
        self.values.get(h).copied()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn normalization(&self) -> AcfNormalization {
        self.normalization
    }
}

/// `R(h) = (1/(t-h)) Σ_{n=1}^{t-h} a(n) a(n+h)` for `h = 0..=h_max`.
pub fn autocorrelation(series: &TimeSeries, h_max: usize) -> Result<AutocorrelationTable> {
    autocorrelation_with(series, h_max, AcfNormalization::Overlap)
}

pub fn autocorrelation_with(
    series: &TimeSeries,
    h_max: usize,
    normalization: AcfNormalization,
) -> Result<AutocorrelationTable> {
    let t = series.len();
    check_range("h_max", h_max as u64, 0, t as u64 - 1)?;
    let a = series.values();
    let values = (0..=h_max)
        .map(|h| {
            let sum: f64 = a[..t - h].iter().zip(&a[h..]).map(|(x, y)| x * y).sum();
            let divisor = match normalization {
                AcfNormalization::Overlap => t - h,
                AcfNormalization::Length => t,
            };
            sum / divisor as f64
        })
        .collect();
    Ok(AutocorrelationTable {
        values,
        normalization,
    })
}

/// One lag of the autocorrelation / power-spectrum comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WkRow {
    pub h: usize,
    /// `R(h)`.
    pub lhs: f64,
    /// `Σ_q a_q² c_q(h)`.
    pub rhs: f64,
    pub residual: f64,
}

/// Compares the autocorrelation of `series` with `Σ_{q<=q_max} a_q² c_q(h)`.
///
/// The identity is exact only for signals that lie in the span of the
/// `c_q` and whose sample length is a multiple of every `lcm(q, period)`
/// involved; elsewhere the residual measures how far the finite sample is
/// from that regime.
pub fn wk_check(
    series: &TimeSeries,
    spectrum: &RftSpectrum,
    h_max: usize,
    cache: &ArithCache,
) -> Result<Vec<WkRow>> {
    check_range("q_max", spectrum.q_max() as u64, 1, cache.limit() as u64)?;
    let acf = autocorrelation(series, h_max)?;
    let mut rows = Vec::with_capacity(h_max + 1);
    for (h, &lhs) in acf.values().iter().enumerate() {
        let mut rhs = 0.0;
        for (qi, &a) in spectrum.coefficients.iter().enumerate() {
            rhs += a * a * cache.ramanujan_sum(qi as u64 + 1, h as u64)? as f64;
        }
        rows.push(WkRow {
            h,
            lhs,
            rhs,
            residual: lhs - rhs,
        });
    }
    Ok(rows)
}

/// Averages spectra of `num_shifts` shifted sub-samples.
///
/// Shift `s` (for `s = 0..num_shifts`) uses `a(s+1), ..., a(s+L)` with the
/// common length `L = t - num_shifts + 1`. Signed coefficients of a line
/// average to zero over a full cycle of shifts, so the per-scale values are
/// combined by RMS or mean absolute value instead.
pub fn phase_averaged_rft(
    series: &TimeSeries,
    num_shifts: usize,
    q_max: usize,
    reducer: DelayReducer,
    cache: &ArithCache,
) -> Result<RftSpectrum> {
    let t = series.len();
    if num_shifts == 0 {
        return Err(Error::invalid("num_shifts must be at least 1"));
    }
    check_range("num_shifts", num_shifts as u64, 1, t as u64 - 1)?;
    if reducer == DelayReducer::None {
        return Err(Error::invalid(
            "phase averaging needs the rms or mean-abs reducer",
        ));
    }
    let len = t - num_shifts + 1;
    let values = series.values();
    let mut acc = vec![0.0; q_max];
    for s in 0..num_shifts {
        let coeffs = coefficients(&values[s..s + len], q_max, cache)?;
        for (slot, a) in acc.iter_mut().zip(coeffs) {
            match reducer {
                DelayReducer::Rms => *slot += a * a,
                _ => *slot += a.abs(),
            }
        }
    }
    let k = num_shifts as f64;
    let coefficients = acc
        .into_iter()
        .map(|v| match reducer {
            DelayReducer::Rms => (v / k).sqrt(),
            _ => v / k,
        })
        .collect();
    Ok(RftSpectrum {
        coefficients,
        t: len,
        delay_reducer: reducer,
        num_shifts,
        provenance: series.provenance().clone(),
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    fn series(values: Vec<f64>) -> TimeSeries {
        TimeSeries::from_values(values, "test").unwrap()
    }

    fn cosine(n0: f64, delta: f64, t: usize) -> TimeSeries {
        series(
            (1..=t)
                .map(|n| (2.0 * PI * n as f64 / n0 + delta).cos())
                .collect(),
        )
    }

    fn ramanujan_series(cache: &ArithCache, q: u64, t: u64) -> TimeSeries {
        series(
            (1..=t)
                .map(|n| cache.ramanujan_sum(q, n).unwrap() as f64)
                .collect(),
        )
    }

    #[test]
    fn mean_value_examples() {
        assert_eq!(mean_value(&series(vec![3.5; 7])), 3.5);
        assert!(mean_value(&cosine(10.0, 0.0, 100)).abs() < 1e-12);
        assert_eq!(mean_value(&series(vec![1.0, 2.0, 3.0, 4.0])), 2.5);
    }

    #[test]
    fn basis_signal_gives_unit_line() {
        let cache = ArithCache::new(100).unwrap();
        let s = rft_forward(&ramanujan_series(&cache, 5, 100), 10, &cache).unwrap();
        assert_eq!(s.get(5), Some(1.0));
        // lcm(q, 5) divides 100: the cross sum covers whole periods
        for q in [1, 2, 4, 10] {
            assert_eq!(s.get(q), Some(0.0), "a_{q}");
        }
        for q in [3, 6, 7, 8, 9] {
            assert!(s.get(q).unwrap().abs() <= 2.0 * q as f64 / 100.0, "a_{q}");
        }
    }

    #[test]
    fn cosine_lines_at_one_over_phi() {
        let cache = ArithCache::new(40).unwrap();
        for (n0, want, tol) in [
            (10.0, 0.25, 0.02),
            (14.0, 1.0 / 6.0, 0.02),
            (30.0, 0.125, 0.03),
        ] {
            let s = rft_forward(&cosine(n0, 0.0, 100), 40, &cache).unwrap();
            let got = s.get(n0 as usize).unwrap();
            assert!((got - want).abs() <= tol, "n0={n0}: {got}");
        }
    }

    #[test]
    fn quadrature_phase_hides_line() {
        let cache = ArithCache::new(40).unwrap();
        let s = rft_forward(&cosine(20.0, PI / 2.0, 400), 40, &cache).unwrap();
        assert!(s.get(20).unwrap().abs() <= 20.0 / 400.0);
    }

    #[test]
    fn q_max_beyond_cache() {
        let cache = ArithCache::new(10).unwrap();
        let err = rft_forward(&cosine(5.0, 0.0, 20), 11, &cache).unwrap_err();
        assert!(matches!(err, Error::OutOfRange { .. }));
    }

    #[test]
    fn reconstruct_single_scales() {
        let cache = ArithCache::new(10).unwrap();
        let mut c = vec![0.0; 10];
        c[0] = 2.5;
        let flat = rft_reconstruct(
            &RftSpectrum::from_coefficients(c, 1).unwrap(),
            1,
            20,
            &cache,
        )
        .unwrap();
        assert!(flat.values().iter().all(|&v| v == 2.5));

        let mut c = vec![0.0; 10];
        c[4] = 1.0;
        let rs = rft_reconstruct(
            &RftSpectrum::from_coefficients(c, 1).unwrap(),
            3,
            12,
            &cache,
        )
        .unwrap();
        for (i, &v) in rs.values().iter().enumerate() {
            assert_eq!(v, cache.ramanujan_sum(5, 3 + i as u64).unwrap() as f64);
        }
        let s = RftSpectrum::from_coefficients(vec![1.0], 1).unwrap();
        assert!(rft_reconstruct(&s, 5, 4, &cache).is_err());
        assert!(rft_reconstruct(&s, 0, 4, &cache).is_err());
    }

    #[test]
    fn round_trip_on_basis() {
        let cache = ArithCache::new(60).unwrap();
        for q0 in [3u64, 7, 9] {
            let signal = ramanujan_series(&cache, q0, 2520);
            // every lcm(q, q0) for q <= 10 divides 2520
            let s = rft_forward(&signal, 10, &cache).unwrap();
            let back = rft_reconstruct(&s, 1, 2520, &cache).unwrap();
            for (a, b) in back.values().iter().zip(signal.values()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn autocorrelation_examples() {
        let c = autocorrelation(&series(vec![-1.5; 30]), 10).unwrap();
        assert!(c.values().iter().all(|&r| r == 2.25));

        let r = autocorrelation(&cosine(10.0, 0.0, 1000), 10).unwrap();
        assert!((r.get(0).unwrap() - 0.5).abs() < 0.01);
        assert!((r.get(10).unwrap() - 0.5).abs() < 0.01);
        assert!((r.get(5).unwrap() + 0.5).abs() < 0.01);

        assert!(matches!(
            autocorrelation(&series(vec![1.0; 5]), 5),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn autocorrelation_length_normalization() {
        let r = autocorrelation_with(&series(vec![1.0; 10]), 4, AcfNormalization::Length).unwrap();
        assert_eq!(r.get(4), Some(0.6));
        assert_eq!(r.normalization(), AcfNormalization::Length);
    }

    #[test]
    fn wk_exact_when_every_period_divides_t() {
        let cache = ArithCache::new(20).unwrap();
        let signal = ramanujan_series(&cache, 7, 2520);
        let s = rft_forward(&signal, 10, &cache).unwrap();
        // lags that leave whole periods of c_7 in the overlap
        for row in wk_check(&signal, &s, 21, &cache).unwrap() {
            if row.h % 7 == 0 {
                assert!(row.residual.abs() < 1e-9, "{row:?}");
            }
        }
    }

    #[test]
    fn wk_zero_series() {
        let cache = ArithCache::new(20).unwrap();
        let zero = series(vec![0.0; 50]);
        let s = rft_forward(&zero, 20, &cache).unwrap();
        for row in wk_check(&zero, &s, 10, &cache).unwrap() {
            assert_eq!((row.lhs, row.rhs, row.residual), (0.0, 0.0, 0.0));
        }
    }

    #[test]
    fn single_shift_is_absolute_spectrum() {
        let cache = ArithCache::new(30).unwrap();
        let x = cosine(7.0, 0.3, 90);
        let plain = rft_forward(&x, 30, &cache).unwrap();
        for reducer in [DelayReducer::MeanAbs, DelayReducer::Rms] {
            let avg = phase_averaged_rft(&x, 1, 30, reducer, &cache).unwrap();
            for (a, b) in avg.coefficients().iter().zip(plain.coefficients()) {
                assert_eq!(*a, b.abs());
            }
            assert_eq!(avg.delay_reducer(), reducer);
        }
    }

    #[test]
    fn shift_averaging_recovers_hidden_line() {
        let cache = ArithCache::new(18).unwrap();
        let x = cosine(18.0, PI / 2.0, 540);
        let hidden = rft_forward(&x, 18, &cache).unwrap();
        assert!(hidden.get(18).unwrap().abs() < 1e-9);

        let avg = phase_averaged_rft(&x, 18, 18, DelayReducer::Rms, &cache).unwrap();
        let want = std::f64::consts::FRAC_1_SQRT_2 / 6.0;
        let got = avg.get(18).unwrap();
        assert!((got - want).abs() <= 0.1 * want, "{got} vs {want}");
        assert_eq!(avg.t(), 523);
    }

    #[test]
    fn shift_count_limits() {
        let cache = ArithCache::new(18).unwrap();
        let x = cosine(6.0, 0.0, 10);
        assert!(phase_averaged_rft(&x, 10, 5, DelayReducer::Rms, &cache).is_err());
        assert!(phase_averaged_rft(&x, 0, 5, DelayReducer::Rms, &cache).is_err());
        assert!(phase_averaged_rft(&x, 2, 5, DelayReducer::None, &cache).is_err());
    }

    #[test]
    fn largest_orders_by_magnitude() {
        let s = RftSpectrum::from_coefficients(vec![0.1, -0.5, 0.5, 0.2], 4).unwrap();
        assert_eq!(s.largest(3), vec![(2, -0.5), (3, 0.5), (4, 0.2)]);
    }
}
