use std::io::Write;

use num_complex::Complex64;
use proptest::prelude::*;

use rftkit::fft::{dft, radix2_in_place};
use rftkit::ingest::{
    load_series, read_json, read_spectrum_tsv, write_json, write_spectrum, LoadSpec, NaPolicy,
    OutputFormat,
};
use rftkit::{
    dft_power, rft_forward, ArithCache, FourierSpectrum, RftSpectrum, TimeSeries, Window,
};

fn series(v: Vec<f64>) -> TimeSeries {
    TimeSeries::from_values(v, "prop").unwrap()
}

fn values(len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-100.0f64..100.0, len)
}

fn naive_dft(x: &[Complex64]) -> Vec<Complex64> {
    let t = x.len();
    (0..t)
        .map(|k| {
            x.iter()
                .enumerate()
                .map(|(j, v)| {
                    let ang = -2.0 * std::f64::consts::PI * ((j * k) % t) as f64 / t as f64;
                    v * Complex64::from_polar(1.0, ang)
                })
                .sum()
        })
        .collect()
}

proptest! {
    #[test]
    fn rft_is_linear(
        (x, y) in (8usize..200).prop_flat_map(|t| (values(t..t + 1), values(t..t + 1))),
        a in -3.0f64..3.0,
        b in -3.0f64..3.0,
    ) {
        let cache = ArithCache::new(64).unwrap();
        let q_max = x.len().min(64);
        let combo: Vec<f64> = x.iter().zip(&y).map(|(u, v)| a * u + b * v).collect();
        let sx = rft_forward(&series(x), q_max, &cache).unwrap();
        let sy = rft_forward(&series(y), q_max, &cache).unwrap();
        let sc = rft_forward(&series(combo), q_max, &cache).unwrap();
        for q in 1..=q_max {
            let want = a * sx.get(q).unwrap() + b * sy.get(q).unwrap();
            prop_assert!((sc.get(q).unwrap() - want).abs() <= 1e-9 * (1.0 + want.abs()) * 100.0);
        }
    }

    #[test]
    fn power_scales_quadratically(x in values(4..300), c in 0.1f64..10.0) {
        prop_assume!(x.iter().any(|v| (v - x[0]).abs() > 1e-6));
        let scaled: Vec<f64> = x.iter().map(|v| c * v).collect();
        for w in [Window::None, Window::Hann] {
            let p = dft_power(&series(x.clone()), w).unwrap();
            let q = dft_power(&series(scaled.clone()), w).unwrap();
            let tol = 1e-9 * c * c * p.total_power().max(1e-300);
            for (a, b) in p.power().iter().zip(q.power()) {
                prop_assert!((b - c * c * a).abs() <= tol);
            }
        }
    }

    #[test]
    fn periodogram_ignores_circular_shift(x in values(4..300), shift in 0usize..300) {
        let s = shift % x.len();
        let mut rotated = x.clone();
        rotated.rotate_left(s);
        let p = dft_power(&series(x), Window::None).unwrap();
        let q = dft_power(&series(rotated), Window::None).unwrap();
        let tol = 1e-9 * p.total_power().max(1e-12);
        for (a, b) in p.power().iter().zip(q.power()) {
            prop_assert!((a - b).abs() <= tol);
        }
    }

    #[test]
    fn parseval(x in values(2..400)) {
        let t = x.len();
        let mean = x.iter().sum::<f64>() / t as f64;
        let var = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / t as f64;
        let p = dft_power(&series(x), Window::None).unwrap();
        let mut total = 2.0 * p.total_power();
        if t % 2 == 0 {
            total -= p.power()[t / 2 - 1];
        }
        prop_assert!((total - var).abs() <= 1e-9 * var.max(1e-12));
    }

    #[test]
    fn bluestein_matches_naive(re in values(1..130), im_seed in any::<u64>()) {
        let x: Vec<Complex64> = re
            .iter()
            .enumerate()
            .map(|(i, r)| Complex64::new(*r, ((im_seed >> (i % 64)) & 0xff) as f64 - 128.0))
            .collect();
        let got = dft(&x);
        let want = naive_dft(&x);
        let scale: f64 = x.iter().map(|v| v.norm()).sum::<f64>().max(1.0);
        for (g, w) in got.iter().zip(&want) {
            prop_assert!((g - w).norm() <= 1e-10 * scale);
        }
    }

    #[test]
    fn rft_json_round_trip(x in values(2..120)) {
        let cache = ArithCache::new(120).unwrap();
        let s = rft_forward(&series(x), 40, &cache).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.json");
        write_json(&s, &path).unwrap();
        let back: RftSpectrum = read_json(&path).unwrap();
        prop_assert_eq!(back.q_max(), s.q_max());
        for (a, b) in back.coefficients().iter().zip(s.coefficients()) {
            prop_assert!((a - b).abs() <= 1e-15 * b.abs().max(1e-300));
        }
    }

    #[test]
    fn fourier_tsv_round_trip(x in values(2..300)) {
        let s = dft_power(&series(x), Window::Hann).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.tsv");
        write_spectrum(&s, &path, OutputFormat::Tsv).unwrap();
        let rows = read_spectrum_tsv(&path).unwrap();
        prop_assert_eq!(rows.len(), s.bins());
        for ((f, p), (f0, p0)) in rows.iter().zip(s.iter()) {
            prop_assert_eq!(*f, f0);
            prop_assert_eq!(*p, p0);
        }
        let json = dir.path().join("p.json");
        write_json(&s, &json).unwrap();
        let back: FourierSpectrum = read_json(&json).unwrap();
        prop_assert_eq!(back.bins(), s.bins());
    }

    #[test]
    fn loader_never_panics(text in "[0-9a-zA-Z.,;\\- \n\t\"]{0,300}", col in 0usize..3, skip in 0usize..3) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("in.csv");
        std::fs::File::create(&path).unwrap().write_all(text.as_bytes()).unwrap();
        for na in [NaPolicy::Fail, NaPolicy::Drop, NaPolicy::Interpolate] {
            let spec = LoadSpec::new(&path).column(col).skip_header(skip).na_policy(na);
            if let Ok(s) = load_series(&spec) {
                prop_assert!(!s.is_empty() && s.values().iter().all(|v| v.is_finite()));
            }
        }
    }
}

#[test]
fn radix2_matches_naive_up_to_4096() {
    for log in 0..=12 {
        let t = 1usize << log;
        let x: Vec<Complex64> = (0..t)
            .map(|j| Complex64::new(((j * 7919) % 113) as f64 - 56.0, ((j * 104729) % 37) as f64))
            .collect();
        let mut got = x.clone();
        radix2_in_place(&mut got, false);
        let want = naive_dft(&x);
        let scale: f64 = x.iter().map(|v| v.norm()).sum();
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).norm() <= 1e-11 * scale.max(1.0), "t = {t}");
        }
        radix2_in_place(&mut got, true);
        for (g, v) in got.iter().zip(&x) {
            assert!((g / t as f64 - v).norm() <= 1e-9, "inverse t = {t}");
        }
    }
}
