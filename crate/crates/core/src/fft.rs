//! Iterative radix-2 FFT, plus Bluestein's chirp-z for other lengths.
//!
//! Bluestein rewrites a length-`n` DFT as a circular convolution, which is
//! zero-padded to a power of two and done with the radix-2 kernel. Both
//! paths compute `X_k = Σ_j x_j e^{-2πijk/n}`.

use std::f64::consts::PI;

use num_complex::Complex64;

fn bit_reverse_permute(data: &mut [Complex64]) {
    let n = data.len();
    let bits = n.trailing_zeros();
    if bits == 0 {
        return;
    }
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if i < j {
            data.swap(i, j);
        }
    }
}

/// In-place forward (`inverse = false`) or unnormalized inverse transform.
///
/// Panics if the length is not a power of two.
pub fn radix2_in_place(data: &mut [Complex64], inverse: bool) {
    let n = data.len();
    assert!(
        n.is_power_of_two(),
        "radix-2 length must be a power of two, got {n}"
    );
    bit_reverse_permute(data);
    let sign = if inverse { 1.0 } else { -1.0 };
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let step = sign * 2.0 * PI / len as f64;
        for start in (0..n).step_by(len) {
            for k in 0..half {
                // twiddle per k rather than by repeated multiplication, to
                // keep the error flat at large n
                let w = Complex64::from_polar(1.0, step * k as f64);
                let u = data[start + k];
                let v = data[start + k + half] * w;
                data[start + k] = u + v;
                data[start + k + half] = u - v;
            }
        }
        len <<= 1;
    }
}

fn bluestein(input: &[Complex64]) -> Vec<Complex64> {
    let n = input.len();
    let m = (2 * n - 1).next_power_of_two();
    // chirp w_k = e^{-iπk²/n}; k² reduced mod 2n keeps the angle small
    let chirp: Vec<Complex64> = (0..n)
        .map(|k| {
            let k2 = (k as u128 * k as u128 % (2 * n as u128)) as f64;
            Complex64::from_polar(1.0, -PI * k2 / n as f64)
        })
        .collect();

    let mut a = vec![Complex64::new(0.0, 0.0); m];
    for k in 0..n {
        a[k] = input[k] * chirp[k];
    }
    let mut b = vec![Complex64::new(0.0, 0.0); m];
    b[0] = chirp[0].conj();
    for k in 1..n {
        b[k] = chirp[k].conj();
        b[m - k] = chirp[k].conj();
    }

    radix2_in_place(&mut a, false);
    radix2_in_place(&mut b, false);
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= y;
    }
    radix2_in_place(&mut a, true);
    let scale = 1.0 / m as f64;
    (0..n).map(|k| a[k] * scale * chirp[k]).collect()
}

/// Forward DFT of any length.
pub fn dft(input: &[Complex64]) -> Vec<Complex64> {
    let n = input.len();
    if n <= 1 {
        return input.to_vec();
    }
    if n.is_power_of_two() {
        let mut data = input.to_vec();
        radix2_in_place(&mut data, false);
        data
    } else {
        bluestein(input)
    }
}

/// Forward DFT of a real signal.
pub fn dft_real(input: &[f64]) -> Vec<Complex64> {
    let data: Vec<Complex64> = input.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    dft(&data)
}
