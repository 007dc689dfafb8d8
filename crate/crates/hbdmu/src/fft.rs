//! Radix-2 FFT used for Fourier coefficients of boundary profiles.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::Complex;

/// In-place forward transform `X_k = sum_j x_j e^{-2 pi i jk / n}`.
///
/// `n` must be a power of two.
pub fn fft_in_place(x: &mut [Complex]) {
    let n = x.len();
    debug_assert!(n.is_power_of_two());
    if n <= 1 {
        return;
    }
    // bit reversal permutation
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            x.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let ang = -2.0 * PI / len as f64;
        let half = len / 2;
        // twiddles from the angle directly; recurrences drift at large n
        let mut tw = Vec::with_capacity(half);
        for k in 0..half {
            let a = ang * k as f64;
            tw.push(Complex::new(a.cos(), a.sin()));
        }
        let mut start = 0;
        while start < n {
            for k in 0..half {
                let u = x[start + k];
                let v = x[start + k + half] * tw[k];
                x[start + k] = u + v;
                x[start + k + half] = u - v;
            }
            start += len;
        }
        len <<= 1;
    }
}

/// Fourier coefficients `u_hat_k = (1/n) sum_j v_j e^{-i k theta_j}` of real
/// samples on the uniform grid `theta_j = 2 pi j / n`, for `k = 0..=n/2`.
pub fn real_fourier_coeffs(values: &[f64]) -> Vec<Complex> {
    let n = values.len();
    debug_assert!(n.is_power_of_two());
    let mut buf: Vec<Complex> = values.iter().map(|&v| Complex::new(v, 0.0)).collect();
    fft_in_place(&mut buf);
    let scale = 1.0 / n as f64;
    buf.truncate(n / 2 + 1);
    for c in &mut buf {
        *c *= scale;
    }
    buf
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dft_naive(x: &[Complex]) -> Vec<Complex> {
        let n = x.len();
        (0..n)
            .map(|k| {
                let mut acc = Complex::new(0.0, 0.0);
                for (j, &v) in x.iter().enumerate() {
                    let a = -2.0 * PI * (j * k % n) as f64 / n as f64;
                    acc += v * Complex::new(a.cos(), a.sin());
                }
                acc
            })
            .collect()
    }

    #[test]
    fn matches_naive_dft() {
        let mut rng = crate::rng::SplitMix64::new(3);
        let mut x: Vec<Complex> = (0..64)
            .map(|_| Complex::new(rng.range(-1.0, 1.0), rng.range(-1.0, 1.0)))
            .collect();
        let want = dft_naive(&x);
        fft_in_place(&mut x);
        for (a, b) in x.iter().zip(&want) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn cosine_line() {
        // v_j = cos(3 theta_j) has u_hat_3 = 1/2 and u_hat_0 = 0
        let n = 256;
        let v: Vec<f64> = (0..n)
            .map(|j| (3.0 * 2.0 * PI * j as f64 / n as f64).cos())
            .collect();
        let c = real_fourier_coeffs(&v);
        assert!(c[0].norm() < 1e-14);
        assert!((c[3] - Complex::new(0.5, 0.0)).norm() < 1e-14);
        assert!(c[4].norm() < 1e-14);
    }
}
