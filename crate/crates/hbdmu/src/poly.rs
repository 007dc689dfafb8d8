//! Complex polynomials with ascending coefficients.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;


use crate::{Complex, Error, Result};

/// Polynomial `c_0 + c_1 z + ... + c_n z^n` over the complex numbers.
///
/// Coefficients are stored in ascending degree and are never empty; the zero
/// polynomial is `[0]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<Complex>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Complex>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.norm() == 0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex::new(0.0, 0.0));
        }
        Self { coeffs }
    }

    pub fn constant(c: Complex) -> Self {
        Self { coeffs: vec![c] }
    }

    pub fn zero() -> Self {
        Self::constant(Complex::new(0.0, 0.0))
    }

    pub fn one() -> Self {
        Self::constant(Complex::new(1.0, 0.0))
    }

    /// The monomial `z`.
    pub fn identity() -> Self {
        Self {
            coeffs: vec![Complex::new(0.0, 0.0), Complex::new(1.0, 0.0)],
        }
    }

    /// Real coefficients shorthand.
    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, 0.0)).collect())
    }

    /// `prod_j (z - r_j)`, built by repeated convolution.
    pub fn from_roots(roots: &[Complex]) -> Self {
        let mut p = vec![Complex::new(1.0, 0.0)];
        for &r in roots {
            let mut q = vec![Complex::new(0.0, 0.0); p.len() + 1];
            for (k, &c) in p.iter().enumerate() {
                q[k] -= r * c;
                q[k + 1] += c;
            }
            p = q;
        }
        Self { coeffs: p }
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm() == 0.0)
    }

    /// Horner evaluation; valid for any complex argument.
    pub fn eval(&self, z: Complex) -> Complex {
        let mut acc = Complex::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// `(p(z), p'(z))` in a single Horner pass.
    pub fn eval_with_derivative(&self, z: Complex) -> (Complex, Complex) {
        let mut p = Complex::new(0.0, 0.0);
        let mut d = Complex::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            d = d * z + p;
            p = p * z + c;
        }
        (p, d)
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() == 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, c: Complex) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Complex::new(0.0, 0.0); n];
        for (k, &c) in self.coeffs.iter().enumerate() {
            out[k] += c;
        }
        for (k, &c) in other.coeffs.iter().enumerate() {
            out[k] += c;
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(Complex::new(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = vec![Complex::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Synthetic division by `(z - zeta)`: returns `(q, r)` with
    /// `p(z) = (z - zeta) q(z) + r`, exactly in floating point.
    pub fn divide_linear(&self, zeta: Complex) -> Result<(Poly, Complex)> {
        if self.is_zero() {
            return Err(Error::Invalid("cannot divide the zero polynomial".into()));
        }
        let n = self.coeffs.len();
        if n == 1 {
            return Ok((Poly::zero(), self.coeffs[0]));
        }
        let mut q = vec![Complex::new(0.0, 0.0); n - 1];
        let mut carry = self.coeffs[n - 1];
        for k in (1..n).rev() {
            q[k - 1] = carry;
            carry = self.coeffs[k - 1] + zeta * carry;
        }
        Ok((Poly::new(q), carry))
    }

    /// Largest coefficient modulus.
    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Index and value of the lowest-order coefficient that is not
    /// negligible relative to the largest one.
    pub fn lowest_nonzero(&self) -> Option<(usize, Complex)> {
        let scale = self.max_coeff();
        if scale == 0.0 {
            return None;
        }
        self.coeffs
            .iter()
            .enumerate()
            .find(|(_, c)| c.norm() > 1e-12 * scale)
            .map(|(k, &c)| (k, c))
    }

    /// Sup of `|p|` on the unit circle together with the maximizing angle.
    ///
    /// Grid scan followed by golden-section polish of every near-maximal
    /// local maximum; accurate to ~1e-12 for the small degrees used here.
    pub fn sup_on_circle(&self, min_samples: usize) -> (f64, f64) {
        let g = (16 * (self.degree() + 1)).max(min_samples).max(64);
        let modulus = |theta: f64| self.eval(Complex::from_polar(1.0, theta)).norm();
        let vals: Vec<f64> = (0..g)
            .map(|k| modulus(2.0 * PI * k as f64 / g as f64))
            .collect();
        let (kmax, vmax) = vals
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .map(|(k, v)| (k, *v))
            .unwrap();
        let step = 2.0 * PI / g as f64;
        let mut best = (vmax, 2.0 * PI * kmax as f64 / g as f64);
        for k in 0..g {
            let prev = vals[(k + g - 1) % g];
            let next = vals[(k + 1) % g];
            if vals[k] >= prev && vals[k] >= next && vals[k] >= 0.999 * vmax {
                let theta = 2.0 * PI * k as f64 / g as f64;
                let (m, t) = golden_max(&modulus, theta - step, theta + step);
                if m > best.0 {
                    best = (m, t);
                }
            }
        }
        best
    }
}

/// Golden-section maximization of a unimodal function on `[a, b]`.
fn golden_max(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let inv_phi = 0.618_033_988_749_894_9;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..80 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let t = 0.5 * (a + b);
    (f(t), t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn divide_linear_identity() {
        // p = 1 - z^2, zeta = 1 -> quotient -(1 + z), remainder 0
        let p = Poly::from_real(&[1.0, 0.0, -1.0]);
        let (q, r) = p.divide_linear(c(1.0, 0.0)).unwrap();
        assert_eq!(q.coeffs(), &[c(-1.0, 0.0), c(-1.0, 0.0)]);
        assert_eq!(r, c(0.0, 0.0));
    }

    #[test]
    fn divide_linear_remainder() {
        // p = 1 + z, zeta = 1 -> quotient 1, remainder 2
        let p = Poly::from_real(&[1.0, 1.0]);
        let (q, r) = p.divide_linear(c(1.0, 0.0)).unwrap();
        assert_eq!(q.coeffs(), &[c(1.0, 0.0)]);
        assert_eq!(r, c(2.0, 0.0));
    }

    #[test]
    fn divide_linear_half() {
        // p = (1 - z)/2, zeta = 1 -> quotient -1/2, remainder 0
        let p = Poly::from_real(&[0.5, -0.5]);
        let (q, r) = p.divide_linear(c(1.0, 0.0)).unwrap();
        assert_eq!(q.coeffs(), &[c(-0.5, 0.0)]);
        assert_eq!(r, c(0.0, 0.0));
    }

    #[test]
    fn derivative_pair() {
        let p = Poly::from_real(&[1.0, -2.0, 3.0, 0.5]);
        let z = c(0.3, -0.7);
        let (v, d) = p.eval_with_derivative(z);
        assert!((v - p.eval(z)).norm() < 1e-15);
        assert!((d - p.derivative().eval(z)).norm() < 1e-14);
    }

    #[test]
    fn sup_on_circle_linear() {
        // |z - 1| peaks at theta = pi with value 2
        let p = Poly::from_real(&[-1.0, 1.0]);
        let (m, theta) = p.sup_on_circle(256);
        assert!((m - 2.0).abs() < 1e-12);
        assert!((theta - PI).abs() < 1e-6);
    }

    #[test]
    fn from_roots_expands() {
        let p = Poly::from_roots(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        assert_eq!(p.coeffs(), &[c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    }
}
