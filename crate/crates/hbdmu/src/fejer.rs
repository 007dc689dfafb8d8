//! Fejer-Riesz spectral factorization.
//!
//! A non-negative trigonometric polynomial `omega` equals `|p|^2` on the
//! circle for an analytic polynomial `p` with no zeros in the open disk.
//! The factor is computed from the roots of the Laurent-associated
//! polynomial `z^n omega(z)` (degree `2n`), which come in pairs
//! `(r, 1/conj(r))`; the representative of modulus >= 1 is kept and circle
//! roots (even multiplicity) are split evenly.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::poly::Poly;
use crate::roots::polynomial_roots;
use crate::{Complex, Error, Result};

/// Tolerance for matching a root with its reflected partner.
pub const PAIRING_TOL: f64 = 1e-6;

/// Pairs whose members are this close are treated as one circle root of
/// even multiplicity and snapped onto the circle.
const CIRCLE_SNAP: f64 = 1e-6;

/// Real-valued trigonometric polynomial
/// `omega(theta) = sum_{k=-n}^{n} c_k e^{i k theta}` with `c_{-k} = conj(c_k)`.
///
/// Coefficients are stored ascending from `c_{-n}` (length `2n + 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPolynomial {
    degree: usize,
    coeffs: Vec<Complex>,
}

impl TrigPolynomial {
    /// Validates Hermitian symmetry (to 1e-13, relative) and non-negativity
    /// on a `16n`-point grid (down to `-1e-10`).
    pub fn new(degree: usize, coeffs: Vec<Complex>) -> Result<Self> {
        if coeffs.len() != 2 * degree + 1 {
            return Err(Error::Invalid(format!(
                "trig polynomial of degree {degree} needs {} coefficients, got {}",
                2 * degree + 1,
                coeffs.len()
            )));
        }
        let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max).max(1e-300);
        for k in 0..=degree {
            let lo = coeffs[degree - k];
            let hi = coeffs[degree + k];
            if (lo - hi.conj()).norm() > 1e-13 * scale {
                return Err(Error::Invalid(
                    "coefficients are not Hermitian-symmetric: omega is not real-valued".into(),
                ));
            }
        }
        let t = Self { degree, coeffs };
        let min = t.min_on_grid(16 * degree.max(1));
        if min < -1e-10 * scale.max(1.0) {
            return Err(Error::Negative { min });
        }
        Ok(t)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients ascending from `c_{-n}`.
    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn coeff(&self, k: i64) -> Complex {
        self.coeffs[(k + self.degree as i64) as usize]
    }

    /// Real value at `e^{i theta}`.
    pub fn eval(&self, theta: f64) -> f64 {
        // Horner in z = e^{i theta} on z^n omega(z), which equals
        // e^{i n theta} omega; omega is the real part after unwinding.
        let z = Complex::from_polar(1.0, theta);
        let mut acc = Complex::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        (acc * Complex::from_polar(1.0, -(self.degree as f64) * theta)).re
    }

    pub fn min_on_grid(&self, samples: usize) -> f64 {
        let n = samples.max(64);
        (0..n)
            .map(|k| self.eval(2.0 * PI * k as f64 / n as f64))
            .fold(f64::INFINITY, f64::min)
    }

    /// Drop negligible top coefficients (relative to the largest).
    fn trimmed(&self) -> TrigPolynomial {
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let mut n = self.degree;
        while n > 0
            && self.coeffs[self.degree + n].norm() <= 1e-14 * scale
            && self.coeffs[self.degree - n].norm() <= 1e-14 * scale
        {
            n -= 1;
        }
        if n == self.degree {
            return self.clone();
        }
        TrigPolynomial {
            degree: n,
            coeffs: self.coeffs[self.degree - n..=self.degree + n].to_vec(),
        }
    }
}

/// `omega = |p|^2` on the circle: `c_k = sum_j p_{j+k} conj(p_j)`.
pub fn trig_from_modulus_squared(p: &Poly) -> TrigPolynomial {
    let n = p.degree();
    let c = p.coeffs();
    let mut coeffs = vec![Complex::new(0.0, 0.0); 2 * n + 1];
    for k in -(n as i64)..=(n as i64) {
        let mut acc = Complex::new(0.0, 0.0);
        for j in 0..c.len() {
            let jj = j as i64 + k;
            if (0..c.len() as i64).contains(&jj) {
                acc += c[jj as usize] * c[j].conj();
            }
        }
        coeffs[(k + n as i64) as usize] = acc;
    }
    TrigPolynomial { degree: n, coeffs }
}

/// Result of a spectral factorization.
#[derive(Debug, Clone)]
pub struct Factorization {
    /// The outer polynomial factor, lowest nonzero coefficient positive real.
    pub p: Poly,
    /// `max_theta | |p(e^{i theta})|^2 - omega(theta) |` on a `16n` grid.
    pub residual: f64,
    /// Roots assigned to `p` (all of modulus >= 1 up to roundoff).
    pub roots: Vec<Complex>,
}

/// Spectral factor of a non-negative trigonometric polynomial.
pub fn factor(omega: &TrigPolynomial) -> Result<Factorization> {
    let min = omega.min_on_grid(16 * omega.degree().max(1));
    if min < -1e-10 {
        return Err(Error::Negative { min });
    }
    let omega = omega.trimmed();
    let n = omega.degree();
    let c0 = omega.coeff(0).re;
    if n == 0 {
        if c0 < 0.0 {
            return Err(Error::Negative { min: c0 });
        }
        let p = Poly::constant(Complex::new(c0.sqrt(), 0.0));
        return Ok(Factorization { p, residual: 0.0, roots: Vec::new() });
    }

    // roots of z^n omega(z)
    let laurent: Vec<Complex> = omega.coeffs().to_vec();
    let roots = polynomial_roots(&laurent)?;
    if roots.len() != 2 * n {
        return Err(Error::Pairing(format!(
            "expected {} roots of the Laurent polynomial, found {}",
            2 * n,
            roots.len()
        )));
    }
    let selected = pair_and_select(&roots)?;

    let p0 = Poly::from_roots(&selected);
    // scale from the mean of omega: c_0 = sum |p_j|^2
    let norm_sq: f64 = p0.coeffs().iter().map(|c| c.norm_sqr()).sum();
    if norm_sq == 0.0 || c0 <= 0.0 {
        return Err(Error::Pairing("degenerate factor candidate".into()));
    }
    let gamma = (c0 / norm_sq).sqrt();
    let mut p = p0.scale(Complex::new(gamma, 0.0));
    if let Some((_, low)) = p.lowest_nonzero() {
        p = p.scale(low.conj() / low.norm());
    }

    let grid = 16 * n;
    let residual = (0..grid)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / grid as f64;
            (p.eval(Complex::from_polar(1.0, t)).norm_sqr() - omega.eval(t)).abs()
        })
        .fold(0.0, f64::max);

    Ok(Factorization { p, residual, roots: selected })
}

/// Match the `2n` roots into reflection pairs `(r, 1/conj(r))` and keep one
/// representative per pair. Roots are processed farthest-from-circle first
/// so the unambiguous pairs are consumed before near-circle clusters.
fn pair_and_select(roots: &[Complex]) -> Result<Vec<Complex>> {
    let m = roots.len();
    let mut order: Vec<usize> = (0..m).collect();
    let circle_gap = |r: &Complex| (r.norm() - 1.0).abs();
    order.sort_by(|&i, &j| circle_gap(&roots[j]).partial_cmp(&circle_gap(&roots[i])).unwrap());

    let mut used = vec![false; m];
    let mut selected = Vec::with_capacity(m / 2);
    for &i in &order {
        if used[i] {
            continue;
        }
        used[i] = true;
        let r = roots[i];
        let target = 1.0 / r.conj();
        let mut best: Option<(usize, f64)> = None;
        for (j, u) in used.iter().enumerate() {
            if *u {
                continue;
            }
            let d = (roots[j] - target).norm();
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        let (j, d) = best.ok_or_else(|| {
            Error::Pairing(format!("root {r} has no unmatched partner"))
        })?;
        let tol = PAIRING_TOL * (1.0 + target.norm());
        if d > tol {
            return Err(Error::Pairing(format!(
                "root {r} pairs with {} at distance {d:.3e}, beyond tolerance",
                roots[j]
            )));
        }
        used[j] = true;
        let s = roots[j];
        if (r - s).norm() <= CIRCLE_SNAP * (1.0 + r.norm()) {
            // circle root split by roundoff: snap the mean onto the circle
            let mid = (r + s) * 0.5;
            let snapped = if mid.norm() == 0.0 { r / r.norm() } else { mid / mid.norm() };
            selected.push(snapped);
        } else if r.norm() >= s.norm() {
            selected.push(r);
        } else {
            selected.push(s);
        }
    }
    Ok(selected)
}
