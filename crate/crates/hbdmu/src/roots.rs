//! Polynomial roots via companion-matrix eigenvalues.
//!
//! The companion matrix is balanced and reduced by a complex shifted-QR
//! iteration on its Hessenberg form (it already is Hessenberg). Degrees in
//! this crate stay below ~100, so robustness wins over speed: explicit
//! Givens sweeps, Wilkinson shifts, an exceptional shift every few stalled
//! iterations, and a guarded Newton polish against the original polynomial.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::{Complex, Error, Result};

const MAX_DEGREE: usize = 512;

struct Mat {
    n: usize,
    a: Vec<Complex>,
}

impl Mat {
    fn zeros(n: usize) -> Self {
        Self {
            n,
            a: vec![Complex::new(0.0, 0.0); n * n],
        }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> Complex {
        self.a[i * self.n + j]
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, v: Complex) {
        self.a[i * self.n + j] = v;
    }
}

/// All roots of `sum_k coeffs[k] z^k`, with multiplicity.
///
/// Exact zero leading coefficients are trimmed; a constant polynomial has no
/// roots. Exact zero trailing coefficients become roots at the origin.
pub fn polynomial_roots(coeffs: &[Complex]) -> Result<Vec<Complex>> {
    let mut hi = coeffs.len();
    while hi > 0 && coeffs[hi - 1].norm() == 0.0 {
        hi -= 1;
    }
    if hi <= 1 {
        return Ok(Vec::new());
    }
    let c = &coeffs[..hi];
    let mut lo = 0;
    while lo < c.len() - 1 && c[lo].norm() == 0.0 {
        lo += 1;
    }
    let mut out = vec![Complex::new(0.0, 0.0); lo];
    let c = &c[lo..];
    let deg = c.len() - 1;
    if deg > MAX_DEGREE {
        return Err(Error::Invalid(format!(
            "polynomial degree {deg} exceeds the supported maximum {MAX_DEGREE}"
        )));
    }
    let lead = c[deg];
    let monic: Vec<Complex> = c.iter().map(|&x| x / lead).collect();

    match deg {
        1 => out.push(-monic[0]),
        2 => {
            let (r1, r2) = quadratic(monic[0], monic[1]);
            out.push(r1);
            out.push(r2);
        }
        _ => {
            let mut h = companion(&monic);
            balance(&mut h);
            let mut eigs = hessenberg_eigenvalues(&mut h)?;
            polish(&monic, &mut eigs);
            out.extend(eigs);
        }
    }
    Ok(out)
}

/// Roots of the monic quadratic `z^2 + b z + c` written as `c0 + c1 z + z^2`.
fn quadratic(c0: Complex, c1: Complex) -> (Complex, Complex) {
    let half = c1 * -0.5;
    let disc = (half * half - c0).sqrt();
    // pick the larger-magnitude root first to avoid cancellation
    let r1 = if (half + disc).norm() >= (half - disc).norm() {
        half + disc
    } else {
        half - disc
    };
    let r2 = if r1.norm() > 0.0 { c0 / r1 } else { half - disc };
    (r1, r2)
}

fn companion(monic: &[Complex]) -> Mat {
    let n = monic.len() - 1;
    let mut h = Mat::zeros(n);
    for i in 1..n {
        h.set(i, i - 1, Complex::new(1.0, 0.0));
    }
    for i in 0..n {
        h.set(i, n - 1, -monic[i]);
    }
    h
}

/// Osborne balancing in powers of two; preserves the sparsity pattern.
fn balance(h: &mut Mat) {
    let n = h.n;
    for _ in 0..32 {
        let mut converged = true;
        for i in 0..n {
            let mut row = 0.0;
            let mut col = 0.0;
            for j in 0..n {
                if j != i {
                    row += h.at(i, j).norm();
                    col += h.at(j, i).norm();
                }
            }
            if row == 0.0 || col == 0.0 {
                continue;
            }
            let start = col + row;
            let mut f = 1.0;
            let mut c = col;
            let mut r = row;
            while c < r / 2.0 {
                c *= 2.0;
                r /= 2.0;
                f *= 2.0;
            }
            while c >= r * 2.0 {
                c /= 2.0;
                r *= 2.0;
                f /= 2.0;
            }
            if c + r < 0.95 * start {
                converged = false;
                let inv = 1.0 / f;
                for j in 0..n {
                    let v = h.at(i, j) * inv;
                    h.set(i, j, v);
                }
                for j in 0..n {
                    let v = h.at(j, i) * f;
                    h.set(j, i, v);
                }
            }
        }
        if converged {
            break;
        }
    }
}

/// Givens rotation `[[c, s], [-conj(s), c]]` (real `c >= 0`) sending
/// `(f, g)` to `(r, 0)`.
fn givens(f: Complex, g: Complex) -> (f64, Complex) {
    let fn_ = f.norm();
    let gn = g.norm();
    if gn == 0.0 {
        return (1.0, Complex::new(0.0, 0.0));
    }
    if fn_ == 0.0 {
        return (0.0, g.conj() / gn);
    }
    let r = (fn_ * fn_ + gn * gn).sqrt();
    (fn_ / r, (f / fn_) * g.conj() / r)
}

/// Eigenvalues of the (complex) 2x2 matrix `[[a, b], [c, d]]`.
fn eig2(a: Complex, b: Complex, c: Complex, d: Complex) -> (Complex, Complex) {
    let mean = (a + d) * 0.5;
    let disc = ((a - d) * 0.5 * ((a - d) * 0.5) + b * c).sqrt();
    (mean + disc, mean - disc)
}

fn wilkinson_shift(a: Complex, b: Complex, c: Complex, d: Complex) -> Complex {
    let (l1, l2) = eig2(a, b, c, d);
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

fn hessenberg_eigenvalues(h: &mut Mat) -> Result<Vec<Complex>> {
    let n = h.n;
    let eps = f64::EPSILON;
    let mut eigs = vec![Complex::new(0.0, 0.0); n];
    let mut hi = n - 1;
    let mut stalled = 0usize;
    loop {
        // zero negligible subdiagonals
        for k in 1..=hi {
            let scale = h.at(k - 1, k - 1).norm() + h.at(k, k).norm();
            let scale = if scale == 0.0 { 1.0 } else { scale };
            if h.at(k, k - 1).norm() <= eps * scale {
                h.set(k, k - 1, Complex::new(0.0, 0.0));
            }
        }
        let mut lo = hi;
        while lo > 0 && h.at(lo, lo - 1).norm() != 0.0 {
            lo -= 1;
        }
        if lo == hi {
            eigs[hi] = h.at(hi, hi);
            if hi == 0 {
                break;
            }
            hi -= 1;
            stalled = 0;
            continue;
        }
        if lo + 1 == hi {
            let (l1, l2) = eig2(h.at(lo, lo), h.at(lo, hi), h.at(hi, lo), h.at(hi, hi));
            eigs[lo] = l1;
            eigs[hi] = l2;
            if lo == 0 {
                break;
            }
            hi = lo - 1;
            stalled = 0;
            continue;
        }
        stalled += 1;
        if stalled > 60 {
            return Err(Error::RootFinding(format!(
                "QR iteration stalled on a block of size {}",
                hi - lo + 1
            )));
        }
        let sigma = if stalled.is_multiple_of(12) {
            // exceptional shift: kick along a fixed direction scaled by the
            // offending subdiagonal
            h.at(hi, hi) + h.at(hi, hi - 1) * Complex::new(1.211, 0.719)
        } else {
            wilkinson_shift(
                h.at(hi - 1, hi - 1),
                h.at(hi - 1, hi),
                h.at(hi, hi - 1),
                h.at(hi, hi),
            )
        };
        qr_step(h, lo, hi, sigma);
    }
    Ok(eigs)
}

/// One explicit shifted QR step restricted to the active block; entries
/// outside the block are never read for eigenvalues, so the similarity can
/// stay local.
fn qr_step(h: &mut Mat, lo: usize, hi: usize, sigma: Complex) {
    for k in lo..=hi {
        let v = h.at(k, k) - sigma;
        h.set(k, k, v);
    }
    let mut rots = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (c, s) = givens(h.at(k, k), h.at(k + 1, k));
        rots.push((c, s));
        for j in k..=hi {
            let a = h.at(k, j);
            let b = h.at(k + 1, j);
            h.set(k, j, a * c + b * s);
            h.set(k + 1, j, -a * s.conj() + b * c);
        }
    }
    for (idx, &(c, s)) in rots.iter().enumerate() {
        let k = lo + idx;
        let top = (k + 1).min(hi);
        for i in lo..=top {
            let a = h.at(i, k);
            let b = h.at(i, k + 1);
            h.set(i, k, a * c + b * s.conj());
            h.set(i, k + 1, -a * s + b * c);
        }
    }
    for k in lo..=hi {
        let v = h.at(k, k) + sigma;
        h.set(k, k, v);
    }
}

/// Guarded Newton polish of each root against the monic polynomial.
///
/// Roots with a close neighbor are left untouched: for a split multiple
/// root the Newton step drags both members toward the same side, which
/// destroys the (second-order accurate) cluster mean that downstream
/// pairing relies on.
fn polish(monic: &[Complex], roots: &mut [Complex]) {
    let eval = |z: Complex| {
        let mut p = Complex::new(0.0, 0.0);
        let mut d = Complex::new(0.0, 0.0);
        for &c in monic.iter().rev() {
            d = d * z + p;
            p = p * z + c;
        }
        (p, d)
    };
    let snapshot = roots.to_vec();
    for (i, r) in roots.iter_mut().enumerate() {
        let clustered = snapshot.iter().enumerate().any(|(j, s)| {
            j != i && (s - *r).norm() < 1e-6 * (1.0 + r.norm())
        });
        if clustered {
            continue;
        }
        for _ in 0..2 {
            let (p, d) = eval(*r);
            if d.norm() == 0.0 {
                break;
            }
            let step = p / d;
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            if step.norm() > 0.1 * (1.0 + r.norm()) {
                break;
            }
            let cand = *r - step;
            let (pc, _) = eval(cand);
            if pc.norm() < p.norm() {
                *r = cand;
            } else {
                break;
            }
        }
    }
}
