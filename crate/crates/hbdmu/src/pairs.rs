//! Canonical Pythagorean pairs, validated at construction.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::fejer;
use crate::functions::AnalyticFunction;
use crate::grid::{DiskGrid, UnitCircleGrid};
use crate::outer;
use crate::poly::Poly;
use crate::{Complex, Error, Result};

/// Boundary residual tolerance for closed-form pairs.
pub const CLOSED_FORM_RESIDUAL_TOL: f64 = 1e-6;

/// Relaxed tolerance for numerically mated pairs.
pub const MATED_RESIDUAL_TOL: f64 = 1e-4;

/// Slack allowed above 1 for `|a|^2 + |b|^2` inside the disk.
pub const DISK_BOUND_SLACK: f64 = 1e-6;

/// A validated pair `(b, a)`: `|a|^2 + |b|^2 = 1` on the circle (within the
/// recorded residual), `a(0) > 0`, and `|a|^2 + |b|^2 <= 1` on the disk.
#[derive(Debug, Clone)]
pub struct PythagoreanPair {
    b: AnalyticFunction,
    a: AnalyticFunction,
    grid_size: usize,
    boundary_residual: f64,
}

impl PythagoreanPair {
    pub fn new(
        b: AnalyticFunction,
        a: AnalyticFunction,
        grid_size: usize,
        residual_tol: f64,
    ) -> Result<Self> {
        let grid = UnitCircleGrid::new(grid_size)?;
        let a0 = a.eval_unchecked(Complex::new(0.0, 0.0));
        if !(a0.re > 0.0) || a0.im.abs() > 1e-9 * (1.0 + a0.norm()) {
            return Err(Error::Invalid(format!(
                "mate must satisfy a(0) > 0, got a(0) = {a0}"
            )));
        }
        let mut residual = 0.0_f64;
        for t in grid.angles() {
            let z = Complex::from_polar(crate::EDGE_RADIUS, t);
            let s = a.eval_unchecked(z).norm_sqr() + b.eval_unchecked(z).norm_sqr();
            residual = residual.max((s - 1.0).abs());
        }
        if residual > residual_tol {
            return Err(Error::Invalid(format!(
                "boundary residual {residual:.3e} exceeds tolerance {residual_tol:.1e}"
            )));
        }
        // |a|^2 + |b|^2 <= 1 holds inside the disk for genuine pairs
        let disk = DiskGrid::estimation(32, 256, &[]);
        let mut disk_max = 0.0_f64;
        for z in disk.points() {
            disk_max = disk_max.max(a.eval_unchecked(z).norm_sqr() + b.eval_unchecked(z).norm_sqr());
        }
        if disk_max > 1.0 + DISK_BOUND_SLACK {
            return Err(Error::Invalid(format!(
                "|a|^2 + |b|^2 reaches {disk_max} inside the disk"
            )));
        }
        Ok(Self { b, a, grid_size, boundary_residual: residual })
    }

    pub fn b(&self) -> &AnalyticFunction {
        &self.b
    }

    pub fn a(&self) -> &AnalyticFunction {
        &self.a
    }

    pub fn grid_size(&self) -> usize {
        self.grid_size
    }

    pub fn boundary_residual(&self) -> f64 {
        self.boundary_residual
    }

    /// Same mate with `b` replaced (used for inner-multiplier experiments:
    /// `(b u, a)` stays a pair when `u` is inner).
    pub fn with_b(&self, b: AnalyticFunction, residual_tol: f64) -> Result<Self> {
        Self::new(b, self.a.clone(), self.grid_size, residual_tol)
    }
}

fn unimodular(zeta: Complex) -> Result<Complex> {
    let n = zeta.norm();
    if (n - 1.0).abs() > 1e-12 {
        return Err(Error::Domain(format!("point must lie on the unit circle, |zeta| = {n}")));
    }
    Ok(zeta / n)
}

/// Sarason's pair realizing `H(b_zeta) = D_zeta` with equality of norms:
/// `b(z) = (1-s0) conj(zeta) z / (1 - s0 conj(zeta) z)`, `s0 = (3 - sqrt 5)/2`.
pub fn sarason_pair(zeta: Complex) -> Result<PythagoreanPair> {
    let zeta = unimodular(zeta)?;
    let s0 = (3.0 - 5.0_f64.sqrt()) / 2.0;
    let zc = zeta.conj();
    let den = Poly::new(vec![Complex::new(1.0, 0.0), -zc * s0]);
    let b = AnalyticFunction::rational(
        Poly::new(vec![Complex::new(0.0, 0.0), zc * (1.0 - s0)]),
        den.clone(),
    )?;
    let a = AnalyticFunction::rational(
        Poly::new(vec![Complex::new(1.0 - s0, 0.0), -zc * (1.0 - s0)]),
        den,
    )?;
    PythagoreanPair::new(b, a, 4096, CLOSED_FORM_RESIDUAL_TOL)
}

/// The Costara-Ransford pair for a finite atom set: `a_mu = C prod (z - zeta_j)`
/// normalized so `||a_mu||_inf = 1` and `a_mu(0) > 0`; `b_mu` is the
/// Fejer-Riesz factor of `1 - |a_mu|^2`.
pub fn costara_ransford_pair(atoms: &[Complex]) -> Result<PythagoreanPair> {
    polynomial_type_pair(atoms, &vec![1; atoms.len()])
}

/// Polynomial-type pair with zero multiplicities:
/// `p_a = C prod (z - zeta_j)^{m_j}`, `p_b` its Fejer-Riesz complement.
pub fn polynomial_type_pair(atoms: &[Complex], multiplicities: &[u32]) -> Result<PythagoreanPair> {
    if atoms.is_empty() || atoms.len() != multiplicities.len() {
        return Err(Error::Invalid(
            "polynomial-type pair needs atoms with one multiplicity each".into(),
        ));
    }
    if multiplicities.contains(&0) {
        return Err(Error::Invalid("multiplicities must be >= 1".into()));
    }
    let mut zetas = Vec::with_capacity(atoms.len());
    for z in atoms {
        zetas.push(unimodular(*z)?);
    }
    for i in 0..zetas.len() {
        for j in 0..i {
            if (zetas[i] - zetas[j]).norm() <= 1e-9 {
                return Err(Error::Invalid("atoms must be pairwise distinct".into()));
            }
        }
    }
    let mut roots = Vec::new();
    for (z, m) in zetas.iter().zip(multiplicities) {
        for _ in 0..*m {
            roots.push(*z);
        }
    }
    let q = Poly::from_roots(&roots);
    let (sup, _) = q.sup_on_circle(8192);
    let q0 = q.eval(Complex::new(0.0, 0.0));
    // a(0) = C q(0) > 0 with |C| = 1/sup; |q(0)| = 1 since all |zeta_j| = 1
    let c = q0.conj() / (q0.norm() * sup);
    let p_a = q.scale(c);

    let modulus_sq = fejer::trig_from_modulus_squared(&p_a);
    let n = modulus_sq.degree();
    let coeffs: Vec<Complex> = (0..2 * n + 1)
        .map(|k| {
            let v = -modulus_sq.coeffs()[k];
            if k == n {
                v + 1.0
            } else {
                v
            }
        })
        .collect();
    let omega = fejer::TrigPolynomial::new(n, coeffs)?;
    let factorization = fejer::factor(&omega)?;

    PythagoreanPair::new(
        AnalyticFunction::polynomial(factorization.p),
        AnalyticFunction::polynomial(p_a),
        4096,
        CLOSED_FORM_RESIDUAL_TOL,
    )
}

/// The exponential pair `b = exp(z^N - 1)` with its numerically mated outer
/// function; validated at the relaxed residual.
pub fn exponential_pair(n: usize, grid_size: usize) -> Result<PythagoreanPair> {
    if n == 0 {
        return Err(Error::Invalid("exponential pair needs N >= 1".into()));
    }
    let mut coeffs = vec![Complex::new(0.0, 0.0); n + 1];
    coeffs[0] = Complex::new(-1.0, 0.0);
    coeffs[n] = Complex::new(1.0, 0.0);
    let b = AnalyticFunction::exp_poly(Poly::new(coeffs));
    let a = outer::pythagorean_mate(&b, grid_size)?;
    PythagoreanPair::new(b, a, grid_size, MATED_RESIDUAL_TOL)
}
