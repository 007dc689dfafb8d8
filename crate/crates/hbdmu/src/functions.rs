//! Closed-form evaluable analytic functions on the unit disk.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;


use crate::grid::UnitCircleGrid;
use crate::poly::Poly;
use crate::{Complex, Error, Result};

/// An analytic function on the open unit disk with a closed-form evaluator
/// and a closed-form derivative.
///
/// `OuterFromSamples` holds an outer function reconstructed from boundary
/// log-modulus data: the value is `singular(z) * exp(completion(z))`, where
/// `completion` is the truncated analytic completion of the smooth part of
/// the profile and `singular` collects the boundary zero factors
/// `(1 - conj(zeta_s) z)^{alpha_s}` detected in the profile, expanded as a
/// polynomial.
#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticFunction {
    Polynomial(Poly),
    Rational { num: Poly, den: Poly },
    ExpPoly(Poly),
    OuterFromSamples {
        completion: Poly,
        singular: Poly,
        log_modulus: Vec<f64>,
    },
    Scaled { constant: Complex, inner: Box<AnalyticFunction> },
    Product { left: Box<AnalyticFunction>, right: Box<AnalyticFunction> },
}

impl AnalyticFunction {
    pub fn polynomial(p: Poly) -> Self {
        AnalyticFunction::Polynomial(p)
    }

    pub fn constant(c: Complex) -> Self {
        AnalyticFunction::Polynomial(Poly::constant(c))
    }

    /// Rational function; the denominator must not vanish in the open unit
    /// disk (checked by root-finding). Zeros on the circle itself are
    /// allowed.
    pub fn rational(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Invalid("rational denominator is identically zero".into()));
        }
        let roots = crate::roots::polynomial_roots(den.coeffs())?;
        for r in roots {
            if r.norm() < 1.0 - 1e-9 {
                return Err(Error::PoleInDisk { modulus: r.norm() });
            }
        }
        Ok(AnalyticFunction::Rational { num, den })
    }

    /// `exp(p(z))`.
    pub fn exp_poly(p: Poly) -> Self {
        AnalyticFunction::ExpPoly(p)
    }

    pub fn scaled(constant: Complex, inner: AnalyticFunction) -> Self {
        AnalyticFunction::Scaled { constant, inner: Box::new(inner) }
    }

    pub fn product(left: AnalyticFunction, right: AnalyticFunction) -> Self {
        AnalyticFunction::Product { left: Box::new(left), right: Box::new(right) }
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            AnalyticFunction::Polynomial(_) => "poly",
            AnalyticFunction::Rational { .. } => "rational",
            AnalyticFunction::ExpPoly(_) => "exp_poly",
            AnalyticFunction::OuterFromSamples { .. } => "outer_samples",
            AnalyticFunction::Scaled { .. } => "scaled",
            AnalyticFunction::Product { .. } => "product",
        }
    }

    /// Evaluate at `z` in the open unit disk.
    pub fn eval(&self, z: Complex) -> Result<Complex> {
        if z.norm() >= 1.0 {
            return Err(Error::Domain(format!(
                "evaluation requires |z| < 1, got |z| = {}",
                z.norm()
            )));
        }
        Ok(self.eval_unchecked(z))
    }

    /// Evaluate without the domain check. Polynomials and entire variants
    /// are fine anywhere; rational variants may hit boundary poles.
    pub fn eval_unchecked(&self, z: Complex) -> Complex {
        match self {
            AnalyticFunction::Polynomial(p) => p.eval(z),
            AnalyticFunction::Rational { num, den } => num.eval(z) / den.eval(z),
            AnalyticFunction::ExpPoly(p) => p.eval(z).exp(),
            AnalyticFunction::OuterFromSamples { completion, singular, .. } => {
                singular.eval(z) * completion.eval(z).exp()
            }
            AnalyticFunction::Scaled { constant, inner } => constant * inner.eval_unchecked(z),
            AnalyticFunction::Product { left, right } => {
                left.eval_unchecked(z) * right.eval_unchecked(z)
            }
        }
    }

    /// `(f(z), f'(z))` from the closed forms.
    pub fn eval_with_derivative(&self, z: Complex) -> Result<(Complex, Complex)> {
        if z.norm() >= 1.0 {
            return Err(Error::Domain(format!(
                "evaluation requires |z| < 1, got |z| = {}",
                z.norm()
            )));
        }
        Ok(self.eval_with_derivative_unchecked(z))
    }

    pub fn eval_with_derivative_unchecked(&self, z: Complex) -> (Complex, Complex) {
        match self {
            AnalyticFunction::Polynomial(p) => p.eval_with_derivative(z),
            AnalyticFunction::Rational { num, den } => {
                let (n, dn) = num.eval_with_derivative(z);
                let (d, dd) = den.eval_with_derivative(z);
                (n / d, (dn * d - n * dd) / (d * d))
            }
            AnalyticFunction::ExpPoly(p) => {
                let (v, dv) = p.eval_with_derivative(z);
                let e = v.exp();
                (e, dv * e)
            }
            AnalyticFunction::OuterFromSamples { completion, singular, .. } => {
                let (g, dg) = completion.eval_with_derivative(z);
                let (s, ds) = singular.eval_with_derivative(z);
                let e = g.exp();
                (s * e, (ds + s * dg) * e)
            }
            AnalyticFunction::Scaled { constant, inner } => {
                let (v, dv) = inner.eval_with_derivative_unchecked(z);
                (constant * v, constant * dv)
            }
            AnalyticFunction::Product { left, right } => {
                let (lv, ld) = left.eval_with_derivative_unchecked(z);
                let (rv, rd) = right.eval_with_derivative_unchecked(z);
                (lv * rv, ld * rv + lv * rd)
            }
        }
    }
}

/// Samples `f(radius e^{i theta_k})` over the grid.
///
/// With `radius` close to 1 this is the radial-limit approximation of the
/// boundary values.
pub fn boundary_profile(
    f: &AnalyticFunction,
    grid: &UnitCircleGrid,
    radius: f64,
) -> Result<Vec<Complex>> {
    if !(radius > 0.0 && radius <= crate::EDGE_RADIUS) {
        return Err(Error::Domain(format!(
            "boundary profile radius must lie in (0, {}]",
            crate::EDGE_RADIUS
        )));
    }
    Ok(grid
        .angles()
        .map(|t| f.eval_unchecked(Complex::from_polar(radius, t)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn values_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<AnalyticFunction>();
        assert_send_sync::<crate::AtomicMeasure>();
        assert_send_sync::<crate::PythagoreanPair>();
        assert_send_sync::<crate::DiskGrid>();
    }

    #[test]
    fn exp_poly_value() {
        // exp(z - 1) at 0 -> e^{-1}
        let f = AnalyticFunction::exp_poly(Poly::from_real(&[-1.0, 1.0]));
        let v = f.eval(c(0.0, 0.0)).unwrap();
        assert!((v.re - (-1.0_f64).exp()).abs() < 1e-15);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn domain_guard() {
        let f = AnalyticFunction::polynomial(Poly::identity());
        assert!(f.eval(c(1.0, 0.0)).is_err());
        assert!(f.eval(c(0.8, 0.8)).is_err());
        assert!(f.eval(c(0.999_999, 0.0)).is_ok());
    }

    #[test]
    fn rational_pole_check() {
        // 1/(1 - 2z) has a pole at 1/2: rejected
        let bad = AnalyticFunction::rational(Poly::one(), Poly::from_real(&[1.0, -2.0]));
        assert!(matches!(bad, Err(Error::PoleInDisk { .. })));
        // 1/(1 - z/2) has its pole at 2: fine
        let ok = AnalyticFunction::rational(Poly::one(), Poly::from_real(&[1.0, -0.5]));
        assert!(ok.is_ok());
        // boundary zero of the denominator is allowed
        let edge = AnalyticFunction::rational(Poly::one(), Poly::from_real(&[1.0, -1.0]));
        assert!(edge.is_ok());
    }

    #[test]
    fn boundary_profile_identity_map() {
        let f = AnalyticFunction::polynomial(Poly::identity());
        let grid = UnitCircleGrid::new(16).unwrap();
        let r = 1.0 - 1e-9 - 1e-10;
        let prof = boundary_profile(&f, &grid, r).unwrap();
        assert!((prof[0] - c(r, 0.0)).norm() < 1e-15);
        assert!((prof[4] - c(0.0, r)).norm() < 1e-15);
        assert!((prof[8] - c(-r, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn boundary_modulus_of_half_one_plus_z() {
        let f = AnalyticFunction::polynomial(Poly::from_real(&[0.5, 0.5]));
        let grid = UnitCircleGrid::new(64).unwrap();
        let prof = boundary_profile(&f, &grid, crate::EDGE_RADIUS).unwrap();
        for (k, v) in prof.iter().enumerate() {
            let theta = grid.angle(k);
            assert!((v.norm() - (theta / 2.0).cos().abs()) < 1e-9);
        }
    }

    #[test]
    fn product_and_scale_derivatives() {
        let f = AnalyticFunction::product(
            AnalyticFunction::polynomial(Poly::from_real(&[1.0, 1.0])),
            AnalyticFunction::scaled(c(0.0, 2.0), AnalyticFunction::exp_poly(Poly::from_real(&[0.0, 0.0, 1.0]))),
        );
        let z = c(0.3, 0.1);
        let (v, d) = f.eval_with_derivative(z).unwrap();
        // value: (1 + z) * 2i * exp(z^2)
        let want = (Complex::new(1.0, 0.0) + z) * c(0.0, 2.0) * (z * z).exp();
        assert!((v - want).norm() < 1e-14);
        // derivative by finite differences
        let h = 1e-6;
        let fp = f.eval(z + c(h, 0.0)).unwrap();
        let fm = f.eval(z - c(h, 0.0)).unwrap();
        let fd = (fp - fm) / c(2.0 * h, 0.0);
        assert!((d - fd).norm() < 1e-7);
    }
}
