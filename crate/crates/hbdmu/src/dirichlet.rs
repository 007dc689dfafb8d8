//! Dirichlet integrals and closed-form kernel norms.
//!
//! The local Dirichlet integral is computed by the Douglas boundary form
//! `D_zeta(f) = int_T |f(lambda) - f(zeta)|^2 / |lambda - zeta|^2 dm`,
//! whose normalization reproduces the closed-form Cauchy-kernel norms
//! exactly; the `D_mu` norm convention throughout is
//! `||f||^2 = ||f||_{H^2}^2 + D_mu(f)`. The area form
//! `(1/pi) int_D |f'|^2 P_mu dA` cross-validates the boundary form.
//!
//! Divergence is a meaningful outcome (membership failure), not an error:
//! quadratures that keep growing by more than 10% under two grid doublings
//! return `+inf`.

use alloc::string::String;
use core::f64::consts::PI;


use crate::functions::AnalyticFunction;
use crate::grid::{DiskGrid, UnitCircleGrid};
use crate::measure::AtomicMeasure;
use crate::pairs::PythagoreanPair;
use crate::poly::Poly;
use crate::{Complex, Error, Result, BOUNDARY_RADIUS};

/// Relative growth under one grid doubling that counts as divergence.
pub const DIVERGENCE_GROWTH: f64 = 0.1;

/// Quadrature configuration for the Dirichlet forms.
#[derive(Debug, Clone)]
pub struct QuadratureSpec {
    /// Base size of the boundary grid; refinement doubles it twice.
    pub boundary_grid: usize,
    /// Disk grid for the area form.
    pub disk_grid: DiskGrid,
    /// Angular exclusion window around the atom for the boundary form.
    pub exclusion_radius: f64,
}

impl QuadratureSpec {
    pub fn new(boundary_grid: usize, disk_grid: DiskGrid, exclusion_radius: f64) -> Result<Self> {
        if boundary_grid < 16 {
            return Err(Error::Invalid("boundary grid must have at least 16 points".into()));
        }
        if !(0.0..=1e-3).contains(&exclusion_radius) {
            return Err(Error::Invalid("exclusion radius must lie in [0, 1e-3]".into()));
        }
        if disk_grid.is_empty() {
            return Err(Error::Invalid("disk grid must be nonempty".into()));
        }
        Ok(Self { boundary_grid, disk_grid, exclusion_radius })
    }

    /// Boundary grid of the given size; area grid refined at the atoms of
    /// `mu` so the Poisson spikes are resolved.
    pub fn for_measure(boundary_grid: usize, mu: &AtomicMeasure) -> Self {
        Self {
            boundary_grid,
            disk_grid: DiskGrid::quadrature(128, 512, mu.atoms()),
            exclusion_radius: 0.0,
        }
    }

    pub fn with_grid(boundary_grid: usize) -> Self {
        Self {
            boundary_grid,
            disk_grid: DiskGrid::quadrature(128, 512, &[]),
            exclusion_radius: 0.0,
        }
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self::with_grid(4096)
    }
}

/// One pass of the Douglas quadrature at grid size `g`; the contribution of
/// the sample at the atom itself (where the integrand is replaced by its
/// continuous limit `|f'(zeta)|^2`) is returned separately because it does
/// not take part in the divergence test.
fn douglas_once(f: &AnalyticFunction, zeta: Complex, g: usize, exclusion: f64) -> (f64, f64) {
    let grid = UnitCircleGrid::new(g).expect("grid size checked by caller");
    let r = BOUNDARY_RADIUS;
    let f_zeta = f.eval_unchecked(zeta * r);
    let phi = zeta.arg();
    let step = grid.step();
    let mut acc = 0.0;
    let mut at_atom = 0.0;
    for t in grid.angles() {
        let dist = circular_distance(t, phi);
        if exclusion > 0.0 && dist <= exclusion {
            continue;
        }
        if dist < 0.5 * step {
            let (_, d) = f.eval_with_derivative_unchecked(zeta * r);
            at_atom += d.norm_sqr() * r * r;
            continue;
        }
        let lambda = Complex::from_polar(1.0, t);
        let num = (f.eval_unchecked(lambda * r) - f_zeta).norm_sqr();
        acc += num / (lambda - zeta).norm_sqr();
    }
    (acc / g as f64, at_atom / g as f64)
}

/// Local Dirichlet integral `D_zeta(f)` by the Douglas boundary form.
///
/// Returns `+inf` when doubling the grid twice grows the value by more than
/// 10% each time.
pub fn local_dirichlet(f: &AnalyticFunction, zeta: Complex, spec: &QuadratureSpec) -> f64 {
    let zeta = zeta / zeta.norm();
    let g = spec.boundary_grid;
    let (v1, _) = douglas_once(f, zeta, g, spec.exclusion_radius);
    let (v2, _) = douglas_once(f, zeta, 2 * g, spec.exclusion_radius);
    let (v3, a3) = douglas_once(f, zeta, 4 * g, spec.exclusion_radius);
    if v2 > (1.0 + DIVERGENCE_GROWTH) * v1 && v3 > (1.0 + DIVERGENCE_GROWTH) * v2 {
        return f64::INFINITY;
    }
    v3 + a3
}

/// `D_mu(f) = sum_j m_j D_{zeta_j}(f)` (disintegration over the atoms).
pub fn dirichlet_mu(f: &AnalyticFunction, mu: &AtomicMeasure, spec: &QuadratureSpec) -> f64 {
    let mut acc = 0.0;
    for (zeta, m) in mu.atoms().iter().zip(mu.masses()) {
        let d = local_dirichlet(f, *zeta, spec);
        if d.is_infinite() {
            return f64::INFINITY;
        }
        acc += m * d;
    }
    acc
}

/// Area form `(1/pi) int_D |f'|^2 P_mu dA` over the spec's disk grid.
pub fn dirichlet_mu_area(f: &AnalyticFunction, mu: &AtomicMeasure, spec: &QuadratureSpec) -> f64 {
    let grid = &spec.disk_grid;
    let rw = grid.radial_weights();
    let aw = grid.angular_weights();
    let mut total = 0.0;
    for (k, &r) in grid.radii().iter().enumerate() {
        let mut ring = 0.0;
        for (i, &t) in grid.angles().iter().enumerate() {
            let z = Complex::from_polar(r, t);
            let (_, d) = f.eval_with_derivative_unchecked(z);
            ring += aw[i] * d.norm_sqr() * mu.potential(z);
        }
        total += rw[k] * r * (1.0 - r * r) * ring;
    }
    total / PI
}

/// `||f||_{H^2}^2` by boundary quadrature, with the same divergence rule.
pub fn h2_norm_sq(f: &AnalyticFunction, spec: &QuadratureSpec) -> f64 {
    let mean_sq = |g: usize| -> f64 {
        let grid = UnitCircleGrid::new(g).expect("grid size checked by caller");
        grid.angles()
            .map(|t| f.eval_unchecked(Complex::from_polar(BOUNDARY_RADIUS, t)).norm_sqr())
            .sum::<f64>()
            / g as f64
    };
    let g = spec.boundary_grid;
    let v1 = mean_sq(g);
    let v2 = mean_sq(2 * g);
    let v3 = mean_sq(4 * g);
    if v2 > (1.0 + DIVERGENCE_GROWTH) * v1 && v3 > (1.0 + DIVERGENCE_GROWTH) * v2 {
        return f64::INFINITY;
    }
    v3
}

/// `||f||_{D_mu}^2 = ||f||_{H^2}^2 + D_mu(f)`.
pub fn dmu_norm_sq(f: &AnalyticFunction, mu: &AtomicMeasure, spec: &QuadratureSpec) -> f64 {
    let h2 = h2_norm_sq(f, spec);
    if h2.is_infinite() {
        return f64::INFINITY;
    }
    let d = dirichlet_mu(f, mu, spec);
    h2 + d
}

/// The Cauchy-Szego kernel `c_w(z) = 1 / (1 - conj(w) z)`.
pub fn cauchy_kernel(w: Complex) -> Result<AnalyticFunction> {
    if w.norm() >= 1.0 {
        return Err(Error::Domain(String::from("Cauchy kernel requires |w| < 1")));
    }
    AnalyticFunction::rational(
        Poly::one(),
        Poly::new(alloc::vec![Complex::new(1.0, 0.0), -w.conj()]),
    )
}

/// The reproducing kernel of `H(b)`:
/// `k_w^b(z) = (1 - conj(b(w)) b(z)) / (1 - conj(w) z)`,
/// as a rational function (requires polynomial or rational `b`).
pub fn rk_kernel(pair: &PythagoreanPair, w: Complex) -> Result<AnalyticFunction> {
    let bw = pair.b().eval(w)?;
    let szego_den = Poly::new(alloc::vec![Complex::new(1.0, 0.0), -w.conj()]);
    match pair.b() {
        AnalyticFunction::Polynomial(p) => {
            let num = Poly::one().sub(&p.scale(bw.conj()));
            AnalyticFunction::rational(num, szego_den)
        }
        AnalyticFunction::Rational { num, den } => {
            let top = den.sub(&num.scale(bw.conj()));
            AnalyticFunction::rational(top, den.mul(&szego_den))
        }
        _ => Err(Error::Invalid(
            "reproducing kernel in closed form needs polynomial or rational b".into(),
        )),
    }
}

/// `||c_w||_{H(b)}^2 = (1 + |b(w)/a(w)|^2) / (1 - |w|^2)`.
pub fn cauchy_norm_hb(pair: &PythagoreanPair, w: Complex) -> Result<f64> {
    let b = pair.b().eval(w)?;
    let a = pair.a().eval(w)?;
    Ok((1.0 + (b / a).norm_sqr()) / (1.0 - w.norm_sqr()))
}

/// `||c_w||_{D_mu}^2 = (1 + |w|^2 V_mu(w)) / (1 - |w|^2)`.
pub fn cauchy_norm_dmu(mu: &AtomicMeasure, w: Complex) -> Result<f64> {
    if w.norm() >= 1.0 {
        return Err(Error::Domain(String::from("kernel norm requires |w| < 1")));
    }
    Ok((1.0 + w.norm_sqr() * mu.potential(w)) / (1.0 - w.norm_sqr()))
}

/// Diagonal of the `H(b)` kernel: `k_w^b(w) = (1 - |b(w)|^2) / (1 - |w|^2)`.
pub fn rk_hb_norm_sq(pair: &PythagoreanPair, w: Complex) -> Result<f64> {
    let b = pair.b().eval(w)?;
    Ok((1.0 - b.norm_sqr()) / (1.0 - w.norm_sqr()))
}

fn circular_distance(a: f64, b: f64) -> f64 {
    let mut d = (a - b).abs() % (2.0 * PI);
    if d > PI {
        d = 2.0 * PI - d;
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairs;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn spec() -> QuadratureSpec {
        QuadratureSpec::with_grid(1024)
    }

    #[test]
    fn local_of_identity_is_one() {
        let f = AnalyticFunction::polynomial(Poly::identity());
        for zeta in [c(1.0, 0.0), c(0.0, 1.0), Complex::from_polar(1.0, 2.3)] {
            let v = local_dirichlet(&f, zeta, &spec());
            assert!((v - 1.0).abs() < 1e-8, "D_zeta(z) = {v}");
        }
    }

    #[test]
    fn local_of_constant_is_zero() {
        let f = AnalyticFunction::constant(c(2.0, -1.0));
        assert_eq!(local_dirichlet(&f, c(1.0, 0.0), &spec()), 0.0);
    }

    #[test]
    fn local_of_square_at_one() {
        let f = AnalyticFunction::polynomial(Poly::from_real(&[0.0, 0.0, 1.0]));
        let v = local_dirichlet(&f, c(1.0, 0.0), &spec());
        assert!((v - 2.0).abs() < 1e-7, "D_1(z^2) = {v}");
    }

    #[test]
    fn disintegration_examples() {
        let f = AnalyticFunction::polynomial(Poly::identity());
        let mu = AtomicMeasure::with_unit_masses(alloc::vec![c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        let v = dirichlet_mu(&f, &mu, &spec());
        assert!((v - 2.0).abs() < 1e-7);
        let g = AnalyticFunction::constant(c(1.0, 0.0));
        assert_eq!(dirichlet_mu(&g, &mu, &spec()), 0.0);
    }

    #[test]
    fn dmu_norm_examples() {
        let one = AnalyticFunction::constant(c(1.0, 0.0));
        let d1 = AtomicMeasure::dirac(c(1.0, 0.0)).unwrap();
        let q = spec();
        assert!((dmu_norm_sq(&one, &d1, &q) - 1.0).abs() < 1e-8);

        let z = AnalyticFunction::polynomial(Poly::identity());
        assert!((dmu_norm_sq(&z, &d1, &q) - 2.0).abs() < 1e-7);

        // c_w with w = 1/2, mu = delta_1: (1 + |w|^2 V(w)) / (1 - |w|^2) = 8/3
        let cw = cauchy_kernel(c(0.5, 0.0)).unwrap();
        let v = dmu_norm_sq(&cw, &d1, &q);
        assert!((v - 8.0 / 3.0).abs() < 1e-6, "got {v}");
    }

    #[test]
    fn area_form_matches_boundary() {
        let d1 = AtomicMeasure::dirac(c(1.0, 0.0)).unwrap();
        let q = QuadratureSpec::for_measure(2048, &d1);
        let z = AnalyticFunction::polynomial(Poly::identity());
        let v = dirichlet_mu_area(&z, &d1, &q);
        assert!((v - 1.0).abs() < 1e-3, "area D(z) = {v}");
        let z2 = AnalyticFunction::polynomial(Poly::from_real(&[0.0, 0.0, 1.0]));
        let v2 = dirichlet_mu_area(&z2, &d1, &q);
        assert!((v2 - 2.0).abs() < 1e-3, "area D(z^2) = {v2}");
    }

    #[test]
    fn divergent_local_integral() {
        // f = 1/(1 - z) has no radial limit in H^2 sense at zeta = 1
        let f = AnalyticFunction::rational(Poly::one(), Poly::from_real(&[1.0, -1.0])).unwrap();
        let v = local_dirichlet(&f, c(1.0, 0.0), &spec());
        assert!(v.is_infinite());
    }

    #[test]
    fn kernel_norm_closed_forms() {
        let d1 = AtomicMeasure::dirac(c(1.0, 0.0)).unwrap();
        assert!((cauchy_norm_dmu(&d1, c(0.0, 0.0)).unwrap() - 1.0).abs() < 1e-15);
        assert!((cauchy_norm_dmu(&d1, c(0.5, 0.0)).unwrap() - 8.0 / 3.0).abs() < 1e-14);
        let two = AtomicMeasure::with_unit_masses(alloc::vec![c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert!((cauchy_norm_dmu(&two, c(0.0, 0.0)).unwrap() - 1.0).abs() < 1e-15);

        let pair = pairs::costara_ransford_pair(&[c(1.0, 0.0)]).unwrap();
        assert!((cauchy_norm_hb(&pair, c(0.0, 0.0)).unwrap() - 2.0).abs() < 1e-12);
        // b(0) = 0 for the Sarason pair, so the kernel diagonal is 1 there
        let sz = pairs::sarason_pair(c(1.0, 0.0)).unwrap();
        assert!((rk_hb_norm_sq(&sz, c(0.0, 0.0)).unwrap() - 1.0).abs() < 1e-12);

        // Sarason pair at w = 1/2: b/a = w/(1-w) = 1, value 8/3
        let sp = pairs::sarason_pair(c(1.0, 0.0)).unwrap();
        assert!((cauchy_norm_hb(&sp, c(0.5, 0.0)).unwrap() - 8.0 / 3.0).abs() < 1e-12);
        // b(0) = 0 there, so the H(b) kernel norm at the origin is 1
        assert!((cauchy_norm_hb(&sp, c(0.0, 0.0)).unwrap() - 1.0).abs() < 1e-14);
        // and the kernel diagonal at w = 1/2: b(1/2) = s0, value
        // (1 - s0^2)/(3/4) = (6 sqrt(5) - 10)/3
        let want = (6.0 * 5.0_f64.sqrt() - 10.0) / 3.0;
        assert!((rk_hb_norm_sq(&sp, c(0.5, 0.0)).unwrap() - want).abs() < 1e-12);

        // b = 0: Szego diagonal
        let b0 = AnalyticFunction::constant(c(0.0, 0.0));
        let a1 = AnalyticFunction::constant(c(1.0, 0.0));
        let trivial = PythagoreanPair::new(b0, a1, 256, 1e-6).unwrap();
        let w = c(0.3, 0.4);
        assert!(
            (rk_hb_norm_sq(&trivial, w).unwrap() - 1.0 / (1.0 - w.norm_sqr())).abs() < 1e-12
        );
    }

    #[test]
    fn exclusion_window_skips_near_atom_samples() {
        let f = AnalyticFunction::polynomial(Poly::identity());
        let q = QuadratureSpec::new(1024, DiskGrid::quadrature(16, 64, &[]), 1e-3).unwrap();
        let v = local_dirichlet(&f, c(1.0, 0.0), &q);
        // skipping an angular window of width 2e-3 removes that fraction
        assert!((v - 1.0).abs() < 1e-3, "got {v}");
        assert!(QuadratureSpec::new(1024, DiskGrid::quadrature(16, 64, &[]), 0.1).is_err());
    }

    #[test]
    fn additive_in_measure() {
        let f = AnalyticFunction::polynomial(Poly::from_real(&[0.3, 0.2, 0.5]));
        let m1 = AtomicMeasure::dirac(c(1.0, 0.0)).unwrap();
        let m2 = AtomicMeasure::new(alloc::vec![c(0.0, 1.0)], alloc::vec![0.7]).unwrap();
        let q = spec();
        let lhs = dirichlet_mu(&f, &m1.add(&m2).unwrap(), &q);
        let rhs = dirichlet_mu(&f, &m1, &q) + dirichlet_mu(&f, &m2, &q);
        assert!((lhs - rhs).abs() < 1e-10);
    }
}
