//! Sampling grids on the unit circle and the open disk.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::{Complex, Error, Result};

/// Uniform grid `theta_k = 2 pi k / G` on the unit circle.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitCircleGrid {
    size: usize,
}

impl UnitCircleGrid {
    pub fn new(size: usize) -> Result<Self> {
        if size < 16 {
            return Err(Error::Invalid("circle grid must have at least 16 points".into()));
        }
        Ok(Self { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn angle(&self, k: usize) -> f64 {
        2.0 * PI * k as f64 / self.size as f64
    }

    pub fn step(&self) -> f64 {
        2.0 * PI / self.size as f64
    }

    pub fn angles(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.size).map(move |k| self.angle(k))
    }

    /// Point on the circle at index `k`.
    pub fn point(&self, k: usize) -> Complex {
        Complex::from_polar(1.0, self.angle(k))
    }
}

/// Polar sampling grid strictly inside the unit disk.
///
/// The grid is a product of radii and angles. Near each `refinement_atom`
/// the angle set is geometrically refined down to an angular distance of
/// `MIN_REFINE_DIST`, so that quantities concentrated at boundary atoms
/// (Poisson spikes, `|a|^2 V_mu` limits) are resolved.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskGrid {
    radii: Vec<f64>,
    angles: Vec<f64>,
    refinement_atoms: Vec<Complex>,
}

/// Smallest angular distance from a refinement atom that refinement reaches.
pub const MIN_REFINE_DIST: f64 = 1e-6;

impl DiskGrid {
    /// Plain product grid: linear radii up to 0.9, uniform angles.
    ///
    /// Staying away from the boundary keeps potentials small, so closed-form
    /// identities can be compared at absolute tolerances near machine
    /// precision on this grid.
    pub fn plain(radii_count: usize, angle_count: usize) -> Self {
        let radii = (0..radii_count)
            .map(|i| 0.9 * (i + 1) as f64 / radii_count as f64)
            .collect();
        let angles = uniform_angles(angle_count);
        Self {
            radii,
            angles,
            refinement_atoms: Vec::new(),
        }
    }

    /// Grid for inf/sup estimation of boundary-concentrated quantities:
    /// radii approach the circle geometrically (down to `1 - 1e-9`) and
    /// angles are refined toward each atom.
    pub fn estimation(radii_count: usize, angle_count: usize, atoms: &[Complex]) -> Self {
        let inner = (radii_count / 4).max(4);
        let outer = radii_count.saturating_sub(inner).max(4);
        let mut radii: Vec<f64> = (0..inner).map(|i| 0.5 * (i + 1) as f64 / inner as f64).collect();
        for k in 0..outer {
            // 1 - r from 0.4 down to 1e-9, log-spaced
            let t = k as f64 / (outer - 1) as f64;
            let gap = 0.4 * (2.5e-9_f64).powf(t);
            radii.push(1.0 - gap);
        }
        radii.sort_by(|a, b| a.partial_cmp(b).unwrap());
        radii.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
        let angles = refined_angles(angle_count, atoms, core::f64::consts::SQRT_2);
        Self {
            radii,
            angles,
            refinement_atoms: atoms.to_vec(),
        }
    }

    /// Grid for area quadrature: uniformly spaced radii on `(0, 0.9]`, then
    /// a log-spaced approach to the boundary down to `1 - r = 1e-5`; angles
    /// densely refined near atoms (ratio `2^{1/32}`) so the Poisson kernel
    /// is integrated accurately.
    pub fn quadrature(radii_count: usize, angle_count: usize, atoms: &[Complex]) -> Self {
        let uniform_n = (radii_count / 2).max(8);
        let log_n = radii_count.saturating_sub(uniform_n).max(8);
        let mut radii: Vec<f64> = (1..=uniform_n)
            .map(|k| 0.9 * k as f64 / uniform_n as f64)
            .collect();
        for k in 1..=log_n {
            let t = k as f64 / log_n as f64;
            radii.push(1.0 - 0.1 * (1e-4_f64).powf(t));
        }
        radii.sort_by(|a, b| a.partial_cmp(b).unwrap());
        radii.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
        let angles = refined_angles(angle_count, atoms, (2.0_f64).powf(1.0 / 32.0));
        Self {
            radii,
            angles,
            refinement_atoms: atoms.to_vec(),
        }
    }

    /// Build from explicit radii (used by the CLI for custom sweeps).
    pub fn from_radii_angles(radii: Vec<f64>, angle_count: usize, atoms: &[Complex]) -> Result<Self> {
        if radii.is_empty() || radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid("disk grid radii must be strictly increasing".into()));
        }
        if radii[0] <= 0.0 || *radii.last().unwrap() >= 1.0 {
            return Err(Error::Invalid("disk grid radii must lie in (0, 1)".into()));
        }
        Ok(Self {
            radii,
            angles: refined_angles(angle_count, atoms, core::f64::consts::SQRT_2),
            refinement_atoms: atoms.to_vec(),
        })
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn refinement_atoms(&self) -> &[Complex] {
        &self.refinement_atoms
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> impl Iterator<Item = Complex> + '_ {
        self.radii.iter().flat_map(move |&r| {
            self.angles.iter().map(move |&t| Complex::from_polar(r, t))
        })
    }

    /// Superset refinement: insert midpoints between consecutive radii (in
    /// `log(1 - r)` space) and between consecutive angles, and push one
    /// radius closer to the boundary. Containing every point of `self`
    /// makes grid maxima monotone non-decreasing and minima non-increasing
    /// under refinement.
    pub fn refine(&self) -> Self {
        let mut radii = Vec::with_capacity(self.radii.len() * 2 + 1);
        for k in 0..self.radii.len() {
            radii.push(self.radii[k]);
            if k + 1 < self.radii.len() {
                let g = ((1.0 - self.radii[k]) * (1.0 - self.radii[k + 1])).sqrt();
                radii.push(1.0 - g);
            }
        }
        let last_gap = 1.0 - *self.radii.last().unwrap();
        if last_gap > 4e-10 {
            radii.push(1.0 - last_gap / 4.0);
        }
        radii.sort_by(|a, b| a.partial_cmp(b).unwrap());
        radii.dedup_by(|a, b| (*a - *b).abs() < 1e-16);

        let mut angles = Vec::with_capacity(self.angles.len() * 2);
        let n = self.angles.len();
        for i in 0..n {
            let a = self.angles[i];
            let b = if i + 1 < n { self.angles[i + 1] } else { self.angles[0] + 2.0 * PI };
            angles.push(a);
            angles.push(normalize_angle(0.5 * (a + b)));
        }
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        angles.dedup_by(|a, b| (*a - *b).abs() < 1e-14);

        Self {
            radii,
            angles,
            refinement_atoms: self.refinement_atoms.clone(),
        }
    }

    /// Trapezoidal weights for `int_0^1 h(r) dr` over the stored radii.
    ///
    /// The integrand is assumed to vanish at `r = 0` (ours carry a factor
    /// `r`); the tail `[r_max, 1)` uses a rectangle with the last value.
    pub fn radial_weights(&self) -> Vec<f64> {
        let r = &self.radii;
        let n = r.len();
        let mut w = alloc::vec![0.0; n];
        if n == 1 {
            w[0] = 1.0;
            return w;
        }
        w[0] = r[0] / 2.0 + (r[1] - r[0]) / 2.0;
        for k in 1..n - 1 {
            w[k] = (r[k + 1] - r[k - 1]) / 2.0;
        }
        w[n - 1] = (r[n - 1] - r[n - 2]) / 2.0 + (1.0 - r[n - 1]);
        w
    }

    /// Cyclic trapezoidal weights for `int_0^{2 pi} h(theta) d theta`.
    pub fn angular_weights(&self) -> Vec<f64> {
        let t = &self.angles;
        let n = t.len();
        let mut w = alloc::vec![0.0; n];
        for i in 0..n {
            let prev = if i == 0 { t[n - 1] - 2.0 * PI } else { t[i - 1] };
            let next = if i + 1 == n { t[0] + 2.0 * PI } else { t[i + 1] };
            w[i] = (next - prev) / 2.0;
        }
        w
    }
}

/// Refine the location of a local maximum of `f` near `t0` by successive
/// parabola fits with shrinking stencil.
///
/// Stops as soon as the three-point curvature falls below the floating
/// point noise floor (peaks of `|b|` near 1 are flat to quartic order and
/// narrower stencils would fit noise).
pub(crate) fn refine_peak(f: &dyn Fn(f64) -> f64, t0: f64, h0: f64) -> f64 {
    let mut t = t0;
    let mut h = h0;
    for _ in 0..5 {
        let f0 = f(t);
        let fp = f(t + h);
        let fm = f(t - h);
        let den = fm - 2.0 * f0 + fp;
        if !(den < -1e-13 * f0.abs().max(1e-300)) {
            break;
        }
        let shift = 0.5 * h * (fm - fp) / den;
        if !shift.is_finite() || shift.abs() > h {
            break;
        }
        t += shift;
        h /= 8.0;
    }
    t
}

fn uniform_angles(count: usize) -> Vec<f64> {
    (0..count).map(|k| 2.0 * PI * k as f64 / count as f64).collect()
}

fn normalize_angle(t: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut t = t % two_pi;
    if t < 0.0 {
        t += two_pi;
    }
    t
}

/// Uniform angles plus geometric ladders approaching each atom from both
/// sides, from `pi/2` down to [`MIN_REFINE_DIST`]. Starting the ladder far
/// out keeps the relative spacing bounded wherever a boundary kernel decays
/// like `1/theta^2`.
fn refined_angles(count: usize, atoms: &[Complex], ratio: f64) -> Vec<f64> {
    let mut angles = uniform_angles(count);
    for atom in atoms {
        let phi = atom.arg();
        let mut d = PI / 2.0;
        while d > MIN_REFINE_DIST {
            angles.push(normalize_angle(phi + d));
            angles.push(normalize_angle(phi - d));
            d /= ratio;
        }
        angles.push(normalize_angle(phi + MIN_REFINE_DIST));
        angles.push(normalize_angle(phi - MIN_REFINE_DIST));
    }
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    angles.dedup_by(|a, b| (*a - *b).abs() < 1e-13);
    angles
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_grid_basics() {
        assert!(UnitCircleGrid::new(8).is_err());
        let g = UnitCircleGrid::new(16).unwrap();
        assert_eq!(g.size(), 16);
        assert!((g.point(4) - Complex::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn plain_grid_inside_disk() {
        let g = DiskGrid::plain(8, 16);
        assert_eq!(g.len(), 8 * 16);
        for z in g.points() {
            assert!(z.norm() < 1.0);
        }
    }

    #[test]
    fn estimation_reaches_boundary_and_atom() {
        let atom = Complex::new(1.0, 0.0);
        let g = DiskGrid::estimation(64, 64, &[atom]);
        let rmax = *g.radii().last().unwrap();
        assert!(rmax > 1.0 - 2e-9 && rmax < 1.0);
        let closest = g
            .angles()
            .iter()
            .map(|t| (t - 0.0).abs().min((t - 2.0 * PI).abs()))
            .filter(|d| *d > 0.0)
            .fold(f64::INFINITY, f64::min);
        assert!(closest <= 1.5 * MIN_REFINE_DIST);
    }

    #[test]
    fn refine_is_superset() {
        let g = DiskGrid::estimation(16, 32, &[Complex::new(0.0, 1.0)]);
        let f = g.refine();
        for r in g.radii() {
            assert!(f.radii().iter().any(|x| (x - r).abs() < 1e-15));
        }
        for t in g.angles() {
            assert!(f.angles().iter().any(|x| (x - t).abs() < 1e-13));
        }
    }

    #[test]
    fn weights_integrate_constants() {
        let g = DiskGrid::quadrature(32, 64, &[Complex::new(1.0, 0.0)]);
        // angular weights sum to 2 pi
        let s: f64 = g.angular_weights().iter().sum();
        assert!((s - 2.0 * PI).abs() < 1e-12);
        // int_0^1 r dr = 1/2 with the r factor supplied by the caller
        let rw = g.radial_weights();
        let v: f64 = g.radii().iter().zip(&rw).map(|(r, w)| r * w).sum();
        assert!((v - 0.5).abs() < 2e-3, "got {v}");
    }
}
