//! Outer functions from boundary log-modulus data, and the Pythagorean mate.
//!
//! The mate of a non-extreme `b` is the outer function with boundary modulus
//! `sqrt(1 - |b|^2)` and positive value at the origin. Discretizing the
//! Herglotz integral naively loses accuracy wherever `|b| = 1` on the circle
//! (the log-modulus has logarithmic singularities there), so the
//! construction splits the profile:
//!
//! 1. detect the boundary points with `|b| = 1` and fit the integer order
//!    `alpha` of each logarithmic singularity;
//! 2. subtract `alpha log |1 - conj(zeta) z|` per singularity, whose analytic
//!    completion `(1 - conj(zeta) z)^alpha` is known exactly;
//! 3. Fourier-transform the remaining smooth profile and exponentiate its
//!    truncated analytic completion.
//!
//! Profiles are sampled at radius exactly 1 (every admissible `b` here has
//! a continuous boundary modulus); sampling any closer-in would inject a
//! `(1 - r)` excess into `1 - |b|^2` exactly where it vanishes. Samples
//! landing within half a grid step of a singularity are replaced by the
//! average of evaluations offset a quarter grid step to each side of the
//! sample.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::fft::real_fourier_coeffs;
use crate::functions::AnalyticFunction;
use crate::grid::UnitCircleGrid;
use crate::poly::Poly;
use crate::{Complex, Error, Result, EDGE_RADIUS};

/// Smallest admissible construction grid.
pub const MIN_GRID: usize = 256;

/// Default construction grid.
pub const DEFAULT_GRID: usize = 4096;

/// `|b|` maxima above `1 - DETECT_TOL` are probed as potential boundary
/// zeros of the mate.
const DETECT_TOL: f64 = 1e-5;

/// Real log-modulus samples on a uniform circle grid. Entries may be
/// `-inf` at isolated points (boundary zeros of the modulus).
#[derive(Debug, Clone, PartialEq)]
pub struct LogModulusProfile {
    grid: UnitCircleGrid,
    values: Vec<f64>,
}

impl LogModulusProfile {
    pub fn new(grid: UnitCircleGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.size() {
            return Err(Error::Invalid(format!(
                "profile has {} samples for a grid of size {}",
                values.len(),
                grid.size()
            )));
        }
        let mut infinite = 0usize;
        for v in &values {
            if v.is_nan() || *v == f64::INFINITY {
                return Err(Error::Invalid("profile values must be finite or -inf".into()));
            }
            if *v == f64::NEG_INFINITY {
                infinite += 1;
            }
        }
        if infinite * 8 > values.len() {
            return Err(Error::Extreme(
                "more than 1/8 of the profile is -inf: log-modulus is not integrable".into(),
            ));
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &UnitCircleGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// A boundary zero of the constructed outer function.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryZero {
    /// Angle of the zero on the circle.
    pub angle: f64,
    /// Order of the zero (strength of the log singularity).
    pub order: u32,
}

/// Outer construction with its diagnostics.
#[derive(Debug, Clone)]
pub struct OuterConstruction {
    pub function: AnalyticFunction,
    /// Mean of the (singularity-split) log-modulus; equals `log O(0)`.
    pub mean_log_modulus: f64,
    pub zeros: Vec<BoundaryZero>,
    pub grid_size: usize,
}

/// Outer function with `|O| = exp(values)` on the grid and `O(0) > 0`.
pub fn outer_from_log_modulus(profile: &LogModulusProfile) -> Result<AnalyticFunction> {
    Ok(outer_from_log_modulus_detailed(profile)?.function)
}

pub fn outer_from_log_modulus_detailed(profile: &LogModulusProfile) -> Result<OuterConstruction> {
    let g = profile.grid.size();
    check_grid(g)?;
    let (w, zeros) = split_profile(profile)?;
    Ok(assemble(g, &w, profile.values.clone(), &zeros))
}

/// Singularity-split a sampled profile: detect the `-inf` entries, fit the
/// order of each logarithmic singularity from the neighbors, subtract the
/// singular basis, and interpolate the leftover non-finite samples.
fn split_profile(profile: &LogModulusProfile) -> Result<(Vec<f64>, Vec<BoundaryZero>)> {
    let g = profile.grid.size();
    let v = &profile.values;
    let mut zeros = Vec::new();
    for j in 0..g {
        if v[j] != f64::NEG_INFINITY {
            continue;
        }
        let s = |k: i64| v[((j as i64 + k).rem_euclid(g as i64)) as usize];
        let neighbors = [s(-2), s(-1), s(1), s(2)];
        if neighbors.iter().any(|x| !x.is_finite()) {
            return Err(Error::Invalid(
                "-inf profile samples must be isolated (finite two-step neighborhood)".into(),
            ));
        }
        let alpha = ((s(2) - s(1)) + (s(-2) - s(-1))) / (2.0 * core::f64::consts::LN_2);
        let order = alpha.round();
        if (0.5..=8.0).contains(&order) {
            zeros.push(BoundaryZero { angle: profile.grid.angle(j), order: order as u32 });
        }
        // order ~ 0: treat as a removable dip, interpolation below covers it
    }
    let mut w = vec![0.0; g];
    for j in 0..g {
        w[j] = v[j] - basis_sum(&zeros, profile.grid.angle(j));
    }
    fill_nonfinite(&mut w)?;
    Ok((w, zeros))
}

/// Mean of the singularity-split profile; equals `log O(0)` of the
/// constructed outer function (the singular basis has zero mean). Returns
/// the `-inf` sentinel when the profile has no usable samples.
pub fn mean_log_modulus(profile: &LogModulusProfile) -> f64 {
    match split_profile(profile) {
        Ok((w, _)) => w.iter().sum::<f64>() / w.len() as f64,
        Err(_) => f64::NEG_INFINITY,
    }
}

/// Mate construction with diagnostics.
#[derive(Debug, Clone)]
pub struct MateConstruction {
    pub mate: AnalyticFunction,
    pub mean_log_modulus: f64,
    /// Boundary points where `|b| = 1` (zeros of the mate) with their orders.
    pub zeros: Vec<BoundaryZero>,
    pub grid_size: usize,
    /// Largest sampled boundary modulus of `b`.
    pub sup_b: f64,
}

/// The Pythagorean mate `a` of `b`: outer, `a(0) > 0`,
/// `|a|^2 = 1 - |b|^2` on the circle.
pub fn pythagorean_mate(b: &AnalyticFunction, grid_size: usize) -> Result<AnalyticFunction> {
    Ok(pythagorean_mate_detailed(b, grid_size)?.mate)
}

pub fn pythagorean_mate_detailed(b: &AnalyticFunction, grid_size: usize) -> Result<MateConstruction> {
    check_grid(grid_size)?;
    let g = grid_size;
    let grid = UnitCircleGrid::new(g)?;

    let modulus: Vec<f64> = grid
        .angles()
        .map(|t| b.eval_unchecked(Complex::from_polar(1.0, t)).norm())
        .collect();
    let sup_b = modulus.iter().cloned().fold(0.0, f64::max);
    if sup_b > 1.0 + 1e-9 {
        return Err(Error::NotContractive { sup: sup_b });
    }

    let zeros = detect_boundary_zeros(b, &modulus, &grid)?;

    // extremeness probe: the mean must be stable when the grid doubles ...
    let mean_coarse = profile_mean(b, g / 4, &zeros)?;
    let mean_mid = profile_mean(b, g / 2, &zeros)?;
    let mean_fine = profile_mean(b, g, &zeros)?;
    if (mean_mid - mean_coarse).abs() > 0.1 && (mean_fine - mean_mid).abs() > 0.1 {
        return Err(Error::Extreme(format!(
            "log-modulus mean diverges under grid refinement: {mean_coarse:.3} -> {mean_mid:.3} -> {mean_fine:.3}"
        )));
    }
    // ... and when the sampling radius approaches the circle (catches inner
    // factors, whose profile is flat at any fixed radius)
    if mean_fine < -8.5 {
        let m6 = radius_mean(b, &grid, 1.0 - 1e-6);
        let m9 = radius_mean(b, &grid, 1.0 - 1e-9);
        let m12 = radius_mean(b, &grid, EDGE_RADIUS);
        if m9 - m6 < -1.0 && m12 - m9 < -1.0 {
            return Err(Error::Extreme(format!(
                "log-modulus mean diverges as the sampling radius approaches the circle: {m6:.3} -> {m9:.3} -> {m12:.3}"
            )));
        }
    }

    let w = mate_smooth_samples(b, g, &zeros)?;
    let stored: Vec<f64> = (0..g)
        .map(|j| w[j] + basis_sum(&zeros, grid.angle(j)))
        .collect();
    let built = assemble(g, &w, stored, &zeros);
    Ok(MateConstruction {
        mate: built.function,
        mean_log_modulus: built.mean_log_modulus,
        zeros: built.zeros,
        grid_size: g,
        sup_b,
    })
}

fn check_grid(g: usize) -> Result<()> {
    if !g.is_power_of_two() || g < MIN_GRID {
        return Err(Error::Invalid(format!(
            "construction grid must be a power of two >= {MIN_GRID}, got {g}"
        )));
    }
    Ok(())
}

/// `sum_s order_s * log |1 - e^{i(theta - phi_s)}|`.
fn basis_sum(zeros: &[BoundaryZero], theta: f64) -> f64 {
    let mut acc = 0.0;
    for z in zeros {
        let d = (Complex::from_polar(1.0, theta) - Complex::from_polar(1.0, z.angle)).norm();
        acc += z.order as f64 * d.ln();
    }
    acc
}

/// Replace non-finite entries by the average of the nearest finite
/// neighbors on each side.
fn fill_nonfinite(w: &mut [f64]) -> Result<()> {
    let g = w.len();
    let bad: Vec<usize> = (0..g).filter(|&j| !w[j].is_finite()).collect();
    if bad.is_empty() {
        return Ok(());
    }
    if bad.len() * 64 > g {
        return Err(Error::Extreme(
            "log-modulus profile has too many non-finite samples".into(),
        ));
    }
    let orig = w.to_vec();
    for &j in &bad {
        let mut lo = None;
        let mut hi = None;
        for step in 1..g {
            let l = (j + g - step) % g;
            let h = (j + step) % g;
            if lo.is_none() && orig[l].is_finite() {
                lo = Some(orig[l]);
            }
            if hi.is_none() && orig[h].is_finite() {
                hi = Some(orig[h]);
            }
            if lo.is_some() && hi.is_some() {
                break;
            }
        }
        match (lo, hi) {
            (Some(a), Some(b)) => w[j] = 0.5 * (a + b),
            _ => return Err(Error::Extreme("profile has no finite samples".into())),
        }
    }
    Ok(())
}

/// Build the outer function from smooth samples and boundary zeros.
fn assemble(g: usize, w: &[f64], stored: Vec<f64>, zeros: &[BoundaryZero]) -> OuterConstruction {
    let coeffs = real_fourier_coeffs(w);
    let half = g / 2;
    let mut completion = Vec::with_capacity(half + 1);
    completion.push(coeffs[0]);
    for k in 1..half {
        completion.push(coeffs[k] * 2.0);
    }
    // un-doubled Nyquist coefficient: the boundary real part then
    // interpolates the samples exactly at grid points
    completion.push(coeffs[half]);
    let mean = coeffs[0].re;

    let mut roots = Vec::new();
    let mut scale = Complex::new(1.0, 0.0);
    for z in zeros {
        let zeta = Complex::from_polar(1.0, z.angle);
        for _ in 0..z.order {
            roots.push(zeta);
            scale *= -zeta.conj();
        }
    }
    let singular = Poly::from_roots(&roots).scale(scale);

    OuterConstruction {
        function: AnalyticFunction::OuterFromSamples {
            completion: Poly::new(completion),
            singular,
            log_modulus: stored,
        },
        mean_log_modulus: mean,
        zeros: zeros.to_vec(),
        grid_size: g,
    }
}

/// Half of `log(1 - |b|^2)` at `radius * e^{i theta}` (radius 1 included);
/// `-inf` when the sampled modulus reaches 1.
fn half_log_defect(b: &AnalyticFunction, theta: f64, radius: f64) -> f64 {
    let m2 = b.eval_unchecked(Complex::from_polar(radius, theta)).norm_sqr();
    let x = 1.0 - m2;
    if x <= 0.0 {
        f64::NEG_INFINITY
    } else {
        0.5 * x.ln()
    }
}

/// Locate the boundary points where `|b| = 1` and fit the order of the
/// logarithmic singularity of `log(1 - |b|^2)` at each.
fn detect_boundary_zeros(
    b: &AnalyticFunction,
    modulus: &[f64],
    grid: &UnitCircleGrid,
) -> Result<Vec<BoundaryZero>> {
    let g = grid.size();
    let step = grid.step();
    let mut candidates: Vec<f64> = Vec::new();
    for j in 0..g {
        let m = modulus[j];
        if m < 1.0 - DETECT_TOL {
            continue;
        }
        let prev = modulus[(j + g - 1) % g];
        let next = modulus[(j + 1) % g];
        if m >= prev && m >= next {
            candidates.push(grid.angle(j));
        }
    }
    if candidates.len() > 32 {
        return Err(Error::Extreme(
            "boundary modulus is pinned at 1 on a large portion of the circle".into(),
        ));
    }

    let mut zeros: Vec<BoundaryZero> = Vec::new();
    for theta in candidates {
        let f = |t: f64| b.eval_unchecked(Complex::from_polar(1.0, t)).norm();
        let phi = crate::grid::refine_peak(&f, theta, step);
        if f(phi) < 1.0 - DETECT_TOL {
            continue;
        }
        if zeros
            .iter()
            .any(|z| circular_distance(z.angle, phi) < 1e-6 + step * 0.5)
        {
            continue;
        }
        // two-sided order fit: v(phi +- h) ~ order * log h + smooth
        let sep = zeros
            .iter()
            .map(|z| circular_distance(z.angle, phi))
            .fold(f64::INFINITY, f64::min);
        let h = (1e-3_f64).min(sep / 8.0).max(1e-5);
        let v = |t: f64| half_log_defect(b, t, 1.0);
        let samples = [v(phi + h), v(phi + 2.0 * h), v(phi - h), v(phi - 2.0 * h)];
        if samples.iter().any(|x| !x.is_finite()) {
            return Err(Error::Extreme(
                "modulus stays at 1 on an arc: no integrable log-modulus".into(),
            ));
        }
        let alpha =
            ((samples[1] - samples[0]) + (samples[3] - samples[2])) / (2.0 * core::f64::consts::LN_2);
        let order = alpha.round();
        if order >= 0.5 {
            if order > 8.0 {
                return Err(Error::Extreme(format!(
                    "log singularity of order {alpha:.2} at angle {phi:.6} is too strong"
                )));
            }
            zeros.push(BoundaryZero { angle: phi, order: order as u32 });
        }
    }
    zeros.sort_by(|a, b| a.angle.partial_cmp(&b.angle).unwrap());
    Ok(zeros)
}

/// Smooth part of the mate profile at grid size `g`: the sampled
/// `log sqrt(1 - |b|^2)` minus the singular basis, with samples adjacent to
/// a singularity replaced by quarter-step offset evaluations centered at
/// the sample itself (centering cancels the first-order slope of the
/// smooth part).
fn mate_smooth_samples(b: &AnalyticFunction, g: usize, zeros: &[BoundaryZero]) -> Result<Vec<f64>> {
    let grid = UnitCircleGrid::new(g)?;
    let step = grid.step();
    let wval = |t: f64| half_log_defect(b, t, 1.0) - basis_sum(zeros, t);
    let mut w = vec![0.0; g];
    for j in 0..g {
        let theta = grid.angle(j);
        let near = zeros.iter().any(|z| circular_distance(z.angle, theta) < 0.5 * step);
        w[j] = if near {
            0.5 * (wval(theta + 0.25 * step) + wval(theta - 0.25 * step))
        } else {
            wval(theta)
        };
    }
    fill_nonfinite(&mut w)?;
    Ok(w)
}

fn profile_mean(b: &AnalyticFunction, g: usize, zeros: &[BoundaryZero]) -> Result<f64> {
    let w = mate_smooth_samples(b, g, zeros)?;
    Ok(w.iter().sum::<f64>() / g as f64)
}

/// Plain profile mean at a given radius with non-finite samples dropped;
/// used only for the radius-divergence probe.
fn radius_mean(b: &AnalyticFunction, grid: &UnitCircleGrid, radius: f64) -> f64 {
    let mut acc = 0.0;
    let mut count = 0usize;
    for t in grid.angles() {
        let v = half_log_defect(b, t, radius);
        if v.is_finite() {
            acc += v;
            count += 1;
        }
    }
    if count == 0 {
        f64::NEG_INFINITY
    } else {
        acc / count as f64
    }
}

fn circular_distance(a: f64, b: f64) -> f64 {
    let mut d = (a - b).abs() % (2.0 * PI);
    if d > PI {
        d = 2.0 * PI - d;
    }
    d
}
