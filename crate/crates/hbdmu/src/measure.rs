//! Finitely supported positive measures on the unit circle.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::{Complex, Error, Result};

/// Minimum pairwise separation between atoms.
pub const ATOM_SEPARATION: f64 = 1e-9;

/// Distance below which a point counts as hitting an atom (potential
/// becomes infinite there).
pub const ATOM_HIT: f64 = 1e-14;

/// A measure `sum_j m_j delta_{zeta_j}` with distinct unimodular atoms and
/// positive masses.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicMeasure {
    atoms: Vec<Complex>,
    masses: Vec<f64>,
}

impl AtomicMeasure {
    pub fn new(atoms: Vec<Complex>, masses: Vec<f64>) -> Result<Self> {
        if atoms.is_empty() || atoms.len() != masses.len() {
            return Err(Error::Invalid(
                "measure needs a non-empty atom list with one mass per atom".into(),
            ));
        }
        for m in &masses {
            if !(*m > 0.0) {
                return Err(Error::Invalid("atom masses must be positive".into()));
            }
        }
        let mut atoms = atoms;
        for a in &mut atoms {
            let n = a.norm();
            if (n - 1.0).abs() > 1e-12 {
                return Err(Error::Invalid("atoms must lie on the unit circle (within 1e-12)".into()));
            }
            *a /= n; // snap exactly onto the circle
        }
        for i in 0..atoms.len() {
            for j in 0..i {
                if (atoms[i] - atoms[j]).norm() <= ATOM_SEPARATION {
                    return Err(Error::Invalid("atoms must be pairwise distinct (separation > 1e-9)".into()));
                }
            }
        }
        Ok(Self { atoms, masses })
    }

    /// Equal unit masses at the given atoms.
    pub fn with_unit_masses(atoms: Vec<Complex>) -> Result<Self> {
        let masses = alloc::vec![1.0; atoms.len()];
        Self::new(atoms, masses)
    }

    /// The `n`-th roots of unity with unit masses.
    pub fn roots_of_unity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("roots_of_unity needs n >= 1".into()));
        }
        let atoms = (0..n)
            .map(|k| Complex::from_polar(1.0, 2.0 * PI * k as f64 / n as f64))
            .collect();
        Self::with_unit_masses(atoms)
    }

    /// Dirac mass at a single point.
    pub fn dirac(zeta: Complex) -> Result<Self> {
        Self::with_unit_masses(alloc::vec![zeta])
    }

    pub fn atoms(&self) -> &[Complex] {
        &self.atoms
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn total_mass(&self) -> f64 {
        self.masses.iter().sum()
    }

    /// Sum measure; masses of coinciding atoms add up.
    pub fn add(&self, other: &AtomicMeasure) -> Result<AtomicMeasure> {
        let mut atoms = self.atoms.clone();
        let mut masses = self.masses.clone();
        for (a, m) in other.atoms.iter().zip(&other.masses) {
            if let Some(k) = atoms.iter().position(|x| (x - a).norm() <= ATOM_SEPARATION) {
                masses[k] += m;
            } else {
                atoms.push(*a);
                masses.push(*m);
            }
        }
        AtomicMeasure::new(atoms, masses)
    }

    /// Rotate every atom by the unimodular factor `phase`.
    pub fn rotate(&self, phase: Complex) -> Result<AtomicMeasure> {
        AtomicMeasure::new(self.atoms.iter().map(|a| a * phase).collect(), self.masses.clone())
    }

    /// Potential `V_mu(z) = sum_j m_j / |z - zeta_j|^2`, defined on all of
    /// the complex plane; `+inf` exactly on the atoms.
    pub fn potential(&self, z: Complex) -> f64 {
        let mut acc = 0.0;
        for (a, m) in self.atoms.iter().zip(&self.masses) {
            let d2 = (z - a).norm_sqr();
            if d2 < ATOM_HIT * ATOM_HIT {
                return f64::INFINITY;
            }
            acc += m / d2;
        }
        acc
    }

    /// Poisson integral `P_mu(z) = (1 - |z|^2) V_mu(z)` for `|z| < 1`.
    pub fn poisson(&self, z: Complex) -> Result<f64> {
        let n2 = z.norm_sqr();
        if n2 >= 1.0 {
            return Err(Error::Domain("Poisson integral requires |z| < 1".into()));
        }
        Ok((1.0 - n2) * self.potential(z))
    }

    /// Distance from `z` to the support.
    pub fn dist_to_atoms(&self, z: Complex) -> f64 {
        self.atoms
            .iter()
            .map(|a| (z - a).norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// Two-sided potential bound:
    /// `mu(T)/(1+|z|)^2 <= V_mu(z) <= mu(T)/dist(z, supp)^2`,
    /// checked with a 1e-12 relative slack for rounding.
    pub fn sandwich_check(&self, z: Complex) -> bool {
        let total = self.total_mass();
        let v = self.potential(z);
        let lower = total / (1.0 + z.norm()).powi(2);
        let d2 = self
            .atoms
            .iter()
            .map(|a| (z - a).norm_sqr())
            .fold(f64::INFINITY, f64::min);
        let upper = if d2 == 0.0 { f64::INFINITY } else { total / d2 };
        lower * (1.0 - 1e-12) <= v && v <= upper * (1.0 + 1e-12)
    }
}
