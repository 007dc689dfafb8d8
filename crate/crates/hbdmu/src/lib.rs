//! Numerical toolkit for de Branges-Rovnyak spaces `H(b)` and harmonically
//! weighted Dirichlet spaces `D_mu` with finitely supported measures.
//!
//! The crate computes the objects that make the `H(b)`-versus-`D_mu`
//! comparison concrete on a machine:
//!
//! * Pythagorean pairs `(b, a)` with `|a|^2 + |b|^2 = 1` on the unit circle,
//!   including the canonical gallery (Sarason's rational pair, the
//!   Costara-Ransford polynomial pairs, polynomial-type pairs with
//!   multiplicities, and the exponential family `exp(z^N - 1)`);
//! * outer functions reconstructed from boundary log-modulus data, and the
//!   Pythagorean mate `a` of a non-extreme `b`;
//! * Fejer-Riesz spectral factorization of non-negative trigonometric
//!   polynomials via companion-matrix eigenvalues;
//! * potentials `V_mu`, Poisson integrals `P_mu`, local Dirichlet integrals
//!   `D_zeta(f)` (boundary and area quadrature), `D_mu` norms, and the
//!   closed-form Cauchy/reproducing-kernel norms;
//! * certifiers for the embedding `H(b) -> D_mu`, the reverse embedding,
//!   the set equality, the polynomial-type model `H(p_b)`, the
//!   continuous-boundary criterion, Corona-pair evidence, and Clark-measure
//!   absolute continuity.
//!
//! Everything here is pure computation on `f64` complex numbers: values are
//! immutable after construction and all operations are safe to call
//! concurrently. IO, descriptors and the command line live in the companion
//! `hbdmu-cli` crate.
//!
//! The crate is `no_std`-compatible (requires `alloc`); enable the `libm`
//! feature instead of `std` for bare-metal floating point.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod certify;
pub mod dirichlet;
mod error;
pub mod fejer;
pub mod fft;
pub mod functions;
pub mod grid;
pub mod measure;
pub mod outer;
pub mod pairs;
pub mod poly;
mod rng;
pub mod roots;
pub mod selftest;

pub use error::{Error, Result};
pub use functions::AnalyticFunction;
pub use grid::{DiskGrid, UnitCircleGrid};
pub use measure::AtomicMeasure;
pub use pairs::PythagoreanPair;
pub use poly::Poly;

/// Complex scalar used throughout the crate.
pub type Complex = num_complex::Complex64;

/// Radius at which radial boundary limits are sampled.
///
/// All closed-form function families shipped here extend continuously to the
/// circle, so radial sampling this close to the boundary agrees with the
/// nontangential limit to well below every tolerance in the crate.
pub const BOUNDARY_RADIUS: f64 = 1.0 - 1e-9;

/// Innermost radius at which evaluation is guaranteed finite; used where the
/// sampling must hug the circle as tightly as possible (log-modulus profiles
/// near points with `|b| = 1`).
pub const EDGE_RADIUS: f64 = 1.0 - 1e-12;
