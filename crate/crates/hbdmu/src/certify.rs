//! Certifiers for the embedding and equality criteria.
//!
//! Each certifier runs in one of two modes. When the mate `a` is a
//! polynomial or rational function, the structural conditions are decided
//! *exactly*: synthetic division at every atom must be remainderless and the
//! quotient witness `g` must be zero-free with positive boundary minimum.
//! Otherwise the certifier reports grid estimates of `inf` and `sup` of
//! `|a|^2 V_mu` with a stability-under-refinement test; a finite grid can
//! never prove `sup < inf`-type conditions, so purely numerical positives
//! for the `H(b) -> D_mu` direction are capped at `inconclusive`.
//!
//! Verdict policy: `holds` only when every condition passes; `fails` only
//! when a condition fails beyond any numerical doubt (an order of magnitude
//! past tolerance); `inconclusive` otherwise.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::functions::AnalyticFunction;
use crate::grid::{DiskGrid, UnitCircleGrid};
use crate::measure::AtomicMeasure;
use crate::pairs::PythagoreanPair;
use crate::poly::Poly;
use crate::{Complex, Error, Result, BOUNDARY_RADIUS};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Numerical,
}

impl Mode {
    pub fn tag(&self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Numerical => "numerical",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    AEmbedding,
    BReverse,
    CEquality,
    DPolyType,
    ContinuousCriterion,
    Corona,
    Clark,
}

impl Theorem {
    pub fn tag(&self) -> &'static str {
        match self {
            Theorem::AEmbedding => "A_embedding",
            Theorem::BReverse => "B_reverse",
            Theorem::CEquality => "C_equality",
            Theorem::DPolyType => "D_polytype",
            Theorem::ContinuousCriterion => "continuous_criterion",
            Theorem::Corona => "corona",
            Theorem::Clark => "clark",
        }
    }
}

/// A named check with its scalar evidence.
#[derive(Debug, Clone)]
pub struct Condition {
    pub name: String,
    pub passed: bool,
    pub evidence: f64,
}

impl Condition {
    fn new(name: &str, passed: bool, evidence: f64) -> Self {
        Self { name: String::from(name), passed, evidence }
    }
}

/// Tolerances and grid choices; all of them are echoed into every report.
#[derive(Debug, Clone)]
pub struct CertifyOptions {
    pub boundary_size: usize,
    pub disk_radii: usize,
    pub disk_angles: usize,
    /// `|b| >= 1 - tol` marks a point as outside the spectrum.
    pub spectrum_tol: f64,
    /// Angular tolerance when matching atoms with spectrum representatives.
    pub atom_match_tol: f64,
    /// Relative remainder below which a synthetic division counts as exact.
    pub division_tol: f64,
    /// Quantitative threshold for `inf > 0` conditions.
    pub inf_tol: f64,
    /// Quantitative threshold for `sup < inf` conditions.
    pub sup_cap: f64,
    /// Allowed relative drift of estimates under one grid refinement.
    pub stability_factor: f64,
    /// Distance tolerance for the Clark criterion `lambda != b(zeta_j)`.
    pub clark_tol: f64,
    /// Skip exact mode even when the mate is polynomial or rational.
    pub force_numerical: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            boundary_size: 8192,
            disk_radii: 64,
            disk_angles: 512,
            spectrum_tol: 1e-4,
            atom_match_tol: 1e-6,
            division_tol: 1e-8,
            inf_tol: 1e-6,
            sup_cap: 1e6,
            stability_factor: 0.1,
            clark_tol: 1e-6,
            force_numerical: false,
        }
    }
}

/// Grid descriptors and tolerances recorded in every report.
#[derive(Debug, Clone)]
pub struct GridMeta {
    pub boundary_size: usize,
    pub disk_radii: usize,
    pub disk_angles: usize,
    pub spectrum_tol: f64,
    pub atom_match_tol: f64,
    pub division_tol: f64,
    pub inf_tol: f64,
    pub sup_cap: f64,
    pub stability_factor: f64,
    pub sampling_radius: f64,
    /// `D_mu`-norm convention used throughout: `H^2 + D_mu`.
    pub norm_convention: &'static str,
}

impl CertifyOptions {
    fn meta(&self) -> GridMeta {
        GridMeta {
            boundary_size: self.boundary_size,
            disk_radii: self.disk_radii,
            disk_angles: self.disk_angles,
            spectrum_tol: self.spectrum_tol,
            atom_match_tol: self.atom_match_tol,
            division_tol: self.division_tol,
            inf_tol: self.inf_tol,
            sup_cap: self.sup_cap,
            stability_factor: self.stability_factor,
            sampling_radius: BOUNDARY_RADIUS,
            norm_convention: "h2_plus_dmu",
        }
    }

    fn estimation_grid(&self, atoms: &[Complex]) -> DiskGrid {
        DiskGrid::estimation(self.disk_radii, self.disk_angles, atoms)
    }
}

#[derive(Debug, Clone)]
pub struct CertificationReport {
    pub theorem: Theorem,
    pub verdict: Verdict,
    pub mode: Mode,
    pub conditions: Vec<Condition>,
    pub inf_estimate: Option<f64>,
    pub sup_estimate: Option<f64>,
    pub witness_quotient: Option<AnalyticFunction>,
    pub grid: GridMeta,
}

/// Estimated complement of the boundary spectrum: representatives of the
/// connected components where the radial boundary modulus reaches `1 - tol`.
#[derive(Debug, Clone)]
pub struct SpectrumEstimate {
    pub representatives: Vec<Complex>,
    pub tol: f64,
    pub grid_size: usize,
}

pub fn spectrum_complement(
    b: &AnalyticFunction,
    tol: f64,
    grid_size: usize,
) -> Result<SpectrumEstimate> {
    if !(tol > 0.0 && tol < 0.5) {
        return Err(Error::Invalid("spectrum tolerance must lie in (0, 0.5)".into()));
    }
    let grid = UnitCircleGrid::new(grid_size)?;
    let g = grid.size();
    let m: Vec<f64> = grid
        .angles()
        .map(|t| b.eval_unchecked(Complex::from_polar(BOUNDARY_RADIUS, t)).norm())
        .collect();
    let flagged: Vec<usize> = (0..g).filter(|&j| m[j] >= 1.0 - tol).collect();
    if flagged.is_empty() {
        return Ok(SpectrumEstimate { representatives: Vec::new(), tol, grid_size });
    }
    // cluster flagged indices with circular gap <= 2 grid steps
    let mut clusters: Vec<Vec<usize>> = vec![vec![flagged[0]]];
    for &j in flagged.iter().skip(1) {
        let last = *clusters.last().unwrap().last().unwrap();
        if j - last <= 2 {
            clusters.last_mut().unwrap().push(j);
        } else {
            clusters.push(vec![j]);
        }
    }
    if clusters.len() > 1 {
        let first = clusters[0][0];
        let last = *clusters.last().unwrap().last().unwrap();
        if first + g - last <= 2 {
            let tail = clusters.pop().unwrap();
            clusters[0].splice(0..0, tail);
        }
    }
    let modulus = |t: f64| b.eval_unchecked(Complex::from_polar(BOUNDARY_RADIUS, t)).norm();
    let mut representatives = Vec::with_capacity(clusters.len());
    for cluster in &clusters {
        let &peak = cluster
            .iter()
            .max_by(|&&i, &&j| m[i].partial_cmp(&m[j]).unwrap())
            .unwrap();
        let phi = crate::grid::refine_peak(&modulus, grid.angle(peak), grid.step());
        representatives.push(Complex::from_polar(1.0, phi));
    }
    representatives.sort_by(|a, b| a.arg().partial_cmp(&b.arg()).unwrap());
    representatives.dedup_by(|a, b| (*a - *b).norm() < 1e-9);
    Ok(SpectrumEstimate { representatives, tol, grid_size })
}

// ---------------------------------------------------------------------------
// shared helpers
// ---------------------------------------------------------------------------

/// Numerator and optional denominator when the mate has exact structure.
fn exact_parts(a: &AnalyticFunction) -> Option<(&Poly, Option<&Poly>)> {
    match a {
        AnalyticFunction::Polynomial(p) => Some((p, None)),
        AnalyticFunction::Rational { num, den } => Some((num, Some(den))),
        _ => None,
    }
}

/// Divide `num` by `(z - zeta_j)^{m_j}` for every atom; returns the final
/// quotient and the largest relative remainder encountered.
fn divide_at_atoms(num: &Poly, atoms: &[Complex], mults: &[u32]) -> Result<(Poly, f64)> {
    let scale = num.max_coeff().max(1e-300);
    let mut q = num.clone();
    let mut worst = 0.0_f64;
    for (zeta, m) in atoms.iter().zip(mults) {
        for _ in 0..*m {
            let (next, rem) = q.divide_linear(*zeta)?;
            worst = worst.max(rem.norm() / scale);
            q = next;
        }
    }
    Ok((q, worst))
}

fn quotient_function(q: Poly, den: Option<&Poly>) -> Result<AnalyticFunction> {
    match den {
        None => Ok(AnalyticFunction::polynomial(q)),
        Some(d) => AnalyticFunction::rational(q, d.clone()),
    }
}

/// Boundary min/max of `|g|` on the given circle grid size.
fn boundary_range(g_fn: &AnalyticFunction, grid_size: usize) -> Result<(f64, f64)> {
    let grid = UnitCircleGrid::new(grid_size)?;
    let mut min = f64::INFINITY;
    let mut max = 0.0_f64;
    for t in grid.angles() {
        let v = g_fn.eval_unchecked(Complex::from_polar(BOUNDARY_RADIUS, t)).norm();
        min = min.min(v);
        max = max.max(v);
    }
    Ok((min, max))
}

/// Smallest modulus among the roots of the quotient's numerator;
/// `inf` when there are none.
fn min_root_modulus(q: &Poly) -> Result<f64> {
    let roots = crate::roots::polynomial_roots(q.coeffs())?;
    Ok(roots.iter().map(|r| r.norm()).fold(f64::INFINITY, f64::min))
}

struct AtomMatch {
    /// Largest distance from an atom to its nearest representative.
    max_atom_dist: f64,
    /// Largest distance from a representative to its nearest atom.
    max_rep_dist: f64,
    /// One of the atoms sits where `|b|` is far below 1.
    strong_mismatch: bool,
}

fn match_atoms(
    spectrum: &SpectrumEstimate,
    atoms: &[Complex],
    b: &AnalyticFunction,
    tol: f64,
) -> AtomMatch {
    let dist = |p: Complex, set: &[Complex]| -> f64 {
        set.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min)
    };
    let mut max_atom_dist = 0.0_f64;
    let mut strong = false;
    for a in atoms {
        let d = dist(*a, &spectrum.representatives);
        max_atom_dist = max_atom_dist.max(d);
        if d > tol {
            let m = b.eval_unchecked(a * BOUNDARY_RADIUS).norm();
            if m < 1.0 - 10.0 * spectrum.tol {
                strong = true;
            }
        }
    }
    let mut max_rep_dist = 0.0_f64;
    for r in &spectrum.representatives {
        max_rep_dist = max_rep_dist.max(dist(*r, atoms));
    }
    AtomMatch { max_atom_dist, max_rep_dist, strong_mismatch: strong }
}

/// Min and max of `value` over a disk grid.
fn grid_range(grid: &DiskGrid, value: &dyn Fn(Complex) -> f64) -> (f64, f64) {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for z in grid.points() {
        let v = value(z);
        if v.is_nan() {
            continue;
        }
        min = min.min(v);
        max = max.max(v);
    }
    (min, max)
}

struct RangeEstimate {
    inf: f64,
    sup: f64,
    inf_stable: bool,
    sup_stable: bool,
}

/// Estimate inf/sup over the estimation grid and its one-step refinement.
fn refined_range(
    opts: &CertifyOptions,
    atoms: &[Complex],
    value: &dyn Fn(Complex) -> f64,
) -> RangeEstimate {
    let base = opts.estimation_grid(atoms);
    let fine = base.refine();
    let (inf1, sup1) = grid_range(&base, value);
    let (inf2, sup2) = grid_range(&fine, value);
    let s = opts.stability_factor;
    RangeEstimate {
        inf: inf2,
        sup: sup2,
        inf_stable: inf2 >= inf1 * (1.0 - s) - 1e-300,
        sup_stable: sup2 <= sup1 * (1.0 + s) + 1e-300,
    }
}

fn product_value<'a>(a: &'a AnalyticFunction, mu: &'a AtomicMeasure) -> impl Fn(Complex) -> f64 + 'a {
    move |z| a.eval_unchecked(z).norm_sqr() * mu.potential(z)
}

// ---------------------------------------------------------------------------
// Theorem A: H(b) -> D_mu
// ---------------------------------------------------------------------------

pub fn check_embedding_hb_to_dmu(
    pair: &PythagoreanPair,
    mu: &AtomicMeasure,
    opts: &CertifyOptions,
) -> Result<CertificationReport> {
    let spectrum = spectrum_complement(pair.b(), opts.spectrum_tol, opts.boundary_size)?;
    let matched = match_atoms(&spectrum, mu.atoms(), pair.b(), opts.atom_match_tol);
    let atom_cond = Condition::new(
        "atoms_in_spectrum_complement",
        matched.max_atom_dist <= opts.atom_match_tol,
        matched.max_atom_dist,
    );

    let range = refined_range(opts, mu.atoms(), &product_value(pair.a(), mu));
    let mut conditions = vec![atom_cond];
    let exact = if opts.force_numerical { None } else { exact_parts(pair.a()) };
    let report = match exact {
        Some((num, den)) => {
            let mults = vec![1u32; mu.atoms().len()];
            let (q, rem) = divide_at_atoms(num, mu.atoms(), &mults)?;
            let witness = quotient_function(q, den)?;
            let (_, sup_g) = boundary_range(&witness, opts.boundary_size)?;
            conditions.push(Condition::new(
                "mate_divisible_at_atoms",
                rem <= opts.division_tol,
                rem,
            ));
            conditions.push(Condition::new(
                "quotient_in_h_infinity",
                sup_g <= opts.sup_cap,
                sup_g,
            ));
            let all_pass = conditions.iter().all(|c| c.passed);
            let hard_fail = matched.strong_mismatch || rem > 1e-3 || sup_g > 10.0 * opts.sup_cap;
            CertificationReport {
                theorem: Theorem::AEmbedding,
                verdict: verdict_of(all_pass, hard_fail),
                mode: Mode::Exact,
                conditions,
                inf_estimate: Some(range.inf),
                sup_estimate: Some(range.sup),
                witness_quotient: Some(witness),
                grid: opts.meta(),
            }
        }
        None => {
            conditions.push(Condition::new(
                "sup_product_bounded",
                range.sup <= opts.sup_cap && range.sup_stable,
                range.sup,
            ));
            let hard_fail = matched.strong_mismatch || range.sup > 10.0 * opts.sup_cap;
            // a grid cannot prove sup < inf: positives stay inconclusive
            let verdict = if hard_fail { Verdict::Fails } else { Verdict::Inconclusive };
            CertificationReport {
                theorem: Theorem::AEmbedding,
                verdict,
                mode: Mode::Numerical,
                conditions,
                inf_estimate: Some(range.inf),
                sup_estimate: Some(range.sup),
                witness_quotient: None,
                grid: opts.meta(),
            }
        }
    };
    Ok(report)
}

// ---------------------------------------------------------------------------
// Theorem B: D_mu -> H(b)
// ---------------------------------------------------------------------------

/// Structural analysis of the mate's zeros for the reverse embedding: the
/// quotient `g = a / prod (z - zeta_j)` is holomorphic on the disk no
/// matter what (the product only vanishes on the circle), so
/// `inf_D |g| > 0` fails exactly when `a` has a zero in the open disk, a
/// boundary zero away from every atom, or a multiple zero at an atom.
struct MateZeroAnalysis {
    ok: bool,
    hard_fail: bool,
    /// Worst distance from a boundary zero of `a` to its nearest atom.
    worst_dist: f64,
}

fn analyze_mate_zeros(num: &Poly, atoms: &[Complex], tol: f64) -> Result<MateZeroAnalysis> {
    let roots = crate::roots::polynomial_roots(num.coeffs())?;
    let mut counts = vec![0usize; atoms.len()];
    let mut out = MateZeroAnalysis { ok: true, hard_fail: false, worst_dist: 0.0 };
    for r in roots {
        let m = r.norm();
        if m < 1.0 - 1e-6 {
            // interior zero: a is not even outer, inf |g| = 0
            out.ok = false;
            out.hard_fail = true;
        } else if m <= 1.0 + 1e-6 {
            let (k, d) = atoms
                .iter()
                .enumerate()
                .map(|(k, a)| (k, (r - a).norm()))
                .min_by(|x, y| x.1.partial_cmp(&y.1).unwrap())
                .expect("atoms checked non-empty");
            out.worst_dist = out.worst_dist.max(d);
            if d > tol.max(1e-6) {
                out.ok = false;
                if d > 1e-2 {
                    out.hard_fail = true;
                }
            } else {
                counts[k] += 1;
            }
        }
    }
    if counts.iter().any(|&n| n > 1) {
        // a vanishes to higher order than the simple pole available at the
        // atom: g tends to zero there
        out.ok = false;
        out.hard_fail = true;
    }
    Ok(out)
}

pub fn check_embedding_dmu_to_hb(
    pair: &PythagoreanPair,
    mu: &AtomicMeasure,
    opts: &CertifyOptions,
) -> Result<CertificationReport> {
    let range = refined_range(opts, mu.atoms(), &product_value(pair.a(), mu));
    let inf_cond = Condition::new(
        "inf_product_positive",
        range.inf > opts.inf_tol && range.inf_stable,
        range.inf,
    );
    let exact = if opts.force_numerical { None } else { exact_parts(pair.a()) };
    let report = match exact {
        Some((num, _)) => {
            let zeros = analyze_mate_zeros(num, mu.atoms(), opts.atom_match_tol)?;
            let conditions = vec![
                Condition::new("mate_zeros_simple_at_atoms", zeros.ok, zeros.worst_dist),
                inf_cond,
            ];
            let all_pass = conditions.iter().all(|c| c.passed);
            let hard_fail = zeros.hard_fail || range.inf < opts.inf_tol * 0.1;
            CertificationReport {
                theorem: Theorem::BReverse,
                verdict: verdict_of(all_pass, hard_fail),
                mode: Mode::Exact,
                conditions,
                inf_estimate: Some(range.inf),
                sup_estimate: Some(range.sup),
                witness_quotient: None,
                grid: opts.meta(),
            }
        }
        None => {
            let conditions = vec![inf_cond];
            let all_pass = conditions.iter().all(|c| c.passed);
            let hard_fail = range.inf < opts.inf_tol * 0.1;
            CertificationReport {
                theorem: Theorem::BReverse,
                verdict: verdict_of(all_pass, hard_fail),
                mode: Mode::Numerical,
                conditions,
                inf_estimate: Some(range.inf),
                sup_estimate: Some(range.sup),
                witness_quotient: None,
                grid: opts.meta(),
            }
        }
    };
    Ok(report)
}

fn verdict_of(all_pass: bool, hard_fail: bool) -> Verdict {
    if hard_fail {
        Verdict::Fails
    } else if all_pass {
        Verdict::Holds
    } else {
        Verdict::Inconclusive
    }
}

// ---------------------------------------------------------------------------
// Theorem C: equality
// ---------------------------------------------------------------------------

pub fn check_equality(
    pair: &PythagoreanPair,
    mu: &AtomicMeasure,
    opts: &CertifyOptions,
) -> Result<CertificationReport> {
    let spectrum = spectrum_complement(pair.b(), opts.spectrum_tol, opts.boundary_size)?;
    let matched = match_atoms(&spectrum, mu.atoms(), pair.b(), opts.atom_match_tol);
    let set_equal = matched.max_atom_dist <= opts.atom_match_tol
        && matched.max_rep_dist <= opts.atom_match_tol;
    let set_cond = Condition::new(
        "complement_equals_atoms",
        set_equal,
        matched.max_atom_dist.max(matched.max_rep_dist),
    );
    let set_hard_fail =
        matched.strong_mismatch || matched.max_rep_dist > 1e-2;

    let a_rep = check_embedding_hb_to_dmu(pair, mu, opts)?;
    let b_rep = check_embedding_dmu_to_hb(pair, mu, opts)?;

    let mut conditions = vec![set_cond];
    for c in a_rep.conditions.iter().chain(&b_rep.conditions) {
        if !conditions.iter().any(|x| x.name == c.name) {
            conditions.push(c.clone());
        }
    }
    let verdict = if a_rep.verdict == Verdict::Fails
        || b_rep.verdict == Verdict::Fails
        || set_hard_fail
    {
        Verdict::Fails
    } else if a_rep.verdict == Verdict::Holds && b_rep.verdict == Verdict::Holds && set_equal {
        Verdict::Holds
    } else {
        Verdict::Inconclusive
    };
    let mode = if a_rep.mode == Mode::Exact && b_rep.mode == Mode::Exact {
        Mode::Exact
    } else {
        Mode::Numerical
    };
    Ok(CertificationReport {
        theorem: Theorem::CEquality,
        verdict,
        mode,
        conditions,
        inf_estimate: b_rep.inf_estimate,
        sup_estimate: a_rep.sup_estimate,
        witness_quotient: a_rep.witness_quotient,
        grid: opts.meta(),
    })
}

// ---------------------------------------------------------------------------
// Theorem D: polynomial-type model
// ---------------------------------------------------------------------------

pub fn check_polynomial_type(
    pair: &PythagoreanPair,
    atoms: &[Complex],
    multiplicities: &[u32],
    opts: &CertifyOptions,
) -> Result<CertificationReport> {
    if atoms.len() != multiplicities.len() || atoms.is_empty() {
        return Err(Error::Invalid("atoms and multiplicities must match and be non-empty".into()));
    }
    let spectrum = spectrum_complement(pair.b(), opts.spectrum_tol, opts.boundary_size)?;
    let matched = match_atoms(&spectrum, atoms, pair.b(), opts.atom_match_tol);
    let set_equal = matched.max_atom_dist <= opts.atom_match_tol
        && matched.max_rep_dist <= opts.atom_match_tol;
    let mut conditions = vec![Condition::new(
        "complement_equals_atoms",
        set_equal,
        matched.max_atom_dist.max(matched.max_rep_dist),
    )];
    let set_hard_fail = matched.strong_mismatch || matched.max_rep_dist > 1e-2;

    let exact = if opts.force_numerical { None } else { exact_parts(pair.a()) };
    let report = match exact {
        Some((num, den)) => {
            let (q, rem) = divide_at_atoms(num, atoms, multiplicities)?;
            let min_root = min_root_modulus(&q)?;
            let witness = quotient_function(q, den)?;
            let (min_g, sup_g) = boundary_range(&witness, opts.boundary_size)?;
            conditions.push(Condition::new(
                "mate_divisible_with_multiplicity",
                rem <= opts.division_tol,
                rem,
            ));
            conditions.push(Condition::new("quotient_zero_free", min_root > 1.0 + 1e-9, min_root));
            conditions.push(Condition::new("quotient_bounded_below", min_g > opts.inf_tol, min_g));
            conditions.push(Condition::new("quotient_in_h_infinity", sup_g <= opts.sup_cap, sup_g));
            let all_pass = conditions.iter().all(|c| c.passed);
            let hard_fail = set_hard_fail
                || rem > 1e-3
                || min_root < 1.0 - 1e-6
                || min_g < opts.inf_tol * 0.1;
            CertificationReport {
                theorem: Theorem::DPolyType,
                verdict: verdict_of(all_pass, hard_fail),
                mode: Mode::Exact,
                conditions,
                inf_estimate: Some(min_g * min_g),
                sup_estimate: Some(sup_g * sup_g),
                witness_quotient: Some(witness),
                grid: opts.meta(),
            }
        }
        None => {
            // |g| = |a| / prod |z - zeta_j|^{m_j} sampled over the disk
            let value = |z: Complex| -> f64 {
                let mut denom = 1.0;
                for (zeta, m) in atoms.iter().zip(multiplicities) {
                    denom *= (z - zeta).norm().powi(*m as i32);
                }
                pair.a().eval_unchecked(z).norm() / denom
            };
            let range = refined_range(opts, atoms, &value);
            conditions.push(Condition::new(
                "quotient_bounded_below",
                range.inf > opts.inf_tol && range.inf_stable,
                range.inf,
            ));
            conditions.push(Condition::new(
                "quotient_in_h_infinity",
                range.sup <= opts.sup_cap && range.sup_stable,
                range.sup,
            ));
            let hard_fail =
                set_hard_fail || range.inf < opts.inf_tol * 0.1 || range.sup > 10.0 * opts.sup_cap;
            // the sup side cannot be certified from a grid: cap positives
            let verdict = if hard_fail { Verdict::Fails } else { Verdict::Inconclusive };
            CertificationReport {
                theorem: Theorem::DPolyType,
                verdict,
                mode: Mode::Numerical,
                conditions,
                inf_estimate: Some(range.inf),
                sup_estimate: Some(range.sup),
                witness_quotient: None,
                grid: opts.meta(),
            }
        }
    };
    Ok(report)
}

// ---------------------------------------------------------------------------
// Corona evidence
// ---------------------------------------------------------------------------

/// Grid minimum of `|f1| + |f2|` over the disk grid; evidence for a Corona
/// pair, never a proof.
pub fn corona_check(f1: &AnalyticFunction, f2: &AnalyticFunction, grid: &DiskGrid) -> f64 {
    let mut min = f64::INFINITY;
    for z in grid.points() {
        let v = f1.eval_unchecked(z).norm() + f2.eval_unchecked(z).norm();
        min = min.min(v);
    }
    min
}

// ---------------------------------------------------------------------------
// Continuous-boundary criterion
// ---------------------------------------------------------------------------

/// Per-atom profile of the single-factor ratio `(1-|b|^2)/|lambda-zeta_k|^2`.
#[derive(Debug, Clone)]
pub struct AtomRatioProfile {
    pub atom: Complex,
    /// `(signed angular distance, ratio)` samples approaching the atom.
    pub samples: Vec<(f64, f64)>,
}

#[derive(Debug, Clone)]
pub struct ContinuousOutcome {
    pub report: CertificationReport,
    /// `(theta, full ratio)` samples over the spectrum.
    pub profile: Vec<(f64, f64)>,
    pub atom_ratios: Vec<AtomRatioProfile>,
}

/// Criterion for continuous `b`:
/// `0 < inf (1-|b|^2)/prod|lambda-zeta_j|^2 <= sup < inf` over the spectrum.
pub fn continuous_b_criterion(
    b: &AnalyticFunction,
    atoms: &[Complex],
    opts: &CertifyOptions,
) -> Result<ContinuousOutcome> {
    if atoms.is_empty() {
        return Err(Error::Invalid("continuous criterion needs at least one atom".into()));
    }
    let mut zetas = Vec::with_capacity(atoms.len());
    for a in atoms {
        let n = a.norm();
        if (n - 1.0).abs() > 1e-12 {
            return Err(Error::Domain("atoms must lie on the unit circle".into()));
        }
        zetas.push(a / n);
    }
    let spectrum = spectrum_complement(b, opts.spectrum_tol, opts.boundary_size)?;
    let matched = match_atoms(&spectrum, &zetas, b, opts.atom_match_tol);
    let set_equal = matched.max_atom_dist <= opts.atom_match_tol
        && matched.max_rep_dist <= opts.atom_match_tol;

    let ratio = |t: f64| -> f64 {
        // the ratio extends continuously to the circle for every admissible
        // b, so sampling at radius 1 avoids any radial bias near the atoms
        let z = Complex::from_polar(1.0, t);
        let m2 = b.eval_unchecked(z).norm_sqr();
        let mut denom = 1.0;
        for zeta in &zetas {
            denom *= (z - zeta).norm_sqr();
        }
        (1.0 - m2) / denom
    };

    let profile = ratio_sample_angles(&zetas, opts.boundary_size)
        .into_iter()
        .map(|t| (t, ratio(t)))
        .collect::<Vec<_>>();
    let profile_fine: Vec<(f64, f64)> = ratio_sample_angles(&zetas, 2 * opts.boundary_size)
        .into_iter()
        .map(|t| (t, ratio(t)))
        .collect();

    let range = |p: &[(f64, f64)]| -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = 0.0_f64;
        for (_, v) in p {
            lo = lo.min(*v);
            hi = hi.max(*v);
        }
        (lo, hi)
    };
    let (inf1, sup1) = range(&profile);
    let (inf2, sup2) = range(&profile_fine);
    let s = opts.stability_factor;
    let stable = inf2 >= inf1 * (1.0 - s) && sup2 <= sup1 * (1.0 + s);

    let conditions = vec![
        Condition::new(
            "complement_equals_atoms",
            set_equal,
            matched.max_atom_dist.max(matched.max_rep_dist),
        ),
        Condition::new("ratio_bounded_below", inf2 > opts.inf_tol && stable, inf2),
        Condition::new("ratio_bounded_above", sup2 < opts.sup_cap && stable, sup2),
    ];
    let all_pass = conditions.iter().all(|c| c.passed);
    let hard_fail = matched.strong_mismatch
        || matched.max_rep_dist > 1e-2
        || inf2 < opts.inf_tol * 0.1
        || sup2 > 10.0 * opts.sup_cap;

    let atom_ratios = zetas
        .iter()
        .map(|zeta| {
            let phi = zeta.arg();
            let single = |d: f64| -> f64 {
                let z = Complex::from_polar(1.0, phi + d);
                let m2 = b.eval_unchecked(z).norm_sqr();
                (1.0 - m2) / (z - zeta).norm_sqr()
            };
            let mut samples = Vec::new();
            let mut d = 6.4e-2;
            while d >= 1e-4 {
                samples.push((d, single(d)));
                samples.push((-d, single(-d)));
                d /= 2.0;
            }
            samples.push((1e-3, single(1e-3)));
            samples.push((-1e-3, single(-1e-3)));
            samples.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            samples.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-12);
            AtomRatioProfile { atom: *zeta, samples }
        })
        .collect();

    Ok(ContinuousOutcome {
        report: CertificationReport {
            theorem: Theorem::ContinuousCriterion,
            verdict: verdict_of(all_pass, hard_fail),
            mode: Mode::Numerical,
            conditions,
            inf_estimate: Some(inf2),
            sup_estimate: Some(sup2),
            witness_quotient: None,
            grid: opts.meta(),
        },
        profile,
        atom_ratios,
    })
}

/// Uniform angles away from the atoms plus geometric ladders toward each
/// atom (the spectrum is open there; the ratio extends continuously).
fn ratio_sample_angles(atoms: &[Complex], grid_size: usize) -> Vec<f64> {
    let grid = UnitCircleGrid::new(grid_size).expect("size checked upstream");
    let step = grid.step();
    let mut angles: Vec<f64> = grid
        .angles()
        .filter(|t| {
            atoms
                .iter()
                .all(|a| circular_distance(*t, a.arg()) > 2.0 * step)
        })
        .collect();
    for a in atoms {
        let phi = a.arg();
        let mut d = 2.0 * step;
        while d >= 1e-4 {
            angles.push(phi + d);
            angles.push(phi - d);
            d /= core::f64::consts::SQRT_2;
        }
        angles.push(phi + 1e-3);
        angles.push(phi - 1e-3);
    }
    angles
}

// ---------------------------------------------------------------------------
// Clark absolute continuity
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct ClarkOutcome {
    pub report: CertificationReport,
    /// Radial boundary values `b(zeta_j)` at the atoms.
    pub boundary_values: Vec<(Complex, Complex)>,
    /// `min_j |lambda - b(zeta_j)|`.
    pub min_distance: f64,
    /// Samples `(theta, (1-|b|^2)/|lambda-b|^2)` of the AC density.
    pub density: Vec<(f64, f64)>,
}

/// Absolute continuity of the Clark measure `mu_lambda` for a
/// polynomial-type pair: AC iff `lambda` avoids the boundary values
/// `b(zeta_1), ..., b(zeta_N)`.
pub fn clark_ac_check(
    pair: &PythagoreanPair,
    lambda: Complex,
    atoms: &[Complex],
    multiplicities: &[u32],
    opts: &CertifyOptions,
) -> Result<ClarkOutcome> {
    let n = lambda.norm();
    if (n - 1.0).abs() > 1e-12 {
        return Err(Error::Domain(format!(
            "Clark parameter must be unimodular, |lambda| = {n}"
        )));
    }
    let lambda = lambda / n;
    let poly_type = check_polynomial_type(pair, atoms, multiplicities, opts)?;
    let type_ok = poly_type.verdict == Verdict::Holds;

    let boundary_values: Vec<(Complex, Complex)> = atoms
        .iter()
        .map(|zeta| (*zeta, pair.b().eval_unchecked(zeta * BOUNDARY_RADIUS)))
        .collect();
    let min_distance = boundary_values
        .iter()
        .map(|(_, v)| (lambda - v).norm())
        .fold(f64::INFINITY, f64::min);

    let grid = UnitCircleGrid::new(opts.boundary_size)?;
    let density: Vec<(f64, f64)> = grid
        .angles()
        .map(|t| {
            let v = pair.b().eval_unchecked(Complex::from_polar(BOUNDARY_RADIUS, t));
            (t, (1.0 - v.norm_sqr()) / (lambda - v).norm_sqr())
        })
        .collect();

    let conditions = vec![
        Condition::new("pair_polynomial_type", type_ok, poly_type_evidence(&poly_type)),
        Condition::new(
            "lambda_avoids_boundary_values",
            min_distance > opts.clark_tol,
            min_distance,
        ),
    ];
    let verdict = if !type_ok {
        Verdict::Inconclusive
    } else if min_distance > opts.clark_tol {
        Verdict::Holds
    } else {
        Verdict::Fails
    };
    Ok(ClarkOutcome {
        report: CertificationReport {
            theorem: Theorem::Clark,
            verdict,
            mode: poly_type.mode,
            conditions,
            inf_estimate: None,
            sup_estimate: None,
            witness_quotient: None,
            grid: opts.meta(),
        },
        boundary_values,
        min_distance,
        density,
    })
}

fn poly_type_evidence(rep: &CertificationReport) -> f64 {
    match rep.verdict {
        Verdict::Holds => 1.0,
        Verdict::Fails => 0.0,
        Verdict::Inconclusive => 0.5,
    }
}

fn circular_distance(a: f64, b: f64) -> f64 {
    let mut d = (a - b).abs() % (2.0 * PI);
    if d > PI {
        d = 2.0 * PI - d;
    }
    d
}
