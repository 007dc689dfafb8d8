//! End-to-end verification suite.
//!
//! Each criterion is a quantitative shadow of one of the qualitative
//! results the toolkit certifies; the suite is deterministic for a fixed
//! seed and doubles as the CLI `selftest` subcommand.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::certify::{self, CertifyOptions, Verdict};
use crate::dirichlet::{self, QuadratureSpec};
use crate::fejer;
use crate::functions::AnalyticFunction;
use crate::grid::DiskGrid;
use crate::measure::AtomicMeasure;
use crate::outer;
use crate::pairs;
use crate::poly::Poly;
use crate::rng::SplitMix64;
use crate::Complex;

#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

impl CriterionOutcome {
    fn new(id: usize, name: &'static str, passed: bool, details: String) -> Self {
        Self { id, name, passed, details }
    }
}

/// Run the full suite. Deterministic for a fixed seed.
pub fn run_all(seed: u64) -> Vec<CriterionOutcome> {
    vec![
        sarason_identity(1),
        lemma_normcw_consistency(2, seed),
        costara_ransford_pair_exact(3),
        fejer_riesz_corpus(4, seed),
        mate_roundtrip(5),
        exponential_example(6),
        negative_controls(7),
        embedding_necessity_inequality(8, seed),
        clark_criterion(9),
    ]
}

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

/// 1. Sarason identity: `|b(w)/a(w)|^2 = |w|^2 V_{delta_1}(w)` pointwise,
///    hence the two closed-form kernel norms agree.
fn sarason_identity(id: usize) -> CriterionOutcome {
    let name = "sarason_identity";
    let pair = match pairs::sarason_pair(c(1.0, 0.0)) {
        Ok(p) => p,
        Err(e) => return CriterionOutcome::new(id, name, false, format!("{e}")),
    };
    let mu = AtomicMeasure::dirac(c(1.0, 0.0)).unwrap();
    let grid = DiskGrid::plain(64, 256);
    let mut worst_identity = 0.0_f64;
    let mut worst_norms = 0.0_f64;
    for w in grid.points() {
        let b = pair.b().eval_unchecked(w);
        let a = pair.a().eval_unchecked(w);
        let lhs = (b / a).norm_sqr();
        let rhs = w.norm_sqr() * mu.potential(w);
        worst_identity = worst_identity.max((lhs - rhs).abs());
        let hb = dirichlet::cauchy_norm_hb(&pair, w).unwrap();
        let dm = dirichlet::cauchy_norm_dmu(&mu, w).unwrap();
        worst_norms = worst_norms.max((hb - dm).abs());
    }
    let passed = worst_identity <= 1e-12 && worst_norms <= 1e-11;
    CriterionOutcome::new(
        id,
        name,
        passed,
        format!("max identity error {worst_identity:.3e} (tol 1e-12), max kernel-norm gap {worst_norms:.3e} (tol 1e-11)"),
    )
}

/// 2. Quadrature `||c_w||_{D_mu}^2` matches the closed form within 1e-4
///    relative, for 50 random measures and points.
fn lemma_normcw_consistency(id: usize, seed: u64) -> CriterionOutcome {
    let name = "lemma_normcw_consistency";
    let mut rng = SplitMix64::new(seed ^ 0xc2a9_11e0);
    let spec = QuadratureSpec::with_grid(8192);
    let mut worst = 0.0_f64;
    for _ in 0..50 {
        let mu = random_measure(&mut rng, 4);
        let w = Complex::from_polar(rng.range(0.0, 0.9), rng.range(0.0, 2.0 * PI));
        let cw = dirichlet::cauchy_kernel(w).unwrap();
        let quad = dirichlet::dmu_norm_sq(&cw, &mu, &spec);
        let closed = dirichlet::cauchy_norm_dmu(&mu, w).unwrap();
        worst = worst.max((quad - closed).abs() / closed);
    }
    CriterionOutcome::new(
        id,
        name,
        worst <= 1e-4,
        format!("max relative error {worst:.3e} over 50 samples (tol 1e-4, G = 8192)"),
    )
}

/// 3. `costara_ransford_pair({1})` is `((1+z)/2, (1-z)/2)` coefficient-wise
///    and certifies `H(b) = D_{delta_1}` in exact mode.
fn costara_ransford_pair_exact(id: usize) -> CriterionOutcome {
    let name = "costara_ransford_pair";
    let pair = match pairs::costara_ransford_pair(&[c(1.0, 0.0)]) {
        Ok(p) => p,
        Err(e) => return CriterionOutcome::new(id, name, false, format!("{e}")),
    };
    let mut worst = f64::INFINITY;
    if let (AnalyticFunction::Polynomial(b), AnalyticFunction::Polynomial(a)) = (pair.b(), pair.a()) {
        let eb = b.coeffs()[0] - c(0.5, 0.0);
        let eb1 = b.coeffs()[1] - c(0.5, 0.0);
        let ea = a.coeffs()[0] - c(0.5, 0.0);
        let ea1 = a.coeffs()[1] - c(-0.5, 0.0);
        worst = [eb, eb1, ea, ea1].iter().map(|e| e.norm()).fold(0.0, f64::max);
    }
    let mu = AtomicMeasure::dirac(c(1.0, 0.0)).unwrap();
    let rep = certify::check_equality(&pair, &mu, &CertifyOptions::default());
    let (verdict_ok, mode) = match rep {
        Ok(r) => (
            r.verdict == Verdict::Holds && r.mode == certify::Mode::Exact,
            r.mode.tag(),
        ),
        Err(_) => (false, "error"),
    };
    let passed = worst <= 1e-10 && verdict_ok;
    CriterionOutcome::new(
        id,
        name,
        passed,
        format!("max coefficient error {worst:.3e} (tol 1e-10); equality certificate holds in {mode} mode: {verdict_ok}"),
    )
}

/// 4. Fejer-Riesz roundtrip on 200 random `|p|^2` weights of degree <= 16:
///    residual <= 1e-8 and all output roots of modulus >= 1 - 1e-8.
fn fejer_riesz_corpus(id: usize, seed: u64) -> CriterionOutcome {
    let name = "fejer_riesz_roundtrip";
    let mut rng = SplitMix64::new(seed ^ 0xfe7e_0001);
    let mut worst_residual = 0.0_f64;
    let mut worst_root = f64::INFINITY;
    let mut failures = 0usize;
    for _ in 0..200 {
        let deg = 1 + rng.below(16);
        let roots: Vec<Complex> = (0..deg)
            .map(|_| {
                let inside = rng.next_f64() < 0.5;
                let m = if inside { rng.range(0.15, 0.85) } else { rng.range(1.15, 4.0) };
                Complex::from_polar(m, rng.range(0.0, 2.0 * PI))
            })
            .collect();
        let raw = Poly::from_roots(&roots);
        // normalize to unit H^2 norm so the absolute residual bound is
        // meaningful across the whole corpus
        let h2: f64 = raw.coeffs().iter().map(|c| c.norm_sqr()).sum();
        let phase = Complex::from_polar(1.0 / h2.sqrt(), rng.range(0.0, 2.0 * PI));
        let p = raw.scale(phase);
        let omega = fejer::trig_from_modulus_squared(&p);
        match fejer::factor(&omega) {
            Ok(f) => {
                worst_residual = worst_residual.max(f.residual);
                for r in &f.roots {
                    worst_root = worst_root.min(r.norm());
                }
            }
            Err(_) => failures += 1,
        }
    }
    let passed = failures == 0 && worst_residual <= 1e-8 && worst_root >= 1.0 - 1e-8;
    CriterionOutcome::new(
        id,
        name,
        passed,
        format!("200 factorizations: {failures} failures, max residual {worst_residual:.3e} (tol 1e-8), min root modulus {worst_root:.12}"),
    )
}

/// 5. Mate roundtrip: `mate((1+z)/2) = (1-z)/2` and
///    `mate(b_zeta) = a_zeta`, sup-error <= 1e-6 on `|z| <= 0.99` at G = 4096.
fn mate_roundtrip(id: usize) -> CriterionOutcome {
    let name = "mate_roundtrip";
    let sup_error = |got: &AnalyticFunction, want: &dyn Fn(Complex) -> Complex| -> f64 {
        let mut worst = 0.0_f64;
        for &r in &[0.0, 0.25, 0.5, 0.75, 0.9, 0.97, 0.99] {
            for k in 0..256 {
                let z = Complex::from_polar(r, 2.0 * PI * k as f64 / 256.0);
                worst = worst.max((got.eval_unchecked(z) - want(z)).norm());
            }
        }
        worst
    };

    let b1 = AnalyticFunction::polynomial(Poly::from_real(&[0.5, 0.5]));
    let e1 = match outer::pythagorean_mate(&b1, 4096) {
        Ok(m) => sup_error(&m, &|z| (c(1.0, 0.0) - z) / 2.0),
        Err(e) => return CriterionOutcome::new(id, name, false, format!("{e}")),
    };

    let sp = pairs::sarason_pair(c(1.0, 0.0)).unwrap();
    let a_closed = sp.a().clone();
    let e2 = match outer::pythagorean_mate(sp.b(), 4096) {
        Ok(m) => sup_error(&m, &|z| a_closed.eval_unchecked(z)),
        Err(e) => return CriterionOutcome::new(id, name, false, format!("{e}")),
    };

    let passed = e1 <= 1e-6 && e2 <= 1e-6;
    CriterionOutcome::new(
        id,
        name,
        passed,
        format!("sup error {e1:.3e} for (1+z)/2 and {e2:.3e} for the Sarason b (tol 1e-6, G = 4096)"),
    )
}

/// 6. Exponential example: near each N-th root of unity the single-factor
///    ratio at angular distance 1e-3 is N^2 within 1%, and the continuous
///    criterion certifies `H(b) = D_mu`.
fn exponential_example(id: usize) -> CriterionOutcome {
    let name = "exponential_example";
    let mut details = String::new();
    let mut passed = true;
    for n in 1..=4usize {
        let mut coeffs = vec![c(0.0, 0.0); n + 1];
        coeffs[0] = c(-1.0, 0.0);
        coeffs[n] = c(1.0, 0.0);
        let b = AnalyticFunction::exp_poly(Poly::new(coeffs));
        let atoms: Vec<Complex> = (0..n)
            .map(|k| Complex::from_polar(1.0, 2.0 * PI * k as f64 / n as f64))
            .collect();
        let out = match certify::continuous_b_criterion(&b, &atoms, &CertifyOptions::default()) {
            Ok(o) => o,
            Err(e) => return CriterionOutcome::new(id, name, false, format!("{e}")),
        };
        let want = (n * n) as f64;
        let mut worst_ratio = 0.0_f64;
        for ar in &out.atom_ratios {
            for (d, v) in &ar.samples {
                if (d.abs() - 1e-3).abs() < 1e-12 {
                    worst_ratio = worst_ratio.max((v / want - 1.0).abs());
                }
            }
        }
        let ok = out.report.verdict == Verdict::Holds && worst_ratio <= 0.01;
        passed &= ok;
        details += &format!(
            "N={n}: ratio error {worst_ratio:.2e} (tol 1e-2), verdict {}; ",
            out.report.verdict.tag()
        );
    }
    CriterionOutcome::new(id, name, passed, details)
}

/// 7. Negative controls: wrong measure fails A, wrong multiplicity fails D,
///    a common zero kills the Corona estimate.
fn negative_controls(id: usize) -> CriterionOutcome {
    let name = "negative_controls";
    let opts = CertifyOptions::default();
    let pair = pairs::costara_ransford_pair(&[c(1.0, 0.0)]).unwrap();
    let two = AtomicMeasure::with_unit_masses(vec![c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
    let a_fails = matches!(
        certify::check_embedding_hb_to_dmu(&pair, &two, &opts),
        Ok(r) if r.verdict == Verdict::Fails
    );

    let dpair = pairs::polynomial_type_pair(&[c(1.0, 0.0)], &[2]).unwrap();
    let d_fails = matches!(
        certify::check_polynomial_type(&dpair, &[c(1.0, 0.0)], &[1], &opts),
        Ok(r) if r.verdict == Verdict::Fails
    );

    let f1 = AnalyticFunction::polynomial(Poly::from_real(&[-1.0, 1.0]));
    let f2 = AnalyticFunction::polynomial(Poly::from_real(&[1.0, -2.0, 1.0]));
    let grid = DiskGrid::estimation(64, 256, &[c(1.0, 0.0)]);
    let corona = certify::corona_check(&f1, &f2, &grid);

    let passed = a_fails && d_fails && corona < 1e-2;
    CriterionOutcome::new(
        id,
        name,
        passed,
        format!("A fails: {a_fails}; D fails: {d_fails}; corona estimate near common zero {corona:.3e} (tol 1e-2)"),
    )
}

/// 8. The kernel-norm inequality behind the necessity theorem, with slack
///    -1e-8, on 100 random disk points.
fn embedding_necessity_inequality(id: usize, seed: u64) -> CriterionOutcome {
    let name = "necessity_inequality";
    let mut rng = SplitMix64::new(seed ^ 0x8a17_33fd);
    let pair = pairs::costara_ransford_pair(&[c(1.0, 0.0)]).unwrap();
    let zeta = c(1.0, 0.0);
    let spec = QuadratureSpec::with_grid(4096);
    let mut worst_slack = f64::INFINITY;
    for _ in 0..100 {
        let w = Complex::from_polar(rng.range(0.0, 0.95), rng.range(0.0, 2.0 * PI));
        let kernel = match dirichlet::rk_kernel(&pair, w) {
            Ok(k) => k,
            Err(e) => return CriterionOutcome::new(id, name, false, format!("{e}")),
        };
        let lhs = dirichlet::local_dirichlet(&kernel, zeta, &spec);
        let bw = pair.b().eval_unchecked(w).norm();
        let norm_sq = dirichlet::rk_hb_norm_sq(&pair, w).unwrap();
        let rhs = norm_sq * (1.0 - bw).powi(2) * (w.norm() - bw).powi(2)
            / ((zeta - w).norm_sqr() * (1.0 - bw * bw));
        worst_slack = worst_slack.min(lhs - rhs);
    }
    CriterionOutcome::new(
        id,
        name,
        worst_slack >= -1e-8,
        format!("min slack {worst_slack:.3e} over 100 samples (must be >= -1e-8)"),
    )
}

/// 9. Clark criterion on `((1+z)/2, (1-z)/2)`: `lambda = 1` is singular,
///    `lambda = -1` and `lambda = i` are absolutely continuous with finite
///    density profiles.
fn clark_criterion(id: usize) -> CriterionOutcome {
    let name = "clark_criterion";
    let pair = pairs::costara_ransford_pair(&[c(1.0, 0.0)]).unwrap();
    let atoms = [c(1.0, 0.0)];
    let opts = CertifyOptions::default();
    let at = |l: Complex| certify::clark_ac_check(&pair, l, &atoms, &[1], &opts);
    let not_ac = matches!(at(c(1.0, 0.0)), Ok(o) if o.report.verdict == Verdict::Fails);
    let ac_minus = match at(c(-1.0, 0.0)) {
        Ok(o) => o.report.verdict == Verdict::Holds && o.density.iter().all(|(_, v)| v.is_finite()),
        Err(_) => false,
    };
    let ac_i = match at(c(0.0, 1.0)) {
        Ok(o) => o.report.verdict == Verdict::Holds && o.density.iter().all(|(_, v)| v.is_finite()),
        Err(_) => false,
    };
    let passed = not_ac && ac_minus && ac_i;
    CriterionOutcome::new(
        id,
        name,
        passed,
        format!("lambda=1 singular: {not_ac}; lambda=-1 AC: {ac_minus}; lambda=i AC: {ac_i}"),
    )
}

fn random_measure(rng: &mut SplitMix64, max_atoms: usize) -> AtomicMeasure {
    let n = 1 + rng.below(max_atoms);
    loop {
        let atoms: Vec<Complex> = (0..n)
            .map(|_| Complex::from_polar(1.0, rng.range(0.0, 2.0 * PI)))
            .collect();
        let masses: Vec<f64> = (0..n).map(|_| rng.range(0.25, 2.0)).collect();
        let separated = (0..n).all(|i| (0..i).all(|j| (atoms[i] - atoms[j]).norm() > 0.05));
        if separated {
            if let Ok(mu) = AtomicMeasure::new(atoms, masses) {
                return mu;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outcome_shape() {
        // cheap structural check; the full suite runs as an integration test
        let o = sarason_identity(1);
        assert_eq!(o.id, 1);
        assert!(!o.details.is_empty());
    }
}
