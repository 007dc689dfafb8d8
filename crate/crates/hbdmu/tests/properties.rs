//! Cross-module invariants: randomized property tests plus the heavier
//! deterministic consistency checks.

use std::f64::consts::PI;

use proptest::prelude::*;

use hbdmu::certify::{self, CertifyOptions, Verdict};
use hbdmu::dirichlet::{self, QuadratureSpec};
use hbdmu::functions::AnalyticFunction;
use hbdmu::grid::DiskGrid;
use hbdmu::measure::AtomicMeasure;
use hbdmu::outer;
use hbdmu::pairs;
use hbdmu::poly::Poly;
use hbdmu::Complex;

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn complex_strategy(r: f64) -> impl Strategy<Value = Complex> {
    (-r..r, -r..r).prop_map(|(a, b)| Complex::new(a, b))
}

fn disk_point() -> impl Strategy<Value = Complex> {
    (0.0..0.95f64, 0.0..2.0 * PI).prop_map(|(r, t)| Complex::from_polar(r, t))
}

fn measure_strategy(max_atoms: usize) -> impl Strategy<Value = AtomicMeasure> {
    (1..=max_atoms).prop_flat_map(|n| {
        (
            proptest::collection::vec(0.0..2.0 * PI, n),
            proptest::collection::vec(0.25..2.0f64, n),
        )
            .prop_filter_map("atoms too close", |(angles, masses)| {
                let atoms: Vec<Complex> =
                    angles.iter().map(|t| Complex::from_polar(1.0, *t)).collect();
                for i in 0..atoms.len() {
                    for j in 0..i {
                        if (atoms[i] - atoms[j]).norm() < 0.05 {
                            return None;
                        }
                    }
                }
                AtomicMeasure::new(atoms, masses).ok()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn horner_matches_power_sum(
        coeffs in proptest::collection::vec(complex_strategy(2.0), 1..12),
        z in disk_point(),
    ) {
        let p = Poly::new(coeffs.clone());
        // independent evaluation by explicit powers
        let mut acc = Complex::new(0.0, 0.0);
        let mut zk = Complex::new(1.0, 0.0);
        for k in 0..coeffs.len() {
            acc += coeffs[k] * zk;
            zk *= z;
        }
        prop_assert!((p.eval(z) - acc).norm() < 1e-13);
    }

    #[test]
    fn product_and_scale_compose(
        a in proptest::collection::vec(complex_strategy(1.5), 1..6),
        b in proptest::collection::vec(complex_strategy(1.5), 1..6),
        s in complex_strategy(2.0),
        z in disk_point(),
    ) {
        let fa = AnalyticFunction::polynomial(Poly::new(a));
        let fb = AnalyticFunction::polynomial(Poly::new(b));
        let va = fa.eval(z).unwrap();
        let vb = fb.eval(z).unwrap();
        let prod = AnalyticFunction::product(fa.clone(), fb);
        prop_assert!((prod.eval(z).unwrap() - va * vb).norm() < 1e-13);
        let scaled = AnalyticFunction::scaled(s, fa);
        prop_assert!((scaled.eval(z).unwrap() - s * va).norm() < 1e-13);
    }

    #[test]
    fn divide_linear_roundtrip(
        coeffs in proptest::collection::vec(complex_strategy(2.0), 2..10),
        t in 0.0..2.0 * PI,
    ) {
        let p = Poly::new(coeffs);
        prop_assume!(!p.is_zero());
        let zeta = Complex::from_polar(1.0, t);
        let (q, r) = p.divide_linear(zeta).unwrap();
        // (z - zeta) q + r must reproduce p coefficient-wise
        let back = Poly::new(vec![-zeta, c(1.0, 0.0)]).mul(&q).add(&Poly::constant(r));
        let n = p.coeffs().len().max(back.coeffs().len());
        for k in 0..n {
            let a = p.coeffs().get(k).copied().unwrap_or(c(0.0, 0.0));
            let b = back.coeffs().get(k).copied().unwrap_or(c(0.0, 0.0));
            prop_assert!((a - b).norm() < 1e-14 * (1.0 + p.max_coeff()));
        }
    }

    #[test]
    fn sandwich_bound_everywhere(mu in measure_strategy(6), z in complex_strategy(2.0)) {
        prop_assume!(mu.dist_to_atoms(z) > 1e-9);
        prop_assert!(mu.sandwich_check(z));
    }

    #[test]
    fn potential_rotation_symmetry(
        mu in measure_strategy(4),
        z in complex_strategy(1.5),
        t in 0.0..2.0 * PI,
    ) {
        let phase = Complex::from_polar(1.0, t);
        let rotated = mu.rotate(phase).unwrap();
        let lhs = rotated.potential(z * phase);
        let rhs = mu.potential(z);
        prop_assume!(rhs.is_finite() && rhs < 1e9);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
    }

    #[test]
    fn poisson_is_potential_scaled(mu in measure_strategy(4), z in disk_point()) {
        let lhs = mu.poisson(z).unwrap();
        let rhs = (1.0 - z.norm_sqr()) * mu.potential(z);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn outer_positive_at_origin(
        amps in proptest::collection::vec(-0.4..0.4f64, 1..5),
    ) {
        // smooth log-modulus profile: a short cosine series
        let g = 256usize;
        let grid = hbdmu::UnitCircleGrid::new(g).unwrap();
        let values: Vec<f64> = grid
            .angles()
            .map(|t| {
                amps.iter()
                    .enumerate()
                    .map(|(k, a)| a * ((k + 1) as f64 * t).cos())
                    .sum::<f64>()
            })
            .collect();
        let profile = outer::LogModulusProfile::new(grid, values).unwrap();
        let o = outer::outer_from_log_modulus(&profile).unwrap();
        let v = o.eval(c(0.0, 0.0)).unwrap();
        prop_assert!(v.re > 0.0);
        prop_assert!(v.im.abs() < 1e-12 * v.re);
    }
}

#[test]
fn lemma_consistency_matches_closed_form() {
    // criterion 2 in miniature: quadrature D_mu norm of the Cauchy kernel
    let mu = AtomicMeasure::with_unit_masses(vec![c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
    let spec = QuadratureSpec::with_grid(4096);
    for &(re, im) in &[(0.3, 0.2), (-0.5, 0.6), (0.0, 0.0), (0.85, 0.0)] {
        let w = c(re, im);
        let cw = dirichlet::cauchy_kernel(w).unwrap();
        let quad = dirichlet::dmu_norm_sq(&cw, &mu, &spec);
        let closed = dirichlet::cauchy_norm_dmu(&mu, w).unwrap();
        assert!(
            (quad - closed).abs() <= 1e-4 * closed,
            "w = {w}: {quad} vs {closed}"
        );
    }
}

#[test]
fn area_and_boundary_forms_agree() {
    // relative disagreement <= 1e-2 for low-degree polynomials
    let mut rng_state = 0x1234_5678_u64;
    let mut next = move || {
        rng_state = rng_state.wrapping_mul(6364136223846793005).wrapping_add(1);
        (rng_state >> 33) as f64 / (1u64 << 31) as f64 - 0.5
    };
    for trial in 0..6 {
        let deg = 1 + trial % 8;
        let coeffs: Vec<Complex> = (0..=deg).map(|_| c(next(), next())).collect();
        let f = AnalyticFunction::polynomial(Poly::new(coeffs));
        let atoms: Vec<Complex> = (0..1 + trial % 3)
            .map(|k| Complex::from_polar(1.0, 2.1 * k as f64 + 0.3))
            .collect();
        let mu = AtomicMeasure::with_unit_masses(atoms).unwrap();
        let spec = QuadratureSpec::for_measure(2048, &mu);
        let boundary = dirichlet::dirichlet_mu(&f, &mu, &spec);
        let area = dirichlet::dirichlet_mu_area(&f, &mu, &spec);
        if boundary > 1e-12 {
            let rel = (area - boundary).abs() / boundary;
            assert!(rel <= 1e-2, "trial {trial}: boundary {boundary}, area {area}, rel {rel}");
        }
    }
}

#[test]
fn mate_matches_costara_mate() {
    // pythagorean_mate(b_mu) reproduces a_mu for small atom sets
    for atoms in [
        vec![c(1.0, 0.0)],
        vec![c(1.0, 0.0), c(-1.0, 0.0)],
        vec![
            Complex::from_polar(1.0, 0.4),
            Complex::from_polar(1.0, 2.2),
            Complex::from_polar(1.0, 4.4),
        ],
    ] {
        let pair = pairs::costara_ransford_pair(&atoms).unwrap();
        let mate = outer::pythagorean_mate(pair.b(), 4096).unwrap();
        let mut worst = 0.0_f64;
        for k in 0..trials_grid().len() {
            let z = trials_grid()[k];
            worst = worst.max((mate.eval_unchecked(z) - pair.a().eval_unchecked(z)).norm());
        }
        assert!(worst <= 1e-6, "atoms {:?}: sup error {worst:.3e}", atoms.len());
    }
}

fn trials_grid() -> Vec<Complex> {
    let mut pts = Vec::new();
    for &r in &[0.0, 0.4, 0.8, 0.95, 0.99] {
        for k in 0..64 {
            pts.push(Complex::from_polar(r, 2.0 * PI * k as f64 / 64.0));
        }
    }
    pts
}

#[test]
fn constructed_pair_bounded_on_disk() {
    // |a|^2 + |b|^2 <= 1 + 1e-6 over a 64 x 512 disk grid for a mated pair
    let pair = pairs::exponential_pair(2, 1024).unwrap();
    let grid = DiskGrid::estimation(64, 512, &[]);
    let mut worst = 0.0_f64;
    for z in grid.points() {
        let s = pair.a().eval_unchecked(z).norm_sqr() + pair.b().eval_unchecked(z).norm_sqr();
        worst = worst.max(s);
    }
    assert!(worst <= 1.0 + 1e-6, "max |a|^2+|b|^2 = {worst}");
}

#[test]
fn estimates_monotone_under_refinement() {
    // sup never decreases, inf never increases on a refined grid
    let pair = pairs::sarason_pair(c(1.0, 0.0)).unwrap();
    let mu = AtomicMeasure::dirac(c(1.0, 0.0)).unwrap();
    let base = DiskGrid::estimation(24, 128, mu.atoms());
    let fine = base.refine();
    let value = |g: &DiskGrid| {
        let mut lo = f64::INFINITY;
        let mut hi = 0.0_f64;
        for z in g.points() {
            let v = pair.a().eval_unchecked(z).norm_sqr() * mu.potential(z);
            lo = lo.min(v);
            hi = hi.max(v);
        }
        (lo, hi)
    };
    let (lo1, hi1) = value(&base);
    let (lo2, hi2) = value(&fine);
    assert!(lo2 <= lo1 && hi2 >= hi1, "({lo1},{hi1}) -> ({lo2},{hi2})");
}

#[test]
fn inner_multiple_keeps_reverse_embedding_verdicts() {
    // multiplying b by z^k leaves the D_mu -> H(b) criterion untouched
    let opts = CertifyOptions { boundary_size: 2048, ..CertifyOptions::default() };
    let gallery: Vec<(pairs::PythagoreanPair, AtomicMeasure)> = vec![
        (
            pairs::costara_ransford_pair(&[c(1.0, 0.0)]).unwrap(),
            AtomicMeasure::dirac(c(1.0, 0.0)).unwrap(),
        ),
        (
            pairs::costara_ransford_pair(&[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap(),
            AtomicMeasure::with_unit_masses(vec![c(1.0, 0.0), c(-1.0, 0.0)]).unwrap(),
        ),
        (
            pairs::costara_ransford_pair(&[c(1.0, 0.0)]).unwrap(),
            AtomicMeasure::with_unit_masses(vec![c(1.0, 0.0), c(-1.0, 0.0)]).unwrap(),
        ),
    ];
    for (pair, mu) in gallery {
        let base = certify::check_embedding_dmu_to_hb(&pair, &mu, &opts).unwrap();
        for k in 1..=3usize {
            let mut shift = vec![c(0.0, 0.0); k + 1];
            shift[k] = c(1.0, 0.0);
            let tilted = AnalyticFunction::product(
                AnalyticFunction::polynomial(Poly::new(shift)),
                pair.b().clone(),
            );
            let pair_k = pair.with_b(tilted, 1e-6).unwrap();
            let rep = certify::check_embedding_dmu_to_hb(&pair_k, &mu, &opts).unwrap();
            assert_eq!(rep.verdict, base.verdict, "k = {k}");
        }
    }
}

#[test]
fn exact_and_numerical_modes_agree() {
    // numerical estimates are consistent with exact verdicts on the gallery
    let exact_opts = CertifyOptions { boundary_size: 2048, ..CertifyOptions::default() };
    let num_opts = CertifyOptions { force_numerical: true, ..exact_opts.clone() };
    let cases: Vec<(pairs::PythagoreanPair, AtomicMeasure)> = vec![
        (
            pairs::sarason_pair(c(1.0, 0.0)).unwrap(),
            AtomicMeasure::dirac(c(1.0, 0.0)).unwrap(),
        ),
        (
            pairs::costara_ransford_pair(&[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap(),
            AtomicMeasure::with_unit_masses(vec![c(1.0, 0.0), c(-1.0, 0.0)]).unwrap(),
        ),
        (
            pairs::costara_ransford_pair(&[c(1.0, 0.0)]).unwrap(),
            AtomicMeasure::with_unit_masses(vec![c(1.0, 0.0), c(-1.0, 0.0)]).unwrap(),
        ),
    ];
    for (pair, mu) in cases {
        let exact = certify::check_embedding_dmu_to_hb(&pair, &mu, &exact_opts).unwrap();
        let numerical = certify::check_embedding_dmu_to_hb(&pair, &mu, &num_opts).unwrap();
        let inf = numerical.inf_estimate.unwrap();
        match exact.verdict {
            Verdict::Holds => assert!(inf > num_opts.inf_tol, "inf {inf} with exact holds"),
            Verdict::Fails => assert!(inf <= num_opts.inf_tol, "inf {inf} with exact fails"),
            Verdict::Inconclusive => {}
        }
    }
}

#[test]
fn necessity_shadow_every_atom_outside_spectrum() {
    // when the embedding certificate holds, every atom lies in the
    // estimated spectrum complement
    let opts = CertifyOptions { boundary_size: 2048, ..CertifyOptions::default() };
    let pair = pairs::costara_ransford_pair(&[c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
    let mu = AtomicMeasure::with_unit_masses(vec![c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
    let rep = certify::check_embedding_hb_to_dmu(&pair, &mu, &opts).unwrap();
    assert_eq!(rep.verdict, Verdict::Holds);
    let spectrum = certify::spectrum_complement(pair.b(), opts.spectrum_tol, 4096).unwrap();
    for atom in mu.atoms() {
        let d = spectrum
            .representatives
            .iter()
            .map(|r| (atom - r).norm())
            .fold(f64::INFINITY, f64::min);
        assert!(d <= opts.atom_match_tol, "atom distance {d}");
    }
}

#[test]
fn outer_from_sarason_profile_matches_closed_mate() {
    // sample log sqrt(1 - |b_zeta|^2) on the grid (with the genuine -inf at
    // the anchor) and reconstruct: the result is a_zeta
    let g = 4096;
    let grid = hbdmu::UnitCircleGrid::new(g).unwrap();
    let pair = pairs::sarason_pair(c(1.0, 0.0)).unwrap();
    let values: Vec<f64> = grid
        .angles()
        .map(|t| {
            let m2 = pair.b().eval_unchecked(Complex::from_polar(1.0, t)).norm_sqr();
            let x = 1.0 - m2;
            if x <= 0.0 {
                f64::NEG_INFINITY
            } else {
                0.5 * x.ln()
            }
        })
        .collect();
    let profile = outer::LogModulusProfile::new(grid, values).unwrap();
    let o = outer::outer_from_log_modulus(&profile).unwrap();
    let mut worst = 0.0_f64;
    for z in trials_grid() {
        worst = worst.max((o.eval_unchecked(z) - pair.a().eval_unchecked(z)).norm());
    }
    assert!(worst <= 1e-6, "sup error {worst:.3e}");
}

#[test]
fn costara_equality_for_random_atom_sets() {
    let opts = CertifyOptions { boundary_size: 2048, ..CertifyOptions::default() };
    let angle_sets: [&[f64]; 3] = [
        &[0.9],
        &[0.3, 2.8, 4.9],
        &[0.1, 1.7, 3.2, 5.1],
    ];
    for angles in angle_sets {
        let atoms: Vec<Complex> = angles.iter().map(|t| Complex::from_polar(1.0, *t)).collect();
        let pair = pairs::costara_ransford_pair(&atoms).unwrap();
        let mu = AtomicMeasure::with_unit_masses(atoms).unwrap();
        let rep = certify::check_equality(&pair, &mu, &opts).unwrap();
        assert_eq!(rep.verdict, Verdict::Holds, "atom set {angles:?}");
        assert_eq!(rep.mode, certify::Mode::Exact);
    }
}

#[test]
fn sarason_gallery_certifies_for_random_anchors() {
    let opts = CertifyOptions { boundary_size: 2048, ..CertifyOptions::default() };
    for k in 0..8 {
        let zeta = Complex::from_polar(1.0, 0.77 * k as f64 + 0.13);
        let pair = pairs::sarason_pair(zeta).unwrap();
        let mu = AtomicMeasure::dirac(zeta).unwrap();
        let rep = certify::check_equality(&pair, &mu, &opts).unwrap();
        assert_eq!(rep.verdict, Verdict::Holds, "zeta index {k}");
    }
}
