//! Subcommand implementations: resolve the configuration, run the core
//! computation, and print either the JSON report envelope or a CSV evidence
//! profile. Deterministic for fixed flags and seed.

use std::f64::consts::PI;

use serde_json::{json, Value};

use hbdmu::certify::{self, CertifyOptions, Verdict};
use hbdmu::dirichlet::{self, QuadratureSpec};
use hbdmu::fejer;
use hbdmu::functions::AnalyticFunction;
use hbdmu::grid::DiskGrid;
use hbdmu::measure::AtomicMeasure;
use hbdmu::outer::{self, LogModulusProfile};
use hbdmu::pairs::{self, PythagoreanPair};
use hbdmu::poly::Poly;
use hbdmu::selftest;
use hbdmu::{Complex, UnitCircleGrid, BOUNDARY_RADIUS};

use crate::descriptor::{
    load_function, parse_atoms, parse_complex, parse_complex_list, parse_measure,
    FunctionDescriptor, MeasureDescriptor, PairDescriptor,
};
use crate::report::{self, ext_real};
use crate::{Cli, CliError, Command, GlobalOpts, OutputFormat, PairOpts};

/// Grid-size environment override, used when `--grid-size` is absent.
pub const GRID_ENV: &str = "HBDMU_GRID_SIZE";

struct Config {
    grid_size: usize,
    size_source: &'static str,
    radii: usize,
    angles: usize,
    spectrum_tol: f64,
    residual_tol: f64,
    output: OutputFormat,
    seed: u64,
}

impl Config {
    fn resolve(global: &GlobalOpts, default_grid: usize) -> Result<Self, CliError> {
        let (grid_size, size_source) = match global.grid_size {
            Some(g) => (g, "flag"),
            None => match std::env::var(GRID_ENV) {
                Ok(text) => {
                    let g: usize = text.trim().parse().map_err(|_| {
                        CliError::parse(&format!("{GRID_ENV} must be an integer, got `{text}`"))
                    })?;
                    (g, "env")
                }
                Err(_) => (default_grid, "default"),
            },
        };
        if !grid_size.is_power_of_two() || grid_size < 256 {
            return Err(CliError::parse(&format!(
                "grid size must be a power of two >= 256, got {grid_size}"
            )));
        }
        if global.spectrum_tol <= 0.0 || global.residual_tol <= 0.0 {
            return Err(CliError::parse("tolerances must be positive"));
        }
        Ok(Self {
            grid_size,
            size_source,
            radii: global.radii,
            angles: global.angles,
            spectrum_tol: global.spectrum_tol,
            residual_tol: global.residual_tol,
            output: global.output,
            seed: global.seed,
        })
    }

    fn grid_value(&self) -> Value {
        json!({
            "boundary_size": self.grid_size,
            "size_source": self.size_source,
            "disk_radii": self.radii,
            "disk_angles": self.angles,
            "spectrum_tol": self.spectrum_tol,
            "residual_tol": self.residual_tol,
            "seed": self.seed,
        })
    }

    fn certify_options(&self) -> CertifyOptions {
        CertifyOptions {
            boundary_size: self.grid_size,
            disk_radii: self.radii,
            disk_angles: self.angles,
            spectrum_tol: self.spectrum_tol,
            ..CertifyOptions::default()
        }
    }
}

/// Write to stdout; a closed pipe (e.g. `| head`) ends the process quietly.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{text}").is_err() {
        std::process::exit(0);
    }
}

fn print_json(v: &Value) {
    emit(&serde_json::to_string_pretty(v).expect("report serializes"));
}

fn print_csv_theta(rows: &[(f64, f64)]) {
    let mut text = String::from("theta,value");
    for (t, v) in rows {
        text.push_str(&format!("\n{t},{v}"));
    }
    emit(&text);
}

fn print_csv_disk(rows: &[(Complex, f64)]) {
    let mut text = String::from("re,im,value");
    for (z, v) in rows {
        text.push_str(&format!("\n{},{},{v}", z.re, z.im));
    }
    emit(&text);
}

pub fn run(cli: Cli) -> Result<i32, CliError> {
    let default_grid = match cli.command {
        Command::Certify { .. } | Command::Clark { .. } => 8192,
        _ => 4096,
    };
    let config = Config::resolve(&cli.global, default_grid)?;
    match cli.command {
        Command::Mate { b_file, profile_csv } => run_mate(&config, b_file, profile_csv),
        Command::Factor { coeffs, n } => run_factor(&config, &coeffs, n),
        Command::Potential { mu, z } => run_potential(&config, &mu, &z),
        Command::Dnorm { f_file, mu, form } => run_dnorm(&config, &f_file, &mu, &form),
        Command::KernelNorms { mu, w, pair } => run_kernel_norms(&config, &mu, &w, &pair),
        Command::Certify { theorem, pair, mu, lambda, f1_file, f2_file } => {
            run_certify(&config, &theorem, &pair, mu, lambda, f1_file, f2_file)
        }
        Command::Example { which, pair } => run_example(&config, &which, &pair),
        Command::Clark { pair, lambda, mu } => run_clark(&config, &pair, &lambda, mu),
        Command::Selftest => run_selftest(&config),
    }
}

// ---------------------------------------------------------------------------
// pair resolution
// ---------------------------------------------------------------------------

struct ResolvedPair {
    pair: PythagoreanPair,
    /// Atoms and multiplicities naturally attached to the pair, when known.
    atoms: Option<(Vec<Complex>, Vec<u32>)>,
    params: Value,
}

fn parse_mults(s: &str) -> Result<Vec<u32>, CliError> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| CliError::parse(&format!("bad multiplicity `{p}`")))
        })
        .collect()
}

fn build_pair(opts: &PairOpts, config: &Config) -> Result<ResolvedPair, CliError> {
    let kind = match (&opts.pair, &opts.pair_file) {
        (Some(k), _) => k.clone(),
        (None, Some(_)) => "file".to_string(),
        (None, None) => {
            return Err(CliError::parse(
                "pair specification required: --pair sarason|costara-ransford|poly-type|exponential or --pair-file",
            ))
        }
    };
    match kind.as_str() {
        "sarason" => {
            let zeta_text = opts
                .zeta
                .as_deref()
                .ok_or_else(|| CliError::parse("--zeta re,im required for the Sarason pair"))?;
            let zeta = parse_complex(zeta_text)?;
            let pair = pairs::sarason_pair(zeta)?;
            Ok(ResolvedPair {
                pair,
                atoms: Some((vec![zeta / zeta.norm()], vec![1])),
                params: json!({"pair": "sarason", "zeta": [zeta.re, zeta.im]}),
            })
        }
        "costara-ransford" => {
            let atoms_text = opts
                .atoms
                .as_deref()
                .ok_or_else(|| CliError::parse("--atoms required for the Costara-Ransford pair"))?;
            let atoms = parse_atoms(atoms_text)?;
            let pair = pairs::costara_ransford_pair(&atoms)?;
            let mults = vec![1; atoms.len()];
            Ok(ResolvedPair {
                pair,
                params: json!({
                    "pair": "costara-ransford",
                    "atoms": atoms.iter().map(|a| [a.re, a.im]).collect::<Vec<_>>(),
                }),
                atoms: Some((atoms, mults)),
            })
        }
        "poly-type" => {
            let atoms_text = opts
                .atoms
                .as_deref()
                .ok_or_else(|| CliError::parse("--atoms required for the poly-type pair"))?;
            let atoms = parse_atoms(atoms_text)?;
            let mults = match opts.mults.as_deref() {
                Some(m) => parse_mults(m)?,
                None => vec![1; atoms.len()],
            };
            let pair = pairs::polynomial_type_pair(&atoms, &mults)?;
            Ok(ResolvedPair {
                pair,
                params: json!({
                    "pair": "poly-type",
                    "atoms": atoms.iter().map(|a| [a.re, a.im]).collect::<Vec<_>>(),
                    "mults": mults,
                }),
                atoms: Some((atoms, mults)),
            })
        }
        "exponential" => {
            let n = opts
                .n
                .ok_or_else(|| CliError::parse("--n required for the exponential pair"))?;
            let pair = pairs::exponential_pair(n, config.grid_size)?;
            let atoms = AtomicMeasure::roots_of_unity(n)?.atoms().to_vec();
            let mults = vec![1; n];
            Ok(ResolvedPair {
                pair,
                params: json!({"pair": "exponential", "n": n}),
                atoms: Some((atoms, mults)),
            })
        }
        "file" => {
            let path = opts
                .pair_file
                .as_deref()
                .ok_or_else(|| CliError::parse("--pair-file required with --pair file"))?;
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::io(&format!("cannot read pair file `{path}`: {e}")))?;
            let desc: PairDescriptor = serde_json::from_str(&text)
                .map_err(|e| CliError::parse(&format!("bad pair JSON: {e}")))?;
            let pair = PythagoreanPair::new(
                desc.b.build()?,
                desc.a.build()?,
                config.grid_size,
                config.residual_tol,
            )?;
            let atoms = match opts.atoms.as_deref() {
                Some(text) => {
                    let atoms = parse_atoms(text)?;
                    let mults = match opts.mults.as_deref() {
                        Some(m) => parse_mults(m)?,
                        None => vec![1; atoms.len()],
                    };
                    Some((atoms, mults))
                }
                None => None,
            };
            Ok(ResolvedPair {
                pair,
                atoms,
                params: json!({"pair": "file", "pair_file": path}),
            })
        }
        other => Err(CliError::parse(&format!(
            "unknown pair `{other}` (expected sarason, costara-ransford, poly-type, exponential or file)"
        ))),
    }
}

/// Fall back to the spectrum estimate when no atom set is attached.
fn atoms_or_spectrum(
    resolved: &ResolvedPair,
    config: &Config,
) -> Result<(Vec<Complex>, Vec<u32>), CliError> {
    if let Some((a, m)) = &resolved.atoms {
        return Ok((a.clone(), m.clone()));
    }
    let est = certify::spectrum_complement(
        resolved.pair.b(),
        config.spectrum_tol,
        config.grid_size,
    )?;
    if est.representatives.is_empty() {
        return Err(CliError::parse(
            "no atoms given and the spectrum complement estimate is empty",
        ));
    }
    let n = est.representatives.len();
    Ok((est.representatives, vec![1; n]))
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

fn run_mate(
    config: &Config,
    b_file: Option<String>,
    profile_csv: Option<String>,
) -> Result<i32, CliError> {
    let (built, params) = match (&b_file, &profile_csv) {
        (Some(path), None) => {
            let b = load_function(path)?;
            let built = outer::pythagorean_mate_detailed(&b, config.grid_size)?;
            (
                outer::OuterConstruction {
                    function: built.mate,
                    mean_log_modulus: built.mean_log_modulus,
                    zeros: built.zeros,
                    grid_size: built.grid_size,
                },
                json!({"b_file": path}),
            )
        }
        (None, Some(path)) => {
            let profile = load_profile_csv(path)?;
            let built = outer::outer_from_log_modulus_detailed(&profile)?;
            (built, json!({"profile_csv": path}))
        }
        _ => {
            return Err(CliError::parse(
                "mate needs exactly one of --b-file or --profile-csv",
            ))
        }
    };

    if config.output == OutputFormat::Csv {
        let rows: Vec<(f64, f64)> = match &built.function {
            AnalyticFunction::OuterFromSamples { log_modulus, .. } => log_modulus
                .iter()
                .enumerate()
                .map(|(k, v)| (2.0 * PI * k as f64 / built.grid_size as f64, *v))
                .collect(),
            _ => Vec::new(),
        };
        print_csv_theta(&rows);
        return Ok(0);
    }

    let a0 = built.function.eval_unchecked(Complex::new(0.0, 0.0));
    let result = json!({
        "mate": FunctionDescriptor::describe(&built.function),
        "mean_log_modulus": ext_real(built.mean_log_modulus),
        "value_at_zero": [a0.re, a0.im],
        "boundary_zeros": built.zeros.iter().map(|z| {
            json!({"angle": z.angle, "order": z.order})
        }).collect::<Vec<_>>(),
        "grid_size": built.grid_size,
        "offset_rule": "quarter_step",
    });
    print_json(&report::envelope("mate", params, config.grid_value(), result));
    Ok(0)
}

fn load_profile_csv(path: &str) -> Result<LogModulusProfile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::io(&format!("cannot read profile `{path}`: {e}")))?;
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (lineno == 0 && line.starts_with("theta")) {
            continue;
        }
        let mut parts = line.split(',');
        let _theta = parts
            .next()
            .ok_or_else(|| CliError::parse(&format!("profile line {} empty", lineno + 1)))?;
        let value_text = parts
            .next()
            .ok_or_else(|| CliError::parse(&format!("profile line {} lacks a value", lineno + 1)))?
            .trim();
        let v = match value_text {
            "-inf" => f64::NEG_INFINITY,
            other => other.parse().map_err(|_| {
                CliError::parse(&format!("bad profile value `{other}` on line {}", lineno + 1))
            })?,
        };
        values.push(v);
    }
    let g = values.len();
    let grid = UnitCircleGrid::new(g)?;
    LogModulusProfile::new(grid, values).map_err(CliError::from)
}

fn run_factor(config: &Config, coeffs_text: &str, n: usize) -> Result<i32, CliError> {
    let coeffs = parse_complex_list(coeffs_text)?;
    let omega = fejer::TrigPolynomial::new(n, coeffs)?;
    let f = fejer::factor(&omega)?;

    if config.output == OutputFormat::Csv {
        let grid = 16 * n.max(1);
        let rows: Vec<(f64, f64)> = (0..grid)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / grid as f64;
                (t, f.p.eval(Complex::from_polar(1.0, t)).norm_sqr() - omega.eval(t))
            })
            .collect();
        print_csv_theta(&rows);
        return Ok(0);
    }

    let result = json!({
        "p": FunctionDescriptor::describe(&AnalyticFunction::polynomial(f.p.clone())),
        "residual": f.residual,
        "roots": f.roots.iter().map(|r| [r.re, r.im]).collect::<Vec<_>>(),
        "normalization": "lowest nonzero coefficient positive real",
    });
    print_json(&report::envelope(
        "factor",
        json!({"n": n, "coeffs": coeffs_text}),
        config.grid_value(),
        result,
    ));
    Ok(0)
}

fn run_potential(config: &Config, mu_text: &str, z_text: &str) -> Result<i32, CliError> {
    let mu = parse_measure(mu_text)?;
    let z = parse_complex(z_text)?;

    if config.output == OutputFormat::Csv {
        let grid = DiskGrid::plain(config.radii, config.angles);
        let rows: Vec<(Complex, f64)> = grid.points().map(|p| (p, mu.potential(p))).collect();
        print_csv_disk(&rows);
        return Ok(0);
    }

    let v = mu.potential(z);
    let mut result = json!({
        "potential": ext_real(v),
        "total_mass": mu.total_mass(),
        "sandwich_check": mu.sandwich_check(z),
        "measure": MeasureDescriptor::describe(&mu),
    });
    if z.norm() < 1.0 {
        result["poisson"] = ext_real(mu.poisson(z)?);
    }
    print_json(&report::envelope(
        "potential",
        json!({"mu": mu_text, "z": [z.re, z.im]}),
        config.grid_value(),
        result,
    ));
    Ok(0)
}

fn run_dnorm(config: &Config, f_file: &str, mu_text: &str, form: &str) -> Result<i32, CliError> {
    let f = load_function(f_file)?;
    let mu = parse_measure(mu_text)?;
    let spec = QuadratureSpec {
        boundary_grid: config.grid_size,
        disk_grid: DiskGrid::quadrature(config.radii.max(64) * 2, config.angles, mu.atoms()),
        exclusion_radius: 0.0,
    };

    if config.output == OutputFormat::Csv {
        // pointwise Dirichlet density over the boundary grid
        let grid = UnitCircleGrid::new(config.grid_size)?;
        let boundary_values: Vec<Complex> = mu
            .atoms()
            .iter()
            .map(|zeta| f.eval_unchecked(zeta * BOUNDARY_RADIUS))
            .collect();
        let rows: Vec<(f64, f64)> = grid
            .angles()
            .map(|t| {
                let lambda = Complex::from_polar(1.0, t);
                let fv = f.eval_unchecked(lambda * BOUNDARY_RADIUS);
                let mut acc = 0.0;
                for ((zeta, m), fz) in mu.atoms().iter().zip(mu.masses()).zip(&boundary_values) {
                    let d2 = (lambda - zeta).norm_sqr();
                    if d2 > 1e-24 {
                        acc += m * (fv - fz).norm_sqr() / d2;
                    }
                }
                (t, acc)
            })
            .collect();
        print_csv_theta(&rows);
        return Ok(0);
    }

    let (dirichlet_part, used_form) = match form {
        "boundary" => (dirichlet::dirichlet_mu(&f, &mu, &spec), "boundary"),
        "area" => (dirichlet::dirichlet_mu_area(&f, &mu, &spec), "area"),
        "both" => {
            let b = dirichlet::dirichlet_mu(&f, &mu, &spec);
            let a = dirichlet::dirichlet_mu_area(&f, &mu, &spec);
            let result = json!({
                "h2_norm_sq": ext_real(dirichlet::h2_norm_sq(&f, &spec)),
                "dirichlet_boundary": ext_real(b),
                "dirichlet_area": ext_real(a),
                "norm_convention": "h2_plus_dmu",
            });
            print_json(&report::envelope(
                "dnorm",
                json!({"f_file": f_file, "mu": mu_text, "form": "both"}),
                config.grid_value(),
                result,
            ));
            return Ok(0);
        }
        other => {
            return Err(CliError::parse(&format!(
                "unknown form `{other}` (expected boundary, area or both)"
            )))
        }
    };
    let h2 = dirichlet::h2_norm_sq(&f, &spec);
    let total = if h2.is_infinite() || dirichlet_part.is_infinite() {
        f64::INFINITY
    } else {
        h2 + dirichlet_part
    };
    let result = json!({
        "value": ext_real(total),
        "h2_norm_sq": ext_real(h2),
        "dirichlet_integral": ext_real(dirichlet_part),
        "form": used_form,
        "norm_convention": "h2_plus_dmu",
    });
    print_json(&report::envelope(
        "dnorm",
        json!({"f_file": f_file, "mu": mu_text, "form": form}),
        config.grid_value(),
        result,
    ));
    Ok(0)
}

fn run_kernel_norms(
    config: &Config,
    mu_text: &str,
    w_text: &str,
    pair_opts: &PairOpts,
) -> Result<i32, CliError> {
    let mu = parse_measure(mu_text)?;
    let w = parse_complex(w_text)?;
    let dmu = dirichlet::cauchy_norm_dmu(&mu, w)?;

    if config.output == OutputFormat::Csv {
        let grid = UnitCircleGrid::new(config.grid_size)?;
        let cw = dirichlet::cauchy_kernel(w)?;
        let rows: Vec<(f64, f64)> = grid
            .angles()
            .map(|t| {
                let z = Complex::from_polar(BOUNDARY_RADIUS, t);
                (t, cw.eval_unchecked(z).norm_sqr())
            })
            .collect();
        print_csv_theta(&rows);
        return Ok(0);
    }

    let mut result = json!({
        "cauchy_norm_dmu": dmu,
        "potential_at_w": ext_real(mu.potential(w)),
        "norm_convention": "h2_plus_dmu",
    });
    let mut params = json!({"mu": mu_text, "w": [w.re, w.im]});
    if pair_opts.pair.is_some() || pair_opts.pair_file.is_some() {
        let resolved = build_pair(pair_opts, config)?;
        result["cauchy_norm_hb"] = json!(dirichlet::cauchy_norm_hb(&resolved.pair, w)?);
        result["rk_hb_norm_sq"] = json!(dirichlet::rk_hb_norm_sq(&resolved.pair, w)?);
        params["pair"] = resolved.params;
    }
    print_json(&report::envelope("kernel-norms", params, config.grid_value(), result));
    Ok(0)
}

fn run_certify(
    config: &Config,
    theorem: &str,
    pair_opts: &PairOpts,
    mu_text: Option<String>,
    lambda_text: Option<String>,
    f1_file: Option<String>,
    f2_file: Option<String>,
) -> Result<i32, CliError> {
    let opts = config.certify_options();

    // corona takes two raw functions rather than a pair
    if theorem.eq_ignore_ascii_case("corona") {
        let (f1p, f2p) = match (&f1_file, &f2_file) {
            (Some(a), Some(b)) => (a.clone(), b.clone()),
            _ => return Err(CliError::parse("--f1-file and --f2-file required for corona")),
        };
        let f1 = load_function(&f1p)?;
        let f2 = load_function(&f2p)?;
        let atoms = match pair_opts.atoms.as_deref() {
            Some(t) => parse_atoms(t)?,
            None => Vec::new(),
        };
        let grid = DiskGrid::estimation(config.radii, config.angles, &atoms);
        let refined = grid.refine();
        let estimate = certify::corona_check(&f1, &f2, &grid);
        let estimate_refined = certify::corona_check(&f1, &f2, &refined);
        if config.output == OutputFormat::Csv {
            let rows: Vec<(Complex, f64)> = refined
                .points()
                .map(|z| (z, f1.eval_unchecked(z).norm() + f2.eval_unchecked(z).norm()))
                .collect();
            print_csv_disk(&rows);
            return Ok(0);
        }
        let result = json!({
            "theorem": "corona",
            "estimate": estimate,
            "estimate_refined": estimate_refined,
            "note": "grid minimum of |f1| + |f2|: evidence only, never a proof",
        });
        print_json(&report::envelope(
            "certify",
            json!({"theorem": "corona", "f1_file": f1p, "f2_file": f2p}),
            config.grid_value(),
            result,
        ));
        return Ok(0);
    }

    let resolved = build_pair(pair_opts, config)?;
    let (rep, extra, csv_rows) = match theorem {
        "A" | "a" => {
            let mu = required_measure(&mu_text)?;
            let rep = certify::check_embedding_hb_to_dmu(&resolved.pair, &mu, &opts)?;
            let rows = product_profile(&resolved.pair, &mu, config);
            (rep, Value::Null, CsvRows::Disk(rows))
        }
        "B" | "b" => {
            let mu = required_measure(&mu_text)?;
            let rep = certify::check_embedding_dmu_to_hb(&resolved.pair, &mu, &opts)?;
            let rows = product_profile(&resolved.pair, &mu, config);
            (rep, Value::Null, CsvRows::Disk(rows))
        }
        "C" | "c" => {
            let mu = required_measure(&mu_text)?;
            let rep = certify::check_equality(&resolved.pair, &mu, &opts)?;
            let rows = product_profile(&resolved.pair, &mu, config);
            (rep, Value::Null, CsvRows::Disk(rows))
        }
        "D" | "d" => {
            let (atoms, mults) = match pair_opts.atoms.as_deref() {
                Some(t) => {
                    let atoms = parse_atoms(t)?;
                    let mults = match pair_opts.mults.as_deref() {
                        Some(m) => parse_mults(m)?,
                        None => vec![1; atoms.len()],
                    };
                    (atoms, mults)
                }
                None => atoms_or_spectrum(&resolved, config)?,
            };
            let rep = certify::check_polynomial_type(&resolved.pair, &atoms, &mults, &opts)?;
            (rep, Value::Null, CsvRows::None)
        }
        "continuous" => {
            let atoms = match (&mu_text, pair_opts.atoms.as_deref()) {
                (Some(m), _) => parse_measure(m)?.atoms().to_vec(),
                (None, Some(t)) => parse_atoms(t)?,
                (None, None) => atoms_or_spectrum(&resolved, config)?.0,
            };
            let out = certify::continuous_b_criterion(resolved.pair.b(), &atoms, &opts)?;
            let extra = json!({
                "atom_ratios": report::atom_ratio_values(&out.atom_ratios),
            });
            (out.report, extra, CsvRows::Theta(out.profile))
        }
        "clark" => {
            let lambda = parse_complex(
                lambda_text
                    .as_deref()
                    .ok_or_else(|| CliError::parse("--lambda re,im required for clark"))?,
            )?;
            let (atoms, mults) = atoms_or_spectrum(&resolved, config)?;
            let out = certify::clark_ac_check(&resolved.pair, lambda, &atoms, &mults, &opts)?;
            let extra = report::clark_value(&out);
            let rows = out.density.clone();
            (out.report, extra, CsvRows::Theta(rows))
        }
        other => {
            return Err(CliError::parse(&format!(
                "unknown theorem `{other}` (expected A, B, C, D, continuous, clark or corona)"
            )))
        }
    };

    if config.output == OutputFormat::Csv {
        match csv_rows {
            CsvRows::Theta(rows) => print_csv_theta(&rows),
            CsvRows::Disk(rows) => print_csv_disk(&rows),
            CsvRows::None => print_csv_theta(&[]),
        }
        return Ok(exit_for(rep.verdict));
    }

    let mut result = report::certification_value(&rep);
    if !extra.is_null() {
        result["evidence"] = extra;
    }
    let mut params = json!({"theorem": theorem});
    params["pair"] = resolved.params;
    if let Some(m) = mu_text {
        params["mu"] = json!(m);
    }
    if let Some(l) = lambda_text {
        params["lambda"] = json!(l);
    }
    print_json(&report::envelope("certify", params, config.grid_value(), result));
    Ok(exit_for(rep.verdict))
}

enum CsvRows {
    Theta(Vec<(f64, f64)>),
    Disk(Vec<(Complex, f64)>),
    None,
}

fn exit_for(verdict: Verdict) -> i32 {
    match verdict {
        Verdict::Fails => 2,
        _ => 0,
    }
}

fn required_measure(mu_text: &Option<String>) -> Result<AtomicMeasure, CliError> {
    parse_measure(
        mu_text
            .as_deref()
            .ok_or_else(|| CliError::parse("--mu required for this theorem"))?,
    )
}

/// `|a|^2 V_mu` over the estimation grid, for CSV evidence dumps.
fn product_profile(
    pair: &PythagoreanPair,
    mu: &AtomicMeasure,
    config: &Config,
) -> Vec<(Complex, f64)> {
    let grid = DiskGrid::estimation(config.radii, config.angles, mu.atoms());
    grid.points()
        .map(|z| (z, pair.a().eval_unchecked(z).norm_sqr() * mu.potential(z)))
        .collect()
}

fn run_example(config: &Config, which: &str, pair_opts: &PairOpts) -> Result<i32, CliError> {
    let mut opts = pair_opts.clone();
    opts.pair = Some(which.to_string());
    let resolved = build_pair(&opts, config)?;

    if config.output == OutputFormat::Csv {
        let grid = UnitCircleGrid::new(config.grid_size)?;
        let rows: Vec<(f64, f64)> = grid
            .angles()
            .map(|t| {
                let z = Complex::from_polar(hbdmu::EDGE_RADIUS, t);
                let s = resolved.pair.a().eval_unchecked(z).norm_sqr()
                    + resolved.pair.b().eval_unchecked(z).norm_sqr();
                (t, (s - 1.0).abs())
            })
            .collect();
        print_csv_theta(&rows);
        return Ok(0);
    }

    let result = json!({
        "b": FunctionDescriptor::describe(resolved.pair.b()),
        "a": FunctionDescriptor::describe(resolved.pair.a()),
        "boundary_residual": resolved.pair.boundary_residual(),
        "validation_grid": resolved.pair.grid_size(),
    });
    print_json(&report::envelope("example", resolved.params, config.grid_value(), result));
    Ok(0)
}

fn run_clark(
    config: &Config,
    pair_opts: &PairOpts,
    lambda_text: &str,
    mu_text: Option<String>,
) -> Result<i32, CliError> {
    let resolved = build_pair(pair_opts, config)?;
    let lambda = parse_complex(lambda_text)?;
    let (atoms, mults) = match &mu_text {
        Some(m) => {
            let mu = parse_measure(m)?;
            let n = mu.atoms().len();
            (mu.atoms().to_vec(), vec![1; n])
        }
        None => atoms_or_spectrum(&resolved, config)?,
    };
    let opts = config.certify_options();
    let out = certify::clark_ac_check(&resolved.pair, lambda, &atoms, &mults, &opts)?;

    if config.output == OutputFormat::Csv {
        print_csv_theta(&out.density);
        return Ok(exit_for(out.report.verdict));
    }

    let verdict = out.report.verdict;
    let result = report::clark_value(&out);
    let mut params = json!({"lambda": [lambda.re, lambda.im]});
    params["pair"] = resolved.params;
    print_json(&report::envelope("clark", params, config.grid_value(), result));
    Ok(exit_for(verdict))
}

fn run_selftest(config: &Config) -> Result<i32, CliError> {
    let outcomes = selftest::run_all(config.seed);
    let mut all = true;
    for o in &outcomes {
        eprintln!(
            "criterion {}: {:<28} {}  [{}]",
            o.id,
            o.name,
            if o.passed { "PASS" } else { "FAIL" },
            o.details
        );
        all &= o.passed;
    }
    let result = json!({
        "criteria": outcomes.iter().map(|o| json!({
            "id": o.id,
            "name": o.name,
            "passed": o.passed,
            "details": o.details,
        })).collect::<Vec<_>>(),
        "all_passed": all,
    });
    print_json(&report::envelope(
        "selftest",
        json!({"seed": config.seed}),
        config.grid_value(),
        result,
    ));
    Ok(if all { 0 } else { 2 })
}

/// Descriptor used by `run_mate` for the poly shorthand in tests.
#[allow(dead_code)]
fn poly_descriptor(coeffs: &[f64]) -> FunctionDescriptor {
    FunctionDescriptor::describe(&AnalyticFunction::polynomial(Poly::from_real(coeffs)))
}
