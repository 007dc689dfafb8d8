//! JSON descriptors for functions, measures and pairs, and the text
//! shorthand used on the command line.
//!
//! Complex scalars are `[re, im]` pairs; polynomial coefficients ascend in
//! degree.

use serde::{Deserialize, Serialize};

use hbdmu::poly::Poly;
use hbdmu::{AnalyticFunction, AtomicMeasure, Complex};

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FunctionDescriptor {
    Poly {
        coeffs: Vec<[f64; 2]>,
    },
    Rational {
        num: Vec<[f64; 2]>,
        den: Vec<[f64; 2]>,
    },
    ExpPoly {
        coeffs: Vec<[f64; 2]>,
    },
    SarasonB {
        zeta: [f64; 2],
    },
    SarasonA {
        zeta: [f64; 2],
    },
    Product {
        factors: Vec<FunctionDescriptor>,
    },
    Scaled {
        c: [f64; 2],
        inner: Box<FunctionDescriptor>,
    },
    /// Outer function as produced by the mate constructor: the value is
    /// `singular(z) * exp(completion(z))`.
    OuterSamples {
        grid_size: usize,
        completion: Vec<[f64; 2]>,
        singular: Vec<[f64; 2]>,
    },
}

fn to_complex(p: [f64; 2]) -> Complex {
    Complex::new(p[0], p[1])
}

fn to_poly(coeffs: &[[f64; 2]]) -> Poly {
    Poly::new(coeffs.iter().map(|&c| to_complex(c)).collect())
}

fn from_poly(p: &Poly) -> Vec<[f64; 2]> {
    p.coeffs().iter().map(|c| [c.re, c.im]).collect()
}

impl FunctionDescriptor {
    pub fn build(&self) -> Result<AnalyticFunction, CliError> {
        match self {
            FunctionDescriptor::Poly { coeffs } => {
                Ok(AnalyticFunction::polynomial(to_poly(coeffs)))
            }
            FunctionDescriptor::Rational { num, den } => {
                AnalyticFunction::rational(to_poly(num), to_poly(den)).map_err(CliError::from)
            }
            FunctionDescriptor::ExpPoly { coeffs } => {
                Ok(AnalyticFunction::exp_poly(to_poly(coeffs)))
            }
            FunctionDescriptor::SarasonB { zeta } => {
                let pair = hbdmu::pairs::sarason_pair(to_complex(*zeta))?;
                Ok(pair.b().clone())
            }
            FunctionDescriptor::SarasonA { zeta } => {
                let pair = hbdmu::pairs::sarason_pair(to_complex(*zeta))?;
                Ok(pair.a().clone())
            }
            FunctionDescriptor::Product { factors } => {
                if factors.is_empty() {
                    return Err(CliError::parse("product descriptor needs at least one factor"));
                }
                let mut built = factors[0].build()?;
                for f in &factors[1..] {
                    built = AnalyticFunction::product(built, f.build()?);
                }
                Ok(built)
            }
            FunctionDescriptor::Scaled { c, inner } => {
                Ok(AnalyticFunction::scaled(to_complex(*c), inner.build()?))
            }
            FunctionDescriptor::OuterSamples { grid_size, completion, singular } => {
                if !grid_size.is_power_of_two() || *grid_size < 256 {
                    return Err(CliError::parse("outer_samples grid_size must be a power of two >= 256"));
                }
                Ok(AnalyticFunction::OuterFromSamples {
                    completion: to_poly(completion),
                    singular: to_poly(singular),
                    log_modulus: Vec::new(),
                })
            }
        }
    }

    /// Descriptor for a core function (inverse of `build`).
    pub fn describe(f: &AnalyticFunction) -> FunctionDescriptor {
        match f {
            AnalyticFunction::Polynomial(p) => FunctionDescriptor::Poly { coeffs: from_poly(p) },
            AnalyticFunction::Rational { num, den } => FunctionDescriptor::Rational {
                num: from_poly(num),
                den: from_poly(den),
            },
            AnalyticFunction::ExpPoly(p) => FunctionDescriptor::ExpPoly { coeffs: from_poly(p) },
            AnalyticFunction::OuterFromSamples { completion, singular, log_modulus } => {
                FunctionDescriptor::OuterSamples {
                    grid_size: log_modulus.len().max(completion.coeffs().len().saturating_sub(1) * 2),
                    completion: from_poly(completion),
                    singular: from_poly(singular),
                }
            }
            AnalyticFunction::Scaled { constant, inner } => FunctionDescriptor::Scaled {
                c: [constant.re, constant.im],
                inner: Box::new(FunctionDescriptor::describe(inner)),
            },
            AnalyticFunction::Product { left, right } => FunctionDescriptor::Product {
                factors: vec![
                    FunctionDescriptor::describe(left),
                    FunctionDescriptor::describe(right),
                ],
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MeasureDescriptor {
    RootsOfUnity { roots_of_unity: usize },
    Atoms {
        atoms: Vec<[f64; 2]>,
        #[serde(default)]
        masses: Option<Vec<f64>>,
    },
}

impl MeasureDescriptor {
    pub fn build(&self) -> Result<AtomicMeasure, CliError> {
        match self {
            MeasureDescriptor::RootsOfUnity { roots_of_unity } => {
                AtomicMeasure::roots_of_unity(*roots_of_unity).map_err(CliError::from)
            }
            MeasureDescriptor::Atoms { atoms, masses } => {
                let atoms: Vec<Complex> = atoms.iter().map(|&a| to_complex(a)).collect();
                match masses {
                    Some(m) => AtomicMeasure::new(atoms, m.clone()).map_err(CliError::from),
                    None => AtomicMeasure::with_unit_masses(atoms).map_err(CliError::from),
                }
            }
        }
    }

    pub fn describe(mu: &AtomicMeasure) -> MeasureDescriptor {
        MeasureDescriptor::Atoms {
            atoms: mu.atoms().iter().map(|a| [a.re, a.im]).collect(),
            masses: Some(mu.masses().to_vec()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairDescriptor {
    pub b: FunctionDescriptor,
    pub a: FunctionDescriptor,
}

/// Parse `re,im`.
pub fn parse_complex(s: &str) -> Result<Complex, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::parse(&format!("expected re,im — got `{s}`")));
    }
    let re: f64 = parts[0].trim().parse().map_err(|_| CliError::parse(&format!("bad real part in `{s}`")))?;
    let im: f64 = parts[1].trim().parse().map_err(|_| CliError::parse(&format!("bad imaginary part in `{s}`")))?;
    Ok(Complex::new(re, im))
}

/// Parse a semicolon-separated list of `re,im` pairs.
pub fn parse_complex_list(s: &str) -> Result<Vec<Complex>, CliError> {
    s.split(';').map(|p| parse_complex(p.trim())).collect()
}

/// Measure shorthand: `atoms:re,im;re,im`, `roots_of_unity:N`, or a path to
/// a measure descriptor JSON file.
pub fn parse_measure(s: &str) -> Result<AtomicMeasure, CliError> {
    if let Some(rest) = s.strip_prefix("atoms:") {
        return AtomicMeasure::with_unit_masses(parse_complex_list(rest)?).map_err(CliError::from);
    }
    if let Some(rest) = s.strip_prefix("roots_of_unity:") {
        let n: usize = rest
            .trim()
            .parse()
            .map_err(|_| CliError::parse(&format!("bad root count in `{s}`")))?;
        return AtomicMeasure::roots_of_unity(n).map_err(CliError::from);
    }
    let text = std::fs::read_to_string(s)
        .map_err(|e| CliError::io(&format!("cannot read measure file `{s}`: {e}")))?;
    let desc: MeasureDescriptor =
        serde_json::from_str(&text).map_err(|e| CliError::parse(&format!("bad measure JSON: {e}")))?;
    desc.build()
}

/// Atom shorthand without masses: `re,im;re,im` or `roots_of_unity:N`.
pub fn parse_atoms(s: &str) -> Result<Vec<Complex>, CliError> {
    if let Some(rest) = s.strip_prefix("roots_of_unity:") {
        let n: usize = rest
            .trim()
            .parse()
            .map_err(|_| CliError::parse(&format!("bad root count in `{s}`")))?;
        return Ok(AtomicMeasure::roots_of_unity(n)
            .map_err(CliError::from)?
            .atoms()
            .to_vec());
    }
    let s = s.strip_prefix("atoms:").unwrap_or(s);
    parse_complex_list(s)
}

pub fn load_function(path: &str) -> Result<AnalyticFunction, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::io(&format!("cannot read function file `{path}`: {e}")))?;
    let desc: FunctionDescriptor =
        serde_json::from_str(&text).map_err(|e| CliError::parse(&format!("bad function JSON: {e}")))?;
    desc.build()
}
