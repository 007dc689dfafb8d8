//! Serializable views of core results: the report envelope, certification
//! reports, and the extended-real encoding (`+inf` becomes the string
//! `"inf"` so every report stays valid JSON).

use serde::Serialize;
use serde_json::{json, Value};

use hbdmu::certify::{AtomRatioProfile, CertificationReport, ClarkOutcome, Condition, GridMeta};

use crate::descriptor::FunctionDescriptor;

/// Finite numbers serialize as numbers; infinities as `"inf"` / `"-inf"`.
pub fn ext_real(v: f64) -> Value {
    if v == f64::INFINITY {
        Value::String("inf".into())
    } else if v == f64::NEG_INFINITY {
        Value::String("-inf".into())
    } else {
        json!(v)
    }
}

pub fn opt_ext_real(v: Option<f64>) -> Value {
    match v {
        Some(x) => ext_real(x),
        None => Value::Null,
    }
}

#[derive(Debug, Serialize)]
pub struct ConditionDto {
    pub name: String,
    pub passed: bool,
    pub evidence: Value,
}

impl From<&Condition> for ConditionDto {
    fn from(c: &Condition) -> Self {
        Self {
            name: c.name.clone(),
            passed: c.passed,
            evidence: ext_real(c.evidence),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GridMetaDto {
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
    pub norm_convention: &'static str,
}

impl From<&GridMeta> for GridMetaDto {
    fn from(g: &GridMeta) -> Self {
        Self {
            boundary_size: g.boundary_size,
            disk_radii: g.disk_radii,
            disk_angles: g.disk_angles,
            spectrum_tol: g.spectrum_tol,
            atom_match_tol: g.atom_match_tol,
            division_tol: g.division_tol,
            inf_tol: g.inf_tol,
            sup_cap: g.sup_cap,
            stability_factor: g.stability_factor,
            sampling_radius: g.sampling_radius,
            norm_convention: g.norm_convention,
        }
    }
}

pub fn certification_value(rep: &CertificationReport) -> Value {
    let conditions: Vec<Value> = rep
        .conditions
        .iter()
        .map(|c| serde_json::to_value(ConditionDto::from(c)).expect("condition serializes"))
        .collect();
    json!({
        "theorem": rep.theorem.tag(),
        "verdict": rep.verdict.tag(),
        "mode": rep.mode.tag(),
        "conditions": conditions,
        "inf_estimate": opt_ext_real(rep.inf_estimate),
        "sup_estimate": opt_ext_real(rep.sup_estimate),
        "witness_quotient": rep.witness_quotient.as_ref().map(|f| {
            serde_json::to_value(FunctionDescriptor::describe(f)).expect("descriptor serializes")
        }),
        "grid_meta": serde_json::to_value(GridMetaDto::from(&rep.grid)).expect("meta serializes"),
    })
}

pub fn clark_value(out: &ClarkOutcome) -> Value {
    json!({
        "report": certification_value(&out.report),
        "boundary_values": out.boundary_values.iter().map(|(zeta, v)| {
            json!({"atom": [zeta.re, zeta.im], "value": [v.re, v.im]})
        }).collect::<Vec<_>>(),
        "min_distance": out.min_distance,
        "density_max": ext_real(
            out.density.iter().map(|(_, v)| *v).fold(f64::NEG_INFINITY, f64::max)
        ),
    })
}

pub fn atom_ratio_values(profiles: &[AtomRatioProfile]) -> Value {
    let arr: Vec<Value> = profiles
        .iter()
        .map(|p| {
            json!({
                "atom": [p.atom.re, p.atom.im],
                "samples": p.samples.iter().map(|(d, v)| json!([d, v])).collect::<Vec<_>>(),
            })
        })
        .collect();
    Value::Array(arr)
}

/// Top-level report envelope printed on stdout.
pub fn envelope(command: &str, params: Value, grid: Value, result: Value) -> Value {
    json!({
        "command": command,
        "params": params,
        "grid": grid,
        "result": result,
    })
}
