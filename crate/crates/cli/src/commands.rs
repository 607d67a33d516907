use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use qbf_core::bf_weights::{
    casimir_subadditivity_check, validate_central_weight, CentralWeightSpec,
};
use qbf_core::cb_region::{
    cb_region_enumerate, sup_ratio_scan, Beta, CbDecision, Certificate, RatioScan,
};
use qbf_core::characters::weyl_orbit;
use qbf_core::fusion::tensor_decompose;
use qbf_core::qnorm::{lminus_norm_exponent, rmatrix_spectrum, QExponent, SessionConfig};
use qbf_core::sl2_oracle::verify_norm_formula;
use qbf_core::{
    character_product_decompose, weight_multiplicities, LieType, Precision, RootSystem, Series,
    Weight,
};
use serde_json::{json, Value};

use crate::render;
use crate::{Cli, Command, Format, HeightArg, Route, TypeArg, WeightKind};

/// Largest m, n accepted by `oracle-sl2` without `--force`.
const ORACLE_CAP: u32 = 8;

pub struct Outcome {
    pub text: String,
    pub violation: bool,
    pub summary: String,
}

impl Outcome {
    fn json(value: Value, violation: bool, summary: impl Into<String>) -> Self {
        let mut text = serde_json::to_string_pretty(&value).expect("serializable");
        text.push('\n');
        Outcome {
            text,
            violation,
            summary: summary.into(),
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let p = Precision::new(cli.precision);
    match &cli.command {
        Command::Fusion {
            ty,
            lambda,
            mu,
            check,
        } => fusion(ty, lambda, mu, *check),
        Command::Character { ty, mu, full } => character(ty, mu, *full),
        Command::VerifyWeight {
            ty,
            kind,
            beta,
            table,
            height,
        } => verify_weight(ty, *kind, *beta, table.as_deref(), height, p),
        Command::Norm {
            ty,
            lambda,
            mu,
            q,
            route,
        } => norm(ty, lambda, mu, *q, *route, p),
        Command::CbRegion {
            ty,
            q,
            beta,
            height,
            format,
            scan_height,
        } => cb_region(ty, *q, *beta, height, *format, *scan_height, p),
        Command::OracleSl2 {
            q,
            m,
            n,
            tol,
            force,
        } => oracle_sl2(*q, *m, *n, *tol, *force, p),
        Command::CasimirCheck { ty, height } => casimir_check(ty, height, p),
    }
}

fn root_system(ty: &TypeArg) -> Result<RootSystem> {
    let lie_type: LieType = ty.lie_type.parse()?;
    Ok(RootSystem::new(&lie_type)?)
}

fn dominant(rs: &RootSystem, s: &str, name: &str) -> Result<Weight> {
    let w: Weight = s.parse().with_context(|| format!("--{name}"))?;
    rs.check_dominant(&w).with_context(|| format!("--{name}"))?;
    Ok(w)
}

/// Height caps: 12 for type A, 8 for B, C, D and 6 for exceptional types;
/// products use the smallest cap of their factors.
pub fn height_cap(lie_type: &LieType) -> i64 {
    lie_type
        .factors()
        .iter()
        .map(|f| match f.series {
            Series::A => 12,
            Series::B | Series::C | Series::D => 8,
            _ => 6,
        })
        .min()
        .unwrap_or(12)
}

fn check_height(rs: &RootSystem, h: i64, force: bool, flag: &str) -> Result<()> {
    if h < 1 {
        bail!("--{flag} must be at least 1, got {h}");
    }
    let cap = height_cap(rs.lie_type());
    if h > cap && !force {
        bail!(
            "--{flag} {h} exceeds the cap {cap} for {}; pass --force to run anyway",
            rs.lie_type()
        );
    }
    Ok(())
}

fn fusion(ty: &TypeArg, lambda: &str, mu: &str, check: bool) -> Result<Outcome> {
    let rs = root_system(ty)?;
    let (l, m) = (dominant(&rs, lambda, "lambda")?, dominant(&rs, mu, "mu")?);
    let fusion = tensor_decompose(&rs, &l, &m)?;
    let components = fusion
        .highest_first()
        .into_iter()
        .map(|(nu, k)| {
            Ok(json!({
                "nu": render::weight(nu),
                "multiplicity": k,
                "dimension": rs.weyl_dim(nu)?.to_string(),
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    let total = fusion.total_dimension(&rs)?;
    let product = rs.weyl_dim(&l)? * rs.weyl_dim(&m)?;
    let dimension_identity = total == product;
    let oracle = if check {
        Some(character_product_decompose(&rs, &l, &m)?.components() == fusion.components())
    } else {
        None
    };
    let violation = !dimension_identity || oracle == Some(false);
    let value = json!({
        "command": "fusion",
        "type": rs.lie_type().to_string(),
        "lambda": render::weight(&l),
        "mu": render::weight(&m),
        "components": components,
        "total_dimension": total.to_string(),
        "dimension_identity": dimension_identity,
        "oracle_agrees": oracle,
    });
    Ok(Outcome::json(
        value,
        violation,
        "fusion decomposition failed its consistency checks",
    ))
}

fn character(ty: &TypeArg, mu: &str, full: bool) -> Result<Outcome> {
    let rs = root_system(ty)?;
    let m = dominant(&rs, mu, "mu")?;
    let ch = weight_multiplicities(&rs, &m)?;
    let dominant: Vec<Value> = ch
        .dominant_multiplicities()
        .iter()
        .map(|(w, k)| {
            json!({
                "weight": render::weight(w),
                "multiplicity": k,
                "orbit_size": weyl_orbit(&rs, w).len(),
            })
        })
        .collect();
    let dimension = ch.dimension(&rs);
    let weyl = rs.weyl_dim(&m)?;
    let weights = full.then(|| {
        ch.mults(&rs)
            .iter()
            .rev()
            .map(|(w, k)| json!({"weight": render::weight(w), "multiplicity": k}))
            .collect::<Vec<_>>()
    });
    let value = json!({
        "command": "character",
        "type": rs.lie_type().to_string(),
        "mu": render::weight(&m),
        "dimension": dimension.to_string(),
        "weyl_dimension": weyl.to_string(),
        "dominant": dominant,
        "weights": weights,
    });
    Ok(Outcome::json(
        value,
        dimension != weyl,
        "weight multiplicities do not add up to the Weyl dimension",
    ))
}

fn verify_weight(
    ty: &TypeArg,
    kind: WeightKind,
    beta: Option<f64>,
    table: Option<&std::path::Path>,
    height: &HeightArg,
    p: Precision,
) -> Result<Outcome> {
    let rs = root_system(ty)?;
    check_height(&rs, height.height, height.force, "height")?;
    let need_beta = || beta.with_context(|| format!("--kind {} requires --beta", kind_name(kind)));
    let spec = match kind {
        WeightKind::Beta => CentralWeightSpec::beta_norm(need_beta()?)?,
        WeightKind::Lst => CentralWeightSpec::lst(need_beta()?)?,
        WeightKind::Table => {
            let path = table.context("--kind table requires --table FILE")?;
            let json = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            CentralWeightSpec::table_from_json(&json, rs.rank())?
        }
    };
    let report = validate_central_weight(&rs, &spec, height.height, p)?;
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| {
            json!({
                "condition": v.condition.to_string(),
                "witnesses": v.witnesses.iter().map(render::weight).collect::<Vec<_>>(),
                "lhs": render::real(&v.lhs, p.digits()),
                "lhs_float": render::real_f64(&v.lhs),
                "rhs": render::real(&v.rhs, p.digits()),
                "rhs_float": render::real_f64(&v.rhs),
            })
        })
        .collect();
    let value = json!({
        "command": "verify-weight",
        "type": rs.lie_type().to_string(),
        "kind": kind_name(kind),
        "beta": beta.filter(|_| kind != WeightKind::Table),
        "height": report.truncation_height,
        "passed": report.passed,
        "summary": report.summary(),
        "weights_checked": report.weights_checked,
        "triples_checked": report.triples_checked,
        "triples_skipped": report.triples_skipped,
        "unit_normalized": report.unit_normalized,
        "violations": violations,
    });
    Ok(Outcome::json(value, !report.passed, report.summary()))
}

fn kind_name(kind: WeightKind) -> &'static str {
    match kind {
        WeightKind::Beta => "beta",
        WeightKind::Lst => "lst",
        WeightKind::Table => "table",
    }
}

fn exponent_json(e: &QExponent) -> Value {
    json!({
        "exponent": render::rational(e.exponent()),
        "exponent_float": render::rational_f64(e.exponent()),
    })
}

fn norm(
    ty: &TypeArg,
    lambda: &str,
    mu: &str,
    q: Option<f64>,
    route: Route,
    p: Precision,
) -> Result<Outcome> {
    let rs = root_system(ty)?;
    let (l, m) = (dominant(&rs, lambda, "lambda")?, dominant(&rs, mu, "mu")?);
    let cfg = q.map(|q| SessionConfig::new(q, p)).transpose()?;
    let closed = matches!(route, Route::Closed | Route::Both)
        .then(|| lminus_norm_exponent(&rs, &l, &m))
        .transpose()?;
    let spectrum = matches!(route, Route::Rmatrix | Route::Both)
        .then(|| rmatrix_spectrum(&rs, &l, &m))
        .transpose()?;
    let agree = match (&closed, &spectrum) {
        (Some(c), Some(s)) => Some(c == &s.sup_exponent),
        _ => None,
    };
    let cartan = spectrum.as_ref().map(|s| s.minimizer_is_cartan_component());
    let exponent = closed
        .clone()
        .or_else(|| spectrum.as_ref().map(|s| s.sup_exponent.clone()))
        .expect("at least one route");
    let rmatrix = spectrum.as_ref().map(|s| {
        let mut out = exponent_json(&s.sup_exponent);
        out["components"] = s
            .components
            .iter()
            .map(|c| {
                json!({
                    "nu": render::weight(&c.nu),
                    "multiplicity": c.multiplicity,
                    "dimension": c.dimension.to_string(),
                    "exponent": render::rational(&c.exponent),
                })
            })
            .collect();
        out["minimizers"] = s.minimizers.iter().map(render::weight).collect();
        out["minimizer_is_cartan_component"] = json!(s.minimizer_is_cartan_component());
        out
    });
    let (value_digits, value_float) = match &cfg {
        Some(cfg) => {
            let v = exponent.eval(cfg);
            (render::real(&v, p.digits()), render::real_f64(&v))
        }
        None => (Value::Null, Value::Null),
    };
    let value = json!({
        "command": "norm",
        "type": rs.lie_type().to_string(),
        "lambda": render::weight(&l),
        "mu": render::weight(&m),
        "route": match route { Route::Closed => "closed", Route::Rmatrix => "rmatrix", Route::Both => "both" },
        "q": q,
        "closed": closed.as_ref().map(exponent_json),
        "rmatrix": rmatrix,
        "agree": agree,
        "norm": value_digits,
        "norm_float": value_float,
    });
    let violation = agree == Some(false) || cartan == Some(false);
    Ok(Outcome::json(
        value,
        violation,
        "closed-form and R-matrix norm exponents disagree",
    ))
}

fn certificate_json(c: &Certificate, digits: u32) -> Value {
    match c {
        Certificate::Bounded { sup, attained_at } => json!({
            "kind": "bounded",
            "sup": render::real(sup, digits),
            "attained_at": render::weight(attained_at),
        }),
        Certificate::DivergenceRay { ray, growth_factor } => json!({
            "kind": "divergence_ray",
            "ray": render::weight(ray),
            "growth_factor": render::real_f64(growth_factor),
            "growth_factor_digits": render::real(growth_factor, digits),
        }),
    }
}

fn decision_json(d: &CbDecision, scan: Option<&RatioScan>, digits: u32) -> Value {
    let mut row = json!({
        "lambda": render::weight(&d.lambda),
        "extends": d.extends,
        "boundary": d.boundary,
        "norm_sq": render::rational(&d.norm_sq),
        "norm_sq_float": render::rational_f64(&d.norm_sq),
        "threshold": render::real_f64(&d.threshold),
        "beta_min": render::real_f64(&d.beta_min),
        "beta_min_digits": render::real(&d.beta_min, digits),
        "certificate": certificate_json(&d.certificate, digits),
    });
    if let Some(s) = scan {
        row["scan"] = json!({
            "height": s.height,
            "max_log_ratio": render::real_f64(&s.max_log_ratio),
            "argmax": render::weight(&s.argmax),
            "bounded": s.bounded,
            "ray_strictly_increasing": s.ray_strictly_increasing,
            "consistent": s.consistent_with(d),
        });
    }
    row
}

fn certificate_cells(c: &Certificate, digits: u32) -> (String, String) {
    match c {
        Certificate::Bounded { sup, .. } => ("bounded".into(), qbf_core::real::render(sup, digits)),
        Certificate::DivergenceRay { growth_factor, .. } => (
            "divergence_ray".into(),
            qbf_core::real::render(growth_factor, digits),
        ),
    }
}

#[allow(clippy::too_many_arguments)]
fn cb_region(
    ty: &TypeArg,
    q: f64,
    beta: f64,
    height: &HeightArg,
    format: Format,
    scan_height: Option<i64>,
    p: Precision,
) -> Result<Outcome> {
    let rs = root_system(ty)?;
    check_height(&rs, height.height, height.force, "height")?;
    if let Some(h) = scan_height {
        check_height(&rs, h, height.force, "scan-height")?;
    }
    let cfg = SessionConfig::new(q, p)?;
    let b = Beta::new(beta, p)?;
    let decisions = cb_region_enumerate(&rs, &cfg, &b, height.height)?;
    let scans = match scan_height {
        Some(h) => Some(
            decisions
                .iter()
                .map(|d| sup_ratio_scan(&rs, &cfg, &b, &d.lambda, h))
                .collect::<qbf_core::Result<Vec<_>>>()?,
        ),
        None => None,
    };
    let inconsistent = scans.as_ref().map_or(0, |s| {
        s.iter()
            .zip(&decisions)
            .filter(|(s, d)| !s.consistent_with(d))
            .count()
    });
    let extending = decisions.iter().filter(|d| d.extends).count();
    let digits = p.digits();
    let text = match format {
        Format::Json => {
            let rows: Vec<Value> = decisions
                .iter()
                .enumerate()
                .map(|(i, d)| decision_json(d, scans.as_ref().map(|s| &s[i]), digits))
                .collect();
            let value = json!({
                "command": "cb-region",
                "type": rs.lie_type().to_string(),
                "q": q,
                "beta": beta,
                "height": height.height,
                "extending": extending,
                "rows": rows,
            });
            let mut t = serde_json::to_string_pretty(&value)?;
            t.push('\n');
            t
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "lambda",
                "extends",
                "boundary",
                "norm_sq",
                "threshold",
                "beta_min",
                "certificate",
                "value",
            ])?;
            for d in &decisions {
                let (kind, val) = certificate_cells(&d.certificate, 17);
                w.write_record([
                    d.lambda.to_string(),
                    d.extends.to_string(),
                    d.boundary.to_string(),
                    d.norm_sq.to_string(),
                    qbf_core::real::render(&d.threshold, 17),
                    qbf_core::real::render(&d.beta_min, 17),
                    kind,
                    val,
                ])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Table => {
            let mut t = String::new();
            writeln!(
                t,
                "{} q={} beta={} height={}",
                rs.lie_type(),
                q,
                beta,
                height.height
            )?;
            writeln!(
                t,
                "{:<16} {:<8} {:<10} {:<22} certificate",
                "lambda", "extends", "norm_sq", "beta_min"
            )?;
            for d in &decisions {
                let (kind, _) = certificate_cells(&d.certificate, 6);
                writeln!(
                    t,
                    "{:<16} {:<8} {:<10} {:<22} {}{}",
                    d.lambda.to_string(),
                    d.extends,
                    d.norm_sq.to_string(),
                    qbf_core::real::render(&d.beta_min, 12),
                    kind,
                    if d.boundary { " (boundary)" } else { "" }
                )?;
            }
            writeln!(t, "{extending} of {} weights extend", decisions.len())?;
            t
        }
    };
    Ok(Outcome {
        text,
        violation: inconsistent > 0,
        summary: format!("{inconsistent} decision(s) contradict the brute-force ratio scan"),
    })
}

fn oracle_sl2(q: f64, m: u32, n: u32, tol: f64, force: bool, p: Precision) -> Result<Outcome> {
    if (m > ORACLE_CAP || n > ORACLE_CAP) && !force {
        bail!("--m and --n are capped at {ORACLE_CAP}; pass --force to run anyway");
    }
    let r = verify_norm_formula(q, m, n, tol, p)?;
    let digits = p.digits();
    let eigenvalues: Vec<Value> = r
        .eigenvalues
        .iter()
        .map(|e| {
            json!({
                "nu": render::weight(&e.nu),
                "exponent": render::rational(&e.exponent),
                "expected": render::real_f64(&e.expected),
                "computed": render::real_f64(&e.computed),
                "observed_exponent": render::float(e.observed_exponent),
                "rel_error": render::float(e.rel_error),
            })
        })
        .collect();
    let value = json!({
        "command": "oracle-sl2",
        "q": q,
        "m": m,
        "n": n,
        "tol": tol,
        "working_digits": r.working_digits,
        "passed": r.passed(),
        "residuals": {
            "relations_mu": render::real_f64(&r.relation_residual_mu),
            "relations_lambda": render::real_f64(&r.relation_residual_lambda),
            "transpose": render::real_f64(&r.transpose_residual),
            "symmetry": render::real_f64(&r.symmetry_residual),
            "inverse": render::real_f64(&r.inverse_residual),
        },
        "eigenvalues": eigenvalues,
        "min_eigenvalue": render::real_f64(&r.min_eigenvalue),
        "lambda_max": render::real_f64(&r.lambda_max),
        "sqrt_lambda_max": render::real(&r.sqrt_lambda_max, digits),
        "expected_norm": render::real(&r.expected_norm, digits),
        "norm_rel_error": render::float(r.norm_rel_error),
        "power_iteration": {
            "lambda_max": render::real_f64(&r.power_iteration_lambda_max),
            "iterations": r.power_iterations,
            "rel_error": render::float(r.power_rel_error),
        },
        "failures": r.failures,
    });
    let summary = r.failures.first().cloned().unwrap_or_default();
    Ok(Outcome::json(value, !r.passed(), summary))
}

fn casimir_check(ty: &TypeArg, height: &HeightArg, p: Precision) -> Result<Outcome> {
    let rs = root_system(ty)?;
    check_height(&rs, height.height, height.force, "height")?;
    let r = casimir_subadditivity_check(&rs, height.height, p)?;
    let digits = p.digits();
    let triple = |w: &qbf_core::bf_weights::SlackWitness| {
        json!({
            "lambda": render::weight(&w.lambda),
            "mu": render::weight(&w.mu),
            "nu": render::weight(&w.nu),
            "slack": render::real(&w.slack, digits),
            "slack_float": render::real_f64(&w.slack),
        })
    };
    let value = json!({
        "command": "casimir-check",
        "type": rs.lie_type().to_string(),
        "height": r.height,
        "passed": r.passed(),
        "triples_checked": r.triples_checked,
        "min_slack": triple(&r.min_slack),
        "violations": r.violations.iter().map(triple).collect::<Vec<_>>(),
    });
    Ok(Outcome::json(
        value,
        !r.passed(),
        format!("{} Casimir subadditivity violation(s)", r.violations.len()),
    ))
}
