//! Central weights on the dual of `K_q` and their validation.
//!
//! A central weight is `w: P⁺ → (0, ∞)` with
//! Z1: `w(μ) ≥ 1`, Z2: `w(ν) ≤ w(λ) w(μ)` for every `ν ⊆ λ⊗μ`, and it is
//! symmetric when `w(μ) = w(μ̄)`. Z2 ranges over infinitely many triples, so
//! a passing report only certifies the truncation it was run on.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Deserialize;

use crate::characters::CharacterCache;
use crate::error::{Error, Result};
use crate::exact::{cmp_sqrt_sum, Rational};
use crate::fusion::tensor_decompose_with;
use crate::real::{self, Precision, Real};
use crate::root_system::RootSystem;
use crate::weight::{dominant_weights_up_to, Weight};

/// Relative tolerance of log-domain comparisons.
pub const LOG_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub enum CentralWeightSpec {
    /// `w(μ) = β^{|μ|}`, `|μ| = (μ,μ)^{1/2}`.
    BetaNorm {
        beta: f64,
    },
    /// `w(μ) = e^{β c(μ)^{1/2}}`, `c(μ) = (μ, μ+2ρ)`.
    Lst {
        beta: f64,
    },
    Table(BTreeMap<Weight, f64>),
}

#[derive(Deserialize)]
struct TableRow {
    mu: Vec<i64>,
    w: f64,
}

impl CentralWeightSpec {
    /// `β > 0`; values below 1 are accepted but fail Z1.
    pub fn beta_norm(beta: f64) -> Result<Self> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::InvalidBeta(beta, "beta_norm needs beta > 0"));
        }
        Ok(CentralWeightSpec::BetaNorm { beta })
    }

    pub fn lst(beta: f64) -> Result<Self> {
        if !(beta.is_finite() && beta >= 0.0) {
            return Err(Error::InvalidBeta(beta, "lst needs beta >= 0"));
        }
        Ok(CentralWeightSpec::Lst { beta })
    }

    pub fn table(entries: BTreeMap<Weight, f64>) -> Result<Self> {
        if let Some((mu, w)) = entries.iter().find(|(_, w)| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidTable(format!(
                "value {w} at {mu} is not strictly positive"
            )));
        }
        Ok(CentralWeightSpec::Table(entries))
    }

    /// Parses `[{"mu":[1,0],"w":3.5}, …]`.
    pub fn table_from_json(json: &str, rank: usize) -> Result<Self> {
        let rows: Vec<TableRow> =
            serde_json::from_str(json).map_err(|e| Error::InvalidTable(e.to_string()))?;
        let mut entries = BTreeMap::new();
        for row in rows {
            let mu = Weight::new(row.mu);
            if mu.rank() != rank || !mu.is_dominant() {
                return Err(Error::InvalidTable(format!(
                    "{mu} is not a dominant weight of rank {rank}"
                )));
            }
            if entries.insert(mu.clone(), row.w).is_some() {
                return Err(Error::InvalidTable(format!("duplicate entry for {mu}")));
            }
        }
        CentralWeightSpec::table(entries)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CentralWeightSpec::BetaNorm { .. } => "beta",
            CentralWeightSpec::Lst { .. } => "lst",
            CentralWeightSpec::Table(_) => "table",
        }
    }
}

#[derive(Clone, Debug)]
pub struct WeightValue {
    pub value: f64,
    pub log: Real,
    /// Evaluated outside the family's central-weight domain (β < 1 for
    /// `BetaNorm`).
    pub out_of_domain: bool,
}

pub fn eval_weight(
    rs: &RootSystem,
    spec: &CentralWeightSpec,
    mu: &Weight,
    p: Precision,
) -> Result<WeightValue> {
    rs.check_dominant(mu)?;
    let (log, out_of_domain) = match spec {
        CentralWeightSpec::BetaNorm { beta } => {
            let length = p.sqrt_rational(&rs.norm_sq(mu)?);
            (length * p.ln_f64(*beta), *beta < 1.0)
        }
        CentralWeightSpec::Lst { beta } => {
            let root = p.sqrt_rational(&rs.casimir(mu)?);
            (root * p.from_f64(*beta), false)
        }
        CentralWeightSpec::Table(entries) => {
            let w = entries
                .get(mu)
                .ok_or_else(|| Error::MissingTableEntry(mu.clone()))?;
            (p.ln_f64(*w), false)
        }
    };
    Ok(WeightValue {
        value: real::to_f64(&log.clone().exp()),
        log,
        out_of_domain,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    Z1,
    Z2,
    Sym,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Z1 => "Z1",
            Condition::Z2 => "Z2",
            Condition::Sym => "SYM",
        })
    }
}

/// A failed comparison, in the log domain: Z1 `lhs = log w(μ) ≥ rhs = 0`,
/// Z2 `lhs = log w(ν) ≤ rhs = log w(λ) + log w(μ)`, SYM `lhs = rhs`.
#[derive(Clone, Debug)]
pub struct Violation {
    pub condition: Condition,
    /// Z1: `[μ]`; Z2: `[λ, μ, ν]`; SYM: `[μ, μ̄]`.
    pub witnesses: Vec<Weight>,
    pub lhs: Real,
    pub rhs: Real,
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
    /// Conditions were checked for weights with coordinates up to this height.
    pub truncation_height: i64,
    pub weights_checked: usize,
    pub triples_checked: usize,
    /// Z2 triples skipped because a table had no entry for ν.
    pub triples_skipped: usize,
    /// `w(0) = 1`; informational only.
    pub unit_normalized: bool,
}

impl ValidationReport {
    pub fn summary(&self) -> String {
        if self.passed {
            format!("verified up to height {}", self.truncation_height)
        } else {
            format!(
                "{} violation(s) up to height {}",
                self.violations.len(),
                self.truncation_height
            )
        }
    }
}

fn tolerance(p: Precision, a: &Real, b: &Real) -> Real {
    let one = p.from_int(1);
    let mut scale = real::abs(a);
    let b = real::abs(b);
    if b > scale {
        scale = b;
    }
    if one > scale {
        scale = one;
    }
    p.from_f64(LOG_TOLERANCE) * scale
}

/// Exact Z2 decision for the built-in families, used near equality.
fn exact_z2(
    rs: &RootSystem,
    spec: &CentralWeightSpec,
    lambda: &Weight,
    mu: &Weight,
    nu: &Weight,
) -> Result<Option<bool>> {
    let triple = |f: &dyn Fn(&Weight) -> Result<Rational>| -> Result<std::cmp::Ordering> {
        Ok(cmp_sqrt_sum(&f(nu)?, &f(lambda)?, &f(mu)?))
    };
    Ok(match spec {
        CentralWeightSpec::BetaNorm { beta } if *beta > 1.0 => {
            Some(triple(&|w| rs.norm_sq(w))? != std::cmp::Ordering::Greater)
        }
        CentralWeightSpec::BetaNorm { beta } if *beta == 1.0 => Some(true),
        CentralWeightSpec::BetaNorm { .. } => {
            // log β < 0 flips the inequality
            Some(triple(&|w| rs.norm_sq(w))? != std::cmp::Ordering::Less)
        }
        CentralWeightSpec::Lst { beta } if *beta > 0.0 => {
            Some(triple(&|w| rs.casimir(w))? != std::cmp::Ordering::Greater)
        }
        CentralWeightSpec::Lst { .. } => Some(true),
        CentralWeightSpec::Table(_) => None,
    })
}

fn lookup(
    rs: &RootSystem,
    spec: &CentralWeightSpec,
    mu: &Weight,
    p: Precision,
) -> Result<Option<Real>> {
    match eval_weight(rs, spec, mu, p) {
        Ok(v) => Ok(Some(v.log)),
        Err(Error::MissingTableEntry(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Checks Z1 and SYM on all dominant μ with coordinates ≤ `height`, and Z2
/// on every `ν ⊆ λ⊗μ` for such pairs.
pub fn validate_central_weight(
    rs: &RootSystem,
    spec: &CentralWeightSpec,
    height: i64,
    p: Precision,
) -> Result<ValidationReport> {
    if height < 1 {
        return Err(Error::InvalidArgument(format!(
            "truncation height must be >= 1, got {height}"
        )));
    }
    let weights = dominant_weights_up_to(rs.rank(), height);
    let zero = p.from_int(0);
    let mut violations = Vec::new();
    let mut weights_checked = 0;
    let mut logs: BTreeMap<Weight, Real> = BTreeMap::new();

    for mu in &weights {
        let Some(log) = lookup(rs, spec, mu, p)? else {
            continue;
        };
        weights_checked += 1;
        if log < zero.clone() - tolerance(p, &log, &zero) {
            violations.push(Violation {
                condition: Condition::Z1,
                witnesses: vec![mu.clone()],
                lhs: log.clone(),
                rhs: zero.clone(),
            });
        }
        logs.insert(mu.clone(), log);
    }

    for (mu, log) in &logs {
        let bar = rs.conjugate_weight(mu)?;
        let Some(log_bar) = logs.get(&bar) else {
            continue;
        };
        let equal = match spec {
            CentralWeightSpec::BetaNorm { .. } => rs.norm_sq(mu)? == rs.norm_sq(&bar)?,
            CentralWeightSpec::Lst { .. } => rs.casimir(mu)? == rs.casimir(&bar)?,
            CentralWeightSpec::Table(_) => {
                real::abs(&(log.clone() - log_bar.clone())) <= tolerance(p, log, log_bar)
            }
        };
        if !equal && mu < &bar {
            violations.push(Violation {
                condition: Condition::Sym,
                witnesses: vec![mu.clone(), bar],
                lhs: log.clone(),
                rhs: log_bar.clone(),
            });
        }
    }

    let cache = CharacterCache::new(rs);
    let pairs: Vec<(&Weight, &Weight)> = logs
        .keys()
        .flat_map(|l| logs.keys().filter(move |m| l <= *m).map(move |m| (l, m)))
        .collect();
    let z2: Vec<(usize, usize, Vec<Violation>)> = pairs
        .par_iter()
        .map(|(lambda, mu)| -> Result<(usize, usize, Vec<Violation>)> {
            let fusion = tensor_decompose_with(&cache, lambda, mu)?;
            let rhs = logs[*lambda].clone() + logs[*mu].clone();
            let (mut checked, mut skipped, mut found) = (0, 0, Vec::new());
            for nu in fusion.components().keys() {
                let lhs = match logs.get(nu) {
                    Some(l) => l.clone(),
                    None => match lookup(rs, spec, nu, p)? {
                        Some(l) => l,
                        None => {
                            skipped += 1;
                            continue;
                        }
                    },
                };
                checked += 1;
                let excess = lhs.clone() - rhs.clone();
                let tol = tolerance(p, &lhs, &rhs);
                let violated = if excess > tol {
                    true
                } else if real::abs(&excess) <= tol {
                    exact_z2(rs, spec, lambda, mu, nu)?
                        .map(|ok| !ok)
                        .unwrap_or(false)
                } else {
                    false
                };
                if violated {
                    found.push(Violation {
                        condition: Condition::Z2,
                        witnesses: vec![(*lambda).clone(), (*mu).clone(), nu.clone()],
                        lhs,
                        rhs: rhs.clone(),
                    });
                }
            }
            Ok((checked, skipped, found))
        })
        .collect::<Result<_>>()?;

    let mut triples_checked = 0;
    let mut triples_skipped = 0;
    for (c, s, v) in z2 {
        triples_checked += c;
        triples_skipped += s;
        violations.extend(v);
    }
    violations.sort_by(|a, b| {
        a.condition
            .cmp(&b.condition)
            .then_with(|| a.witnesses.cmp(&b.witnesses))
    });

    let unit_normalized = logs
        .get(&Weight::zero(rs.rank()))
        .is_some_and(|l| real::abs(l) <= tolerance(p, l, &zero));
    Ok(ValidationReport {
        passed: violations.is_empty(),
        violations,
        truncation_height: height,
        weights_checked,
        triples_checked,
        triples_skipped,
        unit_normalized,
    })
}

#[derive(Clone, Debug)]
pub struct SlackWitness {
    pub lambda: Weight,
    pub mu: Weight,
    pub nu: Weight,
    /// `c(λ)^{1/2} + c(μ)^{1/2} − c(ν)^{1/2}`.
    pub slack: Real,
}

#[derive(Clone, Debug)]
pub struct SubadditivityReport {
    pub height: i64,
    pub triples_checked: usize,
    pub violations: Vec<SlackWitness>,
    /// Smallest slack over triples with `λ, μ ≠ 0`; a zero factor always
    /// has slack exactly zero.
    pub min_slack: SlackWitness,
}

impl SubadditivityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verifies `c(ν)^{1/2} ≤ c(λ)^{1/2} + c(μ)^{1/2}` on every fusion triple at
/// coordinate height ≤ `height`. Violations are decided exactly; slacks are
/// reported at working precision.
pub fn casimir_subadditivity_check(
    rs: &RootSystem,
    height: i64,
    p: Precision,
) -> Result<SubadditivityReport> {
    if height < 1 {
        return Err(Error::InvalidArgument(format!(
            "truncation height must be >= 1, got {height}"
        )));
    }
    let weights = dominant_weights_up_to(rs.rank(), height);
    let cache = CharacterCache::new(rs);
    let pairs: Vec<(&Weight, &Weight)> = weights
        .iter()
        .flat_map(|l| weights.iter().filter(move |m| l <= *m).map(move |m| (l, m)))
        .collect();
    let results: Vec<Vec<(SlackWitness, bool)>> = pairs
        .par_iter()
        .map(|(lambda, mu)| -> Result<Vec<(SlackWitness, bool)>> {
            let fusion = tensor_decompose_with(&cache, lambda, mu)?;
            let (cl, cm) = (rs.casimir(lambda)?, rs.casimir(mu)?);
            let rhs = p.sqrt_rational(&cl) + p.sqrt_rational(&cm);
            fusion
                .components()
                .keys()
                .map(|nu| {
                    let cn = rs.casimir(nu)?;
                    let violated = cmp_sqrt_sum(&cn, &cl, &cm) == std::cmp::Ordering::Greater;
                    let slack = rhs.clone() - p.sqrt_rational(&cn);
                    let w = SlackWitness {
                        lambda: (*lambda).clone(),
                        mu: (*mu).clone(),
                        nu: nu.clone(),
                        slack,
                    };
                    Ok((w, violated))
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    let mut triples_checked = 0;
    let mut violations = Vec::new();
    let mut min_slack: Option<SlackWitness> = None;
    for (w, violated) in results.into_iter().flatten() {
        triples_checked += 1;
        let nontrivial = !w.lambda.is_zero() && !w.mu.is_zero();
        if nontrivial && min_slack.as_ref().is_none_or(|m| w.slack < m.slack) {
            min_slack = Some(w.clone());
        }
        if violated {
            violations.push(w);
        }
    }
    Ok(SubadditivityReport {
        height,
        triples_checked,
        violations,
        min_slack: min_slack.expect("height >= 1 yields a nontrivial pair"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    fn rs(name: &str) -> RootSystem {
        RootSystem::new(&name.parse().unwrap()).unwrap()
    }

    #[test]
    fn eval_examples() {
        let a1 = rs("A1");
        let p = Precision::default();
        let beta = 3.0;
        let spec = CentralWeightSpec::beta_norm(beta).unwrap();
        for s2 in 0..6i64 {
            // μ = 2sϖ has |μ| = √2 s, so w(μ) = γ^{2s} with γ = β^{1/√2}
            let v = eval_weight(&a1, &spec, &[s2].into(), p).unwrap();
            let s = s2 as f64 / 2.0;
            let expected = beta.powf(2f64.sqrt() * s);
            assert!((v.value / expected - 1.0).abs() < 1e-13);
            let gamma = beta.powf(1.0 / 2f64.sqrt());
            assert!((gamma.powf(2.0 * s).ln() - real::to_f64(&v.log)).abs() < 1e-12);
        }
        let lst = CentralWeightSpec::lst(1.5).unwrap();
        let v = eval_weight(&a1, &lst, &[2].into(), p).unwrap();
        assert!((v.value - (1.5f64 * 2.0).exp()).abs() < 1e-12);
        for spec in [&spec, &lst] {
            let v = eval_weight(&a1, spec, &[0].into(), p).unwrap();
            assert_eq!(v.value, 1.0);
        }
        let low = CentralWeightSpec::beta_norm(0.5).unwrap();
        assert!(
            eval_weight(&a1, &low, &[1].into(), p)
                .unwrap()
                .out_of_domain
        );
    }

    #[test]
    fn table_errors() {
        let a1 = rs("A1");
        let t = CentralWeightSpec::table_from_json(r#"[{"mu":[1],"w":2.0}]"#, 1).unwrap();
        assert!(matches!(
            eval_weight(&a1, &t, &[2].into(), Precision::default()),
            Err(Error::MissingTableEntry(_))
        ));
        assert!(CentralWeightSpec::table_from_json(r#"[{"mu":[1],"w":-2.0}]"#, 1).is_err());
        assert!(CentralWeightSpec::table_from_json(r#"[{"mu":[1,0],"w":2.0}]"#, 1).is_err());
        assert!(CentralWeightSpec::table_from_json("not json", 1).is_err());
        assert!(CentralWeightSpec::lst(-1.0).is_err());
        assert!(CentralWeightSpec::beta_norm(0.0).is_err());
    }

    #[test]
    fn families_pass_small_heights() {
        let p = Precision::new(30);
        for name in ["A1", "A2"] {
            let r = rs(name);
            for spec in [
                CentralWeightSpec::beta_norm(1.0).unwrap(),
                CentralWeightSpec::beta_norm(2.0).unwrap(),
                CentralWeightSpec::lst(0.0).unwrap(),
                CentralWeightSpec::lst(2.0).unwrap(),
            ] {
                let report = validate_central_weight(&r, &spec, 3, p).unwrap();
                assert!(report.passed, "{name} {spec:?}: {:?}", report.violations);
                assert!(report.unit_normalized);
                assert_eq!(report.triples_skipped, 0);
            }
        }
    }

    #[test]
    fn squared_norm_table_violates_z2() {
        let a1 = rs("A1");
        let entries: BTreeMap<Weight, f64> = (0..=4i64)
            .map(|n| {
                let ns = rational((n * n) as i128, 2);
                (Weight::from([n]), 2f64.powf(ns.to_f64().value()))
            })
            .collect();
        let spec = CentralWeightSpec::table(entries).unwrap();
        let report = validate_central_weight(&a1, &spec, 2, Precision::default()).unwrap();
        assert!(!report.passed);
        let first = &report.violations[0];
        assert_eq!(first.condition, Condition::Z2);
        assert_eq!(
            first.witnesses,
            vec![Weight::from([1]), [1].into(), [2].into()]
        );
        // 2^2 > 2^{1/2} · 2^{1/2}
        assert!((real::to_f64(&first.lhs) - 2.0 * 2f64.ln()).abs() < 1e-12);
        assert!((real::to_f64(&first.rhs) - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn beta_below_one_fails_z1() {
        let a1 = rs("A1");
        let spec = CentralWeightSpec::beta_norm(0.5).unwrap();
        let report = validate_central_weight(&a1, &spec, 2, Precision::default()).unwrap();
        assert!(report
            .violations
            .iter()
            .any(|v| v.condition == Condition::Z1));
    }

    #[test]
    fn asymmetric_table_fails_sym() {
        let a2 = rs("A2");
        let json =
            r#"[{"mu":[0,0],"w":1},{"mu":[1,0],"w":2},{"mu":[0,1],"w":3},{"mu":[1,1],"w":6}]"#;
        let spec = CentralWeightSpec::table_from_json(json, 2).unwrap();
        let report = validate_central_weight(&a2, &spec, 1, Precision::default()).unwrap();
        let sym: Vec<_> = report
            .violations
            .iter()
            .filter(|v| v.condition == Condition::Sym)
            .collect();
        assert_eq!(sym.len(), 1);
        assert_eq!(sym[0].witnesses, vec![Weight::from([0, 1]), [1, 0].into()]);
        assert!(report.triples_skipped > 0);
    }

    #[test]
    fn subadditivity_a1() {
        let a1 = rs("A1");
        let report = casimir_subadditivity_check(&a1, 3, Precision::default()).unwrap();
        assert!(report.passed());
        // 2·(3/2)^{1/2} − 2 at λ = μ = ϖ, ν = 2ϖ
        let w = &report.min_slack;
        assert_eq!(
            (&w.lambda, &w.mu, &w.nu),
            (&Weight::from([1]), &Weight::from([1]), &Weight::from([2]))
        );
        assert!((real::to_f64(&w.slack) - (2.0 * 1.5f64.sqrt() - 2.0)).abs() < 1e-14);
        assert!(report.triples_checked > 0);
    }

    #[test]
    fn rejects_zero_height() {
        let a1 = rs("A1");
        let spec = CentralWeightSpec::lst(1.0).unwrap();
        assert!(validate_central_weight(&a1, &spec, 0, Precision::default()).is_err());
        assert!(casimir_subadditivity_check(&a1, 0, Precision::default()).is_err());
    }
}
