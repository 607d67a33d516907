//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the lines show up in plain `cargo test` output.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use qbf_core::bf_weights::{
    casimir_subadditivity_check, validate_central_weight, CentralWeightSpec, Condition,
};
use qbf_core::cb_region::{cb_extends, cb_region_enumerate, sup_ratio_scan, Beta};
use qbf_core::characters::character_product_decompose_with;
use qbf_core::exact::{is_positive_definite, rational};
use qbf_core::fusion::tensor_decompose_with;
use qbf_core::qnorm::{lminus_norm_exponent, rmatrix_spectrum, SessionConfig};
use qbf_core::real::{self, Precision};
use qbf_core::sl2_oracle::{build_sl2_rep, verify_norm_formula, Basis, RELATION_TOLERANCE};
use qbf_core::weight::dominant_weights_up_to;
use qbf_core::{CharacterCache, RootSystem, Weight};
use rayon::prelude::*;

struct Outcome {
    passed: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        passed: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        passed: false,
        detail: detail.into(),
    }
}

fn rs(name: &str) -> RootSystem {
    RootSystem::new(&name.parse().unwrap()).unwrap()
}

fn pairs(rank: usize, height: i64) -> Vec<(Weight, Weight)> {
    let ws = dominant_weights_up_to(rank, height);
    ws.iter()
        .flat_map(|l| ws.iter().map(move |m| (l.clone(), m.clone())))
        .collect()
}

/// Fusion sweep shared by criteria 2, 4 and 6.
const FUSION_SWEEP: &[(&str, i64)] = &[
    ("A1", 3),
    ("A2", 3),
    ("B2", 3),
    ("G2", 3),
    ("A3", 2),
    ("B3", 2),
];

fn criterion_1() -> Outcome {
    let expected: BTreeMap<&str, usize> = [
        ("A1", 1),
        ("A2", 3),
        ("A3", 6),
        ("B2", 4),
        ("B3", 9),
        ("C3", 9),
        ("D4", 12),
        ("G2", 6),
        ("F4", 24),
    ]
    .into_iter()
    .collect();
    for (name, count) in &expected {
        let r = rs(name);
        let shortest = r
            .positive_roots()
            .iter()
            .map(|a| r.norm_sq(a).unwrap())
            .min()
            .unwrap();
        if shortest != rational(2, 1) {
            return fail(format!("{name}: shortest root has (α,α) = {shortest}"));
        }
        if r.positive_roots().len() != *count {
            return fail(format!(
                "{name}: {} positive roots, expected {count}",
                r.positive_roots().len()
            ));
        }
        let g = r.gram();
        let symmetric = (0..g.len()).all(|i| (0..g.len()).all(|j| g[i][j] == g[j][i]));
        if !symmetric || !is_positive_definite(g) {
            return fail(format!(
                "{name}: gram matrix is not symmetric positive definite"
            ));
        }
    }
    pass(format!("{} types", expected.len()))
}

/// Components of every pair in the fusion sweep: (type, λ, μ, ν).
type Triples = Vec<(&'static str, Weight, Weight, Vec<Weight>)>;

fn criterion_2() -> (Outcome, Triples) {
    let mut triples = Vec::new();
    let mut mismatches = Vec::new();
    let mut count = 0;
    for &(name, h) in FUSION_SWEEP {
        let r = rs(name);
        let cache = CharacterCache::new(&r);
        let results: Vec<_> = pairs(r.rank(), h)
            .into_par_iter()
            .map(|(l, m)| {
                let f = tensor_decompose_with(&cache, &l, &m).unwrap();
                let oracle = character_product_decompose_with(&cache, &l, &m).unwrap();
                let dims_ok = f.total_dimension(&r).unwrap()
                    == r.weyl_dim(&l).unwrap() * r.weyl_dim(&m).unwrap();
                let ok = f.components() == oracle.components() && dims_ok;
                let nus: Vec<Weight> = f.components().keys().cloned().collect();
                (l, m, nus, ok)
            })
            .collect();
        for (l, m, nus, ok) in results {
            count += 1;
            if !ok {
                mismatches.push(format!("{name} {l}⊗{m}"));
            }
            triples.push((name, l, m, nus));
        }
    }
    let outcome = if mismatches.is_empty() {
        pass(format!("{count} pairs agree with the character oracle"))
    } else {
        fail(format!("mismatches: {}", mismatches.join(", ")))
    };
    (outcome, triples)
}

fn criterion_3() -> Outcome {
    let mut count = 0;
    for name in ["A1", "A2", "B2", "G2"] {
        let r = rs(name);
        let bad: Vec<String> = pairs(r.rank(), 4)
            .into_par_iter()
            .filter_map(|(l, m)| {
                let spectrum = rmatrix_spectrum(&r, &l, &m).unwrap();
                let closed = lminus_norm_exponent(&r, &l, &m).unwrap();
                let ok =
                    closed == spectrum.sup_exponent && spectrum.minimizer_is_cartan_component();
                (!ok).then(|| format!("{name} λ={l} μ={m}"))
            })
            .collect();
        if !bad.is_empty() {
            return fail(bad.join(", "));
        }
        count += dominant_weights_up_to(r.rank(), 4).len().pow(2);
    }
    pass(format!("{count} pairs, minimizer ν = λ+μ throughout"))
}

fn criterion_4(triples: &Triples) -> Outcome {
    let mut checked = 0;
    let systems: BTreeMap<&str, RootSystem> =
        FUSION_SWEEP.iter().map(|(n, _)| (*n, rs(n))).collect();
    for (name, l, m, nus) in triples {
        let r = &systems[name];
        let top = r.casimir(&(l + m)).unwrap();
        for nu in nus {
            checked += 1;
            if r.casimir(nu).unwrap() > top {
                return fail(format!("{name}: c({nu}) > c({l}+{m})"));
            }
        }
    }
    pass(format!("{checked} components, zero violations"))
}

fn criterion_5() -> Outcome {
    let p = Precision::default();
    let mut specs = Vec::new();
    for b in [1.0, 2.0, 10.0] {
        specs.push(CentralWeightSpec::beta_norm(b).unwrap());
    }
    for b in [0.0, 1.0, 3.0] {
        specs.push(CentralWeightSpec::lst(b).unwrap());
    }
    let mut triples = 0;
    for name in ["A1", "A2", "B2", "G2"] {
        let r = rs(name);
        for spec in &specs {
            let report = validate_central_weight(&r, spec, 4, p).unwrap();
            if !report.passed {
                return fail(format!(
                    "{name} {spec:?}: {} violations",
                    report.violations.len()
                ));
            }
            triples += report.triples_checked;
        }
    }
    let a1 = rs("A1");
    let table: BTreeMap<Weight, f64> = dominant_weights_up_to(1, 8)
        .into_iter()
        .map(|mu| {
            let w = 2f64.powf(a1.norm_sq(&mu).unwrap().to_f64().value());
            (mu, w)
        })
        .collect();
    let crafted = CentralWeightSpec::table(table).unwrap();
    let report = validate_central_weight(&a1, &crafted, 4, p).unwrap();
    let fund = Weight::from([1]);
    let witnessed = report
        .violations
        .iter()
        .any(|v| v.condition == Condition::Z2 && v.witnesses[0] == fund && v.witnesses[1] == fund);
    if !witnessed {
        return fail("2^{norm_sq} table: no Z2 violation at λ = μ = ϖ₁");
    }
    pass(format!(
        "{triples} Z2 triples clean across 6 weights; crafted table fails Z2 at λ = μ = ϖ₁"
    ))
}

fn criterion_6() -> Outcome {
    let p = Precision::new(50);
    let mut triples = 0;
    for &(name, h) in FUSION_SWEEP {
        let report = casimir_subadditivity_check(&rs(name), h, p).unwrap();
        if !report.passed() {
            return fail(format!("{name}: {} violations", report.violations.len()));
        }
        triples += report.triples_checked;
    }
    pass(format!("{triples} triples at 50 digits, zero violations"))
}

fn criterion_7() -> Outcome {
    let p = Precision::default();
    let a1 = rs("A1");
    let sqrt2 = p.from_int(2).sqrt();
    // SU(2) threshold q^{-s} ≤ γ on A1 with λ = 2sϖ and β = γ^{√2}
    for q in [0.3, 0.5, 0.9] {
        let cfg = SessionConfig::new(q, p).unwrap();
        for n in 0..=10i64 {
            let s = n as f64 / 2.0;
            let threshold = q.powf(-s);
            let lambda = Weight::from([n]);
            let mut grid: Vec<f64> = [1.0, 1.2, 1.5, 2.0, 3.0, 5.0, 10.0, 50.0, 1e3]
                .into_iter()
                .chain([threshold * (1.0 - 1e-9), threshold * (1.0 + 1e-9)])
                .filter(|b| *b >= 1.0)
                .collect();
            grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for gamma in grid {
                let beta = Beta::from_ln(p.ln_f64(gamma) * sqrt2.clone()).unwrap();
                let d = cb_extends(&a1, &cfg, &beta, &lambda).unwrap();
                if d.extends != (threshold <= gamma) {
                    return fail(format!("A1 q={q} s={s} γ={gamma}: extends = {}", d.extends));
                }
            }
            // exactly at the threshold, with log γ = s·log q⁻¹ carried in high precision
            let ln_gamma = cfg.ln_q_inv() * p.from_f64(s);
            let d = cb_extends(
                &a1,
                &cfg,
                &Beta::from_ln(ln_gamma * sqrt2.clone()).unwrap(),
                &lambda,
            )
            .unwrap();
            if !d.extends {
                return fail(format!("A1 q={q} s={s}: threshold itself does not extend"));
            }
        }
    }

    let a2 = rs("A2");
    let cfg = SessionConfig::new(0.5, p).unwrap();
    let region: Vec<Weight> = cb_region_enumerate(&a2, &cfg, &Beta::new(2.0, p).unwrap(), 3)
        .unwrap()
        .into_iter()
        .filter(|d| d.extends)
        .map(|d| d.lambda)
        .collect();
    let expected: Vec<Weight> = vec![[0, 0].into(), [0, 1].into(), [1, 0].into()];
    if region != expected {
        return fail(format!("A2 region is {region:?}"));
    }

    let mut scans = 0;
    for (name, q) in [("A1", 0.5), ("A2", 0.5)] {
        let r = rs(name);
        let cfg = SessionConfig::new(q, p).unwrap();
        for b in [1.0, 1.5, 2.0, 4.0, 8.0] {
            let beta = Beta::new(b, p).unwrap();
            let inconsistent: Vec<String> = dominant_weights_up_to(r.rank(), 3)
                .into_par_iter()
                .filter_map(|l| {
                    let d = cb_extends(&r, &cfg, &beta, &l).unwrap();
                    let scan = sup_ratio_scan(&r, &cfg, &beta, &l, 12).unwrap();
                    (!scan.consistent_with(&d)).then(|| format!("{name} β={b} λ={l}"))
                })
                .collect();
            if !inconsistent.is_empty() {
                return fail(format!("ratio scan disagrees: {}", inconsistent.join(", ")));
            }
            scans += dominant_weights_up_to(r.rank(), 3).len();
        }
    }

    let types = ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"];
    for name in types {
        let r = rs(name);
        for q in [0.3, 0.5, 0.9] {
            let cfg = SessionConfig::new(q, p).unwrap();
            let decisions = cb_region_enumerate(&r, &cfg, &Beta::new(1.0, p).unwrap(), 2).unwrap();
            if decisions.iter().any(|d| d.extends != d.lambda.is_zero()) {
                return fail(format!("{name} q={q}: β = 1 admits a nonzero λ"));
            }
        }
    }
    pass(format!(
        "threshold reproduced on A1 for s ≤ 5; A2 region exact; {scans} ratio scans consistent; β = 1 trivial on {} types",
        types.len()
    ))
}

fn criterion_8() -> Outcome {
    let p = Precision::default();
    for q in [0.3, 0.5, 0.9] {
        for n in 0..=8 {
            let v = build_sl2_rep(q, n, Basis::Unitary, p).unwrap();
            let res = real::to_f64(&v.relation_residuals(p).max());
            if res >= RELATION_TOLERANCE {
                return fail(format!("relation residual {res:e} at q={q} n={n}"));
            }
        }
    }
    let cases: Vec<(f64, u32, u32)> = [0.3, 0.5, 0.9]
        .into_iter()
        .flat_map(|q| (0..=6).flat_map(move |m| (0..=6).map(move |n| (q, m, n))))
        .collect();
    let worst = cases
        .par_iter()
        .map(|&(q, m, n)| {
            let r = verify_norm_formula(q, m, n, 1e-8, p).unwrap();
            let expected = q.powf(-((m * n) as f64) / 2.0);
            let direct = (real::to_f64(&r.sqrt_lambda_max) / expected - 1.0).abs();
            let eig = r
                .eigenvalues
                .iter()
                .map(|e| e.rel_error)
                .fold(0.0, f64::max);
            (
                r.passed() && direct <= 1e-8,
                eig.max(r.norm_rel_error),
                (q, m, n),
                r.failures,
            )
        })
        .collect::<Vec<_>>();
    if let Some((_, _, case, failures)) = worst.iter().find(|w| !w.0) {
        return fail(format!("{case:?}: {failures:?}"));
    }
    let max_err = worst.iter().map(|w| w.1).fold(0.0, f64::max);
    pass(format!(
        "{} blocks, worst relative error {max_err:.1e}",
        cases.len()
    ))
}

fn criterion_9() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_qbf");
    let table = std::env::temp_dir().join(format!("qbf-acceptance-{}.json", std::process::id()));
    std::fs::write(
        &table,
        r#"[{"mu":[0],"w":1},{"mu":[1],"w":2},{"mu":[2],"w":4}]"#,
    )
    .unwrap();
    let table = table.to_string_lossy().into_owned();
    let invocations: Vec<Vec<&str>> = vec![
        vec![
            "fusion", "--type", "G2", "--lambda", "1,0", "--mu", "1,1", "--check",
        ],
        vec!["character", "--type", "B3", "--mu", "1,0,1", "--full"],
        vec![
            "verify-weight",
            "--type",
            "A2",
            "--kind",
            "lst",
            "--beta",
            "1",
            "--height",
            "3",
        ],
        vec![
            "verify-weight",
            "--type",
            "A1",
            "--kind",
            "table",
            "--table",
            &table,
            "--height",
            "2",
        ],
        vec![
            "norm", "--type", "B2", "--lambda", "1,2", "--mu", "2,1", "--q", "0.3",
        ],
        vec![
            "cb-region",
            "--type",
            "A2",
            "--q",
            "0.5",
            "--beta",
            "2",
            "--height",
            "6",
            "--scan-height",
            "6",
        ],
        vec![
            "cb-region",
            "--type",
            "G2",
            "--q",
            "0.7",
            "--beta",
            "3",
            "--height",
            "4",
            "--format",
            "csv",
        ],
        vec![
            "cb-region",
            "--type",
            "A1",
            "--q",
            "0.5",
            "--beta",
            "4",
            "--height",
            "4",
            "--format",
            "table",
        ],
        vec![
            "oracle-sl2",
            "--q",
            "0.5",
            "--m",
            "2",
            "--n",
            "3",
            "--tol",
            "1e-8",
        ],
        vec!["casimir-check", "--type", "B2", "--height", "2"],
    ];
    for args in &invocations {
        let run = || Command::new(bin).args(args).output().unwrap();
        let (a, b) = (run(), run());
        if a.stdout != b.stdout || a.stderr != b.stderr || a.status.code() != b.status.code() {
            return fail(format!("`qbf {}` is not reproducible", args.join(" ")));
        }
        if a.stdout.is_empty() {
            return fail(format!("`qbf {}` printed nothing", args.join(" ")));
        }
    }
    let _ = std::fs::remove_file(&table);
    pass(format!(
        "{} invocations byte-identical across runs",
        invocations.len()
    ))
}

fn report(
    index: usize,
    name: &str,
    budget: Option<Duration>,
    run: impl FnOnce() -> Outcome,
) -> bool {
    let start = Instant::now();
    let outcome = run();
    let elapsed = start.elapsed();
    let in_budget = budget.is_none_or(|b| elapsed <= b);
    let passed = outcome.passed && in_budget;
    let budget_note = budget.map_or(String::new(), |b| format!(" (budget {}s)", b.as_secs()));
    println!(
        "criterion {index} [{}] {name}: {} in {:.2}s{budget_note}",
        if passed { "PASS" } else { "FAIL" },
        outcome.detail,
        elapsed.as_secs_f64()
    );
    passed
}

fn main() {
    let mut results = Vec::new();
    results.push(report(
        1,
        "normalization and geometry",
        Some(Duration::from_secs(5)),
        criterion_1,
    ));
    let mut triples = Vec::new();
    results.push(report(
        2,
        "fusion correctness",
        Some(Duration::from_secs(60)),
        || {
            let (o, t) = criterion_2();
            triples = t;
            o
        },
    ));
    results.push(report(
        3,
        "norm-formula identity",
        Some(Duration::from_secs(60)),
        criterion_3,
    ));
    results.push(report(4, "inequality chain", None, || {
        criterion_4(&triples)
    }));
    results.push(report(
        5,
        "central-weight validation",
        Some(Duration::from_secs(120)),
        criterion_5,
    ));
    results.push(report(6, "Casimir subadditivity", None, criterion_6));
    results.push(report(7, "CB extension region", None, criterion_7));
    results.push(report(
        8,
        "sl2 oracle",
        Some(Duration::from_secs(30)),
        criterion_8,
    ));
    results.push(report(9, "determinism", None, criterion_9));
    let failed = results.iter().filter(|r| !**r).count();
    println!(
        "acceptance: {} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
