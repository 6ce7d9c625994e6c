//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fail.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{check_simulator_invariants, sim_case, synthetic_records};
use pdp_qaoa::bits::index_to_bitstring;
use pdp_qaoa::experiment::{
    build_energy_table, probabilities_of, run_single, top_strings, Instance, RunConfig,
};
use pdp_qaoa::optimizer::{init_angles, minimize, OptimizerConfig, Termination};
use pdp_qaoa::oracle::{
    approximation_ratio, brute_force_ground_states, brute_force_optimal_pds, check_pds,
};
use pdp_qaoa::qaoa::{qaoa_objective, ObjectiveMode};
use pdp_qaoa::qubo::build_pdp_qubo;
use pdp_qaoa::report::{report, top_fraction, top_fraction_param_distribution, Param};
use pdp_qaoa::sweep::{run_sweep, SweepConfig};
use pdp_qaoa::Graph;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($fmt)+));
        }
    };
}

const P1_MULTS: [f64; 7] = [0.8, 1.0, 1.2, 1.4, 1.6, 1.8, 2.0];
const RATES: [f64; 4] = [0.3, 0.5, 0.7, 1.0];

fn qubit_count() -> Outcome {
    let g = Graph::six_vertex_instance();
    let started = Instant::now();
    let model = build_pdp_qubo(&g, 7.2, 7.2).map_err(|e| e.to_string())?;
    let elapsed = started.elapsed();
    let reg = model.registry();
    ensure!(
        (reg.len(), reg.n_decision(), reg.n_slack()) == (14, 6, 8),
        "registry {} = {} + {}",
        reg.len(),
        reg.n_decision(),
        reg.n_slack()
    );
    ensure!(elapsed < Duration::from_millis(1), "took {elapsed:?}");
    Ok(format!(
        "14 variables (6 decision + 8 slack) in {elapsed:?}"
    ))
}

/// Hand expansion of the six-vertex model: `(term, P₁ coeff, P₂ coeff, constant)`.
/// Variables 6..13 are the slack bits of vertices 1, 2, 3, 4 in order.
#[rustfmt::skip]
const GOLDEN: &[(&[usize], f64, f64, f64)] = &[
    (&[], 6.0, -6.0, 0.0),
    (&[0], -2.0, 2.0, 1.0), (&[1], -4.0, 4.0, 1.0), (&[2], -3.0, 3.0, 1.0),
    (&[3], -3.0, 3.0, 1.0), (&[4], -4.0, 4.0, 1.0), (&[5], -2.0, 2.0, 1.0),
    (&[6], 3.0, 0.0, 0.0), (&[7], 8.0, 0.0, 0.0), (&[8], 3.0, 0.0, 0.0), (&[9], 3.0, 0.0, 0.0),
    (&[10], 3.0, 0.0, 0.0), (&[11], 3.0, 0.0, 0.0), (&[12], 3.0, 0.0, 0.0), (&[13], 8.0, 0.0, 0.0),
    (&[0, 1], 3.0, -2.0, 0.0), (&[1, 2], 4.0, -2.0, 0.0), (&[1, 3], 4.0, -2.0, 0.0),
    (&[2, 4], 4.0, -2.0, 0.0), (&[3, 4], 4.0, -2.0, 0.0), (&[4, 5], 3.0, -2.0, 0.0),
    (&[0, 2], 2.0, 0.0, 0.0), (&[0, 3], 2.0, 0.0, 0.0), (&[0, 6], -2.0, 0.0, 0.0), (&[0, 7], -4.0, 0.0, 0.0),
    (&[1, 4], 4.0, 0.0, 0.0), (&[1, 6], -2.0, 0.0, 0.0), (&[1, 7], -4.0, 0.0, 0.0),
    (&[1, 8], -2.0, 0.0, 0.0), (&[1, 9], -2.0, 0.0, 0.0), (&[1, 10], -2.0, 0.0, 0.0), (&[1, 11], -2.0, 0.0, 0.0),
    (&[2, 3], 4.0, 0.0, 0.0), (&[2, 5], 2.0, 0.0, 0.0), (&[2, 6], -2.0, 0.0, 0.0), (&[2, 7], -4.0, 0.0, 0.0),
    (&[2, 8], -2.0, 0.0, 0.0), (&[2, 9], -2.0, 0.0, 0.0), (&[2, 12], -2.0, 0.0, 0.0), (&[2, 13], -4.0, 0.0, 0.0),
    (&[3, 5], 2.0, 0.0, 0.0), (&[3, 6], -2.0, 0.0, 0.0), (&[3, 7], -4.0, 0.0, 0.0),
    (&[3, 10], -2.0, 0.0, 0.0), (&[3, 11], -2.0, 0.0, 0.0), (&[3, 12], -2.0, 0.0, 0.0), (&[3, 13], -4.0, 0.0, 0.0),
    (&[4, 8], -2.0, 0.0, 0.0), (&[4, 9], -2.0, 0.0, 0.0), (&[4, 10], -2.0, 0.0, 0.0),
    (&[4, 11], -2.0, 0.0, 0.0), (&[4, 12], -2.0, 0.0, 0.0), (&[4, 13], -4.0, 0.0, 0.0),
    (&[5, 12], -2.0, 0.0, 0.0), (&[5, 13], -4.0, 0.0, 0.0),
    (&[6, 7], 4.0, 0.0, 0.0), (&[8, 9], 2.0, 0.0, 0.0), (&[10, 11], 2.0, 0.0, 0.0), (&[12, 13], 4.0, 0.0, 0.0),
];

fn golden_qubo() -> Outcome {
    let g = Graph::six_vertex_instance();
    let mut checked = 0;
    for (p1, p2) in [(7.2, 7.2), (12.0, 3.6), (4.8, 1.44)] {
        let model = build_pdp_qubo(&g, p1, p2).map_err(|e| e.to_string())?;
        let mut expected_lin = BTreeMap::new();
        let mut expected_quad = BTreeMap::new();
        let mut expected_offset = 0.0;
        for &(term, a, b, c) in GOLDEN {
            let v = a * p1 + b * p2 + c;
            match *term {
                [] => expected_offset = v,
                [i] => {
                    expected_lin.insert(i, v);
                }
                [i, j] => {
                    expected_quad.insert((i, j), v);
                }
                _ => unreachable!(),
            }
        }
        ensure!(
            (model.offset() - expected_offset).abs() < 1e-12,
            "offset {} vs {expected_offset} at ({p1}, {p2})",
            model.offset()
        );
        for key in model.linear().keys().chain(expected_lin.keys()) {
            let got = model.linear().get(key).copied().unwrap_or(0.0);
            let want = expected_lin.get(key).copied().unwrap_or(0.0);
            ensure!(
                (got - want).abs() < 1e-12,
                "x{key}: {got} vs {want} at ({p1}, {p2})"
            );
            checked += 1;
        }
        for key in model.quadratic().keys().chain(expected_quad.keys()) {
            let got = model.quadratic().get(key).copied().unwrap_or(0.0);
            let want = expected_quad.get(key).copied().unwrap_or(0.0);
            ensure!(
                (got - want).abs() < 1e-12,
                "{key:?}: {got} vs {want} at ({p1}, {p2})"
            );
            checked += 1;
        }
    }
    Ok(format!(
        "{} golden terms match at 3 penalty pairs ({checked} comparisons)",
        GOLDEN.len()
    ))
}

fn oracle_ground_truth() -> Outcome {
    let g = Graph::six_vertex_instance();
    let opt = brute_force_optimal_pds(&g).map_err(|e| e.to_string())?;
    ensure!(opt.size == 2, "size {}", opt.size);
    ensure!(
        opt.sets == vec![vec![0, 4], vec![1, 5]],
        "sets {:?}",
        opt.sets
    );
    let v = check_pds(&g, &[1, 4]).map_err(|e| e.to_string())?;
    ensure!(v.is_ds && !v.is_pds, "{{1,4}}: {v:?}");
    Ok("optimum {0,4} and {1,5}; {1,4} is a DS but not a PDS".into())
}

fn encoding_soundness() -> Outcome {
    let g = Graph::six_vertex_instance();
    let n = g.vertex_count();
    let started = Instant::now();
    let expected: Vec<String> = vec!["100010".into(), "010001".into()];
    let mut bad = Vec::new();
    for &mult in &P1_MULTS {
        for &rate in &RATES {
            let p1 = mult * n as f64;
            let table = build_energy_table(&g, p1, rate * p1).map_err(|e| e.to_string())?;
            let (min, argmin) = brute_force_ground_states(&table);
            let mut decisions: Vec<String> = argmin
                .iter()
                .map(|&i| index_to_bitstring(i as u64, 14)[..n].to_owned())
                .collect();
            decisions.sort();
            decisions.dedup();
            let slacks_zero = argmin.iter().all(|&i| i >> n == 0);
            let mut want = expected.clone();
            want.sort();
            if decisions != want || (min - 2.0).abs() > 1e-9 || !slacks_zero {
                bad.push(format!(
                    "P1={p1:.1},P2={:.2}: min {:.3} at {decisions:?}",
                    rate * p1,
                    min + 0.0
                ));
            }
        }
    }
    let elapsed = started.elapsed();
    ensure!(
        bad.is_empty(),
        "{}/28 points wrong: {}",
        bad.len(),
        bad.join("; ")
    );
    ensure!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    Ok(format!("28/28 penalty points, {elapsed:?}"))
}

fn simulator_invariants() -> Outcome {
    let started = Instant::now();
    let mut runner = TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&sim_case(), |case| check_simulator_invariants(&case))
        .map_err(|e| e.to_string())?;
    let elapsed = started.elapsed();
    ensure!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    Ok(format!("1000 random circuits, {elapsed:?}"))
}

fn optimizer_sanity() -> Outcome {
    let bowl =
        |x: &[f64]| -> pdp_qaoa::Result<f64> { Ok(x.iter().map(|v| (v - 1.0) * (v - 1.0)).sum()) };
    let cfg = OptimizerConfig {
        max_evals: 500,
        ..Default::default()
    };
    for dim in [2, 4] {
        let t = minimize(bowl, &vec![0.0; dim], &cfg).map_err(|e| e.to_string())?;
        ensure!(t.best_value < 1e-6, "bowl dim {dim}: {}", t.best_value);
        ensure!(t.n_evals <= 500, "bowl dim {dim}: {} evals", t.n_evals);
    }

    let g = Graph::six_vertex_instance();
    let table = build_energy_table(&g, 7.2, 7.2).map_err(|e| e.to_string())?;
    let x0 = init_angles(1, 0.5).map_err(|e| e.to_string())?.to_flat();
    let cfg = OptimizerConfig {
        max_evals: 100,
        seed: 3,
        ..Default::default()
    };
    let run = || {
        minimize(
            |x| qaoa_objective(&table, x, ObjectiveMode::Exact),
            &x0,
            &cfg,
        )
    };
    let a = run().map_err(|e| e.to_string())?;
    let b = run().map_err(|e| e.to_string())?;
    ensure!(
        a.evaluations == b.evaluations,
        "trace differs between identical runs"
    );
    ensure!(
        a.terminated_by == Termination::Tolerance && a.n_evals < 100,
        "no plateau: {:?} after {} evals",
        a.terminated_by,
        a.n_evals
    );
    Ok(format!(
        "bowl < 1e-6; traces repeat; instance plateaus at eval {} of {}",
        a.plateau_index(cfg.f_tol),
        a.n_evals
    ))
}

fn end_to_end() -> Outcome {
    let instance = Instance::new(Graph::six_vertex_instance()).map_err(|e| e.to_string())?;
    let baseline = 2.0 / 64.0;
    let mut hits = 0;
    let mut lines = Vec::new();
    for seed in 0..5 {
        let cfg = RunConfig {
            seed,
            ..Default::default()
        };
        let out = run_single(&instance, &cfg).map_err(|e| e.to_string())?;
        let top = top_strings(&out, 5);
        let both = top.contains(&"100010") && top.contains(&"010001");
        let combined: f64 = probabilities_of(&out, &["100010", "010001"]).values().sum();
        if both && combined > baseline {
            hits += 1;
        }
        lines.push(format!("seed {seed}: top5 {top:?}, p = {combined:.4}"));
    }
    ensure!(
        hits >= 3,
        "{hits}/5 runs (baseline {baseline:.4}): {}",
        lines.join("; ")
    );
    Ok(format!("{hits}/5 runs rank both optima in the top 5"))
}

fn sweep_scale() -> Outcome {
    let instance = Instance::new(Graph::six_vertex_instance()).map_err(|e| e.to_string())?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let started = Instant::now();
    let records = run_sweep(&instance, &SweepConfig::full_grid(), Some(dir.path()))
        .map_err(|e| e.to_string())?;
    let elapsed = started.elapsed();
    ensure!(records.len() == 420, "{} records", records.len());
    ensure!(elapsed < Duration::from_secs(2 * 3600), "took {elapsed:?}");
    let bundle = report(&records, 0.2).map_err(|e| e.to_string())?;
    let max_at = |q: usize| {
        records
            .iter()
            .filter(|r| r.q == q)
            .filter_map(|r| r.ratio)
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let (r1, r5) = (max_at(1), max_at(5));
    let summary = format!(
        "{}; max ratio q=1 {r1:.3}, q=5 {r5:.3}; {elapsed:.1?}",
        bundle.headline()
    );
    ensure!(bundle.n_opt >= 1, "no optimal z*: {summary}");
    ensure!(bundle.n_pds >= 10, "too few PDS: {summary}");
    ensure!(r5 >= r1 - 0.05, "ratio trend reversed: {summary}");
    let selected = top_fraction(&records, 0.2)
        .map_err(|e| e.to_string())?
        .len();
    ensure!(selected == 84, "top fifth selected {selected}");
    Ok(summary)
}

fn ratio_arithmetic() -> Outcome {
    let g = Graph::six_vertex_instance();
    let counts = |e: &[(&str, u64)]| -> BTreeMap<String, u64> {
        e.iter().map(|&(s, c)| (s.to_owned(), c)).collect()
    };
    let r = approximation_ratio(&counts(&[("100010", 50), ("010001", 50)]), &g, 2)
        .map_err(|e| e.to_string())?;
    ensure!(
        (r.ratio - 1.0).abs() < 1e-12,
        "optimal-only ratio {}",
        r.ratio
    );
    let r = approximation_ratio(&counts(&[("100010", 50), ("111111", 50)]), &g, 2)
        .map_err(|e| e.to_string())?;
    ensure!((r.ratio - 0.5).abs() < 1e-12, "mixed ratio {}", r.ratio);
    let r = approximation_ratio(
        &counts(&[("100010", 30), ("011110", 10), ("110000", 60)]),
        &g,
        2,
    )
    .map_err(|e| e.to_string())?;
    // valid: 30 × 2 + 10 × 4 over 40 samples
    ensure!((r.ratio - 0.8).abs() < 1e-12, "partial ratio {}", r.ratio);
    ensure!(
        matches!(
            approximation_ratio(&counts(&[("010100", 100)]), &g, 2),
            Err(pdp_qaoa::Error::UndefinedRatio)
        ),
        "no error without valid samples"
    );
    Ok("1.0, 0.5, 0.8 and the undefined case".into())
}

fn report_mechanics() -> Outcome {
    let records = synthetic_records();
    let top = top_fraction(&records, 0.2).map_err(|e| e.to_string())?;
    ensure!(top.len() == 84, "selected {}", top.len());
    for p in Param::ALL {
        let table = top_fraction_param_distribution(&records, 0.2, p).map_err(|e| e.to_string())?;
        let total: usize = table.iter().map(|(_, c)| c).sum();
        ensure!(total == 84, "{} table sums to {total}", p.name());
    }
    Ok("84 of 420 selected; every axis table sums to 84".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("qubit count", qubit_count),
        ("golden QUBO", golden_qubo),
        ("oracle ground truth", oracle_ground_truth),
        ("encoding soundness", encoding_soundness),
        ("simulator invariants", simulator_invariants),
        ("optimizer sanity", optimizer_sanity),
        ("end-to-end enhancement", end_to_end),
        ("sweep scale", sweep_scale),
        ("ratio arithmetic", ratio_arithmetic),
        ("report mechanics", report_mechanics),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_owned()));
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
