//! One end-to-end solve: graph → QUBO → Ising → energy table → optimized
//! QAOA angles → sampled distribution → metrics.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bits::bitstring_to_set;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ising::{diagonal_energies, qubo_to_ising, EnergyTable};
use crate::optimizer::{init_angles, minimize, OptTrace, OptimizerConfig};
use crate::oracle::{
    approximation_ratio_with, brute_force_optimal_pds, check_bitstring, OptimalPds,
    RatioDenominator,
};
use crate::qaoa::{
    marginal_counts, marginal_decision_distribution, qaoa_objective, run_circuit, ObjectiveMode,
    QaoaAngles,
};
use crate::qubo::build_pdp_qubo;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub q: usize,
    /// `P₁ = p1_mult·|V|`.
    pub p1_mult: f64,
    /// `P₂ = rate·P₁`.
    pub rate: f64,
    pub max_evals: usize,
    pub shots: u64,
    pub seed: u64,
    /// Scale of the linear-ramp initial angles.
    pub delta: f64,
    pub f_tol: f64,
    pub initial_step: f64,
    pub objective: ObjectiveMode,
    pub ratio_denominator: RatioDenominator,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            q: 1,
            p1_mult: 1.2,
            rate: 1.0,
            max_evals: 100,
            shots: 10_000,
            seed: 0,
            delta: 0.5,
            f_tol: 1e-6,
            initial_step: OptimizerConfig::default().initial_step,
            objective: ObjectiveMode::Exact,
            ratio_denominator: RatioDenominator::ValidSamples,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_owned()));
        if self.q < 1 {
            return bad("q must be >= 1");
        }
        if !(self.p1_mult > 0.0 && self.p1_mult.is_finite()) {
            return bad("p1 multiplier must be positive");
        }
        if !(self.rate > 0.0 && self.rate <= 1.0) {
            return bad("rate must lie in (0, 1]");
        }
        if self.max_evals < 1 {
            return bad("max_evals must be >= 1");
        }
        if self.shots < 1 {
            return bad("shots must be >= 1");
        }
        if [self.delta, self.f_tol]
            .iter()
            .any(|v| v.is_nan() || *v <= 0.0)
        {
            return bad("delta and f_tol must be positive");
        }
        Ok(())
    }

    pub fn penalties(&self, g: &Graph) -> (f64, f64) {
        let p1 = self.p1_mult * g.vertex_count() as f64;
        (p1, self.rate * p1)
    }

    /// Artifact file stem, unique within a sweep.
    pub fn run_id(&self) -> String {
        format!(
            "q{}_p{}_r{}_m{}_s{}",
            self.q, self.p1_mult, self.rate, self.max_evals, self.seed
        )
    }
}

/// One row of `records.csv`. Field order is the column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub q: usize,
    pub p1_mult: f64,
    pub p1: f64,
    pub rate: f64,
    pub p2: f64,
    pub max_evals: usize,
    pub seed: u64,
    pub best_cost: f64,
    pub n_evals: usize,
    pub z_star: String,
    pub z_star_prob: f64,
    pub is_ds: bool,
    pub is_pds: bool,
    pub is_opt: bool,
    pub ratio: Option<f64>,
    pub n_valid_samples: u64,
    pub shots: u64,
    pub wall_ms: u64,
}

impl SweepRecord {
    /// Same record with the timing column cleared, for reproducibility checks.
    pub fn metrics_only(&self) -> Self {
        Self {
            wall_ms: 0,
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistributionRow {
    pub bitstring: String,
    /// Exact marginal probability under the final state.
    pub probability: f64,
    /// Sampled count.
    pub count: u64,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub record: SweepRecord,
    pub best_angles: QaoaAngles,
    pub trace: OptTrace,
    /// Decision-bit marginal, probability descending.
    pub distribution: Vec<DistributionRow>,
}

impl RunOutcome {
    /// `bitstring<TAB>probability<TAB>count`, probability descending.
    pub fn write_distribution<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "bitstring\tprobability\tcount")?;
        for row in &self.distribution {
            writeln!(w, "{}\t{}\t{}", row.bitstring, row.probability, row.count)?;
        }
        Ok(())
    }

    /// Writes `dist_<id>.tsv` and `trace_<id>.csv` into `dir`.
    pub fn write_artifacts(&self, dir: &Path, id: &str) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        let dist = std::fs::File::create(dir.join(format!("dist_{id}.tsv")))?;
        self.write_distribution(std::io::BufWriter::new(dist))?;
        let trace = std::fs::File::create(dir.join(format!("trace_{id}.csv")))?;
        self.trace.write_csv(std::io::BufWriter::new(trace))?;
        Ok(())
    }
}

/// Graph plus its exhaustive optimum, shared by every run on that graph.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub optimum: OptimalPds,
}

impl Instance {
    pub fn new(graph: Graph) -> Result<Self> {
        let optimum = brute_force_optimal_pds(&graph).map_err(Error::at("oracle"))?;
        Ok(Self { graph, optimum })
    }
}

pub fn build_energy_table(g: &Graph, p1: f64, p2: f64) -> Result<EnergyTable> {
    let model = build_pdp_qubo(g, p1, p2).map_err(Error::at("qubo"))?;
    diagonal_energies(&qubo_to_ising(&model)).map_err(Error::at("hamiltonian"))
}

pub fn run_single(instance: &Instance, config: &RunConfig) -> Result<RunOutcome> {
    config.validate()?;
    let started = Instant::now();
    let g = &instance.graph;
    let n_decision = g.vertex_count();
    let (p1, p2) = config.penalties(g);
    let table = build_energy_table(g, p1, p2)?;

    let x0 = init_angles(config.q, config.delta)
        .map_err(Error::at("init"))?
        .to_flat();
    let opt_config = OptimizerConfig {
        max_evals: config.max_evals,
        f_tol: config.f_tol,
        seed: config.seed,
        initial_step: config.initial_step,
        ..Default::default()
    };
    let trace = minimize(
        |x| qaoa_objective(&table, x, config.objective),
        &x0,
        &opt_config,
    )
    .map_err(Error::at("optimize"))?;

    let best_angles = QaoaAngles::from_flat(&trace.best_params)?;
    let state = run_circuit(&table, &best_angles).map_err(Error::at("circuit"))?;
    let full_counts = state
        .sample(config.shots, config.seed)
        .map_err(Error::at("sample"))?;
    let counts = marginal_counts(&full_counts, n_decision)?;
    let exact = marginal_decision_distribution(&state.probabilities(), n_decision)?;

    // argmax count; ties go to the lexicographically smallest string
    let (z_star, z_count) = counts
        .iter()
        .fold(None::<(&String, u64)>, |best, (s, &c)| match best {
            Some((_, bc)) if bc >= c => best,
            _ => Some((s, c)),
        })
        .map(|(s, c)| (s.clone(), c))
        .expect("shots >= 1");
    let verdict = check_bitstring(g, &z_star).map_err(Error::at("metrics"))?;
    let is_opt = verdict.is_pds && instance.optimum.contains(&bitstring_to_set(&z_star)?);

    let ratio =
        match approximation_ratio_with(&counts, g, instance.optimum.size, config.ratio_denominator)
        {
            Ok(r) => Some(r),
            Err(Error::UndefinedRatio) => None,
            Err(e) => return Err(Error::at("metrics")(e)),
        };

    let mut distribution: Vec<DistributionRow> = exact
        .into_iter()
        .map(|(bitstring, probability)| DistributionRow {
            count: counts.get(&bitstring).copied().unwrap_or(0),
            bitstring,
            probability,
        })
        .collect();
    distribution.sort_by(|a, b| {
        b.probability
            .total_cmp(&a.probability)
            .then_with(|| a.bitstring.cmp(&b.bitstring))
    });

    let record = SweepRecord {
        q: config.q,
        p1_mult: config.p1_mult,
        p1,
        rate: config.rate,
        p2,
        max_evals: config.max_evals,
        seed: config.seed,
        best_cost: trace.best_value,
        n_evals: trace.n_evals,
        z_star,
        z_star_prob: z_count as f64 / config.shots as f64,
        is_ds: verdict.is_ds,
        is_pds: verdict.is_pds,
        is_opt,
        ratio: ratio.map(|r| r.ratio),
        n_valid_samples: ratio.map_or(0, |r| r.n_valid_samples),
        shots: config.shots,
        wall_ms: started.elapsed().as_millis() as u64,
    };
    Ok(RunOutcome {
        record,
        best_angles,
        trace,
        distribution,
    })
}

/// The `k` most probable decision strings under the exact marginal.
pub fn top_strings(outcome: &RunOutcome, k: usize) -> Vec<&str> {
    outcome
        .distribution
        .iter()
        .take(k)
        .map(|r| r.bitstring.as_str())
        .collect()
}

/// Probabilities of specific decision strings under the exact marginal.
pub fn probabilities_of(outcome: &RunOutcome, strings: &[&str]) -> BTreeMap<String, f64> {
    strings
        .iter()
        .map(|s| {
            let p = outcome
                .distribution
                .iter()
                .find(|r| r.bitstring == *s)
                .map_or(0.0, |r| r.probability);
            (s.to_string(), p)
        })
        .collect()
}
