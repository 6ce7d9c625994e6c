//! Grid sweeps over layers, penalties and evaluation budgets.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiment::{run_single, Instance, RunConfig, SweepRecord};
use crate::report::{layer_summary, write_layer_summary};

fn default_seeds() -> Vec<u64> {
    vec![0]
}
fn default_shots() -> u64 {
    10_000
}
fn default_delta() -> f64 {
    0.5
}
fn default_f_tol() -> f64 {
    1e-6
}

/// Sweep axes and shared run settings, as read from the JSON config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub q: Vec<usize>,
    pub p1_multipliers: Vec<f64>,
    pub rates: Vec<f64>,
    pub max_evals: Vec<usize>,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    #[serde(default = "default_shots")]
    pub shots: u64,
    #[serde(default = "default_delta")]
    pub delta: f64,
    #[serde(default = "default_f_tol")]
    pub f_tol: f64,
}

impl SweepConfig {
    /// The 3 × 7 × 4 × 5 = 420-point grid.
    pub fn full_grid() -> Self {
        Self {
            q: vec![1, 2, 5],
            p1_multipliers: vec![0.8, 1.0, 1.2, 1.4, 1.6, 1.8, 2.0],
            rates: vec![0.3, 0.5, 0.7, 1.0],
            max_evals: vec![100, 200, 500, 1000, 10000],
            seeds: default_seeds(),
            shots: default_shots(),
            delta: default_delta(),
            f_tol: default_f_tol(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.q.is_empty()
            || self.p1_multipliers.is_empty()
            || self.rates.is_empty()
            || self.max_evals.is_empty()
            || self.seeds.is_empty()
        {
            return Err(Error::InvalidConfig(
                "every sweep axis needs at least one value".into(),
            ));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.q.len()
            * self.p1_multipliers.len()
            * self.rates.len()
            * self.max_evals.len()
            * self.seeds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Run configs in grid order: q, then P₁ multiplier, rate, budget, seed.
    pub fn points(&self) -> Vec<RunConfig> {
        let mut out = Vec::with_capacity(self.len());
        for &q in &self.q {
            for &p1_mult in &self.p1_multipliers {
                for &rate in &self.rates {
                    for &max_evals in &self.max_evals {
                        for &seed in &self.seeds {
                            out.push(RunConfig {
                                q,
                                p1_mult,
                                rate,
                                max_evals,
                                seed,
                                shots: self.shots,
                                delta: self.delta,
                                f_tol: self.f_tol,
                                ..Default::default()
                            });
                        }
                    }
                }
            }
        }
        out
    }
}

/// Runs every grid point. With `out_dir`, `records.csv` is appended in grid
/// order as batches finish, per-run artifacts are written alongside, and
/// `summary.csv` holds the per-layer ratio summary.
pub fn run_sweep(
    instance: &Instance,
    config: &SweepConfig,
    out_dir: Option<&Path>,
) -> Result<Vec<SweepRecord>> {
    config.validate()?;
    let points = config.points();

    let mut writer = match out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let file = File::create(dir.join("records.csv"))?;
            Some(csv::Writer::from_writer(file))
        }
        None => None,
    };

    let batch = (rayon::current_num_threads() * 2).max(1);
    let mut records = Vec::with_capacity(points.len());
    for chunk in points.chunks(batch) {
        let results: Vec<Result<SweepRecord>> = chunk
            .par_iter()
            .map(|cfg| {
                let outcome = run_single(instance, cfg)?;
                if let Some(dir) = out_dir {
                    outcome.write_artifacts(dir, &cfg.run_id())?;
                }
                Ok(outcome.record)
            })
            .collect();
        for r in results {
            let record = r?;
            if let Some(w) = writer.as_mut() {
                w.serialize(&record)?;
            }
            records.push(record);
        }
        if let Some(w) = writer.as_mut() {
            w.flush()?;
        }
    }

    if let Some(dir) = out_dir {
        let summary = layer_summary(&records);
        write_layer_summary(
            &summary,
            BufWriter::new(File::create(dir.join("summary.csv"))?),
        )?;
    }
    Ok(records)
}

pub fn write_records<W: Write>(records: &[SweepRecord], w: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(w);
    for r in records {
        writer.serialize(r)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_records<R: std::io::Read>(r: R) -> Result<Vec<SweepRecord>> {
    let mut reader = csv::Reader::from_reader(r);
    let header = reader.headers()?.clone();
    let expected = crate::RECORD_COLUMNS;
    if header.iter().ne(expected.iter().copied()) {
        return Err(Error::InvalidConfig(format!(
            "unexpected records header {:?}",
            header.iter().collect::<Vec<_>>()
        )));
    }
    reader
        .deserialize()
        .map(|row| row.map_err(Error::from))
        .collect()
}
