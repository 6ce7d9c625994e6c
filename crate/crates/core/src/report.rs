//! Analyses over sweep records: per-layer ratio summaries and parameter
//! frequency tables for the best runs.

use std::cmp::Ordering;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::experiment::SweepRecord;

/// A sweep axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    Q,
    P1Mult,
    Rate,
    MaxEvals,
}

impl Param {
    pub const ALL: [Param; 4] = [Param::Q, Param::P1Mult, Param::Rate, Param::MaxEvals];

    pub fn name(self) -> &'static str {
        match self {
            Param::Q => "q",
            Param::P1Mult => "p1_mult",
            Param::Rate => "rate",
            Param::MaxEvals => "max_evals",
        }
    }

    fn value(self, r: &SweepRecord) -> f64 {
        match self {
            Param::Q => r.q as f64,
            Param::P1Mult => r.p1_mult,
            Param::Rate => r.rate,
            Param::MaxEvals => r.max_evals as f64,
        }
    }
}

/// `(value, count)` pairs, ascending by value.
pub type FrequencyTable = Vec<(f64, usize)>;

fn frequencies<'a>(records: impl Iterator<Item = &'a SweepRecord>, key: Param) -> FrequencyTable {
    let mut table: FrequencyTable = Vec::new();
    for r in records {
        let v = key.value(r);
        match table.iter_mut().find(|(x, _)| *x == v) {
            Some((_, c)) => *c += 1,
            None => table.push((v, 1)),
        }
    }
    table.sort_by(|a, b| a.0.total_cmp(&b.0));
    table
}

/// Ratio descending, undefined ratios last, ties by (q, P₁, rate, budget, seed).
fn rank(a: &SweepRecord, b: &SweepRecord) -> Ordering {
    let by_ratio = match (a.ratio, b.ratio) {
        (Some(x), Some(y)) => y.total_cmp(&x),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => Ordering::Equal,
    };
    by_ratio
        .then(a.q.cmp(&b.q))
        .then(a.p1.total_cmp(&b.p1))
        .then(a.rate.total_cmp(&b.rate))
        .then(a.max_evals.cmp(&b.max_evals))
        .then(a.seed.cmp(&b.seed))
}

/// The best `ceil(fraction·N)` records by approximation ratio.
pub fn top_fraction(records: &[SweepRecord], fraction: f64) -> Result<Vec<&SweepRecord>> {
    if records.is_empty() {
        return Err(Error::EmptyRecords);
    }
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::InvalidFraction(fraction));
    }
    let mut sorted: Vec<&SweepRecord> = records.iter().collect();
    sorted.sort_by(|a, b| rank(a, b));
    // guard against 0.2·420 = 84.00000000000001
    let take = ((fraction * records.len() as f64) - 1e-9).ceil() as usize;
    sorted.truncate(take.clamp(1, records.len()));
    Ok(sorted)
}

pub fn top_fraction_param_distribution(
    records: &[SweepRecord],
    fraction: f64,
    key: Param,
) -> Result<FrequencyTable> {
    Ok(frequencies(
        top_fraction(records, fraction)?.into_iter(),
        key,
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct LayerSummary {
    pub q: usize,
    pub min_ratio: Option<f64>,
    pub max_ratio: Option<f64>,
    pub avg_ratio: Option<f64>,
    pub n_defined: usize,
    pub n_records: usize,
}

/// Min/max/mean approximation ratio per layer count over defined ratios.
pub fn layer_summary(records: &[SweepRecord]) -> Vec<LayerSummary> {
    let mut qs: Vec<usize> = records.iter().map(|r| r.q).collect();
    qs.sort_unstable();
    qs.dedup();
    qs.into_iter()
        .map(|q| {
            let rows: Vec<&SweepRecord> = records.iter().filter(|r| r.q == q).collect();
            let ratios: Vec<f64> = rows.iter().filter_map(|r| r.ratio).collect();
            let n = ratios.len();
            LayerSummary {
                q,
                min_ratio: ratios.iter().copied().reduce(f64::min),
                max_ratio: ratios.iter().copied().reduce(f64::max),
                avg_ratio: (n > 0).then(|| ratios.iter().sum::<f64>() / n as f64),
                n_defined: n,
                n_records: rows.len(),
            }
        })
        .collect()
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn write_layer_summary<W: Write>(rows: &[LayerSummary], mut w: W) -> std::io::Result<()> {
    writeln!(w, "q,min_ratio,max_ratio,avg_ratio,n_defined,n_records")?;
    for s in rows {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            s.q,
            opt(s.min_ratio),
            opt(s.max_ratio),
            opt(s.avg_ratio),
            s.n_defined,
            s.n_records
        )?;
    }
    Ok(())
}

/// `parameter,value,count` rows for every axis.
pub fn write_frequency_tables<W: Write>(
    tables: &[(Param, FrequencyTable)],
    mut w: W,
) -> std::io::Result<()> {
    writeln!(w, "parameter,value,count")?;
    for (param, table) in tables {
        for (value, count) in table {
            writeln!(w, "{},{},{}", param.name(), value, count)?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct Report {
    pub n_records: usize,
    pub n_ds: usize,
    pub n_pds: usize,
    pub n_opt: usize,
    pub layers: Vec<LayerSummary>,
    pub n_top: usize,
    pub top: Vec<(Param, FrequencyTable)>,
    /// Parameter frequencies over runs whose z* is a PDS.
    pub correct: Vec<(Param, FrequencyTable)>,
    /// Parameter frequencies over runs whose z* is an optimal PDS.
    pub optimal: Vec<(Param, FrequencyTable)>,
}

impl Report {
    pub fn headline(&self) -> String {
        format!(
            "{} records: {} correct, {} optimal",
            self.n_records, self.n_pds, self.n_opt
        )
    }

    /// Writes `report_layers.csv`, `report_top.csv`, `report_correct.csv`,
    /// `report_optimal.csv` and `report_counts.csv` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        let create = |name: &str| -> Result<BufWriter<File>> {
            Ok(BufWriter::new(File::create(dir.join(name))?))
        };
        write_layer_summary(&self.layers, create("report_layers.csv")?)?;
        write_frequency_tables(&self.top, create("report_top.csv")?)?;
        write_frequency_tables(&self.correct, create("report_correct.csv")?)?;
        write_frequency_tables(&self.optimal, create("report_optimal.csv")?)?;
        let mut counts = create("report_counts.csv")?;
        writeln!(counts, "records,is_ds,is_pds,is_opt,top_selected")?;
        writeln!(
            counts,
            "{},{},{},{},{}",
            self.n_records, self.n_ds, self.n_pds, self.n_opt, self.n_top
        )?;
        counts.flush()?;
        Ok(())
    }
}

pub fn report(records: &[SweepRecord], fraction: f64) -> Result<Report> {
    let top = top_fraction(records, fraction)?;
    let per_axis = |rows: &[&SweepRecord]| -> Vec<(Param, FrequencyTable)> {
        Param::ALL
            .iter()
            .map(|&p| (p, frequencies(rows.iter().copied(), p)))
            .collect()
    };
    let correct: Vec<&SweepRecord> = records.iter().filter(|r| r.is_pds).collect();
    let optimal: Vec<&SweepRecord> = records.iter().filter(|r| r.is_opt).collect();
    Ok(Report {
        n_records: records.len(),
        n_ds: records.iter().filter(|r| r.is_ds).count(),
        n_pds: correct.len(),
        n_opt: optimal.len(),
        layers: layer_summary(records),
        n_top: top.len(),
        top: per_axis(&top),
        correct: per_axis(&correct),
        optimal: per_axis(&optimal),
    })
}
