//! Classical ground truth and evaluation metrics.

use std::collections::BTreeMap;

use crate::bits::bitstring_to_set;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ising::EnergyTable;

pub const MAX_ENUMERATION_VERTICES: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub vertex: usize,
    pub dominators: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PdsVerdict {
    pub is_ds: bool,
    pub is_pds: bool,
    /// First vertex outside the set without exactly one neighbor inside.
    pub witness: Option<Violation>,
}

pub fn check_pds(g: &Graph, set: &[usize]) -> Result<PdsVerdict> {
    let n = g.vertex_count();
    let mut member = vec![false; n];
    for &v in set {
        if v >= n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                count: n,
            });
        }
        member[v] = true;
    }
    Ok(verdict_from_membership(g, &member))
}

fn verdict_from_membership(g: &Graph, member: &[bool]) -> PdsVerdict {
    let mut is_ds = true;
    let mut witness = None;
    for v in (0..g.vertex_count()).filter(|&v| !member[v]) {
        let dominators = g.neighbors(v).iter().filter(|&&w| member[w]).count();
        if dominators == 0 {
            is_ds = false;
        }
        if dominators != 1 && witness.is_none() {
            witness = Some(Violation {
                vertex: v,
                dominators,
            });
        }
    }
    PdsVerdict {
        is_ds,
        is_pds: witness.is_none(),
        witness,
    }
}

/// Verdict for a decision bitstring (vertex `i` ↔ character `i`).
pub fn check_bitstring(g: &Graph, bits: &str) -> Result<PdsVerdict> {
    if bits.len() != g.vertex_count() {
        return Err(Error::BadBitstring(bits.to_owned()));
    }
    check_pds(g, &bitstring_to_set(bits)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalPds {
    pub size: usize,
    /// Every minimum PDS, ascending by bitmask.
    pub sets: Vec<Vec<usize>>,
}

impl OptimalPds {
    pub fn contains(&self, set: &[usize]) -> bool {
        self.sets.iter().any(|s| s == set)
    }
}

/// Exhaustive search over all `2^|V|` subsets.
pub fn brute_force_optimal_pds(g: &Graph) -> Result<OptimalPds> {
    let n = g.vertex_count();
    if n > MAX_ENUMERATION_VERTICES {
        return Err(Error::GraphTooLarge(n));
    }
    let mut best = usize::MAX;
    let mut sets = Vec::new();
    let mut member = vec![false; n];
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size > best {
            continue;
        }
        for (v, m) in member.iter_mut().enumerate() {
            *m = mask >> v & 1 == 1;
        }
        if !verdict_from_membership(g, &member).is_pds {
            continue;
        }
        if size < best {
            best = size;
            sets.clear();
        }
        sets.push((0..n).filter(|&v| member[v]).collect());
    }
    // V itself is always perfect, so `best` is set.
    Ok(OptimalPds { size: best, sets })
}

/// Global minimum of the table and every index attaining it. Entries within
/// `1e-9·max(1, |min|)` of the minimum count as ties (summation noise).
pub fn brute_force_ground_states(table: &EnergyTable) -> (f64, Vec<usize>) {
    let min = table.min();
    let tie = 1e-9 * min.abs().max(1.0);
    let argmin = table
        .energies()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e - min <= tie)
        .map(|(i, _)| i)
        .collect();
    (min, argmin)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RatioDenominator {
    /// Conditional mean over samples that are a PDS.
    #[default]
    ValidSamples,
    /// Divide by every sample, valid or not.
    AllSamples,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioReport {
    pub ratio: f64,
    pub n_valid_samples: u64,
    pub n_total_samples: u64,
    pub opt_size: usize,
}

/// `R = |PDS_opt| / (Σ_valid c_i·|D_i| / N)` over decision-bit counts.
pub fn approximation_ratio(
    counts: &BTreeMap<String, u64>,
    g: &Graph,
    opt_size: usize,
) -> Result<RatioReport> {
    approximation_ratio_with(counts, g, opt_size, RatioDenominator::ValidSamples)
}

pub fn approximation_ratio_with(
    counts: &BTreeMap<String, u64>,
    g: &Graph,
    opt_size: usize,
    denominator: RatioDenominator,
) -> Result<RatioReport> {
    let mut n_valid = 0u64;
    let mut n_total = 0u64;
    let mut weighted_size = 0u64;
    for (bits, &c) in counts {
        n_total += c;
        if c == 0 {
            continue;
        }
        if check_bitstring(g, bits)?.is_pds {
            n_valid += c;
            weighted_size += c * bits.bytes().filter(|&b| b == b'1').count() as u64;
        }
    }
    if n_valid == 0 {
        return Err(Error::UndefinedRatio);
    }
    let norm = match denominator {
        RatioDenominator::ValidSamples => n_valid,
        RatioDenominator::AllSamples => n_total,
    };
    let mean_size = weighted_size as f64 / norm as f64;
    Ok(RatioReport {
        ratio: opt_size as f64 / mean_size,
        n_valid_samples: n_valid,
        n_total_samples: n_total,
        opt_size,
    })
}
