//! Ising form of a QUBO and the diagonal energy table of the cost
//! Hamiltonian.
//!
//! Spins follow the Pauli-Z eigenvalue of each qubit: `z = +1` for bit 0
//! and `z = −1` for bit 1, so `X = (1 − z)/2` and a measured `1` reads as
//! `X = 1`. The energy table is the normative contract: entry `idx` equals
//! the QUBO evaluated at the bits of `idx`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qubo::QuboModel;

pub const MAX_QUBITS: usize = 26;

#[derive(Debug, Clone, PartialEq)]
pub struct IsingHamiltonian {
    pub offset: f64,
    pub fields: BTreeMap<usize, f64>,
    pub couplings: BTreeMap<(usize, usize), f64>,
    pub n_qubits: usize,
}

pub fn qubo_to_ising(model: &QuboModel) -> IsingHamiltonian {
    let mut offset = model.offset();
    let mut fields: BTreeMap<usize, f64> = BTreeMap::new();
    let mut couplings = BTreeMap::new();

    // a·X = a/2 − (a/2)·z
    for (&i, &a) in model.linear() {
        offset += a / 2.0;
        *fields.entry(i).or_insert(0.0) -= a / 2.0;
    }
    // b·X_i·X_j = (b/4)(1 − z_i − z_j + z_i z_j)
    for (&(i, j), &b) in model.quadratic() {
        let q = b / 4.0;
        offset += q;
        *fields.entry(i).or_insert(0.0) -= q;
        *fields.entry(j).or_insert(0.0) -= q;
        couplings.insert((i, j), q);
    }
    fields.retain(|_, h| *h != 0.0);

    IsingHamiltonian {
        offset,
        fields,
        couplings,
        n_qubits: model.n_vars(),
    }
}

impl IsingHamiltonian {
    /// Energy of one computational basis state.
    pub fn energy(&self, index: u64) -> f64 {
        let z = |i: usize| if (index >> i) & 1 == 0 { 1.0 } else { -1.0 };
        let mut e = self.offset;
        for (&i, &h) in &self.fields {
            e += h * z(i);
        }
        for (&(i, j), &c) in &self.couplings {
            e += c * z(i) * z(j);
        }
        e
    }

    pub fn export(&self) -> IsingExport {
        IsingExport {
            n_qubits: self.n_qubits,
            offset: self.offset,
            fields: self.fields.iter().map(|(&i, &h)| (i, h)).collect(),
            couplings: self
                .couplings
                .iter()
                .map(|(&(i, j), &c)| (i, j, c))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IsingExport {
    pub n_qubits: usize,
    pub offset: f64,
    pub fields: Vec<(usize, f64)>,
    pub couplings: Vec<(usize, usize, f64)>,
}

/// Diagonal of the cost Hamiltonian over all `2^n` basis states.
///
/// Distinct energy values are also indexed as levels so a cost phase needs
/// one `sin_cos` per level rather than per amplitude.
#[derive(Debug, Clone)]
pub struct EnergyTable {
    energies: Vec<f64>,
    n_qubits: usize,
    levels: Option<Levels>,
}

#[derive(Debug, Clone)]
struct Levels {
    values: Vec<f64>,
    index: Vec<u32>,
}

const MAX_LEVELS: usize = 1 << 16;

pub fn diagonal_energies(h: &IsingHamiltonian) -> Result<EnergyTable> {
    diagonal_energies_with_limit(h, MAX_QUBITS)
}

pub fn diagonal_energies_with_limit(
    h: &IsingHamiltonian,
    max_qubits: usize,
) -> Result<EnergyTable> {
    let n = h.n_qubits;
    if n == 0 || n > max_qubits {
        return Err(Error::QubitCount { n, max: max_qubits });
    }
    let fields: Vec<(usize, f64)> = h.fields.iter().map(|(&i, &v)| (i, v)).collect();
    let couplings: Vec<(usize, usize, f64)> =
        h.couplings.iter().map(|(&(i, j), &v)| (i, j, v)).collect();

    let mut energies = vec![0.0; 1usize << n];
    energies
        .par_chunks_mut(1 << 12)
        .enumerate()
        .for_each(|(chunk, out)| {
            let base = (chunk << 12) as u64;
            for (k, e) in out.iter_mut().enumerate() {
                let idx = base + k as u64;
                let z = |i: usize| if (idx >> i) & 1 == 0 { 1.0 } else { -1.0 };
                let mut acc = h.offset;
                for &(i, v) in &fields {
                    acc += v * z(i);
                }
                for &(i, j, v) in &couplings {
                    acc += v * z(i) * z(j);
                }
                *e = acc;
            }
        });
    Ok(EnergyTable::from_energies(energies))
}

impl EnergyTable {
    /// Wraps a precomputed diagonal. Length must be a power of two ≥ 2.
    pub fn from_energies(energies: Vec<f64>) -> Self {
        assert!(
            energies.len() >= 2 && energies.len().is_power_of_two(),
            "energy table length must be a power of two >= 2"
        );
        let n_qubits = energies.len().trailing_zeros() as usize;
        let levels = Levels::build(&energies);
        Self {
            energies,
            n_qubits,
            levels,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn get(&self, index: usize) -> f64 {
        self.energies[index]
    }

    pub fn mean(&self) -> f64 {
        self.energies.iter().sum::<f64>() / self.energies.len() as f64
    }

    pub fn min(&self) -> f64 {
        self.energies.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Adds `c` to every entry.
    pub fn shifted(&self, c: f64) -> Self {
        Self::from_energies(self.energies.iter().map(|e| e + c).collect())
    }

    pub(crate) fn level_view(&self) -> Option<(&[f64], &[u32])> {
        self.levels
            .as_ref()
            .map(|l| (l.values.as_slice(), l.index.as_slice()))
    }
}

impl Levels {
    fn build(energies: &[f64]) -> Option<Self> {
        let mut values: Vec<f64> = energies.to_vec();
        values.sort_by(f64::total_cmp);
        values.dedup_by(|a, b| a.to_bits() == b.to_bits());
        if values.len() > MAX_LEVELS || values.len() * 4 > energies.len() {
            return None;
        }
        let index = energies
            .iter()
            .map(|e| {
                values
                    .binary_search_by(|v| v.total_cmp(e))
                    .expect("present") as u32
            })
            .collect();
        Some(Self { values, index })
    }
}
