//! Exact statevector simulation of the layered QAOA circuit.
//!
//! The state starts in the uniform superposition; each layer applies the
//! diagonal cost phase `exp(−iγ·H_c)` followed by the transverse-field mixer
//! `exp(−iβ·Σ X_j)`. The cost Hamiltonian is supplied as a precomputed
//! [`EnergyTable`].

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bits::index_to_bitstring;
use crate::error::{Error, Result};
use crate::ising::{EnergyTable, MAX_QUBITS};

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
    n_qubits: usize,
}

impl StateVector {
    /// `|+⟩^{⊗n}`: every amplitude equals `2^{−n/2}`.
    pub fn uniform(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::QubitCount {
                n: n_qubits,
                max: MAX_QUBITS,
            });
        }
        let dim = 1usize << n_qubits;
        let a = Complex64::new((dim as f64).sqrt().recip(), 0.0);
        Ok(Self {
            amplitudes: vec![a; dim],
            n_qubits,
        })
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let mut s = Self::uniform(n_qubits)?;
        s.amplitudes.fill(Complex64::new(0.0, 0.0));
        s.amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    /// Wraps raw amplitudes; the length must be a power of two ≥ 2. The
    /// caller is responsible for normalization.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::QubitCount {
                n: len.checked_ilog2().unwrap_or(0) as usize,
                max: MAX_QUBITS,
            });
        }
        Ok(Self {
            n_qubits: len.trailing_zeros() as usize,
            amplitudes,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    fn check_table(&self, table: &EnergyTable) -> Result<()> {
        if table.n_qubits() != self.n_qubits {
            return Err(Error::SizeMismatch {
                state: self.n_qubits,
                table: table.n_qubits(),
            });
        }
        Ok(())
    }

    /// Multiplies amplitude `idx` by `exp(−i·γ·E_idx)`.
    pub fn apply_cost_phase(&mut self, table: &EnergyTable, gamma: f64) -> Result<()> {
        self.check_table(table)?;
        match table.level_view() {
            Some((levels, index)) => {
                let phases: Vec<Complex64> = levels
                    .iter()
                    .map(|&e| {
                        let (s, c) = (-gamma * e).sin_cos();
                        Complex64::new(c, s)
                    })
                    .collect();
                for (a, &l) in self.amplitudes.iter_mut().zip(index) {
                    *a *= phases[l as usize];
                }
            }
            None => {
                for (a, &e) in self.amplitudes.iter_mut().zip(table.energies()) {
                    let (s, c) = (-gamma * e).sin_cos();
                    *a *= Complex64::new(c, s);
                }
            }
        }
        Ok(())
    }

    /// Applies `exp(−iβX)` to every qubit: on each pair of amplitudes that
    /// differ only in bit `j`, `(a, b) ← (cos β·a − i sin β·b, −i sin β·a + cos β·b)`.
    pub fn apply_mixer(&mut self, beta: f64) {
        let (s, c) = beta.sin_cos();
        for j in 0..self.n_qubits {
            let stride = 1usize << j;
            for block in self.amplitudes.chunks_exact_mut(stride << 1) {
                let (lo, hi) = block.split_at_mut(stride);
                for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                    let (ar, ai, br, bi) = (a.re, a.im, b.re, b.im);
                    *a = Complex64::new(c * ar + s * bi, c * ai - s * br);
                    *b = Complex64::new(c * br + s * ai, c * bi - s * ar);
                }
            }
        }
    }

    /// `⟨ψ|H_c|ψ⟩`, computed exactly from the amplitudes.
    pub fn expectation(&self, table: &EnergyTable) -> Result<f64> {
        self.check_table(table)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(table.energies())
            .map(|(a, e)| a.norm_sqr() * e)
            .sum())
    }

    /// Draws `shots` basis states with a seeded ChaCha8 generator. Keys are
    /// full-width bitstrings, qubit 0 leftmost.
    pub fn sample(&self, shots: u64, seed: u64) -> Result<BTreeMap<String, u64>> {
        if shots == 0 {
            return Err(Error::InvalidConfig("shots must be positive".into()));
        }
        let dist = WeightedIndex::new(self.probabilities())
            .map_err(|e| Error::InvalidConfig(format!("cannot sample state: {e}")))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut hits: BTreeMap<usize, u64> = BTreeMap::new();
        for _ in 0..shots {
            *hits.entry(dist.sample(&mut rng)).or_insert(0) += 1;
        }
        Ok(hits
            .into_iter()
            .map(|(idx, c)| (index_to_bitstring(idx as u64, self.n_qubits), c))
            .collect())
    }
}

/// Per-layer angles. `gammas[k]` and `betas[k]` drive layer `k + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct QaoaAngles {
    gammas: Vec<f64>,
    betas: Vec<f64>,
}

impl QaoaAngles {
    pub fn new(gammas: Vec<f64>, betas: Vec<f64>) -> Result<Self> {
        if gammas.is_empty() || gammas.len() != betas.len() {
            return Err(Error::InvalidAngles(format!(
                "need q >= 1 gammas and betas of equal length, got {} and {}",
                gammas.len(),
                betas.len()
            )));
        }
        if gammas.iter().chain(&betas).any(|a| !a.is_finite()) {
            return Err(Error::InvalidAngles("angles must be finite".into()));
        }
        Ok(Self { gammas, betas })
    }

    /// Splits a flat `[γ_1..γ_q, β_1..β_q]` vector.
    pub fn from_flat(params: &[f64]) -> Result<Self> {
        if !params.len().is_multiple_of(2) {
            return Err(Error::InvalidAngles(format!(
                "flat angle vector has odd length {}",
                params.len()
            )));
        }
        let (g, b) = params.split_at(params.len() / 2);
        Self::new(g.to_vec(), b.to_vec())
    }

    pub fn to_flat(&self) -> Vec<f64> {
        self.gammas.iter().chain(&self.betas).copied().collect()
    }

    pub fn layers(&self) -> usize {
        self.gammas.len()
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }
}

pub fn run_circuit(table: &EnergyTable, angles: &QaoaAngles) -> Result<StateVector> {
    let mut state = StateVector::uniform(table.n_qubits())?;
    for (&gamma, &beta) in angles.gammas.iter().zip(&angles.betas) {
        state.apply_cost_phase(table, gamma)?;
        state.apply_mixer(beta);
    }
    Ok(state)
}

/// Sums probability mass over the trailing (slack) qubits, keyed by the
/// first `n_decision` qubits' bitstring. All `2^n_decision` keys are present.
pub fn marginal_decision_distribution(
    probabilities: &[f64],
    n_decision: usize,
) -> Result<BTreeMap<String, f64>> {
    let n_qubits = probabilities.len().trailing_zeros() as usize;
    if n_decision > n_qubits {
        return Err(Error::DecisionWidth {
            n_decision,
            n_qubits,
        });
    }
    let mask = (1usize << n_decision) - 1;
    let mut mass = vec![0.0; 1 << n_decision];
    for (idx, p) in probabilities.iter().enumerate() {
        mass[idx & mask] += p;
    }
    Ok(mass
        .into_iter()
        .enumerate()
        .map(|(idx, p)| (index_to_bitstring(idx as u64, n_decision), p))
        .collect())
}

/// Same as [`marginal_decision_distribution`] for sampled counts.
pub fn marginal_counts(
    counts: &BTreeMap<String, u64>,
    n_decision: usize,
) -> Result<BTreeMap<String, u64>> {
    let mut out = BTreeMap::new();
    for (s, &c) in counts {
        if s.len() < n_decision {
            return Err(Error::DecisionWidth {
                n_decision,
                n_qubits: s.len(),
            });
        }
        *out.entry(s[..n_decision].to_owned()).or_insert(0) += c;
    }
    Ok(out)
}

/// How the optimizer objective is estimated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ObjectiveMode {
    /// Exact `⟨H_c⟩` from the amplitudes.
    #[default]
    Exact,
    /// Mean energy over `shots` samples. The seed is fixed across
    /// evaluations so the objective stays a deterministic function.
    Sampled { shots: u64, seed: u64 },
}

/// `F_q(γ, β)` over a flat angle vector.
pub fn qaoa_objective(table: &EnergyTable, params: &[f64], mode: ObjectiveMode) -> Result<f64> {
    let angles = QaoaAngles::from_flat(params)?;
    let state = run_circuit(table, &angles)?;
    match mode {
        ObjectiveMode::Exact => state.expectation(table),
        ObjectiveMode::Sampled { shots, seed } => {
            let counts = state.sample(shots, seed)?;
            let total: f64 = counts
                .iter()
                .map(|(s, &c)| {
                    let idx = crate::bits::bitstring_to_index(s).expect("sampler output");
                    table.get(idx as usize) * c as f64
                })
                .sum();
            Ok(total / shots as f64)
        }
    }
}
