//! Shared strategies and reference implementations for the integration tests.
#![allow(dead_code)]

use num_complex::Complex64;
use pdp_qaoa::ising::EnergyTable;
use pdp_qaoa::qaoa::StateVector;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

#[derive(Debug, Clone)]
pub struct SimCase {
    pub energies: Vec<f64>,
    pub gammas: Vec<f64>,
    pub betas: Vec<f64>,
    pub shift: f64,
}

pub fn sim_case() -> impl Strategy<Value = SimCase> {
    (1usize..=8, 1usize..=4).prop_flat_map(|(n, q)| {
        (
            proptest::collection::vec(-20.0f64..20.0, 1 << n),
            proptest::collection::vec(-3.5f64..3.5, q),
            proptest::collection::vec(-3.5f64..3.5, q),
            -50.0f64..50.0,
        )
            .prop_map(|(energies, gammas, betas, shift)| SimCase {
                energies,
                gammas,
                betas,
                shift,
            })
    })
}

/// Textbook `Rx(2β)` on qubit `j`, pairing indices by XOR.
pub fn naive_mixer(amps: &mut [Complex64], n: usize, beta: f64) {
    let (c, s) = (
        Complex64::new(beta.cos(), 0.0),
        Complex64::new(0.0, -beta.sin()),
    );
    for j in 0..n {
        let old = amps.to_vec();
        for (i, a) in amps.iter_mut().enumerate() {
            *a = c * old[i] + s * old[i ^ (1 << j)];
        }
    }
}

pub fn naive_circuit(energies: &[f64], gammas: &[f64], betas: &[f64]) -> Vec<Complex64> {
    let n = energies.len().trailing_zeros() as usize;
    let a0 = (energies.len() as f64).sqrt().recip();
    let mut amps = vec![Complex64::new(a0, 0.0); energies.len()];
    for (&g, &b) in gammas.iter().zip(betas) {
        for (a, &e) in amps.iter_mut().zip(energies) {
            *a *= Complex64::from_polar(1.0, -g * e);
        }
        naive_mixer(&mut amps, n, b);
    }
    amps
}

/// Every simulator invariant on one random case.
pub fn check_simulator_invariants(case: &SimCase) -> Result<(), TestCaseError> {
    let table = EnergyTable::from_energies(case.energies.clone());
    let n = table.n_qubits();

    // uniform state expectation is the plain average
    let plus = StateVector::uniform(n).unwrap();
    let direct = case.energies.iter().sum::<f64>() / case.energies.len() as f64;
    prop_assert!((plus.expectation(&table).unwrap() - direct).abs() < 1e-9);

    // zero angles leave |+> untouched
    let mut s = plus.clone();
    s.apply_cost_phase(&table, 0.0).unwrap();
    s.apply_mixer(0.0);
    for (a, b) in s.amplitudes().iter().zip(plus.amplitudes()) {
        prop_assert!((a - b).norm() < 1e-12);
    }

    let mut s = plus.clone();
    for (&g, &b) in case.gammas.iter().zip(&case.betas) {
        let before: Vec<f64> = s.amplitudes().iter().map(|a| a.norm()).collect();
        s.apply_cost_phase(&table, g).unwrap();
        for (a, m) in s.amplitudes().iter().zip(&before) {
            prop_assert!((a.norm() - m).abs() < 1e-12);
        }
        let pre_mix = s.clone();
        s.apply_mixer(b);
        let mut back = s.clone();
        back.apply_mixer(-b);
        for (x, y) in back.amplitudes().iter().zip(pre_mix.amplitudes()) {
            prop_assert!((x - y).norm() < 1e-10);
        }
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-9);
    }

    let reference = naive_circuit(&case.energies, &case.gammas, &case.betas);
    for (x, y) in s.amplitudes().iter().zip(&reference) {
        prop_assert!((x - y).norm() < 1e-9);
    }

    // a constant offset is a global phase
    let shifted = table.shifted(case.shift);
    let mut t = plus;
    for (&g, &b) in case.gammas.iter().zip(&case.betas) {
        t.apply_cost_phase(&shifted, g).unwrap();
        t.apply_mixer(b);
    }
    let e0 = s.expectation(&table).unwrap();
    let e1 = t.expectation(&shifted).unwrap();
    prop_assert!((e1 - e0 - case.shift).abs() < 1e-8);
    Ok(())
}

/// Records over the 420-point grid with distinct, deterministic ratios; every
/// seventh record has no defined ratio.
pub fn synthetic_records() -> Vec<pdp_qaoa::experiment::SweepRecord> {
    use pdp_qaoa::experiment::SweepRecord;
    use pdp_qaoa::sweep::SweepConfig;
    SweepConfig::full_grid()
        .points()
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let ratio = (i % 7 != 3).then(|| ((i * 37) % 420) as f64 / 420.0);
            SweepRecord {
                q: p.q,
                p1_mult: p.p1_mult,
                p1: p.p1_mult * 6.0,
                rate: p.rate,
                p2: p.rate * p.p1_mult * 6.0,
                max_evals: p.max_evals,
                seed: p.seed,
                best_cost: 10.0 + i as f64,
                n_evals: 50,
                z_star: "100010".into(),
                z_star_prob: 0.1,
                is_ds: i % 2 == 0,
                is_pds: i % 4 == 0,
                is_opt: i % 20 == 0,
                ratio,
                n_valid_samples: if ratio.is_some() { 100 } else { 0 },
                shots: 10_000,
                wall_ms: 1,
            }
        })
        .collect()
}
