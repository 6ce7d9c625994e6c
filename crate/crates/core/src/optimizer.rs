//! Derivative-free minimization of the QAOA objective.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::qaoa::QaoaAngles;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// Nelder–Mead downhill simplex.
    #[default]
    Simplex,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    /// Budget of objective evaluations.
    pub max_evals: usize,
    /// Stop once `max f − min f` over the simplex drops below this.
    pub f_tol: f64,
    pub method: Method,
    /// Perturbs the initial simplex (edge lengths and directions).
    pub seed: u64,
    /// Nominal edge length of the initial simplex.
    pub initial_step: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            max_evals: 100,
            f_tol: 1e-6,
            method: Method::Simplex,
            seed: 0,
            initial_step: 0.1,
        }
    }
}

impl OptimizerConfig {
    fn validate(&self) -> Result<()> {
        if self.max_evals < 1 {
            return Err(Error::InvalidConfig("max_evals must be >= 1".into()));
        }
        if self.f_tol.is_nan() || self.f_tol <= 0.0 {
            return Err(Error::InvalidConfig("f_tol must be positive".into()));
        }
        if !(self.initial_step > 0.0 && self.initial_step.is_finite()) {
            return Err(Error::InvalidConfig("initial_step must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    Tolerance,
    Budget,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptTrace {
    pub evaluations: Vec<(Vec<f64>, f64)>,
    pub best_params: Vec<f64>,
    pub best_value: f64,
    pub n_evals: usize,
    pub terminated_by: Termination,
}

impl OptTrace {
    pub fn costs(&self) -> impl Iterator<Item = f64> + '_ {
        self.evaluations.iter().map(|(_, f)| *f)
    }

    /// Running minimum of the evaluated costs.
    pub fn prefix_best(&self) -> Vec<f64> {
        self.costs()
            .scan(f64::INFINITY, |best, f| {
                *best = best.min(f);
                Some(*best)
            })
            .collect()
    }

    /// First evaluation index after which the running minimum never drops
    /// by more than `tol` again.
    pub fn plateau_index(&self, tol: f64) -> usize {
        let best = self.prefix_best();
        let last = *best.last().unwrap_or(&f64::INFINITY);
        best.iter().position(|&b| b - last <= tol).unwrap_or(0)
    }

    /// `eval_index,cost` rows, one per evaluation.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "eval_index,cost")?;
        for (i, f) in self.costs().enumerate() {
            writeln!(w, "{i},{f}")?;
        }
        Ok(())
    }
}

/// Linear ramp start: `γ_k = δ·k/q`, `β_k = δ·(1 − (k−1)/q)` for `k = 1..q`.
pub fn init_angles(q: usize, delta: f64) -> Result<QaoaAngles> {
    if q < 1 {
        return Err(Error::InvalidAngles("q must be >= 1".into()));
    }
    if !(delta > 0.0 && delta <= std::f64::consts::PI) {
        return Err(Error::InvalidAngles(format!(
            "ramp scale must lie in (0, π], got {delta}"
        )));
    }
    let qf = q as f64;
    let gammas = (1..=q).map(|k| delta * k as f64 / qf).collect();
    let betas = (1..=q)
        .map(|k| delta * (1.0 - (k - 1) as f64 / qf))
        .collect();
    QaoaAngles::new(gammas, betas)
}

struct Counter<'a, F> {
    objective: F,
    trace: &'a mut Vec<(Vec<f64>, f64)>,
    max_evals: usize,
}

enum Step {
    Value(f64),
    OutOfBudget,
}

impl<F: FnMut(&[f64]) -> Result<f64>> Counter<'_, F> {
    fn eval(&mut self, x: &[f64]) -> Result<Step> {
        if self.trace.len() >= self.max_evals {
            return Ok(Step::OutOfBudget);
        }
        let f = (self.objective)(x)?;
        if !f.is_finite() {
            return Err(Error::NonFiniteObjective {
                eval: self.trace.len(),
                value: f,
            });
        }
        self.trace.push((x.to_vec(), f));
        Ok(Step::Value(f))
    }
}

macro_rules! eval_or_stop {
    ($counter:expr, $x:expr) => {
        match $counter.eval($x)? {
            Step::Value(f) => f,
            Step::OutOfBudget => break Termination::Budget,
        }
    };
}

/// Nelder–Mead with the usual coefficients (reflection 1, expansion 2,
/// contraction ½, shrink ½). Every objective call is recorded in the trace.
pub fn minimize<F>(objective: F, x0: &[f64], config: &OptimizerConfig) -> Result<OptTrace>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    config.validate()?;
    let Method::Simplex = config.method;
    if x0.is_empty() {
        return Err(Error::InvalidConfig("empty starting point".into()));
    }
    let n = x0.len();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut evaluations = Vec::new();
    let mut counter = Counter {
        objective,
        trace: &mut evaluations,
        max_evals: config.max_evals,
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let terminated_by = loop {
        // initial simplex: x0 plus one seeded step along each axis
        if simplex.is_empty() {
            let f0 = eval_or_stop!(counter, x0);
            simplex.push((x0.to_vec(), f0));
            let mut out_of_budget = false;
            for i in 0..n {
                let scale = 0.5 + rng.gen::<f64>();
                let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
                let mut x = x0.to_vec();
                x[i] += sign * scale * config.initial_step;
                match counter.eval(&x)? {
                    Step::Value(f) => simplex.push((x, f)),
                    Step::OutOfBudget => {
                        out_of_budget = true;
                        break;
                    }
                }
            }
            if out_of_budget {
                break Termination::Budget;
            }
        }

        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let f_best = simplex[0].1;
        let f_worst = simplex[n].1;
        if f_worst - f_best < config.f_tol {
            break Termination::Tolerance;
        }
        let f_second = simplex[n - 1].1;

        let mut centroid = vec![0.0; n];
        for (x, _) in &simplex[..n] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / n as f64;
            }
        }
        let worst = simplex[n].0.clone();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let xr = along(1.0);
        let fr = eval_or_stop!(counter, &xr);
        if fr < f_best {
            let xe = along(2.0);
            let fe = eval_or_stop!(counter, &xe);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < f_second {
            simplex[n] = (xr, fr);
            continue;
        }
        let (xc, fc, accept) = if fr < f_worst {
            let xc = along(0.5);
            let fc = eval_or_stop!(counter, &xc);
            let ok = fc <= fr;
            (xc, fc, ok)
        } else {
            let xc = along(-0.5);
            let fc = eval_or_stop!(counter, &xc);
            let ok = fc < f_worst;
            (xc, fc, ok)
        };
        if accept {
            simplex[n] = (xc, fc);
            continue;
        }

        let best = simplex[0].0.clone();
        let mut stopped = false;
        for vertex in simplex.iter_mut().skip(1) {
            let x: Vec<f64> = best
                .iter()
                .zip(&vertex.0)
                .map(|(b, v)| b + 0.5 * (v - b))
                .collect();
            match counter.eval(&x)? {
                Step::Value(f) => *vertex = (x, f),
                Step::OutOfBudget => {
                    stopped = true;
                    break;
                }
            }
        }
        if stopped {
            break Termination::Budget;
        }
    };

    let (best_params, best_value) = evaluations
        .iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(x, f)| (x.clone(), *f))
        .expect("at least one evaluation");
    Ok(OptTrace {
        n_evals: evaluations.len(),
        evaluations,
        best_params,
        best_value,
        terminated_by,
    })
}
