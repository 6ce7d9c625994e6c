//! Compilation of the perfect-domination integer program into a QUBO.
//!
//! The model minimizes `Σ X_v` subject to
//!
//! * domination: `Σ_{j∈N[i]} X_j ≥ 1` for every vertex, penalized with `p1`;
//! * perfection: `Σ_{uv∈E} [X_u(1−X_v) + X_v(1−X_u)] = |V| − Σ X_v`,
//!   penalized linearly with `p2` (the left side never falls short of the
//!   right side once the domination rows hold).
//!
//! Domination rows with `|N[i]| ≥ 3` are turned into equalities with a
//! binary-expanded slack whose coefficients come from [`slack_coefficients`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Coefficients `c_k` such that `{Σ c_k b_k : b ∈ {0,1}^k}` is exactly
/// `{0, 1, …, max}`: powers of two up to `2^{bl−2}` followed by the
/// remainder `max − (2^{bl−1} − 1)`, where `bl` is the bit length of `max`.
pub fn slack_coefficients(max: u64) -> Result<Vec<u64>> {
    if max < 1 {
        return Err(Error::InvalidSlackRange(max));
    }
    let bl = 64 - max.leading_zeros();
    let mut coeffs: Vec<u64> = (0..bl - 1).map(|k| 1u64 << k).collect();
    let covered = (1u64 << (bl - 1)) - 1;
    coeffs.push(max - covered);
    Ok(coeffs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum VarKind {
    Decision {
        vertex: usize,
    },
    Slack {
        vertex: usize,
        bit: usize,
        weight: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub qubit: usize,
    #[serde(flatten)]
    pub kind: VarKind,
}

/// Qubit layout: decision variables `0..|V|` in vertex order, then one
/// slack block per vertex with `|N[i]| ≥ 3`, blocks ordered by vertex and
/// bits by position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableRegistry {
    vars: Vec<Variable>,
    n_decision: usize,
}

impl VariableRegistry {
    fn new(n_decision: usize) -> Self {
        let vars = (0..n_decision)
            .map(|v| Variable {
                name: format!("x{v}"),
                qubit: v,
                kind: VarKind::Decision { vertex: v },
            })
            .collect();
        Self { vars, n_decision }
    }

    fn push_slack_block(&mut self, vertex: usize, weights: &[u64]) -> Vec<usize> {
        weights
            .iter()
            .enumerate()
            .map(|(bit, &weight)| {
                let qubit = self.vars.len();
                self.vars.push(Variable {
                    name: format!("s{vertex}_{bit}"),
                    qubit,
                    kind: VarKind::Slack {
                        vertex,
                        bit,
                        weight,
                    },
                });
                qubit
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn n_decision(&self) -> usize {
        self.n_decision
    }

    pub fn n_slack(&self) -> usize {
        self.vars.len() - self.n_decision
    }

    pub fn variables(&self) -> &[Variable] {
        &self.vars
    }

    /// Slack qubits and weights for `vertex`'s domination row, if it has one.
    pub fn slack_block(&self, vertex: usize) -> Vec<(usize, u64)> {
        self.vars
            .iter()
            .filter_map(|var| match var.kind {
                VarKind::Slack {
                    vertex: v, weight, ..
                } if v == vertex => Some((var.qubit, weight)),
                _ => None,
            })
            .collect()
    }
}

/// Quadratic pseudo-boolean polynomial accumulator. `x_i²` folds into the
/// linear term; zero coefficients are dropped by [`Poly::finish`].
#[derive(Debug, Default, Clone)]
struct Poly {
    offset: f64,
    linear: BTreeMap<usize, f64>,
    quadratic: BTreeMap<(usize, usize), f64>,
}

impl Poly {
    fn add_const(&mut self, c: f64) {
        self.offset += c;
    }

    fn add_linear(&mut self, i: usize, c: f64) {
        *self.linear.entry(i).or_insert(0.0) += c;
    }

    fn add_product(&mut self, i: usize, j: usize, c: f64) {
        if i == j {
            self.add_linear(i, c);
        } else {
            *self.quadratic.entry((i.min(j), i.max(j))).or_insert(0.0) += c;
        }
    }

    /// Adds `weight · (constant + Σ a_k x_k)²`.
    fn add_square(&mut self, weight: f64, constant: f64, terms: &[(usize, f64)]) {
        self.add_const(weight * constant * constant);
        for (k, &(i, a)) in terms.iter().enumerate() {
            self.add_linear(i, weight * 2.0 * constant * a);
            self.add_product(i, i, weight * a * a);
            for &(j, b) in &terms[k + 1..] {
                self.add_product(i, j, weight * 2.0 * a * b);
            }
        }
    }

    fn finish(mut self) -> Self {
        self.linear.retain(|_, c| *c != 0.0);
        self.quadratic.retain(|_, c| *c != 0.0);
        self
    }
}

#[derive(Debug, Clone)]
pub struct QuboModel {
    offset: f64,
    linear: BTreeMap<usize, f64>,
    quadratic: BTreeMap<(usize, usize), f64>,
    registry: VariableRegistry,
    p1: f64,
    p2: f64,
}

/// `p1 = 1.2·|V|`, `p2 = p1`.
pub fn default_penalties(g: &Graph) -> (f64, f64) {
    let p1 = 1.2 * g.vertex_count() as f64;
    (p1, p1)
}

pub fn build_pdp_qubo(g: &Graph, p1: f64, p2: f64) -> Result<QuboModel> {
    if !(p1 > 0.0 && p2 > 0.0 && p2 <= p1) || !p1.is_finite() {
        return Err(Error::InvalidPenalty { p1, p2 });
    }
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::InvalidConfig("graph has no vertices".into()));
    }

    let mut registry = VariableRegistry::new(n);
    let mut poly = Poly::default();

    // objective
    for v in 0..n {
        poly.add_linear(v, 1.0);
    }

    // domination rows
    for i in 0..n {
        let hood = g.closed_neighborhood(i)?;
        match hood.as_slice() {
            [j] => poly.add_square(p1, -1.0, &[(*j, 1.0)]),
            [j, k] => {
                // 1 − X_j − X_k + X_j·X_k
                poly.add_const(p1);
                poly.add_linear(*j, -p1);
                poly.add_linear(*k, -p1);
                poly.add_product(*j, *k, p1);
            }
            _ => {
                let weights = slack_coefficients(hood.len() as u64 - 1)?;
                let slacks = registry.push_slack_block(i, &weights);
                let mut terms: Vec<(usize, f64)> = hood.iter().map(|&j| (j, 1.0)).collect();
                terms.extend(slacks.iter().zip(&weights).map(|(&q, &w)| (q, -(w as f64))));
                poly.add_square(p1, -1.0, &terms);
            }
        }
    }

    // perfection: p2·(Σ_E [X_u + X_v − 2 X_u X_v] − |V| + Σ X_v)
    for &(u, v) in g.edges() {
        poly.add_linear(u, p2);
        poly.add_linear(v, p2);
        poly.add_product(u, v, -2.0 * p2);
    }
    poly.add_const(-p2 * n as f64);
    for v in 0..n {
        poly.add_linear(v, p2);
    }

    let poly = poly.finish();
    Ok(QuboModel {
        offset: poly.offset,
        linear: poly.linear,
        quadratic: poly.quadratic,
        registry,
        p1,
        p2,
    })
}

impl QuboModel {
    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn linear(&self) -> &BTreeMap<usize, f64> {
        &self.linear
    }

    pub fn quadratic(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.quadratic
    }

    pub fn registry(&self) -> &VariableRegistry {
        &self.registry
    }

    pub fn n_vars(&self) -> usize {
        self.registry.len()
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn p2(&self) -> f64 {
        self.p2
    }

    pub fn evaluate(&self, assignment: &[u8]) -> Result<f64> {
        if assignment.len() != self.n_vars() {
            return Err(Error::AssignmentLength {
                expected: self.n_vars(),
                got: assignment.len(),
            });
        }
        if let Some((index, &value)) = assignment.iter().enumerate().find(|(_, &b)| b > 1) {
            return Err(Error::NonBinary { index, value });
        }
        let x = |i: usize| f64::from(assignment[i]);
        let mut total = self.offset;
        total += self.linear.iter().map(|(&i, c)| c * x(i)).sum::<f64>();
        total += self
            .quadratic
            .iter()
            .map(|(&(i, j), c)| c * x(i) * x(j))
            .sum::<f64>();
        Ok(total)
    }

    /// Evaluates at the assignment packed into a basis index (qubit `i` is
    /// bit `i`).
    pub fn evaluate_index(&self, index: u64) -> f64 {
        let bit = |i: usize| ((index >> i) & 1) as f64;
        self.offset
            + self.linear.iter().map(|(&i, c)| c * bit(i)).sum::<f64>()
            + self
                .quadratic
                .iter()
                .map(|(&(i, j), c)| c * bit(i) * bit(j))
                .sum::<f64>()
    }

    pub fn export(&self) -> QuboExport {
        QuboExport {
            offset: self.offset,
            p1: self.p1,
            p2: self.p2,
            linear: self.linear.iter().map(|(&i, &c)| (i, c)).collect(),
            quadratic: self
                .quadratic
                .iter()
                .map(|(&(i, j), &c)| (i, j, c))
                .collect(),
            registry: self.registry.vars.clone(),
        }
    }
}

/// Serialized form of a [`QuboModel`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuboExport {
    pub offset: f64,
    pub p1: f64,
    pub p2: f64,
    pub linear: Vec<(usize, f64)>,
    pub quadratic: Vec<(usize, usize, f64)>,
    pub registry: Vec<Variable>,
}
