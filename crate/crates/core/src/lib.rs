//! Perfect dominating sets with low-depth QAOA.
//!
//! The pipeline compiles the perfect-domination problem on a small graph
//! into a QUBO ([`qubo`]), rewrites it over Pauli-Z spins ([`ising`]),
//! tabulates the diagonal cost Hamiltonian, and runs a `q`-layer QAOA on an
//! exact statevector simulator ([`qaoa`]) whose angles are tuned by a
//! Nelder–Mead simplex ([`optimizer`]). Exhaustive oracles and the
//! approximation-ratio metric live in [`oracle`]; [`experiment`], [`sweep`]
//! and [`report`] drive single runs, parameter grids and their analysis.
//!
//! ```
//! use pdp_qaoa::{Graph, experiment::{Instance, RunConfig, run_single}};
//!
//! let instance = Instance::new(Graph::new(2, &[(0, 1)]).unwrap()).unwrap();
//! let config = RunConfig { rate: 0.5, ..Default::default() };
//! let outcome = run_single(&instance, &config).unwrap();
//! assert!(outcome.record.is_pds);
//! ```

pub mod bits;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod ising;
pub mod optimizer;
pub mod oracle;
pub mod qaoa;
pub mod qubo;
pub mod report;
pub mod sweep;

pub use error::{Error, Result};
pub use graph::Graph;

/// Column order of `records.csv`.
pub const RECORD_COLUMNS: [&str; 18] = [
    "q",
    "p1_mult",
    "p1",
    "rate",
    "p2",
    "max_evals",
    "seed",
    "best_cost",
    "n_evals",
    "z_star",
    "z_star_prob",
    "is_ds",
    "is_pds",
    "is_opt",
    "ratio",
    "n_valid_samples",
    "shots",
    "wall_ms",
];
