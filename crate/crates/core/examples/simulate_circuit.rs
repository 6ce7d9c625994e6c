//! Run a fixed-angle QAOA circuit, then compare exact marginals with sampled
//! counts over the decision qubits.
//!
//! Run with: cargo run --release --example simulate_circuit -- [gamma] [beta] [shots]

use pdp_qaoa::experiment::build_energy_table;
use pdp_qaoa::qaoa::{marginal_counts, marginal_decision_distribution, run_circuit, QaoaAngles};
use pdp_qaoa::Graph;

fn main() -> anyhow::Result<()> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    let gamma = args.first().copied().unwrap_or(0.5);
    let beta = args.get(1).copied().unwrap_or(0.39);
    let shots = args.get(2).copied().unwrap_or(10_000.0) as u64;

    let g = Graph::six_vertex_instance();
    let n = g.vertex_count();
    let table = build_energy_table(&g, 7.2, 3.6)?;
    let angles = QaoaAngles::new(vec![gamma], vec![beta])?;
    let state = run_circuit(&table, &angles)?;
    println!(
        "norm {:.12}, <H> = {:.4} (uniform {:.4})",
        state.norm_sqr(),
        state.expectation(&table)?,
        table.mean()
    );

    let exact = marginal_decision_distribution(&state.probabilities(), n)?;
    let counts = marginal_counts(&state.sample(shots, 7)?, n)?;
    let mut rows: Vec<(&String, &f64)> = exact.iter().collect();
    rows.sort_by(|a, b| b.1.total_cmp(a.1));
    println!("string   exact    sampled");
    for (s, p) in rows.into_iter().take(10) {
        let c = counts.get(s).copied().unwrap_or(0);
        println!("{s}  {p:.5}  {:.5}", c as f64 / shots as f64);
    }
    Ok(())
}
