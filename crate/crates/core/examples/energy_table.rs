//! Tabulate the diagonal cost Hamiltonian and inspect its ground states for
//! a few penalty settings.
//!
//! Run with: cargo run --release --example energy_table

use pdp_qaoa::bits::index_to_bitstring;
use pdp_qaoa::experiment::build_energy_table;
use pdp_qaoa::oracle::brute_force_ground_states;
use pdp_qaoa::Graph;

fn main() -> anyhow::Result<()> {
    let g = Graph::six_vertex_instance();
    let n = g.vertex_count();
    let p1 = 1.2 * n as f64;
    for rate in [0.3, 0.5, 0.7, 1.0] {
        let table = build_energy_table(&g, p1, rate * p1)?;
        let (min, argmin) = brute_force_ground_states(&table);
        println!(
            "P1={p1:.1} P2={:.2}: {} states, mean {:.3}, min {:.3}",
            rate * p1,
            table.len(),
            table.mean(),
            min
        );
        for idx in argmin {
            let bits = index_to_bitstring(idx as u64, table.n_qubits());
            println!("    {} | {}", &bits[..n], &bits[n..]);
        }
    }
    Ok(())
}
