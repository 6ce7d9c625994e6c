//! Build the QUBO for a graph, list its variables and print both the QUBO
//! and its Ising form as JSON.
//!
//! Run with: cargo run --example build_model -- [edge-list file] [p1] [p2]

use pdp_qaoa::ising::qubo_to_ising;
use pdp_qaoa::qubo::{build_pdp_qubo, default_penalties, VarKind};
use pdp_qaoa::Graph;

fn main() -> anyhow::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let g = match args.first() {
        Some(path) => Graph::parse_edge_list(&std::fs::read_to_string(path)?)?,
        None => Graph::six_vertex_instance(),
    };
    let (d1, d2) = default_penalties(&g);
    let p1 = args.get(1).map_or(Ok(d1), |s| s.parse())?;
    let p2 = args.get(2).map_or(Ok(d2), |s| s.parse())?;

    let model = build_pdp_qubo(&g, p1, p2)?;
    let reg = model.registry();
    println!(
        "{} vertices, {} edges -> {} qubits ({} decision, {} slack)",
        g.vertex_count(),
        g.edge_count(),
        reg.len(),
        reg.n_decision(),
        reg.n_slack()
    );
    for var in reg.variables() {
        match var.kind {
            VarKind::Decision { vertex } => {
                println!("  q{:<2} {:<6} vertex {vertex}", var.qubit, var.name)
            }
            VarKind::Slack { vertex, weight, .. } => {
                println!(
                    "  q{:<2} {:<6} slack of vertex {vertex}, weight {weight}",
                    var.qubit, var.name
                )
            }
        }
    }
    println!(
        "{} linear and {} quadratic terms",
        model.linear().len(),
        model.quadratic().len()
    );

    println!("{}", serde_json::to_string_pretty(&model.export())?);
    println!(
        "{}",
        serde_json::to_string_pretty(&qubo_to_ising(&model).export())?
    );
    Ok(())
}
