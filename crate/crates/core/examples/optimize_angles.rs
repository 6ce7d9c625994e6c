//! Tune QAOA angles with the simplex optimizer and write the cost trace.
//!
//! Run with: cargo run --release --example optimize_angles -- [q] [rate] [trace.csv]

use std::fs::File;

use pdp_qaoa::experiment::build_energy_table;
use pdp_qaoa::optimizer::{init_angles, minimize, OptimizerConfig};
use pdp_qaoa::qaoa::{qaoa_objective, ObjectiveMode, QaoaAngles};
use pdp_qaoa::Graph;

fn main() -> anyhow::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let q: usize = args.first().map_or(Ok(1), |s| s.parse())?;
    let rate: f64 = args.get(1).map_or(Ok(0.5), |s| s.parse())?;

    let table = build_energy_table(&Graph::six_vertex_instance(), 7.2, rate * 7.2)?;
    let x0 = init_angles(q, 0.5)?;
    println!("start  gammas {:?} betas {:?}", x0.gammas(), x0.betas());

    let config = OptimizerConfig {
        max_evals: 200,
        ..Default::default()
    };
    let trace = minimize(
        |x| qaoa_objective(&table, x, ObjectiveMode::Exact),
        &x0.to_flat(),
        &config,
    )?;
    let best = QaoaAngles::from_flat(&trace.best_params)?;
    println!("best   gammas {:?} betas {:?}", best.gammas(), best.betas());
    println!(
        "F = {:.6} after {} evals ({:?}); plateau from eval {}",
        trace.best_value,
        trace.n_evals,
        trace.terminated_by,
        trace.plateau_index(config.f_tol)
    );
    for (i, v) in trace.prefix_best().iter().enumerate().step_by(10) {
        println!("  {i:>4} {v:.6}");
    }

    if let Some(path) = args.get(2) {
        trace.write_csv(File::create(path)?)?;
        println!("trace written to {path}");
    }
    Ok(())
}
