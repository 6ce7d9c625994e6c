//! Run a reduced parameter grid, write its artifacts and summarize it.
//!
//! Run with: cargo run --release --example parameter_sweep -- [out dir]

use pdp_qaoa::experiment::Instance;
use pdp_qaoa::report::report;
use pdp_qaoa::sweep::{run_sweep, SweepConfig};
use pdp_qaoa::Graph;

fn main() -> anyhow::Result<()> {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "sweep_out".into());
    let config = SweepConfig {
        q: vec![1, 2],
        p1_multipliers: vec![1.0, 1.2, 1.6],
        rates: vec![0.5, 1.0],
        max_evals: vec![100],
        seeds: vec![0, 1],
        ..SweepConfig::full_grid()
    };
    let instance = Instance::new(Graph::six_vertex_instance())?;
    println!("{} grid points -> {out}", config.len());
    let records = run_sweep(&instance, &config, Some(out.as_ref()))?;

    let bundle = report(&records, 0.2)?;
    bundle.write(out.as_ref())?;
    println!("{}", bundle.headline());
    for layer in &bundle.layers {
        println!(
            "q={} ratio min {:?} max {:?} avg {:?}",
            layer.q, layer.min_ratio, layer.max_ratio, layer.avg_ratio
        );
    }
    for (param, table) in &bundle.top {
        println!("top {} by {}: {table:?}", bundle.n_top, param.name());
    }
    Ok(())
}
