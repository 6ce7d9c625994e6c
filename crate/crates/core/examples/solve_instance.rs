//! Solve the 6-vertex instance once per seed and print the most probable
//! decision strings.
//!
//! Run with: cargo run --release --example solve_instance -- [q] [p1_mult] [rate] [max_evals]

use pdp_qaoa::experiment::{run_single, Instance, RunConfig};
use pdp_qaoa::Graph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg = |i: usize, default: &str| args.get(i).cloned().unwrap_or_else(|| default.to_owned());
    let instance = Instance::new(Graph::six_vertex_instance())?;
    println!(
        "optimal PDS size {} sets {:?}",
        instance.optimum.size, instance.optimum.sets
    );

    for seed in 0..5 {
        let config = RunConfig {
            q: arg(0, "1").parse()?,
            p1_mult: arg(1, "1.2").parse()?,
            rate: arg(2, "1.0").parse()?,
            max_evals: arg(3, "100").parse()?,
            seed,
            ..Default::default()
        };
        let out = run_single(&instance, &config)?;
        let r = &out.record;
        println!(
            "seed {seed}: cost {:.4} after {} evals ({:?}), z*={} p={:.4} pds={} opt={} ratio={:?} {} ms",
            r.best_cost, r.n_evals, out.trace.terminated_by, r.z_star, r.z_star_prob, r.is_pds, r.is_opt, r.ratio, r.wall_ms
        );
        for row in out.distribution.iter().take(5) {
            println!(
                "    {}  {:.5}  {}",
                row.bitstring, row.probability, row.count
            );
        }
    }
    Ok(())
}
