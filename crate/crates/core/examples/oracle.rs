//! Classical ground truth: every minimum perfect dominating set, per-set
//! verdicts and the approximation ratio of a count map.
//!
//! Run with: cargo run --example oracle -- [edge-list file]

use std::collections::BTreeMap;

use pdp_qaoa::bits::{index_to_bitstring, set_to_bitstring};
use pdp_qaoa::oracle::{approximation_ratio, brute_force_optimal_pds, check_bitstring};
use pdp_qaoa::Graph;

fn main() -> anyhow::Result<()> {
    let g = match std::env::args().nth(1) {
        Some(path) => Graph::parse_edge_list(&std::fs::read_to_string(path)?)?,
        None => Graph::six_vertex_instance(),
    };
    let n = g.vertex_count();
    let opt = brute_force_optimal_pds(&g)?;
    println!("minimum PDS size {}", opt.size);
    for set in &opt.sets {
        println!("  {} {set:?}", set_to_bitstring(set, n));
    }

    let (mut ds, mut pds) = (0, 0);
    for mask in 0..1u64 << n {
        let v = check_bitstring(&g, &index_to_bitstring(mask, n))?;
        ds += v.is_ds as usize;
        pds += v.is_pds as usize;
    }
    println!("{ds} dominating sets, {pds} perfect, out of {}", 1u64 << n);

    let counts: BTreeMap<String, u64> = (0..1u64 << n)
        .map(|m| (index_to_bitstring(m, n), 1))
        .collect();
    match approximation_ratio(&counts, &g, opt.size) {
        Ok(r) => println!(
            "uniform sampling ratio {:.4} over {} valid samples",
            r.ratio, r.n_valid_samples
        ),
        Err(e) => println!("uniform sampling ratio: {e}"),
    }
    Ok(())
}
