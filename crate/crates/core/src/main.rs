use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use pdp_qaoa::experiment::{run_single, Instance, RunConfig};
use pdp_qaoa::ising::qubo_to_ising;
use pdp_qaoa::oracle::brute_force_optimal_pds;
use pdp_qaoa::qubo::build_pdp_qubo;
use pdp_qaoa::report::report;
use pdp_qaoa::sweep::{read_records, run_sweep, write_records, SweepConfig};
use pdp_qaoa::{bits, Graph};

#[derive(Parser)]
#[command(
    name = "pdp-qaoa",
    version,
    about = "Perfect dominating sets with low-depth QAOA"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Export {
    Qubo,
    Ising,
}

#[derive(Subcommand)]
enum Command {
    /// Dump the QUBO or Ising model as JSON.
    Model {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        p1: f64,
        #[arg(long)]
        p2: f64,
        #[arg(long, value_enum, default_value = "qubo")]
        export: Export,
    },
    /// Exhaustively find every minimum perfect dominating set.
    Oracle {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Run one optimization and write its distribution and cost trace.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 1)]
        q: usize,
        #[arg(long, default_value_t = 1.2)]
        p1_mult: f64,
        #[arg(long, default_value_t = 1.0)]
        rate: f64,
        #[arg(long, default_value_t = 100)]
        max_evals: usize,
        #[arg(long, default_value_t = 10_000)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value = "solve_out")]
        out: PathBuf,
    },
    /// Run a parameter grid.
    Sweep {
        #[arg(long)]
        graph: PathBuf,
        /// JSON with `q`, `p1_multipliers`, `rates`, `max_evals` and optional
        /// `seeds`, `shots`, `delta`, `f_tol`.
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Summarize a records.csv.
    Report {
        #[arg(long)]
        records: PathBuf,
        #[arg(long, default_value_t = 0.2)]
        fraction: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn load_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Graph::parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Model {
            graph,
            p1,
            p2,
            export,
        } => {
            let model = build_pdp_qubo(&load_graph(&graph)?, p1, p2)?;
            let json = match export {
                Export::Qubo => serde_json::to_string_pretty(&model.export())?,
                Export::Ising => serde_json::to_string_pretty(&qubo_to_ising(&model).export())?,
            };
            println!("{json}");
        }
        Command::Oracle { graph } => {
            let g = load_graph(&graph)?;
            let opt = brute_force_optimal_pds(&g)?;
            println!("size {}", opt.size);
            for set in &opt.sets {
                println!(
                    "{} {:?}",
                    bits::set_to_bitstring(set, g.vertex_count()),
                    set
                );
            }
        }
        Command::Solve {
            graph,
            q,
            p1_mult,
            rate,
            max_evals,
            shots,
            seed,
            delta,
            tol,
            out,
        } => {
            let instance = Instance::new(load_graph(&graph)?)?;
            let config = RunConfig {
                q,
                p1_mult,
                rate,
                max_evals,
                shots,
                seed,
                delta,
                f_tol: tol,
                ..Default::default()
            };
            let outcome = run_single(&instance, &config)?;
            let id = config.run_id();
            outcome.write_artifacts(&out, &id)?;
            write_records(
                std::slice::from_ref(&outcome.record),
                fs::File::create(out.join(format!("record_{id}.csv")))?,
            )?;
            write_records(std::slice::from_ref(&outcome.record), std::io::stdout())?;
        }
        Command::Sweep { graph, config, out } => {
            let instance = Instance::new(load_graph(&graph)?)?;
            let text = fs::read_to_string(&config)
                .with_context(|| format!("reading {}", config.display()))?;
            let cfg = SweepConfig::from_json(&text)?;
            eprintln!("running {} grid points", cfg.len());
            let records = run_sweep(&instance, &cfg, Some(&out))?;
            let pds = records.iter().filter(|r| r.is_pds).count();
            let best = records.iter().filter(|r| r.is_opt).count();
            println!("{} records: {pds} correct, {best} optimal", records.len());
        }
        Command::Report {
            records,
            fraction,
            out,
        } => {
            let file = fs::File::open(&records)
                .with_context(|| format!("opening {}", records.display()))?;
            let rows = read_records(file)?;
            let bundle = report(&rows, fraction)?;
            bundle.write(&out)?;
            println!("{}", bundle.headline());
            println!("top {} selected", bundle.n_top);
        }
    }
    Ok(())
}
