//! Effect of graph connectivity: 20 agents on Erdős–Rényi graphs with
//! p ∈ {0.2, 0.4, 0.6}, both objectives, mean ± standard error over seeds.
//! The graphs for one seed are nested across p, so the comparison uses
//! common random numbers.
//!
//! ```bash
//! cargo run --release -p dts --example connectivity_sweep -- [seeds] [out_dir]
//! ```
//!
//! With `out_dir` the full sweep output (traces, aggregates, plots,
//! bound overlays) is written through the experiment driver as well.

use dts::experiment::{run_sweep, ExperimentConfig, GraphSpec};
use dts::sim::{stream_rng, MeanSe, GRAPH_STREAM};
use dts::{erdos_renyi, run_experiment, Kernel, Objective, ObjectiveKind, SearchSpace};

const PROBS: [f64; 3] = [0.2, 0.4, 0.6];

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let seeds: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(10);
    let out_dir = args.next();

    for kind in [ObjectiveKind::Rosenbrock, ObjectiveKind::Ackley] {
        let space = SearchSpace::new(Objective::new(kind, 0.01)?, 50, Kernel::default())?;
        println!("{kind} ({seeds} seeds, T = 50)");
        println!("  {:>4} {:>20} {:>20}", "p", "cumRA(50)", "cumRS(50)");
        for p in PROBS {
            let mut ra = Vec::new();
            let mut rs = Vec::new();
            for seed in 0..seeds {
                let g = erdos_renyi(20, p, &mut stream_rng(seed, GRAPH_STREAM))?;
                let out = run_experiment(&g, &space, 50, seed, false)?;
                let last = out.trace.last().expect("50 rounds");
                ra.push(last.cum_ra);
                rs.push(last.cum_rs);
            }
            let (a, s) = (MeanSe::of(&ra), MeanSe::of(&rs));
            println!("  {p:>4} {:>11.4} ± {:<6.4} {:>11.4} ± {:<6.4}", a.mean, a.se, s.mean, s.se);
        }
    }

    if let Some(dir) = out_dir {
        let mut cfg = ExperimentConfig::new(
            ObjectiveKind::Ackley,
            GraphSpec::ErdosRenyi { edge_probs: PROBS.to_vec() },
            dir,
        );
        cfg.seeds = (0..seeds).collect();
        cfg.bounds = true;
        let summary = run_sweep(&cfg)?;
        println!("wrote {} runs to {}", summary.runs.len(), cfg.out.display());
    }
    Ok(())
}
