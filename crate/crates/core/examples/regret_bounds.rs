//! Regret bounds next to measured regret for one graph: greedy Ψ and
//! sampled ξ estimates feed the average- and simple-regret bounds.
//!
//! ```bash
//! cargo run --release -p dts --example regret_bounds -- [edge_prob]
//! ```

use dts::bounds::{bound_avg_regret_clique_cover, bound_overlay, BoundInputs};
use dts::experiment::{info_tables, search_space, ExperimentConfig, GraphSpec};
use dts::sim::{stream_rng, GRAPH_STREAM};
use dts::{erdos_renyi, greedy_clique_cover, max_clique, run_experiment, ObjectiveKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p: f64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(0.4);
    let mut cfg = ExperimentConfig::new(ObjectiveKind::Ackley, GraphSpec::ErdosRenyi { edge_probs: vec![p] }, "unused");
    cfg.xi_trials = 100;
    let space = search_space(&cfg)?;
    let tables = info_tables(&cfg, &space)?;
    println!("Ψ̂ up to t = {} ({}), ξ̂ up to n = {} ({})", tables.psi.len() - 1, tables.psi_method, tables.xi.len(), tables.xi_method);

    let g = erdos_renyi(cfg.agents, p, &mut stream_rng(0, GRAPH_STREAM))?;
    let cover = greedy_clique_cover(&g);
    println!("graph: {} edges, greedy cover {}, max clique {}", g.edge_count(), cover.len(), max_clique(&g).len());

    let rows = bound_overlay(&g, space.len(), cfg.noise_var, &tables, cfg.rounds)?;
    let run = run_experiment(&g, &space, cfg.rounds, 0, false)?;
    println!("{:>3} {:>12} {:>14} {:>12} {:>12}", "t", "cumRA/t", "avg bound", "R_S", "simple bound");
    for (b, r) in rows.iter().zip(&run.trace.rows).filter(|(b, _)| b.t % 10 == 0 || b.t == 1) {
        println!("{:>3} {:>12.5} {:>14.5} {:>12.5} {:>12.5}", b.t, r.cum_ra / r.t as f64, b.bound_avg, r.r_s, b.bound_simple);
    }

    let inputs = BoundInputs {
        t: cfg.rounds,
        agents: g.m(),
        grid_size: space.len() as f64,
        noise_var: cfg.noise_var,
        clique_sizes: cover.sizes(),
        tables,
    };
    println!("clique-cover form of the average bound at T: {:.5}", bound_avg_regret_clique_cover(&g, &inputs)?);
    Ok(())
}
