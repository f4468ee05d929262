//! Clique cover and maximum clique of Erdős–Rényi graphs across edge
//! probabilities, plus a graph file round trip.
//!
//! ```bash
//! cargo run --release -p dts --example clique_structure -- [agents]
//! ```

use dts::sim::{stream_rng, GRAPH_STREAM};
use dts::{erdos_renyi, greedy_clique_cover, max_clique, CommGraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(20);
    println!("{m} agents, seed 0 (graphs are nested across p)");
    println!("{:>5} {:>6} {:>10} {:>10}", "p", "edges", "cover", "max clique");
    for p in [0.0, 0.1, 0.2, 0.4, 0.6, 0.8, 1.0] {
        let g = erdos_renyi(m, p, &mut stream_rng(0, GRAPH_STREAM))?;
        let cover = greedy_clique_cover(&g);
        assert!(cover.is_valid_for(&g));
        println!("{p:>5} {:>6} {:>10} {:>10}", g.edge_count(), cover.len(), max_clique(&g).len());
    }

    let g = CommGraph::new(5, [(0, 1), (1, 2), (0, 2), (3, 4)])?;
    let json = g.to_json();
    println!("triangle plus an edge: {json}");
    let back = CommGraph::from_json(&json)?;
    assert_eq!(back, g);
    println!("cover {:?}, max clique {:?}", greedy_clique_cover(&back).parts, max_clique(&back));
    Ok(())
}
