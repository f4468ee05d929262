//! Information gain of point sets: the log-determinant and chain-rule
//! routes, the greedy maximal-information curve on a grid, and a sampled
//! ξ table.
//!
//! ```bash
//! cargo run --release -p dts --example information_gain
//! ```

use dts::bounds::{c2, psi_growth_reference, GrowthFamily};
use dts::info::{estimate_xi_table, gain_chain_rule, gain_logdet, greedy_gain_curve, sequential_variances};
use dts::{Kernel, Point};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let kernel = Kernel::default();
    let noise = 0.01;
    let set: Vec<Point> = [[0.0, 0.0], [0.4, -0.2], [-0.7, 0.5], [0.9, 0.9]].map(Point::from).to_vec();
    let logdet = gain_logdet(&kernel, noise, &set)?;
    let chain = gain_chain_rule(&kernel, noise, &set)?;
    println!("I(f; y_A): log-det {logdet:.10}, chain rule {chain:.10}");
    let var_sum: f64 = sequential_variances(&kernel, noise, &set)?.iter().sum();
    println!("Σ σ²_(j-1)(x_j) = {var_sum:.6} ≤ C₂·I = {:.6}", c2(noise) * logdet);

    let n = 15;
    let grid: Vec<Point> = (0..n * n)
        .map(|k| {
            let c = |i: usize| -1.0 + 2.0 * i as f64 / (n - 1) as f64;
            Point::from([c(k / n), c(k % n)])
        })
        .collect();
    let curve = greedy_gain_curve(&kernel, noise, &grid, 100)?;
    let reference = psi_growth_reference(GrowthFamily::Matern { nu: 2.5 }, 2, &[10.0, 25.0, 50.0, 100.0])?;
    println!("greedy Ψ_t on a {n}x{n} grid (Matérn growth shape for comparison):");
    for (t, r) in [10, 25, 50, 100].into_iter().zip(reference) {
        println!("  t = {t:>3}: Ψ̂ = {:>8.4}   shape = {r:>8.4}", curve[t]);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let xi = estimate_xi_table(&kernel, noise, &grid, 6, 6, 200, &mut rng)?;
    println!("sampled ξ̂_n for n = 1..6: {:?}", xi.iter().map(|v| format!("{v:.3}")).collect::<Vec<_>>());
    Ok(())
}
