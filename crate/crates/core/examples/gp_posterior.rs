//! Exact GP posterior on a 1-d toy problem and a comparison of the two
//! ways of drawing a joint posterior sample on a grid.
//!
//! ```bash
//! cargo run --release -p dts --example gp_posterior
//! ```

use dts::{argmax_on_grid, Dataset, GpPosterior, GridPrior, Kernel, Point};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let kernel = Kernel::matern52(0.3, 1.0)?;
    let noise = 0.01;
    let data = Dataset::from_pairs(
        [(-0.8, -0.4), (-0.2, 0.6), (0.1, 0.9), (0.7, -0.1)].map(|(x, y)| (Point::from([x]), y)),
    )?;
    let post = GpPosterior::new(kernel, noise, data.clone())?;
    println!("n = {}, jitter used = {:e}", post.len(), post.jitter());

    println!("{:>6} {:>9} {:>9}", "x", "mean", "sd");
    let grid: Vec<Point> = (0..=40).map(|i| Point::from([-1.0 + i as f64 * 0.05])).collect();
    for x in grid.iter().step_by(4) {
        let (m, v) = post.mean_variance(x)?;
        println!("{:>6.2} {:>9.4} {:>9.4}", x.coords()[0], m, v.sqrt());
    }

    // One posterior draw, two routes: factor the posterior covariance on
    // the grid, or correct a prior draw from a shared prior factor.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let direct = post.sample_posterior_path(&grid, &mut rng)?;
    let prior = GridPrior::new(kernel, grid.clone())?;
    // data points are not grid points here, so condition a prior over grid ∪ data
    let mut joint_points = grid.clone();
    joint_points.extend(data.points().iter().cloned());
    let joint = GridPrior::new(kernel, joint_points)?;
    let index: Vec<usize> = (grid.len()..grid.len() + data.len()).collect();
    let pathwise = joint.sample_posterior(&post, &index, &mut rng)?;
    println!(
        "direct draw argmax: x = {:.2}; pathwise draw argmax: x = {:.2}",
        argmax_on_grid(&direct, &grid)?.coords()[0],
        argmax_on_grid(&pathwise[..grid.len()], &grid)?.coords()[0]
    );
    println!("prior factor over {} grid points at jitter {:e}", prior.len(), prior.jitter());
    Ok(())
}
