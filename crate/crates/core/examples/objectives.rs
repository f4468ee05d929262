//! The benchmark objectives: native values, grid calibration, and noisy
//! evaluation.
//!
//! ```bash
//! cargo run --release -p dts --example objectives
//! ```

use dts::{Objective, ObjectiveKind, Point};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for kind in [ObjectiveKind::Rosenbrock, ObjectiveKind::Ackley] {
        let raw = Objective::new(kind, 0.01)?;
        let grid = raw.make_grid(50)?;
        let obj = raw.calibrate(&grid)?;
        let s = obj.scaling();
        println!("{kind} on {:?}", obj.bounds());
        println!("  canonical minimizer {:?}, native f(0, 0) = {:.4}", kind.minimizer(), kind.canonical(0.0, 0.0));
        println!(
            "  grid optimum {:?}, f* = {} (scaled), scaling shift {:.4} span {:.4}",
            obj.opt_point().coords(),
            obj.opt_value(),
            s.shift,
            s.span
        );
        let x = Point::from([0.5, -0.5]);
        let noisy: Vec<String> = (0..4).map(|_| obj.eval_noisy(&x, &mut rng).map(|v| format!("{v:.4}"))).collect::<Result<_, _>>()?;
        println!("  f(0.5, -0.5) = {:.4}; noisy draws {}", obj.eval_noiseless(&x)?, noisy.join(" "));
    }
    Ok(())
}
