//! Black-box test objectives, negated for maximization.

use std::f64::consts::{E, PI};

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::gp::{argmax_index, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectiveKind {
    Rosenbrock,
    Ackley,
}

impl ObjectiveKind {
    /// Canonical (minimization) value.
    pub fn canonical(self, x: f64, y: f64) -> f64 {
        match self {
            Self::Rosenbrock => (1.0 - x).powi(2) + 100.0 * (y - x * x).powi(2),
            Self::Ackley => {
                -20.0 * (-0.2 * ((x * x + y * y) / 2.0).sqrt()).exp()
                    - (0.5 * ((2.0 * PI * x).cos() + (2.0 * PI * y).cos())).exp()
                    + 20.0
                    + E
            }
        }
    }

    pub fn default_bounds(self) -> [(f64, f64); 2] {
        match self {
            Self::Rosenbrock => [(-2.0, 2.0); 2],
            Self::Ackley => [(-5.0, 5.0); 2],
        }
    }

    pub fn minimizer(self) -> [f64; 2] {
        match self {
            Self::Rosenbrock => [1.0, 1.0],
            Self::Ackley => [0.0, 0.0],
        }
    }
}

impl std::str::FromStr for ObjectiveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rosenbrock" => Ok(Self::Rosenbrock),
            "ackley" => Ok(Self::Ackley),
            other => Err(invalid("objective", format!("unknown objective `{other}`"))),
        }
    }
}

impl std::fmt::Display for ObjectiveKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Rosenbrock => "rosenbrock",
            Self::Ackley => "ackley",
        })
    }
}

/// Affine map applied to the negated function: `(v − shift) / span`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scaling {
    pub shift: f64,
    pub span: f64,
}

impl Scaling {
    pub const IDENTITY: Scaling = Scaling { shift: 0.0, span: 1.0 };

    pub fn apply(&self, v: f64) -> f64 {
        (v - self.shift) / self.span
    }

    /// Convert a regret in scaled units back to the native function scale.
    pub fn denormalize_regret(&self, r: f64) -> f64 {
        r * self.span
    }
}

/// A negated test function on a box domain with Gaussian observation noise.
#[derive(Debug, Clone, PartialEq)]
pub struct Objective {
    kind: ObjectiveKind,
    bounds: Vec<(f64, f64)>,
    noise_var: f64,
    scaling: Scaling,
    opt_value: f64,
    opt_point: Point,
}

impl Objective {
    /// Unscaled objective on its default box with the analytic optimum.
    pub fn new(kind: ObjectiveKind, noise_var: f64) -> Result<Self> {
        if !(noise_var >= 0.0 && noise_var.is_finite()) {
            return Err(invalid("noise_var", format!("must be non-negative, got {noise_var}")));
        }
        Ok(Self {
            kind,
            bounds: kind.default_bounds().to_vec(),
            noise_var,
            scaling: Scaling::IDENTITY,
            opt_value: 0.0,
            opt_point: Point::from(kind.minimizer()),
        })
    }

    pub fn with_bounds(mut self, bounds: [(f64, f64); 2]) -> Result<Self> {
        for &(lo, hi) in &bounds {
            if !(lo < hi && lo.is_finite() && hi.is_finite()) {
                return Err(invalid("bounds", format!("empty interval [{lo}, {hi}]")));
            }
        }
        self.bounds = bounds.to_vec();
        Ok(self)
    }

    /// Rescale so that the noiseless maximum over `grid` is exactly 0 and
    /// the grid range is 1, and take that grid maximum as the optimum.
    pub fn calibrate(mut self, grid: &[Point]) -> Result<Self> {
        self.scaling = Scaling::IDENTITY;
        let values = grid
            .iter()
            .map(|p| self.eval_noiseless(p))
            .collect::<Result<Vec<_>>>()?;
        let best = argmax_index(&values)?;
        let hi = values[best];
        let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
        let span = if hi > lo { hi - lo } else { 1.0 };
        self.scaling = Scaling { shift: hi, span };
        self.opt_point = grid[best].clone();
        self.opt_value = self.eval_noiseless(&grid[best])?;
        Ok(self)
    }

    pub fn kind(&self) -> ObjectiveKind {
        self.kind
    }

    pub fn name(&self) -> String {
        self.kind.to_string()
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn noise_var(&self) -> f64 {
        self.noise_var
    }

    pub fn scaling(&self) -> Scaling {
        self.scaling
    }

    /// `f*`.
    pub fn opt_value(&self) -> f64 {
        self.opt_value
    }

    pub fn opt_point(&self) -> &Point {
        &self.opt_point
    }

    fn check_domain(&self, x: &Point) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: x.dim(),
            });
        }
        let inside = x.coords().iter().zip(&self.bounds).all(|(&c, &(lo, hi))| {
            let tol = 1e-9 * (hi - lo);
            c >= lo - tol && c <= hi + tol
        });
        if inside {
            Ok(())
        } else {
            Err(Error::OutOfDomain {
                point: x.coords().to_vec(),
            })
        }
    }

    /// `f(x)`: the negated canonical function, after scaling.
    pub fn eval_noiseless(&self, x: &Point) -> Result<f64> {
        self.check_domain(x)?;
        let c = x.coords();
        Ok(self.scaling.apply(-self.kind.canonical(c[0], c[1])))
    }

    /// `f(x) + ε` with `ε ~ N(0, σ²)` drawn from `rng`.
    pub fn eval_noisy<R: Rng + ?Sized>(&self, x: &Point, rng: &mut R) -> Result<f64> {
        let f = self.eval_noiseless(x)?;
        let z: f64 = rng.sample(StandardNormal);
        Ok(f + self.noise_var.sqrt() * z)
    }

    /// Uniform tensor grid over the domain in row-major order (the last
    /// coordinate varies fastest).
    pub fn make_grid(&self, points_per_dim: usize) -> Result<Vec<Point>> {
        if points_per_dim < 2 {
            return Err(invalid("points_per_dim", format!("need at least 2, got {points_per_dim}")));
        }
        let axes: Vec<Vec<f64>> = self
            .bounds
            .iter()
            .map(|&(lo, hi)| {
                (0..points_per_dim)
                    .map(|k| {
                        if k + 1 == points_per_dim {
                            hi
                        } else {
                            lo + (hi - lo) * k as f64 / (points_per_dim - 1) as f64
                        }
                    })
                    .collect()
            })
            .collect();
        let total = points_per_dim.pow(self.dim() as u32);
        let mut grid = Vec::with_capacity(total);
        for flat in 0..total {
            let mut rem = flat;
            let mut coords = vec![0.0; self.dim()];
            for d in (0..self.dim()).rev() {
                coords[d] = axes[d][rem % points_per_dim];
                rem /= points_per_dim;
            }
            grid.push(Point::new(coords)?);
        }
        Ok(grid)
    }

    /// Map a domain point onto `[−1, 1]^d`.
    pub fn to_unit(&self, x: &Point) -> Point {
        let c = x
            .coords()
            .iter()
            .zip(&self.bounds)
            .map(|(&v, &(lo, hi))| 2.0 * (v - lo) / (hi - lo) - 1.0)
            .collect();
        Point::new(c).expect("finite")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn analytic_values() {
        let r = Objective::new(ObjectiveKind::Rosenbrock, 0.01).unwrap();
        assert_eq!(r.eval_noiseless(&Point::from([1.0, 1.0])).unwrap(), 0.0);
        assert_eq!(r.eval_noiseless(&Point::from([0.0, 0.0])).unwrap(), -1.0);
        let a = Objective::new(ObjectiveKind::Ackley, 0.01).unwrap();
        assert!(a.eval_noiseless(&Point::from([0.0, 0.0])).unwrap().abs() < 1e-14);
    }

    #[test]
    fn out_of_domain_rejected() {
        let r = Objective::new(ObjectiveKind::Rosenbrock, 0.01).unwrap();
        assert!(matches!(
            r.eval_noiseless(&Point::from([3.0, 0.0])),
            Err(Error::OutOfDomain { .. })
        ));
        assert!(r.eval_noiseless(&Point::from([0.0])).is_err());
    }

    #[test]
    fn noiseless_limit_and_determinism() {
        let x = Point::from([0.5, 0.5]);
        let quiet = Objective::new(ObjectiveKind::Ackley, 0.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(quiet.eval_noisy(&x, &mut rng).unwrap(), quiet.eval_noiseless(&x).unwrap());

        let noisy = Objective::new(ObjectiveKind::Ackley, 0.3).unwrap();
        let a = noisy.eval_noisy(&x, &mut ChaCha8Rng::seed_from_u64(8)).unwrap();
        let b = noisy.eval_noisy(&x, &mut ChaCha8Rng::seed_from_u64(8)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn noisy_mean_within_clt_band() {
        let x = Point::from([0.5, -1.0]);
        let obj = Objective::new(ObjectiveKind::Rosenbrock, 0.04).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let n = 100_000;
        let mean = (0..n).map(|_| obj.eval_noisy(&x, &mut rng).unwrap()).sum::<f64>() / n as f64;
        let f = obj.eval_noiseless(&x).unwrap();
        assert!((mean - f).abs() < 4.0 * 0.2 / (n as f64).sqrt());
    }

    #[test]
    fn noise_variance_matches() {
        let x = Point::from([0.0, 1.0]);
        let obj = Objective::new(ObjectiveKind::Ackley, 0.01).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let f = obj.eval_noiseless(&x).unwrap();
        let r: Vec<f64> = (0..10_000).map(|_| obj.eval_noisy(&x, &mut rng).unwrap() - f).collect();
        let m = r.iter().sum::<f64>() / r.len() as f64;
        let v = r.iter().map(|e| (e - m).powi(2)).sum::<f64>() / (r.len() - 1) as f64;
        assert!((v - 0.01).abs() < 0.001, "variance {v}");
    }

    #[test]
    fn grid_layout() {
        let obj = Objective::new(ObjectiveKind::Rosenbrock, 0.01)
            .unwrap()
            .with_bounds([(0.0, 1.0); 2])
            .unwrap();
        let g = obj.make_grid(2).unwrap();
        let expect: Vec<Point> = [[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]]
            .into_iter()
            .map(Point::from)
            .collect();
        assert_eq!(g, expect);
        assert_eq!(obj.make_grid(7).unwrap().len(), 49);
        assert!(obj.make_grid(1).is_err());
    }

    #[test]
    fn grid_reaches_optimum_cell() {
        for kind in [ObjectiveKind::Rosenbrock, ObjectiveKind::Ackley] {
            let obj = Objective::new(kind, 0.01).unwrap();
            let cell = (obj.bounds()[0].1 - obj.bounds()[0].0) / 49.0;
            let grid = obj.make_grid(50).unwrap();
            let opt = Point::from(kind.minimizer());
            let nearest = grid
                .iter()
                .map(|p| {
                    p.coords().iter().zip(opt.coords()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
                })
                .fold(f64::INFINITY, f64::min);
            assert!(nearest <= cell, "{kind}: {nearest} > {cell}");
        }
    }

    #[test]
    fn negated_functions_non_positive_on_grid() {
        let ack = Objective::new(ObjectiveKind::Ackley, 0.01).unwrap();
        let grid = ack.make_grid(51).unwrap();
        for p in &grid {
            let v = ack.eval_noiseless(p).unwrap();
            if p.coords().iter().all(|c| c.abs() < 1e-12) {
                assert!(v.abs() < 1e-14);
            } else {
                assert!(v < 0.0);
            }
        }

        let ros = Objective::new(ObjectiveKind::Rosenbrock, 0.01).unwrap();
        let grid = ros.make_grid(50).unwrap();
        let values: Vec<f64> = grid.iter().map(|p| ros.eval_noiseless(p).unwrap()).collect();
        assert!(values.iter().all(|&v| v <= 0.0));
        let best = &grid[argmax_index(&values).unwrap()];
        let dist = |p: &Point| (p.coords()[0] - 1.0).powi(2) + (p.coords()[1] - 1.0).powi(2);
        let nearest = grid.iter().map(|p| dist(p)).fold(f64::INFINITY, f64::min);
        assert!((dist(best) - nearest).abs() < 1e-12);
    }

    #[test]
    fn calibration_pins_grid_max_at_zero() {
        let obj = Objective::new(ObjectiveKind::Rosenbrock, 0.01).unwrap();
        let grid = obj.make_grid(20).unwrap();
        let cal = obj.calibrate(&grid).unwrap();
        assert_eq!(cal.opt_value(), 0.0);
        let values: Vec<f64> = grid.iter().map(|p| cal.eval_noiseless(p).unwrap()).collect();
        assert!(values.iter().all(|&v| v <= 0.0 && v >= -1.0 - 1e-12));
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        assert!((min + 1.0).abs() < 1e-12);
        let s = cal.scaling();
        assert!((s.denormalize_regret(1.0) - s.span).abs() < 1e-12);
    }

    #[test]
    fn unit_map() {
        let obj = Objective::new(ObjectiveKind::Ackley, 0.01).unwrap();
        assert_eq!(obj.to_unit(&Point::from([-5.0, 5.0])), Point::from([-1.0, 1.0]));
        assert_eq!(obj.to_unit(&Point::from([0.0, 0.0])), Point::from([0.0, 0.0]));
    }
}
