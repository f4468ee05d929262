//! Gaussian process prior and posterior machinery.
//!
//! Kernels, datasets, exact posterior moments at finite query sets, and joint
//! posterior draws used as Thompson samples. Two sampling routes exist:
//! [`GpPosterior::sample_posterior_path`] factors the posterior covariance of
//! the query set directly, while [`GridPrior::sample_posterior`] draws a prior
//! path on a fixed grid once-factored and corrects it with the data
//! (pathwise conditioning). Both produce draws from the same distribution.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::linalg::{dot, Cholesky};

/// A point of the search domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyInput("point coordinates"));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(invalid("point", format!("non-finite coordinate in {coords:?}")));
        }
        Ok(Self(coords))
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    fn check_dim(&self, other: &Point) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(())
    }
}

impl<const N: usize> From<[f64; N]> for Point {
    fn from(c: [f64; N]) -> Self {
        debug_assert!(c.iter().all(|v| v.is_finite()));
        Self(c.to_vec())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelFamily {
    SquaredExponential,
    /// Matérn with smoothness ν = 5/2.
    Matern52,
    Linear,
}

impl std::str::FromStr for KernelFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "se" | "rbf" | "squared_exponential" => Ok(Self::SquaredExponential),
            "matern52" | "matern" | "matern_5_2" => Ok(Self::Matern52),
            "linear" => Ok(Self::Linear),
            other => Err(invalid("kernel", format!("unknown kernel family `{other}`"))),
        }
    }
}

impl std::fmt::Display for KernelFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::SquaredExponential => "squared_exponential",
            Self::Matern52 => "matern52",
            Self::Linear => "linear",
        })
    }
}

/// Covariance function with fixed hyperparameters.
///
/// The linear kernel ignores the lengthscale: `k(x, x') = s · xᵀx'`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Kernel {
    pub family: KernelFamily,
    pub lengthscale: f64,
    pub output_scale: f64,
}

impl Default for Kernel {
    fn default() -> Self {
        Self {
            family: KernelFamily::Matern52,
            lengthscale: 1.0,
            output_scale: 1.0,
        }
    }
}

impl Kernel {
    pub fn new(family: KernelFamily, lengthscale: f64, output_scale: f64) -> Result<Self> {
        if !(lengthscale > 0.0 && lengthscale.is_finite()) {
            return Err(invalid("lengthscale", format!("must be positive, got {lengthscale}")));
        }
        if !(output_scale > 0.0 && output_scale.is_finite()) {
            return Err(invalid("output_scale", format!("must be positive, got {output_scale}")));
        }
        Ok(Self {
            family,
            lengthscale,
            output_scale,
        })
    }

    pub fn matern52(lengthscale: f64, output_scale: f64) -> Result<Self> {
        Self::new(KernelFamily::Matern52, lengthscale, output_scale)
    }

    pub fn squared_exponential(lengthscale: f64, output_scale: f64) -> Result<Self> {
        Self::new(KernelFamily::SquaredExponential, lengthscale, output_scale)
    }

    pub fn linear(output_scale: f64) -> Result<Self> {
        Self::new(KernelFamily::Linear, 1.0, output_scale)
    }

    /// `k(x, x')`.
    pub fn eval(&self, x: &Point, y: &Point) -> Result<f64> {
        x.check_dim(y)?;
        Ok(self.eval_coords(x.coords(), y.coords()))
    }

    /// `k(x, x')` without the dimension check.
    #[inline]
    pub fn eval_coords(&self, x: &[f64], y: &[f64]) -> f64 {
        match self.family {
            KernelFamily::Linear => self.output_scale * dot(x, y),
            KernelFamily::SquaredExponential => {
                let r2 = sq_dist(x, y) / (self.lengthscale * self.lengthscale);
                self.output_scale * (-0.5 * r2).exp()
            }
            KernelFamily::Matern52 => {
                let r = sq_dist(x, y).sqrt() / self.lengthscale;
                let s = 5f64.sqrt() * r;
                self.output_scale * (1.0 + s + s * s / 3.0) * (-s).exp()
            }
        }
    }

    /// Gram matrix `K[i, j] = k(points[i], points[j])`.
    pub fn gram(&self, points: &[Point]) -> DMatrix<f64> {
        let n = points.len();
        let mut k = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let v = self.eval_coords(points[i].coords(), points[j].coords());
                k[(i, j)] = v;
                k[(j, i)] = v;
            }
        }
        k
    }
}

#[inline]
fn sq_dist(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum()
}

/// Ordered observations `(x, y)`. Insertion order is the conditioning order.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    points: Vec<Point>,
    values: Vec<f64>,
}

impl Dataset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Point, f64)>) -> Result<Self> {
        let mut d = Self::new();
        for (x, y) in pairs {
            d.push(x, y)?;
        }
        Ok(d)
    }

    pub fn push(&mut self, x: Point, y: f64) -> Result<()> {
        if !y.is_finite() {
            return Err(invalid("observation", format!("non-finite value {y}")));
        }
        if let Some(first) = self.points.first() {
            first.check_dim(&x)?;
        }
        self.points.push(x);
        self.values.push(y);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point, f64)> {
        self.points.iter().zip(self.values.iter().copied())
    }
}

/// Zero-mean GP conditioned on a dataset with Gaussian observation noise.
#[derive(Debug, Clone)]
pub struct GpPosterior {
    kernel: Kernel,
    noise_var: f64,
    data: Dataset,
    /// factor of `K_D + σ²I (+ jitter)`
    factor: Cholesky,
    /// `(K_D + σ²I)⁻¹ y`
    alpha: Vec<f64>,
}

impl GpPosterior {
    pub fn new(kernel: Kernel, noise_var: f64, data: Dataset) -> Result<Self> {
        if !(noise_var > 0.0 && noise_var.is_finite()) {
            return Err(invalid("noise_var", format!("must be positive, got {noise_var}")));
        }
        let pts = data.points();
        let factor = Cholesky::factor(data.len(), |i, j| {
            let k = kernel.eval_coords(pts[i].coords(), pts[j].coords());
            if i == j {
                k + noise_var
            } else {
                k
            }
        })?;
        let mut gp = Self {
            kernel,
            noise_var,
            data,
            factor,
            alpha: Vec::new(),
        };
        gp.refresh_alpha();
        Ok(gp)
    }

    /// The prior: no data.
    pub fn prior(kernel: Kernel, noise_var: f64) -> Result<Self> {
        Self::new(kernel, noise_var, Dataset::new())
    }

    /// Condition on additional observations, appended after the existing
    /// ones. The factor grows row by row; if an appended row is not
    /// positive definite at the current jitter the factor is rebuilt with
    /// escalation.
    pub fn extend(&mut self, obs: impl IntoIterator<Item = (Point, f64)>) -> Result<()> {
        let mut col = Vec::new();
        let mut rebuild = false;
        for (x, y) in obs {
            self.data.push(x, y)?;
            if rebuild {
                continue;
            }
            let pts = self.data.points();
            let (new, old) = pts.split_last().expect("just pushed");
            col.clear();
            col.extend(old.iter().map(|p| self.kernel.eval_coords(p.coords(), new.coords())));
            let diag = self.kernel.eval_coords(new.coords(), new.coords()) + self.noise_var;
            if self.factor.push(&col, diag).is_err() {
                rebuild = true;
            }
        }
        if rebuild {
            let (kernel, noise_var) = (self.kernel, self.noise_var);
            let pts = self.data.points();
            self.factor = Cholesky::factor(pts.len(), |i, j| {
                let k = kernel.eval_coords(pts[i].coords(), pts[j].coords());
                if i == j {
                    k + noise_var
                } else {
                    k
                }
            })?;
        }
        self.refresh_alpha();
        Ok(())
    }

    fn refresh_alpha(&mut self) {
        let mut a = self.data.values().to_vec();
        self.factor.solve_in_place(&mut a);
        self.alpha = a;
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn noise_var(&self) -> f64 {
        self.noise_var
    }

    pub fn data(&self) -> &Dataset {
        &self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Jitter that was needed to factor the data covariance.
    pub fn jitter(&self) -> f64 {
        self.factor.jitter()
    }

    pub(crate) fn factor(&self) -> &Cholesky {
        &self.factor
    }

    fn check_query(&self, x: &Point) -> Result<()> {
        match self.data.points().first() {
            Some(p) => p.check_dim(x),
            None => Ok(()),
        }
    }

    fn cross_cov(&self, x: &Point) -> Vec<f64> {
        self.data
            .points()
            .iter()
            .map(|p| self.kernel.eval_coords(p.coords(), x.coords()))
            .collect()
    }

    /// Posterior mean and variance at a single point. The variance is
    /// clamped to `[0, k(x, x)]`.
    pub fn mean_variance(&self, x: &Point) -> Result<(f64, f64)> {
        self.check_query(x)?;
        let mut v = self.cross_cov(x);
        let mean = dot(&v, &self.alpha);
        self.factor.solve_lower_in_place(&mut v);
        let prior = self.kernel.eval_coords(x.coords(), x.coords());
        let var = (prior - dot(&v, &v)).clamp(0.0, prior);
        Ok((mean, var))
    }

    pub fn variance(&self, x: &Point) -> Result<f64> {
        self.mean_variance(x).map(|(_, v)| v)
    }

    /// Joint posterior mean vector and covariance matrix at `queries`.
    ///
    /// The covariance is exactly symmetric (the lower triangle is mirrored).
    pub fn posterior_moments(&self, queries: &[Point]) -> Result<(Vec<f64>, DMatrix<f64>)> {
        if queries.is_empty() {
            return Err(Error::EmptyInput("queries"));
        }
        for q in queries {
            self.check_query(q)?;
            queries[0].check_dim(q)?;
        }
        let q = queries.len();
        let mut mean = Vec::with_capacity(q);
        // columns of L⁻¹ K_{D,Q}
        let mut whitened = Vec::with_capacity(q);
        for x in queries {
            let mut v = self.cross_cov(x);
            mean.push(dot(&v, &self.alpha));
            self.factor.solve_lower_in_place(&mut v);
            whitened.push(v);
        }
        let mut cov = DMatrix::zeros(q, q);
        for i in 0..q {
            for j in 0..=i {
                let prior = self.kernel.eval_coords(queries[i].coords(), queries[j].coords());
                let c = prior - dot(&whitened[i], &whitened[j]);
                cov[(i, j)] = c;
                cov[(j, i)] = c;
            }
        }
        Ok((mean, cov))
    }

    /// One joint draw of the posterior process at `grid`.
    ///
    /// Factors the grid's posterior covariance, so the cost is cubic in the
    /// grid size. For repeated draws on a fixed grid use
    /// [`GridPrior::sample_posterior`].
    pub fn sample_posterior_path<R: Rng + ?Sized>(
        &self,
        grid: &[Point],
        rng: &mut R,
    ) -> Result<Vec<f64>> {
        let (mean, cov) = self.posterior_moments(grid)?;
        let chol = Cholesky::factor(grid.len(), |i, j| cov[(i, j)])?;
        let z: Vec<f64> = (0..grid.len()).map(|_| rng.sample(StandardNormal)).collect();
        let path = chol.mul_lower(&z);
        Ok(mean.iter().zip(path).map(|(m, p)| m + p).collect())
    }
}

/// Prior covariance of a fixed search grid, factored once.
///
/// Posterior draws are obtained by pathwise conditioning: with a prior draw
/// `f`, noise `ε ~ N(0, σ²I)` and data at grid indices `I`,
/// `f + K[:, I] (K_II + σ²I)⁻¹ (y − f[I] − ε)` is a draw from the posterior.
/// This requires every data point to be a grid point.
#[derive(Debug, Clone)]
pub struct GridPrior {
    kernel: Kernel,
    points: Vec<Point>,
    gram: Vec<f64>,
    factor: Cholesky,
}

impl GridPrior {
    pub fn new(kernel: Kernel, points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput("grid"));
        }
        for p in &points {
            points[0].check_dim(p)?;
        }
        let n = points.len();
        let mut gram = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let v = kernel.eval_coords(points[i].coords(), points[j].coords());
                gram[i * n + j] = v;
                gram[j * n + i] = v;
            }
        }
        let factor = Cholesky::factor(n, |i, j| gram[i * n + j])?;
        log::debug!("grid prior: {n} points, jitter {:e}", factor.jitter());
        Ok(Self {
            kernel,
            points,
            gram,
            factor,
        })
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn jitter(&self) -> f64 {
        self.factor.jitter()
    }

    /// Row `i` of the prior Gram matrix.
    pub fn gram_row(&self, i: usize) -> &[f64] {
        let n = self.len();
        &self.gram[i * n..(i + 1) * n]
    }

    /// One joint draw of the prior at every grid point.
    pub fn sample_prior<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let z: Vec<f64> = (0..self.len()).map(|_| rng.sample(StandardNormal)).collect();
        self.factor.mul_lower(&z)
    }

    /// One joint draw of `posterior` at every grid point. `data_index[j]` is
    /// the grid index of the `j`-th observation of `posterior`.
    pub fn sample_posterior<R: Rng + ?Sized>(
        &self,
        posterior: &GpPosterior,
        data_index: &[usize],
        rng: &mut R,
    ) -> Result<Vec<f64>> {
        if posterior.kernel() != &self.kernel {
            return Err(invalid("kernel", "posterior and grid prior use different kernels"));
        }
        if data_index.len() != posterior.len() {
            return Err(Error::DimensionMismatch {
                expected: posterior.len(),
                actual: data_index.len(),
            });
        }
        let n = self.len();
        if let Some(&bad) = data_index.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index: bad, len: n });
        }
        debug_assert!(data_index
            .iter()
            .zip(posterior.data().points())
            .all(|(&i, p)| &self.points[i] == p));

        let mut path = self.sample_prior(rng);
        let noise_sd = posterior.noise_var().sqrt();
        let mut resid: Vec<f64> = data_index
            .iter()
            .zip(posterior.data().values())
            .map(|(&i, &y)| {
                let eps: f64 = rng.sample(StandardNormal);
                y - path[i] - noise_sd * eps
            })
            .collect();
        posterior.factor().solve_in_place(&mut resid);
        for (&i, &w) in data_index.iter().zip(&resid) {
            for (f, k) in path.iter_mut().zip(self.gram_row(i)) {
                *f += w * k;
            }
        }
        Ok(path)
    }
}

/// Index of the largest value; ties go to the lowest index.
pub fn argmax_index(values: &[f64]) -> Result<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &v) in values.iter().enumerate() {
        match best {
            Some((_, b)) if !(v > b) => {}
            _ if v.is_nan() => {}
            _ => best = Some((i, v)),
        }
    }
    best.map(|(i, _)| i).ok_or(Error::EmptyInput("values"))
}

/// Grid point carrying the largest value; ties go to the lowest index.
pub fn argmax_on_grid<'a>(values: &[f64], grid: &'a [Point]) -> Result<&'a Point> {
    if values.len() != grid.len() {
        return Err(Error::DimensionMismatch {
            expected: grid.len(),
            actual: values.len(),
        });
    }
    Ok(&grid[argmax_index(values)?])
}
