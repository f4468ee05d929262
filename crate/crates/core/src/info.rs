//! Information-theoretic quantities of a GP under Gaussian observation noise.
//!
//! All values are in nats. The maximal information gain over `t` grid points
//! is estimated greedily, and the batch constant `ξ_n` by random sampling;
//! both are flagged as estimates through [`InfoMethod`].

use nalgebra::DMatrix;
use rand::seq::index::sample as sample_indices;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::gp::{Dataset, GpPosterior, Kernel, Point};
use crate::linalg::Cholesky;

/// Relative tolerance on the agreement between the two gain routes.
pub const GAIN_AGREEMENT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InfoMethod {
    ExactLogdet,
    ChainRule,
    GreedyLower,
    SampledLower,
}

impl std::fmt::Display for InfoMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::ExactLogdet => "exact_logdet",
            Self::ChainRule => "chain_rule",
            Self::GreedyLower => "greedy_lower",
            Self::SampledLower => "sampled_lower",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InfoEstimate {
    pub value: f64,
    pub method: InfoMethod,
    pub set_size: usize,
}

fn check_noise(noise_var: f64) -> Result<()> {
    if noise_var > 0.0 && noise_var.is_finite() {
        Ok(())
    } else {
        Err(invalid("noise_var", format!("must be positive, got {noise_var}")))
    }
}

/// `½ log det(I + σ⁻² K)` through a dense LU determinant.
pub fn gain_logdet(kernel: &Kernel, noise_var: f64, points: &[Point]) -> Result<f64> {
    check_noise(noise_var)?;
    if points.is_empty() {
        return Err(Error::EmptyInput("points"));
    }
    let n = points.len();
    let m = DMatrix::identity(n, n) + kernel.gram(points) / noise_var;
    let det = m.clone().lu().determinant();
    if !(det > 0.0 && det.is_finite()) {
        // fall back to the factorization (escalates jitter, or reports the failure)
        let chol = Cholesky::factor(n, |i, j| m[(i, j)])?;
        return Ok(0.5 * chol.log_det());
    }
    Ok(0.5 * det.ln())
}

/// Posterior variances `σ²_{j−1}(x_j)`, each conditioned on the points
/// before it in the given order.
pub fn sequential_variances(kernel: &Kernel, noise_var: f64, points: &[Point]) -> Result<Vec<f64>> {
    check_noise(noise_var)?;
    let mut gp = GpPosterior::prior(*kernel, noise_var)?;
    let mut out = Vec::with_capacity(points.len());
    for p in points {
        out.push(gp.variance(p)?);
        gp.extend([(p.clone(), 0.0)])?;
    }
    Ok(out)
}

/// `½ Σ_j log(1 + σ⁻² σ²_{j−1}(x_j))`.
pub fn gain_chain_rule(kernel: &Kernel, noise_var: f64, points: &[Point]) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::EmptyInput("points"));
    }
    let vars = sequential_variances(kernel, noise_var, points)?;
    Ok(0.5 * vars.iter().map(|v| (v / noise_var).ln_1p()).sum::<f64>())
}

/// Mutual information `I(y; f)` between the function and noisy observations
/// at `points`. Computed by log-determinant and by the chain rule over
/// predictive variances; disagreement beyond [`GAIN_AGREEMENT_TOL`] is an
/// error.
pub fn information_gain(kernel: &Kernel, noise_var: f64, points: &[Point]) -> Result<InfoEstimate> {
    let logdet = gain_logdet(kernel, noise_var, points)?;
    let chain = gain_chain_rule(kernel, noise_var, points)?;
    if (logdet - chain).abs() > GAIN_AGREEMENT_TOL * logdet.abs().max(1.0) {
        return Err(Error::InconsistentGain { logdet, chain });
    }
    Ok(InfoEstimate {
        value: logdet,
        method: InfoMethod::ExactLogdet,
        set_size: points.len(),
    })
}

/// `I(f; y_B | y_A)` as the log-det difference `I(A ∪ B) − I(A)`.
pub fn conditional_gain(kernel: &Kernel, noise_var: f64, given: &[Point], extra: &[Point]) -> Result<f64> {
    if extra.is_empty() {
        return Ok(0.0);
    }
    let joint: Vec<Point> = given.iter().chain(extra).cloned().collect();
    let base = if given.is_empty() {
        0.0
    } else {
        gain_logdet(kernel, noise_var, given)?
    };
    Ok(gain_logdet(kernel, noise_var, &joint)? - base)
}

/// Result of comparing a standard-deviation ratio against the exponentiated
/// conditional information.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarianceRatioCheck {
    /// `σ_A(x) / σ_{A∪B}(x)`
    pub ratio: f64,
    /// `exp(I(f; y_B | y_A))`
    pub exp_info: f64,
}

impl VarianceRatioCheck {
    pub fn discrepancy(&self) -> f64 {
        (self.ratio - self.exp_info).abs()
    }
}

/// Evaluate both sides of the conditional variance-ratio identity at `x`.
///
/// For a single extra point `B = {b}` the two sides coincide at `x = b`:
/// `σ²_{A∪b}(b) = σ²_A(b) σ² / (σ²_A(b) + σ²)`. Elsewhere, and for larger
/// `B`, the left side depends on `x` while the right does not, so callers
/// should treat the discrepancy as a report.
pub fn conditional_variance_ratio_check(
    kernel: &Kernel,
    noise_var: f64,
    given: &[Point],
    extra: &[Point],
    x: &Point,
) -> Result<VarianceRatioCheck> {
    if given.iter().any(|a| extra.contains(a)) {
        return Err(invalid("B", "conditioning sets must be disjoint"));
    }
    let with = |pts: &[Point]| -> Result<f64> {
        let data = Dataset::from_pairs(pts.iter().cloned().map(|p| (p, 0.0)))?;
        GpPosterior::new(*kernel, noise_var, data)?.variance(x)
    };
    let var_a = with(given)?;
    let joint: Vec<Point> = given.iter().chain(extra).cloned().collect();
    let var_ab = with(&joint)?;
    if var_ab.sqrt() < 1e-12 {
        return Err(Error::DegenerateVariance(var_ab.sqrt()));
    }
    Ok(VarianceRatioCheck {
        ratio: (var_a / var_ab).sqrt(),
        exp_info: conditional_gain(kernel, noise_var, given, extra)?.exp(),
    })
}

/// Greedy information-gain curve: entry `k` is the gain of the first `k`
/// greedily chosen grid points (entry 0 is 0).
///
/// Each step picks the unchosen grid point with the largest current
/// posterior variance (lowest index on ties), which maximizes the marginal gain
/// `½ log(1 + σ⁻² σ²(x))`. Variances are downdated with one rank-one
/// correction per step, so the cost is `O(|grid| t²)`.
pub fn greedy_gain_curve(kernel: &Kernel, noise_var: f64, grid: &[Point], t_max: usize) -> Result<Vec<f64>> {
    check_noise(noise_var)?;
    if grid.is_empty() {
        return Err(Error::EmptyInput("grid"));
    }
    if t_max > grid.len() {
        return Err(invalid("t", format!("{t_max} exceeds grid size {}", grid.len())));
    }
    let mut var: Vec<f64> = grid.iter().map(|p| kernel.eval_coords(p.coords(), p.coords())).collect();
    // features[s][x] = c_s(x), with k_post(x, x') = k(x, x') − Σ_s c_s(x) c_s(x')
    let mut features: Vec<Vec<f64>> = Vec::with_capacity(t_max);
    let mut chosen = vec![false; grid.len()];
    let mut curve = Vec::with_capacity(t_max + 1);
    curve.push(0.0);
    let mut total = 0.0;
    for _ in 0..t_max {
        let mut best = None;
        for (i, &v) in var.iter().enumerate() {
            match best {
                _ if chosen[i] => {}
                Some((_, b)) if !(v > b) => {}
                _ => best = Some((i, v)),
            }
        }
        let (pick, v) = best.expect("t_max ≤ |grid|");
        chosen[pick] = true;
        total += 0.5 * (v.max(0.0) / noise_var).ln_1p();
        curve.push(total);
        let scale = 1.0 / (v.max(0.0) + noise_var).sqrt();
        let xp = grid[pick].coords();
        let c: Vec<f64> = grid
            .iter()
            .enumerate()
            .map(|(x, p)| {
                let mut k = kernel.eval_coords(p.coords(), xp);
                for f in &features {
                    k -= f[x] * f[pick];
                }
                k * scale
            })
            .collect();
        for (vx, cx) in var.iter_mut().zip(&c) {
            *vx = (*vx - cx * cx).max(0.0);
        }
        features.push(c);
    }
    Ok(curve)
}

/// Greedy estimate of the maximal information gain over `t` grid points.
/// A lower estimate of the true maximum.
pub fn estimate_mig(kernel: &Kernel, noise_var: f64, grid: &[Point], t: usize) -> Result<InfoEstimate> {
    if t == 0 {
        return Err(invalid("t", "must be at least 1"));
    }
    let curve = greedy_gain_curve(kernel, noise_var, grid, t)?;
    Ok(InfoEstimate {
        value: curve[t],
        method: InfoMethod::GreedyLower,
        set_size: t,
    })
}

/// Sampled `ξ̂_n` for every `n = 1..=n_max`; entry `n − 1` holds `ξ̂_n`.
///
/// Each trial draws a history `D` of `history_size` grid points (with
/// replacement) and an ordered batch of `n_max − 1` distinct grid points.
/// The gain of every batch prefix `A` (`|A| = n − 1`) given `D` is read off a
/// single factorization, so the class of batches for `n` is nested in the
/// class for `n + 1` and the table is non-decreasing by construction.
pub fn estimate_xi_table<R: Rng + ?Sized>(
    kernel: &Kernel,
    noise_var: f64,
    grid: &[Point],
    n_max: usize,
    history_size: usize,
    trials: usize,
    rng: &mut R,
) -> Result<Vec<f64>> {
    check_noise(noise_var)?;
    if n_max == 0 {
        return Err(invalid("n", "must be at least 1"));
    }
    if n_max > grid.len() {
        return Err(invalid("n", format!("{n_max} exceeds grid size {}", grid.len())));
    }
    if trials == 0 {
        return Err(invalid("trials", "must be at least 1"));
    }
    let batch = n_max - 1;
    let mut best = vec![0.0f64; n_max];
    if batch == 0 {
        return Ok(vec![1.0]);
    }
    for _ in 0..trials {
        let history: Vec<Point> = (0..history_size)
            .map(|_| grid[rng.gen_range(0..grid.len())].clone())
            .collect();
        let picks: Vec<Point> = sample_indices(rng, grid.len(), batch)
            .into_iter()
            .map(|i| grid[i].clone())
            .collect();
        let data = Dataset::from_pairs(history.into_iter().map(|p| (p, 0.0)))?;
        let gp = GpPosterior::new(*kernel, noise_var, data)?;
        let (_, cov) = gp.posterior_moments(&picks)?;
        let chol = Cholesky::factor(batch, |i, j| {
            cov[(i, j)] + if i == j { noise_var } else { 0.0 }
        })?;
        let mut gain = 0.0;
        for k in 0..batch {
            let d = chol.diag(k);
            gain += 0.5 * (d * d / noise_var).ln().max(0.0);
            best[k + 1] = best[k + 1].max(gain);
        }
    }
    for k in 1..n_max {
        best[k] = best[k].max(best[k - 1]);
    }
    Ok(best.iter().map(|g| (2.0 * g).exp()).collect())
}

/// Sampled `ξ̂_n = exp(2 · max I(f; y_A | y_D))` over random `(D, A)` with
/// `|D| = history_size` and `|A| = n − 1`.
pub fn estimate_xi<R: Rng + ?Sized>(
    kernel: &Kernel,
    noise_var: f64,
    grid: &[Point],
    n: usize,
    history_size: usize,
    trials: usize,
    rng: &mut R,
) -> Result<f64> {
    let table = estimate_xi_table(kernel, noise_var, grid, n, history_size, trials, rng)?;
    Ok(table[n - 1])
}
