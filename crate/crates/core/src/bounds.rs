//! Closed-form regret bounds for distributed Thompson sampling, evaluated
//! from the communication graph and estimated information constants.
//!
//! Average regret after `t` rounds, for any partition of the agents into
//! disjoint cliques `V_1..V_n`:
//!
//! ```text
//! R_A(t) ≤ (1/M) Σ_k |V_k| ( C₁/(t|V_k|) + sqrt(C₂ ξ_{|V_k|} β_t Ψ_{t|V_k|} / (t|V_k|)) )
//! β_t = 2 log(t² M |X|),   C₁ = √2 π^{3/2} / 12,   C₂ = 2 / log(1 + σ⁻²)
//! ```
//!
//! The simple-regret bound has the same per-clique form for a single clique
//! `V_s`, with `β_t = 2 log(t² |V_s| |X|)`.
//!
//! Ψ and ξ come from [`crate::info`] as estimates, so every number produced
//! here is an estimate too and carries the method labels of its inputs.

use std::fmt::Write as _;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::{greedy_clique_cover, max_clique, CommGraph};
use crate::info::InfoMethod;

/// `√2 π^{3/2} / 12`
pub fn c1() -> f64 {
    2f64.sqrt() * PI.powf(1.5) / 12.0
}

/// `2 / log(1 + σ⁻²)`
pub fn c2(noise_var: f64) -> f64 {
    2.0 / (1.0 / noise_var).ln_1p()
}

/// Information constants indexed by set size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InfoTables {
    /// `psi[k]` is `Ψ_k`; `psi[0]` should be 0.
    pub psi: Vec<f64>,
    /// `xi[n − 1]` is `ξ_n`.
    pub xi: Vec<f64>,
    pub psi_method: InfoMethod,
    pub xi_method: InfoMethod,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundInputs {
    pub t: usize,
    /// Number of agents `M`.
    pub agents: usize,
    /// `|X|`. Real-valued so that synthetic checks can use any cardinality.
    pub grid_size: f64,
    pub noise_var: f64,
    /// Sizes `|V_k|` of a clique partition of the agents.
    pub clique_sizes: Vec<usize>,
    pub tables: InfoTables,
}

impl BoundInputs {
    fn validate(&self) -> Result<()> {
        if self.t == 0 {
            return Err(invalid("t", "must be at least 1"));
        }
        if self.agents == 0 {
            return Err(invalid("agents", "must be at least 1"));
        }
        if !(self.grid_size >= 1.0 && self.grid_size.is_finite()) {
            return Err(invalid("grid_size", format!("must be ≥ 1, got {}", self.grid_size)));
        }
        if !(self.noise_var > 0.0 && self.noise_var.is_finite()) {
            return Err(invalid("noise_var", format!("must be positive, got {}", self.noise_var)));
        }
        Ok(())
    }

    /// `Ψ_k`, with `k` clamped to the grid size.
    pub fn psi(&self, k: usize) -> Result<f64> {
        let k = k.min(self.grid_size.floor() as usize);
        self.tables.psi.get(k).copied().ok_or(Error::MissingEstimate {
            table: "psi",
            index: k,
            len: self.tables.psi.len(),
        })
    }

    /// `ξ_n` for `n ≥ 1`.
    pub fn xi(&self, n: usize) -> Result<f64> {
        n.checked_sub(1)
            .and_then(|i| self.tables.xi.get(i).copied())
            .ok_or(Error::MissingEstimate {
                table: "xi",
                index: n,
                len: self.tables.xi.len(),
            })
    }

    /// `β_t = 2 log(t² · group · |X|)`.
    pub fn beta(&self, group: usize) -> f64 {
        let t = self.t as f64;
        2.0 * (t * t * group as f64 * self.grid_size).ln()
    }

    /// `C₁/(t|V|) + sqrt(C₂ ξ_{|V|} β Ψ_{t|V|} / (t|V|))`
    fn clique_term(&self, size: usize, beta: f64) -> Result<f64> {
        if size == 0 {
            return Err(invalid("clique_sizes", "cliques must be non-empty"));
        }
        let tv = (self.t * size) as f64;
        let inner = c2(self.noise_var) * self.xi(size)? * beta * self.psi(self.t * size)? / tv;
        Ok(c1() / tv + inner.max(0.0).sqrt())
    }
}

/// Average-regret bound for the partition in `inputs.clique_sizes`.
pub fn bound_avg_regret(inputs: &BoundInputs) -> Result<f64> {
    inputs.validate()?;
    if inputs.clique_sizes.iter().sum::<usize>() != inputs.agents {
        return Err(invalid("clique_sizes", "clique sizes must sum to the number of agents"));
    }
    let beta = inputs.beta(inputs.agents);
    let mut total = 0.0;
    for &size in &inputs.clique_sizes {
        total += size as f64 * inputs.clique_term(size, beta)?;
    }
    Ok(total / inputs.agents as f64)
}

/// `C₁ n/(M t) + sqrt(n) sqrt(C₂ ξ_ω β_t Ψ_{tω}) / sqrt(M t)` for a cover of
/// `cover_size` cliques with largest clique `omega`.
pub fn clique_cover_bound(cover_size: usize, omega: usize, inputs: &BoundInputs) -> Result<f64> {
    inputs.validate()?;
    if cover_size == 0 || omega == 0 {
        return Err(invalid("cover", "cover size and clique number must be positive"));
    }
    let mt = (inputs.agents * inputs.t) as f64;
    let n = cover_size as f64;
    let beta = inputs.beta(inputs.agents);
    let inner = c2(inputs.noise_var) * inputs.xi(omega)? * beta * inputs.psi(inputs.t * omega)?;
    Ok(c1() * n / mt + n.sqrt() * inner.max(0.0).sqrt() / mt.sqrt())
}

/// Clique-cover form of the average-regret bound, with the greedy cover
/// size in place of `θ(G)` and the maximum clique size as `ω(G)`.
/// The greedy cover never has fewer parts than `θ(G)`, so the value is still
/// an upper bound for the same Ψ, ξ.
pub fn bound_avg_regret_clique_cover(g: &CommGraph, inputs: &BoundInputs) -> Result<f64> {
    if g.m() != inputs.agents {
        return Err(Error::DimensionMismatch {
            expected: inputs.agents,
            actual: g.m(),
        });
    }
    let n = greedy_clique_cover(g).len();
    let omega = max_clique(g).len();
    clique_cover_bound(n, omega, inputs)
}

/// Simple-regret bound for one clique of `clique_size` agents.
pub fn simple_regret_bound_for(clique_size: usize, inputs: &BoundInputs) -> Result<f64> {
    inputs.validate()?;
    inputs.clique_term(clique_size, inputs.beta(clique_size))
}

/// Simple-regret bound using the largest clique of `g`.
pub fn bound_simple_regret(g: &CommGraph, inputs: &BoundInputs) -> Result<f64> {
    if g.m() != inputs.agents {
        return Err(Error::DimensionMismatch {
            expected: inputs.agents,
            actual: g.m(),
        });
    }
    simple_regret_bound_for(max_clique(g).len(), inputs)
}

/// One row of the bound overlay.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub t: usize,
    pub bound_avg: f64,
    pub bound_simple: f64,
    pub psi_method: InfoMethod,
    pub xi_method: InfoMethod,
}

/// Evaluate both bounds for `g` at every `t` in `1..=rounds`. The average
/// bound uses the greedy clique cover of `g` as the partition.
pub fn bound_overlay(g: &CommGraph, grid_size: usize, noise_var: f64, tables: &InfoTables, rounds: usize) -> Result<Vec<BoundRow>> {
    let cover = greedy_clique_cover(g);
    let vmax = max_clique(g).len();
    (1..=rounds)
        .map(|t| {
            let inputs = BoundInputs {
                t,
                agents: g.m(),
                grid_size: grid_size as f64,
                noise_var,
                clique_sizes: cover.sizes(),
                tables: tables.clone(),
            };
            Ok(BoundRow {
                t,
                bound_avg: bound_avg_regret(&inputs)?,
                bound_simple: simple_regret_bound_for(vmax, &inputs)?,
                psi_method: tables.psi_method,
                xi_method: tables.xi_method,
            })
        })
        .collect()
}

/// `t,bound_avg,bound_simple,psi_method,xi_method`
pub fn bound_overlay_csv(rows: &[BoundRow]) -> String {
    let mut s = String::from("t,bound_avg,bound_simple,psi_method,xi_method\n");
    for r in rows {
        let _ = writeln!(s, "{},{},{},{},{}", r.t, r.bound_avg, r.bound_simple, r.psi_method, r.xi_method);
    }
    s
}

/// Kernel classes with known Ψ growth orders.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum GrowthFamily {
    Linear,
    SquaredExponential,
    Matern { nu: f64 },
}

/// Exponent `d(d+1) / (2ν + d(d+1))` of the Matérn growth order.
pub fn matern_growth_exponent(nu: f64, d: usize) -> f64 {
    let dd = (d * (d + 1)) as f64;
    dd / (2.0 * nu + dd)
}

/// Growth-order shapes of Ψ_τ with unit constants: `d log τ` (linear),
/// `(log τ)^{d+1}` (squared exponential), `τ^{d(d+1)/(2ν+d(d+1))} log τ`
/// (Matérn, ν > 1). For plotting against greedy estimates only.
pub fn psi_growth_reference(family: GrowthFamily, d: usize, t_values: &[f64]) -> Result<Vec<f64>> {
    if d == 0 {
        return Err(invalid("d", "dimension must be at least 1"));
    }
    if let Some(&bad) = t_values.iter().find(|&&t| !(t > 0.0)) {
        return Err(invalid("t", format!("growth reference needs τ > 0, got {bad}")));
    }
    let shape: Box<dyn Fn(f64) -> f64> = match family {
        GrowthFamily::Linear => Box::new(move |t: f64| d as f64 * t.ln()),
        GrowthFamily::SquaredExponential => Box::new(move |t: f64| t.ln().powi(d as i32 + 1)),
        GrowthFamily::Matern { nu } if nu > 1.0 => {
            let e = matern_growth_exponent(nu, d);
            Box::new(move |t: f64| t.powf(e) * t.ln())
        }
        GrowthFamily::Matern { nu } => {
            return Err(invalid("nu", format!("growth order known only for ν > 1, got {nu}")))
        }
    };
    Ok(t_values.iter().map(|&t| shape(t)).collect())
}
