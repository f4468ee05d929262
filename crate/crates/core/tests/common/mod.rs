//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use dts::{CommGraph, GpPosterior, Kernel, KernelFamily, Point};
use nalgebra::{DMatrix, DVector};
use rand::Rng;

pub const FAMILIES: [KernelFamily; 3] = [KernelFamily::Matern52, KernelFamily::SquaredExponential, KernelFamily::Linear];

pub fn random_point<R: Rng>(rng: &mut R, d: usize) -> Point {
    Point::new((0..d).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap()
}

pub fn random_points<R: Rng>(rng: &mut R, n: usize, d: usize) -> Vec<Point> {
    (0..n).map(|_| random_point(rng, d)).collect()
}

pub fn random_kernel<R: Rng>(rng: &mut R, family: KernelFamily) -> Kernel {
    Kernel::new(family, rng.gen_range(0.2..2.0), rng.gen_range(0.5..2.0)).unwrap()
}

/// Mean and covariance through an explicit inverse of `K + s I`.
pub fn dense_moments(kernel: &Kernel, s: f64, x: &[Point], y: &[f64], q: &[Point]) -> (DVector<f64>, DMatrix<f64>) {
    let kq = DMatrix::from_fn(q.len(), q.len(), |i, j| kernel.eval(&q[i], &q[j]).unwrap());
    if x.is_empty() {
        return (DVector::zeros(q.len()), kq);
    }
    let a = kernel.gram(x) + DMatrix::identity(x.len(), x.len()) * s;
    let inv = a.try_inverse().expect("invertible");
    let kqx = DMatrix::from_fn(q.len(), x.len(), |i, j| kernel.eval(&q[i], &x[j]).unwrap());
    let mean = &kqx * &inv * DVector::from_column_slice(y);
    let cov = kq - &kqx * &inv * kqx.transpose();
    (mean, cov)
}

/// `½ log det(I + K/σ²)` through nalgebra's Cholesky.
pub fn dense_gain(kernel: &Kernel, noise: f64, x: &[Point]) -> f64 {
    let m = DMatrix::identity(x.len(), x.len()) + kernel.gram(x) / noise;
    0.5 * m.cholesky().expect("spd").l().diagonal().iter().map(|d| 2.0 * d.ln()).sum::<f64>()
}

/// Posterior variance at `x` given noisy observations at `given`.
pub fn variance_given(kernel: &Kernel, noise: f64, given: &[Point], x: &Point) -> f64 {
    let data = dts::Dataset::from_pairs(given.iter().cloned().map(|p| (p, 0.0))).unwrap();
    GpPosterior::new(*kernel, noise, data).unwrap().variance(x).unwrap()
}

fn vertex_mask(g: &CommGraph, i: usize) -> u32 {
    (0..g.m()).filter(|&j| g.has_edge(i, j)).fold(0, |m, j| m | 1 << j)
}

fn clique_masks(g: &CommGraph) -> Vec<bool> {
    let m = g.m();
    let nb: Vec<u32> = (0..m).map(|i| vertex_mask(g, i)).collect();
    (0..1u32 << m)
        .map(|s| (0..m).filter(|&i| s >> i & 1 == 1).all(|i| (s & !(1 << i)) & !nb[i] == 0))
        .collect()
}

/// Minimum number of cliques partitioning the vertices, by subset DP.
pub fn exhaustive_clique_cover_number(g: &CommGraph) -> usize {
    let m = g.m();
    let is_clique = clique_masks(g);
    let full = (1u32 << m) - 1;
    let mut best = vec![usize::MAX; 1 << m];
    best[0] = 0;
    for s in 1..=full {
        let low = s.trailing_zeros();
        let rest = s & !(1 << low);
        // cliques inside s that contain the lowest vertex
        let mut sub = rest;
        loop {
            let c = sub | 1 << low;
            if is_clique[c as usize] && best[(s & !c) as usize] != usize::MAX {
                best[s as usize] = best[s as usize].min(1 + best[(s & !c) as usize]);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    best[full as usize]
}

/// Size of the largest clique, by checking every vertex subset.
pub fn exhaustive_clique_number(g: &CommGraph) -> usize {
    clique_masks(g)
        .iter()
        .enumerate()
        .filter(|(_, &c)| c)
        .map(|(s, _)| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// The labelled graph on `m` vertices encoded by the bits of `code`
/// (one bit per unordered pair, lexicographic).
pub fn graph_from_code(m: usize, code: u64) -> CommGraph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for i in 0..m {
        for j in i + 1..m {
            if code >> bit & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    CommGraph::new(m, edges).unwrap()
}

pub fn pairs(m: usize) -> u32 {
    (m * m.saturating_sub(1) / 2) as u32
}
