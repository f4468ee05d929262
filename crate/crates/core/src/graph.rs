//! Undirected communication graphs between agents.

use std::collections::BTreeSet;
use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Largest graph for which [`max_clique`] runs the exact search.
pub const EXACT_CLIQUE_LIMIT: usize = 64;

/// Undirected simple graph on vertices `0..m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommGraph {
    m: usize,
    adjacency: Vec<Vec<usize>>,
}

/// On-disk form: `{"m": int, "edges": [[i, j], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub m: usize,
    pub edges: Vec<[usize; 2]>,
}

impl CommGraph {
    /// Build a graph from an edge list. Duplicate and reversed pairs are
    /// merged; self-loops and out-of-range endpoints are rejected.
    pub fn new(m: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut sets = vec![BTreeSet::new(); m];
        for (i, j) in edges {
            if i == j {
                return Err(invalid("edges", format!("self-loop at vertex {i}")));
            }
            for v in [i, j] {
                if v >= m {
                    return Err(Error::IndexOutOfRange { index: v, len: m });
                }
            }
            sets[i].insert(j);
            sets[j].insert(i);
        }
        Ok(Self {
            m,
            adjacency: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    pub fn empty(m: usize) -> Self {
        Self {
            m,
            adjacency: vec![Vec::new(); m],
        }
    }

    pub fn complete(m: usize) -> Self {
        Self {
            m,
            adjacency: (0..m).map(|i| (0..m).filter(|&j| j != i).collect()).collect(),
        }
    }

    /// Number of agents.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, ns)| ns.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    /// Sorted neighbor set `N(i)`.
    pub fn neighbors(&self, i: usize) -> Result<&[usize]> {
        self.adjacency
            .get(i)
            .map(Vec::as_slice)
            .ok_or(Error::IndexOutOfRange { index: i, len: self.m })
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.m && self.adjacency[i].binary_search(&j).is_ok()
    }

    /// Whether every pair in `vertices` is adjacent.
    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(a, &i)| {
            i < self.m && vertices[a + 1..].iter().all(|&j| self.has_edge(i, j))
        })
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            m: self.m,
            edges: self.edges().map(|(i, j)| [i, j]).collect(),
        }
    }

    pub fn from_file(file: &GraphFile) -> Result<Self> {
        Self::new(file.m, file.edges.iter().map(|e| (e[0], e[1])))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("graph serializes")
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, GraphLoadError> {
        let file: GraphFile = serde_json::from_str(s)?;
        Ok(Self::from_file(&file)?)
    }

    pub fn load(path: &Path) -> std::result::Result<Self, GraphLoadError> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum GraphLoadError {
    #[error("cannot read graph file: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot parse graph JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid graph: {0}")]
    Invalid(#[from] Error),
}

/// G(m, p): every one of the `m(m−1)/2` pairs is an edge independently with
/// probability `p`. Pairs are visited in lexicographic order.
pub fn erdos_renyi<R: Rng + ?Sized>(m: usize, p: f64, rng: &mut R) -> Result<CommGraph> {
    if m == 0 {
        return Err(invalid("m", "need at least one agent"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid("p", format!("edge probability {p} outside [0, 1]")));
    }
    let mut edges = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    CommGraph::new(m, edges)
}

/// A partition of the vertices into cliques.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueCover {
    pub parts: Vec<Vec<usize>>,
}

impl CliqueCover {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }

    pub fn largest(&self) -> usize {
        self.parts.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Parts are disjoint, cover every vertex, and each is a clique of `g`.
    pub fn is_valid_for(&self, g: &CommGraph) -> bool {
        let mut seen = vec![false; g.m()];
        for part in &self.parts {
            if part.is_empty() || !g.is_clique(part) {
                return false;
            }
            for &v in part {
                if v >= g.m() || seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Greedy clique cover: seed a clique at the lowest uncovered vertex and add
/// every uncovered vertex, in index order, that is adjacent to all members.
/// Uses at least `θ(G)` parts.
pub fn greedy_clique_cover(g: &CommGraph) -> CliqueCover {
    let mut covered = vec![false; g.m()];
    let mut parts = Vec::new();
    for seed in 0..g.m() {
        if covered[seed] {
            continue;
        }
        covered[seed] = true;
        let mut part = vec![seed];
        for &v in g.neighbors(seed).expect("in range") {
            if !covered[v] && part.iter().all(|&u| g.has_edge(u, v)) {
                covered[v] = true;
                part.push(v);
            }
        }
        parts.push(part);
    }
    CliqueCover { parts }
}

/// A maximum clique (exact branch and bound for `m ≤ 64`, greedy above).
/// Returned sorted.
pub fn max_clique(g: &CommGraph) -> Vec<usize> {
    if g.m() == 0 {
        return Vec::new();
    }
    if g.m() <= EXACT_CLIQUE_LIMIT {
        exact_max_clique(g)
    } else {
        greedy_max_clique(g)
    }
}

fn exact_max_clique(g: &CommGraph) -> Vec<usize> {
    let masks: Vec<u64> = (0..g.m())
        .map(|i| g.neighbors(i).expect("in range").iter().fold(0u64, |m, &j| m | 1 << j))
        .collect();

    fn expand(masks: &[u64], current: u64, candidates: u64, best: &mut u64) {
        if candidates == 0 {
            if current.count_ones() > best.count_ones() {
                *best = current;
            }
            return;
        }
        let mut cand = candidates;
        while cand != 0 {
            if current.count_ones() + cand.count_ones() <= best.count_ones() {
                return;
            }
            let v = cand.trailing_zeros() as usize;
            cand &= !(1u64 << v);
            expand(masks, current | 1 << v, cand & masks[v], best);
        }
    }

    let all = if g.m() == 64 { u64::MAX } else { (1u64 << g.m()) - 1 };
    // any single vertex is a clique
    let mut best = 1u64;
    expand(&masks, 0, all, &mut best);
    (0..g.m()).filter(|&i| best >> i & 1 == 1).collect()
}

fn greedy_max_clique(g: &CommGraph) -> Vec<usize> {
    let mut best = Vec::new();
    for seed in 0..g.m() {
        let mut clique = vec![seed];
        let mut ns = g.neighbors(seed).expect("in range").to_vec();
        ns.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
        for v in ns {
            if clique.iter().all(|&u| g.has_edge(u, v)) {
                clique.push(v);
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn path3() -> CommGraph {
        CommGraph::new(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn er_extremes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(erdos_renyi(7, 1.0, &mut rng).unwrap().edge_count(), 21);
        assert_eq!(erdos_renyi(7, 0.0, &mut rng).unwrap().edge_count(), 0);
    }

    #[test]
    fn er_rejects_bad_probability() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(erdos_renyi(5, 1.3, &mut rng).is_err());
        assert!(erdos_renyi(5, -0.1, &mut rng).is_err());
        assert!(erdos_renyi(0, 0.5, &mut rng).is_err());
    }

    #[test]
    fn er_mean_edge_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let total: usize = (0..1000).map(|_| erdos_renyi(20, 0.4, &mut rng).unwrap().edge_count()).sum();
        let mean = total as f64 / 1000.0;
        assert!(mean > 72.0 && mean < 80.0, "mean {mean}");
    }

    #[test]
    fn er_deterministic() {
        let a = erdos_renyi(12, 0.5, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let b = erdos_renyi(12, 0.5, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn neighbor_examples() {
        let k = CommGraph::complete(4);
        assert_eq!(k.neighbors(2).unwrap(), &[0, 1, 3]);
        assert!(CommGraph::empty(4).neighbors(2).unwrap().is_empty());
        assert_eq!(path3().neighbors(1).unwrap(), &[0, 2]);
        assert_eq!(
            path3().neighbors(3).unwrap_err(),
            Error::IndexOutOfRange { index: 3, len: 3 }
        );
    }

    #[test]
    fn construction_normalizes_edges() {
        let g = CommGraph::new(3, [(1, 0), (0, 1), (2, 1)]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert!(CommGraph::new(3, [(1, 1)]).is_err());
        assert!(CommGraph::new(3, [(0, 3)]).is_err());
    }

    #[test]
    fn cover_examples() {
        let c = greedy_clique_cover(&CommGraph::complete(5));
        assert_eq!(c.parts, vec![vec![0, 1, 2, 3, 4]]);
        let c = greedy_clique_cover(&CommGraph::empty(4));
        assert_eq!(c.sizes(), vec![1, 1, 1, 1]);
        let triangles = CommGraph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let c = greedy_clique_cover(&triangles);
        assert_eq!(c.sizes(), vec![3, 3]);
        assert!(c.is_valid_for(&triangles));
    }

    #[test]
    fn max_clique_examples() {
        assert_eq!(max_clique(&CommGraph::complete(6)).len(), 6);
        let star = CommGraph::new(5, (1..5).map(|i| (0, i))).unwrap();
        assert_eq!(max_clique(&star).len(), 2);
        let c5 = CommGraph::new(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let mc = max_clique(&c5);
        assert_eq!(mc.len(), 2);
        assert!(c5.is_clique(&mc));
        assert_eq!(max_clique(&CommGraph::empty(3)).len(), 1);
    }

    #[test]
    fn greedy_fallback_returns_clique() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = erdos_renyi(80, 0.3, &mut rng).unwrap();
        let c = max_clique(&g);
        assert!(g.is_clique(&c));
        assert!(c.len() >= 2);
    }

    #[test]
    fn json_round_trip_and_errors() {
        let g = path3();
        let s = g.to_json();
        assert_eq!(s, r#"{"m":3,"edges":[[0,1],[1,2]]}"#);
        assert_eq!(CommGraph::from_json(&s).unwrap(), g);
        assert!(matches!(CommGraph::from_json("{not json"), Err(GraphLoadError::Parse(_))));
        assert!(matches!(
            CommGraph::from_json(r#"{"m":2,"edges":[[0,5]]}"#),
            Err(GraphLoadError::Invalid(_))
        ));
    }
}
