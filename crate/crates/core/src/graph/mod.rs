//! Immutable simple undirected graphs in compressed adjacency form, G(n, p)
//! sampling, and the truncated-BFS primitives everything else is built on.
//!
//! Vertices are `0..n`. Adjacency lists are strictly sorted, which makes
//! intersections cheap and serialization canonical.

mod bfs;
pub mod families;
pub mod io;
mod random;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bfs::{ball, bfs_layers, neighborhood_union, Bfs, Closure};
pub use random::{gnp_sample, gnp_sample_with, mix_seed, RandomSource, SamplingMode};

/// Default cap on the number of edges an explicit power may have.
pub const DEFAULT_EDGE_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    /// Builds a graph from an edge list. Duplicate edges are merged; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        assert!(n <= u32::MAX as usize, "vertex ids are stored as u32");
        let edges: Vec<(usize, usize)> = edges.into_iter().collect();
        let mut degree = vec![0usize; n];
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop at {u}")));
            }
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0u32; offsets[n]];
        for &(u, v) in &edges {
            targets[fill[u]] = v as u32;
            fill[u] += 1;
            targets[fill[v]] = u as u32;
            fill[v] += 1;
        }
        let lists = (0..n).map(|v| {
            let mut list = targets[offsets[v]..offsets[v + 1]].to_vec();
            list.sort_unstable();
            list.dedup();
            list
        });
        Ok(Self::from_lists(n, lists))
    }

    /// Assembles a graph from per-vertex neighbour lists that are already
    /// sorted, deduplicated and symmetric.
    pub(crate) fn from_lists<I, L>(n: usize, lists: I) -> Self
    where
        I: IntoIterator<Item = L>,
        L: AsRef<[u32]>,
    {
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut targets = Vec::new();
        for list in lists {
            targets.extend_from_slice(list.as_ref());
            offsets.push(targets.len());
        }
        debug_assert_eq!(offsets.len(), n + 1);
        Self { offsets, targets }
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Checks the structural invariants: symmetry, sorted lists, no loops.
    pub fn validate(&self) -> Result<()> {
        for u in 0..self.n() {
            let list = self.neighbors(u);
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidArgument(format!(
                    "adjacency of {u} is not strictly sorted"
                )));
            }
            for &v in list {
                let v = v as usize;
                if v >= self.n() || v == u || !self.has_edge(v, u) {
                    return Err(Error::InvalidArgument(format!("bad entry {v} in list of {u}")));
                }
            }
        }
        Ok(())
    }

    /// Connected component label for every vertex (labels in order of first
    /// appearance) and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.n();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in self.neighbors(u) {
                    let w = w as usize;
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }
}

/// Sorted set of distinct vertex indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn from_unsorted(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Self(vertices)
    }

    pub fn all(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Position of `v` inside the set, if present.
    pub fn rank(&self, v: usize) -> Option<usize> {
        self.0.binary_search(&v).ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_unsorted(iter.into_iter().collect())
    }
}

/// Explicit r-th power. `u ~ v` in the result iff `1 <= dist(u, v) <= r`.
///
/// Fails with [`Error::MemoryBudget`] when the power would carry more than
/// `edge_cap` edges; callers should fall back to the implicit operations in
/// [`crate::metrics`].
pub fn graph_power(g: &Graph, r: usize, edge_cap: u64) -> Result<Graph> {
    use rayon::prelude::*;

    if r == 0 {
        return Err(Error::InvalidArgument("power radius must be >= 1".into()));
    }
    if r == 1 {
        return Ok(g.clone());
    }
    let n = g.n();
    let degree_sum: u64 = (0..n)
        .into_par_iter()
        .map_init(
            || Bfs::new(n),
            |bfs, v| (bfs.run(g, &[v], r).reached().len() - 1) as u64,
        )
        .sum();
    let edges = degree_sum / 2;
    if edges > edge_cap {
        return Err(Error::MemoryBudget { edges, cap: edge_cap });
    }
    let lists: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map_init(
            || Bfs::new(n),
            |bfs, v| {
                let mut list: Vec<u32> = bfs.run(g, &[v], r).reached()[1..].to_vec();
                list.sort_unstable();
                list
            },
        )
        .collect();
    Ok(Graph::from_lists(n, lists))
}

/// Subgraph induced by a vertex set, together with the index map.
///
/// New vertex `i` is `vertices[i]` in the parent graph; the reverse map is
/// `vertices.rank(old)`.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub vertices: VertexSet,
}

impl InducedSubgraph {
    pub fn new_index(&self, old: usize) -> Option<usize> {
        self.vertices.rank(old)
    }

    pub fn old_index(&self, new: usize) -> usize {
        self.vertices.as_slice()[new]
    }
}

pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> InducedSubgraph {
    let lists = s.iter().map(|u| {
        g.neighbors(u)
            .iter()
            .filter_map(|&w| s.rank(w as usize).map(|i| i as u32))
            .collect::<Vec<u32>>()
    });
    InducedSubgraph {
        graph: Graph::from_lists(s.len(), lists),
        vertices: s.clone(),
    }
}

/// Returns the vertices of one cycle, in cycle order, or `None` for a forest.
pub fn find_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                let w = w as usize;
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = u;
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                } else if parent[u] != w {
                    return Some(close_cycle(u, w, &parent, &depth));
                }
            }
        }
    }
    None
}

fn close_cycle(u: usize, w: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (u, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    left
}

pub fn is_forest(g: &Graph) -> bool {
    find_cycle(g).is_none()
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    #[test]
    fn from_edges_merges_duplicates() {
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
        g.validate().unwrap();
    }

    #[test]
    fn from_edges_rejects_loops_and_range() {
        assert!(Graph::from_edges(3, [(1, 1)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn power_of_path() {
        let p2 = graph_power(&path(5), 2, DEFAULT_EDGE_CAP).unwrap();
        let edges: Vec<_> = p2.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]);
    }

    #[test]
    fn power_of_c5_is_k5() {
        assert_eq!(graph_power(&cycle(5), 2, DEFAULT_EDGE_CAP).unwrap(), complete(5));
    }

    #[test]
    fn power_one_is_identity() {
        let g = petersen();
        assert_eq!(graph_power(&g, 1, DEFAULT_EDGE_CAP).unwrap(), g);
    }

    #[test]
    fn power_respects_edge_cap() {
        let err = graph_power(&cycle(9), 2, 10).unwrap_err();
        assert!(matches!(err, Error::MemoryBudget { edges: 18, cap: 10 }));
    }

    #[test]
    fn induced_examples() {
        let sub = induced_subgraph(&complete(4), &VertexSet::from_unsorted(vec![0, 1]));
        assert_eq!(sub.graph.m(), 1);
        assert_eq!(induced_subgraph(&cycle(5), &VertexSet::all(5)).graph, cycle(5));
        let sub = induced_subgraph(&path(5), &VertexSet::from_unsorted(vec![4, 0, 2]));
        assert_eq!(sub.graph.n(), 3);
        assert_eq!(sub.graph.m(), 0);
        assert_eq!(sub.new_index(4), Some(2));
        assert_eq!(sub.new_index(3), None);
        assert_eq!(sub.old_index(1), 2);
    }

    #[test]
    fn forest_checks() {
        assert!(is_forest(&path(6)));
        assert!(is_forest(&star(5)));
        let two_paths = Graph::from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        assert!(is_forest(&two_paths));
        let mut witness = find_cycle(&complete(3)).unwrap();
        witness.sort_unstable();
        assert_eq!(witness, vec![0, 1, 2]);
    }

    #[test]
    fn cycle_witness_is_a_cycle() {
        for g in [cycle(7), petersen(), grid(3, 4), complete(5)] {
            let c = find_cycle(&g).unwrap();
            assert!(c.len() >= 3);
            for i in 0..c.len() {
                assert!(g.has_edge(c[i], c[(i + 1) % c.len()]), "{c:?}");
            }
            let distinct: VertexSet = c.iter().copied().collect();
            assert_eq!(distinct.len(), c.len());
        }
    }
}
