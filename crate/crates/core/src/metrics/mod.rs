//! Degree, clique, independence, co-degree and short-cycle statistics of `G`
//! and its powers.
//!
//! Everything here works on the base graph with truncated BFS; the r-th power
//! is never materialised unless a function says so.

mod clique;
mod cycles;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Bfs, Graph, VertexSet, DEFAULT_EDGE_CAP};

pub use clique::{greedy_independent_set, independence_number, max_clique_exact, IndependenceMode};
pub use cycles::{short_cycle_proximity, DEFAULT_MAX_CYCLE_LENGTH};

/// Degree of `v` in `G^r`.
pub fn power_degree(g: &Graph, v: usize, r: usize) -> usize {
    Bfs::new(g.n()).run(g, &[v], r).reached().len() - 1
}

/// Degree of every vertex in `G^r`, computed in parallel.
pub fn power_degrees(g: &Graph, r: usize) -> Vec<usize> {
    let n = g.n();
    (0..n)
        .into_par_iter()
        .map_init(|| Bfs::new(n), |bfs, v| bfs.run(g, &[v], r).reached().len() - 1)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerDegreeSummary {
    pub r: usize,
    /// Maximum degree of `G^r`.
    pub delta_r: usize,
    /// Smallest vertex attaining `delta_r` (`None` for the empty graph).
    pub argmax: Option<usize>,
    /// `histogram[k]` is the number of vertices with degree `k` in `G^r`.
    pub histogram: Vec<usize>,
}

pub fn power_max_degree(g: &Graph, r: usize) -> PowerDegreeSummary {
    summarize_degrees(r, &power_degrees(g, r))
}

pub(crate) fn summarize_degrees(r: usize, degrees: &[usize]) -> PowerDegreeSummary {
    let mut delta_r = 0;
    let mut argmax = None;
    for (v, &d) in degrees.iter().enumerate() {
        if argmax.is_none() || d > delta_r {
            delta_r = d;
            argmax = Some(v);
        }
    }
    let mut histogram = vec![0; if degrees.is_empty() { 0 } else { delta_r + 1 }];
    for &d in degrees {
        histogram[d] += 1;
    }
    PowerDegreeSummary {
        r,
        delta_r,
        argmax,
        histogram,
    }
}

/// `{ v : deg_{G^r}(v) > threshold }`. A negative threshold selects everything.
pub fn high_degree_set(g: &Graph, r: usize, threshold: i64) -> VertexSet {
    power_degrees(g, r)
        .into_iter()
        .enumerate()
        .filter(|&(_, d)| d as i64 > threshold)
        .map(|(v, _)| v)
        .collect()
}

/// Size of the largest ball of radius `floor(r/2)`, which is a clique of `G^r`.
///
/// For `r = 1` this degenerates to the trivial bound: 2 if there is an edge,
/// otherwise 1 (0 for the graph with no vertices).
pub fn clique_lower_bound(g: &Graph, r: usize) -> usize {
    if g.n() == 0 {
        return 0;
    }
    match r / 2 {
        0 if g.m() > 0 => 2,
        0 => 1,
        half => power_max_degree(g, half).delta_r + 1,
    }
}

/// Maximum co-degrees around BFS layers and power neighbourhoods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Codegree {
    /// Max over `v`, `1 <= i <= r` and `w != v` of the number of `G`-neighbours
    /// of `w` in the layer `N_i(v)`.
    pub layer: usize,
    /// Max over `v` and `w` in `N(v) = ball(v, r) \ {v}` of the number of
    /// `G`-neighbours of `w` inside `N(v)`.
    pub power: usize,
}

pub fn codegree_max(g: &Graph, r: usize) -> Codegree {
    let n = g.n();
    (0..n)
        .into_par_iter()
        .map_init(
            || (Bfs::new(n), vec![0u32; n], Vec::<u32>::new()),
            |(bfs, count, touched), v| {
                bfs.run(g, &[v], r);
                let mut layer_max = 0u32;
                for i in 1..=r {
                    for &u in bfs.layer(i) {
                        for &w in g.neighbors(u as usize) {
                            if w as usize == v {
                                continue;
                            }
                            if count[w as usize] == 0 {
                                touched.push(w);
                            }
                            count[w as usize] += 1;
                            layer_max = layer_max.max(count[w as usize]);
                        }
                    }
                    for &w in touched.iter() {
                        count[w as usize] = 0;
                    }
                    touched.clear();
                }
                let power_max = bfs.reached()[1..]
                    .iter()
                    .map(|&w| {
                        g.neighbors(w as usize)
                            .iter()
                            .filter(|&&x| x as usize != v && bfs.is_reached(x as usize))
                            .count()
                    })
                    .max()
                    .unwrap_or(0);
                Codegree {
                    layer: layer_max as usize,
                    power: power_max,
                }
            },
        )
        .reduce(
            || Codegree { layer: 0, power: 0 },
            |a, b| Codegree {
                layer: a.layer.max(b.layer),
                power: a.power.max(b.power),
            },
        )
}

/// Number of `G^r` edges with both ends in `ball(v, r) \ {v}`.
///
/// Fails with [`Error::MemoryBudget`] when the neighbourhood could hold more
/// than `pair_cap` pairs.
pub fn power_neighborhood_edge_count_capped(
    g: &Graph,
    v: usize,
    r: usize,
    pair_cap: u64,
) -> Result<u64> {
    let n = g.n();
    let mut bfs = Bfs::new(n);
    let nbhd: Vec<u32> = bfs.run(g, &[v], r).reached()[1..].to_vec();
    let k = nbhd.len() as u64;
    let pairs = k * k.saturating_sub(1) / 2;
    if pairs > pair_cap {
        return Err(Error::MemoryBudget {
            edges: pairs,
            cap: pair_cap,
        });
    }
    let mut inside = vec![false; n];
    for &u in &nbhd {
        inside[u as usize] = true;
    }
    let mut twice = 0u64;
    for &u in &nbhd {
        twice += bfs.run(g, &[u as usize], r).reached()[1..]
            .iter()
            .filter(|&&x| inside[x as usize])
            .count() as u64;
    }
    Ok(twice / 2)
}

pub fn power_neighborhood_edge_count(g: &Graph, v: usize, r: usize) -> Result<u64> {
    power_neighborhood_edge_count_capped(g, v, r, DEFAULT_EDGE_CAP)
}

/// One JSON-lines result record: `{"op": .., "params": .., "value": ..}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricRecord {
    pub op: String,
    pub params: serde_json::Value,
    pub value: serde_json::Value,
}

impl MetricRecord {
    pub fn new(op: &str, params: serde_json::Value, value: impl Serialize) -> Self {
        Self {
            op: op.to_string(),
            params,
            value: serde_json::to_value(value).expect("metric values serialize"),
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("metric records serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    #[test]
    fn power_degree_examples() {
        assert_eq!(power_degree(&path(5), 2, 2), 4);
        assert_eq!(power_degree(&complete(6), 3, 4), 5);
        assert_eq!(power_degree(&Graph::empty(4), 1, 3), 0);
    }

    #[test]
    fn max_degree_examples() {
        let s = power_max_degree(&path(5), 2);
        assert_eq!((s.delta_r, s.argmax), (4, Some(2)));
        assert_eq!(s.histogram, vec![0, 0, 2, 2, 1]);
        assert_eq!(power_max_degree(&cycle(5), 2).delta_r, 4);
        let g = petersen();
        assert_eq!(power_max_degree(&g, 1).delta_r, g.max_degree());
        assert_eq!(power_max_degree(&Graph::empty(0), 2).argmax, None);
    }

    #[test]
    fn high_degree_examples() {
        assert!(high_degree_set(&star(3), 2, 3).is_empty());
        assert!(high_degree_set(&petersen(), 2, 10).is_empty());
        assert_eq!(high_degree_set(&cycle(9), 2, 2), VertexSet::all(9));
        assert_eq!(high_degree_set(&Graph::empty(3), 1, -1), VertexSet::all(3));
    }

    #[test]
    fn clique_lower_bound_examples() {
        assert_eq!(clique_lower_bound(&star(3), 2), 4);
        assert_eq!(clique_lower_bound(&Graph::empty(5), 2), 1);
        assert_eq!(clique_lower_bound(&path(5), 4), 5);
        assert_eq!(clique_lower_bound(&path(5), 1), 2);
        assert_eq!(clique_lower_bound(&Graph::empty(5), 1), 1);
    }

    #[test]
    fn codegree_examples() {
        assert_eq!(codegree_max(&complete(4), 1), Codegree { layer: 2, power: 2 });
        assert_eq!(codegree_max(&Graph::empty(5), 2), Codegree { layer: 0, power: 0 });
        assert_eq!(codegree_max(&path(5), 1), Codegree { layer: 1, power: 0 });
    }

    #[test]
    fn neighborhood_edge_examples() {
        assert_eq!(power_neighborhood_edge_count(&star(4), 0, 1).unwrap(), 0);
        assert_eq!(power_neighborhood_edge_count(&star(4), 0, 2).unwrap(), 6);
        assert_eq!(power_neighborhood_edge_count(&Graph::empty(3), 1, 2).unwrap(), 0);
        assert_eq!(power_neighborhood_edge_count(&complete(4), 0, 1).unwrap(), 3);
        let err = power_neighborhood_edge_count_capped(&complete(10), 0, 1, 5).unwrap_err();
        assert!(matches!(err, Error::MemoryBudget { edges: 36, cap: 5 }));
    }

    #[test]
    fn record_shape() {
        let rec = MetricRecord::new("power_max_degree", serde_json::json!({"r": 2}), 4usize);
        assert_eq!(rec.to_json_line(), r#"{"op":"power_max_degree","params":{"r":2},"value":4}"#);
    }
}
