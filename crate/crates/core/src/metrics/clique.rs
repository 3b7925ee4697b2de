//! Exact maximum clique by branch and bound with greedy-colouring bounds, and
//! the independence number on top of it.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest `n` for which the exact independence solver builds the complement.
const EXACT_INDEPENDENCE_MAX_N: usize = 4096;

struct CliqueSearch<'a> {
    adj: &'a [BitSet],
    nodes: u64,
    budget: u64,
    best: usize,
}

impl CliqueSearch<'_> {
    /// Greedy sequential colouring of `cand`; returns vertices ordered by
    /// colour class with the (1-based) class number of each.
    fn color_order(&self, cand: &BitSet) -> Vec<(usize, usize)> {
        let mut order = Vec::with_capacity(cand.count());
        let mut uncolored = cand.clone();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut avail = uncolored.clone();
            while let Some(v) = avail.first() {
                avail.remove(v);
                avail.difference_with(&self.adj[v]);
                uncolored.remove(v);
                order.push((v, color));
            }
        }
        order
    }

    fn expand(&mut self, size: usize, mut cand: BitSet) -> Result<(), ()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(());
        }
        let order = self.color_order(&cand);
        for &(v, color) in order.iter().rev() {
            if size + color <= self.best {
                return Ok(());
            }
            let next = cand.intersect(&self.adj[v]);
            if next.is_empty() {
                self.best = self.best.max(size + 1);
            } else {
                self.expand(size + 1, next)?;
            }
            cand.remove(v);
        }
        Ok(())
    }
}

/// Clique number of the graph given by bitset rows.
fn max_clique_bitsets(adj: &[BitSet], node_budget: u64) -> Result<usize> {
    let n = adj.len();
    if n == 0 {
        return Ok(0);
    }
    let mut search = CliqueSearch {
        adj,
        nodes: 0,
        budget: node_budget,
        best: 0,
    };
    let all = BitSet::full(n);
    let root_bound = search.color_order(&all).last().map_or(0, |&(_, c)| c);
    match search.expand(0, all) {
        Ok(()) => Ok(search.best),
        Err(()) => Err(Error::BudgetExceeded {
            what: "max clique",
            lower: search.best as u64,
            upper: root_bound as u64,
        }),
    }
}

/// Vertices relabelled by non-increasing degree, which keeps the colour bound
/// tight near the root.
fn degree_order(n: usize, degree: impl Fn(usize) -> usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (Reverse(degree(v)), v));
    order
}

/// Exact clique number `omega(g)`; fails with `BudgetExceeded` once more than
/// `node_budget` search nodes have been expanded.
pub fn max_clique_exact(g: &Graph, node_budget: u64) -> Result<usize> {
    let n = g.n();
    let order = degree_order(n, |v| g.degree(v));
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let adj: Vec<BitSet> = order
        .iter()
        .map(|&v| {
            let mut row = BitSet::new(n);
            for &w in g.neighbors(v) {
                row.insert(pos[w as usize]);
            }
            row
        })
        .collect();
    max_clique_bitsets(&adj, node_budget)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndependenceMode {
    /// Maximum clique of the complement; exact but exponential.
    Exact,
    /// Min-degree greedy; a lower bound that is always valid.
    Greedy,
}

/// Min-degree greedy independent set (smallest index breaks ties).
pub fn greedy_independent_set(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
        (0..n).map(|v| Reverse((degree[v], v))).collect();
    let mut chosen = Vec::new();
    while let Some(Reverse((d, v))) = heap.pop() {
        if !alive[v] || d != degree[v] {
            continue;
        }
        chosen.push(v);
        alive[v] = false;
        let removed: Vec<usize> = g
            .neighbors(v)
            .iter()
            .map(|&w| w as usize)
            .filter(|&w| alive[w])
            .collect();
        for &w in &removed {
            alive[w] = false;
        }
        for &x in std::iter::once(&v).chain(&removed) {
            for &y in g.neighbors(x) {
                let y = y as usize;
                if alive[y] {
                    degree[y] -= 1;
                    heap.push(Reverse((degree[y], y)));
                }
            }
        }
    }
    chosen.sort_unstable();
    chosen
}

/// Independence number `alpha(g)`.
pub fn independence_number(g: &Graph, mode: IndependenceMode, node_budget: u64) -> Result<usize> {
    let greedy = greedy_independent_set(g).len();
    if mode == IndependenceMode::Greedy {
        return Ok(greedy);
    }
    let n = g.n();
    if n > EXACT_INDEPENDENCE_MAX_N {
        return Err(Error::BudgetExceeded {
            what: "independence number",
            lower: greedy as u64,
            upper: n as u64,
        });
    }
    let order = degree_order(n, |v| n - 1 - g.degree(v));
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let complement: Vec<BitSet> = order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let mut row = BitSet::full(n);
            row.remove(i);
            for &w in g.neighbors(v) {
                row.remove(pos[w as usize]);
            }
            row
        })
        .collect();
    max_clique_bitsets(&complement, node_budget).map_err(|e| match e {
        Error::BudgetExceeded { lower, upper, .. } => Error::BudgetExceeded {
            what: "independence number",
            lower: lower.max(greedy as u64),
            upper,
        },
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    const BUDGET: u64 = 1_000_000;

    #[test]
    fn clique_examples() {
        assert_eq!(max_clique_exact(&cycle(5), BUDGET).unwrap(), 2);
        assert_eq!(max_clique_exact(&complete(4), BUDGET).unwrap(), 4);
        assert_eq!(max_clique_exact(&petersen(), BUDGET).unwrap(), 2);
        assert_eq!(max_clique_exact(&Graph::empty(3), BUDGET).unwrap(), 1);
        assert_eq!(max_clique_exact(&Graph::empty(0), BUDGET).unwrap(), 0);
    }

    #[test]
    fn clique_budget_reports_bounds() {
        let err = max_clique_exact(&complete_bipartite(20, 20), 1).unwrap_err();
        match err {
            Error::BudgetExceeded { lower, upper, .. } => assert!(lower <= 2 && upper >= 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn independence_examples() {
        let exact = IndependenceMode::Exact;
        assert_eq!(independence_number(&complete(4), exact, BUDGET).unwrap(), 1);
        assert_eq!(independence_number(&Graph::empty(7), exact, BUDGET).unwrap(), 7);
        assert_eq!(independence_number(&cycle(5), exact, BUDGET).unwrap(), 2);
        assert_eq!(independence_number(&petersen(), exact, BUDGET).unwrap(), 4);
    }

    #[test]
    fn greedy_independent_set_is_independent() {
        let g = grid(5, 6);
        let set = greedy_independent_set(&g);
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                assert!(!g.has_edge(u, v));
            }
        }
        assert_eq!(set.len(), 15);
        assert_eq!(greedy_independent_set(&star(6)).len(), 6);
    }
}
