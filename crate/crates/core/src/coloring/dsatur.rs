//! Exact chromatic number by DSATUR branch and bound, component by component.
//!
//! Each component starts from a clique lower bound and a DSATUR heuristic
//! upper bound; the search only runs when they differ.

use super::Coloring;
use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, Graph, VertexSet};
use crate::metrics::max_clique_exact;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromaticResult {
    pub chi: usize,
    pub witness: Coloring,
}

/// Classic DSATUR: repeatedly colour the vertex with the most distinct
/// neighbour colours (ties: larger degree, then smaller index) with the
/// smallest free colour.
pub fn dsatur_heuristic(g: &Graph) -> Coloring {
    let n = g.n();
    let mut state = SatState::new(g, g.max_degree() + 1);
    for _ in 0..n {
        let v = state.select(g);
        let c = (0..).find(|&c| state.count[v][c] == 0).unwrap();
        state.assign(g, v, c);
    }
    Coloring::new(state.color.iter().map(|c| c.unwrap()).collect(), 1)
}

struct SatState {
    color: Vec<Option<usize>>,
    /// `count[v][c]`: neighbours of `v` currently holding colour `c`.
    count: Vec<Vec<u32>>,
    saturation: Vec<usize>,
    uncolored_degree: Vec<usize>,
}

impl SatState {
    fn new(g: &Graph, palette: usize) -> Self {
        let n = g.n();
        Self {
            color: vec![None; n],
            count: vec![vec![0; palette]; n],
            saturation: vec![0; n],
            uncolored_degree: (0..n).map(|v| g.degree(v)).collect(),
        }
    }

    fn select(&self, g: &Graph) -> usize {
        (0..g.n())
            .filter(|&v| self.color[v].is_none())
            .max_by_key(|&v| (self.saturation[v], self.uncolored_degree[v], std::cmp::Reverse(v)))
            .expect("an uncoloured vertex remains")
    }

    fn assign(&mut self, g: &Graph, v: usize, c: usize) {
        self.color[v] = Some(c);
        for &w in g.neighbors(v) {
            let w = w as usize;
            if self.count[w][c] == 0 {
                self.saturation[w] += 1;
            }
            self.count[w][c] += 1;
            self.uncolored_degree[w] -= 1;
        }
    }

    fn unassign(&mut self, g: &Graph, v: usize) {
        let c = self.color[v].take().expect("vertex was coloured");
        for &w in g.neighbors(v) {
            let w = w as usize;
            self.count[w][c] -= 1;
            if self.count[w][c] == 0 {
                self.saturation[w] -= 1;
            }
            self.uncolored_degree[w] += 1;
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    state: SatState,
    lower: usize,
    best: usize,
    best_colors: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    /// Returns `Err(())` when the node budget runs out.
    fn branch(&mut self, colored: usize, used: usize) -> Result<bool, ()> {
        if used >= self.best {
            return Ok(false);
        }
        if colored == self.g.n() {
            self.best = used;
            self.best_colors = self.state.color.iter().map(|c| c.unwrap()).collect();
            return Ok(self.best == self.lower);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(());
        }
        let v = self.state.select(self.g);
        // Colours 0..used are existing classes; `used` opens a new one.
        for c in 0..=used.min(self.best - 1) {
            if c + 1 >= self.best || self.state.count[v][c] != 0 {
                continue;
            }
            self.state.assign(self.g, v, c);
            let done = self.branch(colored + 1, used.max(c + 1));
            self.state.unassign(self.g, v);
            if done? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Exact chromatic number of one connected graph.
fn chromatic_connected(g: &Graph, budget: u64, nodes: &mut u64) -> Result<(usize, Vec<usize>)> {
    let n = g.n();
    let heuristic = dsatur_heuristic(g);
    let upper = heuristic.palette_size();
    let lower = match max_clique_exact(g, budget.saturating_sub(*nodes)) {
        Ok(w) => w,
        Err(Error::BudgetExceeded { lower, .. }) => lower as usize,
        Err(e) => return Err(e),
    }
    .max(1.min(n));
    if lower == upper {
        return Ok((upper, heuristic.colors().to_vec()));
    }
    let mut search = Search {
        g,
        state: SatState::new(g, upper),
        lower,
        best: upper,
        best_colors: heuristic.colors().to_vec(),
        nodes: *nodes,
        budget,
    };
    let outcome = search.branch(0, 0);
    *nodes = search.nodes;
    match outcome {
        Ok(_) => Ok((search.best, search.best_colors)),
        Err(()) => Err(Error::BudgetExceeded {
            what: "chromatic number",
            lower: lower as u64,
            upper: search.best as u64,
        }),
    }
}

/// Exact `chi(g)` with a witness colouring of `g` (radius 1).
///
/// Pass the explicit power to get `chi(G^r)`. Components are solved
/// independently; `node_budget` is shared across them. On exhaustion the
/// error carries the best bounds over all components seen so far.
pub fn dsatur_chromatic_exact(g: &Graph, node_budget: u64) -> Result<ChromaticResult> {
    let n = g.n();
    let (label, count) = g.components();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
    for v in 0..n {
        members[label[v]].push(v);
    }
    let mut colors = vec![0usize; n];
    let mut chi = 0;
    let mut nodes = 0u64;
    let mut lower_seen = 0u64;
    for comp in members {
        let set = VertexSet::from_unsorted(comp);
        let sub = induced_subgraph(g, &set);
        match chromatic_connected(&sub.graph, node_budget, &mut nodes) {
            Ok((k, local)) => {
                chi = chi.max(k);
                lower_seen = lower_seen.max(k as u64);
                for (i, c) in local.into_iter().enumerate() {
                    colors[sub.old_index(i)] = c;
                }
            }
            Err(Error::BudgetExceeded { lower, upper, .. }) => {
                return Err(Error::BudgetExceeded {
                    what: "chromatic number",
                    lower: lower.max(lower_seen),
                    upper: upper.max(dsatur_heuristic(g).palette_size() as u64),
                });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(ChromaticResult {
        chi,
        witness: Coloring::new(colors, 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_proper_power_coloring;
    use crate::graph::families::*;
    use crate::graph::{graph_power, DEFAULT_EDGE_CAP};

    const BUDGET: u64 = 1_000_000;

    fn chi(g: &Graph) -> usize {
        let res = dsatur_chromatic_exact(g, BUDGET).unwrap();
        assert!(verify_proper_power_coloring(g, 1, &res.witness).is_ok());
        assert_eq!(res.witness.palette_size(), res.chi);
        res.chi
    }

    #[test]
    fn examples() {
        assert_eq!(chi(&cycle(5)), 3);
        assert_eq!(chi(&complete(4)), 4);
        assert_eq!(chi(&graph_power(&cycle(9), 2, DEFAULT_EDGE_CAP).unwrap()), 3);
    }

    #[test]
    fn more_graphs() {
        assert_eq!(chi(&petersen()), 3);
        assert_eq!(chi(&Graph::empty(4)), 1);
        assert_eq!(chi(&Graph::empty(0)), 0);
        assert_eq!(chi(&grid(4, 4)), 2);
        assert_eq!(chi(&cycle(7)), 3);
        assert_eq!(chi(&graph_power(&cycle(7), 2, DEFAULT_EDGE_CAP).unwrap()), 4);
        assert_eq!(chi(&graph_power(&path(5), 2, DEFAULT_EDGE_CAP).unwrap()), 3);
    }

    #[test]
    fn mycielski_grotzsch_needs_search() {
        // Grötzsch graph: triangle-free, chromatic number 4.
        let edges = [
            (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
            (5, 1), (5, 4), (6, 0), (6, 2), (7, 1), (7, 3), (8, 2), (8, 4), (9, 3), (9, 0),
            (10, 5), (10, 6), (10, 7), (10, 8), (10, 9),
        ];
        let g = Graph::from_edges(11, edges).unwrap();
        assert_eq!(chi(&g), 4);
    }

    #[test]
    fn budget_exhaustion_keeps_bounds() {
        let edges = [
            (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
            (5, 1), (5, 4), (6, 0), (6, 2), (7, 1), (7, 3), (8, 2), (8, 4), (9, 3), (9, 0),
            (10, 5), (10, 6), (10, 7), (10, 8), (10, 9),
        ];
        let g = Graph::from_edges(11, edges).unwrap();
        match dsatur_chromatic_exact(&g, 3) {
            Err(Error::BudgetExceeded { lower, upper, .. }) => assert!(lower <= 4 && upper >= 4),
            Ok(res) => assert_eq!(res.chi, 4),
            Err(e) => panic!("{e}"),
        }
    }
}
