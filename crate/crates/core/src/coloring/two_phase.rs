use std::collections::VecDeque;

use super::{smallest_free_color, Coloring, UNCOLORED};
use crate::error::{Error, Result};
use crate::graph::{find_cycle, induced_subgraph, neighborhood_union, Bfs, Closure, Graph};
use crate::metrics::{high_degree_set, power_max_degree};

/// Colours `G^r` with at most `Delta(G^{r-1}) + 1` colours when the
/// high-degree region is a forest.
///
/// 1. `Delta_{r-1}` is the maximum degree of `G^{r-1}`.
/// 2. `S` holds the vertices whose `G^r` degree exceeds `Delta_{r-1}`.
/// 3. `H = G[S ∪ N_r(S)]` must be a forest, otherwise
///    [`Error::ForestViolation`] is returned with a cycle of `H` (original
///    vertex ids) and the caller may fall back to greedy.
/// 4. Each tree of `H` is rooted at its smallest vertex and walked in BFS
///    order; every `S` vertex met gets the smallest colour unused by already
///    coloured vertices within distance `r` in `G`.
/// 5. Remaining vertices are coloured greedily in index order.
///
/// In step 4 the coloured vertices near `v` all lie within distance `r - 1`
/// of its BFS parent, and in step 5 every vertex has `G^r` degree at most
/// `Delta_{r-1}`, so neither step needs a colour above `Delta_{r-1}`.
pub fn two_phase_power_coloring(g: &Graph, r: usize) -> Result<Coloring> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!(
            "two-phase colouring needs r >= 2, got {r}"
        )));
    }
    let n = g.n();
    let delta_prev = power_max_degree(g, r - 1).delta_r;
    let high = high_degree_set(g, r, delta_prev as i64);
    let region = neighborhood_union(g, &high, r, Closure::Closed);
    let h = induced_subgraph(g, &region);
    if let Some(cycle) = find_cycle(&h.graph) {
        return Err(Error::ForestViolation {
            cycle: cycle.into_iter().map(|i| h.old_index(i)).collect(),
        });
    }

    let mut colors = vec![UNCOLORED; n];
    let mut bfs = Bfs::new(n);
    let mut used = Vec::new();

    let hn = h.graph.n();
    let mut visited = vec![false; hn];
    let mut queue = VecDeque::new();
    for root in 0..hn {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        queue.push_back(root);
        while let Some(x) = queue.pop_front() {
            let v = h.old_index(x);
            if high.contains(v) {
                colors[v] = smallest_free_color(g, v, r, &colors, &mut bfs, &mut used);
            }
            for &y in h.graph.neighbors(x) {
                if !visited[y as usize] {
                    visited[y as usize] = true;
                    queue.push_back(y as usize);
                }
            }
        }
    }

    for v in 0..n {
        if colors[v] == UNCOLORED {
            colors[v] = smallest_free_color(g, v, r, &colors, &mut bfs, &mut used);
        }
    }
    let coloring = Coloring::new(colors, r);
    debug_assert!(n == 0 || coloring.palette_size() <= delta_prev + 1);
    Ok(coloring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_proper_power_coloring;
    use crate::graph::families::*;

    #[test]
    fn star_has_no_high_degree_vertices() {
        let c = two_phase_power_coloring(&star(3), 2).unwrap();
        assert_eq!(c.palette_size(), 4);
        assert!(verify_proper_power_coloring(&star(3), 2, &c).is_ok());
    }

    #[test]
    fn path_uses_three_colors() {
        let c = two_phase_power_coloring(&path(5), 2).unwrap();
        assert!(c.palette_size() <= 3);
        assert!(verify_proper_power_coloring(&path(5), 2, &c).is_ok());
    }

    #[test]
    fn cycle_violates_forest_condition() {
        match two_phase_power_coloring(&cycle(9), 2) {
            Err(Error::ForestViolation { cycle }) => {
                let mut c = cycle.clone();
                c.sort_unstable();
                assert_eq!(c, (0..9).collect::<Vec<_>>());
            }
            other => panic!("expected forest violation, got {other:?}"),
        }
    }

    #[test]
    fn radius_one_rejected() {
        assert!(matches!(
            two_phase_power_coloring(&path(3), 1),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn trees_meet_the_bound() {
        for (g, r) in [(binary_tree(5), 2), (binary_tree(5), 3), (path(12), 4), (star(6), 3)] {
            let c = two_phase_power_coloring(&g, r).unwrap();
            assert!(verify_proper_power_coloring(&g, r, &c).is_ok());
            assert!(c.palette_size() <= power_max_degree(&g, r - 1).delta_r + 1);
        }
    }
}
