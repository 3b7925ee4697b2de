use crate::error::{Error, Result};
use crate::graph::{Bfs, Graph};

pub const DEFAULT_MAX_CYCLE_LENGTH: usize = 16;

/// Vertices of the 2-core (vertices that survive repeated removal of
/// degree <= 1 vertices). Only these can lie on cycles.
fn two_core(g: &Graph) -> Vec<bool> {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &w in g.neighbors(v) {
            let w = w as usize;
            if alive[w] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    stack.push(w);
                }
            }
        }
    }
    alive
}

/// Length of the shortest cycle through edge `(x, y)` if it is at most `t`.
fn short_cycle_through(
    g: &Graph,
    core: &[bool],
    x: usize,
    y: usize,
    t: usize,
    dist: &mut [u32],
    touched: &mut Vec<usize>,
) -> bool {
    // BFS from x inside the core, never using the edge x-y, up to depth t-1.
    let mut found = false;
    dist[x] = 0;
    touched.push(x);
    let mut frontier = vec![x];
    'outer: for depth in 1..t {
        let mut next = Vec::new();
        for &u in &frontier {
            for &w in g.neighbors(u) {
                let w = w as usize;
                if !core[w] || dist[w] != u32::MAX || (u == x && w == y) {
                    continue;
                }
                if w == y {
                    found = true;
                    break 'outer;
                }
                dist[w] = depth as u32;
                touched.push(w);
                next.push(w);
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    for &v in touched.iter() {
        dist[v] = u32::MAX;
    }
    touched.clear();
    found
}

/// `Z_{s,t}`: the number of vertices within distance `s` of some cycle of
/// length at most `t`.
///
/// Vertices on short cycles are the endpoints of edges whose shortest cycle
/// (a bounded BFS around the edge) has length at most `t`; the count is then
/// a multi-source BFS of radius `s` from that set.
pub fn short_cycle_proximity(g: &Graph, s: usize, t: usize, max_t: usize) -> Result<usize> {
    if t < 3 {
        return Err(Error::InvalidArgument(format!("cycle length bound {t} < 3")));
    }
    if t > max_t {
        return Err(Error::BudgetExceeded {
            what: "cycle length bound",
            lower: max_t as u64,
            upper: t as u64,
        });
    }
    let n = g.n();
    let core = two_core(g);
    let mut on_cycle = vec![false; n];
    let mut dist = vec![u32::MAX; n];
    let mut touched = Vec::new();
    for x in (0..n).filter(|&x| core[x]) {
        for &y in g.neighbors(x) {
            let y = y as usize;
            if y < x || !core[y] || (on_cycle[x] && on_cycle[y]) {
                continue;
            }
            if short_cycle_through(g, &core, x, y, t, &mut dist, &mut touched) {
                on_cycle[x] = true;
                on_cycle[y] = true;
            }
        }
    }
    let sources: Vec<usize> = (0..n).filter(|&v| on_cycle[v]).collect();
    if sources.is_empty() {
        return Ok(0);
    }
    Ok(Bfs::new(n).run(g, &sources, s).reached().len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    const MAX: usize = DEFAULT_MAX_CYCLE_LENGTH;

    #[test]
    fn examples() {
        assert_eq!(short_cycle_proximity(&complete(3), 0, 3, MAX).unwrap(), 3);
        assert_eq!(short_cycle_proximity(&binary_tree(4), 3, 10, MAX).unwrap(), 0);
        let pendant = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert_eq!(short_cycle_proximity(&pendant, 1, 3, MAX).unwrap(), 4);
        assert_eq!(short_cycle_proximity(&pendant, 0, 3, MAX).unwrap(), 3);
    }

    #[test]
    fn cycle_length_threshold() {
        let g = cycle(6);
        assert_eq!(short_cycle_proximity(&g, 0, 5, MAX).unwrap(), 0);
        assert_eq!(short_cycle_proximity(&g, 0, 6, MAX).unwrap(), 6);
        // Petersen has girth 5.
        assert_eq!(short_cycle_proximity(&petersen(), 0, 4, MAX).unwrap(), 0);
        assert_eq!(short_cycle_proximity(&petersen(), 0, 5, MAX).unwrap(), 10);
    }

    #[test]
    fn argument_errors() {
        assert!(matches!(
            short_cycle_proximity(&cycle(3), 0, 2, MAX),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            short_cycle_proximity(&cycle(3), 0, 17, MAX),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
