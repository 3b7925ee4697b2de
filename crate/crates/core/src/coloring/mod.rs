//! Proper colourings of `G^r`: greedy, exact DSATUR, and the two-phase
//! construction that stays within `Delta(G^{r-1}) + 1` colours when the
//! high-degree region is a forest.
//!
//! Conflict checks run truncated BFS on the base graph, so `G^r` is never
//! built here (DSATUR is the exception: it takes an explicit graph).

mod dsatur;
mod two_phase;

use std::io::{BufRead, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Bfs, Graph};

pub use dsatur::{dsatur_chromatic_exact, dsatur_heuristic, ChromaticResult};
pub use two_phase::two_phase_power_coloring;

const UNCOLORED: usize = usize::MAX;

/// Vertex colouring validated against distance `radius`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    colors: Vec<usize>,
    palette_size: usize,
    radius: usize,
}

impl Coloring {
    /// # Panics
    /// If any vertex is left uncoloured.
    pub fn new(colors: Vec<usize>, radius: usize) -> Self {
        assert!(colors.iter().all(|&c| c != UNCOLORED), "every vertex needs a colour");
        let palette_size = colors.iter().max().map_or(0, |&c| c + 1);
        Self {
            colors,
            palette_size,
            radius,
        }
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn palette_size(&self) -> usize {
        self.palette_size
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn with_radius(mut self, radius: usize) -> Self {
        self.radius = radius;
        self
    }

    /// Text form: `s <palette_size> <r>` then one `c <vertex> <color>` per vertex.
    pub fn write_text<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "s {} {}", self.palette_size, self.radius)?;
        for (v, c) in self.colors.iter().enumerate() {
            writeln!(out, "c {v} {c}")?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn read_text<R: BufRead>(input: R) -> Result<Self> {
        let bad = |line: usize, msg: &str| Error::Parse {
            line,
            msg: msg.to_string(),
        };
        let mut header: Option<(usize, usize)> = None;
        let mut colors = Vec::new();
        for (idx, line) in input.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.as_slice() {
                [] => {}
                ["s", k, r] => {
                    let k = k.parse().map_err(|_| bad(lineno, "bad palette size"))?;
                    let r = r.parse().map_err(|_| bad(lineno, "bad radius"))?;
                    header = Some((k, r));
                }
                ["c", v, c] => {
                    let v: usize = v.parse().map_err(|_| bad(lineno, "bad vertex"))?;
                    let c: usize = c.parse().map_err(|_| bad(lineno, "bad colour"))?;
                    if v != colors.len() {
                        return Err(bad(lineno, "vertices must be listed in order"));
                    }
                    colors.push(c);
                }
                _ => return Err(bad(lineno, "unrecognised line")),
            }
        }
        let (k, r) = header.ok_or_else(|| bad(0, "missing `s` line"))?;
        let coloring = Self::new(colors, r);
        if coloring.palette_size != k {
            return Err(bad(0, "palette size does not match colours"));
        }
        Ok(coloring)
    }

    /// DIMACS-style solution: `s col <k>` then `l <vertex> <color>`, both 1-indexed.
    pub fn write_dimacs_solution<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "s col {}", self.palette_size)?;
        for (v, c) in self.colors.iter().enumerate() {
            writeln!(out, "l {} {}", v + 1, c + 1)?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Smallest colour not used by an already coloured vertex within distance `r`.
pub(crate) fn smallest_free_color(
    g: &Graph,
    v: usize,
    r: usize,
    colors: &[usize],
    bfs: &mut Bfs,
    used: &mut Vec<usize>,
) -> usize {
    bfs.run(g, &[v], r);
    let mut taken: Vec<usize> = bfs.reached()[1..]
        .iter()
        .map(|&u| colors[u as usize])
        .filter(|&c| c != UNCOLORED)
        .collect();
    taken.sort_unstable();
    taken.dedup();
    used.clear();
    used.extend(taken);
    used.iter()
        .enumerate()
        .find(|&(i, &c)| i != c)
        .map_or(used.len(), |(i, _)| i)
}

/// Greedy colouring of `G^r` visiting vertices in `order`.
///
/// # Panics
/// If `order` is not a permutation of `0..n`.
pub fn greedy_power_coloring(g: &Graph, r: usize, order: &[usize]) -> Coloring {
    let n = g.n();
    assert_eq!(order.len(), n, "order must list every vertex once");
    let mut colors = vec![UNCOLORED; n];
    let mut bfs = Bfs::new(n);
    let mut used = Vec::new();
    for &v in order {
        assert!(colors[v] == UNCOLORED, "vertex {v} repeated in order");
        colors[v] = smallest_free_color(g, v, r, &colors, &mut bfs, &mut used);
    }
    Coloring::new(colors, r)
}

pub fn natural_order(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// Checks that no two distinct vertices within distance `r` share a colour.
/// On failure returns the lexicographically smallest conflicting pair.
pub fn verify_proper_power_coloring(
    g: &Graph,
    r: usize,
    c: &Coloring,
) -> std::result::Result<(), (usize, usize)> {
    let n = g.n();
    assert_eq!(c.colors.len(), n, "colouring size does not match graph");
    let conflict = (0..n).into_par_iter().map_init(
        || Bfs::new(n),
        |bfs, v| {
            bfs.run(g, &[v], r).reached()[1..]
                .iter()
                .map(|&u| u as usize)
                .filter(|&u| u > v && c.colors[u] == c.colors[v])
                .min()
                .map(|u| (v, u))
        },
    );
    match conflict.find_map_first(|x| x) {
        Some(pair) => Err(pair),
        None => Ok(()),
    }
}
