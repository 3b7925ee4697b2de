use super::{Graph, VertexSet};
use crate::profile::DegreeProfile;

/// Reusable truncated multi-source BFS.
///
/// Visited marks are epoch-stamped so repeated searches from different roots
/// cost only the size of what they touch. One instance per worker.
#[derive(Debug, Clone)]
pub struct Bfs {
    mark: Vec<u32>,
    epoch: u32,
    queue: Vec<u32>,
    layer_ends: Vec<usize>,
}

impl Bfs {
    pub fn new(n: usize) -> Self {
        Self {
            mark: vec![0; n],
            epoch: 0,
            queue: Vec::new(),
            layer_ends: Vec::new(),
        }
    }

    fn next_epoch(&mut self) {
        if self.epoch == u32::MAX {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.epoch = 0;
        }
        self.epoch += 1;
    }

    /// Explores everything within `radius` of `sources`. Results stay valid
    /// until the next call.
    pub fn run(&mut self, g: &Graph, sources: &[usize], radius: usize) -> &Self {
        self.next_epoch();
        self.queue.clear();
        self.layer_ends.clear();
        for &s in sources {
            if self.mark[s] != self.epoch {
                self.mark[s] = self.epoch;
                self.queue.push(s as u32);
            }
        }
        self.layer_ends.push(self.queue.len());
        let mut start = 0;
        for _ in 0..radius {
            let end = self.queue.len();
            if start == end {
                break;
            }
            for i in start..end {
                let u = self.queue[i] as usize;
                for &w in g.neighbors(u) {
                    if self.mark[w as usize] != self.epoch {
                        self.mark[w as usize] = self.epoch;
                        self.queue.push(w);
                    }
                }
            }
            start = end;
            self.layer_ends.push(self.queue.len());
        }
        self
    }

    /// All reached vertices in BFS order, sources first.
    pub fn reached(&self) -> &[u32] {
        &self.queue
    }

    /// Vertices at distance exactly `t` (empty past the last explored layer).
    pub fn layer(&self, t: usize) -> &[u32] {
        if t >= self.layer_ends.len() {
            return &[];
        }
        let start = if t == 0 { 0 } else { self.layer_ends[t - 1] };
        &self.queue[start..self.layer_ends[t]]
    }

    #[inline]
    pub fn is_reached(&self, v: usize) -> bool {
        self.mark[v] == self.epoch
    }
}

/// Layer sizes `(|N_1(v)|, ..., |N_r(v)|)` by truncated BFS.
pub fn bfs_layers(g: &Graph, v: usize, r: usize) -> DegreeProfile {
    let mut bfs = Bfs::new(g.n());
    bfs.run(g, &[v], r);
    DegreeProfile::new((1..=r).map(|t| bfs.layer(t).len() as u64).collect())
}

/// Every vertex within distance `r` of `v`, including `v`.
pub fn ball(g: &Graph, v: usize, r: usize) -> VertexSet {
    let mut bfs = Bfs::new(g.n());
    VertexSet::from_unsorted(bfs.run(g, &[v], r).reached().iter().map(|&u| u as usize).collect())
}

/// How [`neighborhood_union`] treats the centre of each ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Closure {
    /// `S ∪ N_r(S)`: union of the closed balls.
    Closed,
    /// Union of the punctured balls `ball(v, r) \ {v}`; a vertex of `S` is
    /// included only if another vertex of `S` lies within distance `r`.
    Open,
}

pub fn neighborhood_union(g: &Graph, s: &VertexSet, r: usize, closure: Closure) -> VertexSet {
    let mut bfs = Bfs::new(g.n());
    match closure {
        Closure::Closed => {
            bfs.run(g, s.as_slice(), r);
            VertexSet::from_unsorted(bfs.reached().iter().map(|&u| u as usize).collect())
        }
        Closure::Open => {
            let mut out = Vec::new();
            for v in s.iter() {
                out.extend(bfs.run(g, &[v], r).reached()[1..].iter().map(|&u| u as usize));
            }
            VertexSet::from_unsorted(out)
        }
    }
}
