//! Brute-force oracles shared by the integration tests. None of them call
//! the library's algorithms; they only read graphs through `neighbors`.

#![allow(dead_code)]

use std::collections::BTreeSet;

use powcol::graph::{families, gnp_sample, mix_seed};
use powcol::{Graph, RandomSource};

/// Poisson(lam) pmf at 0..=k_max by the recurrence `p_k = p_{k-1} lam / k`.
pub fn poisson_table(lam: f64, k_max: usize) -> Vec<f64> {
    let mut out = vec![(-lam).exp()];
    for k in 1..=k_max {
        let prev = out[k - 1];
        out.push(prev * lam / k as f64);
    }
    out
}

/// Objective over every composition of `total` into `r` parts (feasible or
/// not), minimised by exhaustive enumeration. Ties keep the first profile in
/// lexicographic order.
pub fn lemma2_brute(total: u64, r: usize) -> (f64, Vec<u64>) {
    fn objective(ell: &[u64]) -> f64 {
        let mut prev = 1.0f64;
        let mut sum = 0.0;
        for (i, &l) in ell.iter().enumerate() {
            if l == 0 {
                if ell[i..].iter().any(|&x| x > 0) {
                    return f64::INFINITY;
                }
                break;
            }
            sum += l as f64 * (l as f64 / prev).ln();
            prev = l as f64;
        }
        sum
    }
    fn rec(total: u64, r: usize, prefix: &mut Vec<u64>, best: &mut (f64, Vec<u64>)) {
        let used: u64 = prefix.iter().sum();
        if prefix.len() + 1 == r {
            prefix.push(total - used);
            let v = objective(prefix);
            if v < best.0 - 1e-12 * v.abs().max(1.0) {
                *best = (v, prefix.clone());
            }
            prefix.pop();
            return;
        }
        for l in 0..=total - used {
            prefix.push(l);
            rec(total, r, prefix, best);
            prefix.pop();
        }
    }
    let mut best = (f64::INFINITY, Vec::new());
    rec(total, r, &mut Vec::new(), &mut best);
    best
}

pub fn adjacency_sets(g: &Graph) -> Vec<BTreeSet<usize>> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().map(|&w| w as usize).collect())
        .collect()
}

/// `reach[k][v]`: vertices at distance `1..=k+1` from `v`, by repeated
/// neighbourhood expansion.
pub fn reach_sets(g: &Graph, r: usize) -> Vec<Vec<BTreeSet<usize>>> {
    let adj = adjacency_sets(g);
    let mut levels = vec![adj.clone()];
    for _ in 1..r {
        let last = levels.last().unwrap();
        let next: Vec<BTreeSet<usize>> = (0..g.n())
            .map(|v| {
                let mut s = last[v].clone();
                for &u in &last[v] {
                    s.extend(adj[u].iter().copied());
                }
                s.remove(&v);
                s
            })
            .collect();
        levels.push(next);
    }
    levels
}

/// Adjacency sets of `G^r`.
pub fn power_sets(g: &Graph, r: usize) -> Vec<BTreeSet<usize>> {
    reach_sets(g, r).pop().unwrap()
}

/// Exact layer `N_i(v)` (distance exactly `i`) for `i = 1..=r`.
pub fn layers(reach: &[Vec<BTreeSet<usize>>], v: usize) -> Vec<BTreeSet<usize>> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::from([v]);
    for level in reach {
        let layer: BTreeSet<usize> = level[v].difference(&seen).copied().collect();
        seen.extend(layer.iter().copied());
        out.push(layer);
    }
    out
}

/// `(layer, power)` co-degree maxima by direct counting.
pub fn codegree_brute(g: &Graph, r: usize) -> (usize, usize) {
    let adj = adjacency_sets(g);
    let reach = reach_sets(g, r);
    let power = &reach[r - 1];
    let mut layer_max = 0;
    let mut power_max = 0;
    for v in 0..g.n() {
        for layer in layers(&reach, v) {
            for (w, nw) in adj.iter().enumerate() {
                if w != v {
                    layer_max = layer_max.max(nw.intersection(&layer).count());
                }
            }
        }
        for &w in &power[v] {
            let c = adj[w].iter().filter(|&&x| x != v && power[v].contains(&x)).count();
            power_max = power_max.max(c);
        }
    }
    (layer_max, power_max)
}

/// Edges of `G^r` with both ends in the punctured ball around `v`.
pub fn neighborhood_edges_brute(power: &[BTreeSet<usize>], v: usize) -> u64 {
    let nb: Vec<usize> = power[v].iter().copied().collect();
    let mut count = 0;
    for (i, &a) in nb.iter().enumerate() {
        for &b in &nb[i + 1..] {
            if power[a].contains(&b) {
                count += 1;
            }
        }
    }
    count
}

/// Largest clique by exhaustive subset search (n <= 20).
pub fn clique_brute(adj: &[BTreeSet<usize>]) -> usize {
    let n = adj.len();
    assert!(n <= 20);
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let k = mask.count_ones() as usize;
        if k <= best {
            continue;
        }
        let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|b| adj[a].contains(b))) {
            best = k;
        }
    }
    best
}

/// Chromatic number by trying palettes 1, 2, ... with backtracking (n <= 12).
pub fn chromatic_brute(adj: &[BTreeSet<usize>]) -> usize {
    let n = adj.len();
    if n == 0 {
        return 0;
    }
    fn fits(adj: &[BTreeSet<usize>], colors: &mut Vec<usize>, k: usize) -> bool {
        let v = colors.len();
        if v == adj.len() {
            return true;
        }
        for c in 0..k {
            if adj[v].iter().all(|&w| w >= v || colors[w] != c) {
                colors.push(c);
                if fits(adj, colors, k) {
                    return true;
                }
                colors.pop();
            }
        }
        false
    }
    (1..=n).find(|&k| fits(adj, &mut Vec::new(), k)).unwrap()
}

/// Mixed structured and random instances for sandwich checks.
pub fn instance_mix(count: usize, max_n: usize, seed: u64) -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = vec![
        ("petersen".into(), families::petersen()),
        ("grid 5x6".into(), families::grid(5, 6)),
        ("binary tree 5".into(), families::binary_tree(5)),
        ("K4,5".into(), families::complete_bipartite(4, 5)),
        ("K7".into(), families::complete(7)),
        ("empty 9".into(), Graph::empty(9)),
    ];
    for k in [3, 5, 8, 13, 21] {
        out.push((format!("cycle {k}"), families::cycle(k)));
        out.push((format!("path {k}"), families::path(k)));
        out.push((format!("star {k}"), families::star(k)));
    }
    let mut i = 0u64;
    while out.len() < count {
        let mut src = RandomSource::new(mix_seed(seed, i));
        let n = 8 + (src.uniform() * (max_n - 7) as f64) as usize;
        let d = 1.0 + src.uniform() * 3.0;
        let p = (d / n as f64).min(1.0);
        out.push((format!("gnp n={n} p={p:.3} #{i}"), gnp_sample(n, p, &mut src)));
        i += 1;
    }
    out.truncate(count);
    out
}
