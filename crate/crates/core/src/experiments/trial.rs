use std::time::Instant;

use super::config::{ExperimentConfig, Kind};
use super::record::TrialRecord;
use crate::coloring::{
    dsatur_chromatic_exact, greedy_power_coloring, natural_order, two_phase_power_coloring,
    verify_proper_power_coloring,
};
use crate::error::Error;
use crate::graph::{
    ball, gnp_sample_with, graph_power, induced_subgraph, mix_seed, Graph, RandomSource,
};
use crate::metrics::{
    clique_lower_bound, greedy_independent_set, max_clique_exact, power_degrees,
    power_max_degree, short_cycle_proximity, DEFAULT_MAX_CYCLE_LENGTH,
};
use crate::theory::Estimate;

/// Runs trial `index` on a fresh G(n, d/n) seeded by `mix_seed(cfg.seed, index)`.
pub(crate) fn run_trial(cfg: &ExperimentConfig, hash: &str, index: u64, n: usize) -> TrialRecord {
    let seed = mix_seed(cfg.seed, index);
    let start = Instant::now();
    let mut src = RandomSource::new(seed);
    let g = gnp_sample_with(n, cfg.d / n as f64, &mut src, cfg.sampler.mode_for(n));
    let r = cfg.r;

    let summaries: Vec<_> = (1..=r).map(|s| power_max_degree(&g, s)).collect();
    let deltas: Vec<u64> = summaries.iter().map(|s| s.delta_r as u64).collect();
    let delta_r = deltas[r - 1];
    let mut rec = TrialRecord {
        config_hash: hash.to_string(),
        kind: cfg.kind,
        trial: index,
        seed,
        n: n as u64,
        m: g.m() as u64,
        r: r as u64,
        deltas: deltas.clone(),
        clique_lower: clique_lower_bound(&g, r) as u64,
        omega: None,
        alpha: None,
        chi: None,
        greedy_palette: None,
        forest_ok: None,
        two_phase_palette: None,
        two_phase_proper: None,
        ball_chi: None,
        z_short_cycles: None,
        degree_counts: Vec::new(),
        chain_ok: true,
        note: String::new(),
        wall_ms: None,
    };
    let mut notes: Vec<String> = Vec::new();

    match cfg.kind {
        Kind::DeltaConcentration => {}
        Kind::DegreePmf => {
            let mut counts = vec![0u64; cfg.max_degree_sum as usize + 1];
            for deg in power_degrees(&g, r) {
                if let Some(c) = counts.get_mut(deg) {
                    *c += 1;
                }
            }
            rec.degree_counts = counts;
        }
        Kind::Chi2Equality | Kind::ChiSandwich => {
            let greedy = greedy_palette(&g, r);
            rec.greedy_palette = Some(greedy);
            let mut upper = greedy;
            match two_phase_power_coloring(&g, r) {
                Ok(c) => {
                    let proper = verify_proper_power_coloring(&g, r, &c).is_ok();
                    rec.forest_ok = Some(true);
                    rec.two_phase_palette = Some(c.palette_size() as u64);
                    rec.two_phase_proper = Some(proper);
                    if proper {
                        upper = upper.min(c.palette_size() as u64);
                    }
                }
                Err(Error::ForestViolation { cycle }) => {
                    rec.forest_ok = Some(false);
                    notes.push(format!("forest condition fails (cycle of length {})", cycle.len()));
                }
                Err(e) => notes.push(e.to_string()),
            }
            rec.chi = Some(Estimate::bounds(rec.clique_lower.min(upper), upper));
            let t = 2 * r + 1;
            match short_cycle_proximity(&g, r, t, DEFAULT_MAX_CYCLE_LENGTH.max(t)) {
                Ok(z) => rec.z_short_cycles = Some(z as u64),
                Err(e) => notes.push(e.to_string()),
            }
            if cfg.kind == Kind::Chi2Equality {
                if let Some(v) = summaries[0].argmax {
                    match ball_chromatic_number(&g, v, cfg.chi_budget) {
                        Ok(k) => rec.ball_chi = Some(k),
                        Err(e) => notes.push(e.to_string()),
                    }
                }
            }
        }
        Kind::DenseChi => {
            let greedy = greedy_palette(&g, r);
            rec.greedy_palette = Some(greedy);
            rec.chi = Some(Estimate::bounds(rec.clique_lower.min(greedy), greedy));
            match graph_power(&g, r, cfg.edge_cap) {
                Ok(p) => {
                    let a = greedy_independent_set(&p).len() as u64;
                    rec.alpha = Some(Estimate::bounds(a, n as u64));
                }
                Err(e) => notes.push(e.to_string()),
            }
        }
        Kind::CliqueSandwich => {
            let greedy = greedy_palette(&g, r);
            rec.greedy_palette = Some(greedy);
            match graph_power(&g, r, cfg.edge_cap) {
                Ok(p) => {
                    let omega = match max_clique_exact(&p, cfg.clique_budget) {
                        Ok(w) => Estimate::exact(w),
                        Err(Error::BudgetExceeded { lower, upper, .. }) => {
                            notes.push("clique budget exhausted".into());
                            Estimate::bounds(lower.max(rec.clique_lower), upper.min(delta_r + 1))
                        }
                        Err(e) => {
                            notes.push(e.to_string());
                            Estimate::bounds(rec.clique_lower, delta_r + 1)
                        }
                    };
                    rec.omega = Some(omega);
                    rec.chi = Some(Estimate::bounds(omega.lower.min(greedy), greedy));
                }
                Err(e) => notes.push(e.to_string()),
            }
        }
    }

    rec.chain_ok = chain_holds(&rec, delta_r, if r >= 2 { deltas[r - 2] } else { 0 });
    rec.note = notes.join("; ");
    if cfg.timing {
        rec.wall_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    rec
}

fn greedy_palette(g: &Graph, r: usize) -> u64 {
    greedy_power_coloring(g, r, &natural_order(g.n())).palette_size() as u64
}

/// Exact `chi` of `G^2` restricted to the closed neighbourhood of `v`
/// (a clique of size `deg(v) + 1` in the square).
fn ball_chromatic_number(g: &Graph, v: usize, budget: u64) -> crate::Result<u64> {
    let members = ball(g, v, 1);
    // Any path of length <= 2 between members of N[v] stays inside the
    // radius-2 ball, so squaring the local graph is exact on N[v].
    let local = induced_subgraph(g, &ball(g, v, 2));
    let square = graph_power(&local.graph, 2, u64::MAX)?;
    let keep: Vec<usize> = members.iter().map(|u| local.new_index(u).expect("member of ball")).collect();
    let sub = induced_subgraph(&square, &keep.into_iter().collect());
    Ok(dsatur_chromatic_exact(&sub.graph, budget)?.chi as u64)
}

/// `clique_lower <= omega <= best colouring <= Delta(G^r) + 1`, plus the
/// two-phase palette bound whenever it succeeded.
fn chain_holds(rec: &TrialRecord, delta_r: u64, delta_prev: u64) -> bool {
    let mut ok = rec.clique_lower <= delta_r + 1;
    if let Some(w) = rec.omega {
        ok &= rec.clique_lower <= w.upper;
        if let Some(chi) = rec.chi {
            ok &= w.lower <= chi.upper;
        }
    }
    if let Some(chi) = rec.chi {
        ok &= chi.upper <= delta_r + 1;
        ok &= rec.clique_lower <= chi.upper;
    }
    if let Some(p) = rec.greedy_palette {
        ok &= p <= delta_r + 1;
    }
    if rec.forest_ok == Some(true) {
        ok &= rec.two_phase_proper == Some(true);
        ok &= rec.two_phase_palette.is_some_and(|p| p <= delta_prev + 1);
    }
    ok
}
