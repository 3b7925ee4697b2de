//! Reproducible Monte Carlo campaigns over G(n, d/n).
//!
//! Trial `i` samples its graph from `mix_seed(seed, i)`, so the record stream
//! depends only on the config, never on thread count or scheduling. Records
//! come back ordered by trial index.

mod config;
mod record;
mod trial;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::theory::{d_star, degree_sum_pmf, TheoryParams};

pub use config::{
    default_epsilon, ExperimentConfig, Gates, Kind, OutputFormat, Sampler, AUTO_SKIP_THRESHOLD,
};
pub use record::{emit, read_jsonl, JsonlHeader, RecordWriter, TrialRecord, CSV_COLUMNS};

/// One pass/fail gate with a human-readable detail line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub config_hash: String,
    pub kind: Kind,
    pub trials: usize,
    pub metrics: BTreeMap<String, f64>,
    pub checks: Vec<Check>,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub config_hash: String,
    pub records: Vec<TrialRecord>,
    pub summary: Summary,
}

/// Runs every trial of `cfg` on a pool of `cfg.workers` threads.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    cfg.validate()?;
    let hash = cfg.hash();
    let jobs: Vec<(u64, usize)> = cfg
        .sizes()
        .into_iter()
        .enumerate()
        .flat_map(|(i, n)| (0..cfg.trials).map(move |t| ((i * cfg.trials + t) as u64, n)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let records: Vec<TrialRecord> = pool.install(|| {
        jobs.par_iter()
            .map(|&(index, n)| trial::run_trial(cfg, &hash, index, n))
            .collect()
    });
    let summary = summarize(cfg, &hash, &records)?;
    Ok(ExperimentOutput {
        config_hash: hash,
        records,
        summary,
    })
}

fn mean(xs: impl IntoIterator<Item = f64>) -> f64 {
    let (s, k) = xs.into_iter().fold((0.0, 0usize), |(s, k), x| (s + x, k + 1));
    if k == 0 {
        f64::NAN
    } else {
        s / k as f64
    }
}

fn rate(hits: usize, total: usize) -> f64 {
    if total == 0 {
        0.0
    } else {
        hits as f64 / total as f64
    }
}

/// Aggregates records and applies the gates of `cfg`.
pub fn summarize(cfg: &ExperimentConfig, hash: &str, records: &[TrialRecord]) -> Result<Summary> {
    let mut metrics = BTreeMap::new();
    let mut checks = Vec::new();
    let total = records.len();
    let r = cfg.r;
    let gates = &cfg.gates;

    for s in 1..=r {
        metrics.insert(
            format!("mean_delta_{s}"),
            mean(records.iter().map(|x| x.deltas[s - 1] as f64)),
        );
    }
    let broken = records.iter().filter(|x| !x.chain_ok).count();
    metrics.insert("chain_violations".into(), broken as f64);
    checks.push(Check::new(
        "deterministic chain",
        broken == 0,
        format!("{broken} of {total} trials violate clique_lower <= omega <= colouring <= Delta_r + 1"),
    ));

    match cfg.kind {
        Kind::DeltaConcentration => {
            let (lo, hi) = gates.ratio_band(cfg.kind);
            let mut devs = Vec::new();
            for n in cfg.sizes() {
                let m = mean(records.iter().filter(|x| x.n == n as u64).map(|x| x.deltas[r - 1] as f64));
                let star = d_star(n as f64, r)?;
                let ratio = m / star;
                metrics.insert(format!("mean_delta_r@n={n}"), m);
                metrics.insert(format!("d_star@n={n}"), star);
                metrics.insert(format!("ratio@n={n}"), ratio);
                checks.push(Check::new(
                    format!("ratio band n={n}"),
                    (lo..=hi).contains(&ratio),
                    format!("mean Delta_{r} / D* = {m:.3} / {star:.3} = {ratio:.4}, band [{lo}, {hi}]"),
                ));
                devs.push((n, (ratio - 1.0).abs()));
            }
            if devs.len() >= 2 {
                let monotone = devs.windows(2).all(|w| w[1].1 <= w[0].1);
                let closer = devs.last().unwrap().1 < devs[0].1;
                let detail: Vec<String> = devs.iter().map(|(n, d)| format!("n={n}: |ratio-1|={d:.4}")).collect();
                checks.push(Check::new("trend toward 1", monotone && closer, detail.join(", ")));
            }
        }
        Kind::Chi2Equality => {
            let forest = records.iter().filter(|x| x.forest_ok == Some(true)).count();
            let hits = records
                .iter()
                .filter(|x| {
                    let target = x.deltas[0] + 1;
                    x.forest_ok == Some(true)
                        && x.two_phase_proper == Some(true)
                        && x.two_phase_palette == Some(target)
                        && x.ball_chi == Some(target)
                })
                .count();
            let need = gates.rate(cfg.kind);
            metrics.insert("forest_rate".into(), rate(forest, total));
            metrics.insert("equality_rate".into(), rate(hits, total));
            checks.push(Check::new(
                "two-phase palette = Delta + 1, certified",
                rate(hits, total) >= need,
                format!("{hits}/{total} = {:.3}, gate >= {need}", rate(hits, total)),
            ));
        }
        Kind::ChiSandwich => {
            let successes: Vec<_> = records.iter().filter(|x| x.forest_ok == Some(true)).collect();
            let bad = successes
                .iter()
                .filter(|x| {
                    x.two_phase_proper != Some(true)
                        || x.two_phase_palette.is_none_or(|p| p > x.deltas[r - 2] + 1)
                })
                .count();
            let need = gates.rate(cfg.kind);
            let ok_rate = rate(successes.len(), total);
            let witness_ok = records
                .iter()
                .filter(|x| x.chi.is_some_and(|c| x.clique_lower <= c.upper))
                .count();
            metrics.insert("forest_rate".into(), ok_rate);
            metrics.insert("palette_violations".into(), bad as f64);
            checks.push(Check::new(
                "palette <= Delta_{r-1} + 1 when forest holds",
                bad == 0,
                format!("{bad} violations among {} successes", successes.len()),
            ));
            checks.push(Check::new(
                "forest condition rate",
                ok_rate >= need,
                format!("{}/{total} = {ok_rate:.3}, gate >= {need}", successes.len()),
            ));
            checks.push(Check::new(
                "clique lower bound <= colouring witness",
                witness_ok == total,
                format!("{witness_ok}/{total}"),
            ));
        }
        Kind::DenseChi => {
            let (lo, hi) = gates.ratio_band(cfg.kind);
            let scale = cfg.d.powi(r as i32) / cfg.d.ln();
            let mut in_band = 0;
            let mut ordered = 0;
            let (mut ups, mut lows) = (Vec::new(), Vec::new());
            for x in records {
                let (Some(upper), Some(alpha)) = (x.greedy_palette, x.alpha) else {
                    continue;
                };
                let up = upper as f64 / scale;
                let low = x.n as f64 / alpha.lower as f64 / scale;
                ups.push(up);
                lows.push(low);
                if (lo..=hi).contains(&up) && (lo..=hi).contains(&low) {
                    in_band += 1;
                }
                if up >= low {
                    ordered += 1;
                }
            }
            metrics.insert("scale".into(), scale);
            metrics.insert("mean_upper_ratio".into(), mean(ups.iter().copied()));
            metrics.insert("mean_lower_ratio".into(), mean(lows.iter().copied()));
            let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.3}")).collect::<Vec<_>>().join(",");
            checks.push(Check::new(
                "ratios within band",
                in_band == total,
                format!(
                    "{in_band}/{total} in [{lo}, {hi}]; greedy/scale [{}], (n/alpha)/scale [{}]",
                    fmt(&ups),
                    fmt(&lows)
                ),
            ));
            checks.push(Check::new(
                "greedy colouring >= n / greedy alpha",
                ordered == total,
                format!("{ordered}/{total}"),
            ));
        }
        Kind::CliqueSandwich => {
            let ceil = r.div_ceil(2);
            let mut lower_ok = 0;
            let mut upper_ok = 0;
            let mut exact = 0;
            for x in records {
                let Some(w) = x.omega else { continue };
                exact += usize::from(w.exact);
                if w.exact && x.clique_lower <= w.lower {
                    lower_ok += 1;
                }
                if w.upper <= x.deltas[ceil - 1] + 1 {
                    upper_ok += 1;
                }
            }
            let need = gates.rate(cfg.kind);
            metrics.insert("exact_fraction".into(), rate(exact, total));
            metrics.insert("upper_rate".into(), rate(upper_ok, total));
            checks.push(Check::new(
                "Delta(G^floor(r/2)) + 1 <= omega",
                lower_ok == total,
                format!("{lower_ok}/{total} (exact omega in {exact})"),
            ));
            checks.push(Check::new(
                "omega <= Delta(G^ceil(r/2)) + 1",
                rate(upper_ok, total) >= need,
                format!("{upper_ok}/{total} = {:.3}, gate >= {need}", rate(upper_ok, total)),
            ));
        }
        Kind::DegreePmf => {
            let params = TheoryParams::new(cfg.n as u64, cfg.d, r, cfg.epsilon)?;
            let sigmas = gates.sigmas();
            let min_expected = gates.min_expected();
            let t = total as f64;
            let mut tested = 0;
            let mut failed = Vec::new();
            for dd in 0..=cfg.max_degree_sum {
                let pmf = degree_sum_pmf(&params, dd)?;
                let freqs: Vec<f64> = records
                    .iter()
                    .map(|x| x.degree_counts[dd as usize] as f64 / x.n as f64)
                    .collect();
                let m = mean(freqs.iter().copied());
                let var = if total > 1 {
                    freqs.iter().map(|f| (f - m).powi(2)).sum::<f64>() / (t - 1.0)
                } else {
                    f64::NAN
                };
                let se = (var / t).sqrt();
                let z = (m - pmf).abs() / se;
                metrics.insert(format!("freq_{dd}"), m);
                metrics.insert(format!("pmf_{dd}"), pmf);
                metrics.insert(format!("z_{dd}"), z);
                if pmf * cfg.n as f64 * t >= min_expected {
                    tested += 1;
                    if !(z <= sigmas) {
                        failed.push(format!("D={dd}: z={z:.2}"));
                    }
                }
            }
            checks.push(Check::new(
                "empirical frequencies match predicted pmf",
                failed.is_empty() && tested > 0,
                format!(
                    "{tested} values of D tested at {sigmas} standard errors; failures: [{}]",
                    failed.join(", ")
                ),
            ));
        }
    }

    Ok(Summary {
        config_hash: hash.to_string(),
        kind: cfg.kind,
        trials: total,
        metrics,
        checks,
    })
}

/// Named acceptance campaigns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    Th1,
    Th2,
    Th3,
    Th4,
    LemmaClique,
    DegreePmf,
}

impl Theorem {
    pub const ALL: [Theorem; 6] = [
        Theorem::Th1,
        Theorem::Th2,
        Theorem::Th3,
        Theorem::Th4,
        Theorem::LemmaClique,
        Theorem::DegreePmf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Th1 => "th1",
            Theorem::Th2 => "th2",
            Theorem::Th3 => "th3",
            Theorem::Th4 => "th4",
            Theorem::LemmaClique => "lemma-clique",
            Theorem::DegreePmf => "degree-pmf",
        }
    }

    pub fn kind(self) -> Kind {
        match self {
            Theorem::Th1 => Kind::DeltaConcentration,
            Theorem::Th2 => Kind::Chi2Equality,
            Theorem::Th3 => Kind::ChiSandwich,
            Theorem::Th4 => Kind::DenseChi,
            Theorem::LemmaClique => Kind::CliqueSandwich,
            Theorem::DegreePmf => Kind::DegreePmf,
        }
    }

    /// Default desk-scale campaigns.
    pub fn presets(self) -> Vec<ExperimentConfig> {
        let with_trials = |mut c: ExperimentConfig, trials: usize| {
            c.trials = trials;
            c
        };
        match self {
            Theorem::Th1 => {
                let mut c = ExperimentConfig::new(Kind::DeltaConcentration, 1_000_000, 2.0, 2);
                c.n_values = vec![10_000, 100_000, 1_000_000];
                vec![with_trials(c, 10)]
            }
            Theorem::Th2 => vec![with_trials(ExperimentConfig::new(Kind::Chi2Equality, 2000, 2.0, 2), 50)],
            Theorem::Th3 => vec![with_trials(ExperimentConfig::new(Kind::ChiSandwich, 3000, 2.0, 3), 30)],
            Theorem::Th4 => vec![with_trials(ExperimentConfig::new(Kind::DenseChi, 4000, 60.0, 2), 10)],
            Theorem::LemmaClique => [2, 3]
                .into_iter()
                .map(|r| with_trials(ExperimentConfig::new(Kind::CliqueSandwich, 150, 3.0, r), 100))
                .collect(),
            Theorem::DegreePmf => {
                let mut c = ExperimentConfig::new(Kind::DegreePmf, 100_000, 2.0, 2);
                c.max_degree_sum = 15;
                vec![with_trials(c, 200)]
            }
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown theorem `{s}`")))
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub theorem: Theorem,
    pub runs: Vec<ExperimentOutput>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.runs.iter().all(|r| r.summary.passed())
    }

    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.runs.iter().flat_map(|r| r.summary.checks.iter())
    }
}

/// Runs the campaigns for `theorem` and gates them.
pub fn verify_theorem(theorem: Theorem, cfgs: &[ExperimentConfig]) -> Result<VerifyReport> {
    let mut runs = Vec::with_capacity(cfgs.len());
    for cfg in cfgs {
        if cfg.kind != theorem.kind() {
            return Err(Error::Config(format!(
                "{theorem} expects kind {}, got {}",
                theorem.kind(),
                cfg.kind
            )));
        }
        runs.push(run_experiment(cfg)?);
    }
    Ok(VerifyReport { theorem, runs })
}
