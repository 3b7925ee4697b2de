use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::{SamplingMode, DEFAULT_EDGE_CAP};

/// Graphs above this size are sampled with geometric skips under `sampler = auto`.
pub const AUTO_SKIP_THRESHOLD: usize = 5000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    DeltaConcentration,
    Chi2Equality,
    ChiSandwich,
    DenseChi,
    CliqueSandwich,
    DegreePmf,
}

impl Kind {
    pub const ALL: [Kind; 6] = [
        Kind::DeltaConcentration,
        Kind::Chi2Equality,
        Kind::ChiSandwich,
        Kind::DenseChi,
        Kind::CliqueSandwich,
        Kind::DegreePmf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::DeltaConcentration => "delta-concentration",
            Kind::Chi2Equality => "chi2-equality",
            Kind::ChiSandwich => "chi-sandwich",
            Kind::DenseChi => "dense-chi",
            Kind::CliqueSandwich => "clique-sandwich",
            Kind::DegreePmf => "degree-pmf",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Kind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown experiment kind `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Jsonl,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "jsonl" => Ok(Self::Jsonl),
            _ => Err(Error::Config(format!("unknown format `{s}` (csv or jsonl)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sampler {
    #[default]
    Auto,
    Dense,
    Skip,
}

impl FromStr for Sampler {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Self::Auto),
            "dense" => Ok(Self::Dense),
            "skip" => Ok(Self::Skip),
            _ => Err(Error::Config(format!("unknown sampler `{s}` (auto, dense or skip)"))),
        }
    }
}

impl Sampler {
    pub fn mode_for(self, n: usize) -> SamplingMode {
        match self {
            Sampler::Dense => SamplingMode::Dense,
            Sampler::Skip => SamplingMode::Skip,
            Sampler::Auto if n > AUTO_SKIP_THRESHOLD => SamplingMode::Skip,
            Sampler::Auto => SamplingMode::Dense,
        }
    }
}

/// Pass/fail thresholds. Unset fields fall back to per-kind defaults; all of
/// them are regression choices for finite `n`, not limits.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Gates {
    /// Minimum success frequency.
    pub rate: Option<f64>,
    /// Accepted band for theory ratios.
    pub ratio_low: Option<f64>,
    pub ratio_high: Option<f64>,
    /// Standard errors allowed between empirical and predicted frequencies.
    pub sigmas: Option<f64>,
    /// Minimum expected count for a frequency to be tested.
    pub min_expected: Option<f64>,
}

impl Gates {
    pub fn rate(&self, kind: Kind) -> f64 {
        self.rate.unwrap_or(match kind {
            Kind::ChiSandwich => 0.8,
            _ => 0.9,
        })
    }

    pub fn ratio_band(&self, kind: Kind) -> (f64, f64) {
        let (lo, hi) = match kind {
            Kind::DenseChi => (0.05, 20.0),
            _ => (0.3, 3.0),
        };
        (self.ratio_low.unwrap_or(lo), self.ratio_high.unwrap_or(hi))
    }

    pub fn sigmas(&self) -> f64 {
        self.sigmas.unwrap_or(4.0)
    }

    pub fn min_expected(&self) -> f64 {
        self.min_expected.unwrap_or(5.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub kind: Kind,
    pub n: usize,
    /// Extra graph sizes swept by `delta-concentration`; `n` is used when empty.
    pub n_values: Vec<usize>,
    /// Expected degree; the edge probability is `d / n`.
    pub d: f64,
    pub r: usize,
    pub epsilon: f64,
    pub trials: usize,
    pub seed: u64,
    pub clique_budget: u64,
    pub chi_budget: u64,
    pub edge_cap: u64,
    pub sampler: Sampler,
    /// Largest power degree tabulated by `degree-pmf`.
    pub max_degree_sum: u64,
    /// Record per-trial wall time (makes output run-dependent).
    pub timing: bool,
    pub gates: Gates,
    /// Thread count; 0 uses all cores. Does not affect results.
    pub workers: usize,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

const KEYS: &[&str] = &[
    "kind", "n", "n_values", "d", "p", "r", "epsilon", "trials", "seed", "clique_budget",
    "chi_budget", "edge_cap", "sampler", "max_degree_sum", "timing", "gate_rate",
    "gate_ratio_low", "gate_ratio_high", "gate_sigmas", "gate_min_expected", "workers",
    "format", "out",
];

impl ExperimentConfig {
    pub fn new(kind: Kind, n: usize, d: f64, r: usize) -> Self {
        Self {
            kind,
            n,
            n_values: Vec::new(),
            d,
            r,
            epsilon: default_epsilon(r),
            trials: 10,
            seed: 1,
            clique_budget: 5_000_000,
            chi_budget: 5_000_000,
            edge_cap: DEFAULT_EDGE_CAP,
            sampler: Sampler::Auto,
            max_degree_sum: 15,
            timing: false,
            gates: Gates::default(),
            workers: 0,
            format: OutputFormat::Csv,
            out: None,
        }
    }

    /// Parses `key = value` lines; `#` starts a comment. Keys may use `-` or `_`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut pairs: Vec<(String, String)> = Vec::new();
        let mut seen = BTreeSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected `key = value`", idx + 1))
            })?;
            let key = key.trim().replace('-', "_");
            if !KEYS.contains(&key.as_str()) {
                return Err(Error::Config(format!("line {}: unknown key `{key}`", idx + 1)));
            }
            if !seen.insert(key.clone()) {
                return Err(Error::Config(format!("line {}: duplicate key `{key}`", idx + 1)));
            }
            pairs.push((key, value.trim().to_string()));
        }
        Self::from_pairs(pairs.iter().map(|(k, v)| (k.as_str(), v.as_str())))
    }

    /// Builds a config from already split `key = value` pairs.
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Self> {
        let pairs: Vec<(&str, &str)> = pairs.into_iter().collect();
        let get = |k: &str| pairs.iter().rev().find(|(key, _)| *key == k).map(|(_, v)| *v);
        let kind: Kind = get("kind")
            .ok_or_else(|| Error::Config("missing `kind`".into()))?
            .parse()?;
        let n_values: Vec<usize> = match get("n_values") {
            Some(v) => v.split(',').map(|s| num(s.trim(), "n_values")).collect::<Result<_>>()?,
            None => Vec::new(),
        };
        // With only `n_values`, `n` is the largest size (it scales `p` into `d`).
        let n: usize = match (get("n"), n_values.iter().max()) {
            (Some(v), _) => num(v, "n")?,
            (None, Some(&m)) => m,
            (None, None) => return Err(Error::Config("missing `n`".into())),
        };
        let r: usize = match get("r") {
            Some(v) => num(v, "r")?,
            None => 2,
        };
        let d = match (get("d"), get("p")) {
            (Some(_), Some(_)) => return Err(Error::Config("give either `d` or `p`, not both".into())),
            (Some(v), None) => num(v, "d")?,
            (None, Some(v)) => num::<f64>(v, "p")? * n as f64,
            (None, None) => return Err(Error::Config("missing `d` (or `p`)".into())),
        };
        let mut cfg = Self::new(kind, n, d, r);
        for &(key, value) in &pairs {
            match key {
                "kind" | "n" | "d" | "p" | "r" => {}
                "n_values" => cfg.n_values = n_values.clone(),
                "epsilon" => cfg.epsilon = num(value, key)?,
                "trials" => cfg.trials = num(value, key)?,
                "seed" => cfg.seed = num(value, key)?,
                "clique_budget" => cfg.clique_budget = num(value, key)?,
                "chi_budget" => cfg.chi_budget = num(value, key)?,
                "edge_cap" => cfg.edge_cap = num(value, key)?,
                "sampler" => cfg.sampler = value.parse()?,
                "max_degree_sum" => cfg.max_degree_sum = num(value, key)?,
                "timing" => cfg.timing = num(value, key)?,
                "gate_rate" => cfg.gates.rate = Some(num(value, key)?),
                "gate_ratio_low" => cfg.gates.ratio_low = Some(num(value, key)?),
                "gate_ratio_high" => cfg.gates.ratio_high = Some(num(value, key)?),
                "gate_sigmas" => cfg.gates.sigmas = Some(num(value, key)?),
                "gate_min_expected" => cfg.gates.min_expected = Some(num(value, key)?),
                "workers" => cfg.workers = num(value, key)?,
                "format" => cfg.format = value.parse()?,
                "out" => cfg.out = Some(PathBuf::from(value)),
                _ => return Err(Error::Config(format!("unknown key `{key}`"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Graph sizes this config runs, in order.
    pub fn sizes(&self) -> Vec<usize> {
        if self.n_values.is_empty() {
            vec![self.n]
        } else {
            self.n_values.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.trials < 1 {
            return bad("trials must be at least 1".into());
        }
        if self.r < 1 {
            return bad("r must be at least 1".into());
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0 / self.r as f64) {
            return bad(format!("epsilon = {} must lie in (0, 1/r)", self.epsilon));
        }
        if !self.n_values.is_empty() && self.kind != Kind::DeltaConcentration {
            return bad("n_values is only supported by delta-concentration".into());
        }
        for n in self.sizes() {
            if n < 2 {
                return bad(format!("n = {n} must be at least 2"));
            }
            if !(self.d > 0.0 && self.d <= n as f64) {
                return bad(format!("d = {} must lie in (0, n] for n = {n}", self.d));
            }
        }
        match self.kind {
            Kind::Chi2Equality if self.r != 2 => bad("chi2-equality needs r = 2".into()),
            Kind::ChiSandwich if self.r < 2 => bad("chi-sandwich needs r >= 2".into()),
            Kind::DenseChi if self.d <= (self.n as f64).ln() => {
                bad(format!("dense-chi needs d > log n = {:.3}", (self.n as f64).ln()))
            }
            Kind::DegreePmf if self.max_degree_sum > crate::theory::DEFAULT_PMF_CAP => bad(format!(
                "max_degree_sum must be at most {}",
                crate::theory::DEFAULT_PMF_CAP
            )),
            _ => Ok(()),
        }
    }

    /// Canonical text of every field that influences trial records.
    /// Workers, output path and format are excluded.
    pub fn canonical(&self) -> String {
        let opt = |v: Option<f64>| v.map_or("default".to_string(), |x| format!("{x:?}"));
        let sizes: Vec<String> = self.n_values.iter().map(|n| n.to_string()).collect();
        format!(
            "kind={}\nn={}\nn_values={}\nd={:?}\nr={}\nepsilon={:?}\ntrials={}\nseed={}\n\
             clique_budget={}\nchi_budget={}\nedge_cap={}\nsampler={:?}\nmax_degree_sum={}\n\
             timing={}\ngate_rate={}\ngate_ratio_low={}\ngate_ratio_high={}\ngate_sigmas={}\n\
             gate_min_expected={}\n",
            self.kind,
            self.n,
            sizes.join(","),
            self.d,
            self.r,
            self.epsilon,
            self.trials,
            self.seed,
            self.clique_budget,
            self.chi_budget,
            self.edge_cap,
            self.sampler,
            self.max_degree_sum,
            self.timing,
            opt(self.gates.rate),
            opt(self.gates.ratio_low),
            opt(self.gates.ratio_high),
            opt(self.gates.sigmas),
            opt(self.gates.min_expected),
        )
    }

    /// First 16 hex digits of the SHA-256 of [`canonical`](Self::canonical).
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.canonical().as_bytes());
        format!("{digest:x}")[..16].to_string()
    }
}

/// `min(0.1, 1 / (2r))`, inside the admissible range `(0, 1/r)`.
pub fn default_epsilon(r: usize) -> f64 {
    (0.5 / r.max(1) as f64).min(0.1)
}

fn num<T: FromStr>(value: &str, key: &str) -> Result<T> {
    let cleaned = value.replace('_', "");
    cleaned
        .parse()
        .or_else(|_| {
            // Allow `1e5` style integers.
            cleaned
                .parse::<f64>()
                .ok()
                .filter(|x| x.fract() == 0.0 && *x >= 0.0)
                .and_then(|x| format!("{x:.0}").parse().ok())
                .ok_or(())
        })
        .map_err(|_| Error::Config(format!("bad value `{value}` for `{key}`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_config() {
        let text = "# theorem 2 run\nkind = chi2-equality\nn = 2000\nd = 2\nr = 2\ntrials = 50 # inline\nseed = 7\nformat = jsonl\n";
        let cfg = ExperimentConfig::parse(text).unwrap();
        assert_eq!(cfg.kind, Kind::Chi2Equality);
        assert_eq!((cfg.n, cfg.trials, cfg.seed), (2000, 50, 7));
        assert_eq!(cfg.format, OutputFormat::Jsonl);
    }

    #[test]
    fn p_and_scientific_integers() {
        let cfg = ExperimentConfig::parse("kind = degree-pmf\nn = 1e5\np = 2e-5\n").unwrap();
        assert_eq!(cfg.n, 100_000);
        assert!((cfg.d - 2.0).abs() < 1e-12);
        let cfg = ExperimentConfig::parse("kind = delta-concentration\nn = 10\nn-values = 1e4, 1e5\nd = 2\n").unwrap();
        assert_eq!(cfg.sizes(), vec![10_000, 100_000]);
        let cfg = ExperimentConfig::parse("kind = delta-concentration\nn_values = 1e3, 2e3\np = 1e-3\n").unwrap();
        assert_eq!(cfg.n, 2000);
        assert!((cfg.d - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_configs() {
        for text in [
            "kind = chi2-equality\nn = 100\nd = 2\ncolour = blue\n",
            "kind = chi2-equality\nn = 100\nd = 2\nd = 3\n",
            "kind = chi2-equality\nn = 100\nd = 2\nr = 3\n",
            "kind = dense-chi\nn = 4000\nd = 5\n",
            "kind = degree-pmf\nn = 100\nd = 2\ntrials = 0\n",
            "kind = nonsense\nn = 100\nd = 2\n",
            "kind = degree-pmf\nn = 100\n",
            "kind = degree-pmf\nn = 100\nd = 2\nepsilon = 0.5\n",
            "kind = degree-pmf\nn = 100 d = 2\n",
        ] {
            assert!(
                matches!(ExperimentConfig::parse(text), Err(Error::Config(_))),
                "accepted: {text}"
            );
        }
    }

    #[test]
    fn hash_ignores_workers_and_output() {
        let a = ExperimentConfig::new(Kind::DegreePmf, 1000, 2.0, 2);
        let mut b = a.clone();
        b.workers = 8;
        b.format = OutputFormat::Jsonl;
        b.out = Some("x.csv".into());
        assert_eq!(a.hash(), b.hash());
        b.seed = 2;
        assert_ne!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 16);
    }

    #[test]
    fn auto_sampler_switches_on_size() {
        assert_eq!(Sampler::Auto.mode_for(5000), SamplingMode::Dense);
        assert_eq!(Sampler::Auto.mode_for(5001), SamplingMode::Skip);
    }
}
