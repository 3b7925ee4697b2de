//! `powcol`: sample G(n, p), inspect its powers, colour them, evaluate the
//! closed-form quantities and run the Monte Carlo campaigns.
//!
//! Exit codes: 0 pass, 1 fail, 2 config or argument error, 3 I/O error.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use powcol::coloring::{
    dsatur_chromatic_exact, greedy_power_coloring, natural_order, two_phase_power_coloring,
    verify_proper_power_coloring,
};
use powcol::experiments::{
    default_epsilon, emit, run_experiment, verify_theorem, ExperimentConfig, ExperimentOutput,
    OutputFormat, Sampler, Theorem,
};
use powcol::graph::io::{read_dimacs, read_edge_list, write_dimacs, write_edge_list};
use powcol::graph::{gnp_sample_with, graph_power, DEFAULT_EDGE_CAP};
use powcol::metrics::{
    clique_lower_bound, codegree_max, power_max_degree, short_cycle_proximity, MetricRecord,
    DEFAULT_MAX_CYCLE_LENGTH,
};
use powcol::theory::{
    aks_chi_bound, d_star, degree_sum_pmf, iterated_log, janson_k0, janson_mu,
    lemma2_min_exact, lemma2_min_lagrange, log_u, log_u_stirling, u_value,
};
use powcol::{Coloring, DegreeProfile, Error, Graph, RandomSource, TheoryParams};

#[derive(Parser)]
#[command(name = "powcol", version, about = "Powers of G(n, p): statistics, colourings and experiments")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Jsonl => OutputFormat::Jsonl,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Edges,
    Dimacs,
}

#[derive(Clone, Copy, ValueEnum)]
enum SamplerArg {
    Auto,
    Dense,
    Skip,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Greedy,
    TwoPhase,
    Dsatur,
}

#[derive(Args, Clone, Default)]
struct Common {
    #[arg(long)]
    n: Option<usize>,
    /// Expected degree; the edge probability is d / n.
    #[arg(long, conflicts_with = "p")]
    d: Option<f64>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    clique_budget: Option<u64>,
    #[arg(long)]
    chi_budget: Option<u64>,
    #[arg(long)]
    edge_cap: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample G(n, p) and write it as an edge list or DIMACS file.
    Sample {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "auto")]
        sampler: SamplerArg,
        #[arg(long, value_enum, default_value = "edges")]
        graph_format: GraphFormat,
    },
    /// Write the explicit r-th power of a graph.
    Power {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "edges")]
        graph_format: GraphFormat,
    },
    /// Print power-degree, clique-bound, co-degree and short-cycle statistics as JSON lines.
    Stats {
        /// Graph file; omit to sample from --n and --d/--p.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Colour G^r and check the result.
    Color {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "two-phase")]
        method: Method,
        /// Write the colouring in DIMACS solution form instead of text.
        #[arg(long)]
        dimacs: bool,
    },
    /// Evaluate a formula: `eval <formula> key=value ...` or `eval --batch FILE`.
    Eval {
        formula: Option<String>,
        args: Vec<String>,
        /// One `<formula> key=value ...` per line.
        #[arg(long)]
        batch: Option<PathBuf>,
    },
    /// Experiment campaigns.
    Experiment {
        #[command(subcommand)]
        cmd: ExperimentCmd,
    },
    /// Run the default campaign for a result and gate it.
    VerifyTheorem {
        /// th1, th2, th3, th4, lemma-clique or degree-pmf.
        theorem: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum ExperimentCmd {
    /// Run a `key = value` config file.
    Run {
        config: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if let Some(err) = cause.downcast_ref::<Error>() {
            return if matches!(err, Error::Io(_)) { 3 } else { 2 };
        }
        if cause.downcast_ref::<io::Error>().is_some() {
            return 3;
        }
    }
    2
}

fn dispatch(cmd: Cmd) -> Result<bool> {
    match cmd {
        Cmd::Sample {
            common,
            sampler,
            graph_format,
        } => {
            let sampler = match sampler {
                SamplerArg::Auto => Sampler::Auto,
                SamplerArg::Dense => Sampler::Dense,
                SamplerArg::Skip => Sampler::Skip,
            };
            let g = sample(&common, sampler)?;
            write_graph(&g, graph_format, common.out.as_deref())?;
            Ok(true)
        }
        Cmd::Power {
            graph,
            common,
            graph_format,
        } => {
            let g = load_graph(&graph)?;
            let r = common.r.unwrap_or(2);
            let p = graph_power(&g, r, common.edge_cap.unwrap_or(DEFAULT_EDGE_CAP))?;
            write_graph(&p, graph_format, common.out.as_deref())?;
            Ok(true)
        }
        Cmd::Stats { graph, common } => stats(graph.as_deref(), &common),
        Cmd::Color {
            graph,
            common,
            method,
            dimacs,
        } => color(graph.as_deref(), &common, method, dimacs),
        Cmd::Eval {
            formula,
            args,
            batch,
        } => eval_command(formula, args, batch),
        Cmd::Experiment {
            cmd: ExperimentCmd::Run { config, common },
        } => {
            let text = std::fs::read_to_string(&config)
                .with_context(|| format!("reading {}", config.display()))?;
            let mut cfg = ExperimentConfig::parse(&text)?;
            apply_overrides(&mut cfg, &common)?;
            let out = run_experiment(&cfg)?;
            write_records(&out, cfg.format, cfg.out.as_deref())?;
            report(&out);
            Ok(out.summary.passed())
        }
        Cmd::VerifyTheorem { theorem, common } => {
            let theorem: Theorem = theorem.parse()?;
            let mut cfgs = theorem.presets();
            if common.r.is_some() || common.n.is_some() {
                cfgs.truncate(1);
                if common.n.is_some() {
                    cfgs[0].n_values.clear();
                }
            }
            for cfg in &mut cfgs {
                apply_overrides(cfg, &common)?;
            }
            let rep = verify_theorem(theorem, &cfgs)?;
            for (i, run) in rep.runs.iter().enumerate() {
                report(run);
                if let Some(path) = &cfgs[i].out {
                    let path = if rep.runs.len() > 1 {
                        indexed_path(path, i)
                    } else {
                        path.clone()
                    };
                    write_records(run, cfgs[i].format, Some(&path))?;
                }
            }
            println!("{} {}", if rep.passed() { "PASS" } else { "FAIL" }, theorem);
            Ok(rep.passed())
        }
    }
}

fn indexed_path(path: &Path, i: usize) -> PathBuf {
    let stem = path.file_stem().map_or_else(Default::default, |s| s.to_string_lossy().into_owned());
    let name = match path.extension() {
        Some(ext) => format!("{stem}-{i}.{}", ext.to_string_lossy()),
        None => format!("{stem}-{i}"),
    };
    path.with_file_name(name)
}

fn report(out: &ExperimentOutput) {
    println!(
        "# {} config {} ({} trials)",
        out.summary.kind, out.config_hash, out.summary.trials
    );
    for c in &out.summary.checks {
        println!("{c}");
    }
}

fn apply_overrides(cfg: &mut ExperimentConfig, c: &Common) -> Result<()> {
    if let Some(n) = c.n {
        cfg.n = n;
    }
    if let Some(d) = c.d {
        cfg.d = d;
    }
    if let Some(p) = c.p {
        cfg.d = p * cfg.n as f64;
    }
    if let Some(r) = c.r {
        cfg.r = r;
        if c.epsilon.is_none() {
            cfg.epsilon = default_epsilon(r);
        }
    }
    if let Some(e) = c.epsilon {
        cfg.epsilon = e;
    }
    if let Some(s) = c.seed {
        cfg.seed = s;
    }
    if let Some(t) = c.trials {
        cfg.trials = t;
    }
    if let Some(f) = c.format {
        cfg.format = f.into();
    }
    if let Some(o) = &c.out {
        cfg.out = Some(o.clone());
    }
    if let Some(b) = c.clique_budget {
        cfg.clique_budget = b;
    }
    if let Some(b) = c.chi_budget {
        cfg.chi_budget = b;
    }
    if let Some(b) = c.edge_cap {
        cfg.edge_cap = b;
    }
    if let Some(w) = c.workers {
        cfg.workers = w;
    }
    cfg.validate()?;
    Ok(())
}

fn write_records(out: &ExperimentOutput, format: OutputFormat, path: Option<&Path>) -> Result<()> {
    let kind = out.summary.kind;
    match path {
        Some(path) => {
            let file = File::create(path).map_err(Error::Io)
                .with_context(|| format!("creating {}", path.display()))?;
            emit(&out.records, format, &out.config_hash, kind, BufWriter::new(file))?;
        }
        None => emit(&out.records, format, &out.config_hash, kind, io::stdout().lock())?,
    }
    Ok(())
}

fn sample(c: &Common, sampler: Sampler) -> Result<Graph> {
    let n = c.n.ok_or_else(|| anyhow!(Error::Config("--n is required to sample".into())))?;
    let p = match (c.d, c.p) {
        (Some(d), None) => d / n as f64,
        (None, Some(p)) => p,
        _ => bail!(Error::Config("give --d or --p".into())),
    };
    if !(0.0..=1.0).contains(&p) {
        bail!(Error::Config(format!("edge probability {p} outside [0, 1]")));
    }
    let mut src = RandomSource::new(c.seed.unwrap_or(1));
    Ok(gnp_sample_with(n, p, &mut src, sampler.mode_for(n)))
}

fn load_graph(path: &Path) -> Result<Graph> {
    let file = File::open(path)
        .map_err(Error::Io)
        .with_context(|| format!("opening {}", path.display()))?;
    let reader = BufReader::new(file);
    let dimacs = matches!(
        path.extension().and_then(|e| e.to_str()),
        Some("col" | "dimacs")
    );
    Ok(if dimacs {
        read_dimacs(reader)?
    } else {
        read_edge_list(reader)?
    })
}

fn graph_or_sample(path: Option<&Path>, c: &Common) -> Result<Graph> {
    match path {
        Some(p) => load_graph(p),
        None => sample(c, Sampler::Auto),
    }
}

fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p)
                .map_err(Error::Io)
                .with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn write_graph(g: &Graph, format: GraphFormat, path: Option<&Path>) -> Result<()> {
    let out = open_out(path)?;
    match format {
        GraphFormat::Edges => write_edge_list(g, out)?,
        GraphFormat::Dimacs => write_dimacs(g, out)?,
    }
    Ok(())
}

fn stats(path: Option<&Path>, c: &Common) -> Result<bool> {
    let g = graph_or_sample(path, c)?;
    let r = c.r.unwrap_or(2);
    let mut out = open_out(c.out.as_deref())?;
    let mut put = |rec: MetricRecord| writeln!(out, "{}", rec.to_json_line());
    put(MetricRecord::new("size", json!({}), json!({"n": g.n(), "m": g.m()})))?;
    for s in 1..=r {
        let sum = power_max_degree(&g, s);
        put(MetricRecord::new("power_max_degree", json!({"r": s}), &sum))?;
    }
    put(MetricRecord::new("clique_lower_bound", json!({"r": r}), clique_lower_bound(&g, r)))?;
    put(MetricRecord::new("codegree_max", json!({"r": r}), codegree_max(&g, r)))?;
    let t = 2 * r + 1;
    match short_cycle_proximity(&g, r, t, DEFAULT_MAX_CYCLE_LENGTH.max(t)) {
        Ok(z) => put(MetricRecord::new("short_cycle_proximity", json!({"s": r, "t": t}), z))?,
        Err(e) => eprintln!("short_cycle_proximity: {e}"),
    }
    Ok(true)
}

fn color(path: Option<&Path>, c: &Common, method: Method, dimacs: bool) -> Result<bool> {
    let g = graph_or_sample(path, c)?;
    let r = c.r.unwrap_or(2);
    let (name, coloring): (&str, Coloring) = match method {
        Method::Greedy => ("greedy", greedy_power_coloring(&g, r, &natural_order(g.n()))),
        Method::TwoPhase => match two_phase_power_coloring(&g, r) {
            Ok(col) => ("two-phase", col),
            Err(Error::ForestViolation { cycle }) => {
                eprintln!("forest condition fails on a cycle of length {}; using greedy", cycle.len());
                ("greedy", greedy_power_coloring(&g, r, &natural_order(g.n())))
            }
            Err(e) => return Err(e.into()),
        },
        Method::Dsatur => {
            let p = graph_power(&g, r, c.edge_cap.unwrap_or(DEFAULT_EDGE_CAP))?;
            let res = dsatur_chromatic_exact(&p, c.chi_budget.unwrap_or(5_000_000))?;
            ("dsatur", res.witness.with_radius(r))
        }
    };
    let proper = verify_proper_power_coloring(&g, r, &coloring);
    if let Some(path) = &c.out {
        let out = open_out(Some(path))?;
        if dimacs {
            coloring.write_dimacs_solution(out)?;
        } else {
            coloring.write_text(out)?;
        }
    }
    let delta_prev = if r >= 2 { Some(power_max_degree(&g, r - 1).delta_r) } else { None };
    println!(
        "{}",
        json!({
            "method": name,
            "r": r,
            "n": g.n(),
            "palette": coloring.palette_size(),
            "delta_r": power_max_degree(&g, r).delta_r,
            "delta_r_minus_1": delta_prev,
            "proper": proper.is_ok(),
            "conflict": proper.err(),
        })
    );
    Ok(proper.is_ok())
}

fn eval_command(formula: Option<String>, args: Vec<String>, batch: Option<PathBuf>) -> Result<bool> {
    match (formula, batch) {
        (Some(f), None) => {
            let value = eval_formula(&f, &args)?;
            println!("{value}");
            Ok(true)
        }
        (None, Some(path)) => {
            let file = File::open(&path)
                .map_err(Error::Io)
                .with_context(|| format!("opening {}", path.display()))?;
            let mut all_ok = true;
            for line in BufReader::new(file).lines() {
                let line = line.map_err(Error::Io)?;
                let line = line.split('#').next().unwrap_or("").trim().to_string();
                if line.is_empty() {
                    continue;
                }
                let mut toks = line.split_whitespace().map(str::to_string);
                let f = toks.next().expect("non-empty line");
                let rest: Vec<String> = toks.collect();
                match eval_formula(&f, &rest) {
                    Ok(v) => println!("{v}"),
                    Err(e) => {
                        all_ok = false;
                        println!("{}", json!({"formula": f, "inputs": rest, "error": format!("{e:#}")}));
                    }
                }
            }
            if all_ok {
                Ok(true)
            } else {
                bail!(Error::Config("some batch lines failed".into()))
            }
        }
        _ => bail!(Error::Config("give a formula or --batch FILE".into())),
    }
}

struct Inputs(Vec<(String, String)>);

impl Inputs {
    fn parse(args: &[String]) -> Result<Self> {
        let mut pairs = Vec::new();
        for a in args {
            let (k, v) = a
                .split_once('=')
                .ok_or_else(|| anyhow!(Error::Config(format!("expected key=value, got `{a}`"))))?;
            pairs.push((k.trim().to_string(), v.trim().to_string()));
        }
        Ok(Self(pairs))
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.0.iter().rev().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        let v = self
            .raw(key)
            .ok_or_else(|| anyhow!(Error::Config(format!("missing input `{key}`"))))?;
        parse_num(v).ok_or_else(|| anyhow!(Error::Config(format!("bad value `{v}` for `{key}`"))))
    }

    fn get_or<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T> {
        if self.raw(key).is_some() {
            self.get(key)
        } else {
            Ok(default)
        }
    }

    fn json(&self) -> Value {
        Value::Object(
            self.0
                .iter()
                .map(|(k, v)| {
                    let val = v.parse::<f64>().map_or_else(|_| json!(v), |x| json!(x));
                    (k.clone(), val)
                })
                .collect(),
        )
    }

    fn params(&self) -> Result<TheoryParams> {
        let r: usize = self.get_or("r", 1)?;
        let eps = self.get_or("epsilon", default_epsilon(r))?;
        Ok(TheoryParams::new(self.get("n")?, self.get("d")?, r, eps)?)
    }

    fn profile(&self) -> Result<DegreeProfile> {
        let raw = self
            .raw("ell")
            .ok_or_else(|| anyhow!(Error::Config("missing input `ell`".into())))?;
        let ell = raw
            .split(',')
            .map(|s| parse_num::<u64>(s.trim()))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| anyhow!(Error::Config(format!("bad profile `{raw}`"))))?;
        Ok(DegreeProfile::new(ell))
    }
}

/// Parses plain numbers and `1e6`-style integers.
fn parse_num<T: std::str::FromStr>(v: &str) -> Option<T> {
    v.parse().ok().or_else(|| {
        let x: f64 = v.parse().ok()?;
        if x.fract() == 0.0 && x.abs() < 1e18 {
            format!("{x:.0}").parse().ok()
        } else {
            None
        }
    })
}

const FORMULAS: &str = "iterated-log, d-star, u, log-u, log-u-stirling, pmf, lemma2-exact, \
                        lemma2-lagrange, janson-k0, janson-mu, aks";

fn eval_formula(formula: &str, args: &[String]) -> Result<Value> {
    let inp = Inputs::parse(args)?;
    let value = match formula {
        "iterated-log" => json!(iterated_log(inp.get("x")?, inp.get("k")?)?),
        "d-star" => json!(d_star(inp.get("n")?, inp.get("r")?)?),
        "u" => json!(u_value(&inp.profile()?, inp.get("d")?)?),
        "log-u" => json!(log_u(&inp.profile()?, inp.get("d")?)?),
        "log-u-stirling" => {
            let (v, slack) = log_u_stirling(&inp.profile()?, inp.get("d")?)?;
            json!({"stirling": v, "remainder": slack})
        }
        "pmf" => json!(degree_sum_pmf(&inp.params()?, inp.get("D")?)?),
        "lemma2-exact" => serde_json::to_value(lemma2_min_exact(inp.get("D")?, inp.get("r")?)?)?,
        "lemma2-lagrange" => {
            serde_json::to_value(lemma2_min_lagrange(inp.get("D")?, inp.get("r")?)?)?
        }
        "janson-k0" => json!(janson_k0(&inp.params()?)?),
        "janson-mu" => json!(janson_mu(&inp.params()?, inp.get("k")?)),
        "aks" => json!(aks_chi_bound(inp.get("delta")?, inp.get("t")?, inp.get_or("c", 1.0)?)?),
        other => bail!(Error::Config(format!("unknown formula `{other}` (known: {FORMULAS})"))),
    };
    Ok(json!({"formula": formula, "inputs": inp.json(), "value": value}))
}
