use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn powcol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_powcol"))
        .args(args)
        .output()
        .expect("spawn powcol")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<serde_json::Value> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn eval_prints_formula_record() {
    let o = powcol(&["eval", "lemma2-exact", "D=4", "r=2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    assert_eq!(v["formula"], "lemma2-exact");
    let value = v["value"]["value"].as_f64().unwrap();
    assert!((value - 2.0 * 2f64.ln()).abs() < 1e-12);

    let o = powcol(&["eval", "aks", "delta=10000", "t=100", "c=1"]);
    let value = json_lines(&o)[0]["value"].as_f64().unwrap();
    assert!((value - 2171.47).abs() < 0.01, "{value}");
}

#[test]
fn eval_batch_reads_one_line_per_record() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("batch.txt");
    fs::write(&path, "# formulas\niterated-log x=100 k=2\npmf n=1000000 d=1 r=1 D=0\n").unwrap();
    let o = powcol(&["eval", "--batch", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let lines = json_lines(&o);
    assert_eq!(lines.len(), 2);
    let pmf = lines[1]["value"].as_f64().unwrap();
    assert!((pmf - (-1f64).exp()).abs() < 1e-15);
}

#[test]
fn exit_codes() {
    assert_eq!(powcol(&["eval", "no-such-formula", "x=1"]).status.code(), Some(2));
    assert_eq!(powcol(&["verify-theorem", "th9"]).status.code(), Some(2));
    assert_eq!(powcol(&["experiment", "run", "/nonexistent/cfg.txt"]).status.code(), Some(3));
    assert_eq!(powcol(&["stats", "--graph", "/nonexistent/g.txt"]).status.code(), Some(3));

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "kind = chi-sandwich\nn = 100\nd = 2\nr = 2\nbogus = 1\n").unwrap();
    assert_eq!(powcol(&["experiment", "run", cfg.to_str().unwrap()]).status.code(), Some(2));
}

fn run_config(dir: &Path, workers: &str, out: &str) -> Output {
    let cfg = dir.join("small.cfg");
    fs::write(
        &cfg,
        "# small campaign\nkind = clique-sandwich\nn = 80\nd = 3\nr = 2\ntrials = 6\nseed = 9\n",
    )
    .unwrap();
    powcol(&[
        "experiment",
        "run",
        cfg.to_str().unwrap(),
        "--workers",
        workers,
        "--out",
        dir.join(out).to_str().unwrap(),
    ])
}

#[test]
fn experiment_run_is_reproducible_across_workers() {
    let dir = tempfile::tempdir().unwrap();
    let a = run_config(dir.path(), "1", "a.csv");
    let b = run_config(dir.path(), "4", "b.csv");
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(b.status.code(), Some(0));
    let fa = fs::read(dir.path().join("a.csv")).unwrap();
    let fb = fs::read(dir.path().join("b.csv")).unwrap();
    assert_eq!(fa, fb);
    assert_eq!(String::from_utf8(fa).unwrap().lines().count(), 7);
    assert!(stdout(&a).contains("PASS deterministic chain"));
}

#[test]
fn sample_then_stats_and_color() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    let o = powcol(&["sample", "--n", "300", "--d", "2", "--seed", "5", "--out", g.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));

    let o = powcol(&["stats", "--graph", g.to_str().unwrap(), "--r", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let ops: Vec<String> = json_lines(&o).iter().map(|v| v["op"].as_str().unwrap().to_string()).collect();
    assert!(ops.iter().any(|op| op == "power_max_degree"));
    assert!(ops.iter().any(|op| op == "clique_lower_bound"));

    for method in ["greedy", "two-phase", "dsatur"] {
        let o = powcol(&["color", "--graph", g.to_str().unwrap(), "--r", "2", "--method", method]);
        assert_eq!(o.status.code(), Some(0), "{method}");
        let v = &json_lines(&o)[0];
        assert_eq!(v["proper"], true);
        assert!(v["palette"].as_u64().unwrap() <= v["delta_r"].as_u64().unwrap() + 1);
    }
}

#[test]
fn sample_is_seed_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("g{i}.col"))).collect();
    for p in &paths {
        let o = powcol(&[
            "sample", "--n", "500", "--p", "0.01", "--seed", "77", "--graph-format", "dimacs", "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(fs::read(&paths[0]).unwrap(), fs::read(&paths[1]).unwrap());
}
