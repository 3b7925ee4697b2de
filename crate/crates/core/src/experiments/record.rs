use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::config::{Kind, OutputFormat};
use crate::error::{Error, Result};
use crate::theory::Estimate;

/// Measurements from one trial. Fields a kind does not measure are `None`
/// (empty in CSV).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub config_hash: String,
    pub kind: Kind,
    pub trial: u64,
    pub seed: u64,
    pub n: u64,
    pub m: u64,
    pub r: u64,
    /// `Delta(G^s)` for `s = 1..=r`.
    pub deltas: Vec<u64>,
    /// `Delta(G^{floor(r/2)}) + 1`.
    pub clique_lower: u64,
    pub omega: Option<Estimate>,
    pub alpha: Option<Estimate>,
    /// Lower side from cliques, upper side from the best colouring found.
    pub chi: Option<Estimate>,
    pub greedy_palette: Option<u64>,
    /// Whether the high-degree region was a forest.
    pub forest_ok: Option<bool>,
    pub two_phase_palette: Option<u64>,
    pub two_phase_proper: Option<bool>,
    /// Exact chromatic number of `G^r` restricted to a max-degree ball.
    pub ball_chi: Option<u64>,
    /// Vertices within distance `r` of a cycle of length at most `2r + 1`.
    pub z_short_cycles: Option<u64>,
    /// Number of vertices with `G^r` degree `D`, for `D = 0..=max_degree_sum`.
    pub degree_counts: Vec<u64>,
    /// `clique_lower <= omega <= best colouring <= Delta(G^r) + 1`.
    pub chain_ok: bool,
    /// Budget errors and other non-fatal notes.
    pub note: String,
    pub wall_ms: Option<f64>,
}

pub const CSV_COLUMNS: &[&str] = &[
    "config_hash", "kind", "trial", "seed", "n", "m", "r", "deltas", "clique_lower",
    "omega_lower", "omega_upper", "omega_exact", "alpha_lower", "alpha_upper", "alpha_exact",
    "chi_lower", "chi_upper", "chi_exact", "greedy_palette", "forest_ok", "two_phase_palette",
    "two_phase_proper", "ball_chi", "z_short_cycles", "degree_counts", "chain_ok", "note",
    "wall_ms",
];

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

fn joined(v: &[u64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

impl TrialRecord {
    pub fn csv_row(&self) -> Vec<String> {
        let est = |e: &Option<Estimate>| {
            [
                opt(e.map(|e| e.lower)),
                opt(e.map(|e| e.upper)),
                opt(e.map(|e| e.exact)),
            ]
        };
        let mut row = vec![
            self.config_hash.clone(),
            self.kind.to_string(),
            self.trial.to_string(),
            self.seed.to_string(),
            self.n.to_string(),
            self.m.to_string(),
            self.r.to_string(),
            joined(&self.deltas),
            self.clique_lower.to_string(),
        ];
        row.extend(est(&self.omega));
        row.extend(est(&self.alpha));
        row.extend(est(&self.chi));
        row.extend([
            opt(self.greedy_palette),
            opt(self.forest_ok),
            opt(self.two_phase_palette),
            opt(self.two_phase_proper),
            opt(self.ball_chi),
            opt(self.z_short_cycles),
            joined(&self.degree_counts),
            self.chain_ok.to_string(),
            self.note.clone(),
            opt(self.wall_ms),
        ]);
        row
    }
}

/// First line of a JSON-lines file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonlHeader {
    pub config_hash: String,
    pub kind: Kind,
    pub columns: Vec<String>,
}

/// Streams records to a sink, flushing after every line.
///
/// CSV has one header row of column names (every row carries the config
/// hash); JSON lines start with a [`JsonlHeader`] object.
pub struct RecordWriter<W: Write> {
    format: OutputFormat,
    csv: Option<csv::Writer<W>>,
    raw: Option<W>,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(out: W, format: OutputFormat, config_hash: &str, kind: Kind) -> Result<Self> {
        match format {
            OutputFormat::Csv => {
                let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
                w.write_record(CSV_COLUMNS).map_err(csv_err)?;
                w.flush()?;
                Ok(Self {
                    format,
                    csv: Some(w),
                    raw: None,
                })
            }
            OutputFormat::Jsonl => {
                let mut out = out;
                let header = JsonlHeader {
                    config_hash: config_hash.to_string(),
                    kind,
                    columns: CSV_COLUMNS.iter().map(|s| s.to_string()).collect(),
                };
                writeln!(out, "{}", serde_json::to_string(&header).map_err(json_err)?)?;
                out.flush()?;
                Ok(Self {
                    format,
                    csv: None,
                    raw: Some(out),
                })
            }
        }
    }

    pub fn write(&mut self, record: &TrialRecord) -> Result<()> {
        match self.format {
            OutputFormat::Csv => {
                let w = self.csv.as_mut().expect("csv sink");
                w.write_record(record.csv_row()).map_err(csv_err)?;
                w.flush()?;
            }
            OutputFormat::Jsonl => {
                let w = self.raw.as_mut().expect("jsonl sink");
                writeln!(w, "{}", serde_json::to_string(record).map_err(json_err)?)?;
                w.flush()?;
            }
        }
        Ok(())
    }
}

/// Writes a complete record file.
pub fn emit<W: Write>(
    records: &[TrialRecord],
    format: OutputFormat,
    config_hash: &str,
    kind: Kind,
    out: W,
) -> Result<()> {
    let mut w = RecordWriter::new(out, format, config_hash, kind)?;
    for r in records {
        w.write(r)?;
    }
    Ok(())
}

/// Reads a JSON-lines record file written by [`emit`].
pub fn read_jsonl<R: BufRead>(input: R) -> Result<(JsonlHeader, Vec<TrialRecord>)> {
    let mut lines = input.lines().enumerate();
    let header = match lines.next() {
        Some((_, line)) => serde_json::from_str(&line?).map_err(|e| Error::Parse {
            line: 1,
            msg: e.to_string(),
        })?,
        None => {
            return Err(Error::Parse {
                line: 0,
                msg: "empty record file".into(),
            })
        }
    };
    let mut records = Vec::new();
    for (idx, line) in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        records.push(serde_json::from_str(&line).map_err(|e| Error::Parse {
            line: idx + 1,
            msg: e.to_string(),
        })?);
    }
    Ok((header, records))
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Io(std::io::Error::other(format!("{other:?}"))),
    }
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}
