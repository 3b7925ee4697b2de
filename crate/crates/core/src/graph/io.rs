//! Text formats.
//!
//! * Edge list: header `n m`, then `m` lines `u v`, 0-indexed with `u < v`.
//! * DIMACS `.col`: `p edge n m`, then `e u v`, 1-indexed. `c` lines are
//!   comments.

use std::io::{BufRead, Write};

use super::Graph;
use crate::error::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| parse_err(line, format!("bad {what}")))
}

pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "{} {}", g.n(), g.m())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_edge_list<R: BufRead>(input: R) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let mut toks = text.split_whitespace();
        match header {
            None => {
                let n = field(toks.next(), lineno, "vertex count")?;
                let m = field(toks.next(), lineno, "edge count")?;
                header = Some((n, m));
            }
            Some((n, _)) => {
                let u: usize = field(toks.next(), lineno, "endpoint")?;
                let v: usize = field(toks.next(), lineno, "endpoint")?;
                if u >= n || v >= n || u == v {
                    return Err(parse_err(lineno, format!("invalid edge {u} {v}")));
                }
                edges.push((u, v));
            }
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(0, "missing header"))?;
    if edges.len() != m {
        return Err(parse_err(0, format!("header says {m} edges, found {}", edges.len())));
    }
    Graph::from_edges(n, edges)
}

pub fn write_dimacs<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "p edge {} {}", g.n(), g.m())?;
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1)?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_dimacs<R: BufRead>(input: R) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let mut toks = line.split_whitespace();
        match toks.next() {
            None | Some("c") => {}
            Some("p") => {
                let _format = toks.next();
                n = Some(field(toks.next(), lineno, "vertex count")?);
            }
            Some("e") => {
                let n = n.ok_or_else(|| parse_err(lineno, "edge before problem line"))?;
                let u: usize = field(toks.next(), lineno, "endpoint")?;
                let v: usize = field(toks.next(), lineno, "endpoint")?;
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(parse_err(lineno, format!("endpoint out of range: {u} {v}")));
                }
                if u != v {
                    edges.push((u - 1, v - 1));
                }
            }
            Some(other) => return Err(parse_err(lineno, format!("unknown line type {other:?}"))),
        }
    }
    let n = n.ok_or_else(|| parse_err(0, "missing problem line"))?;
    Graph::from_edges(n, edges)
}
