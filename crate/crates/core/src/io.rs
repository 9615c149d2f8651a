//! Edge-list text format.
//!
//! ```text
//! c optional comment lines
//! p 2vc <n> <m>
//! e <u> <v>        (m lines, 0-based endpoints)
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("bad {what} `{tok}`")))
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut graph = Graph::new(0);
    let mut seen = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let mut toks = trimmed.split_whitespace();
        match toks.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err(line, "duplicate header"));
                }
                if toks.next() != Some("2vc") {
                    return Err(parse_err(line, "expected `p 2vc <n> <m>`"));
                }
                let n = parse_num(toks.next(), line, "vertex count")?;
                let m = parse_num(toks.next(), line, "edge count")?;
                header = Some((n, m));
                graph = Graph::new(n);
            }
            Some("e") => {
                if header.is_none() {
                    return Err(parse_err(line, "edge before header"));
                }
                let u = parse_num(toks.next(), line, "endpoint")?;
                let v = parse_num(toks.next(), line, "endpoint")?;
                graph
                    .add_edge(u, v)
                    .map_err(|e| parse_err(line, e.to_string()))?;
                seen += 1;
            }
            Some(other) => return Err(parse_err(line, format!("unknown record `{other}`"))),
            None => unreachable!(),
        }
        if toks.next().is_some() {
            return Err(parse_err(line, "trailing tokens"));
        }
    }
    let (_, m) = header.ok_or_else(|| parse_err(0, "missing header"))?;
    if seen != m {
        return Err(parse_err(0, format!("header declares {m} edges, found {seen}")));
    }
    Ok(graph)
}

pub fn write_edge_list(g: &Graph) -> String {
    write_edges(g.n(), g.edges())
}

pub fn write_edges<I: IntoIterator<Item = Edge>>(n: usize, edges: I) -> String {
    let edges: Vec<Edge> = edges.into_iter().collect();
    let mut out = String::new();
    writeln!(out, "p 2vc {} {}", n, edges.len()).unwrap();
    for e in edges {
        writeln!(out, "e {} {}", e.0, e.1).unwrap();
    }
    out
}

/// Figure edge classes (`red`, `blue`, `dashed`, `solid`, ...). An edge
/// may belong to several classes.
pub type EdgeClasses = BTreeMap<String, Vec<Edge>>;

/// Sidecar format: one line `<class> <u> <v>` per classified edge.
pub fn write_classes(classes: &EdgeClasses) -> String {
    let mut out = String::new();
    for (name, edges) in classes {
        for e in edges {
            writeln!(out, "{} {} {}", name, e.0, e.1).unwrap();
        }
    }
    out
}

pub fn parse_classes(text: &str) -> Result<EdgeClasses> {
    let mut classes = EdgeClasses::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut toks = raw.split_whitespace();
        let Some(name) = toks.next() else { continue };
        let u = parse_num(toks.next(), line, "endpoint")?;
        let v = parse_num(toks.next(), line, "endpoint")?;
        classes.entry(name.to_string()).or_default().push(Edge::new(u, v));
    }
    Ok(classes)
}
