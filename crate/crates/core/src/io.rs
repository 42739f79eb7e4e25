//! Plain-text edge-list files and trajectory CSV serialization.
//!
//! Edge-list format: a header line `n <node_count>`, then one line per
//! edge `<u> <v> <rel>` with the relation defaulting to 1 when omitted.
//! Lines starting with `#` are comments.

use crate::error::{Error, Result};
use crate::graph::{Graph, RelationTag};
use crate::rewire::TrajectoryRecord;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses an edge list from text.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        if graph.is_none() {
            if fields.next() != Some("n") {
                return Err(parse_err(lineno, "expected header `n <node_count>`"));
            }
            let n: usize = fields
                .next()
                .ok_or_else(|| parse_err(lineno, "missing node count"))?
                .parse()
                .map_err(|_| parse_err(lineno, "node count is not an integer"))?;
            if fields.next().is_some() {
                return Err(parse_err(lineno, "trailing tokens after header"));
            }
            graph = Some(Graph::empty(n));
            continue;
        }
        let g = graph.as_mut().unwrap();
        let u: usize = fields
            .next()
            .ok_or_else(|| parse_err(lineno, "missing edge endpoint"))?
            .parse()
            .map_err(|_| parse_err(lineno, "endpoint is not an integer"))?;
        let v: usize = fields
            .next()
            .ok_or_else(|| parse_err(lineno, "missing second endpoint"))?
            .parse()
            .map_err(|_| parse_err(lineno, "endpoint is not an integer"))?;
        let tag = match fields.next() {
            None => RelationTag::Original,
            Some(t) => {
                let raw: u8 = t
                    .parse()
                    .map_err(|_| parse_err(lineno, "relation is not an integer"))?;
                RelationTag::from_u8(raw).ok_or(Error::UnknownRelation(raw))?
            }
        };
        if fields.next().is_some() {
            return Err(parse_err(lineno, "trailing tokens after edge"));
        }
        g.add_edge(u, v, tag)
            .map_err(|e| parse_err(lineno, e.to_string()))?;
    }
    graph.ok_or_else(|| parse_err(0, "empty file: no header line"))
}

/// Serializes a graph to edge-list text with explicit relation tags,
/// edges in canonical (u, v) order.
pub fn edge_list_to_string(g: &Graph) -> String {
    let mut edges: Vec<_> = g.edges().to_vec();
    edges.sort_unstable_by_key(|&(u, v, _)| (u, v));
    let mut out = String::new();
    let _ = writeln!(out, "n {}", g.node_count());
    for (u, v, tag) in edges {
        let _ = writeln!(out, "{} {} {}", u, v, tag.as_u8());
    }
    out
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    parse_edge_list(&fs::read_to_string(path)?)
}

pub fn write_edge_list(path: impl AsRef<Path>, g: &Graph) -> Result<()> {
    fs::write(path, edge_list_to_string(g))?;
    Ok(())
}

/// CSV with header `iter,u,v,score,rayleigh,gap`; the gap column is
/// empty when exact tracking was off.
pub fn trajectory_to_csv(records: &[TrajectoryRecord]) -> String {
    let mut out = String::from("iter,u,v,score,rayleigh,gap\n");
    for r in records {
        let gap = r.exact_gap.map(|g| g.to_string()).unwrap_or_default();
        let _ = writeln!(out, "{},{},{},{},{},{}", r.iter, r.u, r.v, r.score, r.rayleigh, gap);
    }
    out
}

pub fn write_trajectory(path: impl AsRef<Path>, records: &[TrajectoryRecord]) -> Result<()> {
    fs::write(path, trajectory_to_csv(records))?;
    Ok(())
}
