//! Text formats. All ids in files are 1-based.
//!
//! Edge list:
//!
//! ```text
//! # rig-edgelist n=<n>
//! i j        (i < j, ascending lexicographic, one pair per line)
//! ```
//!
//! Attribute list (line `k` after the header lists the members of `W_k`,
//! empty lines allowed):
//!
//! ```text
//! # rig-attrs n=<n> m=<m>
//! 1 4 7
//!
//! 2 3
//! ```
//!
//! Node list (for explicit samples): whitespace-separated ids, `#` starts a
//! comment.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::{AttributeAssignment, Graph, NodeId};

pub const EDGELIST_TAG: &str = "rig-edgelist";
pub const ATTRS_TAG: &str = "rig-attrs";

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_header(line: &str, tag: &str, keys: &[&str], lineno: usize) -> Result<Vec<usize>> {
    let mut parts = line.split_whitespace();
    if parts.next() != Some("#") || parts.next() != Some(tag) {
        return Err(parse_err(lineno, format!("expected header '# {tag} ...'")));
    }
    let mut values = Vec::with_capacity(keys.len());
    for &key in keys {
        let field = parts
            .next()
            .ok_or_else(|| parse_err(lineno, format!("missing '{key}=' in header")))?;
        let value = field
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .ok_or_else(|| parse_err(lineno, format!("expected '{key}=<value>', got '{field}'")))?;
        values.push(
            value
                .parse()
                .map_err(|_| parse_err(lineno, format!("bad value for {key}: '{value}'")))?,
        );
    }
    if let Some(extra) = parts.next() {
        return Err(parse_err(lineno, format!("unexpected header field '{extra}'")));
    }
    Ok(values)
}

fn parse_id(tok: &str, n: usize, lineno: usize) -> Result<NodeId> {
    let id: usize = tok
        .parse()
        .map_err(|_| parse_err(lineno, format!("bad node id '{tok}'")))?;
    if id == 0 || id > n {
        return Err(parse_err(lineno, format!("node id {id} outside 1..={n}")));
    }
    Ok((id - 1) as NodeId)
}

pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "# {EDGELIST_TAG} n={}", g.node_count())?;
    for (i, j) in g.edges() {
        writeln!(out, "{} {}", i + 1, j + 1)?;
    }
    out.flush()?;
    Ok(())
}

/// Reads an edge list. Pairs must have `i < j` and be free of duplicates;
/// the ordering requirement is only enforced for writers.
pub fn read_edge_list<R: BufRead>(input: R) -> Result<Graph> {
    let mut lines = input.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty input"))?;
    let n = parse_header(&header?, EDGELIST_TAG, &["n"], 1)?[0];
    let mut edges = Vec::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(parse_err(lineno, format!("expected 'i j', got '{trimmed}'")));
        }
        let i = parse_id(toks[0], n, lineno)?;
        let j = parse_id(toks[1], n, lineno)?;
        if i >= j {
            return Err(parse_err(lineno, format!("pair must satisfy i < j: '{trimmed}'")));
        }
        edges.push((i, j));
    }
    let count = edges.len();
    let g = Graph::from_edges(n, &edges)?;
    if g.edge_count() != count {
        return Err(parse_err(0, "duplicate edges in edge list"));
    }
    Ok(g)
}

pub fn write_attribute_list<W: Write>(a: &AttributeAssignment, mut out: W) -> Result<()> {
    writeln!(out, "# {ATTRS_TAG} n={} m={}", a.node_count(), a.attribute_count())?;
    for w in a.all_members() {
        let line: Vec<String> = w.iter().map(|i| (i + 1).to_string()).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_attribute_list<R: BufRead>(input: R) -> Result<AttributeAssignment> {
    let mut lines = input.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty input"))?;
    let hv = parse_header(&header?, ATTRS_TAG, &["n", "m"], 1)?;
    let (n, m) = (hv[0], hv[1]);
    let mut members = Vec::with_capacity(m);
    for (idx, line) in lines {
        let lineno = idx + 1;
        let line = line?;
        if members.len() == m {
            if line.trim().is_empty() {
                continue;
            }
            return Err(parse_err(lineno, format!("more than m = {m} attribute lines")));
        }
        let w = line
            .split_whitespace()
            .map(|t| parse_id(t, n, lineno))
            .collect::<Result<Vec<_>>>()?;
        members.push(w);
    }
    // Trailing empty attributes may have lost their newline.
    members.resize(m, Vec::new());
    AttributeAssignment::new(n, members)
}

/// Reads a 1-based node list into 0-based ids.
pub fn read_node_list<R: BufRead>(input: R, n: usize) -> Result<Vec<NodeId>> {
    let mut nodes = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        let content = line.split('#').next().unwrap_or("");
        for tok in content.split_whitespace() {
            nodes.push(parse_id(tok, n, idx + 1)?);
        }
    }
    Ok(nodes)
}
