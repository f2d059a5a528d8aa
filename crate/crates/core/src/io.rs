//! graph6 and plain edge-list text formats.
//!
//! The edge-list form is a header line `n m` followed by `m` lines `u v`
//! (0-indexed). Blank lines and lines starting with `#` are ignored.

use crate::error::{Error, Result};
use crate::graph::{HostGraph, SmallGraph};

const G6_HEADER: &str = ">>graph6<<";

fn encode_n(n: usize, out: &mut String) {
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    } else {
        out.push('~');
        out.push('~');
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    }
}

/// graph6 string for an `n`-vertex graph given an adjacency oracle.
fn encode<F: Fn(usize, usize) -> bool>(n: usize, adjacent: F) -> String {
    let mut out = String::new();
    encode_n(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | adjacent(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    out
}

/// Decodes one graph6 string into a vertex count and edge list.
fn decode(line: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let s = line.trim();
    let s = s.strip_prefix(G6_HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    let bad = |msg: &str| Error::Parse(format!("graph6 `{s}`: {msg}"));
    if bytes.is_empty() {
        return Err(bad("empty string"));
    }
    if let Some(b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(bad(&format!("byte {b} outside 63..=126")));
    }
    let val = |b: u8| (b - 63) as usize;
    let (n, mut pos) = if bytes[0] != 126 {
        (val(bytes[0]), 1)
    } else if bytes.len() >= 2 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return Err(bad("truncated size field"));
        }
        let n = bytes[2..8].iter().fold(0, |a, &b| (a << 6) | val(b));
        (n, 8)
    } else {
        if bytes.len() < 4 {
            return Err(bad("truncated size field"));
        }
        let n = bytes[1..4].iter().fold(0, |a, &b| (a << 6) | val(b));
        (n, 4)
    };
    let total_bits = n * n.saturating_sub(1) / 2;
    let needed = total_bits.div_ceil(6);
    if bytes.len() - pos != needed {
        return Err(bad(&format!(
            "expected {needed} data bytes for {n} vertices, found {}",
            bytes.len() - pos
        )));
    }
    let mut edges = Vec::new();
    let mut bit = 0;
    let mut cur = 0usize;
    let mut left = 0;
    for j in 1..n {
        for i in 0..j {
            if left == 0 {
                cur = val(bytes[pos]);
                pos += 1;
                left = 6;
            }
            left -= 1;
            if cur >> left & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    debug_assert_eq!(bit, total_bits);
    Ok((n, edges))
}

impl SmallGraph {
    /// graph6 encoding. Loop marks are not representable and are omitted.
    pub fn to_graph6(&self) -> String {
        encode(self.n(), |i, j| self.has_edge(i, j))
    }

    pub fn from_graph6(s: &str) -> Result<SmallGraph> {
        let (n, edges) = decode(s)?;
        SmallGraph::from_edges(n, &edges)
    }

    pub fn to_edge_list(&self) -> String {
        edge_list_string(self.n(), self.edges())
    }
}

impl HostGraph {
    pub fn to_graph6(&self) -> String {
        encode(self.n(), |i, j| self.adjacent(i, j))
    }

    pub fn from_graph6(s: &str) -> Result<HostGraph> {
        let (n, edges) = decode(s)?;
        HostGraph::from_edges(n, &edges)
    }

    pub fn to_edge_list(&self) -> String {
        edge_list_string(self.n(), self.edges())
    }

    pub fn from_edge_list(text: &str) -> Result<HostGraph> {
        let (n, edges) = parse_edge_list(text)?;
        HostGraph::from_edges(n, &edges)
    }
}

fn edge_list_string(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> String {
    let edges: Vec<_> = edges.collect();
    let mut out = format!("{} {}\n", n, edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some((a, b))
}

fn parse_edge_list(text: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let mut lines = content_lines(text);
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("edge list: missing `n m` header".into()))?;
    let (n, m) = parse_pair(header)
        .ok_or_else(|| Error::Parse(format!("edge list: bad header `{header}`")))?;
    let mut edges = Vec::with_capacity(m);
    for line in lines {
        let e = parse_pair(line)
            .ok_or_else(|| Error::Parse(format!("edge list: bad edge line `{line}`")))?;
        edges.push(e);
    }
    if edges.len() != m {
        return Err(Error::Parse(format!(
            "edge list: header announces {m} edges, found {}",
            edges.len()
        )));
    }
    Ok((n, edges))
}

/// Reads a single host graph from text in either graph6 or edge-list form.
///
/// The edge-list form is recognised by a first content line consisting of two
/// integers.
pub fn parse_host(text: &str) -> Result<HostGraph> {
    let first = content_lines(text)
        .next()
        .ok_or_else(|| Error::Parse("empty graph file".into()))?;
    if parse_pair(first).is_some() {
        HostGraph::from_edge_list(text)
    } else {
        HostGraph::from_graph6(first)
    }
}

/// Reads a list of small graphs, one graph6 string per line; a file in
/// edge-list form yields a single graph.
pub fn parse_small_list(text: &str) -> Result<Vec<SmallGraph>> {
    let mut lines = content_lines(text).peekable();
    match lines.peek() {
        None => Err(Error::Parse("empty graph file".into())),
        Some(first) if parse_pair(first).is_some() => {
            let (n, edges) = parse_edge_list(text)?;
            Ok(vec![SmallGraph::from_edges(n, &edges)?])
        }
        Some(_) => lines
            .map(|l| SmallGraph::from_graph6(l.split_whitespace().next().unwrap_or(l)))
            .collect(),
    }
}
