//! Plain-text point cloud and edge list formats.
//!
//! Point cloud: one node per line, `D` whitespace-separated decimals; lines whose
//! first non-blank character is `#` are comments, blank lines are skipped.
//!
//! Edge list: one edge per line, `u v [tag]` with 0-based indices and tag `M`
//! (mesh) or `T` (tree).

use std::collections::HashSet;
use std::io::{self, Write};

use crate::error::ParseError;
use crate::mesh::{Edge, EdgeTag, Mesh, PointSet, TaggedEdge, TaggedEdgeSet};

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let t = l.trim();
        (!t.is_empty() && !t.starts_with('#')).then_some((i + 1, t))
    })
}

pub fn parse_point_cloud(text: &str) -> Result<PointSet, ParseError> {
    let mut dim = None;
    let mut coords = Vec::new();
    for (line, content) in data_lines(text) {
        let start = coords.len();
        for token in content.split_whitespace() {
            let x: f64 = token
                .parse()
                .map_err(|_| ParseError::BadNumber { line, token: token.to_string() })?;
            if !x.is_finite() {
                return Err(ParseError::NonFinite { line, token: token.to_string() });
            }
            coords.push(x);
        }
        let found = coords.len() - start;
        let expected = *dim.get_or_insert(found);
        if found != expected {
            return Err(ParseError::ColumnCount { line, expected, found });
        }
    }
    match dim {
        None => Err(ParseError::Empty),
        Some(d) => Ok(PointSet::new(d, coords).expect("shape checked per line")),
    }
}

fn parse_tag(line: usize, token: &str) -> Result<EdgeTag, ParseError> {
    match token {
        "M" => Ok(EdgeTag::Mesh),
        "T" => Ok(EdgeTag::Tree),
        _ => Err(ParseError::BadTag { line, token: token.to_string() }),
    }
}

fn parse_edge_line(line: usize, content: &str) -> Result<(usize, usize, Option<EdgeTag>), ParseError> {
    let tokens: Vec<&str> = content.split_whitespace().collect();
    if !(2..=3).contains(&tokens.len()) {
        return Err(ParseError::EdgeFormat { line });
    }
    let index = |t: &str| {
        t.parse::<usize>().map_err(|_| ParseError::BadIndex { line, token: t.to_string() })
    };
    let tag = tokens.get(2).map(|t| parse_tag(line, t)).transpose()?;
    Ok((index(tokens[0])?, index(tokens[1])?, tag))
}

/// Reads an edge list against `points`. Tags are accepted and ignored.
pub fn parse_graph(points: PointSet, edges_text: &str) -> Result<Mesh, ParseError> {
    let edges = parse_edges(points.len(), edges_text, false)?;
    let pairs = edges.into_iter().map(|e| (e.u, e.v)).collect();
    Ok(Mesh::new(points, pairs).expect("edges checked while parsing"))
}

/// Reads an edge list keeping tags; untagged lines are mesh edges.
pub fn parse_tagged_edges(nodes: usize, text: &str) -> Result<TaggedEdgeSet, ParseError> {
    Ok(TaggedEdgeSet::new(parse_edges(nodes, text, true)?))
}

fn parse_edges(nodes: usize, text: &str, by_tag: bool) -> Result<Vec<TaggedEdge>, ParseError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (line, content) in data_lines(text) {
        let (u, v, tag) = parse_edge_line(line, content)?;
        if let Some(&index) = [u, v].iter().find(|&&i| i >= nodes) {
            return Err(ParseError::IndexOutOfRange { line, index, nodes });
        }
        if u == v {
            return Err(ParseError::SelfLoop { line, node: u });
        }
        let tag = tag.unwrap_or(EdgeTag::Mesh);
        let e = Edge::new(u, v);
        let key = (e, if by_tag { Some(tag) } else { None });
        if !seen.insert(key) {
            return Err(ParseError::Duplicate { line, u, v });
        }
        out.push(TaggedEdge { u: e.u, v: e.v, tag });
    }
    Ok(out)
}

/// Writes `u v tag` lines in canonical order; returns the byte count.
pub fn write_graph<W: Write>(set: &TaggedEdgeSet, mut sink: W) -> io::Result<usize> {
    let mut buf = String::with_capacity(set.len() * 12);
    for e in set.edges() {
        use std::fmt::Write as _;
        let _ = writeln!(buf, "{} {} {}", e.u, e.v, e.tag.symbol());
    }
    sink.write_all(buf.as_bytes())?;
    Ok(buf.len())
}

/// Writes untagged `u v` lines; returns the byte count.
pub fn write_pairs<W: Write>(pairs: &[Edge], mut sink: W) -> io::Result<usize> {
    let mut buf = String::with_capacity(pairs.len() * 10);
    for e in pairs {
        use std::fmt::Write as _;
        let _ = writeln!(buf, "{} {}", e.u, e.v);
    }
    sink.write_all(buf.as_bytes())?;
    Ok(buf.len())
}

/// Writes one point per line with shortest round-trip float formatting.
pub fn write_point_cloud<W: Write>(points: &PointSet, mut sink: W) -> io::Result<usize> {
    let mut buf = String::new();
    for p in points.iter() {
        let row: Vec<String> = p.iter().map(|c| format!("{c:?}")).collect();
        buf.push_str(&row.join(" "));
        buf.push('\n');
    }
    sink.write_all(buf.as_bytes())?;
    Ok(buf.len())
}
