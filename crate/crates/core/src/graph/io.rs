//! Plain-text graph format.
//!
//! ```text
//! # comment
//! graph 4
//! 0 1
//! 1 2
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use super::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}

/// Non-empty, non-comment lines with their 1-based line numbers.
pub(crate) fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_usize(line: usize, tok: &str) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| ParseError::new(line, format!("expected a non-negative integer, found `{tok}`")))
}

pub fn read_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = data_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| ParseError::new(0, "missing `graph <n>` header"))?;
    let n = parse_header(hl, header)?;
    let mut edges = Vec::new();
    for (ln, l) in lines {
        edges.push(parse_edge(ln, l, n)?);
    }
    Graph::from_edges(n, &edges).map_err(|e| ParseError::new(0, e.to_string()))
}

pub(crate) fn parse_header(line: usize, header: &str) -> Result<usize, ParseError> {
    match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["graph", n] => parse_usize(line, n),
        _ => Err(ParseError::new(line, "expected `graph <n>`")),
    }
}

pub(crate) fn parse_edge(line: usize, l: &str, n: usize) -> Result<(usize, usize), ParseError> {
    let toks: Vec<_> = l.split_whitespace().collect();
    let [a, b] = toks.as_slice() else {
        return Err(ParseError::new(line, "expected `<u> <v>`"));
    };
    let (u, v) = (parse_usize(line, a)?, parse_usize(line, b)?);
    if u >= n || v >= n {
        return Err(ParseError::new(line, GraphError::VertexOutOfRange { u, v, n }.to_string()));
    }
    if u == v {
        return Err(ParseError::new(line, GraphError::SelfLoop(u).to_string()));
    }
    Ok((u, v))
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "graph {}", g.n()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
