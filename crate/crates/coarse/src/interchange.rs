//! Plain-text graph interchange.
//!
//! ```text
//! format hhs-graph 1
//! vertices 3
//! a
//! b
//! c
//! edges 2
//! 0 1
//! 1 2
//! metric none
//! ```
//!
//! Edges are written with the smaller index first, sorted.  When an exact
//! metric is present the last section is `metric` followed by one row of
//! space-separated distances per vertex.  Writing a parsed document yields
//! the same bytes.

use std::fmt::Write as _;

use crate::error::{CoarseError, Result};
use crate::graph::FiniteGraph;

const HEADER: &str = "format hhs-graph 1";

pub fn write_graph(g: &FiniteGraph) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    let _ = writeln!(out, "vertices {}", g.len());
    for l in g.labels() {
        out.push_str(l);
        out.push('\n');
    }
    let edges = g.edge_list();
    let _ = writeln!(out, "edges {}", edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
    match g.exact_metric() {
        None => out.push_str("metric none\n"),
        Some(m) => {
            out.push_str("metric\n");
            for row in m.chunks(g.len()) {
                let cells: Vec<String> = row.iter().map(u32::to_string).collect();
                out.push_str(&cells.join(" "));
                out.push('\n');
            }
        }
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn next(&mut self, what: &str) -> Result<&'a str> {
        match self.inner.next() {
            Some((i, l)) => {
                self.last = i + 1;
                Ok(l)
            }
            None => Err(CoarseError::Parse { line: self.last + 1, message: format!("unexpected end of input, expected {what}") }),
        }
    }

    fn err(&self, message: impl Into<String>) -> CoarseError {
        CoarseError::Parse { line: self.last, message: message.into() }
    }
}

fn count_after(lines: &mut Lines<'_>, keyword: &str) -> Result<usize> {
    let l = lines.next(keyword)?;
    let rest = l.strip_prefix(keyword).and_then(|r| r.strip_prefix(' ')).ok_or_else(|| lines.err(format!("expected `{keyword} <count>`")))?;
    rest.parse().map_err(|_| lines.err(format!("bad count `{rest}`")))
}

pub fn read_graph(text: &str) -> Result<FiniteGraph> {
    let mut lines = Lines { inner: text.lines().enumerate(), last: 0 };
    if lines.next("header")? != HEADER {
        return Err(lines.err(format!("expected `{HEADER}`")));
    }
    let n = count_after(&mut lines, "vertices")?;
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        labels.push(lines.next("vertex label")?.to_string());
    }
    let m = count_after(&mut lines, "edges")?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let l = lines.next("edge")?;
        let mut parts = l.split(' ');
        let parse = |s: Option<&str>| -> Option<usize> { s?.parse().ok() };
        match (parse(parts.next()), parse(parts.next()), parts.next()) {
            (Some(u), Some(v), None) => edges.push((u, v)),
            _ => return Err(lines.err(format!("bad edge `{l}`"))),
        }
    }
    let metric_line = lines.next("metric section")?;
    let metric = match metric_line {
        "metric none" => None,
        "metric" => {
            let mut table = Vec::with_capacity(n * n);
            for _ in 0..n {
                let l = lines.next("metric row")?;
                let row: std::result::Result<Vec<u32>, _> = l.split(' ').map(str::parse).collect();
                let row = row.map_err(|_| lines.err(format!("bad metric row `{l}`")))?;
                if row.len() != n {
                    return Err(lines.err(format!("metric row has {} entries, expected {n}", row.len())));
                }
                table.extend(row);
            }
            Some(table)
        }
        other => return Err(lines.err(format!("expected `metric` or `metric none`, found `{other}`"))),
    };
    if let Ok(extra) = lines.next("") {
        return Err(lines.err(format!("trailing content `{extra}`")));
    }
    let g = FiniteGraph::new(labels, &edges)?;
    match metric {
        Some(t) => g.with_exact_metric(t),
        None => Ok(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_without_metric() {
        let g = FiniteGraph::cycle(5).unwrap();
        let text = write_graph(&g);
        let back = read_graph(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(write_graph(&back), text);
    }

    #[test]
    fn round_trip_with_metric() {
        let g = FiniteGraph::path(3).unwrap().with_exact_metric(vec![0, 1, 2, 1, 0, 1, 2, 1, 0]).unwrap();
        let text = write_graph(&g);
        assert!(text.ends_with("metric\n0 1 2\n1 0 1\n2 1 0\n"));
        assert_eq!(write_graph(&read_graph(&text).unwrap()), text);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "format hhs-graph 1\nvertices 2\na\nb\nedges 1\n0 x\nmetric none\n";
        match read_graph(bad) {
            Err(CoarseError::Parse { line, .. }) => assert_eq!(line, 6),
            other => panic!("unexpected {other:?}"),
        }
    }
}
