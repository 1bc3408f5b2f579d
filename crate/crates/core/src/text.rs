//! Plain-text graph format.
//!
//! ```text
//! # comments and blank lines are ignored
//! 3 2 undirected      n, number of edge lines, and directed or undirected
//! 0 1
//! 1 2
//! c 0 5               optional colors, either for every vertex or for none
//! c 1 5
//! c 2 7
//! ```
//!
//! Undirected edges are listed once. The kind word may be omitted and
//! defaults to undirected.

use std::fmt::Write as _;

use crate::error::GraphError;
use crate::graph::{Graph, Vertex};

fn err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse { line, msg: msg.into() }
}

fn number<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, GraphError> {
    let tok = tok.ok_or_else(|| err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| err(line, format!("bad {what} '{tok}'")))
}

pub fn parse(input: &str) -> Result<Graph, GraphError> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    let mut toks = header.split_whitespace();
    let n: usize = number(toks.next(), hl, "vertex count")?;
    let m: usize = number(toks.next(), hl, "edge count")?;
    let undirected = match toks.next() {
        None | Some("undirected") => true,
        Some("directed") => false,
        Some(other) => return Err(err(hl, format!("unknown graph kind '{other}'"))),
    };
    if toks.next().is_some() {
        return Err(err(hl, "trailing tokens in header"));
    }
    if n > u32::MAX as usize {
        return Err(GraphError::TooLarge(n));
    }
    let mut arcs = Vec::with_capacity(m.min(1 << 24));
    let mut seen = std::collections::HashSet::new();
    let mut colors: Option<Vec<Option<u32>>> = None;
    let mut last = hl;
    for (ln, line) in lines {
        last = ln;
        let mut toks = line.split_whitespace();
        let first = toks.next().expect("line is not blank");
        if first == "c" {
            let u: Vertex = number(toks.next(), ln, "vertex")?;
            let k: u32 = number(toks.next(), ln, "color")?;
            let slots = colors.get_or_insert_with(|| vec![None; n]);
            let slot = slots.get_mut(u as usize).ok_or_else(|| err(ln, format!("vertex {u} outside [0, {n})")))?;
            if slot.replace(k).is_some() {
                return Err(err(ln, format!("vertex {u} colored twice")));
            }
        } else {
            if colors.is_some() {
                return Err(err(ln, "edge after color lines"));
            }
            let u: Vertex = number(Some(first), ln, "vertex")?;
            let v: Vertex = number(toks.next(), ln, "vertex")?;
            if u as usize >= n || v as usize >= n {
                return Err(err(ln, format!("edge ({u}, {v}) has an endpoint outside [0, {n})")));
            }
            if u == v {
                return Err(err(ln, format!("self-loop at vertex {u}")));
            }
            let key = if undirected { (u.min(v), u.max(v)) } else { (u, v) };
            if !seen.insert(key) {
                return Err(err(ln, format!("duplicate edge ({u}, {v})")));
            }
            arcs.push((u, v));
        }
        if toks.next().is_some() {
            return Err(err(ln, "trailing tokens"));
        }
    }
    if arcs.len() != m {
        return Err(err(last, format!("header promises {m} edges, found {}", arcs.len())));
    }
    let colors = match colors {
        None => None,
        Some(c) => Some(
            c.iter()
                .enumerate()
                .map(|(v, k)| k.ok_or_else(|| err(last, format!("vertex {v} has no color"))))
                .collect::<Result<Vec<u32>, _>>()?,
        ),
    };
    Graph::build(n, &arcs, colors, undirected)
}

/// Writes `g` in the text format; symmetric graphs are written undirected.
pub fn write(g: &Graph) -> String {
    let undirected = g.is_symmetric();
    let arcs: Vec<(Vertex, Vertex)> = g.sorted_arcs().into_iter().filter(|&(u, v)| !undirected || u < v).collect();
    let mut out = String::new();
    let _ = writeln!(out, "{} {} {}", g.n(), arcs.len(), if undirected { "undirected" } else { "directed" });
    for (u, v) in arcs {
        let _ = writeln!(out, "{u} {v}");
    }
    if let Some(c) = g.colors() {
        for (v, k) in c.iter().enumerate() {
            let _ = writeln!(out, "c {v} {k}");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn round_trips() {
        let g = corpus::maximal_planar(60, 1).with_colors(Some(corpus::random_colors(60, 3, 1)));
        assert_eq!(parse(&write(&g)).unwrap(), g);
        let d = corpus::random_orientation(&corpus::grid(5, 5), 2);
        assert_eq!(parse(&write(&d)).unwrap(), d);
        assert_eq!(parse(&write(&Graph::empty(0))).unwrap(), Graph::empty(0));
    }

    #[test]
    fn comments_and_default_kind() {
        let g = parse("# path\n3 2\n0 1 # first\n\n1 2\n").unwrap();
        assert!(g.is_symmetric());
        assert_eq!(g.arc_count(), 4);
    }

    #[test]
    fn errors_name_the_line() {
        let line = |s: &str| match parse(s) {
            Err(GraphError::Parse { line, .. }) => line,
            other => panic!("expected a parse error, got {other:?}"),
        };
        assert_eq!(line("3 2\n0 1\n1 x\n"), 3);
        assert_eq!(line("3 1\n0 5\n"), 2);
        assert_eq!(line("3 1 sideways\n0 1\n"), 1);
        assert_eq!(line("3 1\n0 1\nc 0 1\n"), 3);
        assert_eq!(line("\n\n2 1\n1 1\n"), 4);
        assert_eq!(line("3 2\n0 1\n"), 2);
        assert_eq!(line("3 2\n0 1\n1 0\n"), 3);
    }
}
