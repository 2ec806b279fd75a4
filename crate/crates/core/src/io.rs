//! DIMACS and edge-list graph files.
//!
//! DIMACS: `c` comment lines, one `p edge <n> <m>` header, `e <u> <v>` edge
//! lines with 1-based ids. Edge list: first line `<n>`, then one `u v` pair
//! per line with 0-based ids; `#` starts a comment.
//!
//! A vertex id is its label unless a `c label <id> <label>` (DIMACS) or
//! `# label <id> <label>` (edge list) line says otherwise. Writers emit those
//! lines only when the labels differ from the format's default numbering.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::graph::{Graph, GraphError, Label};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dimacs,
    EdgeList,
}

impl Format {
    fn base(self) -> usize {
        match self {
            Format::Dimacs => 1,
            Format::EdgeList => 0,
        }
    }

    fn comment(self) -> &'static str {
        match self {
            Format::Dimacs => "c",
            Format::EdgeList => "#",
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "dimacs" | "clq" | "col" => Ok(Format::Dimacs),
            "edgelist" | "edges" | "el" => Ok(Format::EdgeList),
            other => Err(format!("unknown graph format '{other}' (expected dimacs or edgelist)")),
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_num<T: FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, GraphError> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} '{tok}'")))
}

/// Parses graph text. Duplicate edges are accepted; self-loops are rejected.
pub fn parse_graph(text: &str, format: Format) -> Result<Graph, GraphError> {
    let base = format.base();
    let mut n: Option<usize> = None;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut relabel: Vec<(usize, Label, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix(format.comment()) {
            let rest: Vec<&str> = rest.split_whitespace().collect();
            if rest.first() == Some(&"label") {
                let id: usize = parse_num(rest.get(1).copied(), line_no, "vertex id")?;
                let label: Label = parse_num(rest.get(2).copied(), line_no, "label")?;
                relabel.push((id, label, line_no));
            }
            continue;
        }
        let mut toks = line.split_whitespace();
        let head = toks.next().unwrap();

        match format {
            Format::Dimacs => match head {
                "p" => {
                    if n.is_some() {
                        return Err(parse_err(line_no, "second problem line"));
                    }
                    let kind = toks.next();
                    if !matches!(kind, Some("edge") | Some("col")) {
                        return Err(parse_err(line_no, "expected 'p edge <n> <m>'"));
                    }
                    n = Some(parse_num(toks.next(), line_no, "vertex count")?);
                    let _m: usize = parse_num(toks.next(), line_no, "edge count")?;
                }
                "e" => {
                    let u = parse_num(toks.next(), line_no, "vertex id")?;
                    let v = parse_num(toks.next(), line_no, "vertex id")?;
                    if n.is_none() {
                        return Err(parse_err(line_no, "edge before problem line"));
                    }
                    edges.push((u, v, line_no));
                }
                other => return Err(parse_err(line_no, format!("unexpected line type '{other}'"))),
            },
            Format::EdgeList => {
                if n.is_none() {
                    n = Some(parse_num(Some(head), line_no, "vertex count")?);
                    if toks.next().is_some() {
                        return Err(parse_err(line_no, "first line must hold only the vertex count"));
                    }
                } else {
                    let u = parse_num(Some(head), line_no, "vertex id")?;
                    let v = parse_num(toks.next(), line_no, "vertex id")?;
                    if toks.next().is_some() {
                        return Err(parse_err(line_no, "expected 'u v'"));
                    }
                    edges.push((u, v, line_no));
                }
            }
        }
    }

    let n = n.ok_or_else(|| parse_err(text.lines().count().max(1), "missing vertex count"))?;
    let mut labels: Vec<Label> = (0..n).map(|k| (k + base) as Label).collect();
    for (id, label, line_no) in relabel {
        if id < base || id - base >= n {
            return Err(parse_err(line_no, format!("vertex id {id} out of range")));
        }
        labels[id - base] = label;
    }
    let mut g = Graph::with_labels(labels.iter().copied())?;
    // with_labels sorts; map file positions to sorted positions.
    let pos: Vec<usize> = labels.iter().map(|&l| g.index_of(l).unwrap()).collect();
    for (u, v, line_no) in edges {
        for id in [u, v] {
            if id < base || id - base >= n {
                return Err(parse_err(line_no, format!("vertex id {id} out of range 0..{n} (base {base})")));
            }
        }
        if u == v {
            return Err(parse_err(line_no, format!("self-loop on vertex {u}")));
        }
        g.set_edge(pos[u - base], pos[v - base]);
    }
    Ok(g)
}

/// Serializes a graph. `extra_comments` are emitted verbatim as comment
/// lines after the label lines (e.g. planted-clique metadata).
pub fn format_graph(g: &Graph, format: Format, extra_comments: &[String]) -> String {
    let base = format.base();
    let mut out = String::new();
    let default_labels = g
        .labels()
        .iter()
        .enumerate()
        .all(|(k, &l)| l as usize == k + base);
    match format {
        Format::Dimacs => {
            writeln!(out, "p edge {} {}", g.n(), g.edge_count()).unwrap();
        }
        Format::EdgeList => {
            writeln!(out, "{}", g.n()).unwrap();
        }
    }
    if !default_labels {
        for (k, &l) in g.labels().iter().enumerate() {
            writeln!(out, "{} label {} {}", format.comment(), k + base, l).unwrap();
        }
    }
    for c in extra_comments {
        writeln!(out, "{} {}", format.comment(), c).unwrap();
    }
    let n = g.n();
    for i in 0..n {
        for j in (i + 1)..n {
            if g.has_edge(i, j) {
                match format {
                    Format::Dimacs => writeln!(out, "e {} {}", i + base, j + base).unwrap(),
                    Format::EdgeList => writeln!(out, "{} {}", i + base, j + base).unwrap(),
                }
            }
        }
    }
    out
}

pub fn read_graph(path: impl AsRef<Path>, format: Format) -> Result<Graph, GraphError> {
    parse_graph(&fs::read_to_string(path)?, format)
}

pub fn write_graph(g: &Graph, path: impl AsRef<Path>, format: Format) -> Result<(), GraphError> {
    fs::write(path, format_graph(g, format, &[]))?;
    Ok(())
}

/// Labels listed on a `planted_mc` comment line, if any.
pub fn planted_clique(text: &str) -> Option<Vec<Label>> {
    text.lines().find_map(|line| {
        let rest = line.trim().strip_prefix('c').or_else(|| line.trim().strip_prefix('#'))?;
        let rest = rest.trim_start().strip_prefix("planted_mc")?;
        rest.split_whitespace().map(|t| t.parse().ok()).collect()
    })
}
