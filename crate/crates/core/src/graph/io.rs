use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{CliqueCover, SoGraph};
use crate::error::{Error, Result};

/// Reads an edge list: a `K M` header, then `M` lines `u v` (0-based).
/// Lines starting with `#` and blank lines are skipped.
pub fn load_edge_list(path: impl AsRef<Path>) -> Result<SoGraph> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_edge_list(&text, &path.display().to_string())
}

/// Parses edge-list text; `origin` labels parse errors.
pub fn parse_edge_list(text: &str, origin: &str) -> Result<SoGraph> {
    let err = |line: usize, message: String| Error::Parse {
        path: origin.to_string(),
        line,
        message,
    };
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (a, b) = parse_pair(line).map_err(|m| err(line_no, m))?;
        match header {
            None => {
                if a == 0 {
                    return Err(err(line_no, "arm count must be at least 1".into()));
                }
                header = Some((a, b));
            }
            Some((k, m)) => {
                if edges.len() == m {
                    return Err(err(
                        line_no,
                        format!("header declares {m} edges, found more"),
                    ));
                }
                if a >= k || b >= k {
                    return Err(err(line_no, format!("endpoint outside [0, {k})")));
                }
                if a == b {
                    return Err(err(line_no, format!("self-loop on arm {a}")));
                }
                edges.push((a, b));
            }
        }
    }

    let (k, m) = header.ok_or_else(|| err(last_line.max(1), "missing `K M` header".into()))?;
    if edges.len() != m {
        return Err(err(
            last_line,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    SoGraph::new(k, &edges)
}

fn parse_pair(line: &str) -> std::result::Result<(usize, usize), String> {
    let mut fields = line.split_whitespace();
    let mut next = || -> std::result::Result<usize, String> {
        let f = fields.next().ok_or("expected two integers")?;
        f.parse::<usize>()
            .map_err(|_| format!("`{f}` is not a nonnegative integer"))
    };
    let a = next()?;
    let b = next()?;
    if fields.next().is_some() {
        return Err("expected exactly two integers".into());
    }
    Ok((a, b))
}

pub fn write_edge_list(graph: &SoGraph, path: impl AsRef<Path>) -> Result<()> {
    let edges = graph.edges();
    let mut out = format!("{} {}\n", graph.num_arms(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
    let path = path.as_ref();
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// One line per clique, members space-separated, in selection order.
pub fn format_cover(cover: &CliqueCover) -> String {
    let mut out = String::new();
    for c in cover.cliques() {
        let line: Vec<String> = c.members().iter().map(usize::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_cover(cover: &CliqueCover, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, format_cover(cover)).map_err(|e| Error::io(path, e))
}
