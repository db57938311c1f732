use super::{Graph, MAX_ORDER};
use crate::error::{Error, Result};

/// Parses an edge-list document.
///
/// One edge per line as two whitespace-separated positive labels; `#` starts
/// a comment; blank lines are ignored. The vertex set is `1..=max label`.
pub fn graph_from_edge_list(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut max_label = 0usize;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(parse_err(line, format!("expected two labels, found {}", tokens.len())));
        }
        let mut ends = [0usize; 2];
        for (slot, tok) in ends.iter_mut().zip(&tokens) {
            let label: usize = tok
                .parse()
                .map_err(|_| parse_err(line, format!("malformed label {tok:?}")))?;
            if label == 0 {
                return Err(parse_err(line, "labels start at 1".to_string()));
            }
            if label > MAX_ORDER {
                return Err(parse_err(line, format!("label {label} exceeds {MAX_ORDER}")));
            }
            *slot = label;
        }
        if ends[0] == ends[1] {
            return Err(parse_err(line, format!("loop at vertex {}", ends[0])));
        }
        max_label = max_label.max(ends[0]).max(ends[1]);
        edges.push((ends[0] - 1, ends[1] - 1));
    }
    if edges.is_empty() {
        return Err(parse_err(0, "no edges in document".to_string()));
    }
    Graph::from_edges(max_label, &edges)
}

fn parse_err(line: usize, message: String) -> Error {
    Error::Parse { line, message }
}
