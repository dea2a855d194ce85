//! Plain-text edge lists:
//!
//! ```text
//! n=3
//! 1 2
//! 2 3
//! 3 1
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Ids are 1-based.

use std::fmt::Write as _;

use feedgame_core::Digraph;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

fn err(line: usize, reason: impl Into<String>) -> ParseError {
    ParseError {
        line,
        reason: reason.into(),
    }
}

pub fn parse(text: &str) -> Result<Digraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing `n=<count>` header"))?;
    let n: usize = header
        .strip_prefix("n=")
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n| n > 0)
        .ok_or_else(|| err(hline, format!("expected `n=<count>` header, got `{header}`")))?;

    let mut edges = std::collections::BTreeSet::new();
    for (line, content) in lines {
        let fields: Vec<&str> = content.split_whitespace().collect();
        let [u, v] = fields[..] else {
            return Err(err(line, format!("expected `u v`, got `{content}`")));
        };
        let parse_id = |s: &str| -> Result<usize, ParseError> {
            let id: usize = s
                .parse()
                .map_err(|_| err(line, format!("`{s}` is not a node id")))?;
            if id == 0 || id > n {
                return Err(err(line, format!("node {id} out of range 1..={n}")));
            }
            Ok(id - 1)
        };
        let (u, v) = (parse_id(u)?, parse_id(v)?);
        if u == v {
            return Err(err(line, format!("self-loop on node {}", u + 1)));
        }
        if !edges.insert((u, v)) {
            return Err(err(line, format!("duplicate edge {} {}", u + 1, v + 1)));
        }
    }
    Ok(Digraph::new(n, edges).expect("edges validated above"))
}

/// Canonical form: header, then edges sorted by `(from, to)`, `\n`-terminated.
pub fn format(g: &Digraph) -> String {
    let mut out = format!("n={}\n", g.node_count());
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", u + 1, v + 1).unwrap();
    }
    out
}
