//! Plain-text digraph format.
//!
//! ```text
//! digraph <n> <m>
//! <tail> <head>          (m lines)
//! label <index> <string> (optional, n lines)
//! ```
//!
//! Lines starting with `#` are comments. Output is UTF-8 with LF endings.

use std::fmt::Write as _;

use super::Digraph;
use crate::error::{Error, Result};

pub fn to_text(g: &Digraph) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {}", g.order(), g.size()).unwrap();
    for &(u, v) in g.arcs() {
        writeln!(out, "{u} {v}").unwrap();
    }
    if let Some(labels) = g.labels() {
        for (i, label) in labels.iter().enumerate() {
            writeln!(out, "label {i} {label}").unwrap();
        }
    }
    out
}

pub fn parse_text(input: &str) -> Result<Digraph> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        });

    let (lineno, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing `digraph <n> <m>` header".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (n, m) = match fields.as_slice() {
        ["digraph", n, m] => (number(n, lineno)?, number(m, lineno)?),
        _ => {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected `digraph <n> <m>`, found {header:?}"),
            })
        }
    };

    let mut arcs = Vec::with_capacity(m);
    for _ in 0..m {
        let (lineno, line) = lines.next().ok_or_else(|| Error::Parse {
            line: lineno,
            message: format!("expected {m} arc lines, found {}", arcs.len()),
        })?;
        let mut it = line.split_whitespace();
        let (Some(t), Some(h), None) = (it.next(), it.next(), it.next()) else {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected `<tail> <head>`, found {line:?}"),
            });
        };
        arcs.push((number(t, lineno)?, number(h, lineno)?));
    }

    let mut labels: Vec<Option<String>> = Vec::new();
    let mut label_count = 0;
    for (lineno, line) in lines {
        let rest = line.strip_prefix("label ").ok_or_else(|| Error::Parse {
            line: lineno,
            message: format!("unexpected line {line:?}"),
        })?;
        let (index, label) = rest.split_once(' ').ok_or_else(|| Error::Parse {
            line: lineno,
            message: "expected `label <index> <string>`".into(),
        })?;
        let index = number(index, lineno)?;
        if index >= n {
            return Err(Error::IndexOutOfRange { index, n });
        }
        if labels.is_empty() {
            labels = vec![None; n];
        }
        if labels[index].replace(label.to_string()).is_some() {
            return Err(Error::Parse {
                line: lineno,
                message: format!("vertex {index} labelled twice"),
            });
        }
        label_count += 1;
    }
    let labels = if label_count == 0 {
        None
    } else if label_count != n {
        return Err(Error::LabelCountMismatch {
            expected: n,
            got: label_count,
        });
    } else {
        Some(labels.into_iter().map(Option::unwrap).collect())
    };
    Digraph::new(n, arcs, labels)
}

fn number(s: &str, line: usize) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse {
        line,
        message: format!("expected a non-negative integer, found {s:?}"),
    })
}
