//! Text formats.
//!
//! Graph: `p <n> <m>` then `m` lines `e <u> <v>`, vertices 0-based.
//! Coloring: `k <k>` then one line `v <vertex> <color>` per vertex.
//! Roles: one line `r <vertex> <role> [element]` per vertex.
//! In all three, lines starting with `c` are comments and blank lines are
//! ignored. Parse errors carry 1-based line and column numbers.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::reduction::{ReductionInstance, Role};
use crate::verify::Coloring;

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// Non-comment lines split into tokens with positions.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<Token<'_>>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let mut tokens = Vec::new();
        let mut rest = line;
        let mut col = 1;
        while !rest.is_empty() {
            let skip = rest.len() - rest.trim_start().len();
            col += rest[..skip].chars().count();
            rest = &rest[skip..];
            if rest.is_empty() {
                break;
            }
            let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
            tokens.push(Token { text: &rest[..end], line: i + 1, column: col });
            col += rest[..end].chars().count();
            rest = &rest[end..];
        }
        match tokens.first() {
            Some(t) if !t.text.starts_with('c') => Some((i + 1, tokens)),
            _ => None,
        }
    })
}

fn number(t: &Token) -> Result<usize> {
    t.text
        .parse()
        .map_err(|_| parse_error(t.line, t.column, format!("expected a nonnegative integer, found `{}`", t.text)))
}

fn expect_fields(line: usize, tokens: &[Token], tag: &str, count: usize) -> Result<()> {
    let head = &tokens[0];
    if head.text != tag {
        return Err(parse_error(line, head.column, format!("expected `{tag}`, found `{}`", head.text)));
    }
    if tokens.len() != count + 1 {
        let col = tokens.get(count + 1).map_or(head.column, |t| t.column);
        return Err(parse_error(line, col, format!("`{tag}` takes {count} fields, found {}", tokens.len() - 1)));
    }
    Ok(())
}

pub fn read_graph(text: &str) -> Result<Graph> {
    let mut recs = records(text);
    let (line, header) = recs.next().ok_or_else(|| parse_error(1, 1, "missing `p <n> <m>` header"))?;
    expect_fields(line, &header, "p", 2)?;
    let n = number(&header[1])?;
    let m = number(&header[2])?;
    let mut pairs = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::new();
    let mut last_line = line;
    for (line, tokens) in recs {
        last_line = line;
        expect_fields(line, &tokens, "e", 2)?;
        let u = number(&tokens[1])?;
        let v = number(&tokens[2])?;
        for (x, t) in [(u, &tokens[1]), (v, &tokens[2])] {
            if x >= n {
                return Err(parse_error(line, t.column, format!("vertex {x} out of range 0..{n}")));
            }
        }
        if u == v {
            return Err(parse_error(line, tokens[1].column, format!("self-loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(parse_error(line, tokens[0].column, format!("duplicate edge {u} {v}")));
        }
        pairs.push((u, v));
    }
    if pairs.len() != m {
        return Err(parse_error(last_line, 1, format!("header declares {m} edges, found {}", pairs.len())));
    }
    Graph::from_edges(n, pairs)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.order(), g.size());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}

/// Reads a coloring; every vertex `0..n-1` must appear exactly once, where
/// `n` is the number of `v` lines.
pub fn read_coloring(text: &str) -> Result<Coloring> {
    let mut recs = records(text);
    let (line, header) = recs.next().ok_or_else(|| parse_error(1, 1, "missing `k <k>` header"))?;
    expect_fields(line, &header, "k", 1)?;
    let k = number(&header[1])?;
    if k < 2 {
        return Err(parse_error(line, header[1].column, format!("color count must be at least 2, got {k}")));
    }
    let mut entries = Vec::new();
    for (line, tokens) in recs {
        expect_fields(line, &tokens, "v", 2)?;
        let v = number(&tokens[1])?;
        let c = number(&tokens[2])?;
        if c == 0 || c > k {
            return Err(parse_error(line, tokens[2].column, format!("color {c} outside 1..={k}")));
        }
        entries.push((line, tokens[1].column, v, c));
    }
    let n = entries.len();
    let mut colors = vec![0; n];
    for (line, col, v, c) in entries {
        if v >= n {
            return Err(parse_error(line, col, format!("vertex {v} out of range 0..{n}")));
        }
        if colors[v] != 0 {
            return Err(parse_error(line, col, format!("vertex {v} colored twice")));
        }
        colors[v] = c;
    }
    Coloring::new(k, colors)
}

pub fn write_coloring(c: &Coloring) -> String {
    let mut out = format!("k {}\n", c.k());
    for (v, col) in c.colors().iter().enumerate() {
        let _ = writeln!(out, "v {v} {col}");
    }
    out
}

/// Role labels with the element of the containing house, if any.
pub fn read_roles(text: &str) -> Result<Vec<(Role, Option<u64>)>> {
    let mut entries = Vec::new();
    for (line, tokens) in records(text) {
        let head = &tokens[0];
        if head.text != "r" {
            return Err(parse_error(line, head.column, format!("expected `r`, found `{}`", head.text)));
        }
        if !(3..=4).contains(&tokens.len()) {
            return Err(parse_error(line, head.column, "expected `r <vertex> <role> [element]`"));
        }
        let v = number(&tokens[1])?;
        let role: Role = tokens[2]
            .text
            .parse()
            .map_err(|_| parse_error(line, tokens[2].column, format!("unknown role `{}`", tokens[2].text)))?;
        let element = match tokens.get(3) {
            Some(t) => Some(number(t)? as u64),
            None => None,
        };
        entries.push((line, tokens[1].column, v, role, element));
    }
    let n = entries.len();
    let mut roles = vec![None; n];
    for (line, col, v, role, element) in entries {
        if v >= n {
            return Err(parse_error(line, col, format!("vertex {v} out of range 0..{n}")));
        }
        if roles[v].is_some() {
            return Err(parse_error(line, col, format!("vertex {v} labeled twice")));
        }
        roles[v] = Some((role, element));
    }
    Ok(roles.into_iter().map(|r| r.expect("every slot filled")).collect())
}

pub fn write_roles(r: &ReductionInstance) -> String {
    let mut element = vec![None; r.graph.order()];
    for h in &r.houses {
        for &v in h.bases.iter().chain(&h.supports).chain(&h.indices) {
            element[v] = Some(h.element);
        }
    }
    let mut out = String::new();
    for (v, role) in r.roles.iter().enumerate() {
        match element[v] {
            Some(a) => {
                let _ = writeln!(out, "r {v} {} {a}", role.name());
            }
            None => {
                let _ = writeln!(out, "r {v} {}", role.name());
            }
        }
    }
    out
}
