//! `hypergraph n=<n> d=<d>` followed by one edge per line.

use std::fmt::Write;

use avoidforge_core::gens::Hypergraph;

use super::{content_lines, kv, num, FormatError};

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph, FormatError> {
    let mut lines = content_lines(text);
    let (ln, header) = lines
        .next()
        .ok_or_else(|| FormatError::syntax(0, "empty hypergraph file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != "hypergraph" {
        return Err(FormatError::syntax(ln, "expected `hypergraph n=<n> d=<d>`"));
    }
    let n: usize = num(ln, kv(ln, toks[1], "n")?)?;
    let d: usize = num(ln, kv(ln, toks[2], "d")?)?;
    let mut edges = Vec::new();
    for (ln, line) in lines {
        let e = line
            .split_whitespace()
            .map(|t| num(ln, t))
            .collect::<Result<Vec<usize>, _>>()?;
        if e.len() != d {
            return Err(FormatError::invalid(
                ln,
                format!("edge has {} vertices, expected {d}", e.len()),
            ));
        }
        edges.push(e);
    }
    Hypergraph::new(n, d, edges).map_err(|e| FormatError::invalid(0, e))
}

pub fn emit_hypergraph(g: &Hypergraph) -> String {
    let mut s = format!("hypergraph n={} d={}\n", g.n(), g.d());
    for e in g.edges() {
        let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(s, "{}", line.join(" "));
    }
    s
}
