//! DIMACS CNF with `c var <idx> <role>` comments for variable roles.

use std::collections::BTreeMap;
use std::fmt::Write;

use avoidforge_core::cnf::{CnfFormula, VarRole};

use super::{num, FormatError};

fn role_tag(r: &VarRole) -> String {
    match *r {
        VarRole::X(i) => format!("x{i}"),
        VarRole::Hist(g) => format!("hist{g}"),
        VarRole::Q(r, i) => format!("q{r}.{i}"),
    }
}

fn parse_role(ln: usize, s: &str) -> Result<VarRole, FormatError> {
    if let Some(rest) = s.strip_prefix("hist") {
        return Ok(VarRole::Hist(num(ln, rest)?));
    }
    if let Some(rest) = s.strip_prefix('x') {
        return Ok(VarRole::X(num(ln, rest)?));
    }
    if let Some((r, i)) = s.strip_prefix('q').and_then(|rest| rest.split_once('.')) {
        return Ok(VarRole::Q(num(ln, r)?, num(ln, i)?));
    }
    Err(FormatError::syntax(ln, format!("unknown role {s:?}")))
}

pub fn emit_dimacs(f: &CnfFormula) -> String {
    let mut s = String::new();
    for (v, r) in f.roles() {
        let _ = writeln!(s, "c var {v} {}", role_tag(r));
    }
    let _ = writeln!(s, "p cnf {} {}", f.num_vars(), f.clauses().len());
    for c in f.clauses() {
        for l in c {
            let _ = write!(s, "{l} ");
        }
        s.push_str("0\n");
    }
    s
}

pub fn parse_dimacs(text: &str) -> Result<CnfFormula, FormatError> {
    let mut roles = BTreeMap::new();
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut cur: Vec<i32> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('c') {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() == 3 && toks[0] == "var" {
                roles.insert(num::<usize>(ln, toks[1])?, parse_role(ln, toks[2])?);
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix("p ") {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 3 || toks[0] != "cnf" || header.is_some() {
                return Err(FormatError::syntax(
                    ln,
                    "expected a single `p cnf <vars> <clauses>`",
                ));
            }
            header = Some((num(ln, toks[1])?, num(ln, toks[2])?));
            continue;
        }
        if header.is_none() {
            return Err(FormatError::syntax(ln, "clause before the `p cnf` header"));
        }
        for t in line.split_whitespace() {
            let l: i32 = num(ln, t)?;
            if l == 0 {
                clauses.push(std::mem::take(&mut cur));
            } else {
                cur.push(l);
            }
        }
    }
    let (nv, nc) = header.ok_or_else(|| FormatError::syntax(0, "missing `p cnf` header"))?;
    if !cur.is_empty() {
        return Err(FormatError::syntax(0, "last clause is not 0-terminated"));
    }
    if clauses.len() != nc {
        return Err(FormatError::invalid(
            0,
            format!("header declares {nc} clauses, found {}", clauses.len()),
        ));
    }
    CnfFormula::new(nv, clauses, roles).map_err(|e| FormatError::invalid(0, e))
}
