//! `Res[xor]` proofs and linear equations.
//!
//! ```text
//! resxor for <cnf-name>
//! 0 AXIOM 0 : (x1=0)
//! 1 AXIOM 1 : (x1=1)
//! 2 RESOLVE 0 1 ON x1 : ()
//! ```
//!
//! Line and axiom indices are 0-based. Weakening lines read `<idx> WEAKEN <j> : <clause>`.

use std::fmt::Write;

use avoidforge_core::parred::{
    normalize_form, Equation, Form, FormDisplay, LinearClause, ProofLine, ResXorProof, Rule,
};

use super::{content_lines, num, FormatError};

/// `x1+x3`, or `0` for the empty form.
pub fn parse_form(ln: usize, s: &str) -> Result<Form, FormatError> {
    let s = s.trim();
    if s == "0" {
        return Ok(Vec::new());
    }
    let mut vars = Vec::new();
    for t in s.split('+') {
        let v: usize = t
            .trim()
            .strip_prefix('x')
            .ok_or_else(|| FormatError::syntax(ln, format!("bad variable {t:?}")))
            .and_then(|d| num(ln, d))?;
        if v == 0 {
            return Err(FormatError::syntax(ln, "variables are 1-based"));
        }
        vars.push(v);
    }
    Ok(normalize_form(vars))
}

/// `x1+x3=0`.
pub fn parse_equation(ln: usize, s: &str) -> Result<Equation, FormatError> {
    let (f, b) = s
        .split_once('=')
        .ok_or_else(|| FormatError::syntax(ln, format!("expected <form>=<bit>, found {s:?}")))?;
    let b = match b.trim() {
        "0" => false,
        "1" => true,
        other => {
            return Err(FormatError::syntax(
                ln,
                format!("bad right-hand side {other:?}"),
            ))
        }
    };
    Ok((parse_form(ln, f)?, b))
}

/// `(x1+x3=0 | x2=1)`, `()` for the empty clause.
pub fn parse_clause(ln: usize, s: &str) -> Result<LinearClause, FormatError> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| FormatError::syntax(ln, format!("clause must be parenthesized: {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(LinearClause::empty());
    }
    let lits = inner
        .split('|')
        .map(|l| parse_equation(ln, l))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LinearClause::new(lits))
}

pub fn emit_proof(name: &str, p: &ResXorProof) -> String {
    let mut s = format!("resxor for {name}\n");
    for (i, line) in p.lines.iter().enumerate() {
        let _ = match &line.rule {
            Rule::Axiom(a) => writeln!(s, "{i} AXIOM {a} : {}", line.clause),
            Rule::Weaken(j) => writeln!(s, "{i} WEAKEN {j} : {}", line.clause),
            Rule::Resolve(j, k, f) => writeln!(
                s,
                "{i} RESOLVE {j} {k} ON {} : {}",
                FormDisplay(f),
                line.clause
            ),
        };
    }
    s
}

/// The CNF name from the header and the proof lines.
pub fn parse_proof(text: &str) -> Result<(String, ResXorProof), FormatError> {
    let mut lines = content_lines(text);
    let (ln, header) = lines
        .next()
        .ok_or_else(|| FormatError::syntax(0, "empty proof file"))?;
    let name = header
        .strip_prefix("resxor for ")
        .ok_or_else(|| FormatError::syntax(ln, "expected `resxor for <cnf-name>`"))?
        .trim()
        .to_string();
    let mut proof = ResXorProof::new();
    for (ln, line) in lines {
        let (head, clause) = line
            .split_once(':')
            .ok_or_else(|| FormatError::syntax(ln, "missing ` : <clause>`"))?;
        let toks: Vec<&str> = head.split_whitespace().collect();
        let idx: usize = num(ln, toks.first().copied().unwrap_or(""))?;
        if idx != proof.len() {
            return Err(FormatError::invalid(
                ln,
                format!("line index {idx}, expected {}", proof.len()),
            ));
        }
        let rule = match &toks[1..] {
            ["AXIOM", i] => Rule::Axiom(num(ln, i)?),
            ["WEAKEN", j] => Rule::Weaken(num(ln, j)?),
            ["RESOLVE", j, k, "ON", f] => {
                Rule::Resolve(num(ln, j)?, num(ln, k)?, parse_form(ln, f)?)
            }
            _ => return Err(FormatError::syntax(ln, format!("unknown rule in {head:?}"))),
        };
        proof.lines.push(ProofLine {
            clause: parse_clause(ln, clause)?,
            rule,
        });
    }
    Ok((name, proof))
}

/// One `form=bit` equation per line.
pub fn parse_equations(text: &str) -> Result<Vec<Equation>, FormatError> {
    content_lines(text)
        .map(|(ln, l)| parse_equation(ln, l))
        .collect()
}

pub fn emit_equations(eqs: &[Equation]) -> String {
    eqs.iter()
        .map(|(f, b)| format!("{}={}\n", FormDisplay(f), *b as u8))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use avoidforge_core::parred::refute_linear_system;

    #[test]
    fn roundtrip() {
        let (_, p) =
            refute_linear_system(&[(vec![1, 2], false), (vec![2], true), (vec![1], false)])
                .unwrap();
        let t = emit_proof("eqs", &p);
        assert_eq!(parse_proof(&t).unwrap(), ("eqs".to_string(), p));
    }

    #[test]
    fn clause_syntax() {
        let c = parse_clause(1, "(x1+x3=0 | x2=1)").unwrap();
        assert_eq!(c.to_string(), "(x1+x3=0 | x2=1)");
        assert!(parse_clause(1, "()").unwrap().is_empty());
        assert!(parse_clause(1, "x1=0").is_err());
        assert_eq!(
            parse_equations("x2+x1=1\n0=0\n").unwrap(),
            vec![(vec![1, 2], true), (vec![], false)]
        );
    }
}
