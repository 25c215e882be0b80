//! ```text
//! reduction src=<n> dst=<m>
//! map y1 = x1+x3
//! map y2 = 0
//! just 0 AXIOM 4
//! just 1 TAUT
//! just 2 XORAX 0 5
//! ```
//!
//! Every destination variable needs a `map` line and every destination clause (0-based) a
//! `just` line.

use std::fmt::Write;

use avoidforge_core::parred::{FormDisplay, Justification, ParityReduction};

use super::proof::parse_form;
use super::{content_lines, kv, num, FormatError};

pub fn emit_reduction(r: &ParityReduction) -> String {
    let mut s = format!("reduction src={} dst={}\n", r.src_vars, r.dst_vars);
    for (i, row) in r.rows.iter().enumerate() {
        let _ = writeln!(s, "map y{} = {}", i + 1, FormDisplay(row));
    }
    for (k, j) in r.justifications.iter().enumerate() {
        let _ = match j {
            Justification::Taut => writeln!(s, "just {k} TAUT"),
            Justification::Axiom(i) => writeln!(s, "just {k} AXIOM {i}"),
            Justification::XorAx(list) => {
                let l: Vec<String> = list.iter().map(|i| i.to_string()).collect();
                writeln!(s, "just {k} XORAX {}", l.join(" "))
            }
        };
    }
    s
}

pub fn parse_reduction(text: &str) -> Result<ParityReduction, FormatError> {
    let mut lines = content_lines(text);
    let (ln, header) = lines
        .next()
        .ok_or_else(|| FormatError::syntax(0, "empty reduction file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != "reduction" {
        return Err(FormatError::syntax(
            ln,
            "expected `reduction src=<n> dst=<m>`",
        ));
    }
    let src_vars: usize = num(ln, kv(ln, toks[1], "src")?)?;
    let dst_vars: usize = num(ln, kv(ln, toks[2], "dst")?)?;
    let mut rows = vec![None; dst_vars];
    let mut justs: Vec<Option<Justification>> = Vec::new();
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["map", y, "=", rest @ ..] if !rest.is_empty() => {
                let i: usize = y
                    .strip_prefix('y')
                    .ok_or_else(|| FormatError::syntax(ln, "expected y<i>"))
                    .and_then(|d| num(ln, d))?;
                let slot = i
                    .checked_sub(1)
                    .and_then(|i| rows.get_mut(i))
                    .ok_or_else(|| FormatError::invalid(ln, format!("y{i} out of range")))?;
                if slot.is_some() {
                    return Err(FormatError::invalid(ln, format!("y{i} mapped twice")));
                }
                *slot = Some(parse_form(ln, &rest.join(""))?);
            }
            ["just", k, rule @ ..] => {
                let k: usize = num(ln, k)?;
                let j = match rule {
                    ["TAUT"] => Justification::Taut,
                    ["AXIOM", i] => Justification::Axiom(num(ln, i)?),
                    ["XORAX", list @ ..] => Justification::XorAx(
                        list.iter().map(|t| num(ln, t)).collect::<Result<_, _>>()?,
                    ),
                    _ => {
                        return Err(FormatError::syntax(
                            ln,
                            "expected TAUT, AXIOM <i> or XORAX <i> ...",
                        ))
                    }
                };
                if justs.len() <= k {
                    justs.resize(k + 1, None);
                }
                if justs[k].replace(j).is_some() {
                    return Err(FormatError::invalid(
                        ln,
                        format!("clause {k} justified twice"),
                    ));
                }
            }
            _ => return Err(FormatError::syntax(ln, format!("unexpected line {line:?}"))),
        }
    }
    let rows = rows
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            r.ok_or_else(|| FormatError::invalid(0, format!("y{} has no map line", i + 1)))
        })
        .collect::<Result<_, _>>()?;
    let justifications = justs
        .into_iter()
        .enumerate()
        .map(|(k, j)| {
            j.ok_or_else(|| FormatError::invalid(0, format!("clause {k} has no just line")))
        })
        .collect::<Result<_, _>>()?;
    Ok(ParityReduction {
        src_vars,
        dst_vars,
        rows,
        justifications,
    })
}
