//! ```text
//! circuit <name>
//! inputs <n>
//! outputs <m>
//! gate g<k> = INPUT <i> | CONST <0|1> | NOT g<j> | AND g<j> g<l> | OR g<j> g<l> | XOR g<j> g<l>
//! output <o> = g<k>
//! ```

use std::collections::HashMap;
use std::fmt::Write;

use avoidforge_core::gf2core::Gate;
use avoidforge_core::Gf2Circuit;

use super::{content_lines, num, FormatError};

pub fn parse_netlist(text: &str) -> Result<Gf2Circuit, FormatError> {
    let mut name = None;
    let mut inputs = None;
    let mut outputs: Option<Vec<Option<usize>>> = None;
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut gates = Vec::new();
    for (ln, line) in content_lines(text) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "circuit" if toks.len() == 2 && name.is_none() => name = Some(toks[1].to_string()),
            "inputs" if toks.len() == 2 && inputs.is_none() => {
                inputs = Some(num::<usize>(ln, toks[1])?)
            }
            "outputs" if toks.len() == 2 && outputs.is_none() => {
                outputs = Some(vec![None; num::<usize>(ln, toks[1])?])
            }
            "gate" => {
                if toks.len() < 4 || toks[2] != "=" {
                    return Err(FormatError::syntax(ln, "expected `gate g<k> = OP ...`"));
                }
                let gname = toks[1];
                if !is_gate_name(gname) {
                    return Err(FormatError::syntax(ln, format!("bad gate name {gname:?}")));
                }
                if ids.contains_key(gname) {
                    return Err(FormatError::syntax(
                        ln,
                        format!("gate {gname} defined twice"),
                    ));
                }
                let op = toks[3];
                let args = &toks[4..];
                let arity = |expected: usize| {
                    if args.len() == expected {
                        Ok(())
                    } else {
                        Err(FormatError::BadArity {
                            line: ln,
                            op: op.to_string(),
                            expected,
                            found: args.len(),
                        })
                    }
                };
                let operand = |s: &str| -> Result<usize, FormatError> {
                    ids.get(s)
                        .copied()
                        .ok_or_else(|| FormatError::UndefinedGate {
                            line: ln,
                            name: s.to_string(),
                        })
                };
                let gate = match op {
                    "INPUT" => {
                        arity(1)?;
                        let i: usize = num(ln, args[0])?;
                        let n = inputs.ok_or_else(|| {
                            FormatError::syntax(ln, "`inputs` must precede gates")
                        })?;
                        if i >= n {
                            return Err(FormatError::invalid(
                                ln,
                                format!("input index {i} out of range"),
                            ));
                        }
                        Gate::Input(i)
                    }
                    "CONST" => {
                        arity(1)?;
                        match args[0] {
                            "0" => Gate::Const(false),
                            "1" => Gate::Const(true),
                            other => {
                                return Err(FormatError::syntax(
                                    ln,
                                    format!("bad constant {other:?}"),
                                ))
                            }
                        }
                    }
                    "NOT" => {
                        arity(1)?;
                        Gate::Not(operand(args[0])?)
                    }
                    "AND" | "OR" | "XOR" => {
                        arity(2)?;
                        let (a, b) = (operand(args[0])?, operand(args[1])?);
                        match op {
                            "AND" => Gate::And(a, b),
                            "OR" => Gate::Or(a, b),
                            _ => Gate::Xor(a, b),
                        }
                    }
                    other => return Err(FormatError::syntax(ln, format!("unknown op {other:?}"))),
                };
                ids.insert(gname.to_string(), gates.len());
                gates.push(gate);
            }
            "output" => {
                if toks.len() != 4 || toks[2] != "=" {
                    return Err(FormatError::syntax(ln, "expected `output <o> = g<k>`"));
                }
                let o: usize = num(ln, toks[1])?;
                let g = *ids.get(toks[3]).ok_or_else(|| FormatError::UndefinedGate {
                    line: ln,
                    name: toks[3].to_string(),
                })?;
                let outs = outputs.as_mut().ok_or_else(|| {
                    FormatError::syntax(ln, "`outputs` must precede output lines")
                })?;
                let slot = outs.get_mut(o).ok_or_else(|| {
                    FormatError::invalid(ln, format!("output index {o} out of range"))
                })?;
                if slot.is_some() {
                    return Err(FormatError::DuplicateOutput { line: ln, index: o });
                }
                *slot = Some(g);
            }
            _ => return Err(FormatError::syntax(ln, format!("unexpected line {line:?}"))),
        }
    }
    let name = name.ok_or_else(|| FormatError::syntax(0, "missing `circuit` header"))?;
    let inputs = inputs.ok_or_else(|| FormatError::syntax(0, "missing `inputs` header"))?;
    let outputs = outputs.ok_or_else(|| FormatError::syntax(0, "missing `outputs` header"))?;
    let outputs = outputs
        .into_iter()
        .enumerate()
        .map(|(index, g)| g.ok_or(FormatError::MissingOutput { index }))
        .collect::<Result<Vec<_>, _>>()?;
    Gf2Circuit::new(name, inputs, gates, outputs).map_err(|e| FormatError::invalid(0, e))
}

fn is_gate_name(s: &str) -> bool {
    s.len() > 1
        && s.starts_with('g')
        && s[1..]
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// Canonical text: gates named `g1..gk` in id order.
pub fn emit_netlist(c: &Gf2Circuit) -> String {
    let mut s = String::new();
    let name = if c.name().is_empty() {
        "unnamed"
    } else {
        c.name()
    };
    let _ = writeln!(s, "circuit {}", name.replace(char::is_whitespace, "_"));
    let _ = writeln!(s, "inputs {}", c.n());
    let _ = writeln!(s, "outputs {}", c.m());
    for (id, gate) in c.gates().iter().enumerate() {
        let body = match *gate {
            Gate::Input(i) => format!("INPUT {i}"),
            Gate::Const(b) => format!("CONST {}", b as u8),
            Gate::Not(a) => format!("NOT g{}", a + 1),
            Gate::And(a, b) => format!("AND g{} g{}", a + 1, b + 1),
            Gate::Or(a, b) => format!("OR g{} g{}", a + 1, b + 1),
            Gate::Xor(a, b) => format!("XOR g{} g{}", a + 1, b + 1),
        };
        let _ = writeln!(s, "gate g{} = {body}", id + 1);
    }
    for (o, g) in c.outputs().iter().enumerate() {
        let _ = writeln!(s, "output {o} = g{}", g + 1);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_xor() {
        let t = "circuit x\ninputs 2\noutputs 1\ngate g1 = INPUT 0\ngate g2 = INPUT 1\ngate g3 = XOR g1 g2\noutput 0 = g3\n";
        let c = parse_netlist(t).unwrap();
        assert_eq!((c.n(), c.m()), (2, 1));
        assert_eq!(emit_netlist(&c), t);
    }

    #[test]
    fn constant_one() {
        let c = Gf2Circuit::new("one", 0, vec![Gate::Const(true)], vec![0]).unwrap();
        assert_eq!(
            emit_netlist(&c),
            "circuit one\ninputs 0\noutputs 1\ngate g1 = CONST 1\noutput 0 = g1\n"
        );
    }

    #[test]
    fn errors_name_lines() {
        let fwd =
            "circuit x\ninputs 1\noutputs 1\ngate g1 = NOT g2\ngate g2 = INPUT 0\noutput 0 = g1\n";
        assert_eq!(
            parse_netlist(fwd),
            Err(FormatError::UndefinedGate {
                line: 4,
                name: "g2".into()
            })
        );
        let arity =
            "circuit x\ninputs 1\noutputs 1\ngate g1 = INPUT 0\ngate g2 = AND g1\noutput 0 = g2\n";
        assert!(matches!(
            parse_netlist(arity),
            Err(FormatError::BadArity { line: 5, .. })
        ));
        let dup =
            "circuit x\ninputs 1\noutputs 1\ngate g1 = INPUT 0\noutput 0 = g1\noutput 0 = g1\n";
        assert_eq!(
            parse_netlist(dup),
            Err(FormatError::DuplicateOutput { line: 6, index: 0 })
        );
        let missing = "circuit x\ninputs 1\noutputs 2\ngate g1 = INPUT 0\noutput 0 = g1\n";
        assert_eq!(
            parse_netlist(missing),
            Err(FormatError::MissingOutput { index: 1 })
        );
        assert!(matches!(
            parse_netlist("circuit x\nbogus\n"),
            Err(FormatError::Syntax { line: 2, .. })
        ));
    }

    #[test]
    fn renames_canonically() {
        let t = "# comment\ncircuit x\ninputs 1\noutputs 1\ngate ga = INPUT 0\ngate g7 = NOT ga  # trailing\noutput 0 = g7\n";
        let c = parse_netlist(t).unwrap();
        assert!(emit_netlist(&c).contains("gate g2 = NOT g1\n"));
    }
}
