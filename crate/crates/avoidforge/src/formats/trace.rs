//! Game trace logs: `round=<i> y=<hex> q=<hex|NONE>` lines and a final `outcome=<WIN r|LOSE>`.

use avoidforge_core::game::{GameTrace, Outcome, Round};
use avoidforge_core::Bits;

use super::{content_lines, kv, num, FormatError};

pub fn emit_trace(t: &GameTrace) -> String {
    t.to_string()
}

/// Reads a log for an instance with `n` inputs and `m` outputs.
pub fn parse_trace(
    text: &str,
    instance: &str,
    n: usize,
    m: usize,
) -> Result<GameTrace, FormatError> {
    let mut rounds = Vec::new();
    let mut outcome = None;
    for (ln, line) in content_lines(text) {
        if outcome.is_some() {
            return Err(FormatError::syntax(ln, "content after outcome"));
        }
        if let Some(o) = line.strip_prefix("outcome=") {
            outcome = Some(match o.split_whitespace().collect::<Vec<_>>().as_slice() {
                ["LOSE"] => Outcome::StudentLoses,
                ["WIN", r] => Outcome::StudentWins(num(ln, r)?),
                _ => {
                    return Err(FormatError::syntax(
                        ln,
                        "expected outcome=WIN <r> or outcome=LOSE",
                    ))
                }
            });
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(FormatError::syntax(
                ln,
                "expected `round=<i> y=<hex> q=<hex|NONE>`",
            ));
        }
        let r: usize = num(ln, kv(ln, toks[0], "round")?)?;
        if r != rounds.len() + 1 {
            return Err(FormatError::invalid(ln, format!("round {r} out of order")));
        }
        let y =
            Bits::from_hex(kv(ln, toks[1], "y")?, m).map_err(|e| FormatError::invalid(ln, e))?;
        let q = match kv(ln, toks[2], "q")? {
            "NONE" => None,
            h => Some(Bits::from_hex(h, n).map_err(|e| FormatError::invalid(ln, e))?),
        };
        rounds.push(Round { y, q });
    }
    let outcome = outcome.ok_or_else(|| FormatError::syntax(0, "missing outcome line"))?;
    Ok(GameTrace {
        instance: instance.to_string(),
        rounds,
        outcome,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use avoidforge_core::avoid::AvoidInstance;
    use avoidforge_core::game::{run_game, Student, StudentKind, TeacherKind};
    use avoidforge_core::gens::build_planted_generator;

    #[test]
    fn roundtrip() {
        let g = build_planted_generator(3, 5, 2, 14).unwrap();
        let inst = AvoidInstance::raw(g).unwrap();
        let t = run_game(
            &inst,
            &Student::new(StudentKind::Lex, 9).unwrap(),
            &TeacherKind::LexFirst,
            9,
        )
        .unwrap();
        let text = emit_trace(&t);
        assert_eq!(parse_trace(&text, &t.instance, 3, 5).unwrap(), t);
    }
}
