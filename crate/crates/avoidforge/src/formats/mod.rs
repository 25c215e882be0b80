//! Line-oriented text formats for every artifact the tools read or write.

pub mod dimacs;
pub mod hexlines;
pub mod hypergraph;
pub mod key;
pub mod netlist;
pub mod proof;
pub mod reduction;
pub mod trace;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: syntax error: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: gate {name} is not defined before use")]
    UndefinedGate { line: usize, name: String },
    #[error("line {line}: {op} takes {expected} operand(s), got {found}")]
    BadArity {
        line: usize,
        op: String,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: output {index} assigned twice")]
    DuplicateOutput { line: usize, index: usize },
    #[error("output {index} is never assigned")]
    MissingOutput { index: usize },
    #[error("line {line}: {msg}")]
    Invalid { line: usize, msg: String },
}

impl FormatError {
    pub(crate) fn syntax(line: usize, msg: impl Into<String>) -> Self {
        FormatError::Syntax {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn invalid(line: usize, msg: impl std::fmt::Display) -> Self {
        FormatError::Invalid {
            line,
            msg: msg.to_string(),
        }
    }
}

/// Non-empty lines with `#` comments stripped, paired with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// Parses `key=value` into the value, checking the key.
pub(crate) fn kv<'a>(line: usize, token: &'a str, key: &str) -> Result<&'a str, FormatError> {
    match token.split_once('=') {
        Some((k, v)) if k == key => Ok(v),
        _ => Err(FormatError::syntax(
            line,
            format!("expected {key}=<value>, found {token:?}"),
        )),
    }
}

pub(crate) fn num<T: std::str::FromStr>(line: usize, s: &str) -> Result<T, FormatError> {
    s.parse()
        .map_err(|_| FormatError::syntax(line, format!("bad number {s:?}")))
}
