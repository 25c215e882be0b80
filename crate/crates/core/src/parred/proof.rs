use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use super::linalg::implies;
use super::{Form, LinearClause};
use crate::cnf::CnfFormula;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Clause `i` of the CNF being refuted.
    Axiom(usize),
    /// A semantic consequence of an earlier line.
    Weaken(usize),
    /// Resolution of two earlier lines on `form`: the first holds `form = 0`, the second
    /// `form = 1`.
    Resolve(usize, usize, Form),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProofLine {
    pub clause: LinearClause,
    pub rule: Rule,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ResXorProof {
    pub lines: Vec<ProofLine>,
}

impl ResXorProof {
    pub fn new() -> Self {
        ResXorProof::default()
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Appends a line and returns its index.
    pub fn push(&mut self, clause: LinearClause, rule: Rule) -> usize {
        self.lines.push(ProofLine { clause, rule });
        self.lines.len() - 1
    }

    pub fn last_is_empty(&self) -> bool {
        self.lines.last().is_some_and(|l| l.clause.is_empty())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LineReason {
    BadAxiom,
    BadReference,
    NoPivot,
    BadResolvent,
    NotImplied,
    NotEmptyFinal,
}

impl LineReason {
    pub fn tag(self) -> &'static str {
        match self {
            LineReason::BadAxiom => "BAD_AXIOM",
            LineReason::BadReference => "BAD_REFERENCE",
            LineReason::NoPivot => "NO_PIVOT",
            LineReason::BadResolvent => "BAD_RESOLVENT",
            LineReason::NotImplied => "NOT_IMPLIED",
            LineReason::NotEmptyFinal => "NOT_EMPTY_FINAL",
        }
    }
}

impl fmt::Display for LineReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {index}: {reason}")]
pub struct ProofError {
    pub index: usize,
    pub reason: LineReason,
}

fn check_line(f: &CnfFormula, lines: &[ProofLine], idx: usize) -> Result<(), LineReason> {
    let line = &lines[idx];
    match &line.rule {
        Rule::Axiom(i) => {
            let clause = f.clauses().get(*i).ok_or(LineReason::BadAxiom)?;
            if LinearClause::from_cnf(clause) != line.clause {
                return Err(LineReason::BadAxiom);
            }
        }
        Rule::Weaken(j) => {
            if *j >= idx {
                return Err(LineReason::BadReference);
            }
            if !implies(&lines[*j].clause, &line.clause) {
                return Err(LineReason::NotImplied);
            }
        }
        Rule::Resolve(j, k, form) => {
            if *j >= idx || *k >= idx {
                return Err(LineReason::BadReference);
            }
            let (a, b) = (&lines[*j].clause, &lines[*k].clause);
            if !a.contains(form, false) || !b.contains(form, true) {
                return Err(LineReason::NoPivot);
            }
            let resolvent = a.without(form, false).union(&b.without(form, true));
            if resolvent != line.clause {
                return Err(LineReason::BadResolvent);
            }
        }
    }
    Ok(())
}

/// Checks every line of `proof` against the axioms of `f`, without requiring a final empty
/// clause.
pub fn check_resxor_derivation(f: &CnfFormula, proof: &ResXorProof) -> Result<(), ProofError> {
    for idx in 0..proof.lines.len() {
        check_line(f, &proof.lines, idx).map_err(|reason| ProofError { index: idx, reason })?;
    }
    Ok(())
}

/// Checks that `proof` is a `Res[xor]` refutation of `f`.
pub fn check_resxor_proof(f: &CnfFormula, proof: &ResXorProof) -> Result<(), ProofError> {
    check_resxor_derivation(f, proof)?;
    if !proof.last_is_empty() {
        return Err(ProofError {
            index: proof.lines.len().saturating_sub(1),
            reason: LineReason::NotEmptyFinal,
        });
    }
    Ok(())
}
