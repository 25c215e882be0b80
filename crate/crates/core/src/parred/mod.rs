//! Simple parity reductions between CNFs and `Res[xor]` refutations.
//!
//! A linear form is a sorted list of 1-based variable indices standing for their XOR. A
//! linear clause is a disjunction of equations `form = rhs`.

mod linalg;
mod proof;
mod reduction;
mod refute;
mod transform;

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

pub use linalg::{implies, solve_system, Equation};
pub use proof::{
    check_resxor_derivation, check_resxor_proof, LineReason, ProofError, ProofLine, ResXorProof,
    Rule,
};
pub use reduction::{
    build_canonical_reduction, check_parity_reduction, circuit_equations,
    sample_linear_canonical_case, sample_reduction_case, CanonicalReduction, Justification,
    ParityReduction, ReductionCase, ReductionError,
};
pub use refute::{
    expand_equation, refute_linear_cnf, refute_linear_system, RefuteError, MAX_EQUATION_WIDTH,
};
pub use transform::{transform_bound, transform_resxor_proof, TransformError};

/// Sorted, duplicate-free variable indices; the XOR of those variables.
pub type Form = Vec<usize>;

/// Symmetric difference of two sorted forms.
pub fn form_xor(a: &[usize], b: &[usize]) -> Form {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Sorts and cancels repeated variables in pairs.
pub fn normalize_form(mut vars: Vec<usize>) -> Form {
    vars.sort_unstable();
    let mut out: Form = Vec::with_capacity(vars.len());
    for v in vars {
        if out.last() == Some(&v) {
            out.pop();
        } else {
            out.push(v);
        }
    }
    out
}

/// A disjunction of linear equations.
///
/// Construction drops the always-false literal `0 = 1`; the always-true literal `0 = 0` is
/// kept and makes the clause a tautology, as does a form present with both right-hand sides.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearClause {
    lits: BTreeSet<(Form, bool)>,
}

impl LinearClause {
    pub fn empty() -> Self {
        LinearClause::default()
    }

    pub fn new(lits: impl IntoIterator<Item = (Form, bool)>) -> Self {
        let lits = lits
            .into_iter()
            .filter(|(f, b)| !(f.is_empty() && *b))
            .collect();
        LinearClause { lits }
    }

    /// The clause `form = rhs`.
    pub fn unit(form: Form, rhs: bool) -> Self {
        LinearClause::new([(form, rhs)])
    }

    /// Literal-wise translation of a CNF clause: `x` becomes `x = 1`, `-x` becomes `x = 0`.
    pub fn from_cnf(clause: &[i32]) -> Self {
        LinearClause::new(
            clause
                .iter()
                .map(|&l| (alloc::vec![l.unsigned_abs() as usize], l > 0)),
        )
    }

    pub fn lits(&self) -> &BTreeSet<(Form, bool)> {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn contains(&self, form: &[usize], rhs: bool) -> bool {
        self.lits.contains(&(form.to_vec(), rhs))
    }

    pub fn is_tautology(&self) -> bool {
        self.lits
            .iter()
            .any(|(f, b)| (f.is_empty() && !*b) || (*b && self.lits.contains(&(f.clone(), false))))
    }

    pub fn without(&self, form: &[usize], rhs: bool) -> LinearClause {
        let mut lits = self.lits.clone();
        lits.remove(&(form.to_vec(), rhs));
        LinearClause { lits }
    }

    pub fn union(&self, other: &LinearClause) -> LinearClause {
        LinearClause {
            lits: self.lits.union(&other.lits).cloned().collect(),
        }
    }

    pub fn is_subset(&self, other: &LinearClause) -> bool {
        self.lits.is_subset(&other.lits)
    }

    /// Largest variable index mentioned.
    pub fn max_var(&self) -> usize {
        self.lits
            .iter()
            .flat_map(|(f, _)| f.last().copied())
            .max()
            .unwrap_or(0)
    }

    /// Applies `f(var)` to every variable and renormalizes each form.
    pub fn substitute(&self, f: impl Fn(usize) -> Form) -> LinearClause {
        LinearClause::new(self.lits.iter().map(|(form, b)| {
            let vars: Vec<usize> = form.iter().flat_map(|&v| f(v)).collect();
            (normalize_form(vars), *b)
        }))
    }

    /// Truth value under `value(var)`.
    pub fn eval(&self, value: impl Fn(usize) -> bool) -> bool {
        self.lits
            .iter()
            .any(|(f, b)| f.iter().fold(false, |acc, &v| acc ^ value(v)) == *b)
    }
}

pub struct FormDisplay<'a>(pub &'a [usize]);

impl fmt::Display for FormDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "x{v}")?;
        }
        Ok(())
    }
}

/// `(x1+x3=0 | x2=1)`, with `()` for the empty clause.
impl fmt::Display for LinearClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, (form, b)) in self.lits.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{}={}", FormDisplay(form), *b as u8)?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn forms() {
        assert_eq!(form_xor(&[1, 3, 5], &[3, 4]), vec![1, 4, 5]);
        assert_eq!(normalize_form(vec![4, 1, 4, 2, 1, 1]), vec![1, 2]);
    }

    #[test]
    fn clause_normalization() {
        let c = LinearClause::new([(vec![], true), (vec![1], false)]);
        assert_eq!(c.len(), 1);
        assert!(!c.is_tautology());
        assert!(LinearClause::new([(vec![], false)]).is_tautology());
        assert!(LinearClause::new([(vec![2], false), (vec![2], true)]).is_tautology());
        assert_eq!(
            LinearClause::from_cnf(&[1, -2]).to_string(),
            "(x1=1 | x2=0)"
        );
        assert_eq!(LinearClause::empty().to_string(), "()");
        let s = LinearClause::unit(vec![1, 2], true).substitute(|v| {
            if v == 1 {
                vec![3, 4]
            } else {
                vec![4]
            }
        });
        assert_eq!(s, LinearClause::unit(vec![3], true));
    }
}
