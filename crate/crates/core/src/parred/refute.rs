use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use thiserror::Error;

use super::linalg::{solve_system, Equation};
use super::proof::{ResXorProof, Rule};
use super::{form_xor, Form, LinearClause};
use crate::cnf::{CnfError, CnfFormula};

/// Widest equation expanded into clauses.
pub const MAX_EQUATION_WIDTH: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RefuteError {
    /// The system has a solution; it lists the variables set to 1.
    #[error("system is consistent")]
    SystemConsistent(Vec<usize>),
    #[error("equation {0} has width above the limit")]
    WidthTooLarge(usize),
    #[error("equation {0} reads 0 = 1 and has no clausal form")]
    DegenerateEquation(usize),
    #[error("a clause of equation {0} is not an axiom of the formula")]
    MissingAxiom(usize),
    #[error(transparent)]
    Cnf(#[from] CnfError),
}

/// The `2^(w-1)` clauses of width `w` that together say `form = rhs`, one per violating
/// assignment, in lex order of the assignment.
pub fn expand_equation(form: &[usize], rhs: bool) -> Vec<Vec<i32>> {
    let w = form.len();
    (0..1u32 << w)
        .filter(|a| (a.count_ones() % 2 == 1) != rhs)
        .map(|a| {
            form.iter()
                .enumerate()
                .map(|(i, &v)| {
                    if (a >> (w - 1 - i)) & 1 == 1 {
                        -(v as i32)
                    } else {
                        v as i32
                    }
                })
                .collect()
        })
        .collect()
}

fn clause_key(c: &[i32]) -> Vec<i32> {
    let mut k = c.to_vec();
    k.sort_unstable();
    k.dedup();
    k
}

struct Builder<'a> {
    proof: ResXorProof,
    axiom_of: BTreeMap<Vec<i32>, usize>,
    axiom_line: BTreeMap<usize, usize>,
    f: &'a CnfFormula,
}

impl Builder<'_> {
    fn axiom(&mut self, clause: &[i32], eq: usize) -> Result<usize, RefuteError> {
        let &idx = self
            .axiom_of
            .get(&clause_key(clause))
            .ok_or(RefuteError::MissingAxiom(eq))?;
        if let Some(&line) = self.axiom_line.get(&idx) {
            return Ok(line);
        }
        let line = self.proof.push(
            LinearClause::from_cnf(&self.f.clauses()[idx]),
            Rule::Axiom(idx),
        );
        self.axiom_line.insert(idx, line);
        Ok(line)
    }

    /// Derives the line `form = rhs` from its clausal expansion.
    fn derive_equation(
        &mut self,
        form: &[usize],
        rhs: bool,
        eq: usize,
    ) -> Result<usize, RefuteError> {
        let w = form.len();
        if w == 1 {
            return self.axiom(&expand_equation(form, rhs)[0], eq);
        }
        // one weakened line per assignment b of the first w-1 variables, in lex order
        let mut level: Vec<usize> = Vec::with_capacity(1 << (w - 1));
        for b in 0..1u32 << (w - 1) {
            let bit = |i: usize| (b >> (w - 2 - i)) & 1 == 1;
            let last = rhs ^ ((b.count_ones() % 2 == 1) ^ true);
            let clause: Vec<i32> = form
                .iter()
                .enumerate()
                .map(|(i, &v)| {
                    let a = if i + 1 < w { bit(i) } else { last };
                    if a {
                        -(v as i32)
                    } else {
                        v as i32
                    }
                })
                .collect();
            let ax = self.axiom(&clause, eq)?;
            let weakened = LinearClause::new(
                form[..w - 1]
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| (alloc::vec![v], !bit(i)))
                    .chain([(form.to_vec(), rhs)]),
            );
            level.push(self.proof.push(weakened, Rule::Weaken(ax)));
        }
        // resolve away x_(w-1), then x_(w-2), ..., x_1
        for i in (0..w - 1).rev() {
            let pivot = alloc::vec![form[i]];
            let next: Vec<usize> = level
                .chunks(2)
                .map(|pair| {
                    // pair[0] has bit i = 0, so it holds (x_i = 1); pair[1] holds (x_i = 0)
                    let (one, zero) = (pair[0], pair[1]);
                    let c = self.proof.lines[zero]
                        .clause
                        .without(&pivot, false)
                        .union(&self.proof.lines[one].clause.without(&pivot, true));
                    self.proof.push(c, Rule::Resolve(zero, one, pivot.clone()))
                })
                .collect();
            level = next;
        }
        Ok(level[0])
    }
}

/// Refutes `f`, whose axioms include the clausal expansion of every equation in `eqs`, by
/// Gaussian elimination carried out with `Res[xor]` steps.
///
/// Each equation is first derived from its clauses. Elimination then combines a row
/// `B = b` with the pivot row `P = p` through the two-step gadget: weaken `B = b` to
/// `(P = 1+p | P+B = p+b)` and resolve with `P = p` on `P`. The proof stops at the first
/// empty clause.
pub fn refute_linear_cnf(f: &CnfFormula, eqs: &[Equation]) -> Result<ResXorProof, RefuteError> {
    for (i, (form, rhs)) in eqs.iter().enumerate() {
        if form.len() > MAX_EQUATION_WIDTH {
            return Err(RefuteError::WidthTooLarge(i));
        }
        if form.is_empty() && *rhs {
            return Err(RefuteError::DegenerateEquation(i));
        }
    }
    if let Some(w) = solve_system(eqs) {
        return Err(RefuteError::SystemConsistent(w));
    }
    let mut axiom_of = BTreeMap::new();
    for (i, c) in f.clauses().iter().enumerate() {
        axiom_of.entry(clause_key(c)).or_insert(i);
    }
    let mut b = Builder {
        proof: ResXorProof::new(),
        axiom_of,
        axiom_line: BTreeMap::new(),
        f,
    };
    let mut pivots: BTreeMap<usize, (usize, Form, bool)> = BTreeMap::new();
    for (ei, (form, rhs)) in eqs.iter().enumerate() {
        if form.is_empty() {
            continue;
        }
        let (mut line, mut cur, mut val) = (b.derive_equation(form, *rhs, ei)?, form.clone(), *rhs);
        loop {
            let Some((lp, pf, pv)) = cur.iter().find_map(|v| pivots.get(v)).cloned() else {
                pivots.insert(cur[0], (line, cur, val));
                break;
            };
            if pf == cur {
                if pv != val {
                    let (zero, one) = if pv { (line, lp) } else { (lp, line) };
                    b.proof
                        .push(LinearClause::empty(), Rule::Resolve(zero, one, cur));
                    return Ok(b.proof);
                }
                break;
            }
            let sum = form_xor(&pf, &cur);
            let weakened = LinearClause::new([(pf.clone(), !pv), (sum.clone(), pv ^ val)]);
            let w = b.proof.push(weakened, Rule::Weaken(line));
            let (zero, one) = if pv { (w, lp) } else { (lp, w) };
            line = b.proof.push(
                LinearClause::unit(sum.clone(), pv ^ val),
                Rule::Resolve(zero, one, pf),
            );
            cur = sum;
            val ^= pv;
        }
    }
    unreachable!("an inconsistent system always reaches the empty clause")
}

/// The clausal expansion of `eqs` as a CNF, together with a refutation of it.
pub fn refute_linear_system(eqs: &[Equation]) -> Result<(CnfFormula, ResXorProof), RefuteError> {
    let num_vars = eqs
        .iter()
        .flat_map(|(f, _)| f.iter().copied())
        .max()
        .unwrap_or(0);
    let clauses: Vec<Vec<i32>> = eqs
        .iter()
        .filter(|(f, _)| f.len() <= MAX_EQUATION_WIDTH)
        .flat_map(|(f, b)| expand_equation(f, *b))
        .collect();
    let cnf = CnfFormula::new(num_vars, clauses, BTreeMap::new())?;
    let proof = refute_linear_cnf(&cnf, eqs)?;
    Ok((cnf, proof))
}
