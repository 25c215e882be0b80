use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{form_xor, Form, LinearClause};

/// `form = rhs`.
pub type Equation = (Form, bool);

/// A solution of the system as the set of variables assigned 1, or `None` if inconsistent.
/// Free variables are set to 0.
pub fn solve_system(eqs: &[Equation]) -> Option<Vec<usize>> {
    // rows keyed by pivot (smallest variable), each row reduced against earlier pivots
    let mut pivots: BTreeMap<usize, Equation> = BTreeMap::new();
    for (form, rhs) in eqs {
        let (mut f, mut b) = (form.clone(), *rhs);
        while let Some((pf, pb)) = f.iter().find_map(|v| pivots.get(v)) {
            f = form_xor(&f, pf);
            b ^= *pb;
        }
        match f.first() {
            None if b => return None,
            None => {}
            Some(&p) => {
                pivots.insert(p, (f, b));
            }
        }
    }
    // back-substitute from the largest pivot down
    let mut value: BTreeMap<usize, bool> = BTreeMap::new();
    for (&p, (f, b)) in pivots.iter().rev() {
        let rest = f[1..]
            .iter()
            .fold(false, |acc, v| acc ^ value.get(v).copied().unwrap_or(false));
        value.insert(p, b ^ rest);
    }
    Some(
        value
            .into_iter()
            .filter(|(_, v)| *v)
            .map(|(k, _)| k)
            .collect(),
    )
}

/// Semantic implication `c |= d` between linear clauses.
///
/// Holds iff the negation of `d` is inconsistent, or every disjunct of `c` is inconsistent
/// with the negation of `d`.
pub fn implies(c: &LinearClause, d: &LinearClause) -> bool {
    let neg_d: Vec<Equation> = d.lits().iter().map(|(f, b)| (f.clone(), !*b)).collect();
    if solve_system(&neg_d).is_none() {
        return true;
    }
    c.lits().iter().all(|lit| {
        let mut sys = neg_d.clone();
        sys.push(lit.clone());
        solve_system(&sys).is_none()
    })
}
