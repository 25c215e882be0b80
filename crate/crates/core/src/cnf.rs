//! CNF encodings of circuit range membership and of a Student losing the game, plus a
//! small DPLL oracle.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::bits::Bits;
use crate::gf2core::{
    enumerate_outputs, CircuitBuilder, CircuitError, Gate, Gf2Circuit, ENUMERATION_LIMIT,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("expected a string of length {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("student circuit {index} has shape {found_in}->{found_out}, expected {expected_in}->{expected_out}")]
    DimMismatch {
        index: usize,
        expected_in: usize,
        expected_out: usize,
        found_in: usize,
        found_out: usize,
    },
    #[error("{found} decision variables exceed the budget of {limit}")]
    BudgetExceeded { found: usize, limit: usize },
    #[error("clause {0} is empty")]
    EmptyClause(usize),
    #[error("literal {lit} in clause {clause} is out of range")]
    BadLiteral { clause: usize, lit: i32 },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// What a CNF variable stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarRole {
    /// Input bit `i`.
    X(usize),
    /// Value of the gate with this id.
    Hist(usize),
    /// Bit `i` of the Teacher's answer in round `r` (1-based).
    Q(usize, usize),
}

/// A CNF over variables `1..=num_vars`; literals are signed DIMACS indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
    roles: BTreeMap<usize, VarRole>,
}

impl CnfFormula {
    pub fn new(
        num_vars: usize,
        clauses: Vec<Vec<i32>>,
        roles: BTreeMap<usize, VarRole>,
    ) -> Result<Self, CnfError> {
        for (i, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(CnfError::EmptyClause(i));
            }
            if let Some(&lit) = c
                .iter()
                .find(|l| **l == 0 || l.unsigned_abs() as usize > num_vars)
            {
                return Err(CnfError::BadLiteral { clause: i, lit });
            }
        }
        Ok(CnfFormula {
            num_vars,
            clauses,
            roles,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    pub fn roles(&self) -> &BTreeMap<usize, VarRole> {
        &self.roles
    }

    pub fn max_width(&self) -> usize {
        self.clauses.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Whether `assignment` (index `v - 1` holds variable `v`) satisfies every clause.
    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.iter()
                .any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0))
        })
    }
}

fn lit(var: usize, positive: bool) -> i32 {
    if positive {
        var as i32
    } else {
        -(var as i32)
    }
}

/// `tau_b(G)`: satisfiable iff `b` is in the range of `G`.
///
/// Variables are `x_1..x_n` followed by one variable per non-input gate in gate order. Each
/// gate contributes one clause per falsifying assignment of its distinct variables, and each
/// output `i` contributes the unit clause `v_(g_i) = b_i`.
pub fn encode_tau(g: &Gf2Circuit, b: &Bits) -> Result<CnfFormula, CnfError> {
    if b.len() != g.m() {
        return Err(CnfError::LengthMismatch {
            expected: g.m(),
            found: b.len(),
        });
    }
    let n = g.n();
    let mut roles = BTreeMap::new();
    for i in 0..n {
        roles.insert(i + 1, VarRole::X(i));
    }
    let mut var_of = Vec::with_capacity(g.gates().len());
    let mut next = n + 1;
    for (id, gate) in g.gates().iter().enumerate() {
        let v = match *gate {
            Gate::Input(i) => i + 1,
            _ => {
                roles.insert(next, VarRole::Hist(id));
                next += 1;
                next - 1
            }
        };
        var_of.push(v);
    }
    let mut clauses = Vec::new();
    for (id, gate) in g.gates().iter().enumerate() {
        if gate.is_input() {
            continue;
        }
        gate_clauses(gate, var_of[id], &var_of, &mut clauses);
    }
    for (j, &o) in g.outputs().iter().enumerate() {
        clauses.push(vec![lit(var_of[o], b.get(j))]);
    }
    CnfFormula::new(next - 1, clauses, roles)
}

/// Clauses excluding every assignment to `{out} U operands` with `out != gate(operands)`.
fn gate_clauses(gate: &Gate, out: usize, var_of: &[usize], clauses: &mut Vec<Vec<i32>>) {
    let ops: Vec<usize> = gate.operands().map(|o| var_of[o]).collect();
    let mut vars: Vec<usize> = vec![out];
    for &v in &ops {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    for mask in 0..1u32 << vars.len() {
        let val = |v: usize| {
            let k = vars.iter().position(|&u| u == v).expect("listed");
            (mask >> k) & 1 == 1
        };
        let (a, b) = match ops.len() {
            0 => (false, false),
            1 => (val(ops[0]), false),
            _ => (val(ops[0]), val(ops[1])),
        };
        if val(out) != gate.apply(a, b) {
            clauses.push(vars.iter().map(|&v| lit(v, !val(v))).collect());
        }
    }
}

/// Combined circuit for the Student-loses formula: inputs `q_1..q_k`, outputs the bitwise
/// XOR of `G(q_i)` with `B_i(q_1..q_(i-1))` for every round.
pub fn student_loses_circuit(
    g: &Gf2Circuit,
    students: &[Gf2Circuit],
) -> Result<Gf2Circuit, CnfError> {
    let (n, m) = (g.n(), g.m());
    for (i, s) in students.iter().enumerate() {
        if s.n() != i * n || s.m() != m {
            return Err(CnfError::DimMismatch {
                index: i + 1,
                expected_in: i * n,
                expected_out: m,
                found_in: s.n(),
                found_out: s.m(),
            });
        }
    }
    let k = students.len();
    let mut b = CircuitBuilder::with_inputs(k * n);
    let mut cmp = Vec::with_capacity(k * m);
    for (i, s) in students.iter().enumerate() {
        let q: Vec<usize> = (i * n..(i + 1) * n).collect();
        let gy = b.instantiate(g, &q);
        let prev: Vec<usize> = (0..i * n).collect();
        let by = b.instantiate(s, &prev);
        for (&u, &v) in gy.iter().zip(&by) {
            cmp.push(b.xor(u, v));
        }
    }
    for c in cmp {
        b.output(c);
    }
    Ok(b.finish("student-loses")?)
}

/// Negation of the Student-wins statement: satisfiable iff some Teacher answers every
/// proposal `B_i(q_1..q_(i-1))` with a preimage `q_i`. Input variables carry `Q` roles.
pub fn encode_student_loses(
    g: &Gf2Circuit,
    students: &[Gf2Circuit],
) -> Result<CnfFormula, CnfError> {
    let h = student_loses_circuit(g, students)?;
    let mut f = encode_tau(&h, &Bits::zeros(h.m()))?;
    let n = g.n();
    for var in 1..=h.n() {
        let i = var - 1;
        f.roles
            .insert(var, VarRole::Q(i / n.max(1) + 1, i % n.max(1)));
    }
    Ok(f)
}

/// Teacher answers `q_1..q_k` read from a satisfying assignment of the Student-loses CNF.
pub fn decode_responses(f: &CnfFormula, assignment: &[bool], k: usize, n: usize) -> Vec<Bits> {
    let mut out = vec![Bits::zeros(n); k];
    for (&var, role) in f.roles() {
        if let VarRole::Q(r, i) = *role {
            out[r - 1].set(i, assignment[var - 1]);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatResult {
    /// Index `v - 1` holds variable `v`.
    Sat(Vec<bool>),
    Unsat,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatResult::Sat(_))
    }
}

pub const DEFAULT_DECISION_BUDGET: usize = 24;

struct Dpll<'a> {
    f: &'a CnfFormula,
    occurs: Vec<Vec<usize>>,
    value: Vec<i8>,
    trail: Vec<usize>,
    order: Vec<usize>,
}

impl<'a> Dpll<'a> {
    fn new(f: &'a CnfFormula) -> Self {
        let mut occurs = vec![Vec::new(); f.num_vars + 1];
        for (ci, c) in f.clauses.iter().enumerate() {
            for &l in c {
                occurs[l.unsigned_abs() as usize].push(ci);
            }
        }
        // inputs first, gate variables last: they follow by propagation
        let hist = |v: &usize| matches!(f.roles.get(v), Some(VarRole::Hist(_)));
        let mut order: Vec<usize> = (1..=f.num_vars).filter(|v| !hist(v)).collect();
        order.extend((1..=f.num_vars).filter(hist));
        Dpll {
            f,
            occurs,
            value: vec![0; f.num_vars + 1],
            trail: Vec::new(),
            order,
        }
    }

    fn lit_value(&self, l: i32) -> i8 {
        let v = self.value[l.unsigned_abs() as usize];
        if l > 0 {
            v
        } else {
            -v
        }
    }

    fn assign(&mut self, l: i32) {
        self.value[l.unsigned_abs() as usize] = if l > 0 { 1 } else { -1 };
        self.trail.push(l.unsigned_abs() as usize);
    }

    /// Propagates from trail position `from`; false on conflict.
    fn propagate(&mut self, mut from: usize) -> bool {
        while from < self.trail.len() {
            let var = self.trail[from];
            from += 1;
            for k in 0..self.occurs[var].len() {
                let ci = self.occurs[var][k];
                let mut unassigned = None;
                let mut open = 0;
                let mut sat = false;
                for &l in &self.f.clauses[ci] {
                    match self.lit_value(l) {
                        1 => {
                            sat = true;
                            break;
                        }
                        0 => {
                            open += 1;
                            unassigned = Some(l);
                        }
                        _ => {}
                    }
                }
                if sat {
                    continue;
                }
                match open {
                    0 => return false,
                    1 => self.assign(unassigned.expect("one open literal")),
                    _ => {}
                }
            }
        }
        true
    }

    fn initial_units(&mut self) -> bool {
        for ci in 0..self.f.clauses.len() {
            if self.f.clauses[ci].len() == 1 {
                let l = self.f.clauses[ci][0];
                match self.lit_value(l) {
                    1 => {}
                    -1 => return false,
                    _ => self.assign(l),
                }
            }
        }
        self.propagate(0)
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let v = self.trail.pop().expect("nonempty trail");
            self.value[v] = 0;
        }
    }

    fn search(&mut self) -> bool {
        let Some(&var) = self.order.iter().find(|&&v| self.value[v] == 0) else {
            return true;
        };
        for l in [-(var as i32), var as i32] {
            let mark = self.trail.len();
            self.assign(l);
            if self.propagate(mark) && self.search() {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}

/// DPLL with unit propagation. Branches on non-gate variables in index order first, so a
/// circuit encoding needs at most one decision per free input.
///
/// Fails when more than `budget` non-gate variables remain free after propagating the unit
/// clauses.
pub fn brute_force_sat(f: &CnfFormula, budget: usize) -> Result<SatResult, CnfError> {
    let mut d = Dpll::new(f);
    if !d.initial_units() {
        return Ok(SatResult::Unsat);
    }
    let free = (1..=f.num_vars)
        .filter(|v| d.value[*v] == 0 && !matches!(f.roles.get(v), Some(VarRole::Hist(_))))
        .count();
    if free > budget {
        return Err(CnfError::BudgetExceeded {
            found: free,
            limit: budget,
        });
    }
    if !d.search() {
        return Ok(SatResult::Unsat);
    }
    // variables in no clause stay unassigned; any value works
    let assignment: Vec<bool> = d.value[1..].iter().map(|&v| v == 1).collect();
    debug_assert!(f.satisfied_by(&assignment));
    Ok(SatResult::Sat(assignment))
}

/// Whether `b` is an output of `g`, by enumerating all inputs.
pub fn range_membership(g: &Gf2Circuit, b: &Bits) -> Result<bool, CnfError> {
    if b.len() != g.m() {
        return Err(CnfError::LengthMismatch {
            expected: g.m(),
            found: b.len(),
        });
    }
    let mut hit = false;
    enumerate_outputs(g, ENUMERATION_LIMIT, |_, y| hit |= y == b)?;
    Ok(hit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gens::{build_planted_generator, random_circuit};
    use crate::gf2core::eval_circuit;

    fn exhaustive(f: &CnfFormula) -> bool {
        (0..1u64 << f.num_vars()).any(|v| {
            let a: Vec<bool> = (0..f.num_vars()).map(|i| (v >> i) & 1 == 1).collect();
            f.satisfied_by(&a)
        })
    }

    fn constant_circuit(n: usize, y: &Bits) -> Gf2Circuit {
        let mut b = CircuitBuilder::with_inputs(n);
        let zero = b.constant(false);
        let one = b.constant(true);
        for v in y.iter() {
            b.output(if v { one } else { zero });
        }
        b.finish("const").unwrap()
    }

    #[test]
    fn single_xor() {
        let mut b = CircuitBuilder::with_inputs(2);
        let x = b.xor(0, 1);
        b.output(x);
        let g = b.finish("x").unwrap();
        let f = encode_tau(&g, &Bits::zeros(1)).unwrap();
        assert_eq!(f.num_vars(), 3);
        assert_eq!(f.clauses().len(), 5);
        assert_eq!(f.clauses().last().unwrap(), &vec![-3]);
        assert!(f.satisfied_by(&[false, false, false]));
        assert_eq!(f.roles()[&3], VarRole::Hist(2));
    }

    #[test]
    fn trivial_unsat() {
        let f = CnfFormula::new(1, vec![vec![1], vec![-1]], BTreeMap::new()).unwrap();
        assert_eq!(brute_force_sat(&f, 24).unwrap(), SatResult::Unsat);
        assert!(CnfFormula::new(1, vec![vec![]], BTreeMap::new()).is_err());
        assert!(CnfFormula::new(1, vec![vec![2]], BTreeMap::new()).is_err());
    }

    #[test]
    fn tau_matches_range_for_all_targets() {
        for seed in 0..100u64 {
            let n = 1 + (seed % 4) as usize;
            let m = 1 + (seed % 6) as usize;
            let g = random_circuit(n, m, 12 - (seed % 5) as usize, seed);
            for bi in 0..1u64 << m {
                let b = Bits::from_lex_index(bi, m);
                let f = encode_tau(&g, &b).unwrap();
                assert!(f.max_width() <= 3);
                assert!(f.clauses().len() <= 8 * g.internal_gate_count() + m);
                let res = brute_force_sat(&f, 24).unwrap();
                assert_eq!(
                    res.is_sat(),
                    range_membership(&g, &b).unwrap(),
                    "seed {seed} b {b}"
                );
                if let SatResult::Sat(a) = res {
                    let x: Bits = a[..n].iter().copied().collect();
                    assert_eq!(eval_circuit(&g, &x).unwrap(), b);
                }
            }
        }
    }

    #[test]
    fn dpll_matches_exhaustive_on_random_cnfs() {
        use crate::rng::{seeded, Rng};
        let mut rng = seeded(77);
        for _ in 0..300 {
            let nv = rng.random_range(1..=12);
            let nc = rng.random_range(1..=40);
            let clauses: Vec<Vec<i32>> = (0..nc)
                .map(|_| {
                    (0..rng.random_range(1..=3))
                        .map(|_| lit(rng.random_range(1..=nv), rng.random()))
                        .collect()
                })
                .collect();
            let f = CnfFormula::new(nv, clauses, BTreeMap::new()).unwrap();
            let res = brute_force_sat(&f, 24).unwrap();
            assert_eq!(res.is_sat(), exhaustive(&f));
            if let SatResult::Sat(a) = res {
                assert!(f.satisfied_by(&a));
            }
        }
    }

    #[test]
    fn budget_counts_inputs_only() {
        let mut b = CircuitBuilder::with_inputs(10);
        let all: Vec<usize> = (0..10).collect();
        let p = b.xor_chain(&all);
        b.output(p);
        let f = encode_tau(&b.finish("parity").unwrap(), &Bits::zeros(1)).unwrap();
        assert!(matches!(
            brute_force_sat(&f, 5),
            Err(CnfError::BudgetExceeded { .. })
        ));
        assert!(brute_force_sat(&f, 10).is_ok());
    }

    #[test]
    fn range_membership_cases() {
        let y = Bits::from_bit_str("101").unwrap();
        let c = constant_circuit(2, &y);
        for v in 0..8 {
            let b = Bits::from_lex_index(v, 3);
            assert_eq!(range_membership(&c, &b).unwrap(), b == y);
        }
        assert_eq!(
            range_membership(&c, &Bits::zeros(2)),
            Err(CnfError::LengthMismatch {
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn student_loses_single_round() {
        let g = build_planted_generator(3, 6, 4, 30).unwrap();
        let y0 = eval_circuit(&g, &Bits::zeros(3)).unwrap();
        let f = encode_student_loses(&g, &[constant_circuit(0, &y0)]).unwrap();
        let SatResult::Sat(a) = brute_force_sat(&f, 24).unwrap() else {
            panic!("expected SAT")
        };
        let q = decode_responses(&f, &a, 1, 3);
        assert_eq!(eval_circuit(&g, &q[0]).unwrap(), y0);
        let miss = crate::avoid::brute_force_avoid(&g).unwrap();
        let f = encode_student_loses(&g, &[constant_circuit(0, &miss)]).unwrap();
        assert_eq!(brute_force_sat(&f, 24).unwrap(), SatResult::Unsat);
        assert!(matches!(
            encode_student_loses(&g, &[constant_circuit(1, &miss)]),
            Err(CnfError::DimMismatch { index: 1, .. })
        ));
    }
}
