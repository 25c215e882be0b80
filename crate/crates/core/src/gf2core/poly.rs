use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::{CircuitError, Gate, Gf2Circuit};
use crate::bits::Bits;

pub const DEFAULT_POLY_BUDGET: usize = 1_000_000;

/// Multilinear polynomial over GF(2) in algebraic normal form.
///
/// A monomial is a sorted list of input indices; the empty monomial is the constant 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    monomials: BTreeSet<Vec<usize>>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        SparsePoly::default()
    }

    pub fn constant(v: bool) -> Self {
        let mut p = SparsePoly::zero();
        if v {
            p.monomials.insert(Vec::new());
        }
        p
    }

    pub fn var(i: usize) -> Self {
        let mut p = SparsePoly::zero();
        p.monomials.insert(vec![i]);
        p
    }

    pub fn from_monomials(monos: impl IntoIterator<Item = Vec<usize>>) -> Self {
        let mut p = SparsePoly::zero();
        for mut m in monos {
            m.sort_unstable();
            m.dedup();
            p.toggle(m);
        }
        p
    }

    pub fn monomials(&self) -> &BTreeSet<Vec<usize>> {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.monomials.iter().map(Vec::len).max().unwrap_or(0)
    }

    fn toggle(&mut self, m: Vec<usize>) {
        if !self.monomials.remove(&m) {
            self.monomials.insert(m);
        }
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        let monomials = self
            .monomials
            .symmetric_difference(&other.monomials)
            .cloned()
            .collect();
        SparsePoly { monomials }
    }

    pub fn add_one(&self) -> SparsePoly {
        self.add(&SparsePoly::constant(true))
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for a in &self.monomials {
            for b in &other.monomials {
                out.toggle(union_sorted(a, b));
            }
        }
        out
    }

    pub fn eval(&self, x: &Bits) -> bool {
        self.monomials
            .iter()
            .filter(|m| m.iter().all(|&i| x.get(i)))
            .count()
            % 2
            == 1
    }
}

fn union_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else if b[j] < a[i] {
            out.push(b[j]);
            j += 1;
        } else {
            out.push(a[i]);
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Syntactic degree bound: INPUT 1, CONST 0, NOT keeps, XOR takes the max, AND/OR add.
pub fn circuit_degree(c: &Gf2Circuit) -> usize {
    let mut deg: Vec<usize> = Vec::with_capacity(c.gates().len());
    for gate in c.gates() {
        let d = match *gate {
            Gate::Input(_) => 1,
            Gate::Const(_) => 0,
            Gate::Not(a) => deg[a],
            Gate::Xor(a, b) => deg[a].max(deg[b]),
            Gate::And(a, b) | Gate::Or(a, b) => deg[a] + deg[b],
        };
        deg.push(d);
    }
    c.outputs().iter().map(|&g| deg[g]).max().unwrap_or(0)
}

/// ANF of every output. OR is expanded as `a + b + ab`.
///
/// Only gates in the cones of the outputs are expanded. Fails with `BudgetExceeded` when a
/// product or an intermediate polynomial would exceed `budget` monomials.
pub fn circuit_to_polynomials(
    c: &Gf2Circuit,
    budget: usize,
) -> Result<Vec<SparsePoly>, CircuitError> {
    let gates = c.gates();
    let mut needed = vec![false; gates.len()];
    for &o in c.outputs() {
        needed[o] = true;
    }
    for g in (0..gates.len()).rev() {
        if needed[g] {
            for op in gates[g].operands() {
                needed[op] = true;
            }
        }
    }
    let over = || CircuitError::BudgetExceeded {
        what: "monomial count",
        limit: budget,
    };
    let mut polys: Vec<Option<SparsePoly>> = vec![None; gates.len()];
    for (g, gate) in gates.iter().enumerate() {
        if !needed[g] {
            continue;
        }
        let get = |i: usize| polys[i].as_ref().expect("operand expanded before use");
        let p = match *gate {
            Gate::Input(i) => SparsePoly::var(i),
            Gate::Const(v) => SparsePoly::constant(v),
            Gate::Not(a) => get(a).add_one(),
            Gate::Xor(a, b) => get(a).add(get(b)),
            Gate::And(a, b) | Gate::Or(a, b) => {
                let (pa, pb) = (get(a), get(b));
                if pa.len().saturating_mul(pb.len()) > budget {
                    return Err(over());
                }
                let prod = pa.mul(pb);
                if matches!(gate, Gate::Or(..)) {
                    pa.add(pb).add(&prod)
                } else {
                    prod
                }
            }
        };
        if p.len() > budget {
            return Err(over());
        }
        polys[g] = Some(p);
    }
    Ok(c.outputs()
        .iter()
        .map(|&o| polys[o].clone().expect("output expanded"))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2core::{enumerate_outputs, CircuitBuilder};
    use crate::rng::{seeded, Rng};

    fn binary(op: fn(&mut CircuitBuilder, usize, usize) -> usize) -> Gf2Circuit {
        let mut b = CircuitBuilder::with_inputs(2);
        let g = op(&mut b, 0, 1);
        b.output(g);
        b.finish("op").unwrap()
    }

    fn monos(p: &SparsePoly) -> Vec<Vec<usize>> {
        p.monomials().iter().cloned().collect()
    }

    #[test]
    fn anf_of_basic_gates() {
        let xor =
            circuit_to_polynomials(&binary(CircuitBuilder::xor), DEFAULT_POLY_BUDGET).unwrap();
        assert_eq!(monos(&xor[0]), vec![vec![0], vec![1]]);
        let and =
            circuit_to_polynomials(&binary(CircuitBuilder::and), DEFAULT_POLY_BUDGET).unwrap();
        assert_eq!(monos(&and[0]), vec![vec![0, 1]]);
        let or = circuit_to_polynomials(&binary(CircuitBuilder::or), DEFAULT_POLY_BUDGET).unwrap();
        assert_eq!(monos(&or[0]), vec![vec![0], vec![0, 1], vec![1]]);
    }

    #[test]
    fn xor_tree_is_linear() {
        let mut b = CircuitBuilder::with_inputs(4);
        let t = b.xor_chain(&[0, 1, 2, 3]);
        b.output(t);
        assert_eq!(circuit_degree(&b.finish("t").unwrap()), 1);
    }

    #[test]
    fn budget_is_enforced() {
        // (x0+x1)(x2+x3)(x4+x5) has 8 monomials
        let mut b = CircuitBuilder::with_inputs(6);
        let s: Vec<usize> = (0..3).map(|k| b.xor(2 * k, 2 * k + 1)).collect();
        let p = b.and_chain(&s);
        b.output(p);
        let c = b.finish("p").unwrap();
        assert_eq!(circuit_to_polynomials(&c, 8).unwrap()[0].len(), 8);
        assert!(circuit_to_polynomials(&c, 7).is_err());
    }

    /// Möbius transform of a truth table: exact ANF, independent of the circuit structure.
    fn mobius_degree(table: &[bool], n: usize) -> usize {
        let mut a: Vec<bool> = table.to_vec();
        // table is indexed by lex index; lex bit for input i is bit (n-1-i)
        for k in 0..n {
            for v in 0..(1usize << n) {
                if v & (1 << k) != 0 {
                    a[v] ^= a[v ^ (1 << k)];
                }
            }
        }
        (0..(1usize << n))
            .filter(|&v| a[v])
            .map(|v| v.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn anf_matches_eval_and_degree_bound_holds() {
        let mut rng = seeded(42);
        for _ in 0..60 {
            let n = rng.random_range(1..=6);
            let mut b = CircuitBuilder::with_inputs(n);
            for _ in 0..rng.random_range(1..20) {
                let k = b.gate_count();
                let (x, y) = (rng.random_range(0..k), rng.random_range(0..k));
                match rng.random_range(0..5) {
                    0 => b.not(x),
                    1 => b.and(x, y),
                    2 => b.or(x, y),
                    3 => b.xor(x, y),
                    _ => b.constant(rng.random()),
                };
            }
            let k = b.gate_count();
            for _ in 0..3 {
                b.output(rng.random_range(0..k));
            }
            let c = b.finish("r").unwrap();
            let polys = circuit_to_polynomials(&c, DEFAULT_POLY_BUDGET).unwrap();
            let mut tables = vec![Vec::new(); c.m()];
            enumerate_outputs(&c, 8, |idx, y| {
                let x = Bits::from_lex_index(idx, n);
                for j in 0..c.m() {
                    assert_eq!(polys[j].eval(&x), y.get(j));
                    tables[j].push(y.get(j));
                }
            })
            .unwrap();
            let exact = tables.iter().map(|t| mobius_degree(t, n)).max().unwrap();
            assert!(circuit_degree(&c) >= exact);
            assert_eq!(polys.iter().map(SparsePoly::degree).max().unwrap(), exact);
        }
    }
}
