use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use super::linalg::{solve_system, Equation};
use super::proof::ResXorProof;
use super::refute::{expand_equation, refute_linear_cnf, RefuteError};
use super::{form_xor, Form, LinearClause};
use crate::avoid::AvoidError;
use crate::bits::Bits;
use crate::cnf::{encode_tau, CnfError, CnfFormula};
use crate::extract::{
    key_to_xor_rows, sample_key_with, toeplitz_apply, ExtractError, ExtractorKey,
};
use crate::gf2core::{range_sorted, CircuitBuilder, Gate, Gf2Circuit};
use crate::rng::{seeded, Rng};

/// Why a destination clause holds after substitution.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Justification {
    /// The substituted clause is a tautology.
    Taut,
    /// The substituted clause equals source axiom `i`.
    Axiom(usize),
    /// The substituted unit equation is the XOR of these width-1 source axioms.
    XorAx(Vec<usize>),
}

/// A linear map from source assignments to destination assignments plus one
/// [`Justification`] per destination clause.
///
/// `rows[y - 1]` is the form over source variables that destination variable `y` reads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityReduction {
    pub src_vars: usize,
    pub dst_vars: usize,
    pub rows: Vec<Form>,
    pub justifications: Vec<Justification>,
}

impl ParityReduction {
    pub fn substitute(&self, clause: &LinearClause) -> LinearClause {
        clause.substitute(|y| self.rows[y - 1].clone())
    }

    /// Destination assignment induced by a source assignment (index `v - 1` holds `v`).
    pub fn apply(&self, src: &[bool]) -> Vec<bool> {
        self.rows
            .iter()
            .map(|f| f.iter().fold(false, |acc, &v| acc ^ src[v - 1]))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("reduction dimensions do not match the formulas")]
    DimMismatch,
    #[error("clause {clause}: justification refers to missing source axiom {index}")]
    BadJustificationIndex { clause: usize, index: usize },
    #[error("clause {clause}: XOR justification needs width-1 clauses")]
    WidthViolation { clause: usize },
    #[error("clause {clause}: {reason}")]
    Violation { clause: usize, reason: &'static str },
    #[error(transparent)]
    Avoid(#[from] AvoidError),
    #[error(transparent)]
    Cnf(#[from] CnfError),
    #[error(transparent)]
    Extract(#[from] ExtractError),
    #[error(transparent)]
    Refute(#[from] RefuteError),
}

/// Verifies every justification of `red`, which reduces `f` (source) to `g` (destination).
pub fn check_parity_reduction(
    f: &CnfFormula,
    g: &CnfFormula,
    red: &ParityReduction,
) -> Result<(), ReductionError> {
    if red.src_vars != f.num_vars()
        || red.dst_vars != g.num_vars()
        || red.rows.len() != g.num_vars()
        || red.justifications.len() != g.clauses().len()
        || red.rows.iter().any(|r| {
            r.iter().any(|&v| v == 0 || v > f.num_vars()) || !r.windows(2).all(|w| w[0] < w[1])
        })
    {
        return Err(ReductionError::DimMismatch);
    }
    for (k, (clause, just)) in g.clauses().iter().zip(&red.justifications).enumerate() {
        let sub = red.substitute(&LinearClause::from_cnf(clause));
        match just {
            Justification::Taut => {
                let neg: Vec<Equation> = sub
                    .lits()
                    .iter()
                    .map(|(form, b)| (form.clone(), !*b))
                    .collect();
                if solve_system(&neg).is_some() {
                    return Err(ReductionError::Violation {
                        clause: k,
                        reason: "substituted clause is not a tautology",
                    });
                }
            }
            Justification::Axiom(i) => {
                let ax = f
                    .clauses()
                    .get(*i)
                    .ok_or(ReductionError::BadJustificationIndex {
                        clause: k,
                        index: *i,
                    })?;
                if LinearClause::from_cnf(ax) != sub {
                    return Err(ReductionError::Violation {
                        clause: k,
                        reason: "substituted clause differs from the axiom",
                    });
                }
            }
            Justification::XorAx(list) => {
                if clause.len() != 1 {
                    return Err(ReductionError::WidthViolation { clause: k });
                }
                let mut acc: Equation = (Vec::new(), false);
                for &i in list {
                    let ax = f
                        .clauses()
                        .get(i)
                        .ok_or(ReductionError::BadJustificationIndex {
                            clause: k,
                            index: i,
                        })?;
                    if ax.len() != 1 {
                        return Err(ReductionError::WidthViolation { clause: k });
                    }
                    acc = (
                        form_xor(&acc.0, &[ax[0].unsigned_abs() as usize]),
                        acc.1 ^ (ax[0] > 0),
                    );
                }
                let l = clause[0];
                let target: Equation = (red.rows[l.unsigned_abs() as usize - 1].clone(), l > 0);
                if acc != target {
                    return Err(ReductionError::Violation {
                        clause: k,
                        reason: "XOR of axioms differs from the clause",
                    });
                }
            }
        }
    }
    Ok(())
}

/// The reduction from `tau_y(G)` to `tau_z(C_r)` with `z = Ext(y, r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalReduction {
    pub reduction: ParityReduction,
    pub z: Bits,
    /// `C_r`, the generator followed by the key's XOR layer.
    pub composed: Gf2Circuit,
    /// `tau_y(G)`.
    pub source: CnfFormula,
    /// `tau_z(C_r)`.
    pub target: CnfFormula,
}

/// Builds the simple parity reduction from `tau_y(G)` to `tau_z(C_r)`.
///
/// Inputs and gates of `G` keep their variables. Each XOR-layer gate reads the XOR of the
/// `G` output variables in its cone and each constant gate reads the empty form. Gate
/// clauses of `G` are justified by the identical source axioms, XOR-layer gate clauses are
/// tautologies, and the unit clause of output `i` is the XOR of the source output axioms
/// selected by key row `i`.
pub fn build_canonical_reduction(
    g: &Gf2Circuit,
    key: &ExtractorKey,
    y: &Bits,
) -> Result<CanonicalReduction, ReductionError> {
    if key.input_len() != g.m() || y.len() != g.m() {
        return Err(AvoidError::DimMismatch {
            key: key.input_len(),
            outputs: g.m(),
        }
        .into());
    }
    let z = toeplitz_apply(key, y)?;
    let rows = key_to_xor_rows(key);
    let composed = crate::gf2core::append_linear_layer(g, &rows)
        .map_err(AvoidError::from)?
        .with_name("composed");
    let source = encode_tau(g, y)?;
    let target = encode_tau(&composed, &z)?;
    let n = g.n();
    // variable of each gate, identical in both encodings for the gates of G
    let mut var_of: Vec<usize> = Vec::with_capacity(composed.gates().len());
    let mut next = n + 1;
    for gate in composed.gates() {
        var_of.push(match *gate {
            Gate::Input(i) => i + 1,
            _ => {
                next += 1;
                next - 1
            }
        });
    }
    let g_gates = g.gates().len();
    let mut form_of: Vec<Form> = Vec::with_capacity(composed.gates().len());
    for (id, gate) in composed.gates().iter().enumerate() {
        let form = if id < g_gates {
            vec![var_of[id]]
        } else {
            match *gate {
                Gate::Xor(a, b) => form_xor(&form_of[a], &form_of[b]),
                Gate::Const(false) => Vec::new(),
                _ => unreachable!("the XOR layer has no constants or negations"),
            }
        };
        form_of.push(form);
    }
    let mut reduction_rows = vec![Vec::new(); target.num_vars()];
    for (id, gate) in composed.gates().iter().enumerate() {
        if !gate.is_input() || id < g_gates {
            reduction_rows[var_of[id] - 1] = form_of[id].clone();
        }
    }
    let gate_clauses = source.clauses().len() - g.m();
    let layer_clauses = target.clauses().len() - composed.m() - gate_clauses;
    let mut justifications: Vec<Justification> =
        (0..gate_clauses).map(Justification::Axiom).collect();
    justifications.extend((0..layer_clauses).map(|_| Justification::Taut));
    for row in &rows {
        justifications.push(if row.vars.is_empty() {
            Justification::Taut
        } else {
            Justification::XorAx(row.vars.iter().map(|&j| gate_clauses + j).collect())
        });
    }
    let reduction = ParityReduction {
        src_vars: source.num_vars(),
        dst_vars: target.num_vars(),
        rows: reduction_rows,
        justifications,
    };
    Ok(CanonicalReduction {
        reduction,
        z,
        composed,
        source,
        target,
    })
}

/// A source CNF, a destination CNF, a reduction between them and a refutation of the
/// destination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCase {
    pub source: CnfFormula,
    pub target: CnfFormula,
    pub reduction: ParityReduction,
    pub proof: ResXorProof,
}

/// Equations whose clausal expansions make up `tau_b(c)`, or `None` when `c` has a
/// non-linear gate or an XOR with repeated operands.
pub fn circuit_equations(c: &Gf2Circuit, b: &Bits) -> Option<Vec<Equation>> {
    let mut var_of = Vec::with_capacity(c.gates().len());
    let mut next = c.n() + 1;
    for gate in c.gates() {
        var_of.push(match *gate {
            Gate::Input(i) => i + 1,
            _ => {
                next += 1;
                next - 1
            }
        });
    }
    let mut eqs = Vec::new();
    for (id, gate) in c.gates().iter().enumerate() {
        let v = var_of[id];
        let eq = match *gate {
            Gate::Input(_) => continue,
            Gate::Const(k) => (vec![v], k),
            Gate::Not(a) => (super::normalize_form(vec![v, var_of[a]]), true),
            Gate::Xor(a, bb) if var_of[a] != var_of[bb] => {
                (super::normalize_form(vec![v, var_of[a], var_of[bb]]), false)
            }
            _ => return None,
        };
        eqs.push(eq);
    }
    for (j, &o) in c.outputs().iter().enumerate() {
        eqs.push((vec![var_of[o]], b.get(j)));
    }
    Some(eqs)
}

/// A linear random circuit: XOR gates over distinct earlier gates and NOT gates.
fn linear_circuit(n: usize, gates: usize, m: usize, rng: &mut impl Rng) -> Gf2Circuit {
    let mut b = CircuitBuilder::with_inputs(n);
    for _ in 0..gates {
        let k = b.gate_count();
        let a = rng.random_range(0..k);
        if k >= 2 && rng.random_range(0..4) != 0 {
            let mut c = rng.random_range(0..k - 1);
            if c >= a {
                c += 1;
            }
            b.xor(a, c);
        } else {
            b.not(a);
        }
    }
    // distinct output gates, so no XOR of the layer reads one gate twice
    let mut pool: Vec<usize> = (n..b.gate_count()).collect();
    for i in 0..m {
        let j = rng.random_range(i..pool.len());
        pool.swap(i, j);
        b.output(pool[i]);
    }
    b.finish("linear").expect("operands precede gates")
}

/// A canonical reduction case over a linear generator, with `z` outside the range of `C_r` so
/// that `tau_z(C_r)` is refuted by Gaussian elimination. Tries successive sub-seeds until
/// such a `z` appears.
pub fn sample_linear_canonical_case(
    seed: u64,
) -> Result<(ReductionCase, Gf2Circuit, ExtractorKey, Bits), ReductionError> {
    let mut rng = seeded(seed);
    loop {
        let n = rng.random_range(1..=3usize);
        let m = rng.random_range(n + 2..=n + 4);
        let g = linear_circuit(n, rng.random_range(m..=m + 4), m, &mut rng);
        let key = sample_key_with(m, rng.random_range(n + 1..=m), &mut rng)?;
        let y = Bits::random(m, &mut rng);
        let canon = build_canonical_reduction(&g, &key, &y)?;
        let range = range_sorted(&canon.composed, 8).map_err(AvoidError::from)?;
        if range.binary_search(&canon.z).is_ok() {
            continue;
        }
        let eqs = circuit_equations(&canon.composed, &canon.z).expect("linear circuit");
        let proof = refute_linear_cnf(&canon.target, &eqs)?;
        let case = ReductionCase {
            source: canon.source,
            target: canon.target,
            reduction: canon.reduction,
            proof,
        };
        return Ok((case, g, key, y));
    }
}

/// A random reduction from an unsatisfiable width-1 source system.
///
/// The source has unit axioms on some of `x_1..x_n` (one variable carries both values) and
/// a few wider clauses. Destination variables `y_1..y_n` copy the `x` variables and the
/// remaining ones read XORs of them. The destination states the unit axioms on the copies,
/// the defining equations of the XOR variables (tautologies after substitution) and unit
/// equations on the XOR variables (XORs of source axioms). It is refuted by Gaussian
/// elimination.
pub fn sample_reduction_case(seed: u64) -> Result<ReductionCase, ReductionError> {
    let mut rng = seeded(seed);
    let n = rng.random_range(3..=6usize);
    let conflict = rng.random_range(1..=n);
    let mut src: Vec<Vec<i32>> = Vec::new();
    // axiom index of (x_v = b)
    let mut unit_of: BTreeMap<(usize, bool), usize> = BTreeMap::new();
    for v in 1..=n {
        let vals: Vec<bool> = if v == conflict {
            vec![false, true]
        } else if rng.random_range(0..4) != 0 {
            vec![rng.random()]
        } else {
            vec![]
        };
        for b in vals {
            unit_of.insert((v, b), src.len());
            src.push(vec![if b { v as i32 } else { -(v as i32) }]);
        }
    }
    let wide: Vec<Vec<i32>> = (0..rng.random_range(0..3))
        .map(|_| {
            let mut vars: Vec<usize> = (1..=n).collect();
            for i in 0..vars.len() {
                let j = rng.random_range(i..vars.len());
                vars.swap(i, j);
            }
            vars[..rng.random_range(2..=3.min(n))]
                .iter()
                .map(|&v| if rng.random() { v as i32 } else { -(v as i32) })
                .collect()
        })
        .collect();
    let wide_start = src.len();
    src.extend(wide.iter().cloned());
    let source = CnfFormula::new(n, src.clone(), BTreeMap::new())?;

    let with_units: Vec<usize> = (1..=n)
        .filter(|v| unit_of.contains_key(&(*v, false)) || unit_of.contains_key(&(*v, true)))
        .collect();
    // (equation, justification for each of its expansion clauses)
    let mut eqs: Vec<(Equation, Justification)> = Vec::new();
    for &v in &with_units {
        let b = if v == conflict {
            false
        } else {
            unit_of.contains_key(&(v, true))
        };
        let ax = unit_of[&(v, b)];
        let just = if rng.random() {
            Justification::Axiom(ax)
        } else {
            Justification::XorAx(vec![ax])
        };
        eqs.push(((vec![v], b), just));
    }
    let layer = rng.random_range(1..=4usize);
    let mut rows: Vec<Form> = (1..=n).map(|v| vec![v]).collect();
    for k in 0..layer {
        let y = n + 1 + k;
        let mut set: Vec<usize> = with_units
            .iter()
            .copied()
            .filter(|_| rng.random())
            .collect();
        if k == 0 && !set.contains(&conflict) {
            set.push(conflict);
            set.sort_unstable();
        }
        if set.is_empty() {
            set.push(with_units[rng.random_range(0..with_units.len())]);
        }
        let mut axioms = Vec::new();
        let mut rhs = false;
        for &v in &set {
            // the first layer variable reads the conflicting value of x_conflict
            let b = if v == conflict {
                k == 0 || rng.random()
            } else {
                unit_of.contains_key(&(v, true))
            };
            axioms.push(unit_of[&(v, b)]);
            rhs ^= b;
        }
        let mut def = set.clone();
        def.push(y);
        eqs.push(((def, false), Justification::Taut));
        eqs.push(((vec![y], rhs), Justification::XorAx(axioms)));
        rows.push(set);
    }
    let dst_vars = n + layer;
    let mut clauses = Vec::new();
    let mut justifications = Vec::new();
    for ((form, b), just) in &eqs {
        for c in expand_equation(form, *b) {
            clauses.push(c);
            justifications.push(just.clone());
        }
    }
    for (i, c) in wide.iter().enumerate() {
        clauses.push(c.clone());
        justifications.push(Justification::Axiom(wide_start + i));
    }
    let target = CnfFormula::new(dst_vars, clauses, BTreeMap::new())?;
    let reduction = ParityReduction {
        src_vars: n,
        dst_vars,
        rows,
        justifications,
    };
    let system: Vec<Equation> = eqs.into_iter().map(|(e, _)| e).collect();
    let proof = refute_linear_cnf(&target, &system)?;
    Ok(ReductionCase {
        source,
        target,
        reduction,
        proof,
    })
}
