//! Circuit intermediate representation over GF(2).
//!
//! A [`Gf2Circuit`] is a list of fan-in-2 gates in topological order. Gate ids are dense
//! indices into that list, assigned in definition order; the CNF encodings number their
//! `hist` variables in the same order.

mod eval;
mod poly;

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

pub use eval::{
    enumerate_outputs, eval_circuit, eval_gate_values, eval_words, output_table, range_sorted,
    ENUMERATION_LIMIT,
};
pub use poly::{circuit_degree, circuit_to_polynomials, SparsePoly, DEFAULT_POLY_BUDGET};

pub type GateId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gate {
    Input(usize),
    Const(bool),
    Not(GateId),
    And(GateId, GateId),
    Or(GateId, GateId),
    Xor(GateId, GateId),
}

impl Gate {
    pub fn operands(&self) -> impl Iterator<Item = GateId> {
        let (a, b) = match *self {
            Gate::Input(_) | Gate::Const(_) => (None, None),
            Gate::Not(a) => (Some(a), None),
            Gate::And(a, b) | Gate::Or(a, b) | Gate::Xor(a, b) => (Some(a), Some(b)),
        };
        a.into_iter().chain(b)
    }

    pub fn is_input(&self) -> bool {
        matches!(self, Gate::Input(_))
    }

    /// Applies the gate's boolean operation to operand values (ignored for INPUT/CONST).
    pub fn apply(&self, a: bool, b: bool) -> bool {
        match *self {
            Gate::Input(_) => a,
            Gate::Const(c) => c,
            Gate::Not(_) => !a,
            Gate::And(..) => a & b,
            Gate::Or(..) => a | b,
            Gate::Xor(..) => a ^ b,
        }
    }

    pub fn op_name(&self) -> &'static str {
        match self {
            Gate::Input(_) => "INPUT",
            Gate::Const(_) => "CONST",
            Gate::Not(_) => "NOT",
            Gate::And(..) => "AND",
            Gate::Or(..) => "OR",
            Gate::Xor(..) => "XOR",
        }
    }

    fn remap(&self, f: impl Fn(GateId) -> GateId) -> Gate {
        match *self {
            Gate::Input(i) => Gate::Input(i),
            Gate::Const(c) => Gate::Const(c),
            Gate::Not(a) => Gate::Not(f(a)),
            Gate::And(a, b) => Gate::And(f(a), f(b)),
            Gate::Or(a, b) => Gate::Or(f(a), f(b)),
            Gate::Xor(a, b) => Gate::Xor(f(a), f(b)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("gate {gate} references operand {operand} that is not an earlier gate")]
    OperandNotEarlier { gate: GateId, operand: GateId },
    #[error("gate {gate} reads input {index} but the circuit has {inputs} inputs")]
    InputOutOfRange {
        gate: GateId,
        index: usize,
        inputs: usize,
    },
    #[error("output {output} points at missing gate {gate}")]
    OutputOutOfRange { output: usize, gate: GateId },
    #[error("expected a bit string of length {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("row {row} selects output {index}, circuit has {outputs} outputs")]
    IndexOutOfRange {
        row: usize,
        index: usize,
        outputs: usize,
    },
    #[error("{what} exceeds budget {limit}")]
    BudgetExceeded { what: &'static str, limit: usize },
}

/// A fan-in-2 boolean circuit over `{INPUT, CONST, NOT, AND, OR, XOR}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gf2Circuit {
    name: String,
    inputs: usize,
    gates: Vec<Gate>,
    outputs: Vec<GateId>,
}

impl Gf2Circuit {
    /// Validates topological order, input indices and output targets.
    pub fn new(
        name: impl Into<String>,
        inputs: usize,
        gates: Vec<Gate>,
        outputs: Vec<GateId>,
    ) -> Result<Self, CircuitError> {
        for (id, gate) in gates.iter().enumerate() {
            if let Gate::Input(index) = *gate {
                if index >= inputs {
                    return Err(CircuitError::InputOutOfRange {
                        gate: id,
                        index,
                        inputs,
                    });
                }
            }
            for operand in gate.operands() {
                if operand >= id {
                    return Err(CircuitError::OperandNotEarlier { gate: id, operand });
                }
            }
        }
        for (output, &gate) in outputs.iter().enumerate() {
            if gate >= gates.len() {
                return Err(CircuitError::OutputOutOfRange { output, gate });
            }
        }
        Ok(Gf2Circuit {
            name: name.into(),
            inputs,
            gates,
            outputs,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Number of inputs `n`.
    pub fn n(&self) -> usize {
        self.inputs
    }

    /// Number of outputs `m`.
    pub fn m(&self) -> usize {
        self.outputs.len()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn outputs(&self) -> &[GateId] {
        &self.outputs
    }

    /// Gates other than INPUT; these carry a `hist` variable in the CNF encodings.
    pub fn internal_gate_count(&self) -> usize {
        self.gates.iter().filter(|g| !g.is_input()).count()
    }

    /// Input indices syntactically reachable from `gate`.
    pub fn input_support(&self, gate: GateId) -> BTreeSet<usize> {
        let mut seen = alloc::vec![false; self.gates.len()];
        let mut stack = alloc::vec![gate];
        let mut support = BTreeSet::new();
        while let Some(g) = stack.pop() {
            if seen[g] {
                continue;
            }
            seen[g] = true;
            match self.gates[g] {
                Gate::Input(i) => {
                    support.insert(i);
                }
                other => stack.extend(other.operands()),
            }
        }
        support
    }
}

/// Incremental construction of a [`Gf2Circuit`]; gate ids come back from each call.
#[derive(Clone, Debug, Default)]
pub struct CircuitBuilder {
    inputs: usize,
    gates: Vec<Gate>,
    outputs: Vec<GateId>,
}

impl CircuitBuilder {
    /// A builder whose first `inputs` gates are `INPUT 0..inputs`, so input `i` is gate `i`.
    pub fn with_inputs(inputs: usize) -> Self {
        CircuitBuilder {
            inputs,
            gates: (0..inputs).map(Gate::Input).collect(),
            outputs: Vec::new(),
        }
    }

    /// A builder with no predeclared gates.
    pub fn empty(inputs: usize) -> Self {
        CircuitBuilder {
            inputs,
            gates: Vec::new(),
            outputs: Vec::new(),
        }
    }

    /// Starts from the gates of an existing circuit, keeping their ids.
    pub fn from_circuit(c: &Gf2Circuit) -> Self {
        CircuitBuilder {
            inputs: c.inputs,
            gates: c.gates.clone(),
            outputs: Vec::new(),
        }
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    pub fn push(&mut self, gate: Gate) -> GateId {
        self.gates.push(gate);
        self.gates.len() - 1
    }

    pub fn input(&mut self, i: usize) -> GateId {
        self.push(Gate::Input(i))
    }

    pub fn constant(&mut self, v: bool) -> GateId {
        self.push(Gate::Const(v))
    }

    pub fn not(&mut self, a: GateId) -> GateId {
        self.push(Gate::Not(a))
    }

    pub fn and(&mut self, a: GateId, b: GateId) -> GateId {
        self.push(Gate::And(a, b))
    }

    pub fn or(&mut self, a: GateId, b: GateId) -> GateId {
        self.push(Gate::Or(a, b))
    }

    pub fn xor(&mut self, a: GateId, b: GateId) -> GateId {
        self.push(Gate::Xor(a, b))
    }

    /// Left-deep XOR chain over `terms`; a single term is returned as is and an empty
    /// list becomes a `CONST 0` gate.
    pub fn xor_chain(&mut self, terms: &[GateId]) -> GateId {
        match terms.split_first() {
            None => self.constant(false),
            Some((&first, rest)) => rest.iter().fold(first, |acc, &t| self.xor(acc, t)),
        }
    }

    /// Left-deep AND chain; an empty list becomes `CONST 1`.
    pub fn and_chain(&mut self, terms: &[GateId]) -> GateId {
        match terms.split_first() {
            None => self.constant(true),
            Some((&first, rest)) => rest.iter().fold(first, |acc, &t| self.and(acc, t)),
        }
    }

    /// Copies `sub`'s gates, wiring its `INPUT i` to `input_map[i]`, and returns the ids of
    /// `sub`'s outputs inside this builder.
    pub fn instantiate(&mut self, sub: &Gf2Circuit, input_map: &[GateId]) -> Vec<GateId> {
        let mut ids = Vec::with_capacity(sub.gates.len());
        for gate in &sub.gates {
            let id = match *gate {
                Gate::Input(i) => input_map[i],
                other => self.push(other.remap(|g| ids[g])),
            };
            ids.push(id);
        }
        sub.outputs.iter().map(|&o| ids[o]).collect()
    }

    pub fn output(&mut self, gate: GateId) -> usize {
        self.outputs.push(gate);
        self.outputs.len() - 1
    }

    pub fn finish(self, name: impl Into<String>) -> Result<Gf2Circuit, CircuitError> {
        Gf2Circuit::new(name, self.inputs, self.gates, self.outputs)
    }
}

/// One output of a linear layer: XOR of the selected old outputs, plus a constant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearRow {
    pub vars: BTreeSet<usize>,
    pub constant: bool,
}

impl LinearRow {
    pub fn new(vars: impl IntoIterator<Item = usize>, constant: bool) -> Self {
        LinearRow {
            vars: vars.into_iter().collect(),
            constant,
        }
    }
}

/// Replaces the outputs of `c` by the XOR rows in `rows`.
///
/// Every existing gate keeps its id. A row becomes a left-deep chain of fan-in-2 XOR gates
/// over the selected outputs (in increasing index order), followed by a NOT when the
/// constant is 1. A single-element row with constant 0 reuses the selected output gate.
/// An empty row emits a `CONST` gate with the row's constant.
pub fn append_linear_layer(c: &Gf2Circuit, rows: &[LinearRow]) -> Result<Gf2Circuit, CircuitError> {
    for (r, row) in rows.iter().enumerate() {
        if let Some(&index) = row.vars.iter().find(|&&j| j >= c.m()) {
            return Err(CircuitError::IndexOutOfRange {
                row: r,
                index,
                outputs: c.m(),
            });
        }
    }
    let mut b = CircuitBuilder::from_circuit(c);
    for row in rows {
        let out = if row.vars.is_empty() {
            b.constant(row.constant)
        } else {
            let terms: Vec<GateId> = row.vars.iter().map(|&j| c.outputs[j]).collect();
            let x = b.xor_chain(&terms);
            if row.constant {
                b.not(x)
            } else {
                x
            }
        };
        b.output(out);
    }
    b.finish(c.name.clone())
}
