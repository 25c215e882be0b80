//! Candidate stretching generators: Goldreich's local PRG, the LPN generator with a sparse
//! error encoder, the truth-table generator, and a planted random circuit for tests.

mod goldreich;
mod lpn;
mod planted;
mod truth_table;

use thiserror::Error;

use crate::gf2core::{CircuitError, Gf2Circuit};

pub use goldreich::{build_goldreich, mst06_predicate, sample_hypergraph, Hypergraph};
pub use lpn::{
    build_lpn_generator, build_sparse_encoder, encoder_input_len, sparse_preimage, LpnParams,
};
pub use planted::{build_planted_generator, random_circuit};
pub use truth_table::{tt_desc_len, tt_evaluate, tt_index_width, TtOp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("predicate has {found} inputs but edges have arity {expected}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("edge arity {d} exceeds vertex count {n}")]
    DTooLarge { d: usize, n: usize },
    #[error("sparsity {s} too large for m={m}, d={d}")]
    SparsityTooLarge { m: usize, s: usize, d: usize },
    #[error("vector weight {weight} exceeds sparsity {s}")]
    WeightTooLarge { weight: usize, s: usize },
    #[error("gate budget {budget} below the {needed} gates required")]
    BudgetTooSmall { budget: usize, needed: usize },
    #[error("output length {n_out} does not exceed input length {n_in}")]
    NotStretching { n_in: usize, n_out: usize },
    #[error("invalid hypergraph: {0}")]
    BadHypergraph(&'static str),
    #[error("invalid LPN parameters: {0}")]
    BadParams(&'static str),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    Goldreich {
        graph: Hypergraph,
        predicate: Gf2Circuit,
    },
    Lpn(LpnParams),
    TruthTable {
        n: usize,
        s: usize,
    },
    Planted {
        n: usize,
        n_out: usize,
        seed: u64,
        gate_budget: usize,
    },
    Circuit(Gf2Circuit),
}

/// A stretching generator `{0,1}^n_in -> {0,1}^n_out`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    kind: GeneratorKind,
    n_in: usize,
    n_out: usize,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind) -> Result<Self, GenError> {
        let (n_in, n_out) = match &kind {
            GeneratorKind::Goldreich { graph, predicate } => {
                if predicate.n() != graph.d() || predicate.m() != 1 {
                    return Err(GenError::ArityMismatch {
                        expected: graph.d(),
                        found: predicate.n(),
                    });
                }
                (graph.n(), graph.edges().len())
            }
            GeneratorKind::Lpn(p) => (encoder_input_len(p.m, p.sparsity(), p.d) + p.n, p.m),
            GeneratorKind::TruthTable { n, s } => (
                tt_desc_len(*n, *s),
                1usize.checked_shl(*n as u32).unwrap_or(0),
            ),
            GeneratorKind::Planted { n, n_out, .. } => (*n, *n_out),
            GeneratorKind::Circuit(c) => (c.n(), c.m()),
        };
        if n_in >= n_out {
            return Err(GenError::NotStretching { n_in, n_out });
        }
        Ok(GeneratorSpec { kind, n_in, n_out })
    }

    pub fn kind(&self) -> &GeneratorKind {
        &self.kind
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    /// Circuit realization; `None` for the truth-table generator, which is evaluated
    /// directly by [`tt_evaluate`].
    pub fn circuit(&self) -> Result<Option<Gf2Circuit>, GenError> {
        Ok(Some(match &self.kind {
            GeneratorKind::Goldreich { graph, predicate } => build_goldreich(graph, predicate)?,
            GeneratorKind::Lpn(p) => build_lpn_generator(p)?,
            GeneratorKind::TruthTable { .. } => return Ok(None),
            GeneratorKind::Planted {
                n,
                n_out,
                seed,
                gate_budget,
            } => build_planted_generator(*n, *n_out, *seed, *gate_budget)?,
            GeneratorKind::Circuit(c) => c.clone(),
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_enforces_stretch() {
        let g = sample_hypergraph(5, 8, 5, 1).unwrap();
        let spec = GeneratorSpec::new(GeneratorKind::Goldreich {
            graph: g,
            predicate: mst06_predicate(),
        })
        .unwrap();
        assert_eq!((spec.n_in(), spec.n_out()), (5, 8));
        assert_eq!(spec.circuit().unwrap().unwrap().m(), 8);
        let g = sample_hypergraph(5, 5, 5, 1).unwrap();
        assert_eq!(
            GeneratorSpec::new(GeneratorKind::Goldreich {
                graph: g,
                predicate: mst06_predicate()
            }),
            Err(GenError::NotStretching { n_in: 5, n_out: 5 })
        );
        let tt = GeneratorSpec::new(GeneratorKind::TruthTable { n: 6, s: 2 }).unwrap();
        assert_eq!((tt.n_in(), tt.n_out()), (2 * (2 + 6), 64));
        assert_eq!(tt.circuit(), Ok(None));
    }
}
