use alloc::vec::Vec;

use super::GenError;
use crate::gf2core::{CircuitBuilder, Gf2Circuit};
use crate::rng::{seeded, Rng};

/// A `d`-uniform hypergraph on `n` vertices with an ordered edge list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    d: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(n: usize, d: usize, edges: Vec<Vec<usize>>) -> Result<Self, GenError> {
        for e in &edges {
            if e.len() != d {
                return Err(GenError::BadHypergraph("edge arity differs from d"));
            }
            if e.iter().any(|&v| v >= n) {
                return Err(GenError::BadHypergraph("vertex index out of range"));
            }
            if (1..e.len()).any(|i| e[..i].contains(&e[i])) {
                return Err(GenError::BadHypergraph("repeated vertex in edge"));
            }
        }
        Ok(Hypergraph { n, d, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }
}

/// `m` edges of `d` distinct vertices each, drawn uniformly by rejection sampling.
pub fn sample_hypergraph(n: usize, m: usize, d: usize, seed: u64) -> Result<Hypergraph, GenError> {
    if d > n {
        return Err(GenError::DTooLarge { d, n });
    }
    let mut rng = seeded(seed);
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let mut e: Vec<usize> = Vec::with_capacity(d);
        while e.len() < d {
            let v = rng.random_range(0..n);
            if !e.contains(&v) {
                e.push(v);
            }
        }
        edges.push(e);
    }
    Ok(Hypergraph { n, d, edges })
}

/// `P(x1..x5) = x1 + x2 + x3 + x4 x5`.
pub fn mst06_predicate() -> Gf2Circuit {
    let mut b = CircuitBuilder::with_inputs(5);
    let s = b.xor_chain(&[0, 1, 2]);
    let q = b.and(3, 4);
    let out = b.xor(s, q);
    b.output(out);
    b.finish("mst06").expect("well-formed predicate")
}

/// Output `i` applies `predicate` to the input bits named by edge `i`, in edge order.
pub fn build_goldreich(g: &Hypergraph, predicate: &Gf2Circuit) -> Result<Gf2Circuit, GenError> {
    if predicate.n() != g.d || predicate.m() != 1 {
        return Err(GenError::ArityMismatch {
            expected: g.d,
            found: predicate.n(),
        });
    }
    let mut b = CircuitBuilder::with_inputs(g.n);
    for e in &g.edges {
        let out = b.instantiate(predicate, e)[0];
        b.output(out);
    }
    Ok(b.finish("goldreich")?)
}
