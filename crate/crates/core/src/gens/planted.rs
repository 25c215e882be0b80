use super::GenError;
use crate::gf2core::{CircuitBuilder, Gf2Circuit};
use crate::rng::{seeded, Rng, SeededRng};

fn random_gate(b: &mut CircuitBuilder, rng: &mut SeededRng) -> usize {
    let k = b.gate_count();
    let (x, y) = (rng.random_range(0..k), rng.random_range(0..k));
    match rng.random_range(0..4) {
        0 => b.and(x, y),
        1 => b.or(x, y),
        2 => b.xor(x, y),
        _ => b.not(x),
    }
}

/// A random stretching circuit `{0,1}^n -> {0,1}^n_out` with exactly `gate_budget` gates
/// (inputs included). Non-input gates draw AND/OR/XOR/NOT uniformly over earlier gates and
/// the outputs are the last `n_out` gates, so every output depends on some input.
pub fn build_planted_generator(
    n: usize,
    n_out: usize,
    seed: u64,
    gate_budget: usize,
) -> Result<Gf2Circuit, GenError> {
    if n_out <= n {
        return Err(GenError::NotStretching { n_in: n, n_out });
    }
    if n == 0 {
        return Err(GenError::BadParams(
            "planted generator needs at least one input",
        ));
    }
    if gate_budget < n + n_out {
        return Err(GenError::BudgetTooSmall {
            budget: gate_budget,
            needed: n + n_out,
        });
    }
    let mut rng = seeded(seed);
    let mut b = CircuitBuilder::with_inputs(n);
    for _ in n..gate_budget {
        random_gate(&mut b, &mut rng);
    }
    for g in gate_budget - n_out..gate_budget {
        b.output(g);
    }
    Ok(b.finish("planted")?)
}

/// A random circuit with `gates` non-input gates and `m` outputs drawn from all gates.
/// Constants appear with small probability so degenerate outputs are exercised.
pub fn random_circuit(n: usize, m: usize, gates: usize, seed: u64) -> Gf2Circuit {
    let mut rng = seeded(seed);
    let mut b = CircuitBuilder::with_inputs(n);
    for _ in 0..gates {
        if b.gate_count() == 0 || rng.random_range(0..10) == 0 {
            b.constant(rng.random());
        } else {
            random_gate(&mut b, &mut rng);
        }
    }
    let total = b.gate_count();
    for _ in 0..m {
        let g = rng.random_range(0..total);
        b.output(g);
    }
    b.finish("random")
        .expect("operands always precede their gate")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2core::range_sorted;

    #[test]
    fn deterministic_and_small_range() {
        let g = build_planted_generator(4, 18, 7, 60).unwrap();
        assert_eq!(g, build_planted_generator(4, 18, 7, 60).unwrap());
        assert_eq!(g.gates().len(), 60);
        assert!(range_sorted(&g, 8).unwrap().len() <= 16);
        for &o in g.outputs() {
            assert!(!g.input_support(o).is_empty());
        }
    }

    #[test]
    fn errors() {
        assert_eq!(
            build_planted_generator(4, 4, 0, 100),
            Err(GenError::NotStretching { n_in: 4, n_out: 4 })
        );
        assert_eq!(
            build_planted_generator(4, 18, 0, 21),
            Err(GenError::BudgetTooSmall {
                budget: 21,
                needed: 22
            })
        );
    }

    #[test]
    fn random_circuit_shape() {
        let c = random_circuit(3, 5, 12, 1);
        assert_eq!((c.n(), c.m(), c.gates().len()), (3, 5, 15));
        let empty = random_circuit(0, 2, 3, 2);
        assert_eq!(empty.n(), 0);
    }
}
