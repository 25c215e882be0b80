use alloc::vec;
use alloc::vec::Vec;

use super::{CircuitError, Gate, Gf2Circuit};
use crate::bits::Bits;

/// Largest input count accepted by the exhaustive enumeration helpers.
pub const ENUMERATION_LIMIT: usize = 24;

/// Value of every gate on input `x`, indexed by gate id.
pub fn eval_gate_values(c: &Gf2Circuit, x: &Bits) -> Result<Vec<bool>, CircuitError> {
    if x.len() != c.n() {
        return Err(CircuitError::LengthMismatch {
            expected: c.n(),
            found: x.len(),
        });
    }
    let mut values: Vec<bool> = Vec::with_capacity(c.gates().len());
    for gate in c.gates() {
        let v = match *gate {
            Gate::Input(i) => x.get(i),
            Gate::Const(b) => b,
            Gate::Not(a) => !values[a],
            Gate::And(a, b) => values[a] & values[b],
            Gate::Or(a, b) => values[a] | values[b],
            Gate::Xor(a, b) => values[a] ^ values[b],
        };
        values.push(v);
    }
    Ok(values)
}

pub fn eval_circuit(c: &Gf2Circuit, x: &Bits) -> Result<Bits, CircuitError> {
    let values = eval_gate_values(c, x)?;
    Ok(c.outputs().iter().map(|&g| values[g]).collect())
}

/// Bitsliced evaluation: `input_words[i]` holds input `i` for 64 parallel lanes.
/// Returns one word per gate.
pub fn eval_words(c: &Gf2Circuit, input_words: &[u64]) -> Vec<u64> {
    let mut w: Vec<u64> = Vec::with_capacity(c.gates().len());
    for gate in c.gates() {
        let v = match *gate {
            Gate::Input(i) => input_words[i],
            Gate::Const(b) => {
                if b {
                    !0
                } else {
                    0
                }
            }
            Gate::Not(a) => !w[a],
            Gate::And(a, b) => w[a] & w[b],
            Gate::Or(a, b) => w[a] | w[b],
            Gate::Xor(a, b) => w[a] ^ w[b],
        };
        w.push(v);
    }
    w
}

/// Calls `f(index, output)` for every input in lexicographic order, where `index` is the
/// lex index of the input string. Fails when `c.n()` exceeds `limit`.
pub fn enumerate_outputs(
    c: &Gf2Circuit,
    limit: usize,
    mut f: impl FnMut(u64, &Bits),
) -> Result<(), CircuitError> {
    let n = c.n();
    if n > limit.min(ENUMERATION_LIMIT) {
        return Err(CircuitError::BudgetExceeded {
            what: "input enumeration",
            limit: limit.min(ENUMERATION_LIMIT),
        });
    }
    let total: u64 = 1 << n;
    let mut out = Bits::zeros(c.m());
    let mut inputs = vec![0u64; n];
    let mut base = 0u64;
    while base < total {
        let lanes = (total - base).min(64);
        for (i, w) in inputs.iter_mut().enumerate() {
            let shift = n - 1 - i;
            let mut word = 0u64;
            for l in 0..lanes {
                word |= (((base + l) >> shift) & 1) << l;
            }
            *w = word;
        }
        let gw = eval_words(c, &inputs);
        for l in 0..lanes {
            for (j, &g) in c.outputs().iter().enumerate() {
                out.set(j, (gw[g] >> l) & 1 == 1);
            }
            f(base + l, &out);
        }
        base += lanes;
    }
    Ok(())
}

/// Output for every input, indexed by the input's lex index.
pub fn output_table(c: &Gf2Circuit, limit: usize) -> Result<Vec<Bits>, CircuitError> {
    let mut table = Vec::with_capacity(1usize << c.n().min(limit));
    enumerate_outputs(c, limit, |_, y| table.push(y.clone()))?;
    Ok(table)
}

/// The range of `c`, sorted and deduplicated.
pub fn range_sorted(c: &Gf2Circuit, limit: usize) -> Result<Vec<Bits>, CircuitError> {
    let mut r = output_table(c, limit)?;
    r.sort_unstable();
    r.dedup();
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2core::CircuitBuilder;
    use crate::rng::{seeded, Rng};

    /// Independent interpreter: recursive evaluation of a gate without memoization.
    fn eval_recursive(c: &Gf2Circuit, g: usize, x: &[bool]) -> bool {
        match c.gates()[g] {
            Gate::Input(i) => x[i],
            Gate::Const(b) => b,
            Gate::Not(a) => !eval_recursive(c, a, x),
            Gate::And(a, b) => eval_recursive(c, a, x) && eval_recursive(c, b, x),
            Gate::Or(a, b) => eval_recursive(c, a, x) || eval_recursive(c, b, x),
            Gate::Xor(a, b) => eval_recursive(c, a, x) != eval_recursive(c, b, x),
        }
    }

    fn random_circuit(seed: u64, n: usize, gates: usize, m: usize) -> Gf2Circuit {
        let mut rng = seeded(seed);
        let mut b = CircuitBuilder::with_inputs(n);
        for _ in 0..gates {
            let k = b.gate_count();
            let a = rng.random_range(0..k);
            let c = rng.random_range(0..k);
            match rng.random_range(0..5) {
                0 => b.not(a),
                1 => b.and(a, c),
                2 => b.or(a, c),
                3 => b.xor(a, c),
                _ => b.constant(rng.random()),
            };
        }
        let k = b.gate_count();
        for _ in 0..m {
            let g = rng.random_range(0..k);
            b.output(g);
        }
        b.finish("rand").unwrap()
    }

    #[test]
    fn xor_of_ones_is_zero() {
        let mut b = CircuitBuilder::with_inputs(2);
        let x = b.xor(0, 1);
        b.output(x);
        let c = b.finish("x").unwrap();
        assert_eq!(
            eval_circuit(&c, &Bits::from_bit_str("11").unwrap())
                .unwrap()
                .to_string(),
            "0"
        );
    }

    #[test]
    fn and_of_not() {
        let mut b = CircuitBuilder::with_inputs(2);
        let n = b.not(0);
        let a = b.and(n, 1);
        b.output(a);
        let c = b.finish("an").unwrap();
        assert_eq!(
            eval_circuit(&c, &Bits::from_bit_str("01").unwrap())
                .unwrap()
                .to_string(),
            "1"
        );
    }

    #[test]
    fn length_mismatch() {
        let c = CircuitBuilder::with_inputs(2).finish("e").unwrap();
        assert_eq!(
            eval_circuit(&c, &Bits::zeros(3)),
            Err(CircuitError::LengthMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn twenty_gate_circuits_match_recursive_interpreter() {
        for seed in 0..30 {
            let n = 1 + (seed as usize % 8);
            let c = random_circuit(seed, n, 20, 4);
            enumerate_outputs(&c, 8, |idx, y| {
                let x = Bits::from_lex_index(idx, n).to_bools();
                for (j, &g) in c.outputs().iter().enumerate() {
                    assert_eq!(y.get(j), eval_recursive(&c, g, &x));
                }
                assert_eq!(&eval_circuit(&c, &Bits::from_lex_index(idx, n)).unwrap(), y);
            })
            .unwrap();
        }
    }

    #[test]
    fn enumeration_respects_budget() {
        let c = CircuitBuilder::with_inputs(10).finish("big").unwrap();
        assert!(matches!(
            enumerate_outputs(&c, 8, |_, _| {}),
            Err(CircuitError::BudgetExceeded { .. })
        ));
    }
}
