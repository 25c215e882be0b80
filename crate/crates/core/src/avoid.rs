//! Hard `Avoid` instances, a brute-force solver, and the one-sided adversaries obtained by
//! running a solver on hashed or shifted copies of a generator.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::bits::Bits;
use crate::extract::{
    key_to_xor_rows, sample_key_with, toeplitz_apply, ExtractError, ExtractorKey,
};
use crate::gf2core::{
    append_linear_layer, enumerate_outputs, range_sorted, CircuitBuilder, CircuitError, Gf2Circuit,
};
use crate::rate::Rate;
use crate::rng::seeded;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AvoidError {
    #[error("key input length {key} differs from generator output length {outputs}")]
    DimMismatch { key: usize, outputs: usize },
    #[error("instance maps {n_in} bits to {n_out} bits, which does not stretch")]
    NotStretching { n_in: usize, n_out: usize },
    #[error("shift instance needs m > n + ceil(log2 t): m={m}, n={n}, index bits={index_bits}")]
    StretchViolation {
        m: usize,
        n: usize,
        index_bits: usize,
    },
    #[error("{what} exceeds the budget of {limit}")]
    BudgetExceeded { what: &'static str, limit: usize },
    #[error("expected a string of length {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("at least one shift is required")]
    NoShifts,
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Extract(#[from] ExtractError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Composed(ExtractorKey),
    Ilango(Vec<Bits>),
    Raw,
}

/// A stretching circuit whose range a solver must avoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvoidInstance {
    pub circuit: Gf2Circuit,
    pub provenance: Provenance,
}

impl AvoidInstance {
    pub fn raw(circuit: Gf2Circuit) -> Result<Self, AvoidError> {
        if circuit.n() >= circuit.m() {
            return Err(AvoidError::NotStretching {
                n_in: circuit.n(),
                n_out: circuit.m(),
            });
        }
        Ok(AvoidInstance {
            circuit,
            provenance: Provenance::Raw,
        })
    }
}

/// `C_r(s) = Ext(G(s), r)`: the generator followed by the key's XOR rows.
pub fn compose_instance(g: &Gf2Circuit, key: &ExtractorKey) -> Result<AvoidInstance, AvoidError> {
    if key.input_len() != g.m() {
        return Err(AvoidError::DimMismatch {
            key: key.input_len(),
            outputs: g.m(),
        });
    }
    if key.output_len() <= g.n() {
        return Err(AvoidError::NotStretching {
            n_in: g.n(),
            n_out: key.output_len(),
        });
    }
    let circuit = append_linear_layer(g, &key_to_xor_rows(key))?.with_name("composed");
    Ok(AvoidInstance {
        circuit,
        provenance: Provenance::Composed(key.clone()),
    })
}

/// `ceil(log2 t)`, with 0 for `t <= 1`.
pub fn index_bits(t: usize) -> usize {
    if t <= 1 {
        0
    } else {
        (usize::BITS - (t - 1).leading_zeros()) as usize
    }
}

/// `C_s(x, i) = G(x) xor s_(i mod t)` with `i` on `ceil(log2 t)` bits read MSB-first.
pub fn ilango_instance(g: &Gf2Circuit, shifts: &[Bits]) -> Result<AvoidInstance, AvoidError> {
    let t = shifts.len();
    if t == 0 {
        return Err(AvoidError::NoShifts);
    }
    if let Some(s) = shifts.iter().find(|s| s.len() != g.m()) {
        return Err(AvoidError::LengthMismatch {
            expected: g.m(),
            found: s.len(),
        });
    }
    let l = index_bits(t);
    let (n, m) = (g.n(), g.m());
    if m <= n + l {
        return Err(AvoidError::StretchViolation {
            m,
            n,
            index_bits: l,
        });
    }
    let mut b = CircuitBuilder::with_inputs(n + l);
    let inputs: Vec<usize> = (0..n).collect();
    let outs = b.instantiate(g, &inputs);
    let negated: Vec<usize> = (0..l).map(|k| b.not(n + k)).collect();
    // one-hot selectors over all 2^l index values
    let selectors: Vec<usize> = (0..1usize << l)
        .map(|v| {
            let lits: Vec<usize> = (0..l)
                .map(|k| {
                    if (v >> (l - 1 - k)) & 1 == 1 {
                        n + k
                    } else {
                        negated[k]
                    }
                })
                .collect();
            b.and_chain(&lits)
        })
        .collect();
    for (j, &o) in outs.iter().enumerate() {
        let active: Vec<usize> = selectors
            .iter()
            .enumerate()
            .filter(|(v, _)| shifts[v % t].get(j))
            .map(|(_, &sel)| sel)
            .collect();
        let out = if active.is_empty() {
            o
        } else {
            let bit = b.xor_chain(&active);
            b.xor(o, bit)
        };
        b.output(out);
    }
    let circuit = b.finish("ilango")?;
    Ok(AvoidInstance {
        circuit,
        provenance: Provenance::Ilango(shifts.to_vec()),
    })
}

/// Largest input length the brute-force solver enumerates.
pub const SOLVER_INPUT_LIMIT: usize = 24;

/// A deterministic `Avoid` solver shared by adversaries and game Students.
pub trait AvoidSolver {
    fn solve(&self, c: &Gf2Circuit) -> Result<Bits, AvoidError>;
}

/// Returns the lexicographically smallest non-range string.
#[derive(Clone, Copy, Debug, Default)]
pub struct LexBruteForce;

impl AvoidSolver for LexBruteForce {
    fn solve(&self, c: &Gf2Circuit) -> Result<Bits, AvoidError> {
        brute_force_avoid(c)
    }
}

/// Lexicographically smallest `y` outside the range of `c`, rechecked by a second full
/// enumeration before it is returned.
pub fn brute_force_avoid(c: &Gf2Circuit) -> Result<Bits, AvoidError> {
    if c.n() >= c.m() {
        return Err(AvoidError::NotStretching {
            n_in: c.n(),
            n_out: c.m(),
        });
    }
    if c.n() > SOLVER_INPUT_LIMIT {
        return Err(AvoidError::BudgetExceeded {
            what: "solver input length",
            limit: SOLVER_INPUT_LIMIT,
        });
    }
    let range = range_sorted(c, SOLVER_INPUT_LIMIT)?;
    // the range has fewer than 2^m points, so the first gap has a small lex index
    let mut idx = 0u64;
    let y = loop {
        let cand = Bits::from_lex_index(idx, c.m());
        match range.get(idx as usize) {
            Some(r) if *r == cand => idx += 1,
            _ => break cand,
        }
    };
    let mut hit = false;
    enumerate_outputs(c, SOLVER_INPUT_LIMIT, |_, out| hit |= *out == y)?;
    assert!(!hit, "solver output lies in the range");
    Ok(y)
}

/// Membership of `y` in the range of `c`, by enumeration.
pub fn in_range(c: &Gf2Circuit, y: &Bits) -> Result<bool, AvoidError> {
    let mut hit = false;
    enumerate_outputs(c, SOLVER_INPUT_LIMIT, |_, out| hit |= out == y)?;
    Ok(hit)
}

/// How the key existential is realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KeyMode {
    /// Every key of the family.
    Exhaustive,
    /// The first `count` keys of the stream seeded with `seed`.
    Sample { count: usize, seed: u64 },
}

/// Largest key length enumerated in [`KeyMode::Exhaustive`].
pub const EXHAUSTIVE_KEY_BITS: usize = 20;

/// The keys `Ext: {0,1}^n_key -> {0,1}^m` selected by `mode`, in order.
pub fn key_family(n_key: usize, m: usize, mode: KeyMode) -> Result<Vec<ExtractorKey>, AvoidError> {
    Ok(match mode {
        KeyMode::Exhaustive => {
            let bits = n_key + m - 1;
            if bits > EXHAUSTIVE_KEY_BITS {
                return Err(AvoidError::BudgetExceeded {
                    what: "key space bits",
                    limit: EXHAUSTIVE_KEY_BITS,
                });
            }
            (0..1u64 << bits)
                .map(|v| ExtractorKey::new(n_key, m, Bits::from_lex_index(v, bits)))
                .collect::<Result<_, _>>()?
        }
        KeyMode::Sample { count, seed } => {
            let mut rng = seeded(seed);
            (0..count)
                .map(|_| sample_key_with(n_key, m, &mut rng))
                .collect::<Result<_, _>>()?
        }
    })
}

/// Accepts `y` iff some key `r` has `A(C_r) = Ext(y, r)`.
///
/// Keys come from a fixed prefix of a seeded stream, and the solver's answer on every
/// `C_r` is computed once, so acceptance is deterministic and monotone in the key count.
#[derive(Clone, Debug)]
pub struct ComposedAdversary {
    keys: Vec<ExtractorKey>,
    answers: Vec<Bits>,
    n_out: usize,
}

impl ComposedAdversary {
    pub fn new(
        g: &Gf2Circuit,
        m: usize,
        solver: &impl AvoidSolver,
        mode: KeyMode,
    ) -> Result<Self, AvoidError> {
        let n_key = g.m();
        if m <= g.n() {
            return Err(AvoidError::NotStretching {
                n_in: g.n(),
                n_out: m,
            });
        }
        if m > n_key {
            return Err(ExtractError::BadDims { n: n_key, m }.into());
        }
        let keys = key_family(n_key, m, mode)?;
        let answers = keys
            .iter()
            .map(|k| solver.solve(&compose_instance(g, k)?.circuit))
            .collect::<Result<_, _>>()?;
        Ok(ComposedAdversary {
            keys,
            answers,
            n_out: n_key,
        })
    }

    pub fn key_count(&self) -> usize {
        self.keys.len()
    }

    /// Index of the first key witnessing acceptance.
    pub fn accepting_key(&self, y: &Bits) -> Result<Option<usize>, AvoidError> {
        if y.len() != self.n_out {
            return Err(AvoidError::LengthMismatch {
                expected: self.n_out,
                found: y.len(),
            });
        }
        for (i, (k, a)) in self.keys.iter().zip(&self.answers).enumerate() {
            if toeplitz_apply(k, y)? == *a {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn accepts(&self, y: &Bits) -> Result<bool, AvoidError> {
        Ok(self.accepting_key(y)?.is_some())
    }

    pub fn key(&self, i: usize) -> &ExtractorKey {
        &self.keys[i]
    }
}

/// One-shot form of [`ComposedAdversary`]: the decision and the witness key.
pub fn adversary_accepts(
    g: &Gf2Circuit,
    m: usize,
    solver: &impl AvoidSolver,
    mode: KeyMode,
    y: &Bits,
) -> Result<(bool, Option<ExtractorKey>), AvoidError> {
    let adv = ComposedAdversary::new(g, m, solver, mode)?;
    let w = adv.accepting_key(y)?;
    Ok((w.is_some(), w.map(|i| adv.key(i).clone())))
}

/// Accepts `y` iff some sampled shift tuple `s` and index `i` satisfy `A(C_s) = s_i xor y`.
#[derive(Clone, Debug)]
pub struct IlangoAdversary {
    tuples: Vec<Vec<Bits>>,
    answers: Vec<Bits>,
    t: usize,
    m: usize,
}

impl IlangoAdversary {
    pub fn new(
        g: &Gf2Circuit,
        solver: &impl AvoidSolver,
        t: usize,
        count: usize,
        seed: u64,
    ) -> Result<Self, AvoidError> {
        if t == 0 {
            return Err(AvoidError::NoShifts);
        }
        let m = g.m();
        let mut rng = seeded(seed);
        let mut tuples = Vec::with_capacity(count);
        let mut answers = Vec::with_capacity(count);
        for _ in 0..count {
            let shifts: Vec<Bits> = (0..t).map(|_| Bits::random(m, &mut rng)).collect();
            answers.push(solver.solve(&ilango_instance(g, &shifts)?.circuit)?);
            tuples.push(shifts);
        }
        Ok(IlangoAdversary {
            tuples,
            answers,
            t,
            m,
        })
    }

    /// True when `t` is below the `30 m` shifts the covering argument asks for.
    pub fn below_recommended_t(&self) -> bool {
        self.t < 30 * self.m
    }

    pub fn accepts(&self, y: &Bits) -> Result<bool, AvoidError> {
        if y.len() != self.m {
            return Err(AvoidError::LengthMismatch {
                expected: self.m,
                found: y.len(),
            });
        }
        Ok(self
            .tuples
            .iter()
            .zip(&self.answers)
            .any(|(shifts, a)| shifts.iter().any(|s| s.xor(y) == *a)))
    }
}

pub fn ilango_adversary_accepts(
    g: &Gf2Circuit,
    solver: &impl AvoidSolver,
    t: usize,
    y: &Bits,
    count: usize,
    seed: u64,
) -> Result<bool, AvoidError> {
    IlangoAdversary::new(g, solver, t, count, seed)?.accepts(y)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YMode {
    /// All of `{0,1}^m`.
    Exhaustive,
    Sample {
        count: u64,
        seed: u64,
    },
}

/// Largest `m` for which [`YMode::Exhaustive`] is allowed.
pub const EXHAUSTIVE_Y_BITS: usize = 20;
/// Largest generator input length for the exact on-range count.
pub const RANGE_INPUT_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BreakReport {
    /// Accepted strings over tested strings, uniform `y`.
    pub accept_rate_uniform: Rate,
    /// Accepted points of the range, counted exactly.
    pub accepts_on_range: u64,
    pub range_points_tested: u64,
    pub y_seed: Option<u64>,
}

/// Runs `adversary` on the whole range of `g` and on uniform strings.
pub fn demi_break_report(
    g: &Gf2Circuit,
    mut adversary: impl FnMut(&Bits) -> Result<bool, AvoidError>,
    y_mode: YMode,
) -> Result<BreakReport, AvoidError> {
    if g.n() > RANGE_INPUT_LIMIT {
        return Err(AvoidError::BudgetExceeded {
            what: "range enumeration inputs",
            limit: RANGE_INPUT_LIMIT,
        });
    }
    let range = range_sorted(g, RANGE_INPUT_LIMIT)?;
    let mut on_range = 0u64;
    for y in &range {
        on_range += adversary(y)? as u64;
    }
    let m = g.m();
    let (accepted, tested, y_seed) = match y_mode {
        YMode::Exhaustive => {
            if m > EXHAUSTIVE_Y_BITS {
                return Err(AvoidError::BudgetExceeded {
                    what: "uniform string length",
                    limit: EXHAUSTIVE_Y_BITS,
                });
            }
            let mut acc = 0u64;
            for v in 0..1u64 << m {
                acc += adversary(&Bits::from_lex_index(v, m))? as u64;
            }
            (acc, 1u64 << m, None)
        }
        YMode::Sample { count, seed } => {
            let mut rng = seeded(seed);
            let mut acc = 0u64;
            for _ in 0..count {
                acc += adversary(&Bits::random(m, &mut rng))? as u64;
            }
            (acc, count, Some(seed))
        }
    };
    Ok(BreakReport {
        accept_rate_uniform: Rate::new(accepted, tested),
        accepts_on_range: on_range,
        range_points_tested: range.len() as u64,
        y_seed,
    })
}

/// Largest `m` accepted by [`lautemann_cover_check`].
pub const COVER_BITS: usize = 16;

/// Whether every `z` in `{0,1}^m` has some `i` with `z xor s_i` in `R`.
///
/// `member` receives lex indices of `m`-bit strings.
pub fn lautemann_cover_check(
    member: impl Fn(u64) -> bool,
    m: usize,
    shifts: &[Bits],
) -> Result<bool, AvoidError> {
    if m > COVER_BITS {
        return Err(AvoidError::BudgetExceeded {
            what: "cover check length",
            limit: COVER_BITS,
        });
    }
    if let Some(s) = shifts.iter().find(|s| s.len() != m) {
        return Err(AvoidError::LengthMismatch {
            expected: m,
            found: s.len(),
        });
    }
    let idx: Vec<u64> = shifts
        .iter()
        .map(|s| s.to_lex_index().expect("m <= 16"))
        .collect();
    Ok((0..1u64 << m).all(|z| idx.iter().any(|&s| member(z ^ s))))
}

/// Recommended shift count `ceil(10 m 2^m / |R|)`.
pub fn lautemann_recommended_t(m: usize, size: u64) -> u64 {
    (10 * m as u64 * (1u64 << m)).div_ceil(size.max(1))
}

/// A uniformly random subset of `{0,1}^m` of the given size, as a membership table.
pub fn random_dense_set(m: usize, size: usize, rng: &mut impl crate::rng::Rng) -> Vec<bool> {
    let total = 1usize << m;
    let mut all: Vec<usize> = (0..total).collect();
    let size = size.min(total);
    // partial Fisher-Yates
    for i in 0..size {
        let j = rng.random_range(i..total);
        all.swap(i, j);
    }
    let mut table = vec![false; total];
    for &v in &all[..size] {
        table[v] = true;
    }
    table
}

/// Number of trials (seeded `seed + trial`) in which `t` random shifts cover the cube for a
/// fresh random set of the given size.
pub fn lautemann_trials(
    m: usize,
    size: usize,
    t: usize,
    trials: u64,
    seed: u64,
) -> Result<u64, AvoidError> {
    let mut covered = 0u64;
    for trial in 0..trials {
        let mut rng = seeded(crate::rng::trial_seed(seed, trial));
        let set = random_dense_set(m, size, &mut rng);
        let shifts: Vec<Bits> = (0..t).map(|_| Bits::random(m, &mut rng)).collect();
        covered += lautemann_cover_check(|z| set[z as usize], m, &shifts)? as u64;
    }
    Ok(covered)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract::sample_key;
    use crate::gens::{build_planted_generator, random_circuit};
    use crate::gf2core::{circuit_degree, eval_circuit};
    use alloc::collections::BTreeSet;

    fn constant_zero(m: usize) -> Gf2Circuit {
        let mut b = CircuitBuilder::with_inputs(1);
        let z = b.constant(false);
        for _ in 0..m {
            b.output(z);
        }
        b.finish("zero").unwrap()
    }

    #[test]
    fn solver_hand_cases() {
        assert_eq!(
            brute_force_avoid(&constant_zero(2)).unwrap().to_string(),
            "01"
        );
        let mut b = CircuitBuilder::with_inputs(2);
        let z = b.constant(false);
        b.output(0);
        b.output(1);
        b.output(z);
        assert_eq!(
            brute_force_avoid(&b.finish("pad").unwrap())
                .unwrap()
                .to_string(),
            "001"
        );
    }

    #[test]
    fn solver_output_is_off_range() {
        for seed in 0..40 {
            let c = random_circuit(4, 6, 15, seed);
            let y = brute_force_avoid(&c).unwrap();
            // independent membership: direct evaluation on every input
            for xi in 0..16 {
                assert_ne!(eval_circuit(&c, &Bits::from_lex_index(xi, 4)).unwrap(), y);
            }
            for v in 0..y.to_lex_index().unwrap() {
                assert!(in_range(&c, &Bits::from_lex_index(v, 6)).unwrap());
            }
        }
    }

    #[test]
    fn composed_extensional_and_degree() {
        let g = build_planted_generator(5, 12, 3, 50).unwrap();
        let key = sample_key(12, 7, 9).unwrap();
        let inst = compose_instance(&g, &key).unwrap();
        for xi in 0..32 {
            let x = Bits::from_lex_index(xi, 5);
            let two_step = toeplitz_apply(&key, &eval_circuit(&g, &x).unwrap()).unwrap();
            assert_eq!(eval_circuit(&inst.circuit, &x).unwrap(), two_step);
        }
        assert!(circuit_degree(&inst.circuit) <= circuit_degree(&g));
        let short = sample_key(12, 5, 9).unwrap();
        assert_eq!(
            compose_instance(&g, &short),
            Err(AvoidError::NotStretching { n_in: 5, n_out: 5 })
        );
        let wrong = sample_key(11, 7, 9).unwrap();
        assert_eq!(
            compose_instance(&g, &wrong),
            Err(AvoidError::DimMismatch {
                key: 11,
                outputs: 12
            })
        );
    }

    #[test]
    fn ilango_range_is_union_of_shifts() {
        let mut rng = seeded(31);
        for t in 1..=8usize {
            let g = random_circuit(3, 9, 14, t as u64);
            let shifts: Vec<Bits> = (0..t).map(|_| Bits::random(9, &mut rng)).collect();
            let inst = ilango_instance(&g, &shifts).unwrap();
            assert_eq!(inst.circuit.n(), 3 + index_bits(t));
            let got: BTreeSet<Bits> = range_sorted(&inst.circuit, 16)
                .unwrap()
                .into_iter()
                .collect();
            let base = range_sorted(&g, 16).unwrap();
            let expect: BTreeSet<Bits> = shifts
                .iter()
                .flat_map(|s| base.iter().map(move |y| y.xor(s)))
                .collect();
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn ilango_special_cases() {
        let g = random_circuit(3, 9, 14, 5);
        let s = Bits::random(9, &mut seeded(1));
        let inst = ilango_instance(&g, std::slice::from_ref(&s)).unwrap();
        for xi in 0..8 {
            let x = Bits::from_lex_index(xi, 3);
            assert_eq!(
                eval_circuit(&inst.circuit, &x).unwrap(),
                eval_circuit(&g, &x).unwrap().xor(&s)
            );
        }
        let zeros = alloc::vec![Bits::zeros(9); 5];
        let inst = ilango_instance(&g, &zeros).unwrap();
        assert_eq!(
            range_sorted(&inst.circuit, 16).unwrap(),
            range_sorted(&g, 16).unwrap()
        );
        let tall = random_circuit(3, 16, 10, 6);
        assert!(
            ilango_instance(&tall, &alloc::vec![Bits::zeros(16); 480])
                .unwrap()
                .circuit
                .n()
                < 16
        );
        assert_eq!(
            ilango_instance(&g, &alloc::vec![Bits::zeros(9); 64]),
            Err(AvoidError::StretchViolation {
                m: 9,
                n: 3,
                index_bits: 6
            })
        );
    }

    #[test]
    fn composed_adversary_rejects_range_and_is_monotone() {
        let g = build_planted_generator(3, 10, 2, 40).unwrap();
        let small = ComposedAdversary::new(
            &g,
            4,
            &LexBruteForce,
            KeyMode::Sample { count: 50, seed: 4 },
        )
        .unwrap();
        let big = ComposedAdversary::new(
            &g,
            4,
            &LexBruteForce,
            KeyMode::Sample {
                count: 200,
                seed: 4,
            },
        )
        .unwrap();
        for y in range_sorted(&g, 8).unwrap() {
            assert!(!big.accepts(&y).unwrap());
        }
        let mut rng = seeded(8);
        for _ in 0..100 {
            let y = Bits::random(10, &mut rng);
            if small.accepts(&y).unwrap() {
                assert!(big.accepts(&y).unwrap());
            }
        }
        let (acc, w) = adversary_accepts(
            &g,
            4,
            &LexBruteForce,
            KeyMode::Sample { count: 50, seed: 4 },
            &Bits::ones(10),
        )
        .unwrap();
        assert_eq!(acc, w.is_some());
    }

    #[test]
    fn exhaustive_keys_reject_range() {
        let g = build_planted_generator(2, 6, 1, 20).unwrap();
        let adv = ComposedAdversary::new(&g, 3, &LexBruteForce, KeyMode::Exhaustive).unwrap();
        assert_eq!(adv.key_count(), 256);
        for y in range_sorted(&g, 8).unwrap() {
            assert!(!adv.accepts(&y).unwrap());
        }
    }

    #[test]
    fn ilango_adversary_rejects_range() {
        let g = build_planted_generator(3, 8, 5, 30).unwrap();
        let adv = IlangoAdversary::new(&g, &LexBruteForce, 4, 300, 2).unwrap();
        assert!(adv.below_recommended_t());
        for y in range_sorted(&g, 8).unwrap() {
            assert!(!adv.accepts(&y).unwrap());
        }
    }

    #[test]
    fn break_report_extremes() {
        let g = build_planted_generator(3, 6, 1, 20).unwrap();
        let size = range_sorted(&g, 8).unwrap().len() as u64;
        let none = demi_break_report(&g, |_| Ok(false), YMode::Exhaustive).unwrap();
        assert_eq!(
            (none.accept_rate_uniform, none.accepts_on_range),
            (Rate::new(0, 64), 0)
        );
        let all = demi_break_report(
            &g,
            |_| Ok(true),
            YMode::Sample {
                count: 100,
                seed: 1,
            },
        )
        .unwrap();
        assert_eq!(
            (all.accept_rate_uniform, all.accepts_on_range),
            (Rate::new(100, 100), size)
        );
        assert_eq!(all.range_points_tested, size);
    }

    #[test]
    fn cover_checks() {
        let mut rng = seeded(3);
        let s = Bits::random(6, &mut rng);
        assert!(lautemann_cover_check(|_| true, 6, &[s]).unwrap());
        assert!(!lautemann_cover_check(|z| z == 0, 6, &[Bits::zeros(6)]).unwrap());
        assert_eq!(lautemann_recommended_t(10, 342), 300);
        let set = random_dense_set(10, 342, &mut rng);
        assert_eq!(set.iter().filter(|&&v| v).count(), 342);
        assert!(lautemann_trials(6, 22, 60, 20, 0).unwrap() >= 18);
    }
}
