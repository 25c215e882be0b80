//! The Student-Teacher game for range avoidance, valid traces of a deterministic Student
//! over composed instances, the set-size lower bound protocol and the per-round
//! acceptance test of the AM adversary.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::avoid::{
    brute_force_avoid, compose_instance, key_family, AvoidError, AvoidInstance, KeyMode,
};
use crate::bits::Bits;
use crate::extract::{toeplitz_apply, ExtractError, ExtractorKey};
use crate::gf2core::{enumerate_outputs, eval_circuit, CircuitBuilder, CircuitError, Gf2Circuit};
use crate::rate::Rate;
use crate::rng::{seeded, trial_seed, Rng};

/// Largest instance input length the Teacher enumerates.
pub const TEACHER_INPUT_LIMIT: usize = 20;
/// Largest universe the set-size protocol enumerates.
pub const GS_INPUT_LIMIT: usize = 16;
/// Default repetition count of the set-size protocol.
pub const GS_DEFAULT_REPS: usize = 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("{what} exceeds the limit of {limit}")]
    BudgetExceeded { what: &'static str, limit: usize },
    #[error("expected length {expected}, got {found}")]
    DimMismatch { expected: usize, found: usize },
    #[error("student provides {found} proposals but the game has {needed} rounds")]
    ListTooShort { needed: usize, found: usize },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Avoid(#[from] AvoidError),
    #[error(transparent)]
    Extract(#[from] ExtractError),
}

/// A deterministic Student strategy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StudentKind {
    /// Proposes `list[i - 1]` in round `i`.
    Constant(Vec<Bits>),
    /// Proposes the `i`-th string of `{0,1}^m` in lex order.
    Lex,
    /// Proposes a string drawn from a stream seeded by the seed and the round.
    Random(u64),
    /// Proposes the lex-first non-range string.
    BruteForce,
    /// Round `i` evaluates `B_i` on the concatenated answers `q_1..q_(i-1)`.
    Circuits(Vec<Gf2Circuit>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Student {
    pub kind: StudentKind,
    pub rounds: usize,
}

impl Student {
    pub fn new(kind: StudentKind, rounds: usize) -> Result<Self, GameError> {
        let listed = match &kind {
            StudentKind::Constant(l) => Some(l.len()),
            StudentKind::Circuits(l) => Some(l.len()),
            _ => None,
        };
        if let Some(found) = listed.filter(|&f| f < rounds) {
            return Err(GameError::ListTooShort {
                needed: rounds,
                found,
            });
        }
        Ok(Student { kind, rounds })
    }

    /// `A(round, c, history)`: the proposal of round `round` (1-based) after answers `history`.
    pub fn propose(
        &self,
        round: usize,
        c: &Gf2Circuit,
        history: &[Bits],
    ) -> Result<Bits, GameError> {
        let m = c.m();
        let y = match &self.kind {
            StudentKind::Constant(list) => list[round - 1].clone(),
            StudentKind::Lex => {
                let idx = (round - 1) as u64;
                if m < 64 && idx >> m != 0 {
                    Bits::zeros(m)
                } else {
                    Bits::from_lex_index(idx, m)
                }
            }
            StudentKind::Random(seed) => {
                Bits::random(m, &mut seeded(trial_seed(*seed, round as u64)))
            }
            StudentKind::BruteForce => brute_force_avoid(c)?,
            StudentKind::Circuits(list) => eval_circuit(&list[round - 1], &Bits::concat(history))?,
        };
        if y.len() != m {
            return Err(GameError::DimMismatch {
                expected: m,
                found: y.len(),
            });
        }
        Ok(y)
    }
}

/// How the Teacher picks among preimages.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TeacherKind {
    LexFirst,
    /// Uniform over preimages, from a stream seeded by the seed and the round.
    SeededRandom(u64),
}

impl TeacherKind {
    /// A preimage of `y` under `c`, or `None` when `y` is outside the range.
    pub fn respond(
        &self,
        c: &Gf2Circuit,
        y: &Bits,
        round: usize,
    ) -> Result<Option<Bits>, GameError> {
        let pre = preimages(c, y)?;
        let q = match *self {
            _ if pre.is_empty() => None,
            TeacherKind::LexFirst => Some(pre[0].clone()),
            TeacherKind::SeededRandom(seed) => {
                let i = seeded(trial_seed(seed, round as u64)).random_range(0..pre.len());
                Some(pre[i].clone())
            }
        };
        if let Some(q) = &q {
            assert_eq!(&eval_circuit(c, q)?, y, "teacher returned a non-preimage");
        }
        Ok(q)
    }
}

/// All preimages of `y` in lex order.
pub fn preimages(c: &Gf2Circuit, y: &Bits) -> Result<Vec<Bits>, GameError> {
    if c.n() > TEACHER_INPUT_LIMIT {
        return Err(GameError::BudgetExceeded {
            what: "teacher input length",
            limit: TEACHER_INPUT_LIMIT,
        });
    }
    if y.len() != c.m() {
        return Err(GameError::DimMismatch {
            expected: c.m(),
            found: y.len(),
        });
    }
    let mut out = Vec::new();
    enumerate_outputs(c, TEACHER_INPUT_LIMIT, |idx, o| {
        if o == y {
            out.push(Bits::from_lex_index(idx, c.n()));
        }
    })?;
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Round {
    pub y: Bits,
    pub q: Option<Bits>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// The Student's proposal in this round (1-based) is outside the range.
    StudentWins(usize),
    StudentLoses,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameTrace {
    pub instance: String,
    pub rounds: Vec<Round>,
    pub outcome: Outcome,
}

/// One `round=<i> y=<hex> q=<hex|NONE>` line per round, then `outcome=<WIN r|LOSE>`.
impl fmt::Display for GameTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rounds.iter().enumerate() {
            let q =
                r.q.as_ref()
                    .map_or_else(|| String::from("NONE"), |q| q.to_hex());
            writeln!(f, "round={} y={} q={}", i + 1, r.y.to_hex(), q)?;
        }
        match self.outcome {
            Outcome::StudentWins(r) => writeln!(f, "outcome=WIN {r}"),
            Outcome::StudentLoses => writeln!(f, "outcome=LOSE"),
        }
    }
}

/// Plays `k` rounds: the Student proposes, the Teacher answers with a preimage or the game
/// ends with a Student win.
pub fn run_game(
    c: &AvoidInstance,
    student: &Student,
    teacher: &TeacherKind,
    k: usize,
) -> Result<GameTrace, GameError> {
    if student.rounds < k {
        return Err(GameError::ListTooShort {
            needed: k,
            found: student.rounds,
        });
    }
    let circuit = &c.circuit;
    let mut rounds = Vec::with_capacity(k);
    let mut history = Vec::with_capacity(k);
    for i in 1..=k {
        let y = student.propose(i, circuit, &history)?;
        let q = teacher.respond(circuit, &y, i)?;
        let done = q.is_none();
        if let Some(q) = &q {
            history.push(q.clone());
        }
        rounds.push(Round { y, q });
        if done {
            return Ok(GameTrace {
                instance: circuit.name().into(),
                rounds,
                outcome: Outcome::StudentWins(i),
            });
        }
    }
    Ok(GameTrace {
        instance: circuit.name().into(),
        rounds,
        outcome: Outcome::StudentLoses,
    })
}

/// Whether the Student wins within `k` rounds against every Teacher, by walking all
/// preimage choices.
pub fn student_wins_all_teachers(
    c: &Gf2Circuit,
    student: &Student,
    k: usize,
) -> Result<bool, GameError> {
    fn walk(
        c: &Gf2Circuit,
        s: &Student,
        k: usize,
        history: &mut Vec<Bits>,
    ) -> Result<bool, GameError> {
        let round = history.len() + 1;
        if round > k {
            return Ok(false);
        }
        let y = s.propose(round, c, history)?;
        for q in preimages(c, &y)? {
            history.push(q);
            let wins = walk(c, s, k, history)?;
            history.pop();
            if !wins {
                return Ok(false);
            }
        }
        Ok(true)
    }
    if student.rounds < k {
        return Err(GameError::ListTooShort {
            needed: k,
            found: student.rounds,
        });
    }
    walk(c, student, k, &mut Vec::new())
}

/// Circuits `B_1..B_k` ignoring their inputs and outputting the listed strings.
pub fn constant_student_circuits(n: usize, ys: &[Bits]) -> Result<Vec<Gf2Circuit>, GameError> {
    ys.iter()
        .enumerate()
        .map(|(i, y)| {
            let mut b = CircuitBuilder::with_inputs(i * n);
            let zero = b.constant(false);
            let one = b.constant(true);
            for bit in y.iter() {
                b.output(if bit { one } else { zero });
            }
            Ok(b.finish("constant-student")?)
        })
        .collect()
}

/// Whether `trace = (s_1..s_j)` has `C_r(s_i) = A(i, C_r, s_1..s_(i-1))` for every `i`, with
/// `C_r` the composition of `g` and `key`.
pub fn validate_trace(
    a: &Student,
    g: &Gf2Circuit,
    key: &ExtractorKey,
    trace: &[Bits],
) -> Result<bool, GameError> {
    let c = compose_instance(g, key)?.circuit;
    validate_trace_on(a, &c, trace)
}

fn validate_trace_on(a: &Student, c: &Gf2Circuit, trace: &[Bits]) -> Result<bool, GameError> {
    for (i, s) in trace.iter().enumerate() {
        if s.len() != c.n() {
            return Err(GameError::DimMismatch {
                expected: c.n(),
                found: s.len(),
            });
        }
        if eval_circuit(c, s)? != a.propose(i + 1, c, &trace[..i])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A fraction of keys together with the number of keys examined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KeyFraction {
    pub p: Rate,
    pub keys: usize,
}

/// Fraction of keys (output length `m`) under which `trace` is valid for `a`. Exact under
/// [`KeyMode::Exhaustive`].
pub fn trace_success_probability(
    a: &Student,
    g: &Gf2Circuit,
    m: usize,
    keys: KeyMode,
    trace: &[Bits],
) -> Result<KeyFraction, GameError> {
    let family = key_family(g.m(), m, keys)?;
    let mut hits = 0u64;
    for key in &family {
        if trace.is_empty() || validate_trace(a, g, key, trace)? {
            hits += 1;
        }
    }
    Ok(KeyFraction {
        p: Rate::new(hits, family.len() as u64),
        keys: family.len(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AmVerdict {
    Accept,
    Reject,
    Inconclusive,
}

/// Accept when `p >= 2^-((2j-1)m+1)`, reject when `p <= 2^-((2j-1)m+2)`.
pub fn am_verdict(p: &Rate, j: usize, m: usize) -> AmVerdict {
    let e = ((2 * j - 1) * m + 1) as u32;
    if p.ge_dyadic(e) {
        AmVerdict::Accept
    } else if p.le_dyadic(e + 1) {
        AmVerdict::Reject
    } else {
        AmVerdict::Inconclusive
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AmTrial {
    pub verdict: AmVerdict,
    pub p: Rate,
    pub keys: usize,
}

/// One run of the round-`j` test with the probability computed directly over keys: `p` is
/// the fraction of keys for which `prefix = (s_1..s_(j-1))` is a valid trace and
/// `Ext(y, r) = A(j, C_r, prefix)`.
pub fn am_round_trial(
    a: &Student,
    g: &Gf2Circuit,
    keys: KeyMode,
    j: usize,
    prefix: &[Bits],
    y: &Bits,
    m: usize,
) -> Result<AmTrial, GameError> {
    if j == 0 || prefix.len() + 1 != j {
        return Err(GameError::DimMismatch {
            expected: j.saturating_sub(1),
            found: prefix.len(),
        });
    }
    if y.len() != g.m() {
        return Err(GameError::DimMismatch {
            expected: g.m(),
            found: y.len(),
        });
    }
    let family = key_family(g.m(), m, keys)?;
    let mut hits = 0u64;
    for key in &family {
        let c = compose_instance(g, key)?.circuit;
        if validate_trace_on(a, &c, prefix)?
            && toeplitz_apply(key, y)? == a.propose(j, &c, prefix)?
        {
            hits += 1;
        }
    }
    let p = Rate::new(hits, family.len() as u64);
    Ok(AmTrial {
        verdict: am_verdict(&p, j, m),
        p,
        keys: family.len(),
    })
}

/// `ceil(log2 s)`, with 0 for `s <= 1`.
pub fn ceil_log2(s: u64) -> usize {
    if s <= 1 {
        0
    } else {
        (64 - (s - 1).leading_zeros()) as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GsOutcome {
    pub accept: bool,
    pub accepted_reps: usize,
    pub reps: usize,
    pub hash_len: usize,
}

/// Set-size lower bound protocol for `S = {x : c_pred(x) = 1}` against threshold `s`.
///
/// Each repetition draws a Toeplitz hash to `hash_len` bits (default `ceil(log2 s)`,
/// clamped to `n`) and a target `v`. The honest prover answers with the lex-first member
/// hashing to `v`, the verifier checks membership and the hash, and the majority decides.
pub fn gs_setsize_protocol(
    c_pred: &Gf2Circuit,
    s: u64,
    reps: usize,
    hash_len: Option<usize>,
    seed: u64,
) -> Result<GsOutcome, GameError> {
    if c_pred.m() != 1 {
        return Err(GameError::DimMismatch {
            expected: 1,
            found: c_pred.m(),
        });
    }
    if c_pred.n() > GS_INPUT_LIMIT {
        return Err(GameError::BudgetExceeded {
            what: "predicate input length",
            limit: GS_INPUT_LIMIT,
        });
    }
    let mut members = Vec::new();
    enumerate_outputs(c_pred, GS_INPUT_LIMIT, |idx, o| {
        if o.get(0) {
            members.push(idx);
        }
    })?;
    gs_protocol_on_set(
        c_pred.n(),
        |x| members.binary_search(&x).is_ok(),
        &members,
        s,
        reps,
        hash_len,
        seed,
    )
}

/// [`gs_setsize_protocol`] over an explicit member list (lex indices, sorted) with the
/// verifier's membership test `member`.
pub fn gs_protocol_on_set(
    n: usize,
    member: impl Fn(u64) -> bool,
    members: &[u64],
    s: u64,
    reps: usize,
    hash_len: Option<usize>,
    seed: u64,
) -> Result<GsOutcome, GameError> {
    let ell = hash_len.unwrap_or_else(|| ceil_log2(s)).min(n);
    let mut rng = seeded(seed);
    let mut accepted = 0;
    for _ in 0..reps {
        let ok = if ell == 0 {
            members.first().is_some_and(|&x| member(x))
        } else {
            let diag = Bits::random(n + ell - 1, &mut rng);
            let key = ExtractorKey::new(n, ell, diag)?;
            let v = Bits::random(ell, &mut rng);
            let mut witness = None;
            for &x in members {
                if toeplitz_apply(&key, &Bits::from_lex_index(x, n))? == v {
                    witness = Some(x);
                    break;
                }
            }
            match witness {
                Some(x) => member(x) && toeplitz_apply(&key, &Bits::from_lex_index(x, n))? == v,
                None => false,
            }
        };
        accepted += ok as usize;
    }
    Ok(GsOutcome {
        accept: 2 * accepted > reps,
        accepted_reps: accepted,
        reps,
        hash_len: ell,
    })
}

/// Membership circuit for a set of lex indices in `{0,1}^n`, as an OR of minterms.
pub fn membership_circuit(n: usize, members: &[u64]) -> Result<Gf2Circuit, GameError> {
    let mut b = CircuitBuilder::with_inputs(n);
    let negs: Vec<usize> = (0..n).map(|i| b.not(i)).collect();
    let mut terms = Vec::with_capacity(members.len());
    for &x in members {
        let lits: Vec<usize> = (0..n)
            .map(|i| {
                if (x >> (n - 1 - i)) & 1 == 1 {
                    i
                } else {
                    negs[i]
                }
            })
            .collect();
        terms.push(b.and_chain(&lits));
    }
    let out = match terms.split_first() {
        None => b.constant(false),
        Some((&first, rest)) => rest.iter().fold(first, |acc, &t| b.or(acc, t)),
    };
    b.output(out);
    Ok(b.finish("membership")?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{brute_force_sat, encode_student_loses, DEFAULT_DECISION_BUDGET};
    use crate::extract::sample_key;
    use crate::gens::{build_planted_generator, random_circuit};
    use crate::gf2core::range_sorted;
    use alloc::vec;

    fn planted(n: usize, m: usize, seed: u64) -> AvoidInstance {
        AvoidInstance::raw(build_planted_generator(n, m, seed, n + m + 6).unwrap()).unwrap()
    }

    #[test]
    fn bruteforce_wins_round_one() {
        for seed in 0..20 {
            let c = planted(3, 5, seed);
            let t = run_game(
                &c,
                &Student::new(StudentKind::BruteForce, 3).unwrap(),
                &TeacherKind::LexFirst,
                3,
            )
            .unwrap();
            assert_eq!(t.outcome, Outcome::StudentWins(1));
            assert!(t.to_string().ends_with("outcome=WIN 1\n"));
        }
    }

    #[test]
    fn constant_range_point_loses() {
        let c = planted(3, 5, 7);
        let y = eval_circuit(&c.circuit, &Bits::zeros(3)).unwrap();
        let s = Student::new(StudentKind::Constant(vec![y; 4]), 4).unwrap();
        for teacher in [TeacherKind::LexFirst, TeacherKind::SeededRandom(3)] {
            let t = run_game(&c, &s, &teacher, 4).unwrap();
            assert_eq!(t.outcome, Outcome::StudentLoses);
            assert!(t
                .rounds
                .iter()
                .all(|r| eval_circuit(&c.circuit, r.q.as_ref().unwrap()).unwrap() == r.y));
        }
    }

    #[test]
    fn lex_student_wins_by_pigeonhole() {
        for seed in 0..50 {
            let n = 1 + (seed as usize % 3);
            let c = planted(n, n + 1 + (seed as usize % 2), seed);
            let k = (1 << n) + 1;
            let t = run_game(
                &c,
                &Student::new(StudentKind::Lex, k).unwrap(),
                &TeacherKind::LexFirst,
                k,
            )
            .unwrap();
            let Outcome::StudentWins(r) = t.outcome else {
                panic!("lex student lost")
            };
            let first_gap = (0u64..).find(|&i| {
                range_sorted(&c.circuit, 8)
                    .unwrap()
                    .binary_search(&Bits::from_lex_index(i, c.circuit.m()))
                    .is_err()
            });
            assert_eq!(r as u64, first_gap.unwrap() + 1);
        }
    }

    #[test]
    fn game_matches_student_loses_cnf() {
        let mut rng = seeded(21);
        for seed in 0..40u64 {
            let n = rng.random_range(1..=3usize);
            let m = n + rng.random_range(1..=2usize);
            let g = build_planted_generator(n, m, seed, n + m + 4).unwrap();
            let k = rng.random_range(1..=2usize);
            let circuits = if rng.random() {
                let ys: Vec<Bits> = (0..k).map(|_| Bits::random(m, &mut rng)).collect();
                constant_student_circuits(n, &ys).unwrap()
            } else {
                let mut v = constant_student_circuits(n, &[Bits::random(m, &mut rng)]).unwrap();
                if k == 2 {
                    v.push(random_circuit(n, m, 6, seed));
                }
                v
            };
            let student = Student::new(StudentKind::Circuits(circuits.clone()), k).unwrap();
            let wins = student_wins_all_teachers(&g, &student, k).unwrap();
            let cnf = encode_student_loses(&g, &circuits).unwrap();
            let sat = brute_force_sat(&cnf, DEFAULT_DECISION_BUDGET)
                .unwrap()
                .is_sat();
            assert_eq!(wins, !sat, "seed {seed}");
        }
    }

    #[test]
    fn traces_validate() {
        let g = build_planted_generator(2, 6, 4, 14).unwrap();
        let a = Student::new(StudentKind::Lex, 4).unwrap();
        let key = sample_key(6, 4, 9).unwrap();
        assert!(validate_trace(&a, &g, &key, &[]).unwrap());
        let c = compose_instance(&g, &key).unwrap();
        let t = run_game(&c, &a, &TeacherKind::LexFirst, 4).unwrap();
        let trace: Vec<Bits> = t.rounds.iter().filter_map(|r| r.q.clone()).collect();
        assert!(validate_trace(&a, &g, &key, &trace).unwrap());
        if let Some(first) = trace.first() {
            let mut bad = trace.clone();
            let mut s = first.clone();
            s.flip(0);
            bad[0] = s;
            let y1 = a.propose(1, &c.circuit, &[]).unwrap();
            assert_eq!(
                validate_trace(&a, &g, &key, &bad).unwrap(),
                eval_circuit(&c.circuit, &bad[0]).unwrap() == y1
            );
        }
    }

    #[test]
    fn trace_probability_modes_agree() {
        let g = build_planted_generator(2, 5, 1, 12).unwrap();
        let a = Student::new(StudentKind::Lex, 3).unwrap();
        let trace = vec![Bits::from_bit_str("01").unwrap()];
        let exact = trace_success_probability(&a, &g, 3, KeyMode::Exhaustive, &trace).unwrap();
        assert_eq!(exact.keys, 1 << 7);
        let count = 4000;
        let est = trace_success_probability(&a, &g, 3, KeyMode::Sample { count, seed: 5 }, &trace)
            .unwrap();
        let (p, q) = (exact.p.to_f64(), est.p.to_f64());
        assert!(
            (p - q).abs() <= 3.0 * (p * (1.0 - p) / count as f64).sqrt() + 1e-9,
            "{p} vs {q}"
        );
        let empty =
            trace_success_probability(&a, &g, 3, KeyMode::Sample { count: 10, seed: 1 }, &[])
                .unwrap();
        assert_eq!(empty.p, Rate::new(10, 10));
    }

    #[test]
    fn valid_trace_prefixes_stay_valid() {
        let g = build_planted_generator(2, 5, 8, 12).unwrap();
        let a = Student::new(StudentKind::Random(3), 3).unwrap();
        for key in key_family(5, 3, KeyMode::Exhaustive).unwrap() {
            let c = compose_instance(&g, &key).unwrap();
            let t = run_game(&c, &a, &TeacherKind::SeededRandom(2), 3).unwrap();
            let trace: Vec<Bits> = t.rounds.iter().filter_map(|r| r.q.clone()).collect();
            for i in 0..=trace.len() {
                assert!(validate_trace(&a, &g, &key, &trace[..i]).unwrap());
            }
        }
    }

    #[test]
    fn am_thresholds() {
        // j = 1, m = 2: accept at >= 2^-3, reject at <= 2^-4
        assert_eq!(am_verdict(&Rate::new(1, 8), 1, 2), AmVerdict::Accept);
        assert_eq!(am_verdict(&Rate::new(1, 16), 1, 2), AmVerdict::Reject);
        assert_eq!(am_verdict(&Rate::new(3, 32), 1, 2), AmVerdict::Inconclusive);
        assert_eq!(am_verdict(&Rate::new(0, 5), 3, 40), AmVerdict::Reject);
    }

    #[test]
    fn am_rejects_range_points() {
        let g = build_planted_generator(2, 6, 3, 14).unwrap();
        let a = Student::new(StudentKind::BruteForce, 1).unwrap();
        for x in 0..4 {
            let y = eval_circuit(&g, &Bits::from_lex_index(x, 2)).unwrap();
            let t = am_round_trial(
                &a,
                &g,
                KeyMode::Sample {
                    count: 200,
                    seed: x,
                },
                1,
                &[],
                &y,
                3,
            )
            .unwrap();
            assert!(t.p.is_zero());
            assert_eq!(t.verdict, AmVerdict::Reject);
        }
    }

    #[test]
    fn gs_protocol_edges_and_gap() {
        let members: Vec<u64> = vec![3, 9];
        let c = membership_circuit(4, &members).unwrap();
        let out = gs_setsize_protocol(&c, 1, 5, None, 0).unwrap();
        assert!(out.accept && out.hash_len == 0 && out.accepted_reps == 5);
        let mut rng = seeded(4);
        let mut all: Vec<u64> = (0..1024).collect();
        for i in 0..all.len() {
            let j = rng.random_range(i..all.len());
            all.swap(i, j);
        }
        // nested sets: acceptance counts are monotone in the set
        let mut last = 0;
        for size in [64usize, 128, 256, 512, 1024] {
            let mut set = all[..size].to_vec();
            set.sort_unstable();
            let acc = (0..40)
                .filter(|&r| {
                    gs_protocol_on_set(
                        10,
                        |x| set.binary_search(&x).is_ok(),
                        &set,
                        512,
                        31,
                        None,
                        r,
                    )
                    .unwrap()
                    .accept
                })
                .count();
            assert!(acc >= last, "size {size}");
            last = acc;
        }
    }
}
