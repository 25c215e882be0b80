//! The acceptance experiments. Each one reads its section of the [`Config`], produces a
//! deterministic [`Report`] and a pass/fail verdict against a fixed threshold.

use std::path::Path;
use std::process::Command;

use avoidforge_core::avoid::{
    compose_instance, demi_break_report, lautemann_trials, ComposedAdversary, IlangoAdversary,
    KeyMode, LexBruteForce, YMode,
};
use avoidforge_core::cnf::{
    brute_force_sat, encode_student_loses, encode_tau, range_membership, DEFAULT_DECISION_BUDGET,
};
use avoidforge_core::extract::{
    extraction_distance_estimate, sample_key, toeplitz_apply, universality_scan,
};
use avoidforge_core::game::{
    constant_student_circuits, gs_protocol_on_set, gs_setsize_protocol, membership_circuit,
    student_wins_all_teachers, Student, StudentKind,
};
use avoidforge_core::gens::{
    build_goldreich, build_planted_generator, build_sparse_encoder, mst06_predicate,
    random_circuit, sample_hypergraph, sparse_preimage,
};
use avoidforge_core::gf2core::{
    circuit_degree, circuit_to_polynomials, eval_circuit, eval_gate_values, Gf2Circuit,
    DEFAULT_POLY_BUDGET,
};
use avoidforge_core::parred::{
    build_canonical_reduction, check_parity_reduction, check_resxor_derivation, check_resxor_proof,
    sample_linear_canonical_case, sample_reduction_case, transform_bound, transform_resxor_proof,
    LinearClause, ResXorProof, Rule,
};
use avoidforge_core::rng::{seeded, trial_seed, Rng};
use avoidforge_core::{Bits, Rate};
use rayon::prelude::*;

use crate::config::Config;
use crate::errors::ToolError;
use crate::report::{Record, Report};

pub type Result<T> = std::result::Result<T, ToolError>;

/// Outcome of one criterion run.
#[derive(Clone, Debug)]
pub struct CriterionRun {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub summary: String,
    pub report: Report,
}

/// Criteria that run in-process; the reproducibility check drives the binary instead.
pub const CRITERIA: [(u32, &str); 12] = [
    (1, "tau-fidelity"),
    (2, "toeplitz-universality"),
    (3, "extraction-distance"),
    (4, "composed-adversary"),
    (5, "degree-preservation"),
    (6, "canonical-reduction"),
    (7, "resxor-transform"),
    (8, "lautemann-cover"),
    (9, "ilango-soundness"),
    (10, "set-size-gap"),
    (11, "game-cnf-duality"),
    (12, "sparse-encoder"),
];

pub fn criterion_name(id: u32) -> Option<&'static str> {
    CRITERIA.iter().find(|(i, _)| *i == id).map(|(_, n)| *n)
}

pub fn run_criterion(id: u32, cfg: &Config) -> Result<CriterionRun> {
    let name = criterion_name(id).ok_or_else(|| ToolError::Usage(format!("no criterion {id}")))?;
    let mut report = Report::new(format!("criterion={id} name={name}"));
    let (pass, summary) = match id {
        1 => tau_fidelity(cfg, &mut report)?,
        2 => toeplitz_universality(cfg, &mut report)?,
        3 => extraction_distance(cfg, &mut report)?,
        4 => composed_adversary(cfg, &mut report)?,
        5 => degree_preservation(cfg, &mut report)?,
        6 => canonical_reduction(cfg, &mut report)?,
        7 => resxor_transform(cfg, &mut report)?,
        8 => lautemann_cover(cfg, &mut report)?,
        9 => ilango_soundness(cfg, &mut report)?,
        10 => set_size_gap(cfg, &mut report)?,
        11 => game_cnf_duality(cfg, &mut report)?,
        _ => sparse_encoder(cfg, &mut report)?,
    };
    report.push(Record::new().with("criterion", id).with("pass", pass));
    Ok(CriterionRun {
        id,
        name,
        pass,
        summary,
        report,
    })
}

fn rate_str(r: Rate) -> String {
    format!("{}/{}", r.num, r.den)
}

fn tau_fidelity(cfg: &Config, rep: &mut Report) -> Result<(bool, String)> {
    let circuits: u64 = cfg.get("tau", "circuits")?;
    let max_n: usize = cfg.get("tau", "max_inputs")?;
    let max_m: usize = cfg.get("tau", "max_outputs")?;
    let max_g: usize = cfg.get("tau", "max_gates")?;
    let seed: u64 = cfg.get("tau", "seed")?;
    let rows: Vec<(Record, u64)> = (0..circuits)
        .into_par_iter()
        .map(|i| -> Result<(Record, u64)> {
            let s = trial_seed(seed, i);
            let mut rng = seeded(s);
            let n = rng.random_range(1..=max_n);
            let m = rng.random_range(1..=max_m);
            let gates = rng.random_range(1..=max_g);
            let g = random_circuit(n, m, gates, s);
            let mut mismatches = 0;
            for b in 0..1u64 << m {
                let b = Bits::from_lex_index(b, m);
                let sat = brute_force_sat(&encode_tau(&g, &b)?, DEFAULT_DECISION_BUDGET)?.is_sat();
                mismatches += (sat != range_membership(&g, &b)?) as u64;
            }
            let rec = Record::new()
                .with("case", i)
                .with("seed", s)
                .with("n", n)
                .with("m", m)
                .with("gates", g.internal_gate_count())
                .with("targets", 1u64 << m)
                .with("mismatches", mismatches);
            Ok((rec, mismatches))
        })
        .collect::<Result<_>>()?;
    let total: u64 = rows.iter().map(|r| r.1).sum();
    rows.into_iter().for_each(|(r, _)| rep.push(r));
    Ok((
        total == 0,
        format!("{circuits} circuits, {total} mismatches"),
    ))
}

fn toeplitz_universality(cfg: &Config, rep: &mut Report) -> Result<(bool, String)> {
    let n: usize = cfg.get("universality", "N")?;
    let m: usize = cfg.get("universality", "m")?;
    let r = universality_scan(n, m)?;
    let target = Rate::dyadic(m as u32);
    let pass = r.cmp_exact(&target).is_eq();
    rep.push(
        Record::new()
            .with("N", n)
            .with("m", m)
            .rate("max_collision", r)
            .rate("target", target),
    );
    Ok((
        pass,
        format!("max collision {} vs {}", rate_str(r), rate_str(target)),
    ))
}

/// A seeded subset of `{0,1}^n` of the given size.
pub fn random_support(n: usize, size: usize, seed: u64) -> Vec<Bits> {
    let mut rng = seeded(seed);
    let mut all: Vec<u64> = (0..1u64 << n).collect();
    for i in 0..size.min(all.len()) {
        let j = rng.random_range(i..all.len());
        all.swap(i, j);
    }
    let mut chosen = all[..size.min(all.len())].to_vec();
    chosen.sort_unstable();
    chosen
        .into_iter()
        .map(|x| Bits::from_lex_index(x, n))
        .collect()
}

fn extraction_distance(cfg: &Config, rep: &mut Report) -> Result<(bool, String)> {
    let n: usize = cfg.get("extract", "N")?;
    let m: usize = cfg.get("extract", "m")?;
    let size: usize = cfg.get("extract", "support")?;
    let trials: u64 = cfg.get("extract", "trials")?;
    let seed: u64 = cfg.get("extract", "seed")?;
    let support = random_support(n, size, seed);
    let est = extraction_distance_estimate(n, m, &support, trials, seed)?;
    // 2^-4 plus 0.02 sampling slack
    let limit = Rate::new(33, 400);
    let pass = est.distance.le(&limit);
    rep.push(
        Record::new()
            .with("N", n)
            .with("m", m)
            .with("support", support.len())
            .with("trials", est.trials())
            .with("keys", est.keys)
            .with("samples_per_key", est.samples_per_key)
            .with("seed", seed)
            .rate("distance", est.distance)
            .rate("limit", limit),
    );
    Ok((
        pass,
        format!("distance {:.4} (limit 0.0825)", est.distance.to_f64()),
    ))
}

fn composed_adversary(cfg: &Config, rep: &mut Report) -> Result<(bool, String)> {
    let n: usize = cfg.get("demibreak", "n")?;
    let big_n: usize = cfg.get("demibreak", "N")?;
    let m: usize = cfg.get("demibreak", "m")?;
    let budget: usize = cfg.get("demibreak", "gate_budget")?;
    let keys: usize = cfg.get("demibreak", "keys")?;
    let ys: u64 = cfg.get("demibreak", "y_samples")?;
    let seed: u64 = cfg.get("demibreak", "seed")?;
    let g = build_planted_generator(n, big_n, seed, budget)?;
    let adv = ComposedAdversary::new(&g, m, &LexBruteForce, KeyMode::Sample { count: keys, seed })?;
    let br = demi_break_report(&g, |y| adv.accepts(y), YMode::Sample { count: ys, seed })?;
    let inputs = 1u64 << n;
    let mut hits = 0u64;
    for x in 0..inputs {
        hits += adv.accepts(&eval_circuit(&g, &Bits::from_lex_index(x, n))?)? as u64;
    }
    let on_range = Rate::new(hits, inputs);
    let floor = Rate::new(2, 5);
    let pass = hits == 0 && br.accepts_on_range == 0 && br.accept_rate_uniform.ge(&floor);
    rep.push(
        Record::new()
            .with("n", n)
            .with("N", big_n)
            .with("m", m)
            .with("keys", adv.key_count())
            .with("seed", seed)
            .rate("accepts_on_range", on_range)
            .with("distinct_range_points", br.range_points_tested)
            .rate("accept_rate_uniform", br.accept_rate_uniform)
            .rate("accept_floor", floor),
    );
    Ok((
        pass,
        format!(
            "range accepts {}, uniform accept rate {}",
            rate_str(on_range),
            rate_str(br.accept_rate_uniform)
        ),
    ))
}

fn degree_preservation(cfg: &Config, rep: &mut Report) -> Result<(bool, String)> {
    let count: u64 = cfg.get("degree", "generators")?;
    let seed: u64 = cfg.get("degree", "seed")?;
    let mut bad = 0;
    for i in 0..count {
        let s = trial_seed(seed, i);
        let mut rng = seeded(s);
        let n = rng.random_range(6..=10usize);
        let big_n = n + rng.random_range(2..=8usize);
        let graph = sample_hypergraph(n, big_n, 5, s)?;
        let g = build_goldreich(&graph, &mst06_predicate())?;
        let m = rng.random_range(n + 1..=big_n);
        let key = sample_key(big_n, m, s)?;
        let c = compose_instance(&g, &key)?.circuit;
        let (dg, dc) = (circuit_degree(&g), circuit_degree(&c));
        bad += (dg != 2 || dc != dg) as u64;
        rep.push(
            Record::new()
                .with("case", i)
                .with("n", n)
                .with("N", big_n)
                .with("m", m)
                .with("deg_g", dg)
                .with("deg_c", dc),
        );
    }
    Ok((
        bad == 0,
        format!("{count} generators, {bad} degree changes"),
    ))
}

/// Gate values of `c` on `x` laid out as an assignment of `tau(c)`.
pub fn tau_assignment(c: &Gf2Circuit, x: &Bits) -> Result<Vec<bool>> {
    let vals = eval_gate_values(c, x)?;
    let mut a = x.to_bools();
    a.extend(
        c.gates()
            .iter()
            .zip(&vals)
            .filter(|(g, _)| !g.is_input())
            .map(|(_, &v)| v),
    );
    Ok(a)
}

fn canonical_reduction(cfg: &Config, rep: &mut Report) -> Result<(bool, String)> {
    let cases: u64 = cfg.get("reduction", "cases")?;
    let max_n: usize = cfg.get("reduction", "max_inputs")?;
    let seed: u64 = cfg.get("reduction", "seed")?;
    let rows: Vec<(Record, u64)> = (0..cases)
        .into_par_iter()
        .map(|i| -> Result<(Record, u64)> {
            let s = trial_seed(seed, i);
            let mut rng = seeded(s);
            let n = rng.random_range(1..=max_n);
            let m = rng.random_range(n + 1..=n + 4);
            let g = random_circuit(n, m, 12, s);
            let key = sample_key(m, rng.random_range(1..=m), s)?;
            let y = if rng.random() {
                eval_circuit(&g, &Bits::random(n, &mut rng))?
            } else {
                Bits::random(m, &mut rng)
            };
            let c = build_canonical_reduction(&g, &key, &y)?;
            let mut failures = 0u64;
            failures += (c.z != toeplitz_apply(&key, &y)?) as u64;
            failures += check_parity_reduction(&c.source, &c.target, &c.reduction).is_err() as u64;
            let mut satisfying = 0u64;
            for xi in 0..1u64 << n {
                let a = tau_assignment(&g, &Bits::from_lex_index(xi, n))?;
                if c.source.satisfied_by(&a) {
                    satisfying += 1;
                    failures += !c.target.satisfied_by(&c.reduction.apply(&a)) as u64;
                }
            }
            let rec = Record::new()
                .with("case", i)
                .with("n", n)
                .with("m", m)
                .with("key_m", key.output_len())
                .with("y", y.to_hex())
                .with("z", c.z.to_hex())
                .with("satisfying", satisfying)
                .with("failures", failures);
            Ok((rec, failures))
        })
        .collect::<Result<_>>()?;
    let total: u64 = rows.iter().map(|r| r.1).sum();
    rows.into_iter().for_each(|(r, _)| rep.push(r));
    Ok((total == 0, format!("{cases} cases, {total} failures")))
}

/// The weaken-then-resolve derivation of `(a+b = 0)` from `(a = 0)` and `(b = 0)`.
pub fn gadget_vector() -> (avoidforge_core::cnf::CnfFormula, ResXorProof) {
    let f = avoidforge_core::cnf::CnfFormula::new(2, vec![vec![-1], vec![-2]], Default::default())
        .expect("valid CNF");
    let mut p = ResXorProof::new();
    let a = p.push(LinearClause::unit(vec![1], false), Rule::Axiom(0));
    let b = p.push(LinearClause::unit(vec![2], false), Rule::Axiom(1));
    let w = p.push(
        LinearClause::new([(vec![1], true), (vec![1, 2], false)]),
        Rule::Weaken(b),
    );
    p.push(
        LinearClause::unit(vec![1, 2], false),
        Rule::Resolve(a, w, vec![1]),
    );
    (f, p)
}

fn resxor_transform(cfg: &Config, rep: &mut Report) -> Result<(bool, String)> {
    let cases: u64 = cfg.get("transform", "cases")?;
    let seed: u64 = cfg.get("transform", "seed")?;
    let mut bad = 0u64;
    for i in 0..cases {
        let s = trial_seed(seed, i);
        let (kind, case) = if i % 2 == 0 {
            ("width1", sample_reduction_case(s)?)
        } else {
            ("canonical", sample_linear_canonical_case(s)?.0)
        };
        let bound = transform_bound(&case.source, &case.target, &case.proof);
        let (len, ok) = match transform_resxor_proof(
            &case.proof,
            &case.target,
            &case.source,
            &case.reduction,
        ) {
            Ok(out) => (
                out.len(),
                check_resxor_proof(&case.source, &out).is_ok() && out.len() <= bound,
            ),
            Err(_) => (0, false),
        };
        bad += !ok as u64;
        rep.push(
            Record::new()
                .with("case", i)
                .with("kind", kind)
                .with("src_vars", case.source.num_vars())
                .with("dst_clauses", case.target.clauses().len())
                .with("input_lines", case.proof.len())
                .with("output_lines", len)
                .with("bound", bound)
                .with("valid", ok),
        );
    }
    let (f, p) = gadget_vector();
    let gadget = check_resxor_derivation(&f, &p).is_ok();
    rep.push(Record::new().with(
        "gadget_vector",
        if gadget { "accepted" } else { "rejected" },
    ));
    Ok((
        bad == 0 && gadget,
        format!(
            "{cases} cases, {bad} invalid, gadget {}",
            if gadget { "accepted" } else { "rejected" }
        ),
    ))
}

fn lautemann_cover(cfg: &Config, rep: &mut Report) -> Result<(bool, String)> {
    let m: usize = cfg.get("lautemann", "m")?;
    let t: usize = cfg.get("lautemann", "t")?;
    let trials: u64 = cfg.get("lautemann", "trials")?;
    let seed: u64 = cfg.get("lautemann", "seed")?;
    let size = (1usize << m).div_ceil(3);
    let covered = lautemann_trials(m, size, t, trials, seed)?;
    // at least 98% of trials
    let pass = covered * 50 >= trials * 49;
    rep.push(
        Record::new()
            .with("m", m)
            .with("size", size)
            .with("t", t)
            .with("seed", seed)
            .rate("covered", Rate::new(covered, trials)),
    );
    Ok((pass, format!("covered in {covered}/{trials} trials")))
}

fn ilango_soundness(cfg: &Config, rep: &mut Report) -> Result<(bool, String)> {
    let n: usize = cfg.get("ilango", "n")?;
    let big_n: usize = cfg.get("ilango", "N")?;
    let t: usize = cfg.get("ilango", "t")?;
    let budget: usize = cfg.get("ilango", "gate_budget")?;
    let tuples: usize = cfg.get("ilango", "tuples")?;
    let seed: u64 = cfg.get("ilango", "seed")?;
    let g = build_planted_generator(n, big_n, seed, budget)?;
    let adv = IlangoAdversary::new(&g, &LexBruteForce, t, tuples, seed)?;
    let mut hits = 0u64;
    for x in 0..1u64 << n {
        let y = eval_circuit(&g, &Bits::from_lex_index(x, n))?;
        let acc = adv.accepts(&y)?;
        hits += acc as u64;
        rep.push(
            Record::new()
                .with("x", x)
                .with("y", y.to_hex())
                .with("accepts", acc),
        );
    }
    rep.push(
        Record::new()
            .with("t", t)
            .with("tuples", tuples)
            .with("below_recommended_t", adv.below_recommended_t())
            .with("hits", hits),
    );
    Ok((
        hits == 0,
        format!("{hits} acceptances on {} range inputs", 1u64 << n),
    ))
}

fn set_size_gap(cfg: &Config, rep: &mut Report) -> Result<(bool, String)> {
    let n: usize = cfg.get("gs", "universe")?;
    let large: usize = cfg.get("gs", "large")?;
    let small: usize = cfg.get("gs", "small")?;
    let s: u64 = cfg.get("gs", "threshold")?;
    let reps: usize = cfg.get("gs", "reps")?;
    let runs: u64 = cfg.get("gs", "runs")?;
    let hash_len: Option<usize> = cfg.get_opt("gs", "hash_len")?;
    let seed: u64 = cfg.get("gs", "seed")?;
    let mut rng = seeded(seed);
    let mut order: Vec<u64> = (0..1u64 << n).collect();
    for i in 0..order.len() {
        let j = rng.random_range(i..order.len());
        order.swap(i, j);
    }
    let mut verdicts = Vec::new();
    for (label, size) in [("large", large), ("small", small)] {
        let mut set = order[..size].to_vec();
        set.sort_unstable();
        let accepted = (0..runs)
            .into_par_iter()
            .map(|r| {
                gs_protocol_on_set(
                    n,
                    |x| set.binary_search(&x).is_ok(),
                    &set,
                    s,
                    reps,
                    hash_len,
                    trial_seed(seed, r),
                )
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let acc = accepted.iter().filter(|o| o.accept).count() as u64;
        // the circuit front end agrees with the set-based run
        let circuit = membership_circuit(n, &set)?;
        let via_circuit = gs_setsize_protocol(&circuit, s, reps, hash_len, trial_seed(seed, 0))?;
        let agrees = via_circuit == accepted[0];
        rep.push(
            Record::new()
                .with("set", label)
                .with("size", size)
                .with("threshold", s)
                .with("reps", reps)
                .with("hash_len", accepted[0].hash_len)
                .rate("accept", Rate::new(acc, runs))
                .with("circuit_agrees", agrees),
        );
        verdicts.push((acc, agrees));
    }
    let (acc_large, ok_l) = verdicts[0];
    let (acc_small, ok_s) = verdicts[1];
    let rej_small = runs - acc_small;
    let pass = ok_l && ok_s && acc_large * 5 >= runs * 3 && rej_small * 5 >= runs * 3;
    Ok((
        pass,
        format!("|S|={large}: accept {acc_large}/{runs}; |S|={small}: reject {rej_small}/{runs}"),
    ))
}

fn game_cnf_duality(cfg: &Config, rep: &mut Report) -> Result<(bool, String)> {
    let cases: u64 = cfg.get("duality", "cases")?;
    let seed: u64 = cfg.get("duality", "seed")?;
    let rows: Vec<(Record, bool)> = (0..cases)
        .into_par_iter()
        .map(|i| -> Result<(Record, bool)> {
            let s = trial_seed(seed, i);
            let mut rng = seeded(s);
            let n = rng.random_range(1..=3usize);
            let m = n + rng.random_range(1..=2usize);
            let g = build_planted_generator(n, m, s, n + m + 4)?;
            let k = rng.random_range(1..=2usize);
            let propose = |rng: &mut avoidforge_core::rng::SeededRng| -> Result<Bits> {
                Ok(if rng.random() {
                    eval_circuit(&g, &Bits::random(n, rng))?
                } else {
                    Bits::random(m, rng)
                })
            };
            let constant = i % 2 == 0;
            let (student, circuits) = if constant {
                let ys = (0..k)
                    .map(|_| propose(&mut rng))
                    .collect::<Result<Vec<_>>>()?;
                let circuits = constant_student_circuits(n, &ys)?;
                (StudentKind::Constant(ys), circuits)
            } else {
                let mut circuits = constant_student_circuits(n, &[propose(&mut rng)?])?;
                if k == 2 {
                    circuits.push(random_circuit(n, m, 6, s));
                }
                (StudentKind::Circuits(circuits.clone()), circuits)
            };
            let wins = student_wins_all_teachers(&g, &Student::new(student, k)?, k)?;
            let sat = brute_force_sat(
                &encode_student_loses(&g, &circuits)?,
                DEFAULT_DECISION_BUDGET,
            )?
            .is_sat();
            let ok = wins != sat;
            let rec = Record::new()
                .with("case", i)
                .with("n", n)
                .with("m", m)
                .with("k", k)
                .with("student", if constant { "constant" } else { "circuits" })
                .with("student_wins", wins)
                .with("cnf", if sat { "sat" } else { "unsat" })
                .with("match", ok);
            Ok((rec, ok))
        })
        .collect::<Result<_>>()?;
    let bad = rows.iter().filter(|r| !r.1).count();
    rows.into_iter().for_each(|(r, _)| rep.push(r));
    Ok((bad == 0, format!("{cases} cases, {bad} mismatches")))
}

fn sparse_encoder(cfg: &Config, rep: &mut Report) -> Result<(bool, String)> {
    let m: usize = cfg.get("encoder", "m")?;
    let s: usize = cfg.get("encoder", "s")?;
    let d: usize = cfg.get("encoder", "d")?;
    let enc = build_sparse_encoder(m, s, d)?;
    let mut vectors = 0u64;
    let mut verified = 0u64;
    for v in 0..1u64 << m {
        if (v.count_ones() as usize) > s {
            continue;
        }
        vectors += 1;
        let v = Bits::from_lex_index(v, m);
        let pre = sparse_preimage(m, s, d, &v)?;
        verified += (eval_circuit(&enc, &pre)? == v) as u64;
    }
    let polys = circuit_to_polynomials(&enc, DEFAULT_POLY_BUDGET)?;
    let max_deg = polys.iter().map(|p| p.degree()).max().unwrap_or(0);
    let pass = verified == vectors && max_deg <= d;
    rep.push(
        Record::new()
            .with("m", m)
            .with("s", s)
            .with("d", d)
            .with("input_len", enc.n())
            .with("vectors", vectors)
            .with("verified", verified)
            .with("max_degree", max_deg),
    );
    Ok((
        pass,
        format!(
            "input length {}, {verified}/{vectors} preimages, max degree {max_deg}",
            enc.n()
        ),
    ))
}

/// Runs `avoidforge report --criterion <id>` twice per id and compares the report bytes.
/// Returns the ids whose reports differ or whose runs failed.
pub fn reproducibility(
    bin: &Path,
    config: Option<&Path>,
    ids: &[u32],
    workdir: &Path,
) -> Result<Vec<u32>> {
    let mut differing = Vec::new();
    for &id in ids {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let out = workdir.join(format!("criterion{id}-run{run}.report"));
            let mut cmd = Command::new(bin);
            cmd.args(["report", "--criterion", &id.to_string(), "--out"])
                .arg(&out);
            if let Some(c) = config {
                cmd.arg("--config").arg(c);
            }
            let status = cmd.stderr(std::process::Stdio::null()).status()?;
            // exit 1 still writes a report; anything else is a run failure
            if !matches!(status.code(), Some(0) | Some(1)) {
                outputs.push(None);
                continue;
            }
            outputs.push(std::fs::read(&out).ok());
        }
        if outputs[0].is_none() || outputs[0] != outputs[1] {
            differing.push(id);
        }
    }
    Ok(differing)
}
