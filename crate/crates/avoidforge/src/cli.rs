//! Command-line grammar and dispatch.

use std::fs;
use std::path::{Path, PathBuf};

use avoidforge_core::avoid::{
    brute_force_avoid, compose_instance, ilango_instance, AvoidInstance, KeyMode,
};
use avoidforge_core::cnf::{
    brute_force_sat, encode_student_loses, encode_tau, SatResult, DEFAULT_DECISION_BUDGET,
};
use avoidforge_core::extract::{extraction_distance_estimate, sample_key, toeplitz_apply};
use avoidforge_core::game::{
    am_round_trial, gs_setsize_protocol, run_game, trace_success_probability, AmVerdict, Student,
    StudentKind, TeacherKind,
};
use avoidforge_core::gens::{
    build_goldreich, build_lpn_generator, build_planted_generator, mst06_predicate,
    sample_hypergraph, tt_desc_len, tt_evaluate, LpnParams,
};
use avoidforge_core::parred::{
    build_canonical_reduction, check_parity_reduction, check_resxor_proof, refute_linear_system,
    transform_resxor_proof,
};
use avoidforge_core::{Bits, Gf2Circuit, Rate};
use clap::{Args, Parser, Subcommand};

use crate::config::Config;
use crate::errors::ToolError;
use crate::experiments::{run_criterion, CRITERIA};
use crate::formats::dimacs::{emit_dimacs, parse_dimacs};
use crate::formats::hexlines::{parse_bits_arg, parse_hex_lines};
use crate::formats::hypergraph::{emit_hypergraph, parse_hypergraph};
use crate::formats::key::{emit_key, parse_key};
use crate::formats::netlist::{emit_netlist, parse_netlist};
use crate::formats::proof::{emit_proof, parse_equations, parse_proof};
use crate::formats::reduction::{emit_reduction, parse_reduction};
use crate::formats::trace::{emit_trace, parse_trace};
use crate::report::{Record, Report};

type Result<T> = std::result::Result<T, ToolError>;

#[derive(Debug, Parser)]
#[command(
    name = "avoidforge",
    version,
    about = "Range avoidance experiments over GF(2) circuits"
)]
pub struct Cli {
    /// Experiment configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Overrides the seed of the selected experiment or command.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a candidate generator.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Toeplitz extractor keys.
    #[command(subcommand)]
    Ext(ExtCmd),
    /// Compose a generator with an extractor key.
    Compose {
        #[arg(long)]
        gen: PathBuf,
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the shifted instance `C_s(x, i) = G(x) xor s_i`.
    Ilango {
        #[arg(long)]
        gen: PathBuf,
        /// Shifts, one hex line each.
        #[arg(long)]
        shifts: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the lex-first string outside the range of a circuit.
    Avoid {
        #[arg(long)]
        circuit: PathBuf,
    },
    #[command(subcommand)]
    Cnf(CnfCmd),
    /// Simple parity reductions.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Res(xor) proofs.
    #[command(subcommand)]
    Resxor(ResxorCmd),
    /// Student-Teacher games and protocols.
    #[command(subcommand)]
    Game(GameCmd),
    /// Run acceptance experiments and write their reports.
    Report {
        /// Criterion id; every in-process criterion when omitted.
        #[arg(long)]
        criterion: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenCmd {
    /// Goldreich local generator with the MST06 predicate.
    Goldreich {
        /// Hypergraph file; sampled from `--n --m --d` and the seed when absent.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 5)]
        d: usize,
        /// Also write the sampled hypergraph here.
        #[arg(long)]
        graph_out: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// LPN generator with a sparse error encoder and a seeded matrix.
    Lpn {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Noise rate as `num/den`.
        #[arg(long)]
        mu: String,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Truth-table generator: prints the description length, or the table of `--desc`.
    Tt {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        /// Description bits (binary, or hex with a `hex:` prefix).
        #[arg(long)]
        desc: Option<String>,
    },
    /// Random planted circuit.
    Planted {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        n_out: usize,
        #[arg(long)]
        gate_budget: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExtCmd {
    /// Sample a key `{0,1}^N -> {0,1}^m`.
    Keygen {
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a key to `--y`, or estimate the extraction distance of a flat source.
    Test {
        #[arg(long)]
        key: Option<PathBuf>,
        #[arg(long)]
        y: Option<String>,
        /// Support of the flat source, one hex line per point.
        #[arg(long)]
        support: Option<PathBuf>,
        #[arg(long = "N")]
        big_n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum CnfCmd {
    /// `tau_b(G)` in DIMACS.
    Tau {
        #[arg(long)]
        gen: PathBuf,
        #[arg(long)]
        b: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The Student-loses formula for Student circuits `B_1..B_k`.
    StudentLoses {
        #[arg(long)]
        gen: PathBuf,
        #[arg(long = "student", required = true)]
        students: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide a DIMACS formula by brute force.
    Sat {
        #[arg(long)]
        cnf: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum ReduceCmd {
    /// The reduction from `tau_y(G)` to `tau_z(C_r)`.
    Build {
        #[arg(long)]
        gen: PathBuf,
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        y: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        from_out: Option<PathBuf>,
        #[arg(long)]
        to_out: Option<PathBuf>,
    },
    /// Check a reduction from `--from` to `--to`.
    Check {
        #[arg(long)]
        reduction: PathBuf,
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum ResxorCmd {
    /// Check a refutation of a DIMACS formula.
    Check {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        proof: PathBuf,
    },
    /// Turn a refutation of `--to` into one of `--from` along a reduction.
    Transform {
        #[arg(long)]
        proof: PathBuf,
        #[arg(long)]
        reduction: PathBuf,
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Refute the clausal expansion of an inconsistent linear system.
    RefuteLinear {
        #[arg(long)]
        equations: PathBuf,
        #[arg(long)]
        cnf_out: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct StudentArg {
    /// `lex`, `bruteforce`, `random:<seed>` or `constant:<file>` (hex lines).
    #[arg(long, default_value = "bruteforce")]
    student: String,
}

#[derive(Debug, Subcommand)]
pub enum GameCmd {
    /// Play the Student against a Teacher on a circuit.
    Run {
        #[arg(long)]
        circuit: PathBuf,
        #[command(flatten)]
        student: StudentArg,
        /// `lex` or `random:<seed>`.
        #[arg(long, default_value = "lex")]
        teacher: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fraction of keys under which a trace is valid.
    TraceProb {
        #[arg(long)]
        gen: PathBuf,
        #[arg(long)]
        trace: PathBuf,
        #[command(flatten)]
        student: StudentArg,
        #[arg(long)]
        m: usize,
        /// Sampled key count; every key when absent.
        #[arg(long)]
        keys: Option<usize>,
    },
    /// Set-size lower bound protocol for `{x : pred(x) = 1}`.
    Gs {
        #[arg(long)]
        pred: PathBuf,
        #[arg(long)]
        threshold: u64,
        #[arg(long, default_value_t = 31)]
        reps: usize,
        #[arg(long)]
        hash_len: Option<usize>,
    },
    /// One round test of the AM adversary.
    AmTrial {
        #[arg(long)]
        gen: PathBuf,
        #[command(flatten)]
        student: StudentArg,
        #[arg(long)]
        j: usize,
        /// Earlier answers `s_1..s_(j-1)`, one hex line each.
        #[arg(long)]
        prefix: Option<PathBuf>,
        #[arg(long)]
        y: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        keys: Option<usize>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| ToolError::Usage(format!("{}: {e}", path.display())))
}

fn write_out(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => {
            fs::write(p, text).map_err(|e| ToolError::Usage(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_circuit(path: &Path) -> Result<Gf2Circuit> {
    Ok(parse_netlist(&read(path)?)?)
}

fn parse_rate(s: &str) -> Result<Rate> {
    let bad = || ToolError::Usage(format!("expected num/den, found {s:?}"));
    let (a, b) = s.split_once('/').ok_or_else(bad)?;
    let (num, den) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
    if den == 0 {
        return Err(bad());
    }
    Ok(Rate::new(num, den))
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| ToolError::Usage(format!("missing --{flag}")))
}

fn student(arg: &StudentArg, c: &Gf2Circuit, rounds: usize) -> Result<Student> {
    let kind = match arg.student.split_once(':') {
        None if arg.student == "lex" => StudentKind::Lex,
        None if arg.student == "bruteforce" => StudentKind::BruteForce,
        Some(("random", s)) => StudentKind::Random(
            s.parse()
                .map_err(|_| ToolError::Usage(format!("bad seed {s:?}")))?,
        ),
        Some(("constant", f)) => {
            StudentKind::Constant(parse_hex_lines(&read(Path::new(f))?, c.m())?)
        }
        _ => {
            return Err(ToolError::Usage(format!(
                "unknown student {:?}",
                arg.student
            )))
        }
    };
    Ok(Student::new(kind, rounds)?)
}

fn key_mode(keys: Option<usize>, seed: u64) -> KeyMode {
    keys.map_or(KeyMode::Exhaustive, |count| KeyMode::Sample { count, seed })
}

/// Runs one parsed command. Returns the exit status for commands whose answer is a verdict.
pub fn run(cli: Cli) -> Result<i32> {
    let mut cfg = match &cli.config {
        Some(p) => Config::parse(&read(p)?)?,
        None => Config::default(),
    };
    let seed = cli.seed.unwrap_or(0);
    match cli.command {
        Command::Gen(g) => gen(g, seed),
        Command::Ext(e) => ext(e, seed),
        Command::Compose { gen, key, out } => {
            let c = compose_instance(&load_circuit(&gen)?, &parse_key(&read(&key)?)?)?;
            write_out(out.as_deref(), &emit_netlist(&c.circuit))?;
            Ok(0)
        }
        Command::Ilango { gen, shifts, out } => {
            let g = load_circuit(&gen)?;
            let shifts = parse_hex_lines(&read(&shifts)?, g.m())?;
            write_out(
                out.as_deref(),
                &emit_netlist(&ilango_instance(&g, &shifts)?.circuit),
            )?;
            Ok(0)
        }
        Command::Avoid { circuit } => {
            println!("{}", brute_force_avoid(&load_circuit(&circuit)?)?.to_hex());
            Ok(0)
        }
        Command::Cnf(c) => cnf(c),
        Command::Reduce(r) => reduce(r),
        Command::Resxor(r) => resxor(r),
        Command::Game(g) => game(g, seed),
        Command::Report { criterion, out } => {
            let ids: Vec<u32> = match criterion {
                Some(id) => vec![id],
                None => CRITERIA.iter().map(|(i, _)| *i).collect(),
            };
            let mut text = String::new();
            let mut all = true;
            for id in ids {
                if let Some(s) = cli.seed {
                    override_seed(&mut cfg, id, s)?;
                }
                let run = run_criterion(id, &cfg)?;
                eprintln!(
                    "[{}] {} {}: {}",
                    if run.pass { "PASS" } else { "FAIL" },
                    run.id,
                    run.name,
                    run.summary
                );
                all &= run.pass;
                text.push_str(&run.report.emit());
            }
            write_out(out.as_deref(), &text)?;
            Ok(if all { 0 } else { 1 })
        }
    }
}

fn override_seed(cfg: &mut Config, id: u32, seed: u64) -> Result<()> {
    let section = match id {
        1 => "tau",
        3 => "extract",
        4 => "demibreak",
        5 => "degree",
        6 => "reduction",
        7 => "transform",
        8 => "lautemann",
        9 => "ilango",
        10 => "gs",
        11 => "duality",
        _ => return Ok(()),
    };
    Ok(cfg.set(section, "seed", seed)?)
}

fn gen(cmd: GenCmd, seed: u64) -> Result<i32> {
    match cmd {
        GenCmd::Goldreich {
            graph,
            n,
            m,
            d,
            graph_out,
            out,
        } => {
            let graph = match graph {
                Some(p) => parse_hypergraph(&read(&p)?)?,
                None => sample_hypergraph(need(n, "n")?, need(m, "m")?, d, seed)?,
            };
            if let Some(p) = graph_out {
                write_out(Some(&p), &emit_hypergraph(&graph))?;
            }
            write_out(
                out.as_deref(),
                &emit_netlist(&build_goldreich(&graph, &mst06_predicate())?),
            )?;
        }
        GenCmd::Lpn { n, m, mu, d, out } => {
            let p = LpnParams::random(n, m, parse_rate(&mu)?, d, seed)?;
            write_out(out.as_deref(), &emit_netlist(&build_lpn_generator(&p)?))?;
        }
        GenCmd::Tt { n, s, desc } => match desc {
            None => println!("desc_len={}", tt_desc_len(n, s)),
            Some(d) => println!(
                "{}",
                tt_evaluate(n, s, &parse_bits_arg(&d, tt_desc_len(n, s))?).to_hex()
            ),
        },
        GenCmd::Planted {
            n,
            n_out,
            gate_budget,
            out,
        } => {
            write_out(
                out.as_deref(),
                &emit_netlist(&build_planted_generator(n, n_out, seed, gate_budget)?),
            )?;
        }
    }
    Ok(0)
}

fn ext(cmd: ExtCmd, seed: u64) -> Result<i32> {
    match cmd {
        ExtCmd::Keygen { big_n, m, out } => {
            write_out(out.as_deref(), &emit_key(&sample_key(big_n, m, seed)?))?
        }
        ExtCmd::Test {
            key,
            y,
            support,
            big_n,
            m,
            trials,
        } => {
            if let Some(k) = key {
                let key = parse_key(&read(&k)?)?;
                let y = parse_bits_arg(&need(y, "y")?, key.input_len())?;
                println!("{}", toeplitz_apply(&key, &y)?.to_hex());
            } else {
                let (n, m) = (need(big_n, "N")?, need(m, "m")?);
                let support = parse_hex_lines(&read(&need(support, "support")?)?, n)?;
                let est = extraction_distance_estimate(n, m, &support, trials, seed)?;
                let mut r = Report::new("ext-test");
                r.push(
                    Record::new()
                        .with("N", n)
                        .with("m", m)
                        .with("support", support.len())
                        .with("trials", est.trials())
                        .with("seed", seed)
                        .rate("distance", est.distance),
                );
                print!("{}", r.emit());
            }
        }
    }
    Ok(0)
}

fn cnf(cmd: CnfCmd) -> Result<i32> {
    match cmd {
        CnfCmd::Tau { gen, b, out } => {
            let g = load_circuit(&gen)?;
            write_out(
                out.as_deref(),
                &emit_dimacs(&encode_tau(&g, &parse_bits_arg(&b, g.m())?)?),
            )?;
        }
        CnfCmd::StudentLoses { gen, students, out } => {
            let g = load_circuit(&gen)?;
            let b = students
                .iter()
                .map(|p| load_circuit(p))
                .collect::<Result<Vec<_>>>()?;
            write_out(out.as_deref(), &emit_dimacs(&encode_student_loses(&g, &b)?))?;
        }
        CnfCmd::Sat { cnf } => {
            match brute_force_sat(&parse_dimacs(&read(&cnf)?)?, DEFAULT_DECISION_BUDGET)? {
                SatResult::Sat(a) => {
                    let lits: Vec<String> = a
                        .iter()
                        .enumerate()
                        .map(|(i, &v)| {
                            if v {
                                format!("{}", i + 1)
                            } else {
                                format!("-{}", i + 1)
                            }
                        })
                        .collect();
                    println!("s SATISFIABLE\nv {} 0", lits.join(" "));
                }
                SatResult::Unsat => println!("s UNSATISFIABLE"),
            }
        }
    }
    Ok(0)
}

fn reduce(cmd: ReduceCmd) -> Result<i32> {
    match cmd {
        ReduceCmd::Build {
            gen,
            key,
            y,
            out,
            from_out,
            to_out,
        } => {
            let g = load_circuit(&gen)?;
            let c = build_canonical_reduction(
                &g,
                &parse_key(&read(&key)?)?,
                &parse_bits_arg(&y, g.m())?,
            )?;
            write_out(Some(&out), &emit_reduction(&c.reduction))?;
            if let Some(p) = from_out {
                write_out(Some(&p), &emit_dimacs(&c.source))?;
            }
            if let Some(p) = to_out {
                write_out(Some(&p), &emit_dimacs(&c.target))?;
            }
            println!("z={}", c.z.to_hex());
            Ok(0)
        }
        ReduceCmd::Check {
            reduction,
            from,
            to,
        } => {
            let f = parse_dimacs(&read(&from)?)?;
            let g = parse_dimacs(&read(&to)?)?;
            match check_parity_reduction(&f, &g, &parse_reduction(&read(&reduction)?)?) {
                Ok(()) => {
                    println!("OK");
                    Ok(0)
                }
                Err(e) => Err(ToolError::Verify(e.to_string())),
            }
        }
    }
}

fn resxor(cmd: ResxorCmd) -> Result<i32> {
    match cmd {
        ResxorCmd::Check { cnf, proof } => {
            let (_, p) = parse_proof(&read(&proof)?)?;
            check_resxor_proof(&parse_dimacs(&read(&cnf)?)?, &p)?;
            println!("OK lines={}", p.len());
            Ok(0)
        }
        ResxorCmd::Transform {
            proof,
            reduction,
            from,
            to,
            out,
        } => {
            let (name, p) = parse_proof(&read(&proof)?)?;
            let f = parse_dimacs(&read(&from)?)?;
            let g = parse_dimacs(&read(&to)?)?;
            let t = transform_resxor_proof(&p, &g, &f, &parse_reduction(&read(&reduction)?)?)?;
            check_resxor_proof(&f, &t)?;
            write_out(
                out.as_deref(),
                &emit_proof(&format!("{name}-transformed"), &t),
            )?;
            Ok(0)
        }
        ResxorCmd::RefuteLinear {
            equations,
            cnf_out,
            out,
        } => {
            let (f, p) = refute_linear_system(&parse_equations(&read(&equations)?)?)?;
            if let Some(c) = cnf_out {
                write_out(Some(&c), &emit_dimacs(&f))?;
            }
            write_out(out.as_deref(), &emit_proof("refute-linear", &p))?;
            Ok(0)
        }
    }
}

fn game(cmd: GameCmd, seed: u64) -> Result<i32> {
    match cmd {
        GameCmd::Run {
            circuit,
            student: s,
            teacher,
            k,
            out,
        } => {
            let c = load_circuit(&circuit)?;
            let a = student(&s, &c, k)?;
            let t = match teacher.split_once(':') {
                None if teacher == "lex" => TeacherKind::LexFirst,
                Some(("random", v)) => TeacherKind::SeededRandom(
                    v.parse()
                        .map_err(|_| ToolError::Usage(format!("bad seed {v:?}")))?,
                ),
                _ => return Err(ToolError::Usage(format!("unknown teacher {teacher:?}"))),
            };
            let trace = run_game(&AvoidInstance::raw(c)?, &a, &t, k)?;
            write_out(out.as_deref(), &emit_trace(&trace))?;
        }
        GameCmd::TraceProb {
            gen,
            trace,
            student: s,
            m,
            keys,
        } => {
            let g = load_circuit(&gen)?;
            let t = parse_trace(&read(&trace)?, "trace", g.n(), m)?;
            let answers: Vec<Bits> = t.rounds.iter().map_while(|r| r.q.clone()).collect();
            let a = student(&s, &g, answers.len().max(1))?;
            let kf = trace_success_probability(&a, &g, m, key_mode(keys, seed), &answers)?;
            let mut r = Report::new("trace-prob");
            r.push(
                Record::new()
                    .with("rounds", answers.len())
                    .with("keys", kf.keys)
                    .with("seed", seed)
                    .rate("p", kf.p),
            );
            print!("{}", r.emit());
        }
        GameCmd::Gs {
            pred,
            threshold,
            reps,
            hash_len,
        } => {
            let o = gs_setsize_protocol(&load_circuit(&pred)?, threshold, reps, hash_len, seed)?;
            let mut r = Report::new("gs");
            r.push(
                Record::new()
                    .with("threshold", threshold)
                    .with("hash_len", o.hash_len)
                    .with("seed", seed)
                    .rate(
                        "accepted_reps",
                        Rate::new(o.accepted_reps as u64, o.reps as u64),
                    )
                    .with("accept", o.accept),
            );
            print!("{}", r.emit());
        }
        GameCmd::AmTrial {
            gen,
            student: s,
            j,
            prefix,
            y,
            m,
            keys,
        } => {
            let g = load_circuit(&gen)?;
            let prefix = match prefix {
                Some(p) => parse_hex_lines(&read(&p)?, g.n())?,
                None => Vec::new(),
            };
            let a = student(&s, &g, j)?;
            let t = am_round_trial(
                &a,
                &g,
                key_mode(keys, seed),
                j,
                &prefix,
                &parse_bits_arg(&y, g.m())?,
                m,
            )?;
            let verdict = match t.verdict {
                AmVerdict::Accept => "accept",
                AmVerdict::Reject => "reject",
                AmVerdict::Inconclusive => "inconclusive",
            };
            let mut r = Report::new("am-trial");
            r.push(
                Record::new()
                    .with("j", j)
                    .with("m", m)
                    .with("keys", t.keys)
                    .with("seed", seed)
                    .rate("p", t.p)
                    .with("verdict", verdict),
            );
            print!("{}", r.emit());
        }
    }
    Ok(0)
}
