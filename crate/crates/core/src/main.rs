//! Command-line front end: parses run configurations, dispatches the
//! deciders and identity suites, and emits deterministic JSON or table
//! reports.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use ut_topology::acceptance::run_battery;
use ut_topology::config::SearchConfig;
use ut_topology::heisenberg::{h_comm, h_mul, switch_iso, to_ut3, BiadditiveMap, HeisenbergElement};
use ut_topology::report::{Verdict, VerdictReport};
use ut_topology::ring::{RingElem, RingSpec};
use ut_topology::topology::deciders::{
    decide_cokey, decide_cominimal, decide_injkey, decide_key, decide_relatively_minimal,
    merson_check, merson_exhaustive, restriction_map_table,
};
use ut_topology::topology::triples::{
    is_minimal_map, is_strongly_minimal_map, triple_compatible, triple_literal, TopologyTriple,
};
use ut_topology::topology::GradedAdicTopology;
use ut_topology::ut::{commutator_identity, SubgroupSpec, UTMatrix};

#[derive(Parser)]
#[command(
    name = "ut-topology",
    about = "Exact-arithmetic checks for graded adic topologies on unitriangular groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckProperty {
    Key,
    Cokey,
    Relmin,
    Cominimal,
    Injkey,
}

#[derive(Clone, Copy, ValueEnum)]
enum TripleMode {
    Compat,
    Minimal,
    StronglyMinimal,
}

#[derive(Args)]
struct BoxArgs {
    /// Primes whose powers index the enumerated moduli, e.g. 2,3
    #[arg(long, value_delimiter = ',', required = true)]
    primes: Vec<u64>,
    /// Finite exponents run over 0..=exp-cap (plus the infinite exponent)
    #[arg(long)]
    exp_cap: u32,
    /// Override the finite truncation modulus L
    #[arg(long)]
    truncation: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Randomized closure trials per oracle certification
    #[arg(long, default_value_t = 1000)]
    trials: u32,
}

#[derive(Args)]
struct EmitArgs {
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,
    /// Include wall-clock timing in the report (breaks byte-identity)
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the commutator and Heisenberg identity suites with exact arithmetic
    VerifyIdentities {
        #[arg(long)]
        n: usize,
        /// Ring literal: Z or Z/m
        #[arg(long, default_value = "Z")]
        ring: String,
        #[arg(long, default_value_t = 1000)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        emit: EmitArgs,
    },
    /// Decide a subgroup property over the enumerated coarser Hausdorff family
    Check {
        #[arg(value_enum)]
        property: CheckProperty,
        #[arg(long)]
        n: usize,
        /// Topology literal, e.g. "gt(n=3; Omega, Omega)"
        #[arg(long)]
        gamma: String,
        /// Subgroup literal: center, derived, oneparam(i,j), filtration(m), whole
        #[arg(long)]
        subject: String,
        #[command(flatten)]
        search: BoxArgs,
        #[command(flatten)]
        emit: EmitArgs,
    },
    /// Agreement-forces-equality check: one coarser pair, or exhaustive sweep
    CheckMerson {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        subject: String,
        /// Reference topology literal (with --coarser: single-pair check)
        #[arg(long)]
        gamma: Option<String>,
        /// Coarser candidate topology literal
        #[arg(long)]
        coarser: Option<String>,
        #[command(flatten)]
        search: BoxArgs,
        #[command(flatten)]
        emit: EmitArgs,
    },
    /// Compatibility and minimality checks for a biadditive map triple
    CheckTriple {
        /// Map literal, e.g. "m(Z)" or "w_n(Z/4, n=2)"
        #[arg(long)]
        map: String,
        /// Triple literal, e.g. "triple(sigma=Omega; tau=Omega; nu=Omega)"
        #[arg(long)]
        triple: String,
        #[arg(long, value_enum, default_value_t = TripleMode::Compat)]
        mode: TripleMode,
        #[command(flatten)]
        search: BoxArgs,
        #[command(flatten)]
        emit: EmitArgs,
    },
    /// Tabulate the restriction map over the coarser fragment and check the
    /// sup-morphism law
    MapTable {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        subject: String,
        #[command(flatten)]
        search: BoxArgs,
        #[command(flatten)]
        emit: EmitArgs,
    },
    /// Run the full twelve-criterion acceptance battery
    ReproducePaper,
}

fn build_config(b: &BoxArgs) -> Result<SearchConfig, ut_topology::Error> {
    let mut c = SearchConfig::new(b.primes.clone(), b.exp_cap)?
        .with_seed(b.seed)
        .with_trials(b.trials);
    if let Some(l) = b.truncation {
        c = c.with_truncation(l);
    }
    Ok(c)
}

/// Serializes a report under the fixed schema with stable key order.
fn emit_verdict(
    command: &str,
    config: Value,
    verdict: Verdict,
    witnesses: &[String],
    notes: &[String],
    emit: &EmitArgs,
    started: Instant,
) {
    match emit.output {
        OutputFormat::Json => {
            let mut doc = Map::new();
            doc.insert("command".into(), json!(command));
            doc.insert("config".into(), config);
            doc.insert("verdict".into(), json!(verdict.to_string()));
            doc.insert("witnesses".into(), json!(witnesses));
            if emit.timing {
                doc.insert("timing_ms".into(), json!(started.elapsed().as_millis() as u64));
            }
            println!("{}", serde_json::to_string_pretty(&Value::Object(doc)).unwrap());
        }
        OutputFormat::Table => {
            println!("command : {command}");
            println!("config  : {}", serde_json::to_string(&config).unwrap());
            println!("verdict : {verdict}");
            for w in witnesses {
                println!("witness : {w}");
            }
            for n in notes {
                println!("note    : {n}");
            }
            if emit.timing {
                println!("timing  : {} ms", started.elapsed().as_millis());
            }
        }
    }
}

fn config_json(report: &VerdictReport, n: Option<usize>) -> Value {
    let mut c = Map::new();
    if let Some(n) = n {
        c.insert("n".into(), json!(n));
    }
    c.insert("subject".into(), json!(report.subject));
    c.insert("gamma".into(), json!(report.gamma));
    c.insert("primes".into(), json!(report.primes));
    c.insert("exp_cap".into(), json!(report.exp_cap));
    c.insert("truncation".into(), json!(report.truncation));
    Value::Object(c)
}

fn exit_for(verdict: Verdict) -> ExitCode {
    if verdict == Verdict::Fails {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn run_verify_identities(
    n: usize,
    ring_lit: &str,
    trials: u32,
    seed: u64,
    emit: &EmitArgs,
    started: Instant,
) -> Result<ExitCode, ut_topology::Error> {
    if n < 3 {
        return Err(ut_topology::Error::Precondition(
            "identity suites need degree n >= 3".into(),
        ));
    }
    let ring: RingSpec = ring_lit.parse()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut witnesses = Vec::new();
    for _ in 0..trials {
        let m = UTMatrix::random(n, ring, &mut rng, 9);
        let x = match ring {
            RingSpec::Integers => RingElem::new(ring, rng.gen_range(-9i64..=9)),
            RingSpec::Residues(q) => RingElem::new(ring, rng.gen_range(0..q) as i64),
        };
        let (i, j, k) = loop {
            let mut idx = [
                rng.gen_range(1..=n),
                rng.gen_range(1..=n),
                rng.gen_range(1..=n),
            ];
            idx.sort_unstable();
            if idx[0] < idx[1] && idx[1] < idx[2] {
                break (idx[0], idx[1], idx[2]);
            }
        };
        for variant in [1u8, 2] {
            let (lhs, rhs, equal) = commutator_identity(variant, &m, &x, i, j, k)?;
            if !equal {
                witnesses.push(format!(
                    "variant {variant} at ({i},{j},{k}): {lhs} != {rhs} for {m}"
                ));
            }
        }
        let (lhs, rhs, equal) = commutator_identity(3, &m, &x, n - 2, n - 1, n)?;
        if !equal {
            witnesses.push(format!("variant 3: {lhs} != {rhs} for {m}"));
        }
    }
    // Heisenberg suite over the same ring: degree-3 embedding is a
    // homomorphism, the closed-form commutator agrees with the product form,
    // and the switch map is an involutive homomorphism
    let w = BiadditiveMap::multiplication(ring);
    let back = w.switched();
    for _ in 0..trials {
        let u = HeisenbergElement::random(&w, &mut rng, 9);
        let v = HeisenbergElement::random(&w, &mut rng, 9);
        let lhs = to_ut3(&h_mul(&u, &v, &w)?, &w)?;
        let rhs = to_ut3(&u, &w)?.mul(&to_ut3(&v, &w)?)?;
        if lhs != rhs {
            witnesses.push(format!("degree-3 homomorphism broke at {u}, {v}"));
        }
        h_comm(&u, &v, &w)?;
        let sl = switch_iso(&h_mul(&u, &v, &w)?, &w)?;
        let sr = h_mul(&switch_iso(&u, &w)?, &switch_iso(&v, &w)?, &back)?;
        if sl != sr {
            witnesses.push(format!("switch homomorphism broke at {u}, {v}"));
        }
        if switch_iso(&switch_iso(&u, &w)?, &back)? != u {
            witnesses.push(format!("switch involution broke at {u}"));
        }
    }
    let verdict = if witnesses.is_empty() {
        Verdict::Holds
    } else {
        Verdict::Fails
    };
    let config = json!({
        "n": n,
        "ring": ring.to_string(),
        "trials": trials,
        "seed": seed,
    });
    emit_verdict(
        "verify-identities",
        config,
        verdict,
        &witnesses,
        &[],
        emit,
        started,
    );
    Ok(exit_for(verdict))
}

fn dispatch(cli: Cli) -> Result<ExitCode, ut_topology::Error> {
    let started = Instant::now();
    match cli.command {
        Command::VerifyIdentities {
            n,
            ring,
            trials,
            seed,
            emit,
        } => run_verify_identities(n, &ring, trials, seed, &emit, started),
        Command::Check {
            property,
            n,
            gamma,
            subject,
            search,
            emit,
        } => {
            let config = build_config(&search)?;
            let gamma: GradedAdicTopology = gamma.parse()?;
            if gamma.n() != n {
                return Err(ut_topology::Error::Precondition(format!(
                    "--n {n} does not match the degree of {gamma}"
                )));
            }
            let h: SubgroupSpec = subject.parse()?;
            let (name, report) = match property {
                CheckProperty::Key => ("check key", decide_key(&h, &gamma, &config)?),
                CheckProperty::Cokey => ("check cokey", decide_cokey(&h, &gamma, &config)?),
                CheckProperty::Relmin => {
                    ("check relmin", decide_relatively_minimal(&h, &gamma, &config)?)
                }
                CheckProperty::Cominimal => {
                    ("check cominimal", decide_cominimal(&h, &gamma, &config)?)
                }
                CheckProperty::Injkey => ("check injkey", decide_injkey(&h, &gamma, &config)?),
            };
            emit_verdict(
                name,
                config_json(&report, Some(n)),
                report.verdict,
                &report.witnesses,
                &report.notes,
                &emit,
                started,
            );
            Ok(exit_for(report.verdict))
        }
        Command::CheckMerson {
            n,
            subject,
            gamma,
            coarser,
            search,
            emit,
        } => {
            let config = build_config(&search)?;
            let h: SubgroupSpec = subject.parse()?;
            let report = match (&gamma, &coarser) {
                (Some(g), Some(c)) => {
                    let t: GradedAdicTopology = g.parse()?;
                    let t1: GradedAdicTopology = c.parse()?;
                    if t.n() != n || t1.n() != n {
                        return Err(ut_topology::Error::Precondition(
                            "--n does not match the topology literals".into(),
                        ));
                    }
                    merson_check(&t1, &t, &h, &config)?
                }
                (None, None) => merson_exhaustive(n, &h, &config)?,
                _ => {
                    return Err(ut_topology::Error::Precondition(
                        "--gamma and --coarser must be given together".into(),
                    ))
                }
            };
            emit_verdict(
                "check-merson",
                config_json(&report, Some(n)),
                report.verdict,
                &report.witnesses,
                &report.notes,
                &emit,
                started,
            );
            Ok(exit_for(report.verdict))
        }
        Command::CheckTriple {
            map,
            triple,
            mode,
            search,
            emit,
        } => {
            let config = build_config(&search)?;
            let w: BiadditiveMap = map.parse()?;
            let t: TopologyTriple = triple.parse()?;
            match mode {
                TripleMode::Compat => {
                    let v = triple_compatible(&t, &w, &config)?;
                    let verdict = if v.compatible { Verdict::Holds } else { Verdict::Fails };
                    let witnesses = if v.compatible {
                        Vec::new()
                    } else {
                        vec![triple_literal(&t)]
                    };
                    let config_v = json!({
                        "map": w.to_string(),
                        "triple": triple_literal(&t),
                        "primes": config.primes,
                        "exp_cap": config.exp_cap,
                        "truncation": config.truncation,
                    });
                    emit_verdict(
                        "check-triple compat",
                        config_v,
                        verdict,
                        &witnesses,
                        std::slice::from_ref(&v.certificate),
                        &emit,
                        started,
                    );
                    Ok(exit_for(verdict))
                }
                TripleMode::Minimal | TripleMode::StronglyMinimal => {
                    let report = match mode {
                        TripleMode::Minimal => is_minimal_map(&w, &t, &config)?,
                        _ => is_strongly_minimal_map(&w, &t, &config)?,
                    };
                    let name = match mode {
                        TripleMode::Minimal => "check-triple minimal",
                        _ => "check-triple strongly-minimal",
                    };
                    let config_v = json!({
                        "map": report.subject,
                        "triple": report.gamma,
                        "primes": report.primes,
                        "exp_cap": report.exp_cap,
                        "truncation": report.truncation,
                    });
                    emit_verdict(
                        name,
                        config_v,
                        report.verdict,
                        &report.witnesses,
                        &report.notes,
                        &emit,
                        started,
                    );
                    Ok(exit_for(report.verdict))
                }
            }
        }
        Command::MapTable {
            n,
            gamma,
            subject,
            search,
            emit,
        } => {
            let config = build_config(&search)?;
            let gamma: GradedAdicTopology = gamma.parse()?;
            if gamma.n() != n {
                return Err(ut_topology::Error::Precondition(format!(
                    "--n {n} does not match the degree of {gamma}"
                )));
            }
            let h: SubgroupSpec = subject.parse()?;
            let (table, report) = restriction_map_table(&h, &gamma, &config)?;
            match emit.output {
                OutputFormat::Json => {
                    let mut doc = Map::new();
                    doc.insert("command".into(), json!("map-table"));
                    doc.insert("config".into(), config_json(&report, Some(n)));
                    doc.insert("verdict".into(), json!(report.verdict.to_string()));
                    doc.insert("witnesses".into(), json!(report.witnesses));
                    doc.insert("table".into(), serde_json::to_value(&table).unwrap());
                    if emit.timing {
                        doc.insert(
                            "timing_ms".into(),
                            json!(started.elapsed().as_millis() as u64),
                        );
                    }
                    println!("{}", serde_json::to_string_pretty(&Value::Object(doc)).unwrap());
                }
                OutputFormat::Table => {
                    println!("command : map-table");
                    println!("verdict : {}", report.verdict);
                    for (t, r) in &table.rows {
                        println!("  {t}  ->  {r}");
                    }
                    println!(
                        "morphism: {}  injective: {}  surjective: {}",
                        table.morphism_ok, table.injective, table.surjective
                    );
                    for n in &report.notes {
                        println!("note    : {n}");
                    }
                    if emit.timing {
                        println!("timing  : {} ms", started.elapsed().as_millis());
                    }
                }
            }
            Ok(exit_for(report.verdict))
        }
        Command::ReproducePaper => {
            let results = run_battery();
            let mut all_pass = true;
            for r in &results {
                let status = if r.passed { "PASS" } else { "FAIL" };
                println!("[{status}] criterion {:>2}: {} — {}", r.id, r.name, r.detail);
                all_pass &= r.passed;
            }
            if all_pass {
                println!("all 12 acceptance criteria hold");
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("configuration error: {e}");
            ExitCode::from(2)
        }
    }
}
