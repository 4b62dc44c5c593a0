//! End-to-end tests of the command-line interface: exit codes, JSON schema,
//! witness round-trips, and byte-level determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ut-topology"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8 output")
}

#[test]
fn key_holds_exit_zero() {
    let out = run(&[
        "check",
        "key",
        "--n",
        "3",
        "--gamma",
        "gt(n=3; Omega, Omega)",
        "--subject",
        "center",
        "--primes",
        "2,3",
        "--exp-cap",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["command"], "check key");
    assert_eq!(doc["verdict"], "holds");
    assert!(doc["witnesses"].as_array().unwrap().is_empty());
    // positive verdicts always carry the search box they are relative to
    assert_eq!(doc["config"]["primes"], serde_json::json!([2, 3]));
    assert_eq!(doc["config"]["exp_cap"], 2);
    assert_eq!(doc["config"]["truncation"], 1296);
    // timing is absent unless requested
    assert!(doc.get("timing_ms").is_none());
}

#[test]
fn cominimal_fails_with_reparseable_witness() {
    let out = run(&[
        "check",
        "cominimal",
        "--n",
        "3",
        "--gamma",
        "gt(n=3; Omega, Omega)",
        "--subject",
        "center",
        "--primes",
        "2",
        "--exp-cap",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["verdict"], "fails");
    let witnesses = doc["witnesses"].as_array().unwrap();
    assert!(!witnesses.is_empty());
    for w in witnesses {
        // round-trip: each witness re-parses under the topology grammar
        let t: ut_topology::topology::GradedAdicTopology =
            w.as_str().unwrap().parse().expect("witness parses");
        assert!(t.is_hausdorff());
    }
    assert!(witnesses
        .iter()
        .any(|w| w == "gt(n=3; 2^inf, 2^inf)"));
}

#[test]
fn config_errors_exit_two() {
    for args in [
        vec![
            "check", "key", "--n", "3", "--gamma", "nonsense", "--subject", "center", "--primes",
            "2", "--exp-cap", "1",
        ],
        vec![
            "check", "key", "--n", "4", "--gamma", "gt(n=3; Omega, Omega)", "--subject", "center",
            "--primes", "2", "--exp-cap", "1",
        ],
        vec![
            "check", "key", "--n", "3", "--gamma", "gt(n=3; Omega, Omega)", "--subject", "center",
            "--primes", "4", "--exp-cap", "1",
        ],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "args: {args:?}");
    }
    // clap-level usage errors also exit 2
    let out = run(&["check", "key"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identity_suite_example() {
    let out = run(&[
        "verify-identities",
        "--n",
        "4",
        "--ring",
        "Z/6",
        "--trials",
        "1000",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["verdict"], "holds");
    assert_eq!(doc["config"]["seed"], 7);
}

#[test]
fn deterministic_bytes_for_fixed_seed() {
    let args = [
        "check",
        "cokey",
        "--n",
        "3",
        "--gamma",
        "gt(n=3; Omega, Omega)",
        "--subject",
        "oneparam(1,2)",
        "--primes",
        "2",
        "--exp-cap",
        "1",
        "--seed",
        "42",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), b.status.code());
    assert_eq!(a.stdout, b.stdout, "same config + seed must be byte-identical");
    assert!(!a.stdout.is_empty());
}

#[test]
fn merson_single_pair_and_sweep() {
    let sweep = run(&[
        "check-merson",
        "--n",
        "3",
        "--subject",
        "derived",
        "--primes",
        "2",
        "--exp-cap",
        "1",
    ]);
    assert_eq!(sweep.status.code(), Some(0));

    let pair = run(&[
        "check-merson",
        "--n",
        "3",
        "--subject",
        "center",
        "--gamma",
        "gt(n=3; Omega, Omega)",
        "--coarser",
        "gt(n=3; 2^inf, 2^inf)",
        "--primes",
        "2",
        "--exp-cap",
        "1",
    ]);
    // the coarser topology disagrees somewhere, so the hypotheses fail and
    // the instance is vacuous rather than a counterexample
    assert_eq!(pair.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&pair)).unwrap();
    assert_eq!(doc["verdict"], "vacuous");
}

#[test]
fn triple_modes() {
    let compat = run(&[
        "check-triple",
        "--map",
        "m(Z)",
        "--triple",
        "triple(sigma=2^inf; tau=2^inf; nu=2^inf)",
        "--primes",
        "2",
        "--exp-cap",
        "1",
    ]);
    assert_eq!(compat.status.code(), Some(0));

    let incompat = run(&[
        "check-triple",
        "--map",
        "m(Z)",
        "--triple",
        "triple(sigma=2^inf; tau=2^inf; nu=Omega)",
        "--primes",
        "2",
        "--exp-cap",
        "1",
    ]);
    assert_eq!(incompat.status.code(), Some(1));

    let strong = run(&[
        "check-triple",
        "--map",
        "m(Z)",
        "--triple",
        "triple(sigma=Omega; tau=Omega; nu=Omega)",
        "--mode",
        "strongly-minimal",
        "--primes",
        "2",
        "--exp-cap",
        "1",
    ]);
    assert_eq!(strong.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&strong)).unwrap();
    let witnesses = doc["witnesses"].as_array().unwrap();
    assert!(witnesses
        .iter()
        .any(|w| w == "triple(sigma=2^inf; tau=2^inf; nu=2^inf)"));
    for w in witnesses {
        let _: ut_topology::topology::triples::TopologyTriple =
            w.as_str().unwrap().parse().expect("witness parses");
    }
}

#[test]
fn map_table_includes_rows() {
    let out = run(&[
        "map-table",
        "--n",
        "3",
        "--gamma",
        "gt(n=3; Omega, Omega)",
        "--subject",
        "center",
        "--primes",
        "2",
        "--exp-cap",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["table"]["morphism_ok"], true);
    assert_eq!(doc["table"]["injective"], false);
    assert_eq!(doc["table"]["rows"].as_array().unwrap().len(), 3);
}
