use std::path::PathBuf;
use std::process::Command;

use runoff_core::format::parse_election;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_string_lossy().into_owned()
}

fn tmp(name: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_runoff")).args(args).output().expect("runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

const TWO_ONE: &str = "vector:2,1,0,0";

#[test]
fn winners_three_way_tie() {
    let (code, out, _) = run(&["winners", &data("counterexample_tie.txt"), "--protocol", TWO_ONE, "--mode", "runoff"]);
    assert_eq!(code, 0);
    assert_eq!(out, "initial winners: p a b\nrunoff held: yes\noverall winners: p a b\n");
}

#[test]
fn winners_single_candidate() {
    for protocol in ["plurality", "veto", "borda", "halfapproval", "triviality", "vector:3"] {
        let (code, out, _) = run(&["winners", &data("single.txt"), "--protocol", protocol]);
        assert_eq!(code, 0);
        assert_eq!(out, "initial winners: solo\nrunoff held: no\noverall winners: solo\n");
    }
}

#[test]
fn winners_single_mode_and_unique_winner_semantics() {
    let file = data("counterexample.txt");
    let (_, out, _) = run(&["winners", &file, "--protocol", TWO_ONE, "--mode", "single"]);
    assert_eq!(out, "initial winners: a\nrunoff held: no\noverall winners: a\n");
    let (_, out, _) = run(&["winners", &file, "--protocol", TWO_ONE, "--mode", "runoff", "--nw-semantics"]);
    assert_eq!(out, "initial winners: a\nrunoff held: yes\noverall winners: a\n");
}

#[test]
fn winners_error_codes() {
    let (code, _, err) = run(&["winners", &data("empty_candidates.txt"), "--protocol", "borda"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1"), "{err}");
    assert_eq!(run(&["winners", &data("counterexample.txt"), "--protocol", "vector:2,1"]).0, 3);
    assert_eq!(run(&["winners", &data("counterexample.txt"), "--protocol", "copeland"]).0, 3);
    assert_eq!(run(&["winners", &data("no_such_file.txt"), "--protocol", "borda"]).0, 2);
}

#[test]
fn manipulate_finds_and_writes_a_verifying_certificate() {
    let cert = tmp("counterexample_cert.json");
    let election = data("counterexample.txt");
    let (code, out, _) = run(&[
        "manipulate", &election, "--protocol", TWO_ONE, "--mode", "runoff", "--manipulators", "count=1",
        "--certificate", &cert,
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "YES\nmanipulator 1 (weight 1): p > b > a > c\n");
    let (code, out, _) = run(&["verify", &election, &cert]);
    assert_eq!((code, out.as_str()), (0, "VALID-SUCCESS\n"));
}

#[test]
fn manipulate_greedy_fails_the_runoff() {
    let (code, out, err) = run(&[
        "manipulate", &data("counterexample.txt"), "--protocol", TWO_ONE, "--mode", "runoff", "--manipulators",
        "count=1", "--strategy", "greedy",
    ]);
    assert_eq!((code, out.as_str()), (1, "NO\n"));
    assert!(err.contains("not conclusive"), "{err}");
}

#[test]
fn manipulate_fastpath_matches_exhaustive() {
    for mode in ["single", "runoff", "revoting"] {
        for spec in ["weights=3,2", "weights=4,4", "weights=1", "count=8"] {
            let verdict = |strategy| {
                let args = [
                    "manipulate", &data("plurality_weighted.txt"), "--protocol", "plurality", "--mode", mode,
                    "--manipulators", spec, "--strategy", strategy,
                ];
                let (code, out, _) = run(&args);
                (code, out.lines().next().unwrap().to_string())
            };
            assert_eq!(verdict("fastpath"), verdict("exhaustive"), "{mode} {spec}");
        }
    }
}

#[test]
fn manipulate_budget_exhaustion_is_unknown() {
    let (code, out, _) = run(&[
        "manipulate", &data("counterexample.txt"), "--protocol", TWO_ONE, "--mode", "runoff", "--manipulators",
        "count=1", "--strategy", "exhaustive", "--budget", "1", "--sequential",
    ]);
    assert_eq!((code, out.as_str()), (4, "UNKNOWN\n"));
}

#[test]
fn manipulate_rejects_bad_arguments() {
    let file = data("counterexample.txt");
    let with = |extra: &[&str]| {
        let mut args = vec!["manipulate", file.as_str(), "--protocol", TWO_ONE, "--mode", "runoff"];
        args.extend_from_slice(extra);
        run(&args).0
    };
    assert_eq!(with(&["--manipulators", "lots"]), 2);
    assert_eq!(with(&["--manipulators", "count=1", "--target", "zed"]), 3);
    assert_eq!(with(&["--manipulators", "count=1", "--strategy", "bucket"]), 0);
    assert_eq!(with(&["--manipulators", "weights=1,2", "--strategy", "bucket"]), 3);
    assert_eq!(with(&["--manipulators", "count=1", "--strategy", "fastpath"]), 3);
    assert_eq!(with(&["--manipulators", "weights=0"]), 3);
}

#[test]
fn manipulate_is_deterministic() {
    let args = [
        "manipulate", &data("counterexample.txt"), "--protocol", "borda", "--mode", "revoting", "--manipulators",
        "count=2", "--strategy", "exhaustive",
    ];
    let first = run(&args);
    assert_eq!(first.0, 0);
    for _ in 0..3 {
        assert_eq!(run(&args), first);
    }
}

#[test]
fn verify_outcomes() {
    let election = data("counterexample.txt");
    let check = |cert: &str| {
        let (code, out, _) = run(&["verify", &election, &data(cert)]);
        (code, out)
    };
    assert_eq!(check("cert_tie.json"), (0, "VALID-SUCCESS\n".into()));
    assert_eq!(check("cert_greedy.json"), (1, "VALID-FAIL\n".into()));
    assert_eq!(check("cert_mismatch.json"), (2, "MALFORMED\n".into()));
    assert_eq!(check("x3c_pair.json"), (2, "MALFORMED\n".into()));
    // The mismatched runoff ballot is a legal revote, but loses.
    let (code, out, _) = run(&["verify", &election, &data("cert_mismatch.json"), "--mode", "revoting"]);
    assert_eq!((code, out.as_str()), (1, "VALID-FAIL\n"));
}

#[test]
fn oracle_outputs() {
    assert_eq!(run(&["oracle", &data("x3c_k1.json")]), (0, "1\n".into(), String::new()));
    assert_eq!(run(&["oracle", &data("x3c_pair.json")]), (0, "1 2\n".into(), String::new()));
    assert_eq!(run(&["oracle", &data("x3c_none.json")]), (1, "NONE\n".into(), String::new()));
    assert_eq!(run(&["oracle", &data("counterexample.txt")]).0, 2);
}

#[test]
fn gen_veto_election_and_certificate() {
    let out = tmp("veto_k1.txt");
    let cert = tmp("veto_k1_cert.json");
    let (code, _, _) = run(&["gen", &data("x3c_k1.json"), "--construction", "veto", "-o", &out, "--emit-certificate", &cert]);
    assert_eq!(code, 0);
    let e = parse_election(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(e.num_candidates(), 10);
    assert_eq!(e.total_weight(), 31);
    for mode in ["runoff", "revoting"] {
        let (code, verdict, _) = run(&["verify", &out, &cert, "--mode", mode]);
        assert_eq!((code, verdict.as_str()), (0, "VALID-SUCCESS\n"), "{mode}");
    }
    let (code, verdict, _) = run(&["manipulate", &out, "--protocol", "veto", "--mode", "runoff", "--manipulators", "count=1"]);
    assert_eq!((code, verdict.lines().next()), (0, Some("YES")));
}

#[test]
fn gen_veto_without_cover_is_not_manipulable() {
    let out = tmp("veto_none.txt");
    let cert = tmp("veto_none_cert.json");
    let (code, _, err) = run(&["gen", &data("x3c_none.json"), "--construction", "veto", "-o", &out, "--emit-certificate", &cert]);
    assert_eq!(code, 0);
    assert!(err.contains("no exact cover"));
    let (code, verdict, _) = run(&["manipulate", &out, "--protocol", "veto", "--mode", "revoting", "--manipulators", "count=2"]);
    assert_eq!((code, verdict.as_str()), (1, "NO\n"));
}

#[test]
fn gen_halfapproval() {
    let (code, out, _) = run(&["gen", &data("x3c_pair.json"), "--construction", "halfapproval"]);
    assert_eq!(code, 0);
    let e = parse_election(&out).unwrap();
    assert_eq!(e.num_candidates(), 22);
    assert_eq!(run(&["gen", &data("x3c_odd.json"), "--construction", "halfapproval"]).0, 3);
    assert_eq!(run(&["gen", &data("x3c_odd.json"), "--construction", "veto"]).0, 0);
}

#[test]
fn repro_counterexample() {
    let (code, out, _) = run(&["repro", "--suite", "counterexample"]);
    assert_eq!(code, 0);
    assert!(out.starts_with(
        "nonmanipulator tallies: p=1 a=3 b=2 c=0\n\
         p > c > b > a: initial winners p a; runoff winners a\n\
         p > b > c > a: initial winners p a b; runoff winners p a b\n\
         PASS greedy counterexample"
    ), "{out}");
}
