//! End-to-end runs of every subcommand against the fixture files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn boxjoin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boxjoin"))
        .args(args)
        .output()
        .expect("spawn boxjoin")
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit={:?} stderr={}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("boxjoin-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).expect("tempdir");
    dir
}

#[test]
fn gamb_emits_box_dump() {
    let out = boxjoin(&[
        "gamb",
        "--rel",
        fixture("U.rel").to_str().unwrap(),
        "--maximal-only",
    ]);
    let text = stdout_of(&out);
    assert!(text.lines().count() > 0);
    for line in text.lines() {
        assert!(line.starts_with("box U "), "{line}");
    }
}

#[test]
fn adora_writes_an_ordering_file() {
    let dir = tempdir("adora");
    let out_path = dir.join("q.ord");
    let out = boxjoin(&[
        "adora",
        "--rel",
        fixture("R.rel").to_str().unwrap(),
        "--rel",
        fixture("S.rel").to_str().unwrap(),
        "--rel",
        fixture("T.rel").to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    stdout_of(&out);
    let text = std::fs::read_to_string(&out_path).expect("ordering written");
    assert_eq!(text.lines().count(), 3);
    for line in text.lines() {
        assert!(line.starts_with("order "), "{line}");
    }
}

#[test]
fn classes_prints_the_parity_partition() {
    let out = boxjoin(&[
        "classes",
        "--rel",
        fixture("R.rel").to_str().unwrap(),
        "--rel",
        fixture("S.rel").to_str().unwrap(),
        "--rel",
        fixture("T.rel").to_str().unwrap(),
        "--attr",
        "A",
    ]);
    let text = stdout_of(&out);
    assert_eq!(text, "class A: 0 2\nclass A: 1 3\n");
}

#[test]
fn gridcover_emits_six_boxes_for_the_triangle() {
    let out = boxjoin(&[
        "gridcover",
        "--rel",
        fixture("R.rel").to_str().unwrap(),
        "--rel",
        fixture("S.rel").to_str().unwrap(),
        "--rel",
        fixture("T.rel").to_str().unwrap(),
    ]);
    let text = stdout_of(&out);
    assert_eq!(text.lines().count(), 6, "{text}");
}

#[test]
fn join_reorder_is_empty_and_emits_certificate() {
    let dir = tempdir("join");
    let cert = dir.join("cert.box");
    let wits = dir.join("w.txt");
    let out = boxjoin(&[
        "join",
        "--rel",
        fixture("R.rel").to_str().unwrap(),
        "--rel",
        fixture("S.rel").to_str().unwrap(),
        "--rel",
        fixture("T.rel").to_str().unwrap(),
        "--reorder",
        "--emit-certificate",
        cert.to_str().unwrap(),
        "--emit-witnesses",
        wits.to_str().unwrap(),
    ]);
    let text = stdout_of(&out);
    assert!(text.is_empty(), "triangle over odd-sum pairs is empty");
    let cert_text = std::fs::read_to_string(&cert).unwrap();
    assert!(cert_text.lines().count() <= 6, "{cert_text}");
    assert!(std::fs::read_to_string(&wits).unwrap().lines().count() >= 1);
}

#[test]
fn join_single_relation_prints_its_tuples() {
    let out = boxjoin(&["join", "--rel", fixture("U.rel").to_str().unwrap()]);
    let text = stdout_of(&out);
    assert_eq!(text, "0 0\n1 2\n3 3\n");
    // resolution enabled must not change the output
    let out = boxjoin(&[
        "join",
        "--rel",
        fixture("U.rel").to_str().unwrap(),
        "--resolution-budget",
        "8",
    ]);
    assert_eq!(stdout_of(&out), "0 0\n1 2\n3 3\n");
}

#[test]
fn oracle_subcommands() {
    let out = boxjoin(&[
        "oracle",
        "mincover",
        "--rel",
        fixture("U.rel").to_str().unwrap(),
    ]);
    let text = stdout_of(&out);
    assert!(text.starts_with("mincover "), "{text}");

    let out = boxjoin(&[
        "oracle",
        "minorder",
        "--rel",
        fixture("U.rel").to_str().unwrap(),
    ]);
    let text = stdout_of(&out);
    assert!(text.starts_with("minorder "), "{text}");

    let out = boxjoin(&[
        "oracle",
        "mincert",
        "--rel",
        fixture("R.rel").to_str().unwrap(),
        "--rel",
        fixture("S.rel").to_str().unwrap(),
        "--rel",
        fixture("T.rel").to_str().unwrap(),
    ]);
    let text = stdout_of(&out);
    assert!(text.starts_with("mincert "), "{text}");

    let out = boxjoin(&[
        "oracle",
        "maxgen",
        "--rel",
        fixture("U.rel").to_str().unwrap(),
    ]);
    assert!(stdout_of(&out).starts_with("maxgen "));

    let out = boxjoin(&[
        "oracle",
        "cb",
        "--matrix",
        fixture("m.txt").to_str().unwrap(),
        "--min-columns",
    ]);
    let text = stdout_of(&out);
    assert!(text.starts_with("cb 3\nmin_cb 2\n"), "{text}");
}

#[test]
fn oracle_refuses_inputs_beyond_limits() {
    let out = boxjoin(&[
        "oracle",
        "mincover",
        "--rel",
        fixture("U.rel").to_str().unwrap(),
        "--limit-tuples",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("max_tuples"), "{err}");

    let out = boxjoin(&[
        "oracle",
        "minorder",
        "--rel",
        fixture("U.rel").to_str().unwrap(),
        "--limit-perms",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("max_perm_space"), "{err}");
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = boxjoin(&["join", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_subcommands_write_files() {
    let dir = tempdir("gen");
    let cb = dir.join("cb");
    stdout_of(&boxjoin(&[
        "gen",
        "checkerboard",
        "--d",
        "2",
        "--out-dir",
        cb.to_str().unwrap(),
    ]));
    for name in ["R.rel", "S.rel", "T.rel", "sigma.ord"] {
        assert!(cb.join(name).exists(), "{name} missing");
    }

    let lift = dir.join("lift");
    stdout_of(&boxjoin(&[
        "gen",
        "lift",
        "--rel",
        cb.join("R.rel").to_str().unwrap(),
        "--p",
        "1",
        "--out-dir",
        lift.to_str().unwrap(),
    ]));
    let lifted = std::fs::read_to_string(lift.join("R.rel")).unwrap();
    assert!(lifted.starts_with("R 3 A B\n"), "{lifted}");
    assert_eq!(lifted.lines().count(), 1 + 8 * 4);

    let at = dir.join("at");
    stdout_of(&boxjoin(&[
        "gen",
        "adora-tight",
        "--d",
        "2",
        "--out-dir",
        at.to_str().unwrap(),
    ]));
    assert!(at.join("R.rel").exists() && at.join("sigma.ord").exists());

    let mm = dir.join("r8.rel");
    stdout_of(&boxjoin(&[
        "gen",
        "many-maximal",
        "--n",
        "8",
        "--out",
        mm.to_str().unwrap(),
    ]));
    assert!(std::fs::read_to_string(&mm)
        .unwrap()
        .starts_with("R 3 A B\n"));

    let rnd = dir.join("rnd");
    stdout_of(&boxjoin(&[
        "gen",
        "random",
        "--d",
        "2",
        "--attrs",
        "3",
        "--relations",
        "2",
        "--arity",
        "2",
        "--density",
        "0.5",
        "--seed",
        "7",
        "--out-dir",
        rnd.to_str().unwrap(),
    ]));
    let first = std::fs::read_to_string(rnd.join("R0.rel")).unwrap();
    // reproducible across runs with the same seed
    let rnd2 = dir.join("rnd2");
    stdout_of(&boxjoin(&[
        "gen",
        "random",
        "--d",
        "2",
        "--attrs",
        "3",
        "--relations",
        "2",
        "--arity",
        "2",
        "--density",
        "0.5",
        "--seed",
        "7",
        "--out-dir",
        rnd2.to_str().unwrap(),
    ]));
    assert_eq!(first, std::fs::read_to_string(rnd2.join("R0.rel")).unwrap());

    let red = dir.join("red");
    stdout_of(&boxjoin(&[
        "reduce2cbmp",
        "--matrix",
        fixture("m.txt").to_str().unwrap(),
        "--out-dir",
        red.to_str().unwrap(),
    ]));
    let mp = std::fs::read_to_string(red.join("mprime.txt")).unwrap();
    assert_eq!(mp.lines().count(), 8);
    assert!(red.join("Rprime.rel").exists());
}

#[test]
fn mdbci_sim_verifies_against_the_enumeration() {
    let out = boxjoin(&[
        "mdbci-sim",
        "--rel",
        fixture("U.rel").to_str().unwrap(),
        "--ops",
        fixture("ops.txt").to_str().unwrap(),
        "--verify",
    ]);
    let text = stdout_of(&out);
    assert!(text.contains("verified 5 ops"), "{text}");
}

#[test]
fn bench_emits_stable_reports() {
    let out = boxjoin(&[
        "bench",
        "--suite",
        "join-random",
        "--seeds",
        "2",
        "--seed",
        "3",
    ]);
    let text = stdout_of(&out);
    let out2 = boxjoin(&[
        "bench",
        "--suite",
        "join-random",
        "--seeds",
        "2",
        "--seed",
        "3",
    ]);
    let text2 = stdout_of(&out2);
    let strip_time = |s: &str| -> Vec<Vec<String>> {
        s.lines()
            .map(|l| {
                l.split('\t')
                    .enumerate()
                    .filter(|&(i, _)| i != 2) // wall_ms varies
                    .map(|(_, f)| f.to_string())
                    .collect()
            })
            .collect()
    };
    assert_eq!(strip_time(&text), strip_time(&text2));
    assert_eq!(text.lines().count(), 3);

    let out = boxjoin(&["bench", "--suite", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(1));

    // the scaling suite emits one record per size per seed
    let out = boxjoin(&[
        "bench",
        "--suite",
        "adora-scaling",
        "--seeds",
        "1",
        "--max-n",
        "4096",
    ]);
    let text = stdout_of(&out);
    assert_eq!(text.lines().count(), 1 + 3, "{text}");
    assert!(text.contains("adora-scaling-s0-n4096"));
}

#[test]
fn lemma2_check_passes_on_random_instances() {
    let out = boxjoin(&["lemma2-check", "--instances", "4", "--seed", "11"]);
    let text = stdout_of(&out);
    assert!(text.contains("all within 2K+1"), "{text}");
}
