//! Golden reports of the command-line front end.
//!
//! Each case runs the installed binary and compares stdout, plus any file
//! written with `-o`, against `tests/golden/NAME.*`. Set
//! `REACTIME_BLESS=1` to rewrite the golden files.

use std::path::{Path, PathBuf};
use std::process::Command;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures")
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn reactime(args: &[&str]) -> Outcome {
    let resolved: Vec<String> = args
        .iter()
        .map(|a| match a.strip_prefix('@') {
            Some(f) => fixtures().join(f).display().to_string(),
            None => a.to_string(),
        })
        .collect();
    let output = Command::new(env!("CARGO_BIN_EXE_reactime"))
        .args(&resolved)
        .output()
        .unwrap();
    Outcome {
        code: output.status.code().unwrap(),
        stdout: String::from_utf8(output.stdout).unwrap(),
        stderr: String::from_utf8(output.stderr).unwrap(),
    }
}

fn compare(name: &str, actual: &str) {
    let path = golden(name);
    if std::env::var_os("REACTIME_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "golden {name}");
}

/// Reports whose stdout is compared verbatim; `@` marks a fixture path.
const REPORTS: &[(&str, &[&str])] = &[
    ("check_p1", &["check", "@p1.sls"]),
    ("bisim_p1", &["bisim", "@p1.sls", "p0", "p1"]),
    ("bisim_union_same", &["bisim", "@union.sls", "x1", "x1"]),
    ("seppairs_p1", &["seppairs", "@p1.sls", "p0"]),
    ("seppairs_const", &["seppairs", "@const.sls", "c0"]),
    (
        "separators_p1",
        &["separators", "@p1.sls", "p0", "p1", "--max-len", "3"],
    ),
    (
        "separators_p2",
        &["separators", "@p2_n4.sls", "q0", "q1", "--max-len", "5"],
    ),
    ("strongsep_p1", &["strongsep", "@p1.sls", "p1", "p0"]),
    ("strongsep_delay1", &["strongsep", "@delay1.sls", "s1", "s2"]),
    ("reactime_p1", &["reactime", "@p1.sls", "p0"]),
    ("reactime_p2", &["reactime", "@p2_n4.sls", "q0"]),
    ("reactime_delay1", &["reactime", "@delay1.sls", "s0"]),
    ("diff_p1", &["diff", "@p1.sls", "p0", "p1", "-w", "ff ff"]),
    (
        "diff_cross",
        &["diff", "@p1.sls", "p0", "q1", "-w", "ff tt", "--with", "@p2_n4.sls"],
    ),
    ("doe_delay1", &["doe", "@delay1.sls", "s0"]),
    ("doe_p1", &["doe", "@p1.sls", "p0"]),
    ("ssp_union", &["ssp", "@union.sls", "u0", "v0"]),
    ("ssp_two_files", &["ssp", "@p1.sls", "p0", "@p2_n4.sls", "q0"]),
    ("sspseq_toggle", &["sspseq", "@toggle.sls", "s0"]),
    (
        "lemma_late",
        &["lemma", "@late_f.sls", "@late_g.sls", "--qf", "f0", "--qg", "g0"],
    ),
    (
        "lemma_none",
        &["lemma", "@vanish_f.sls", "@vanish_g.sls", "--qf", "p1", "--qg", "q1"],
    ),
    (
        "doe_compose_echo",
        &[
            "doe-compose",
            "@delay1.sls",
            "@echo.sls",
            "--qf",
            "s0",
            "--qg",
            "e0",
            "-t",
            "1",
        ],
    ),
    ("obs_leq", &["obs-leq", "* | (0,1)", "(1,0) | (0,1)"]),
    ("merge", &["merge", "(0,1) | *", "(0,1) (1,0) | *"]),
    ("typecheck_p1", &["psyc", "typecheck", "@program1.psy"]),
];

#[test]
fn reports_match_golden_files() {
    for (name, args) in REPORTS {
        let out = reactime(args);
        assert_eq!(out.code, 0, "{name}: {}", out.stderr);
        assert!(out.stderr.is_empty(), "{name}: {}", out.stderr);
        compare(&format!("{name}.out"), &out.stdout);
    }
}

#[test]
fn published_reaction_times() {
    assert_eq!(
        reactime(&["reactime", "@p1.sls", "p0"]).stdout.lines().last(),
        Some("reactime infinite")
    );
    let p2 = reactime(&["reactime", "@p2_n4.sls", "q0"]);
    assert_eq!(p2.code, 0);
    // the compiled bounded-loop program is not strongly separable
    assert_eq!(p2.stdout.lines().last(), Some("reactime infinite"));
}

#[test]
fn written_files_match_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = |n: &str| dir.path().join(n).display().to_string();
    let cases: &[(&str, Vec<String>)] = &[
        (
            "compose_seq_vanish",
            vec![
                "compose".into(),
                "--seq".into(),
                "@vanish_f.sls".into(),
                "@vanish_g.sls".into(),
                "-o".into(),
                path("a"),
            ],
        ),
        (
            "compose_par_toggle",
            vec![
                "compose".into(),
                "--par".into(),
                "@toggle.sls".into(),
                "@toggle.sls".into(),
                "-o".into(),
                path("b"),
            ],
        ),
        (
            "quotient_union",
            vec!["quotient".into(), "@union.sls".into(), "-o".into(), path("c")],
        ),
        (
            "build_p1",
            vec![
                "psyc".into(),
                "build".into(),
                "@program1.psy".into(),
                "--max-states".into(),
                "100".into(),
                "--prefix".into(),
                "p".into(),
                "--name".into(),
                "p1".into(),
                "-o".into(),
                path("d"),
            ],
        ),
        ("dot_p1", vec!["dot".into(), "@p1.sls".into(), "-o".into(), path("e")]),
        (
            "dot_const",
            vec!["dot".into(), "@const.sls".into(), "-o".into(), path("f")],
        ),
    ];
    for (name, args) in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = reactime(&args);
        assert_eq!(out.code, 0, "{name}: {}", out.stderr);
        compare(&format!("{name}.out"), &out.stdout);
        let written = std::fs::read_to_string(args.last().unwrap()).unwrap();
        let ext = if name.starts_with("dot") { "dot" } else { "sls" };
        compare(&format!("{name}.{ext}"), &written);
        if ext == "sls" {
            let back = reactime_core::sls::parse(&written).unwrap();
            assert!(back.validate().is_empty(), "{name}");
            assert_eq!(reactime_core::sls::write(&back), written, "{name}");
        }
    }
}

#[test]
fn dot_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let count = |file: &str| {
        let out = dir.path().join("g.dot");
        assert_eq!(reactime(&["dot", file, "-o", out.to_str().unwrap()]).code, 0);
        let text = std::fs::read_to_string(&out).unwrap();
        (text.matches("shape=").count(), text.matches(" -> ").count())
    };
    assert_eq!(count("@const.sls"), (1, 2));
    assert_eq!(count("@p1.sls"), (3, 6));
    let composite = dir.path().join("c.sls");
    reactime(&[
        "compose",
        "--par",
        "@toggle.sls",
        "@ident.sls",
        "-o",
        composite.to_str().unwrap(),
    ]);
    assert!(count(composite.to_str().unwrap()).0 <= 4);
}

#[test]
fn exit_statuses() {
    let broken = reactime(&["check", "@const_broken.sls"]);
    assert_eq!(broken.code, 2);
    assert!(broken.stderr.contains("incomplete"), "{}", broken.stderr);
    assert!(broken.stderr.contains("const_broken.sls"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.sls");
    std::fs::write(&bad, "system s\ninputs a\noutputs 0\ninit x\nstate x 9\n").unwrap();
    let parse = reactime(&["check", bad.to_str().unwrap()]);
    assert_eq!(parse.code, 2);
    assert!(parse.stderr.contains("bad.sls:5:"), "{}", parse.stderr);

    let prog = dir.path().join("bad.psy");
    std::fs::write(
        &prog,
        "inputs tt ff\noutputs tt ff\nvar x : bool\n\nx := tt;; tick(ff)\n",
    )
    .unwrap();
    let syntax = reactime(&["psyc", "typecheck", prog.to_str().unwrap()]);
    assert_eq!(syntax.code, 2);
    assert!(syntax.stderr.contains("bad.psy:5:9:"), "{}", syntax.stderr);

    std::fs::write(&prog, "inputs tt ff\noutputs tt ff\nvar x : bool\nx := 3\n").unwrap();
    let typed = reactime(&["psyc", "typecheck", prog.to_str().unwrap()]);
    assert_eq!(typed.code, 2);
    assert!(typed.stderr.contains("Assign"), "{}", typed.stderr);

    let out = dir.path().join("o.sls");
    let budget = reactime(&[
        "psyc",
        "build",
        "@program2_n4.psy",
        "--max-states",
        "3",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(budget.code, 3, "{}", budget.stderr);

    assert_eq!(reactime(&["reactime", "@p1.sls", "nope"]).code, 2);
    assert_eq!(reactime(&["frobnicate"]).code, 2);
    assert_eq!(reactime(&["compose", "@p1.sls", "@p1.sls", "-o", "x"]).code, 2);
    assert_eq!(reactime(&["ssp", "@const.sls", "c0", "c0"]).code, 2);
    assert_eq!(reactime(&["--help"]).code, 0);
}

#[test]
fn in_process_runs_match_the_binary() {
    let p1 = fixtures().join("p1.sls").display().to_string();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = reactime_cli::run(["reactime", "seppairs", &p1, "p0"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(
        String::from_utf8(out).unwrap(),
        reactime(&["seppairs", "@p1.sls", "p0"]).stdout
    );
}
