//! The language front end against its own small-step semantics.

mod common;

use common::*;
use reactime_core::bisim::non_bisimilar;
use reactime_core::psyc::{
    build_lts, matching_rules, parse, parse_program, typecheck, BuildOptions, Config, EvalTree, Machine, Program, Type,
};
use reactime_core::{Error, InputId, SynchronousSystem};

const EXTRA: [&str; 3] = [
    // relay of the previous input, through a variable
    "inputs tt ff\noutputs tt ff\nvar x : bool\nwhile tt do tick(!x); x := get done\n",
    // counts tt inputs modulo 3 and signals on wrap-around
    "inputs tt ff\noutputs tt ff\nvar n : int[0..2]\nvar z : bool\n\
     n := 2;\nwhile tt do\n  tick(!z);\n  if get then\n    if !n != 0 then (n := !n - 1; z := ff) else (n := 2; z := tt)\n  \
     else z := ff\ndone\n",
    // two-component alphabets
    "inputs tt,0 ff,1\noutputs tt ff\nvar x : bool\nwhile tt do tick(!x && get 0); x := get 0 done\n",
];

fn programs() -> Vec<(String, Program)> {
    let mut out = vec![
        (
            "program1".to_string(),
            parse_program(&fixture_text("program1.psy")).unwrap(),
        ),
        (
            "program2".to_string(),
            parse_program(&fixture_text("program2_n4.psy")).unwrap(),
        ),
    ];
    for (i, src) in EXTRA.iter().enumerate() {
        out.push((format!("extra{i}"), parse_program(src).unwrap()));
    }
    out
}

/// Runs the program on `word` by reduction alone, checking at every step
/// that exactly one rule applies and that the result is again a command.
/// Returns the outputs of the first `|word| + 1` ticks.
fn simulate(program: &Program, word: &[InputId]) -> Vec<String> {
    let machine: Machine = program.machine().unwrap();
    let env = program.env();
    let sig = program.signature().unwrap();
    let mut cfg = Config {
        store: program.initial_store().unwrap(),
        input: InputId(0),
        program: program.body.clone(),
    };
    let mut outputs = Vec::new();
    let mut k = 0;
    loop {
        assert_eq!(matching_rules(&cfg.program).len(), 1, "{}", cfg.program);
        let (_, tree) = machine.step(&cfg).unwrap();
        let next = match tree {
            EvalTree::Leaf(next) => next,
            EvalTree::Node(out, children) => {
                assert_eq!(children.len(), program.inputs.len());
                outputs.push(out.to_string());
                if k == word.len() {
                    return outputs;
                }
                let EvalTree::Leaf(next) = children[word[k].0].clone() else {
                    panic!("tick children are leaves")
                };
                assert_eq!(next.input, word[k]);
                k += 1;
                next
            }
        };
        assert_eq!(
            typecheck(&next.program, &env, &sig).unwrap(),
            Type::Comm,
            "{}",
            next.program
        );
        cfg = next;
    }
}

fn run_outputs(sys: &SynchronousSystem, w: &[InputId]) -> Vec<String> {
    let langs = sys.run_outputs(sys.initial(), w).unwrap();
    assert_eq!(langs.len(), 1, "built systems are deterministic");
    langs
        .into_iter()
        .next()
        .unwrap()
        .iter()
        .map(|&o| sys.output_symbol(o).to_string())
        .collect()
}

#[test]
fn built_systems_agree_with_reduction() {
    for (name, program) in programs() {
        let sys = build_lts(&program, &BuildOptions::default()).unwrap();
        assert!(sys.validate().is_empty(), "{name}");
        assert!(sys.is_deterministic(), "{name}");
        for w in all_words(program.inputs.len(), 6) {
            assert_eq!(
                run_outputs(&sys, &w),
                simulate(&program, &w),
                "{name} on {}",
                sys.format_word(&w)
            );
        }
    }
}

#[test]
fn program_one_builds_the_published_system() {
    let built = build_program("program1.psy", "p", "p1");
    let mut text = reactime_core::sls::write(&built);
    text.insert_str(
        0,
        "# system of the capture-and-release program with an unbounded inner loop\n",
    );
    assert_eq!(text, fixture_text("p1.sls"));
    let mut text = reactime_core::sls::write(&build_program("program2_n4.psy", "q", "p2"));
    text.insert_str(
        0,
        "# system of the bounded-loop program, N = 4, as built by the compiler\n",
    );
    assert_eq!(text, fixture_text("p2_n4.sls"));
}

#[test]
fn initial_input_is_unobservable() {
    for (name, program) in programs() {
        let base = build_lts(&program, &BuildOptions::default()).unwrap();
        for a in program.inputs.symbols() {
            let options = BuildOptions {
                initial_input: Some(a.to_string()),
                ..BuildOptions::default()
            };
            let other = build_lts(&program, &options).unwrap();
            let w = non_bisimilar(&base, base.initial(), &other, other.initial()).unwrap();
            assert!(w.is_none(), "{name} with initial input {a}");
        }
    }
}

#[test]
fn printed_programs_reparse() {
    for (name, program) in programs() {
        let printed = program.body.to_string();
        assert_eq!(parse(&printed).unwrap(), program.body, "{name}: {printed}");
    }
}

#[test]
fn front_end_errors() {
    assert!(matches!(parse("x := tt;; "), Err(Error::Syntax { line: 1, .. })));
    let t = parse("while get 0 do tick(ff) done").unwrap();
    assert!(matches!(t, reactime_core::psyc::Term::While(..)));
    let bad = parse_program("inputs tt ff\noutputs tt ff\nvar x : bool\nx := 3\n").unwrap();
    assert!(matches!(bad.typecheck(), Err(Error::Type { rule: "Assign", .. })));
    let wide = parse_program("inputs tt ff\noutputs tt ff\nwhile tt do tick(ff, ff) done\n").unwrap();
    assert!(matches!(wide.typecheck(), Err(Error::Type { rule: "Tick", .. })));
}

#[test]
fn budget_is_a_resource_error() {
    let program = parse_program(&fixture_text("program2_n4.psy")).unwrap();
    let options = BuildOptions {
        max_states: 3,
        ..BuildOptions::default()
    };
    let e = build_lts(&program, &options).unwrap_err();
    assert_eq!(e, Error::StateBudgetExceeded(3));
    assert!(e.is_resource_limit());
}
