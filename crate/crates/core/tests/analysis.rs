//! Properties of bisimulation, separation and reaction time, checked
//! against the brute-force oracles in `common`.

mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use reactime_core::abstraction::doe;
use reactime_core::bisim::{bisim_quotient, bisimulation, non_bisimilar};
use reactime_core::effect::format_effects;
use reactime_core::pairgraph::PairGraph;
use reactime_core::reactivity::{
    det_reaction_time, diff, first_guaranteed_effect, separating_pairs, separators, strongly_separable, ReactionTime,
    StrongSeparation,
};
use reactime_core::{InputId, StateId, SynchronousSystem};

fn sep_pairs(sys: &SynchronousSystem, q: StateId) -> Vec<(usize, usize, bool)> {
    separating_pairs(sys, q)
        .unwrap()
        .pairs
        .iter()
        .map(|p| (p.first.0, p.second.0, p.deterministic))
        .collect()
}

#[test]
fn bisimilarity_is_an_equivalence_on_fixtures() {
    for (name, sys) in valid_fixtures() {
        let part = bisimulation(&sys);
        for p in sys.states() {
            assert!(part.same_class(p, p), "{name}");
            for q in sys.states() {
                assert_eq!(part.same_class(p, q), part.same_class(q, p), "{name}");
                for r in sys.states() {
                    if part.same_class(p, q) && part.same_class(q, r) {
                        assert!(part.same_class(p, r), "{name}");
                    }
                }
            }
        }
    }
}

#[test]
fn quotient_preserves_output_languages() {
    for (name, sys) in valid_fixtures() {
        let (part, quotient) = bisim_quotient(&sys);
        let max_len = if sys.inputs().len() > 2 { 4 } else { 6 };
        for q in sys.states() {
            let image = StateId(part.class_of(q));
            for w in all_words(sys.inputs().len(), max_len) {
                let ws: Vec<InputId> = w
                    .iter()
                    .map(|&a| quotient.input(sys.input_symbol(a).as_str()).unwrap())
                    .collect();
                let original: BTreeSet<Vec<String>> = sys
                    .output_language(q, &w)
                    .unwrap()
                    .into_iter()
                    .map(|o| o.iter().map(|&x| sys.output_symbol(x).to_string()).collect())
                    .collect();
                let reduced: BTreeSet<Vec<String>> = quotient
                    .output_language(image, &ws)
                    .unwrap()
                    .into_iter()
                    .map(|o| o.iter().map(|&x| quotient.output_symbol(x).to_string()).collect())
                    .collect();
                assert_eq!(
                    original,
                    reduced,
                    "{name} {} {}",
                    sys.state_name(q),
                    sys.format_word(&w)
                );
            }
        }
    }
}

#[test]
fn program_one_separators_and_effects() {
    let sys = build_program("program1.psy", "p", "p1");
    let (p0, p1) = (state(&sys, "p0"), state(&sys, "p1"));
    let tts = sys.word("tt tt tt tt tt tt").unwrap();
    // tt^ω keeps p0 and p1 in step: no effect is ever guaranteed
    assert_eq!(first_guaranteed_effect(&sys, p0, &sys, p1, &tts).unwrap(), None);
    assert_eq!(
        first_guaranteed_effect(&sys, p0, &sys, p1, &sys.word("ff").unwrap()).unwrap(),
        Some(1)
    );
    assert!(diff(&sys, p0, &sys, p1, &tts)
        .unwrap()
        .iter()
        .all(|s| s.len() == 1 && s.iter().all(|e| e.is_star())));
}

#[test]
fn bisimilar_states_have_no_separators_and_star_effects() {
    // x and y differ only in naming
    let sys = reactime_core::sls::parse(
        "system twins\ninputs a b\noutputs 0 1\ninit x\nstate x 0\nstate y 0\nstate z 1\n\
         trans x a z\ntrans x b x\ntrans y a z\ntrans y b y\ntrans z a z\ntrans z b z\n",
    )
    .unwrap();
    let (x, y) = (state(&sys, "x"), state(&sys, "y"));
    assert!(separators(&sys, x, &sys, y, 4).unwrap().is_empty());
    let w = sys.word("a b").unwrap();
    assert!(diff(&sys, x, &sys, y, &w)
        .unwrap()
        .iter()
        .all(|s| s.iter().all(|e| e.is_star())));
}

#[test]
fn analyses_are_invariant_under_quotienting() {
    for (name, sys) in valid_fixtures() {
        let (part, quotient) = bisim_quotient(&sys);
        for q in sys.states() {
            let image = StateId(part.class_of(q));
            let names = |s: &SynchronousSystem, v: Vec<(usize, usize, bool)>| -> Vec<(String, String, bool)> {
                v.into_iter()
                    .map(|(a, b, d)| (s.inputs().get(a).to_string(), s.inputs().get(b).to_string(), d))
                    .collect()
            };
            assert_eq!(
                names(&sys, sep_pairs(&sys, q)),
                names(&quotient, sep_pairs(&quotient, image)),
                "{name}"
            );
            assert_eq!(
                det_reaction_time(&sys, q).unwrap().steps(),
                det_reaction_time(&quotient, image).unwrap().steps(),
                "{name}"
            );
            assert_eq!(
                format_effects(&doe(&sys, q).unwrap()),
                format_effects(&doe(&quotient, image).unwrap()),
                "{name}"
            );
            for p in sys.states() {
                let pi = StateId(part.class_of(p));
                let words = |s: &SynchronousSystem, a: StateId, b: StateId| -> Vec<(String, bool)> {
                    separators(s, a, s, b, 3)
                        .unwrap()
                        .into_iter()
                        .map(|x| (s.format_word(&x.word), x.deterministic))
                        .collect()
                };
                assert_eq!(words(&sys, p, q), words(&quotient, pi, image), "{name}");
            }
        }
    }
}

#[test]
fn reaction_time_certificates_replay() {
    for (name, sys) in valid_fixtures() {
        for q in sys.states() {
            match det_reaction_time(&sys, q).unwrap() {
                ReactionTime::Finite {
                    steps,
                    witness,
                    successors,
                    ..
                } => {
                    let (q1, q2) = successors;
                    assert_eq!(brute_first_effect(&sys, q1, q2, &witness), Some(steps), "{name}");
                    assert_eq!(
                        first_guaranteed_effect(&sys, q1, &sys, q2, &witness).unwrap(),
                        Some(steps),
                        "{name}"
                    );
                }
                ReactionTime::Infinite(reactime_core::reactivity::NoReactionTime::NotStronglySeparable {
                    successors: (q1, q2),
                    stem,
                    cycle,
                    ..
                }) => {
                    let mut w = stem.clone();
                    for _ in 0..4 {
                        w.extend(&cycle);
                    }
                    assert_eq!(brute_first_effect(&sys, q1, q2, &w), None, "{name}");
                }
                ReactionTime::Infinite(_) => {
                    assert!(
                        separating_pairs(&sys, q).unwrap().deterministic().next().is_none(),
                        "{name}"
                    );
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn non_bisimilar_matches_naive_fixpoint(sys in arb_system(8)) {
        let naive = naive_bisimilar(&sys);
        for p in sys.states() {
            for q in sys.states() {
                let w = non_bisimilar(&sys, p, &sys, q).unwrap();
                prop_assert_eq!(w.is_none(), naive[p.0][q.0]);
                if let Some((witness, joined, jp, jq)) = w {
                    prop_assert!(witness.replay(&joined, jp, jq));
                }
            }
        }
    }

    #[test]
    fn run_counts_are_bounded(sys in arb_system(5), seed in 0u64..1000) {
        let mut r = rng(seed);
        use rand::Rng;
        let len = r.gen_range(0..5);
        let w: Vec<InputId> = (0..len).map(|_| InputId(r.gen_range(0..sys.inputs().len()))).collect();
        for q in sys.states() {
            let runs = sys.runs(q, &w).unwrap().len();
            let lang = sys.output_language(q, &w).unwrap().len();
            prop_assert!(lang <= runs);
            prop_assert!(runs <= sys.max_out_degree().pow(w.len() as u32));
        }
    }

    #[test]
    fn separating_pairs_follow_the_definition(sys in arb_system(8)) {
        for q in sys.states() {
            prop_assert_eq!(sep_pairs(&sys, q), brute_sep_pairs(&sys, q));
        }
    }

    #[test]
    fn separators_match_enumeration(sys in arb_system(5)) {
        for p in sys.states() {
            for q in sys.states() {
                let found: Vec<_> = separators(&sys, p, &sys, q, 4)
                    .unwrap()
                    .into_iter()
                    .map(|s| (s.word, s.deterministic))
                    .collect();
                prop_assert_eq!(found, brute_separators(&sys, p, q, 4));
            }
        }
    }

    #[test]
    fn strong_separation_yields_a_deterministic_separator(sys in arb_system(6)) {
        for p in sys.states() {
            for q in sys.states() {
                if let StrongSeparation::Separable { bound, longest } = strongly_separable(&sys, p, &sys, q).unwrap() {
                    let size = PairGraph::new(&sys, p, q).len();
                    prop_assert!(bound <= size);
                    prop_assert!(brute_separates_always(&sys, p, q, &longest));
                    let found = separators(&sys, p, &sys, q, bound).unwrap();
                    prop_assert!(found.iter().any(|s| s.deterministic));
                }
            }
        }
    }

    #[test]
    fn finite_reaction_time_is_the_worst_case(sys in arb_system(5)) {
        for q in sys.states() {
            let ReactionTime::Finite { steps, .. } = det_reaction_time(&sys, q).unwrap() else { continue };
            let mut worst = 0;
            for sp in separating_pairs(&sys, q).unwrap().deterministic() {
                for &r1 in sys.successors(q, sp.first) {
                    for &r2 in sys.successors(q, sp.second) {
                        for w in all_words(sys.inputs().len(), steps + 2) {
                            if w.len() == steps + 2 {
                                let n = brute_first_effect(&sys, r1, r2, &w);
                                prop_assert!(n.is_some());
                                worst = worst.max(n.unwrap());
                            }
                        }
                    }
                }
            }
            prop_assert_eq!(worst, steps);
        }
    }
}
