//! Fixtures, random systems and brute-force oracles shared by the
//! integration tests. The oracles work from the definitions on explicit
//! runs and never touch the pair graph or partition refinement.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reactime_core::psyc::{build_lts, parse_program, BuildOptions};
use reactime_core::{sls, Alphabet, InputId, StateId, SynchronousSystem, SystemBuilder};

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn fixture(name: &str) -> SynchronousSystem {
    let sys = sls::parse(&fixture_text(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    assert!(sys.validate().is_empty(), "{name} is incomplete");
    sys
}

/// Every valid `.sls` fixture, by file name.
pub fn valid_fixtures() -> Vec<(String, SynchronousSystem)> {
    let mut names: Vec<String> = std::fs::read_dir(fixture_dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".sls"))
        .collect();
    names.sort();
    names
        .into_iter()
        .filter_map(|n| {
            let sys = sls::parse(&fixture_text(&n)).unwrap();
            sys.validate().is_empty().then_some((n, sys))
        })
        .collect()
}

pub fn build_program(file: &str, prefix: &str, name: &str) -> SynchronousSystem {
    let program = parse_program(&fixture_text(file)).unwrap();
    let options = BuildOptions {
        state_prefix: prefix.into(),
        name: name.into(),
        ..BuildOptions::default()
    };
    build_lts(&program, &options).unwrap()
}

pub fn state(sys: &SynchronousSystem, name: &str) -> StateId {
    sys.state(name).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of a random system.
#[derive(Clone, Debug)]
pub struct Shape {
    pub max_states: usize,
    pub inputs: Vec<&'static str>,
    pub outputs: Vec<&'static str>,
    /// Probability that a move has a second successor.
    pub branching: f64,
}

impl Shape {
    pub fn small(max_states: usize) -> Self {
        Shape {
            max_states,
            inputs: vec!["a", "b", "c"],
            outputs: vec!["0", "1"],
            branching: 0.25,
        }
    }
}

/// A random complete system; the number of inputs varies from 2 up to the
/// shape's alphabet.
pub fn random_system(rng: &mut ChaCha8Rng, shape: &Shape) -> SynchronousSystem {
    let n = rng.gen_range(1..=shape.max_states);
    let k = rng.gen_range(2..=shape.inputs.len());
    random_system_over(rng, n, &shape.inputs[..k], &shape.outputs, shape.branching)
}

pub fn random_system_over(
    rng: &mut ChaCha8Rng,
    n: usize,
    inputs: &[&str],
    outputs: &[&str],
    branching: f64,
) -> SynchronousSystem {
    let ins = Alphabet::parse_tokens(inputs.iter().copied()).unwrap();
    let outs = Alphabet::parse_tokens(outputs.iter().copied()).unwrap();
    let mut b = SystemBuilder::new("random", ins, outs);
    for i in 0..n {
        let o = outputs[rng.gen_range(0..outputs.len())];
        b.state(&format!("r{i}"), o).unwrap();
    }
    for i in 0..n {
        for a in inputs {
            let first = rng.gen_range(0..n);
            b.transition(&format!("r{i}"), a, &format!("r{first}")).unwrap();
            let second = rng.gen_range(0..n);
            if rng.gen_bool(branching) && second != first {
                b.transition(&format!("r{i}"), a, &format!("r{second}")).unwrap();
            }
        }
    }
    b.initial("r0").unwrap();
    b.build().unwrap()
}

pub fn all_words(k: usize, max_len: usize) -> Vec<Vec<InputId>> {
    let mut words = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<InputId>| {
                (0..k).map(move |a| {
                    let mut v = w.clone();
                    v.push(InputId(a));
                    v
                })
            })
            .collect();
        words.extend(layer.iter().cloned());
    }
    words
}

/// Greatest fixpoint of the bisimulation conditions, starting from
/// output equality and deleting violating pairs until stable.
pub fn naive_bisimilar(sys: &SynchronousSystem) -> Vec<Vec<bool>> {
    let n = sys.num_states();
    let mut rel: Vec<Vec<bool>> = (0..n)
        .map(|p| (0..n).map(|q| sys.out(StateId(p)) == sys.out(StateId(q))).collect())
        .collect();
    loop {
        let mut changed = false;
        for p in 0..n {
            for q in 0..n {
                if !rel[p][q] {
                    continue;
                }
                let simulates = |x: usize, y: usize| {
                    sys.inputs_ids().all(|a| {
                        sys.successors(StateId(x), a)
                            .iter()
                            .all(|x2| sys.successors(StateId(y), a).iter().any(|y2| rel[x2.0][y2.0]))
                    })
                };
                if !(simulates(p, q) && simulates(q, p)) {
                    rel[p][q] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            return rel;
        }
    }
}

/// Output words of every run of `p` and `q` on `w`, from the first to the
/// last state.
fn languages(
    sys: &SynchronousSystem,
    p: StateId,
    q: StateId,
    w: &[InputId],
) -> (BTreeSet<Vec<usize>>, BTreeSet<Vec<usize>>) {
    let words = |s: StateId| -> BTreeSet<Vec<usize>> {
        sys.runs(s, w)
            .unwrap()
            .iter()
            .map(|r| r.states().map(|x| sys.out(x).0).collect())
            .collect()
    };
    (words(p), words(q))
}

/// Some run pair on `w` differs.
pub fn brute_separates(sys: &SynchronousSystem, p: StateId, q: StateId, w: &[InputId]) -> bool {
    let (a, b) = languages(sys, p, q, w);
    a.iter().any(|x| b.iter().any(|y| x != y))
}

/// Every run pair on `w` differs.
pub fn brute_separates_always(sys: &SynchronousSystem, p: StateId, q: StateId, w: &[InputId]) -> bool {
    let (a, b) = languages(sys, p, q, w);
    a.is_disjoint(&b)
}

/// Minimal separators by enumeration: separating words of length at most
/// `max_len` none of whose proper prefixes always separates.
pub fn brute_separators(sys: &SynchronousSystem, p: StateId, q: StateId, max_len: usize) -> Vec<(Vec<InputId>, bool)> {
    if naive_bisimilar(sys)[p.0][q.0] {
        return Vec::new();
    }
    let mut out: Vec<(Vec<InputId>, bool)> = all_words(sys.inputs().len(), max_len)
        .into_iter()
        .filter(|w| (0..w.len()).all(|n| !brute_separates_always(sys, p, q, &w[..n])))
        .filter(|w| brute_separates(sys, p, q, w))
        .map(|w| {
            let det = brute_separates_always(sys, p, q, &w);
            (w, det)
        })
        .collect();
    out.sort_by(|x, y| x.0.len().cmp(&y.0.len()).then_with(|| x.0.cmp(&y.0)));
    out
}

/// First `n ≤ |w|` such that every run pair differs on `w[..n]`.
pub fn brute_first_effect(sys: &SynchronousSystem, p: StateId, q: StateId, w: &[InputId]) -> Option<usize> {
    (0..=w.len()).find(|&n| brute_separates_always(sys, p, q, &w[..n]))
}

/// Separating pairs straight from the definition, with the naive oracle.
pub fn brute_sep_pairs(sys: &SynchronousSystem, q: StateId) -> Vec<(usize, usize, bool)> {
    let rel = naive_bisimilar(sys);
    let k = sys.inputs().len();
    let mut out = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let s1 = sys.successors(q, InputId(i));
            let s2 = sys.successors(q, InputId(j));
            let ef = |xs: &[StateId], ys: &[StateId]| xs.iter().any(|x| ys.iter().all(|y| !rel[x.0][y.0]));
            if ef(s1, s2) || ef(s2, s1) {
                let det = s1.iter().all(|x| s2.iter().all(|y| !rel[x.0][y.0]));
                out.push((i, j, det));
            }
        }
    }
    out
}

/// Proptest strategy for complete systems with up to `max_states` states,
/// two or three inputs, two outputs and at most two successors per move.
pub fn arb_system(max_states: usize) -> impl proptest::strategy::Strategy<Value = SynchronousSystem> {
    use proptest::prelude::*;
    (1..=max_states, 2..=3usize)
        .prop_flat_map(|(n, k)| {
            let outs = proptest::collection::vec(0..2usize, n);
            let moves = proptest::collection::vec(proptest::collection::btree_set(0..n, 1..=2), n * k);
            (Just(n), Just(k), outs, moves)
        })
        .prop_map(|(_, k, outs, moves)| {
            let inputs = ["a", "b", "c"];
            let ins = Alphabet::parse_tokens(inputs[..k].iter().copied()).unwrap();
            let o = Alphabet::parse_tokens(["0", "1"]).unwrap();
            let mut b = SystemBuilder::new("arb", ins, o);
            for (i, &out) in outs.iter().enumerate() {
                b.state(&format!("r{i}"), ["0", "1"][out]).unwrap();
            }
            for (idx, targets) in moves.iter().enumerate() {
                let (p, a) = (idx / k, idx % k);
                for &t in targets {
                    b.transition_ids(StateId(p), InputId(a), StateId(t)).unwrap();
                }
            }
            b.initial("r0").unwrap();
            b.build().unwrap()
        })
}
