//! Separating pairs, separators, strong separability, observable effects
//! and deterministic reaction time.
//!
//! Non-bisimilarity is always decided on the bisimulation quotient of the
//! system at hand, so every result here is invariant under quotienting.
//!
//! Output words of runs are compared in full: a run on `w` contributes
//! `|w| + 1` outputs, from its first to its last state. Index `n` of such a
//! word is the output after `n` inputs.

use std::collections::BTreeSet;

use crate::bisim::{bisimulation, Partition};
use crate::effect::EffectSymbol;
use crate::pairgraph::{NodeId, PairGraph};
use crate::system::{joined, InputId, StateId, SynchronousSystem};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SepPair {
    /// Lower in alphabet order.
    pub first: InputId,
    pub second: InputId,
    /// Every combination of successors is non-bisimilar.
    pub deterministic: bool,
}

/// Separating pairs of a state, unordered, listed in alphabet order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SepPairSet {
    pub pairs: Vec<SepPair>,
}

impl SepPairSet {
    pub fn is_reactive(&self) -> bool {
        !self.pairs.is_empty()
    }

    pub fn deterministic(&self) -> impl Iterator<Item = &SepPair> {
        self.pairs.iter().filter(|p| p.deterministic)
    }

    pub fn contains(&self, a1: InputId, a2: InputId) -> bool {
        self.pairs
            .iter()
            .any(|p| (p.first, p.second) == (a1, a2) || (p.first, p.second) == (a2, a1))
    }
}

/// `∃ x ∈ xs, ∀ y ∈ ys, x ≁ y`.
pub(crate) fn exists_forall_separated(partition: &Partition, xs: &[StateId], ys: &[StateId]) -> bool {
    xs.iter().any(|&x| ys.iter().all(|&y| !partition.same_class(x, y)))
}

pub(crate) fn separating_pairs_in(sys: &SynchronousSystem, partition: &Partition, q: StateId) -> SepPairSet {
    let mut pairs = Vec::new();
    let n = sys.inputs().len();
    for i in 0..n {
        for j in i + 1..n {
            let (a1, a2) = (InputId(i), InputId(j));
            let (s1, s2) = (sys.successors(q, a1), sys.successors(q, a2));
            if exists_forall_separated(partition, s1, s2) || exists_forall_separated(partition, s2, s1) {
                let deterministic = s1.iter().all(|&x| s2.iter().all(|&y| !partition.same_class(x, y)));
                pairs.push(SepPair {
                    first: a1,
                    second: a2,
                    deterministic,
                });
            }
        }
    }
    SepPairSet { pairs }
}

pub fn separating_pairs(sys: &SynchronousSystem, q: StateId) -> Result<SepPairSet> {
    sys.check_state(q)?;
    Ok(separating_pairs_in(sys, &bisimulation(sys), q))
}

pub fn reactive(sys: &SynchronousSystem, q: StateId) -> Result<bool> {
    Ok(separating_pairs(sys, q)?.is_reactive())
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Separator {
    pub word: Vec<InputId>,
    pub deterministic: bool,
}

// Paths of the pair graph labelled by the current word: end node and
// whether a DIFF node was visited.
type Frontier = BTreeSet<(NodeId, bool)>;

fn advance(g: &PairGraph, frontier: &Frontier, a: InputId) -> Frontier {
    frontier
        .iter()
        .flat_map(|&(n, hit)| g.successors(n, a).iter().map(move |&m| (m, hit || g.is_diff(m))))
        .collect()
}

/// Minimal separators of `p` and `q` up to `max_len`: words on which some
/// pair of runs produces different output words, flagged deterministic
/// when every pair does. Extensions of deterministic separators are not
/// listed. Bisimilar states have no separators. Words use `a`'s input
/// numbering.
pub fn separators(
    a: &SynchronousSystem,
    p: StateId,
    b: &SynchronousSystem,
    q: StateId,
    max_len: usize,
) -> Result<Vec<Separator>> {
    let (sys, p, q) = joined(a, p, b, q)?;
    if bisimulation(&sys).same_class(p, q) {
        return Ok(Vec::new());
    }
    let g = PairGraph::new(&sys, p, q);
    let mut found = Vec::new();
    let start: Frontier = [(0, g.is_diff(0))].into_iter().collect();
    let mut stack = vec![(Vec::new(), start)];
    while let Some((word, frontier)) = stack.pop() {
        let separating = frontier.iter().any(|&(_, hit)| hit);
        let deterministic = frontier.iter().all(|&(_, hit)| hit);
        if separating {
            found.push(Separator {
                word: word.clone(),
                deterministic,
            });
        }
        if deterministic || word.len() >= max_len {
            continue;
        }
        for x in sys.inputs_ids() {
            let mut next = word.clone();
            next.push(x);
            stack.push((next, advance(&g, &frontier, x)));
        }
    }
    found.sort_by(|x, y| x.word.len().cmp(&y.word.len()).then_with(|| x.word.cmp(&y.word)));
    Ok(found)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrongSeparation {
    /// Every run pair leaves the equal-output region within `bound`
    /// steps; `longest` realises the bound.
    Separable { bound: usize, longest: Vec<InputId> },
    /// `stem . cycle^ω` admits a run pair that never shows a difference.
    NotSeparable { stem: Vec<InputId>, cycle: Vec<InputId> },
}

impl StrongSeparation {
    pub fn holds(&self) -> bool {
        matches!(self, StrongSeparation::Separable { .. })
    }
}

/// Whether every infinite input word has a deterministic separator as a
/// prefix, decided as acyclicity of the EQ region of the pair graph.
pub fn strongly_separable(
    a: &SynchronousSystem,
    p: StateId,
    b: &SynchronousSystem,
    q: StateId,
) -> Result<StrongSeparation> {
    let (sys, p, q) = joined(a, p, b, q)?;
    Ok(strong_separation_in(&sys, p, q))
}

fn strong_separation_in(sys: &SynchronousSystem, p: StateId, q: StateId) -> StrongSeparation {
    let g = PairGraph::new(sys, p, q);
    match g.longest_eq_path(0) {
        Ok(longest) => StrongSeparation::Separable {
            bound: longest.len(),
            longest,
        },
        Err((stem, cycle)) => StrongSeparation::NotSeparable { stem, cycle },
    }
}

/// Observable effects of `w` for the pair `(p, q)`: at index `n <
/// |w|`, the output pairs `(x1, x2)` shown after `n` inputs by run pairs
/// that differ there, plus `Star` when some run pair shows no difference
/// at `n`. A singleton without `Star` is a guaranteed effect.
pub fn diff(
    a: &SynchronousSystem,
    p: StateId,
    b: &SynchronousSystem,
    q: StateId,
    w: &[InputId],
) -> Result<Vec<BTreeSet<EffectSymbol>>> {
    let (sys, p, q) = joined(a, p, b, q)?;
    if bisimulation(&sys).same_class(p, q) {
        return Ok(vec![[EffectSymbol::Star].into_iter().collect(); w.len()]);
    }
    let g = PairGraph::new(&sys, p, q);
    let mut reach: BTreeSet<NodeId> = [0].into_iter().collect();
    let mut effects = Vec::with_capacity(w.len());
    for &x in w {
        effects.push(
            reach
                .iter()
                .map(|&n| {
                    let (r, s) = g.node(n);
                    EffectSymbol::of(sys.out_symbol(r), sys.out_symbol(s))
                })
                .collect(),
        );
        reach = reach.iter().flat_map(|&n| g.successors(n, x).iter().copied()).collect();
    }
    Ok(effects)
}

/// First index `n ≤ |w|` by which every run pair on `w` has shown a
/// difference.
pub fn first_guaranteed_effect(
    a: &SynchronousSystem,
    p: StateId,
    b: &SynchronousSystem,
    q: StateId,
    w: &[InputId],
) -> Result<Option<usize>> {
    let (sys, p, q) = joined(a, p, b, q)?;
    let g = PairGraph::new(&sys, p, q);
    let mut frontier: Frontier = [(0, g.is_diff(0))].into_iter().collect();
    for n in 0..=w.len() {
        if frontier.iter().all(|&(_, hit)| hit) {
            return Ok(Some(n));
        }
        if n < w.len() {
            frontier = advance(&g, &frontier, w[n]);
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReactionTime {
    Finite {
        steps: usize,
        /// Word read after the separating pair on which the first
        /// guaranteed effect occurs at index `steps`.
        witness: Vec<InputId>,
        pair: (InputId, InputId),
        successors: (StateId, StateId),
    },
    Infinite(NoReactionTime),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NoReactionTime {
    NoDeterministicSeparatingPair,
    NotStronglySeparable {
        pair: (InputId, InputId),
        successors: (StateId, StateId),
        stem: Vec<InputId>,
        cycle: Vec<InputId>,
    },
}

impl ReactionTime {
    pub fn steps(&self) -> Option<usize> {
        match self {
            ReactionTime::Finite { steps, .. } => Some(*steps),
            ReactionTime::Infinite(_) => None,
        }
    }
}

/// Worst case, over deterministic separating pairs, their successor pairs
/// and all infinite words, of the index of the first guaranteed effect.
/// Infinite when there is no deterministic separating pair or some
/// successor pair is not strongly separable.
pub fn det_reaction_time(sys: &SynchronousSystem, q: StateId) -> Result<ReactionTime> {
    let seps = separating_pairs(sys, q)?;
    let mut best: Option<ReactionTime> = None;
    for sp in seps.deterministic() {
        for &q1 in sys.successors(q, sp.first) {
            for &q2 in sys.successors(q, sp.second) {
                match strong_separation_in(sys, q1, q2) {
                    StrongSeparation::NotSeparable { stem, cycle } => {
                        return Ok(ReactionTime::Infinite(NoReactionTime::NotStronglySeparable {
                            pair: (sp.first, sp.second),
                            successors: (q1, q2),
                            stem,
                            cycle,
                        }))
                    }
                    StrongSeparation::Separable { bound, longest } => {
                        if best.as_ref().and_then(ReactionTime::steps).is_none_or(|t| bound > t) {
                            best = Some(ReactionTime::Finite {
                                steps: bound,
                                witness: longest,
                                pair: (sp.first, sp.second),
                                successors: (q1, q2),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(best.unwrap_or(ReactionTime::Infinite(NoReactionTime::NoDeterministicSeparatingPair)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sls;

    const P1: &str = "system p1\ninputs tt ff\noutputs tt ff\ninit p0\n\
        state p0 ff\nstate p1 ff\nstate p2 tt\n\
        trans p0 tt p1\ntrans p0 ff p0\ntrans p1 tt p1\ntrans p1 ff p2\ntrans p2 tt p1\ntrans p2 ff p0\n";
    const CONST: &str = "system const\ninputs a b\noutputs 0 1\ninit c0\nstate c0 0\ntrans c0 a c0\ntrans c0 b c0\n";
    const TOGGLE: &str = "system toggle\ninputs a b\noutputs 0 1\ninit s0\n\
        state s0 0\nstate s1 1\n\
        trans s0 a s1\ntrans s0 b s0\ntrans s1 a s1\ntrans s1 b s0\n";

    fn effects(sys: &SynchronousSystem, sets: &[BTreeSet<EffectSymbol>]) -> Vec<String> {
        let _ = sys;
        sets.iter()
            .map(|s| s.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" "))
            .collect()
    }

    #[test]
    fn separating_pairs_of_fixtures() {
        let p1 = sls::parse(P1).unwrap();
        for q in ["p0", "p2"] {
            let s = separating_pairs(&p1, p1.state(q).unwrap()).unwrap();
            assert_eq!(
                s.pairs,
                [SepPair {
                    first: InputId(0),
                    second: InputId(1),
                    deterministic: true
                }]
            );
        }
        let c = sls::parse(CONST).unwrap();
        assert!(!reactive(&c, StateId(0)).unwrap());
    }

    #[test]
    fn p1_separators_and_effects() {
        let sys = sls::parse(P1).unwrap();
        let (p0, p1) = (StateId(0), StateId(1));
        let seps = separators(&sys, p0, &sys, p1, 3).unwrap();
        assert_eq!(seps.len(), 1);
        assert_eq!(sys.format_word(&seps[0].word), "ff");
        assert!(seps[0].deterministic);
        assert!(separators(&sys, p0, &sys, p0, 4).unwrap().is_empty());

        let d = diff(&sys, p0, &sys, p1, &sys.word("ff ff").unwrap()).unwrap();
        assert_eq!(effects(&sys, &d), ["*", "(ff,tt)"]);
        let d = diff(&sys, p0, &sys, p0, &sys.word("ff tt ff").unwrap()).unwrap();
        assert_eq!(effects(&sys, &d), ["*", "*", "*"]);
    }

    #[test]
    fn p1_is_not_strongly_separable() {
        let sys = sls::parse(P1).unwrap();
        match strongly_separable(&sys, StateId(1), &sys, StateId(0)).unwrap() {
            StrongSeparation::NotSeparable { stem, cycle } => {
                assert_eq!(sys.format_word(&stem), "tt");
                assert_eq!(sys.format_word(&cycle), "tt");
            }
            other => panic!("{other:?}"),
        }
        assert!(!strongly_separable(&sys, StateId(2), &sys, StateId(2)).unwrap().holds());
        assert!(matches!(
            det_reaction_time(&sys, StateId(0)).unwrap(),
            ReactionTime::Infinite(NoReactionTime::NotStronglySeparable { .. })
        ));
    }

    #[test]
    fn toggle_reacts_immediately() {
        let sys = sls::parse(TOGGLE).unwrap();
        let rt = det_reaction_time(&sys, StateId(0)).unwrap();
        assert_eq!(rt.steps(), Some(0));
        // brute force over all words up to length 3
        for len in 0..=3 {
            for code in 0..(1usize << len) {
                let w: Vec<InputId> = (0..len).map(|i| InputId((code >> i) & 1)).collect();
                let first = first_guaranteed_effect(&sys, StateId(1), &sys, StateId(0), &w).unwrap();
                assert_eq!(first, Some(0));
            }
        }
    }

    #[test]
    fn constant_machine_has_no_reaction_time() {
        let c = sls::parse(CONST).unwrap();
        assert_eq!(
            det_reaction_time(&c, StateId(0)).unwrap(),
            ReactionTime::Infinite(NoReactionTime::NoDeterministicSeparatingPair)
        );
    }
}
