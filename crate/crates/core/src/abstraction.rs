//! Compositional under-approximation of reactivity.
//!
//! The sender side of a sequential composition is summarised by its
//! deterministic observable effects (DOE), the receiver side by its
//! sequence of strongly separating pairs (SSPseq). Both are ultimately
//! periodic and computed exactly on the finite state space.

use std::collections::{BTreeSet, HashMap};

use crate::bisim::{bisimulation, Partition};
use crate::compose::seq_compose;
use crate::effect::{split_lasso_text, split_pair, star_omega, EffectSequence, EffectSymbol};
use crate::lasso::Lasso;
use crate::reactivity::{exists_forall_separated, separating_pairs_in};
use crate::system::{joined, InputId, StateId, SynchronousSystem};
use crate::{Alphabet, Error, Result};

/// `x ⊕ x = x`, anything else merges to `Star`.
pub fn merge(e1: &EffectSymbol, e2: &EffectSymbol) -> EffectSymbol {
    if e1 == e2 {
        e1.clone()
    } else {
        EffectSymbol::Star
    }
}

pub fn merge_seq(d1: &EffectSequence, d2: &EffectSequence) -> EffectSequence {
    d1.zip_with(d2, merge)
}

/// Pointwise merge of a family; `None` for the empty family.
pub fn merge_all<'a>(seqs: impl IntoIterator<Item = &'a EffectSequence>) -> Option<EffectSequence> {
    seqs.into_iter().fold(None, |acc, d| match acc {
        None => Some(d.clone()),
        Some(m) => Some(merge_seq(&m, d)),
    })
}

/// Swaps the components of every pair.
pub fn mirror(d: &EffectSequence) -> EffectSequence {
    d.map(|e| match e {
        EffectSymbol::Pair(x1, x2) => EffectSymbol::Pair(x2.clone(), x1.clone()),
        EffectSymbol::Star => EffectSymbol::Star,
    })
}

/// `d1 ≼ d2`: every non-`Star` position of `d1` agrees with `d2`.
pub fn obs_leq(d1: &EffectSequence, d2: &EffectSequence) -> bool {
    (0..d1.joint_window(d2)).all(|i| d1.get(i).is_star() || d1.get(i) == d2.get(i))
}

/// The interval between `Star^ω` and a greatest element, kept as a
/// membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObsOrder {
    greatest: EffectSequence,
}

impl ObsOrder {
    pub fn of(sys: &SynchronousSystem, q: StateId) -> Result<Self> {
        Ok(ObsOrder { greatest: doe(sys, q)? })
    }

    pub fn greatest(&self) -> &EffectSequence {
        &self.greatest
    }

    pub fn least(&self) -> EffectSequence {
        star_omega()
    }

    pub fn contains(&self, d: &EffectSequence) -> bool {
        obs_leq(d, &self.greatest)
    }
}

/// Lasso of the sequence `x_0, x_1, ...` with `x_{i+1} = next(x_i)` over a
/// finite space, read through `view`.
fn iterate_lasso<S, T>(start: S, next: impl Fn(&S) -> S, view: impl Fn(&S) -> T, cap: usize) -> Result<Lasso<T>>
where
    S: Clone + Eq + std::hash::Hash,
    T: Clone + Eq,
{
    let mut seen: HashMap<S, usize> = HashMap::new();
    let mut items = Vec::new();
    let mut cur = start;
    loop {
        if let Some(&j) = seen.get(&cur) {
            let cycle = items.split_off(j);
            return Ok(Lasso::new(items, cycle));
        }
        if items.len() >= cap {
            return Err(Error::FixpointDiverged(cap));
        }
        seen.insert(cur.clone(), items.len());
        items.push(view(&cur));
        cur = next(&cur);
    }
}

// Generous bound on the number of distinct level vectors.
const ROUND_CAP: usize = 1 << 16;

/// Deterministic observable effects of `q`: at index `i`, the output pair
/// every synchronized run pair shows after `i` steps from any successor
/// pair of a separating pair, or `Star`. Successor pairs are oriented by
/// alphabet order of the separating pair. Non-reactive states give
/// `Star^ω`.
pub fn doe(sys: &SynchronousSystem, q: StateId) -> Result<EffectSequence> {
    sys.check_state(q)?;
    let partition = bisimulation(sys);
    Ok(doe_in(sys, &partition, q))
}

fn doe_in(sys: &SynchronousSystem, partition: &Partition, q: StateId) -> EffectSequence {
    let seps = separating_pairs_in(sys, partition, q);
    let level0: BTreeSet<(StateId, StateId)> = seps
        .pairs
        .iter()
        .flat_map(|sp| {
            sys.successors(q, sp.first)
                .iter()
                .flat_map(move |&q1| sys.successors(q, sp.second).iter().map(move |&q2| (q1, q2)))
        })
        .collect();
    if level0.is_empty() {
        return star_omega();
    }
    let next = |level: &BTreeSet<(StateId, StateId)>| -> BTreeSet<(StateId, StateId)> {
        level
            .iter()
            .flat_map(|&(r, s)| {
                sys.inputs_ids().flat_map(move |a| {
                    sys.successors(r, a)
                        .iter()
                        .flat_map(move |&r2| sys.successors(s, a).iter().map(move |&s2| (r2, s2)))
                })
            })
            .collect()
    };
    let view = |level: &BTreeSet<(StateId, StateId)>| {
        let mut outs = level.iter().map(|&(r, s)| (sys.out(r), sys.out(s)));
        let first = outs.next().expect("levels are non-empty");
        if first.0 != first.1 && outs.all(|o| o == first) {
            EffectSymbol::Pair(sys.output_symbol(first.0).clone(), sys.output_symbol(first.1).clone())
        } else {
            EffectSymbol::Star
        }
    };
    // the number of levels is bounded by the powerset of pairs; complete
    // systems keep every level non-empty
    iterate_lasso(level0, next, view, usize::MAX).expect("uncapped")
}

/// Unordered input pair, lower alphabet index first.
pub type InputPair = (InputId, InputId);

pub fn input_pair(a1: InputId, a2: InputId) -> InputPair {
    (a1.min(a2), a1.max(a2))
}

pub type PairSetSequence = Lasso<BTreeSet<InputPair>>;

fn all_pairs(n: usize) -> BTreeSet<InputPair> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (InputId(i), InputId(j))))
        .collect()
}

fn ssp_in(sys: &SynchronousSystem, partition: &Partition, q1: StateId, q2: StateId) -> BTreeSet<InputPair> {
    let mut pairs = BTreeSet::new();
    let n = sys.inputs().len();
    for i in 0..n {
        for j in i + 1..n {
            let (a1, a2) = (InputId(i), InputId(j));
            let forward = exists_forall_separated(partition, sys.successors(q1, a1), sys.successors(q2, a2));
            let backward = exists_forall_separated(partition, sys.successors(q1, a2), sys.successors(q2, a1));
            if forward || backward {
                pairs.insert((a1, a2));
            }
        }
    }
    pairs
}

fn require_reactive(sys: &SynchronousSystem, partition: &Partition, q: StateId) -> Result<()> {
    if separating_pairs_in(sys, partition, q).is_reactive() {
        Ok(())
    } else {
        Err(Error::NotReactive(sys.state_name(q).to_string()))
    }
}

/// Strongly separating pairs of `q1` and `q2`: input pairs that separate
/// `q1` from `q2` in one of the two orientations.
pub fn ssp(a: &SynchronousSystem, q1: StateId, b: &SynchronousSystem, q2: StateId) -> Result<BTreeSet<InputPair>> {
    let (sys, q1, q2) = joined(a, q1, b, q2)?;
    let partition = bisimulation(&sys);
    require_reactive(&sys, &partition, q1)?;
    require_reactive(&sys, &partition, q2)?;
    Ok(ssp_in(&sys, &partition, q1, q2))
}

/// Sequence of strongly separating pairs of `q`, i.e. of `(q, q)`.
pub fn ssp_seq(sys: &SynchronousSystem, q: StateId) -> Result<PairSetSequence> {
    ssp_seq_pair(sys, q, sys, q)
}

/// Level `0` is `SSP(q1, q2)`; level `k + 1` intersects level `k` of the
/// sequences of every pair reached through a strongly separating pair, in
/// either orientation. An empty intersection is the set of all pairs.
pub fn ssp_seq_pair(a: &SynchronousSystem, q1: StateId, b: &SynchronousSystem, q2: StateId) -> Result<PairSetSequence> {
    let (sys, q1, q2) = joined(a, q1, b, q2)?;
    let partition = bisimulation(&sys);
    require_reactive(&sys, &partition, q1)?;
    require_reactive(&sys, &partition, q2)?;

    // pair nodes reachable through strongly separating pairs
    let mut nodes = vec![(q1, q2)];
    let mut index: HashMap<(StateId, StateId), usize> = [((q1, q2), 0)].into_iter().collect();
    let mut ssps = Vec::new();
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let mut next = 0;
    while next < nodes.len() {
        let (r, s) = nodes[next];
        let here = ssp_in(&sys, &partition, r, s);
        let mut targets = BTreeSet::new();
        for &(a1, a2) in &here {
            for (x, y) in [(a1, a2), (a2, a1)] {
                for &r2 in sys.successors(r, x) {
                    for &s2 in sys.successors(s, y) {
                        let id = *index.entry((r2, s2)).or_insert_with(|| {
                            nodes.push((r2, s2));
                            nodes.len() - 1
                        });
                        targets.insert(id);
                    }
                }
            }
        }
        ssps.push(here);
        succ.push(targets.into_iter().collect());
        next += 1;
    }

    let top = all_pairs(sys.inputs().len());
    let step = |levels: &Vec<BTreeSet<InputPair>>| -> Vec<BTreeSet<InputPair>> {
        succ.iter()
            .map(|targets| {
                targets
                    .iter()
                    .fold(top.clone(), |acc, &m| acc.intersection(&levels[m]).copied().collect())
            })
            .collect()
    };
    iterate_lasso(ssps, step, |levels| levels[0].clone(), ROUND_CAP)
}

pub fn format_pair_sets(seq: &PairSetSequence, inputs: &Alphabet) -> String {
    crate::effect::format_lasso(seq, |set| {
        let items: Vec<String> = set
            .iter()
            .map(|&(x, y)| format!("{}/{}", inputs.get(x.0), inputs.get(y.0)))
            .collect();
        format!("{{{}}}", items.join(" "))
    })
}

/// Parses `{a1/a2 ...} ... | {...}` against an input alphabet.
pub fn parse_pair_sets(text: &str, inputs: &Alphabet) -> Result<PairSetSequence> {
    let (prefix, cycle) = split_lasso_text(text)?;
    let bad = |msg: String| Error::Parse { line: 1, message: msg };
    let parse_part = |part: &str| -> Result<Vec<BTreeSet<InputPair>>> {
        let mut sets = Vec::new();
        let mut rest = part.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('{')
                .ok_or_else(|| bad(format!("expected `{{` at `{rest}`")))?;
            let end = body.find('}').ok_or_else(|| bad("unclosed `{`".into()))?;
            let mut set = BTreeSet::new();
            for item in body[..end].split_whitespace() {
                let (x, y) = split_pair(item, '/', Some(inputs))?;
                let (x, y) = (
                    InputId(inputs.position(x.as_str()).expect("checked")),
                    InputId(inputs.position(y.as_str()).expect("checked")),
                );
                if x == y {
                    return Err(bad(format!("pair `{item}` repeats a symbol")));
                }
                set.insert(input_pair(x, y));
            }
            sets.push(set);
            rest = body[end + 1..].trim_start();
        }
        Ok(sets)
    };
    let (prefix, cycle) = (parse_part(prefix)?, parse_part(cycle)?);
    if cycle.is_empty() {
        return Err(bad("empty cycle".into()));
    }
    Ok(Lasso::new(prefix, cycle))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LemmaVerdict {
    /// The effect at `index` of the sender is strongly separating for the
    /// receiver one step later.
    GuaranteedReactive {
        index: usize,
        effect: EffectSymbol,
    },
    NoGuarantee,
}

fn effect_as_input_pair(effect: &EffectSymbol, g: &SynchronousSystem) -> Option<InputPair> {
    match effect {
        EffectSymbol::Star => None,
        EffectSymbol::Pair(x1, x2) => {
            let a1 = g.inputs().position(x1.as_str())?;
            let a2 = g.inputs().position(x2.as_str())?;
            Some(input_pair(InputId(a1), InputId(a2)))
        }
    }
}

fn check_reachable(f: &SynchronousSystem, qf: StateId, g: &SynchronousSystem, qg: StateId) -> Result<()> {
    f.check_state(qf)?;
    g.check_state(qg)?;
    let composite = seq_compose(f, g)?;
    if composite.state_of(qf, qg).is_none() {
        return Err(Error::PreconditionFailed(format!(
            "`{}*{}` is not reachable in the sequential composite",
            f.state_name(qf),
            g.state_name(qg)
        )));
    }
    Ok(())
}

/// Sufficient condition for reactivity of `(q_f, q_g)` in the sequential
/// composite: some effect of `q_f` is strongly separating for `q_g` one
/// step later. Weakenings of `DOE(q_f)` only lose positions, so the
/// greatest element decides. Returns the least witnessing index.
pub fn lemma_check(f: &SynchronousSystem, qf: StateId, g: &SynchronousSystem, qg: StateId) -> Result<LemmaVerdict> {
    check_reachable(f, qf, g, qg)?;
    let d = doe(f, qf)?;
    let seq = match ssp_seq(g, qg) {
        Ok(seq) => seq,
        Err(Error::NotReactive(_)) => return Ok(LemmaVerdict::NoGuarantee),
        Err(e) => return Err(e),
    };
    let window = d.window().max(seq.window().saturating_sub(1)) + d.cycle().len() * seq.cycle().len();
    for i in 0..window {
        if let Some(pair) = effect_as_input_pair(d.get(i), g) {
            if seq.get(i + 1).contains(&pair) {
                return Ok(LemmaVerdict::GuaranteedReactive {
                    index: i,
                    effect: d.get(i).clone(),
                });
            }
        }
    }
    Ok(LemmaVerdict::NoGuarantee)
}

/// `Star^{t+1}` followed by the merge of `DOE(q'_g)` over the composite
/// states `(q'_f, q'_g)` reachable from `(q_f, q_g)` in exactly `t + 1`
/// steps, oriented like the sender's effect at `t`.
pub fn doe_compose(
    f: &SynchronousSystem,
    qf: StateId,
    g: &SynchronousSystem,
    qg: StateId,
    t: usize,
) -> Result<EffectSequence> {
    f.check_state(qf)?;
    g.check_state(qg)?;
    let composite = seq_compose(f, g)?;
    let start = composite.state_of(qf, qg).ok_or_else(|| {
        Error::PreconditionFailed(format!(
            "`{}*{}` is not reachable in the sequential composite",
            f.state_name(qf),
            g.state_name(qg)
        ))
    })?;
    let effect = doe(f, qf)?.get(t).clone();
    let holds = match ssp_seq(g, qg) {
        Ok(seq) => effect_as_input_pair(&effect, g).is_some_and(|p| seq.get(t + 1).contains(&p)),
        Err(Error::NotReactive(_)) => false,
        Err(e) => return Err(e),
    };
    if !holds {
        return Err(Error::PreconditionFailed(format!(
            "effect {effect} at index {t} is not strongly separating one step later"
        )));
    }

    let sys = &composite.system;
    let mut frontier: BTreeSet<StateId> = [start].into_iter().collect();
    for _ in 0..=t {
        frontier = frontier
            .iter()
            .flat_map(|&s| sys.inputs_ids().flat_map(move |a| sys.successors(s, a).iter().copied()))
            .collect();
    }
    let partition = bisimulation(g);
    let receivers: BTreeSet<StateId> = frontier.iter().map(|&s| composite.pair_of(s).1).collect();
    let does: Vec<EffectSequence> = receivers.iter().map(|&r| doe_in(g, &partition, r)).collect();
    let merged = merge_all(&does).unwrap_or_else(star_omega);
    // receiver effects are oriented by the receiver's input order; the
    // composite follows the sender's effect
    let merged = match &effect {
        EffectSymbol::Pair(x1, x2) if g.inputs().position(x1.as_str()) > g.inputs().position(x2.as_str()) => {
            mirror(&merged)
        }
        _ => merged,
    };
    Ok((0..=t).fold(merged, |acc, _| acc.cons(EffectSymbol::Star)))
}
