//! Bisimulation quotient and inductive non-bisimilarity witnesses.
//!
//! The quotient is computed by signature refinement seeded with the output
//! labels. Witnesses come from the stratified approximants: a pair is
//! separated at level 0 when its outputs differ and at level `k + 1` when
//! the `ind` rule applies using only pairs separated at level `k`.

use std::collections::{BTreeSet, HashMap};

use crate::system::{joined, InputId, StateId, SynchronousSystem, SystemBuilder};
use crate::Result;

/// Equivalence classes of a state space. Classes are numbered by their
/// lowest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    class_of: Vec<usize>,
    representatives: Vec<StateId>,
}

impl Partition {
    fn from_labels(labels: &[usize]) -> Self {
        let mut renumber = HashMap::new();
        let mut representatives = Vec::new();
        let class_of = labels
            .iter()
            .enumerate()
            .map(|(q, l)| {
                *renumber.entry(*l).or_insert_with(|| {
                    representatives.push(StateId(q));
                    representatives.len() - 1
                })
            })
            .collect();
        Partition {
            class_of,
            representatives,
        }
    }

    pub fn class_of(&self, q: StateId) -> usize {
        self.class_of[q.0]
    }

    pub fn num_classes(&self) -> usize {
        self.representatives.len()
    }

    pub fn representative(&self, class: usize) -> StateId {
        self.representatives[class]
    }

    pub fn same_class(&self, p: StateId, q: StateId) -> bool {
        self.class_of[p.0] == self.class_of[q.0]
    }

    pub fn members(&self, class: usize) -> impl Iterator<Item = StateId> + '_ {
        self.class_of
            .iter()
            .enumerate()
            .filter(move |(_, &c)| c == class)
            .map(|(q, _)| StateId(q))
    }
}

/// The coarsest output-respecting partition stable under the transition
/// relation, i.e. bisimilarity.
pub fn bisimulation(sys: &SynchronousSystem) -> Partition {
    let mut labels: Vec<usize> = sys.states().map(|q| sys.out(q).0).collect();
    let mut count = Partition::from_labels(&labels).num_classes();
    loop {
        let mut signatures: HashMap<(usize, Vec<BTreeSet<usize>>), usize> = HashMap::new();
        let next: Vec<usize> = sys
            .states()
            .map(|q| {
                let moves = sys
                    .inputs_ids()
                    .map(|a| sys.successors(q, a).iter().map(|t| labels[t.0]).collect())
                    .collect();
                let n = signatures.len();
                *signatures.entry((labels[q.0], moves)).or_insert(n)
            })
            .collect();
        let next_count = signatures.len();
        labels = next;
        if next_count == count {
            return Partition::from_labels(&labels);
        }
        count = next_count;
    }
}

/// The partition together with the system whose states are the class
/// representatives.
pub fn bisim_quotient(sys: &SynchronousSystem) -> (Partition, SynchronousSystem) {
    let partition = bisimulation(sys);
    let mut builder = SystemBuilder::new(sys.name(), sys.inputs().clone(), sys.outputs().clone());
    for c in 0..partition.num_classes() {
        let r = partition.representative(c);
        builder
            .state(sys.state_name(r), sys.out_symbol(r).as_str())
            .expect("representative names are distinct");
    }
    let mut seen = BTreeSet::new();
    for &(p, a, q) in sys.transitions() {
        let (cp, cq) = (partition.class_of(p), partition.class_of(q));
        if seen.insert((cp, a, cq)) {
            builder
                .transition_ids(StateId(cp), a, StateId(cq))
                .expect("deduplicated");
        }
    }
    builder
        .initial(sys.state_name(partition.representative(partition.class_of(sys.initial()))))
        .expect("initial representative exists");
    (partition, builder.build().expect("quotient is well formed"))
}

/// Which side of a pair the `ind` rule picks its existential successor on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Derivation of `p ≁ q` by the `base` and `ind` rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonBisimWitness {
    /// `out(p) ≠ out(q)`.
    Base,
    /// On `input`, the successor `chosen` on `side` is separated from
    /// every successor on the other side.
    Ind {
        input: InputId,
        side: Side,
        chosen: StateId,
        children: Vec<(StateId, NonBisimWitness)>,
    },
}

impl NonBisimWitness {
    pub fn depth(&self) -> usize {
        match self {
            NonBisimWitness::Base => 0,
            NonBisimWitness::Ind { children, .. } => 1 + children.iter().map(|(_, w)| w.depth()).max().unwrap_or(0),
        }
    }

    /// Re-derives `p ≁ q` from the rules alone.
    pub fn replay(&self, sys: &SynchronousSystem, p: StateId, q: StateId) -> bool {
        match self {
            NonBisimWitness::Base => sys.out(p) != sys.out(q),
            NonBisimWitness::Ind {
                input,
                side,
                chosen,
                children,
            } => {
                let (mine, other) = match side {
                    Side::Left => (p, q),
                    Side::Right => (q, p),
                };
                if !sys.successors(mine, *input).contains(chosen) {
                    return false;
                }
                sys.successors(other, *input).iter().all(|o| {
                    children.iter().any(|(c, w)| {
                        c == o
                            && match side {
                                Side::Left => w.replay(sys, *chosen, *o),
                                Side::Right => w.replay(sys, *o, *chosen),
                            }
                    })
                })
            }
        }
    }

    pub fn render(&self, sys: &SynchronousSystem, p: StateId, q: StateId) -> String {
        let mut out = String::new();
        self.render_into(sys, p, q, 0, &mut out);
        out
    }

    fn render_into(&self, sys: &SynchronousSystem, p: StateId, q: StateId, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        let (pn, qn) = (sys.state_name(p), sys.state_name(q));
        match self {
            NonBisimWitness::Base => out.push_str(&format!(
                "{pad}base {pn} {qn}: out {} != {}\n",
                sys.out_symbol(p),
                sys.out_symbol(q)
            )),
            NonBisimWitness::Ind {
                input,
                side,
                chosen,
                children,
            } => {
                out.push_str(&format!(
                    "{pad}ind {pn} {qn}: on {} take {} ({})\n",
                    sys.input_symbol(*input),
                    sys.state_name(*chosen),
                    match side {
                        Side::Left => "left",
                        Side::Right => "right",
                    }
                ));
                for (o, w) in children {
                    let (l, r) = match side {
                        Side::Left => (*chosen, *o),
                        Side::Right => (*o, *chosen),
                    };
                    w.render_into(sys, l, r, indent + 1, out);
                }
            }
        }
    }
}

/// Least separation level of every state pair, `None` for bisimilar pairs.
pub struct SeparationLevels {
    n: usize,
    level: Vec<Option<usize>>,
}

impl SeparationLevels {
    pub fn compute(sys: &SynchronousSystem) -> Self {
        let n = sys.num_states();
        let mut level = vec![None; n * n];
        for p in sys.states() {
            for q in sys.states() {
                if sys.out(p) != sys.out(q) {
                    level[p.0 * n + q.0] = Some(0);
                }
            }
        }
        let mut k = 0;
        loop {
            let separated = |l: &[Option<usize>], x: StateId, y: StateId| matches!(l[x.0 * n + y.0], Some(m) if m <= k);
            let mut fresh = Vec::new();
            for p in sys.states() {
                for q in sys.states() {
                    if level[p.0 * n + q.0].is_some() {
                        continue;
                    }
                    let ind = sys.inputs_ids().any(|a| {
                        let (ps, qs) = (sys.successors(p, a), sys.successors(q, a));
                        ps.iter().any(|&p2| qs.iter().all(|&q2| separated(&level, p2, q2)))
                            || qs.iter().any(|&q2| ps.iter().all(|&p2| separated(&level, p2, q2)))
                    });
                    if ind {
                        fresh.push(p.0 * n + q.0);
                    }
                }
            }
            if fresh.is_empty() {
                return SeparationLevels { n, level };
            }
            for i in fresh {
                level[i] = Some(k + 1);
            }
            k += 1;
        }
    }

    pub fn level(&self, p: StateId, q: StateId) -> Option<usize> {
        self.level[p.0 * self.n + q.0]
    }

    pub fn separated(&self, p: StateId, q: StateId) -> bool {
        self.level(p, q).is_some()
    }

    /// Builds a minimal-depth witness for a separated pair.
    pub fn witness(&self, sys: &SynchronousSystem, p: StateId, q: StateId) -> Option<NonBisimWitness> {
        let k = self.level(p, q)?;
        if k == 0 {
            return Some(NonBisimWitness::Base);
        }
        let below = |x: StateId, y: StateId| matches!(self.level(x, y), Some(m) if m < k);
        for a in sys.inputs_ids() {
            let (ps, qs) = (sys.successors(p, a), sys.successors(q, a));
            if let Some(&chosen) = ps.iter().find(|&&p2| qs.iter().all(|&q2| below(p2, q2))) {
                let children = qs
                    .iter()
                    .map(|&q2| (q2, self.witness(sys, chosen, q2).expect("separated below k")))
                    .collect();
                return Some(NonBisimWitness::Ind {
                    input: a,
                    side: Side::Left,
                    chosen,
                    children,
                });
            }
            if let Some(&chosen) = qs.iter().find(|&&q2| ps.iter().all(|&p2| below(p2, q2))) {
                let children = ps
                    .iter()
                    .map(|&p2| (p2, self.witness(sys, p2, chosen).expect("separated below k")))
                    .collect();
                return Some(NonBisimWitness::Ind {
                    input: a,
                    side: Side::Right,
                    chosen,
                    children,
                });
            }
        }
        unreachable!("level {k} pair must satisfy the ind rule below {k}")
    }
}

/// A minimal-depth witness of `p ≁ q`, or `None` when the states are
/// bisimilar. States of distinct systems are compared in their disjoint
/// union; the witness then refers to union state ids, returned alongside.
pub fn non_bisimilar(
    a: &SynchronousSystem,
    p: StateId,
    b: &SynchronousSystem,
    q: StateId,
) -> Result<Option<(NonBisimWitness, SynchronousSystem, StateId, StateId)>> {
    let (sys, p, q) = joined(a, p, b, q)?;
    let levels = SeparationLevels::compute(&sys);
    Ok(levels.witness(&sys, p, q).map(|w| (w, sys.into_owned(), p, q)))
}
