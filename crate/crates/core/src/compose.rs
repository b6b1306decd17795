//! Sequential and parallel composition.
//!
//! Composite states are pairs `(q_f, q_g)` named `qf*qg`; only the part
//! reachable from the pair of initial states is built, in breadth-first
//! order (inputs in alphabet order, then successors in state order).

use std::collections::{HashMap, VecDeque};

pub use crate::symbol::{pair_symbol, split_symbol};
use crate::system::{InputId, StateId, SynchronousSystem, SystemBuilder};
use crate::{Alphabet, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompositionKind {
    Sequential,
    Parallel,
}

/// A composite system together with the component state of each of its
/// states.
#[derive(Clone, Debug)]
pub struct ComposedSystem {
    pub system: SynchronousSystem,
    pub kind: CompositionKind,
    pub components: (String, String),
    pairs: Vec<(StateId, StateId)>,
    index: HashMap<(StateId, StateId), StateId>,
}

impl ComposedSystem {
    pub fn pair_of(&self, q: StateId) -> (StateId, StateId) {
        self.pairs[q.0]
    }

    /// The composite state for a component pair, if reachable.
    pub fn state_of(&self, qf: StateId, qg: StateId) -> Option<StateId> {
        self.index.get(&(qf, qg)).copied()
    }

    pub fn into_system(self) -> SynchronousSystem {
        self.system
    }
}

fn pair_name(f: &SynchronousSystem, qf: StateId, g: &SynchronousSystem, qg: StateId) -> String {
    format!("{}*{}", f.state_name(qf), g.state_name(qg))
}

/// Explores pairs reachable from the initial pair; `step` lists, for a pair
/// and a composite input, the successor pairs.
#[allow(clippy::too_many_arguments)]
fn explore(
    name: String,
    inputs: Alphabet,
    outputs: Alphabet,
    f: &SynchronousSystem,
    g: &SynchronousSystem,
    kind: CompositionKind,
    output_of: impl Fn(StateId, StateId) -> String,
    step: impl Fn(StateId, StateId, InputId) -> Vec<(StateId, StateId)>,
) -> Result<ComposedSystem> {
    let num_inputs = inputs.len();
    let mut builder = SystemBuilder::new(name, inputs, outputs);
    let mut pairs = Vec::new();
    let mut index = HashMap::new();
    let mut queue = VecDeque::new();
    let mut intern = |builder: &mut SystemBuilder,
                      pairs: &mut Vec<(StateId, StateId)>,
                      queue: &mut VecDeque<StateId>,
                      pair: (StateId, StateId)|
     -> Result<StateId> {
        if let Some(&id) = index.get(&pair) {
            return Ok(id);
        }
        let id = builder.state(&pair_name(f, pair.0, g, pair.1), &output_of(pair.0, pair.1))?;
        index.insert(pair, id);
        pairs.push(pair);
        queue.push_back(id);
        Ok(id)
    };
    let init = intern(&mut builder, &mut pairs, &mut queue, (f.initial(), g.initial()))?;
    while let Some(id) = queue.pop_front() {
        let (qf, qg) = pairs[id.0];
        for a in (0..num_inputs).map(InputId) {
            for target in step(qf, qg, a) {
                let to = intern(&mut builder, &mut pairs, &mut queue, target)?;
                builder.transition_ids(id, a, to)?;
            }
        }
    }
    builder.initial(&pair_name(f, pairs[init.0].0, g, pairs[init.0].1))?;
    let index = pairs.iter().enumerate().map(|(i, &p)| (p, StateId(i))).collect();
    Ok(ComposedSystem {
        system: builder.build()?,
        kind,
        components: (f.name().to_string(), g.name().to_string()),
        pairs,
        index,
    })
}

/// Feeds the outputs of `f` to `g`. A composite step on `a` moves `f` on
/// `a` and `g` on the output `f` showed before the step.
pub fn seq_compose(f: &SynchronousSystem, g: &SynchronousSystem) -> Result<ComposedSystem> {
    if !f.outputs().same_set(g.inputs()) {
        return Err(Error::SignatureMismatch(format!(
            "outputs of `{}` differ from inputs of `{}`",
            f.name(),
            g.name()
        )));
    }
    // output of f, as an input of g
    let relay: Vec<InputId> = f
        .outputs()
        .symbols()
        .iter()
        .map(|x| g.input(x.as_str()))
        .collect::<Result<_>>()?;
    explore(
        format!("seq-{}-{}", f.name(), g.name()),
        f.inputs().clone(),
        g.outputs().clone(),
        f,
        g,
        CompositionKind::Sequential,
        |_, qg| g.out_symbol(qg).as_str().to_string(),
        |qf, qg, a| {
            let b = relay[f.out(qf).0];
            f.successors(qf, a)
                .iter()
                .flat_map(|&rf| g.successors(qg, b).iter().map(move |&rg| (rf, rg)))
                .collect()
        },
    )
}

/// Runs `f` and `g` side by side on paired inputs, showing paired outputs.
pub fn par_compose(f: &SynchronousSystem, g: &SynchronousSystem) -> Result<ComposedSystem> {
    let width = g.inputs().len();
    explore(
        format!("par-{}-{}", f.name(), g.name()),
        f.inputs().product(g.inputs()),
        f.outputs().product(g.outputs()),
        f,
        g,
        CompositionKind::Parallel,
        |qf, qg| pair_symbol(f.out_symbol(qf), g.out_symbol(qg)).as_str().to_string(),
        |qf, qg, ac| {
            let (a, c) = (InputId(ac.0 / width), InputId(ac.0 % width));
            f.successors(qf, a)
                .iter()
                .flat_map(|&rf| g.successors(qg, c).iter().map(move |&rg| (rf, rg)))
                .collect()
        },
    )
}
