//! From programs to finite systems.
//!
//! Reduction runs deterministically until a tick fires. Each tick becomes
//! a state, identified by its output, the continuation (sequences
//! re-associated to the right) and the values of the variables that the
//! continuation may still read. Successors are found by resuming the
//! continuation once per input symbol.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use super::ast::Term;
use super::eval::{Config, EvalTree, Machine, Store};
use super::Program;
use crate::system::{InputId, StateId, SynchronousSystem, SystemBuilder};
use crate::{Error, Result, Symbol};

#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub max_states: usize,
    /// States are named `{prefix}0`, `{prefix}1`, ... in breadth-first
    /// order.
    pub state_prefix: String,
    /// Input assumed before the first tick; defaults to the first symbol.
    pub initial_input: Option<String>,
    pub name: String,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_states: 10_000,
            state_prefix: "s".into(),
            initial_input: None,
            name: "program".into(),
        }
    }
}

// Bound on reduction steps within one round.
const ROUND_STEPS: usize = 1_000_000;

/// A fired tick: its output and the configuration resumed after it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Tick {
    output: Symbol,
    store: Store,
    continuation: Term,
}

impl Tick {
    fn key(&self) -> (String, Store, Term) {
        let continuation = self.continuation.normalize();
        let live = continuation.live(&BTreeSet::new());
        let store = self
            .store
            .iter()
            .filter(|(x, _)| live.contains(*x))
            .map(|(x, v)| (x.clone(), *v))
            .collect();
        (self.output.as_str().to_string(), store, continuation)
    }
}

/// Reduces until the next tick.
fn run_round(machine: &Machine, mut cfg: Config) -> Result<Tick> {
    let mut seen = HashSet::new();
    for _ in 0..ROUND_STEPS {
        if cfg.program == Term::Skip {
            return Err(Error::NonProductive("terminates before its next tick".into()));
        }
        if !seen.insert(cfg.clone()) {
            return Err(Error::NonProductive("loops forever without ticking".into()));
        }
        match machine.step(&cfg)?.1 {
            EvalTree::Leaf(next) => cfg = next,
            EvalTree::Node(output, children) => {
                // every child resumes the same store and program
                let Some(EvalTree::Leaf(first)) = children.into_iter().next() else {
                    return Err(Error::StuckConfiguration("tick without leaves".into()));
                };
                return Ok(Tick {
                    output,
                    store: first.store,
                    continuation: first.program,
                });
            }
        }
    }
    Err(Error::NonProductive(format!(
        "runs {ROUND_STEPS} steps without ticking"
    )))
}

/// Builds the system of reachable ticks.
pub fn build_lts(program: &Program, options: &BuildOptions) -> Result<SynchronousSystem> {
    program.typecheck()?;
    let machine = program.machine()?;
    let initial_input = match &options.initial_input {
        None => InputId(0),
        Some(a) => InputId(
            program
                .inputs
                .position(a)
                .ok_or_else(|| Error::UnknownSymbol(a.clone()))?,
        ),
    };
    let start = Config {
        store: program.initial_store()?,
        input: initial_input,
        program: program.body.clone(),
    };

    let mut builder = SystemBuilder::new(options.name.clone(), program.inputs.clone(), program.outputs.clone());
    let mut ticks: Vec<Tick> = Vec::new();
    let mut index: HashMap<(String, Store, Term), StateId> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut intern = |builder: &mut SystemBuilder,
                      ticks: &mut Vec<Tick>,
                      queue: &mut VecDeque<StateId>,
                      tick: Tick|
     -> Result<StateId> {
        let key = tick.key();
        if let Some(&id) = index.get(&key) {
            return Ok(id);
        }
        if ticks.len() >= options.max_states {
            return Err(Error::StateBudgetExceeded(options.max_states));
        }
        let name = format!("{}{}", options.state_prefix, ticks.len());
        let id = builder.state(&name, tick.output.as_str())?;
        index.insert(key, id);
        ticks.push(tick);
        queue.push_back(id);
        Ok(id)
    };

    let first = run_round(&machine, start)?;
    let init = intern(&mut builder, &mut ticks, &mut queue, first)?;
    while let Some(id) = queue.pop_front() {
        for a in (0..program.inputs.len()).map(InputId) {
            let tick = &ticks[id.0];
            let cfg = Config {
                store: tick.store.clone(),
                input: a,
                program: tick.continuation.clone(),
            };
            let next = run_round(&machine, cfg)?;
            let to = intern(&mut builder, &mut ticks, &mut queue, next)?;
            builder.transition_ids(id, a, to)?;
        }
    }
    builder.initial(&format!("{}{}", options.state_prefix, init.0))?;
    builder.build()
}
