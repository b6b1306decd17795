//! The finite synchronous system model, runs and output languages.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::symbol::{Alphabet, Symbol};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InputId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OutputId(pub usize);

/// A complete, finitely branching Moore-style labelled transition system
/// `<In, Out, Q, E, out, q_i>`.
///
/// Completeness is not enforced at construction so that broken inputs can
/// be reported by [`SynchronousSystem::validate`]; every analysis assumes a
/// valid system.
#[derive(Clone, Debug)]
pub struct SynchronousSystem {
    name: String,
    inputs: Alphabet,
    outputs: Alphabet,
    states: Vec<String>,
    state_index: HashMap<String, usize>,
    out: Vec<OutputId>,
    transitions: Vec<(StateId, InputId, StateId)>,
    // succ[state][input], sorted and duplicate-free
    succ: Vec<Vec<Vec<StateId>>>,
    initial: StateId,
    // leading `#` lines of the source file, kept for round trips
    comments: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Incomplete { state: String, input: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Incomplete { state, input } => {
                write!(f, "incomplete: state `{state}` has no transition on `{input}`")
            }
        }
    }
}

/// A finite run `q0 . a0 . q1 ... a_{n-1} . q_n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Run {
    pub start: StateId,
    pub steps: Vec<(InputId, StateId)>,
}

impl Run {
    pub fn states(&self) -> impl Iterator<Item = StateId> + '_ {
        std::iter::once(self.start).chain(self.steps.iter().map(|&(_, q)| q))
    }

    pub fn last(&self) -> StateId {
        self.steps.last().map_or(self.start, |&(_, q)| q)
    }
}

pub struct SystemBuilder {
    name: String,
    inputs: Alphabet,
    outputs: Alphabet,
    states: Vec<String>,
    state_index: HashMap<String, usize>,
    out: Vec<OutputId>,
    transitions: Vec<(StateId, InputId, StateId)>,
    seen: HashSet<(StateId, InputId, StateId)>,
    initial: Option<StateId>,
}

impl SystemBuilder {
    pub fn new(name: impl Into<String>, inputs: Alphabet, outputs: Alphabet) -> Self {
        SystemBuilder {
            name: name.into(),
            inputs,
            outputs,
            states: Vec::new(),
            state_index: HashMap::new(),
            out: Vec::new(),
            transitions: Vec::new(),
            seen: HashSet::new(),
            initial: None,
        }
    }

    pub fn state(&mut self, name: &str, output: &str) -> Result<StateId> {
        if !crate::symbol::is_valid_token(name) {
            return Err(Error::InvalidToken(name.to_string()));
        }
        let o = self
            .outputs
            .position(output)
            .ok_or_else(|| Error::UnknownSymbol(output.to_string()))?;
        if self.state_index.contains_key(name) {
            return Err(Error::Parse {
                line: 0,
                message: format!("duplicate state `{name}`"),
            });
        }
        let id = StateId(self.states.len());
        self.state_index.insert(name.to_string(), id.0);
        self.states.push(name.to_string());
        self.out.push(OutputId(o));
        Ok(id)
    }

    pub fn lookup(&self, name: &str) -> Result<StateId> {
        self.state_index
            .get(name)
            .map(|&i| StateId(i))
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn transition(&mut self, from: &str, input: &str, to: &str) -> Result<()> {
        let from = self.lookup(from)?;
        let to = self.lookup(to)?;
        let a = self
            .inputs
            .position(input)
            .ok_or_else(|| Error::UnknownSymbol(input.to_string()))?;
        self.transition_ids(from, InputId(a), to)
    }

    pub fn transition_ids(&mut self, from: StateId, input: InputId, to: StateId) -> Result<()> {
        if !self.seen.insert((from, input, to)) {
            return Err(Error::Parse {
                line: 0,
                message: format!(
                    "duplicate transition `{} {} {}`",
                    self.states[from.0],
                    self.inputs.get(input.0),
                    self.states[to.0]
                ),
            });
        }
        self.transitions.push((from, input, to));
        Ok(())
    }

    pub fn initial(&mut self, name: &str) -> Result<()> {
        self.initial = Some(self.lookup(name)?);
        Ok(())
    }

    pub fn build(self) -> Result<SynchronousSystem> {
        let initial = self.initial.ok_or_else(|| Error::Parse {
            line: 0,
            message: "missing `init`".into(),
        })?;
        let mut succ = vec![vec![Vec::new(); self.inputs.len()]; self.states.len()];
        for &(p, a, q) in &self.transitions {
            succ[p.0][a.0].push(q);
        }
        for row in &mut succ {
            for targets in row.iter_mut() {
                targets.sort_unstable();
                targets.dedup();
            }
        }
        Ok(SynchronousSystem {
            name: self.name,
            inputs: self.inputs,
            outputs: self.outputs,
            states: self.states,
            state_index: self.state_index,
            out: self.out,
            transitions: self.transitions,
            succ,
            initial,
            comments: Vec::new(),
        })
    }
}

impl SynchronousSystem {
    /// Comment lines, `#` included, that preceded the system in its file.
    pub fn comments(&self) -> &[String] {
        &self.comments
    }

    pub fn with_comments(mut self, comments: Vec<String>) -> Self {
        self.comments = comments;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn inputs(&self) -> &Alphabet {
        &self.inputs
    }

    pub fn outputs(&self) -> &Alphabet {
        &self.outputs
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.states.len()).map(StateId)
    }

    pub fn inputs_ids(&self) -> impl Iterator<Item = InputId> {
        (0..self.inputs.len()).map(InputId)
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.states[q.0]
    }

    pub fn state(&self, name: &str) -> Result<StateId> {
        self.state_index
            .get(name)
            .map(|&i| StateId(i))
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn input(&self, text: &str) -> Result<InputId> {
        self.inputs
            .position(text)
            .map(InputId)
            .ok_or_else(|| Error::UnknownSymbol(text.to_string()))
    }

    pub fn input_symbol(&self, a: InputId) -> &Symbol {
        self.inputs.get(a.0)
    }

    pub fn output_symbol(&self, o: OutputId) -> &Symbol {
        self.outputs.get(o.0)
    }

    /// Parses a whitespace-separated input word.
    pub fn word(&self, text: &str) -> Result<Vec<InputId>> {
        text.split_whitespace().map(|t| self.input(t)).collect()
    }

    pub fn format_word(&self, word: &[InputId]) -> String {
        word.iter()
            .map(|&a| self.input_symbol(a).as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn out(&self, q: StateId) -> OutputId {
        self.out[q.0]
    }

    pub fn out_symbol(&self, q: StateId) -> &Symbol {
        self.output_symbol(self.out[q.0])
    }

    /// Transitions in declaration order.
    pub fn transitions(&self) -> &[(StateId, InputId, StateId)] {
        &self.transitions
    }

    pub fn successors(&self, q: StateId, a: InputId) -> &[StateId] {
        &self.succ[q.0][a.0]
    }

    /// At most one successor per (state, input).
    pub fn is_deterministic(&self) -> bool {
        self.succ.iter().flatten().all(|t| t.len() <= 1)
    }

    pub fn max_out_degree(&self) -> usize {
        self.succ.iter().flatten().map(Vec::len).max().unwrap_or(0)
    }

    /// Lists every (state, input) without a successor. Reference errors
    /// cannot occur here: the builder rejects them.
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations = Vec::new();
        for q in self.states() {
            for a in self.inputs_ids() {
                if self.successors(q, a).is_empty() {
                    violations.push(Violation::Incomplete {
                        state: self.state_name(q).to_string(),
                        input: self.input_symbol(a).to_string(),
                    });
                }
            }
        }
        violations
    }

    pub(crate) fn check_state(&self, q: StateId) -> Result<()> {
        if q.0 < self.states.len() {
            Ok(())
        } else {
            Err(Error::UnknownState(format!("#{}", q.0)))
        }
    }

    fn check_word(&self, w: &[InputId]) -> Result<()> {
        match w.iter().find(|a| a.0 >= self.inputs.len()) {
            Some(a) => Err(Error::UnknownSymbol(format!("#{}", a.0))),
            None => Ok(()),
        }
    }

    /// All maximal runs on `w` from `q0`, in lexicographic order of their
    /// state sequences.
    pub fn runs(&self, q0: StateId, w: &[InputId]) -> Result<Vec<Run>> {
        self.check_state(q0)?;
        self.check_word(w)?;
        let mut runs = vec![Run {
            start: q0,
            steps: Vec::with_capacity(w.len()),
        }];
        for &a in w {
            runs = runs
                .into_iter()
                .flat_map(|run| {
                    let last = run.last();
                    self.successors(last, a).iter().map(move |&q| {
                        let mut next = run.clone();
                        next.steps.push((a, q));
                        next
                    })
                })
                .collect();
        }
        Ok(runs)
    }

    /// `{ out(q0) out(q1) ... out(q_{|w|-1}) }` over all runs on `w`: one
    /// output symbol per input symbol, the final state's output is not
    /// emitted.
    pub fn output_language(&self, q0: StateId, w: &[InputId]) -> Result<BTreeSet<Vec<OutputId>>> {
        let runs = self.runs(q0, w)?;
        Ok(runs
            .iter()
            .map(|r| r.states().take(w.len()).map(|q| self.out(q)).collect())
            .collect())
    }

    /// Output words of whole runs, final state included (`|w| + 1`
    /// symbols). Separators and observable effects compare these.
    pub fn run_outputs(&self, q0: StateId, w: &[InputId]) -> Result<BTreeSet<Vec<OutputId>>> {
        let runs = self.runs(q0, w)?;
        Ok(runs.iter().map(|r| r.states().map(|q| self.out(q)).collect()).collect())
    }

    /// Disjoint union of two systems over the same signature; states are
    /// renamed `A.<name>` and `B.<name>`, symbols follow `a`'s order.
    /// Returns the union and the offset of `b`'s states.
    pub fn disjoint_union(a: &Self, b: &Self) -> Result<(Self, usize)> {
        if !a.inputs.same_set(&b.inputs) {
            return Err(Error::SignatureMismatch("input alphabets differ".into()));
        }
        if !a.outputs.same_set(&b.outputs) {
            return Err(Error::SignatureMismatch("output alphabets differ".into()));
        }
        let name = format!("{}+{}", a.name, b.name);
        let mut builder = SystemBuilder::new(name, a.inputs.clone(), a.outputs.clone());
        for (prefix, sys) in [("A.", a), ("B.", b)] {
            for q in sys.states() {
                builder.state(&format!("{prefix}{}", sys.state_name(q)), sys.out_symbol(q).as_str())?;
            }
        }
        for (prefix, sys) in [("A.", a), ("B.", b)] {
            for &(p, x, q) in &sys.transitions {
                builder.transition(
                    &format!("{prefix}{}", sys.state_name(p)),
                    sys.input_symbol(x).as_str(),
                    &format!("{prefix}{}", sys.state_name(q)),
                )?;
            }
        }
        builder.initial(&format!("A.{}", a.state_name(a.initial)))?;
        Ok((builder.build()?, a.num_states()))
    }
}

/// Places two states of possibly distinct systems in one system.
///
/// When both sides are the same system no union is built.
pub(crate) fn joined<'a>(
    a: &'a SynchronousSystem,
    p: StateId,
    b: &'a SynchronousSystem,
    q: StateId,
) -> Result<(std::borrow::Cow<'a, SynchronousSystem>, StateId, StateId)> {
    a.check_state(p)?;
    b.check_state(q)?;
    if std::ptr::eq(a, b) {
        return Ok((std::borrow::Cow::Borrowed(a), p, q));
    }
    let (union, offset) = SynchronousSystem::disjoint_union(a, b)?;
    Ok((std::borrow::Cow::Owned(union), p, StateId(q.0 + offset)))
}
