//! One-step reduction of configurations to partial evaluation trees.
//!
//! Constants and variables reduce to themselves, so a context rule only
//! fires when its focused subterm is not already a constant or a variable;
//! with that proviso every configuration matches at most one rule.

use std::collections::BTreeMap;
use std::fmt;

use super::ast::{Term, Value};
use crate::{Alphabet, Error, InputId, Result, Symbol};

pub type Store = BTreeMap<String, Value>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Config {
    pub store: Store,
    pub input: InputId,
    pub program: Term,
}

/// Either a configuration still to be reduced, or a tick: an output and
/// one subtree per input symbol, in alphabet order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalTree {
    Leaf(Config),
    Node(Symbol, Vec<EvalTree>),
}

impl EvalTree {
    /// Applies a syntactic map to the programs at the leaves.
    pub fn map_leaves(self, f: &impl Fn(Term) -> Term) -> EvalTree {
        match self {
            EvalTree::Leaf(c) => EvalTree::Leaf(Config {
                program: f(c.program),
                ..c
            }),
            EvalTree::Node(out, children) => {
                EvalTree::Node(out, children.into_iter().map(|t| t.map_leaves(f)).collect())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Const,
    Var,
    SeqContext,
    SeqSkip,
    DerefContext,
    DerefVar,
    AssignContext,
    AssignConst,
    Get,
    IfCondContext,
    IfTrue,
    IfFalse,
    WhileUnfold,
    TickContext(usize),
    TickConstant,
    DecContext,
    DecConst,
    NeqContextLeft,
    NeqContextRight,
    NeqConst,
    AndContextLeft,
    AndContextRight,
    AndConst,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::TickContext(i) => write!(f, "Tick-context-{i}"),
            other => {
                let name = format!("{other:?}");
                // CamelCase to Kebab-case
                let mut out = String::new();
                for (i, c) in name.chars().enumerate() {
                    if c.is_uppercase() && i > 0 {
                        out.push('-');
                        out.extend(c.to_lowercase());
                    } else {
                        out.push(c);
                    }
                }
                f.write_str(&out)
            }
        }
    }
}

/// Everything reduction needs besides the configuration.
#[derive(Clone, Debug)]
pub struct Machine {
    pub inputs: Alphabet,
    pub outputs: Alphabet,
    /// Declared integer ranges, inclusive.
    pub ranges: BTreeMap<String, (i64, i64)>,
}

fn reducible(t: &Term) -> bool {
    !t.is_normal() && *t != Term::Skip
}

/// Every rule whose conclusion matches `t` and whose premise, if any, is
/// about a reducible subterm.
pub fn matching_rules(t: &Term) -> Vec<Rule> {
    let mut rules = Vec::new();
    let mut add = |cond: bool, r: Rule| {
        if cond {
            rules.push(r)
        }
    };
    add(matches!(t, Term::Const(_)), Rule::Const);
    add(matches!(t, Term::Var(_)), Rule::Var);
    add(matches!(t, Term::Seq(a, _) if reducible(a)), Rule::SeqContext);
    add(matches!(t, Term::Seq(a, _) if **a == Term::Skip), Rule::SeqSkip);
    add(matches!(t, Term::Deref(v) if reducible(v)), Rule::DerefContext);
    add(
        matches!(t, Term::Deref(v) if matches!(**v, Term::Var(_))),
        Rule::DerefVar,
    );
    add(matches!(t, Term::Assign(_, e) if reducible(e)), Rule::AssignContext);
    add(
        matches!(t, Term::Assign(_, e) if e.as_const().is_some()),
        Rule::AssignConst,
    );
    add(matches!(t, Term::Get(_)), Rule::Get);
    add(matches!(t, Term::If(c, ..) if reducible(c)), Rule::IfCondContext);
    add(
        matches!(t, Term::If(c, ..) if c.as_const() == Some(Value::Bool(true))),
        Rule::IfTrue,
    );
    add(
        matches!(t, Term::If(c, ..) if c.as_const() == Some(Value::Bool(false))),
        Rule::IfFalse,
    );
    add(matches!(t, Term::While(..)), Rule::WhileUnfold);
    if let Term::Tick(args) = t {
        for (i, a) in args.iter().enumerate() {
            add(
                args[..i].iter().all(|c| c.as_const().is_some()) && reducible(a),
                Rule::TickContext(i),
            );
        }
        add(args.iter().all(|c| c.as_const().is_some()), Rule::TickConstant);
    }
    add(matches!(t, Term::Dec(e) if reducible(e)), Rule::DecContext);
    add(
        matches!(t, Term::Dec(e) if matches!(e.as_const(), Some(Value::Int(_)))),
        Rule::DecConst,
    );
    if let Term::Neq(a, b) | Term::And(a, b) = t {
        let [left, right, both] = if matches!(t, Term::Neq(..)) {
            [Rule::NeqContextLeft, Rule::NeqContextRight, Rule::NeqConst]
        } else {
            [Rule::AndContextLeft, Rule::AndContextRight, Rule::AndConst]
        };
        add(reducible(a), left);
        add(a.as_const().is_some() && reducible(b), right);
        add(a.as_const().is_some() && b.as_const().is_some(), both);
    }
    rules
}

fn stuck(cfg: &Config) -> Error {
    Error::StuckConfiguration(cfg.program.to_string())
}

fn leaf(cfg: &Config, program: Term) -> EvalTree {
    EvalTree::Leaf(Config { program, ..cfg.clone() })
}

fn constant(v: Value) -> Term {
    Term::Const(v)
}

impl Machine {
    /// Reduces the focused subterm `sub` and plugs the results back with
    /// `plug`.
    fn context(&self, cfg: &Config, sub: &Term, plug: impl Fn(Term) -> Term) -> Result<EvalTree> {
        let inner = Config {
            program: sub.clone(),
            ..cfg.clone()
        };
        Ok(self.step(&inner)?.1.map_leaves(&plug))
    }

    /// One application of the reduction relation, with the rule used.
    pub fn step(&self, cfg: &Config) -> Result<(Rule, EvalTree)> {
        let t = &cfg.program;
        let tree = match t {
            Term::Skip => return Err(stuck(cfg)),
            Term::Const(_) => (Rule::Const, leaf(cfg, t.clone())),
            Term::Var(x) => {
                if !cfg.store.contains_key(x) {
                    return Err(stuck(cfg));
                }
                (Rule::Var, leaf(cfg, t.clone()))
            }
            Term::Seq(a, b) => {
                if **a == Term::Skip {
                    (Rule::SeqSkip, leaf(cfg, (**b).clone()))
                } else if reducible(a) {
                    (
                        Rule::SeqContext,
                        self.context(cfg, a, |a2| Term::seq(a2, (**b).clone()))?,
                    )
                } else {
                    return Err(stuck(cfg));
                }
            }
            Term::Deref(v) => match v.as_ref() {
                Term::Var(x) => {
                    let val = *cfg.store.get(x).ok_or_else(|| stuck(cfg))?;
                    (Rule::DerefVar, leaf(cfg, constant(val)))
                }
                v if reducible(v) => (
                    Rule::DerefContext,
                    self.context(cfg, v, |v2| Term::Deref(Box::new(v2)))?,
                ),
                _ => return Err(stuck(cfg)),
            },
            Term::Assign(x, e) => match e.as_const() {
                Some(val) => {
                    if let (Value::Int(n), Some(&(lo, hi))) = (val, self.ranges.get(x)) {
                        if n < lo || n > hi {
                            return Err(Error::OutOfRange {
                                var: x.clone(),
                                value: n,
                            });
                        }
                    }
                    let mut store = cfg.store.clone();
                    store.insert(x.clone(), val);
                    (
                        Rule::AssignConst,
                        EvalTree::Leaf(Config {
                            store,
                            input: cfg.input,
                            program: Term::Skip,
                        }),
                    )
                }
                None if reducible(e) => {
                    let x = x.clone();
                    (
                        Rule::AssignContext,
                        self.context(cfg, e, move |e2| Term::Assign(x.clone(), Box::new(e2)))?,
                    )
                }
                None => return Err(stuck(cfg)),
            },
            Term::Get(i) => {
                let symbol = self.inputs.get(cfg.input.0);
                let val = symbol
                    .components()
                    .nth(*i)
                    .and_then(Value::parse)
                    .ok_or_else(|| stuck(cfg))?;
                (Rule::Get, leaf(cfg, constant(val)))
            }
            Term::If(c, yes, no) => match c.as_const() {
                Some(Value::Bool(true)) => (Rule::IfTrue, leaf(cfg, (**yes).clone())),
                Some(Value::Bool(false)) => (Rule::IfFalse, leaf(cfg, (**no).clone())),
                None if reducible(c) => (
                    Rule::IfCondContext,
                    self.context(cfg, c, |c2| Term::If(Box::new(c2), yes.clone(), no.clone()))?,
                ),
                _ => return Err(stuck(cfg)),
            },
            Term::While(c, body) => (
                Rule::WhileUnfold,
                leaf(
                    cfg,
                    Term::If(
                        c.clone(),
                        Box::new(Term::seq((**body).clone(), t.clone())),
                        Box::new(Term::Skip),
                    ),
                ),
            ),
            Term::Tick(args) => match args.iter().position(|a| a.as_const().is_none()) {
                Some(i) if reducible(&args[i]) => (
                    Rule::TickContext(i),
                    self.context(cfg, &args[i], |a2| {
                        let mut args2 = args.clone();
                        args2[i] = a2;
                        Term::Tick(args2)
                    })?,
                ),
                Some(_) => return Err(stuck(cfg)),
                None => {
                    let text = args
                        .iter()
                        .map(|a| a.as_const().expect("all constant").to_string())
                        .collect::<Vec<_>>()
                        .join(",");
                    let out = self
                        .outputs
                        .position(&text)
                        .map(|o| self.outputs.get(o).clone())
                        .ok_or(Error::UnknownSymbol(text))?;
                    let children = (0..self.inputs.len())
                        .map(|a| {
                            EvalTree::Leaf(Config {
                                store: cfg.store.clone(),
                                input: InputId(a),
                                program: Term::Skip,
                            })
                        })
                        .collect();
                    (Rule::TickConstant, EvalTree::Node(out, children))
                }
            },
            Term::Dec(e) => match e.as_const() {
                Some(Value::Int(n)) => (Rule::DecConst, leaf(cfg, constant(Value::Int(n - 1)))),
                None if reducible(e) => (Rule::DecContext, self.context(cfg, e, |e2| Term::Dec(Box::new(e2)))?),
                _ => return Err(stuck(cfg)),
            },
            Term::Neq(a, b) | Term::And(a, b) => {
                let is_neq = matches!(t, Term::Neq(..));
                let rebuild = move |a: Term, b: Term| {
                    if is_neq {
                        Term::Neq(Box::new(a), Box::new(b))
                    } else {
                        Term::And(Box::new(a), Box::new(b))
                    }
                };
                let rules = if is_neq {
                    [Rule::NeqContextLeft, Rule::NeqContextRight, Rule::NeqConst]
                } else {
                    [Rule::AndContextLeft, Rule::AndContextRight, Rule::AndConst]
                };
                match (a.as_const(), b.as_const()) {
                    (None, _) if reducible(a) => (rules[0], self.context(cfg, a, |a2| rebuild(a2, (**b).clone()))?),
                    (Some(_), None) if reducible(b) => {
                        (rules[1], self.context(cfg, b, |b2| rebuild((**a).clone(), b2))?)
                    }
                    (Some(x), Some(y)) => {
                        let val = match (is_neq, x, y) {
                            (true, x, y) => Value::Bool(x != y),
                            (false, Value::Bool(x), Value::Bool(y)) => Value::Bool(x && y),
                            _ => return Err(stuck(cfg)),
                        };
                        (rules[2], leaf(cfg, constant(val)))
                    }
                    _ => return Err(stuck(cfg)),
                }
            }
        };
        Ok(tree)
    }
}
