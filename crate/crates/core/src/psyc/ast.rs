//! Terms of the language. Commands and expressions share one syntax; the
//! type checker tells them apart.

use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Bool(bool),
    Int(i64),
}

impl Value {
    /// Reads a symbol component: `tt`, `ff` or a decimal integer.
    pub fn parse(text: &str) -> Option<Value> {
        match text {
            "tt" => Some(Value::Bool(true)),
            "ff" => Some(Value::Bool(false)),
            _ => text.parse().ok().map(Value::Int),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bool(true) => f.write_str("tt"),
            Value::Bool(false) => f.write_str("ff"),
            Value::Int(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Skip,
    Const(Value),
    Var(String),
    Deref(Box<Term>),
    Assign(String, Box<Term>),
    Seq(Box<Term>, Box<Term>),
    If(Box<Term>, Box<Term>, Box<Term>),
    While(Box<Term>, Box<Term>),
    Tick(Vec<Term>),
    Get(usize),
    /// `E - 1`
    Dec(Box<Term>),
    /// `E ≠ E`
    Neq(Box<Term>, Box<Term>),
    /// `E ∧ E`
    And(Box<Term>, Box<Term>),
}

impl Term {
    pub fn seq(a: Term, b: Term) -> Term {
        Term::Seq(Box::new(a), Box::new(b))
    }

    pub fn as_const(&self) -> Option<Value> {
        match self {
            Term::Const(v) => Some(*v),
            _ => None,
        }
    }

    /// Constants and variables reduce only to themselves.
    pub fn is_normal(&self) -> bool {
        matches!(self, Term::Const(_) | Term::Var(_))
    }

    /// Re-associates sequences to the right; other nodes are kept.
    pub fn normalize(&self) -> Term {
        match self {
            Term::Seq(a, b) => match a.as_ref() {
                Term::Seq(a1, a2) => Term::seq((**a1).clone(), Term::seq((**a2).clone(), (**b).clone())).normalize(),
                _ => Term::seq(a.normalize(), b.normalize()),
            },
            Term::If(c, t, e) => Term::If(c.clone(), Box::new(t.normalize()), Box::new(e.normalize())),
            Term::While(c, body) => Term::While(c.clone(), Box::new(body.normalize())),
            other => other.clone(),
        }
    }

    /// Variables read by an expression.
    fn reads(&self, acc: &mut BTreeSet<String>) {
        match self {
            Term::Deref(v) => match v.as_ref() {
                Term::Var(x) => {
                    acc.insert(x.clone());
                }
                other => other.reads(acc),
            },
            Term::Dec(e) => e.reads(acc),
            Term::Neq(a, b) | Term::And(a, b) => {
                a.reads(acc);
                b.reads(acc);
            }
            Term::Tick(args) => args.iter().for_each(|a| a.reads(acc)),
            _ => {}
        }
    }

    /// Variables whose current value may be read when running `self`
    /// followed by a continuation in which `after` are live.
    pub fn live(&self, after: &BTreeSet<String>) -> BTreeSet<String> {
        match self {
            Term::Seq(a, b) => a.live(&b.live(after)),
            Term::Assign(x, e) => {
                let mut live = after.clone();
                live.remove(x);
                e.reads(&mut live);
                live
            }
            Term::If(c, t, e) => {
                let mut live = t.live(after);
                live.extend(e.live(after));
                c.reads(&mut live);
                live
            }
            Term::While(c, body) => {
                let mut live = after.clone();
                c.reads(&mut live);
                loop {
                    let mut next = body.live(&live);
                    next.extend(live.iter().cloned());
                    if next == live {
                        return live;
                    }
                    live = next;
                }
            }
            other => {
                let mut live = after.clone();
                other.reads(&mut live);
                live
            }
        }
    }
}

fn atom(t: &Term, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t {
        Term::Const(_) | Term::Var(_) | Term::Get(_) | Term::Deref(_) | Term::Skip | Term::Tick(_) => write!(f, "{t}"),
        _ => write!(f, "({t})"),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Skip => f.write_str("skip"),
            Term::Const(v) => write!(f, "{v}"),
            Term::Var(x) => f.write_str(x),
            Term::Deref(v) => {
                f.write_str("!")?;
                atom(v, f)
            }
            Term::Assign(x, e) => write!(f, "{x} := {e}"),
            Term::Seq(a, b) => {
                match a.as_ref() {
                    Term::Seq(..) => write!(f, "({a})")?,
                    _ => write!(f, "{a}")?,
                }
                write!(f, "; {b}")
            }
            Term::If(c, t, e) => {
                write!(f, "if {c} then ")?;
                atom_cmd(t, f)?;
                f.write_str(" else ")?;
                atom_cmd(e, f)
            }
            Term::While(c, body) => write!(f, "while {c} do {body} done"),
            Term::Tick(args) => {
                f.write_str("tick(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
            Term::Get(i) => write!(f, "get {i}"),
            Term::Dec(e) => {
                atom(e, f)?;
                f.write_str(" - 1")
            }
            Term::Neq(a, b) => {
                sub(a, f)?;
                f.write_str(" != ")?;
                sub(b, f)
            }
            Term::And(a, b) => {
                match a.as_ref() {
                    Term::And(..) | Term::Neq(..) | Term::Dec(..) => write!(f, "{a}")?,
                    _ => atom(a, f)?,
                }
                f.write_str(" && ")?;
                match b.as_ref() {
                    Term::Neq(..) | Term::Dec(..) => write!(f, "{b}"),
                    _ => atom(b, f),
                }
            }
        }
    }
}

fn sub(t: &Term, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t {
        Term::Dec(_) => write!(f, "{t}"),
        _ => atom(t, f),
    }
}

fn atom_cmd(t: &Term, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t {
        Term::Seq(..) | Term::If(..) => write!(f, "({t})"),
        _ => write!(f, "{t}"),
    }
}
