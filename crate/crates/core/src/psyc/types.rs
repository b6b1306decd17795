//! Typing judgements `Γ ⊢ M : σ`.
//!
//! Conditional branches and the second component of a sequence are
//! required to be commands, so every term reachable by evaluation of a
//! command is again a command.

use std::fmt;

use super::ast::{Term, Value};
use crate::{Alphabet, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    Int,
    Bool,
}

impl Base {
    pub fn of(v: Value) -> Base {
        match v {
            Value::Int(_) => Base::Int,
            Value::Bool(_) => Base::Bool,
        }
    }

    pub fn default_value(self) -> Value {
        match self {
            Base::Int => Value::Int(0),
            Base::Bool => Value::Bool(false),
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Base::Int => "int",
            Base::Bool => "bool",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Type {
    Comm,
    Var(Base),
    Exp(Base),
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Comm => f.write_str("comm"),
            Type::Var(b) => write!(f, "var({b})"),
            Type::Exp(b) => write!(f, "exp({b})"),
        }
    }
}

/// Variable declarations, each bound once.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypeEnv {
    bindings: Vec<(String, Type)>,
}

impl TypeEnv {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(&mut self, name: &str, ty: Type) -> Result<()> {
        if self.lookup(name).is_some() {
            return Err(Error::Type {
                rule: "Var",
                message: format!("`{name}` declared twice"),
            });
        }
        self.bindings.push((name.to_string(), ty));
        Ok(())
    }

    pub fn lookup(&self, name: &str) -> Option<Type> {
        self.bindings.iter().find(|(n, _)| n == name).map(|&(_, t)| t)
    }

    pub fn bindings(&self) -> &[(String, Type)] {
        &self.bindings
    }
}

/// Component types of the input and output alphabets. A component whose
/// symbols are not all booleans or all integers has no type and cannot be
/// read or written by programs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub inputs: Vec<Option<Base>>,
    pub outputs: Vec<Option<Base>>,
}

fn component_types(alphabet: &Alphabet, what: &str) -> Result<Vec<Option<Base>>> {
    let arity = alphabet.get(0).arity();
    let mut columns: Vec<Vec<Value>> = vec![Vec::new(); arity];
    let mut typed = vec![true; arity];
    for s in alphabet.symbols() {
        if s.arity() != arity {
            return Err(Error::Type {
                rule: "Signature",
                message: format!("{what} symbols have differing arities"),
            });
        }
        for (i, c) in s.components().enumerate() {
            match Value::parse(c) {
                Some(v) => columns[i].push(v),
                None => typed[i] = false,
            }
        }
    }
    Ok(columns
        .iter()
        .zip(typed)
        .map(|(col, ok)| {
            let base = Base::of(*col.first()?);
            (ok && col.iter().all(|&v| Base::of(v) == base)).then_some(base)
        })
        .collect())
}

impl Signature {
    pub fn from_alphabets(inputs: &Alphabet, outputs: &Alphabet) -> Result<Self> {
        Ok(Signature {
            inputs: component_types(inputs, "input")?,
            outputs: component_types(outputs, "output")?,
        })
    }
}

fn mismatch(rule: &'static str, term: &Term, expected: &str, found: Type) -> Error {
    Error::Type {
        rule,
        message: format!("`{term}` has type {found}, expected {expected}"),
    }
}

fn expect_exp(rule: &'static str, env: &TypeEnv, sig: &Signature, t: &Term, base: Base) -> Result<()> {
    match typecheck(t, env, sig)? {
        Type::Exp(b) if b == base => Ok(()),
        other => Err(mismatch(rule, t, &format!("exp({base})"), other)),
    }
}

fn expect_comm(rule: &'static str, env: &TypeEnv, sig: &Signature, t: &Term) -> Result<()> {
    match typecheck(t, env, sig)? {
        Type::Comm => Ok(()),
        other => Err(mismatch(rule, t, "comm", other)),
    }
}

/// Type of `term`, naming the violated rule on failure.
pub fn typecheck(term: &Term, env: &TypeEnv, sig: &Signature) -> Result<Type> {
    match term {
        Term::Skip => Ok(Type::Comm),
        Term::Const(v) => match v {
            Value::Int(n) if *n < 0 => Err(Error::Type {
                rule: "Const",
                message: format!("negative constant {n}"),
            }),
            _ => Ok(Type::Exp(Base::of(*v))),
        },
        Term::Var(x) => env.lookup(x).ok_or_else(|| Error::Type {
            rule: "Var",
            message: format!("undeclared variable `{x}`"),
        }),
        Term::Deref(v) => match typecheck(v, env, sig)? {
            Type::Var(b) => Ok(Type::Exp(b)),
            other => Err(mismatch("Deref", v, "var(τ)", other)),
        },
        Term::Assign(x, e) => match env.lookup(x) {
            Some(Type::Var(b)) => {
                expect_exp("Assign", env, sig, e, b)?;
                Ok(Type::Comm)
            }
            Some(other) => Err(mismatch("Assign", &Term::Var(x.clone()), "var(τ)", other)),
            None => Err(Error::Type {
                rule: "Assign",
                message: format!("undeclared variable `{x}`"),
            }),
        },
        Term::Seq(a, b) => {
            expect_comm("Seq", env, sig, a)?;
            expect_comm("Seq", env, sig, b)?;
            Ok(Type::Comm)
        }
        Term::If(c, t, e) => {
            expect_exp("If", env, sig, c, Base::Bool)?;
            expect_comm("If", env, sig, t)?;
            expect_comm("If", env, sig, e)?;
            Ok(Type::Comm)
        }
        Term::While(c, body) => {
            expect_exp("While", env, sig, c, Base::Bool)?;
            expect_comm("While", env, sig, body)?;
            Ok(Type::Comm)
        }
        Term::Tick(args) => {
            if args.len() != sig.outputs.len() {
                return Err(Error::Type {
                    rule: "Tick",
                    message: format!("tick takes {} argument(s), got {}", sig.outputs.len(), args.len()),
                });
            }
            for (i, (a, ty)) in args.iter().zip(&sig.outputs).enumerate() {
                let base = ty.ok_or_else(|| Error::Type {
                    rule: "Tick",
                    message: format!("output component {i} is neither boolean nor integer"),
                })?;
                expect_exp("Tick", env, sig, a, base)?;
            }
            Ok(Type::Comm)
        }
        Term::Get(i) => match sig.inputs.get(*i) {
            Some(Some(b)) => Ok(Type::Exp(*b)),
            Some(None) => Err(Error::Type {
                rule: "Get",
                message: format!("input component {i} is neither boolean nor integer"),
            }),
            None => Err(Error::Type {
                rule: "Get",
                message: format!("get {i} with only {} input component(s)", sig.inputs.len()),
            }),
        },
        Term::Dec(e) => {
            expect_exp("Dec", env, sig, e, Base::Int)?;
            Ok(Type::Exp(Base::Int))
        }
        Term::Neq(a, b) => match typecheck(a, env, sig)? {
            Type::Exp(base) => {
                expect_exp("Neq", env, sig, b, base)?;
                Ok(Type::Exp(Base::Bool))
            }
            other => Err(mismatch("Neq", a, "exp(τ)", other)),
        },
        Term::And(a, b) => {
            expect_exp("And", env, sig, a, Base::Bool)?;
            expect_exp("And", env, sig, b, Base::Bool)?;
            Ok(Type::Exp(Base::Bool))
        }
    }
}
