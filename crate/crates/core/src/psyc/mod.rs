//! A small synchronous imperative language and its compilation to
//! synchronous systems.
//!
//! Program files start with a header declaring the alphabets and the
//! variables, followed by the body:
//!
//! ```text
//! inputs tt ff
//! outputs tt ff
//! var x : bool
//! var y : int[0..4]
//! x := ff; while tt do tick(!x); x := get done
//! ```
//!
//! Variables start at their default value (`0`, `ff`). Integer variables
//! need a declared range before a program can be built.

pub mod ast;
pub mod build;
pub mod eval;
pub mod parse;
pub mod types;

pub use ast::{Term, Value};
pub use build::{build_lts, BuildOptions};
pub use eval::{matching_rules, Config, EvalTree, Machine, Rule, Store};
pub use parse::parse;
pub use types::{typecheck, Base, Signature, Type, TypeEnv};

use crate::{Alphabet, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarDecl {
    pub name: String,
    pub base: Base,
    /// Inclusive bounds of an integer variable.
    pub range: Option<(i64, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    pub inputs: Alphabet,
    pub outputs: Alphabet,
    pub vars: Vec<VarDecl>,
    pub body: Term,
}

fn header_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_var(line: usize, rest: &str) -> Result<VarDecl> {
    let compact: String = rest.chars().filter(|c| !c.is_whitespace()).collect();
    let (name, ty) = compact
        .split_once(':')
        .ok_or_else(|| header_error(line, "expected `var NAME : TYPE`"))?;
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(header_error(line, format!("invalid variable name `{name}`")));
    }
    let (base, range) = match ty {
        "bool" => (Base::Bool, None),
        "int" => (Base::Int, None),
        _ => {
            let bounds = ty
                .strip_prefix("int[")
                .and_then(|t| t.strip_suffix(']'))
                .and_then(|t| t.split_once(".."))
                .ok_or_else(|| header_error(line, format!("unknown type `{ty}`")))?;
            let parse = |s: &str| {
                s.parse::<i64>()
                    .map_err(|_| header_error(line, format!("invalid bound `{s}`")))
            };
            let (lo, hi) = (parse(bounds.0)?, parse(bounds.1)?);
            if lo > hi {
                return Err(header_error(line, format!("empty range {lo}..{hi}")));
            }
            (Base::Int, Some((lo, hi)))
        }
    };
    Ok(VarDecl {
        name: name.to_string(),
        base,
        range,
    })
}

/// Parses a program file: header lines, then the body.
pub fn parse_program(text: &str) -> Result<Program> {
    let mut inputs = None;
    let mut outputs = None;
    let mut vars = Vec::new();
    let mut body_start = text.lines().count();
    let mut offset = text.len();
    let mut consumed = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut words = content.split_whitespace();
        match words.next() {
            None => {}
            Some("inputs") => {
                inputs = Some(Alphabet::parse_tokens(words).map_err(|e| header_error(line, e.to_string()))?)
            }
            Some("outputs") => {
                outputs = Some(Alphabet::parse_tokens(words).map_err(|e| header_error(line, e.to_string()))?)
            }
            Some("var") => {
                let rest = content.trim_start().strip_prefix("var").unwrap_or("");
                let decl = parse_var(line, rest)?;
                if vars.iter().any(|v: &VarDecl| v.name == decl.name) {
                    return Err(header_error(line, format!("variable `{}` declared twice", decl.name)));
                }
                vars.push(decl);
            }
            Some(_) => {
                body_start = i;
                offset = consumed;
                break;
            }
        }
        consumed += raw.len() + 1;
    }
    let inputs = inputs.ok_or_else(|| header_error(1, "missing `inputs`"))?;
    let outputs = outputs.ok_or_else(|| header_error(1, "missing `outputs`"))?;
    let body = parse::parse_at(&text[offset.min(text.len())..], body_start + 1)?;
    Ok(Program {
        inputs,
        outputs,
        vars,
        body,
    })
}

impl Program {
    pub fn env(&self) -> TypeEnv {
        let mut env = TypeEnv::new();
        for v in &self.vars {
            env.bind(&v.name, Type::Var(v.base)).expect("names are unique");
        }
        env
    }

    pub fn signature(&self) -> Result<Signature> {
        Signature::from_alphabets(&self.inputs, &self.outputs)
    }

    /// A whole program must be a command.
    pub fn typecheck(&self) -> Result<()> {
        match typecheck(&self.body, &self.env(), &self.signature()?)? {
            Type::Comm => Ok(()),
            other => Err(Error::Type {
                rule: "Program",
                message: format!("program has type {other}, expected comm"),
            }),
        }
    }

    pub fn machine(&self) -> Result<Machine> {
        let mut ranges = std::collections::BTreeMap::new();
        for v in &self.vars {
            match (v.base, v.range) {
                (Base::Int, Some(r)) => {
                    ranges.insert(v.name.clone(), r);
                }
                (Base::Int, None) => return Err(Error::NonFiniteIntRange(v.name.clone())),
                (Base::Bool, _) => {}
            }
        }
        Ok(Machine {
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
            ranges,
        })
    }

    /// Every variable at its default value.
    pub fn initial_store(&self) -> Result<Store> {
        self.vars
            .iter()
            .map(|v| {
                let value = v.base.default_value();
                if let (Value::Int(n), Some((lo, hi))) = (value, v.range) {
                    if n < lo || n > hi {
                        return Err(Error::OutOfRange {
                            var: v.name.clone(),
                            value: n,
                        });
                    }
                }
                Ok((v.name.clone(), value))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_body() {
        let p = parse_program(
            "# counter\ninputs tt ff\noutputs tt ff\nvar x : bool\nvar y:int[0..4]\n\nx := ff;\ny := 4;\ntick(!x)\n",
        )
        .unwrap();
        assert_eq!(p.vars.len(), 2);
        assert_eq!(p.vars[1].range, Some((0, 4)));
        assert!(p.typecheck().is_ok());
    }

    #[test]
    fn body_errors_report_file_lines() {
        match parse_program("inputs tt ff\noutputs tt ff\n\nskip;;\n") {
            Err(Error::Syntax { line: 4, column: 6, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn header_errors() {
        assert!(parse_program("outputs a\nskip\n").is_err());
        assert!(parse_program("inputs a\noutputs a\nvar x : real\nskip\n").is_err());
        assert!(parse_program("inputs a\noutputs a\nvar x : int[3..1]\nskip\n").is_err());
        assert!(parse_program("inputs a\noutputs a\nvar x : bool\nvar x : bool\nskip\n").is_err());
    }
}
