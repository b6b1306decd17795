//! The line-oriented `.sls` system format.
//!
//! ```text
//! system NAME
//! inputs SYM ...
//! outputs SYM ...
//! init STATE
//! state STATE OUTSYM
//! trans STATE INSYM STATE
//! ```
//!
//! `#` starts a comment. Parsing is strict; [`write`] emits the canonical
//! layout above, preceded by the file's leading comment lines, so canonical
//! files round-trip byte for byte.

use std::fmt::Write as _;

use crate::symbol::Alphabet;
use crate::system::{SynchronousSystem, SystemBuilder};
use crate::{Error, Result};

fn at(line: usize, e: Error) -> Error {
    match e {
        Error::Parse { message, .. } => Error::Parse { line, message },
        other => Error::Parse {
            line,
            message: other.to_string(),
        },
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse(text: &str) -> Result<SynchronousSystem> {
    let mut name = None;
    let mut inputs = None;
    let mut outputs = None;
    let mut init = None;
    let mut states = Vec::new();
    let mut transitions = Vec::new();
    let mut comments = Vec::new();
    let mut started = false;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(directive) = tokens.next() else {
            if !started && raw.trim_start().starts_with('#') {
                comments.push(raw.trim_end().to_string());
            }
            continue;
        };
        let args: Vec<&str> = tokens.collect();
        started = true;
        match directive {
            "system" => {
                if name.is_some() {
                    return Err(parse_error(line, "duplicate `system`"));
                }
                match args.as_slice() {
                    [n] => name = Some(n.to_string()),
                    _ => return Err(parse_error(line, "expected `system NAME`")),
                }
            }
            "inputs" | "outputs" => {
                let slot = if directive == "inputs" {
                    &mut inputs
                } else {
                    &mut outputs
                };
                if slot.is_some() {
                    return Err(parse_error(line, format!("duplicate `{directive}`")));
                }
                *slot = Some(Alphabet::parse_tokens(args.iter().copied()).map_err(|e| at(line, e))?);
            }
            "init" => {
                if init.is_some() {
                    return Err(parse_error(line, "duplicate `init`"));
                }
                match args.as_slice() {
                    [q] => init = Some((line, q.to_string())),
                    _ => return Err(parse_error(line, "expected `init STATE`")),
                }
            }
            "state" => match args.as_slice() {
                [q, o] => states.push((line, q.to_string(), o.to_string())),
                _ => return Err(parse_error(line, "expected `state STATE OUTSYM`")),
            },
            "trans" => match args.as_slice() {
                [p, a, q] => transitions.push((line, p.to_string(), a.to_string(), q.to_string())),
                _ => return Err(parse_error(line, "expected `trans STATE INSYM STATE`")),
            },
            other => return Err(parse_error(line, format!("unknown directive `{other}`"))),
        }
    }

    let name = name.ok_or_else(|| parse_error(0, "missing `system`"))?;
    let inputs = inputs.ok_or_else(|| parse_error(0, "missing `inputs`"))?;
    let outputs = outputs.ok_or_else(|| parse_error(0, "missing `outputs`"))?;
    let (init_line, init) = init.ok_or_else(|| parse_error(0, "missing `init`"))?;

    let mut builder = SystemBuilder::new(name, inputs, outputs);
    for (line, q, o) in &states {
        builder.state(q, o).map_err(|e| at(*line, e))?;
    }
    for (line, p, a, q) in &transitions {
        builder.transition(p, a, q).map_err(|e| at(*line, e))?;
    }
    builder.initial(&init).map_err(|e| at(init_line, e))?;
    Ok(builder.build()?.with_comments(comments))
}

pub fn write(sys: &SynchronousSystem) -> String {
    let mut s = String::new();
    let join = |a: &Alphabet| a.symbols().iter().map(|x| x.as_str()).collect::<Vec<_>>().join(" ");
    for c in sys.comments() {
        writeln!(s, "{c}").unwrap();
    }
    writeln!(s, "system {}", sys.name()).unwrap();
    writeln!(s, "inputs {}", join(sys.inputs())).unwrap();
    writeln!(s, "outputs {}", join(sys.outputs())).unwrap();
    writeln!(s, "init {}", sys.state_name(sys.initial())).unwrap();
    for q in sys.states() {
        writeln!(s, "state {} {}", sys.state_name(q), sys.out_symbol(q)).unwrap();
    }
    for &(p, a, q) in sys.transitions() {
        writeln!(
            s,
            "trans {} {} {}",
            sys.state_name(p),
            sys.input_symbol(a),
            sys.state_name(q)
        )
        .unwrap();
    }
    s
}
