//! Observable-effect symbols and their lasso sequences.
//!
//! Text form: `*` for "no difference", `(x,y)` for a pair of differing
//! outputs, and ` | ` between the prefix and the cycle of a sequence, e.g.
//! `* | (ff,tt)`.

use std::fmt;

use crate::lasso::Lasso;
use crate::symbol::{Alphabet, Symbol};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EffectSymbol {
    Star,
    Pair(Symbol, Symbol),
}

impl EffectSymbol {
    /// `Star` when the outputs agree.
    pub fn of(x1: &Symbol, x2: &Symbol) -> Self {
        if x1 == x2 {
            EffectSymbol::Star
        } else {
            EffectSymbol::Pair(x1.clone(), x2.clone())
        }
    }

    pub fn is_star(&self) -> bool {
        matches!(self, EffectSymbol::Star)
    }
}

impl fmt::Display for EffectSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EffectSymbol::Star => f.write_str("*"),
            EffectSymbol::Pair(x, y) => write!(f, "({x},{y})"),
        }
    }
}

impl fmt::Debug for EffectSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub type EffectSequence = Lasso<EffectSymbol>;

pub fn star_omega() -> EffectSequence {
    Lasso::constant(EffectSymbol::Star)
}

pub fn format_lasso<T>(lasso: &Lasso<T>, item: impl Fn(&T) -> String) -> String
where
    T: Clone + Eq,
{
    let join = |xs: &[T]| xs.iter().map(&item).collect::<Vec<_>>().join(" ");
    if lasso.prefix().is_empty() {
        format!("| {}", join(lasso.cycle()))
    } else {
        format!("{} | {}", join(lasso.prefix()), join(lasso.cycle()))
    }
}

pub fn format_effects(seq: &EffectSequence) -> String {
    format_lasso(seq, |e| e.to_string())
}

/// Splits `x<sep>y` where both halves are symbols. Without an alphabet the
/// separator must occur exactly once.
pub(crate) fn split_pair(text: &str, sep: char, alphabet: Option<&Alphabet>) -> Result<(Symbol, Symbol)> {
    let bad = || Error::Parse {
        line: 1,
        message: format!("malformed pair `{text}`"),
    };
    let cuts: Vec<usize> = text.match_indices(sep).map(|(i, _)| i).collect();
    let candidates: Vec<(&str, &str)> = cuts
        .iter()
        .map(|&i| (&text[..i], &text[i + 1..]))
        .filter(|(l, r)| match alphabet {
            Some(a) => a.contains(l) && a.contains(r),
            None => !l.is_empty() && !r.is_empty(),
        })
        .collect();
    match candidates.as_slice() {
        [(l, r)] if alphabet.is_some() || cuts.len() == 1 => Ok((Symbol::new(*l)?, Symbol::new(*r)?)),
        _ => Err(bad()),
    }
}

/// Splits a lasso text at its `|` into prefix and cycle tokens.
pub(crate) fn split_lasso_text(text: &str) -> Result<(&str, &str)> {
    let mut parts = text.split('|');
    match (parts.next(), parts.next(), parts.next()) {
        (Some(p), Some(c), None) if !c.trim().is_empty() => Ok((p, c)),
        _ => Err(Error::Parse {
            line: 1,
            message: format!("expected `PREFIX | CYCLE`, got `{text}`"),
        }),
    }
}

fn parse_effect_symbol(token: &str, outputs: Option<&Alphabet>) -> Result<EffectSymbol> {
    if token == "*" {
        return Ok(EffectSymbol::Star);
    }
    let inner = token
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::Parse {
            line: 1,
            message: format!("expected `*` or `(x,y)`, got `{token}`"),
        })?;
    let (x, y) = split_pair(inner, ',', outputs)?;
    if x == y {
        return Err(Error::Parse {
            line: 1,
            message: format!("effect pair `{token}` has equal components"),
        });
    }
    Ok(EffectSymbol::Pair(x, y))
}

/// Parses `SYM ... | SYM ...`. Pass the output alphabet when output symbols
/// may themselves contain commas.
pub fn parse_effects(text: &str, outputs: Option<&Alphabet>) -> Result<EffectSequence> {
    let (prefix, cycle) = split_lasso_text(text)?;
    let parse = |part: &str| {
        part.split_whitespace()
            .map(|t| parse_effect_symbol(t, outputs))
            .collect::<Result<Vec<_>>>()
    };
    Ok(Lasso::new(parse(prefix)?, parse(cycle)?))
}
