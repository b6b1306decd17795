//! Input/output symbols and alphabets.
//!
//! A symbol is a non-empty token. Product symbols, built by
//! [`pair_symbol`], join their factors with `,` and remember where the
//! top-level split happened so that [`split_symbol`] can undo exactly one
//! pairing step.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::{Error, Result};

#[derive(Clone)]
pub struct Symbol {
    text: String,
    // byte offset of the top-level `,` when built by `pair_symbol`
    split: Option<usize>,
}

impl Symbol {
    pub fn new(text: impl Into<String>) -> Result<Self> {
        let text = text.into();
        if !is_valid_token(&text) {
            return Err(Error::InvalidToken(text));
        }
        Ok(Symbol { text, split: None })
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    /// Number of atomic components.
    pub fn arity(&self) -> usize {
        self.components().count()
    }

    pub fn components(&self) -> impl Iterator<Item = &str> {
        self.text.split(',')
    }
}

/// Tokens of the text formats: non-empty, no whitespace, no `#`, no `|`.
pub fn is_valid_token(text: &str) -> bool {
    !text.is_empty() && !text.chars().any(|c| c.is_whitespace() || c == '#' || c == '|')
}

/// Pairs two symbols into the product symbol `a,c`.
pub fn pair_symbol(a: &Symbol, c: &Symbol) -> Symbol {
    Symbol {
        text: format!("{},{}", a.text, c.text),
        split: Some(a.text.len()),
    }
}

/// Inverse of [`pair_symbol`]. Symbols read back from text have lost the
/// pairing structure; they split at the last top-level comma, which undoes
/// left-nested pairing.
pub fn split_symbol(s: &Symbol) -> Result<(Symbol, Symbol)> {
    let at = match s.split {
        Some(at) => at,
        None => s
            .text
            .rfind(',')
            .ok_or_else(|| Error::NotAProductSymbol(s.text.clone()))?,
    };
    let (left, right) = (&s.text[..at], &s.text[at + 1..]);
    if left.is_empty() || right.is_empty() {
        return Err(Error::NotAProductSymbol(s.text.clone()));
    }
    Ok((Symbol::new(left)?, Symbol::new(right)?))
}

impl PartialEq for Symbol {
    fn eq(&self, other: &Self) -> bool {
        self.text == other.text
    }
}

impl Eq for Symbol {}

impl Hash for Symbol {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.text.hash(state)
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.text.cmp(&other.text)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}`", self.text)
    }
}

/// Finite, non-empty, duplicate-free symbol set kept in declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
    index: HashMap<String, usize>,
}

impl Alphabet {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::Parse {
                line: 0,
                message: "alphabet must not be empty".into(),
            });
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if index.insert(s.text.clone(), i).is_some() {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("duplicate symbol `{s}`"),
                });
            }
        }
        Ok(Alphabet { symbols, index })
    }

    pub fn parse_tokens<'a>(tokens: impl IntoIterator<Item = &'a str>) -> Result<Self> {
        let symbols = tokens.into_iter().map(Symbol::new).collect::<Result<Vec<_>>>()?;
        Alphabet::new(symbols)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn get(&self, i: usize) -> &Symbol {
        &self.symbols[i]
    }

    pub fn position(&self, text: &str) -> Option<usize> {
        self.index.get(text).copied()
    }

    pub fn contains(&self, text: &str) -> bool {
        self.index.contains_key(text)
    }

    /// Equality as sets, ignoring declaration order.
    pub fn same_set(&self, other: &Alphabet) -> bool {
        self.len() == other.len() && self.symbols.iter().all(|s| other.contains(&s.text))
    }

    /// All pairs `a,c` in row-major order.
    pub fn product(&self, other: &Alphabet) -> Alphabet {
        let symbols = self
            .symbols
            .iter()
            .flat_map(|a| other.symbols.iter().map(move |c| pair_symbol(a, c)))
            .collect();
        Alphabet::new(symbols).expect("product of duplicate-free alphabets is duplicate-free")
    }
}
