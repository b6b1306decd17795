//! Concrete syntax.
//!
//! ```text
//! seq   ::= cmd (';' seq?)?            trailing ';' only before done, ')' or end
//! cmd   ::= skip | IDENT ':=' expr | tick '(' expr (',' expr)* ')'
//!         | if expr then cmd else cmd | while expr do seq done
//!         | '(' seq ')' | expr
//! expr  ::= neq (('∧' | '&&') neq)*
//! neq   ::= dec (('≠' | '!=') dec)?
//! dec   ::= unary ('-' '1')?
//! unary ::= '!' unary | tt | ff | INT | IDENT | get INT? | '(' expr ')'
//! ```

use super::ast::{Term, Value};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Kw(&'static str),
    Sym(&'static str),
    Eof,
}

const KEYWORDS: [&str; 11] = [
    "skip", "if", "then", "else", "while", "do", "done", "tick", "get", "tt", "ff",
];

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// `first_line` numbers the first line of `source` within its file.
fn lex(source: &str, first_line: usize) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut end = (first_line, 1);
    for (l, text) in source.lines().enumerate() {
        let line = first_line + l;
        let text = text.split('#').next().unwrap_or("");
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut i = 0;
        while i < chars.len() {
            let (_, c) = chars[i];
            let column = i + 1;
            let push = |tokens: &mut Vec<Token>, tok| tokens.push(Token { tok, line, column });
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                let tok = match KEYWORDS.iter().find(|&&k| k == word) {
                    Some(k) => Tok::Kw(k),
                    None => Tok::Ident(word),
                };
                push(&mut tokens, tok);
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                let n = digits
                    .parse()
                    .map_err(|_| syntax(line, column, format!("integer `{digits}` too large")))?;
                push(&mut tokens, Tok::Int(n));
            } else {
                let next = chars.get(i + 1).map(|&(_, c)| c);
                let (sym, len) = match (c, next) {
                    (':', Some('=')) => (":=", 2),
                    ('!', Some('=')) => ("!=", 2),
                    ('&', Some('&')) => ("&&", 2),
                    ('≠', _) => ("!=", 1),
                    ('∧', _) => ("&&", 1),
                    (';', _) => (";", 1),
                    ('(', _) => ("(", 1),
                    (')', _) => (")", 1),
                    (',', _) => (",", 1),
                    ('!', _) => ("!", 1),
                    ('-', _) => ("-", 1),
                    _ => return Err(syntax(line, column, format!("unexpected character `{c}`"))),
                };
                push(&mut tokens, Tok::Sym(sym));
                i += len;
            }
            if !c.is_whitespace() {
                end = (line, i + 1);
            }
        }
    }
    let (line, column) = end;
    tokens.push(Token {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.tokens[self.pos];
        (t.line, t.column)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, column) = self.here();
        Err(syntax(line, column, message))
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Ident(x) => format!("`{x}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Kw(k) | Tok::Sym(k) => format!("`{k}`"),
            Tok::Eof => "end of input".into(),
        }
    }

    fn bump(&mut self) -> Tok {
        let tok = self.tokens[self.pos].tok.clone();
        if tok != Tok::Eof {
            self.pos += 1;
        }
        tok
    }

    fn eat(&mut self, want: &Tok) -> bool {
        if self.peek() == want {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if self.eat(&want) {
            Ok(())
        } else {
            self.error(format!("expected {what}, found {}", self.describe()))
        }
    }

    fn seq(&mut self) -> Result<Term> {
        let first = self.cmd()?;
        if !self.eat(&Tok::Sym(";")) {
            return Ok(first);
        }
        match self.peek() {
            Tok::Kw("done") | Tok::Sym(")") | Tok::Eof => Ok(first),
            Tok::Sym(";") => self.error("empty command between `;`"),
            _ => Ok(Term::seq(first, self.seq()?)),
        }
    }

    fn cmd(&mut self) -> Result<Term> {
        match self.peek().clone() {
            Tok::Kw("skip") => {
                self.bump();
                Ok(Term::Skip)
            }
            Tok::Kw("tick") => {
                self.bump();
                self.expect(Tok::Sym("("), "`(` after `tick`")?;
                let mut args = Vec::new();
                if !self.eat(&Tok::Sym(")")) {
                    loop {
                        args.push(self.expr()?);
                        if self.eat(&Tok::Sym(")")) {
                            break;
                        }
                        self.expect(Tok::Sym(","), "`,` or `)`")?;
                    }
                }
                Ok(Term::Tick(args))
            }
            Tok::Kw("if") => {
                self.bump();
                let cond = self.expr()?;
                self.expect(Tok::Kw("then"), "`then`")?;
                let yes = self.cmd()?;
                self.expect(Tok::Kw("else"), "`else`")?;
                let no = self.cmd()?;
                Ok(Term::If(Box::new(cond), Box::new(yes), Box::new(no)))
            }
            Tok::Kw("while") => {
                self.bump();
                let cond = self.expr()?;
                self.expect(Tok::Kw("do"), "`do`")?;
                let body = self.seq()?;
                self.expect(Tok::Kw("done"), "`done`")?;
                Ok(Term::While(Box::new(cond), Box::new(body)))
            }
            Tok::Sym("(") => {
                self.bump();
                let inner = self.seq()?;
                self.expect(Tok::Sym(")"), "`)`")?;
                Ok(inner)
            }
            Tok::Ident(x) if self.tokens[self.pos + 1].tok == Tok::Sym(":=") => {
                self.bump();
                self.bump();
                Ok(Term::Assign(x, Box::new(self.expr()?)))
            }
            Tok::Kw("tt" | "ff" | "get") | Tok::Int(_) | Tok::Ident(_) | Tok::Sym("!") => self.expr(),
            _ => self.error(format!("expected a command, found {}", self.describe())),
        }
    }

    fn expr(&mut self) -> Result<Term> {
        let mut left = self.neq()?;
        while self.eat(&Tok::Sym("&&")) {
            left = Term::And(Box::new(left), Box::new(self.neq()?));
        }
        Ok(left)
    }

    fn neq(&mut self) -> Result<Term> {
        let left = self.dec()?;
        if self.eat(&Tok::Sym("!=")) {
            return Ok(Term::Neq(Box::new(left), Box::new(self.dec()?)));
        }
        Ok(left)
    }

    fn dec(&mut self) -> Result<Term> {
        let operand = self.unary()?;
        if self.eat(&Tok::Sym("-")) {
            if !self.eat(&Tok::Int(1)) {
                return self.error("only `- 1` is supported");
            }
            return Ok(Term::Dec(Box::new(operand)));
        }
        Ok(operand)
    }

    fn unary(&mut self) -> Result<Term> {
        match self.peek().clone() {
            Tok::Sym("!") => {
                self.bump();
                Ok(Term::Deref(Box::new(self.unary()?)))
            }
            Tok::Kw("tt") => {
                self.bump();
                Ok(Term::Const(Value::Bool(true)))
            }
            Tok::Kw("ff") => {
                self.bump();
                Ok(Term::Const(Value::Bool(false)))
            }
            Tok::Int(n) => {
                self.bump();
                Ok(Term::Const(Value::Int(n)))
            }
            Tok::Ident(x) => {
                self.bump();
                Ok(Term::Var(x))
            }
            Tok::Kw("get") => {
                self.bump();
                match self.peek().clone() {
                    Tok::Int(i) => {
                        self.bump();
                        Ok(Term::Get(i as usize))
                    }
                    _ => Ok(Term::Get(0)),
                }
            }
            Tok::Sym("(") => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::Sym(")"), "`)`")?;
                Ok(inner)
            }
            _ => self.error(format!("expected an expression, found {}", self.describe())),
        }
    }
}

/// Parses a program body.
pub fn parse(source: &str) -> Result<Term> {
    parse_at(source, 1)
}

pub(crate) fn parse_at(source: &str, first_line: usize) -> Result<Term> {
    let mut p = Parser {
        tokens: lex(source, first_line)?,
        pos: 0,
    };
    let term = p.seq()?;
    if *p.peek() != Tok::Eof {
        return p.error(format!("unexpected {}", p.describe()));
    }
    Ok(term)
}
