//! Implicational formulas `v | A -> B` (arrows associate to the right).

use std::fmt;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Impl(Box<Formula>, Box<Formula>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("formula syntax error at offset {offset}: {message}")]
pub struct FormulaError {
    pub offset: usize,
    pub message: String,
}

impl Formula {
    pub fn atom(v: &str) -> Formula {
        Formula::Atom(v.to_string())
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Impl(Box::new(a), Box::new(b))
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Impl(a, b) => 1 + a.size() + b.size(),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(v) => write!(f, "{v}"),
            Formula::Impl(a, b) => match a.as_ref() {
                Formula::Impl(..) => write!(f, "({a}) -> {b}"),
                Formula::Atom(_) => write!(f, "{a} -> {b}"),
            },
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, message: &str) -> FormulaError {
        FormulaError { offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn formula(&mut self) -> Result<Formula, FormulaError> {
        let a = self.atomic()?;
        if self.eat("->") || self.eat("→") {
            Ok(Formula::imp(a, self.formula()?))
        } else {
            Ok(a)
        }
    }

    fn atomic(&mut self) -> Result<Formula, FormulaError> {
        if self.eat("(") {
            let a = self.formula()?;
            if !self.eat(")") {
                return Err(self.err("expected `)`"));
            }
            return Ok(a);
        }
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.find(|c: char| !(c.is_alphanumeric() || c == '_' || c == '\'')).unwrap_or(rest.len());
        if len == 0 || !rest.starts_with(|c: char| c.is_alphabetic()) {
            return Err(self.err("expected a proposition variable or `(`"));
        }
        self.pos += len;
        Ok(Formula::atom(&rest[..len]))
    }
}

/// Parses `A -> B`; arrows associate to the right.
pub fn parse_formula(src: &str) -> Result<Formula, FormulaError> {
    let mut p = Parser { src, pos: 0 };
    let f = p.formula()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.err("unexpected input"));
    }
    Ok(f)
}
