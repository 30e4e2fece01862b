//! Recursive-descent parser for the ASCII term grammar.
//!
//! ```text
//! term  ::= '\' ident+ '.' term | 'mu' ident '.' cmd | app
//! app   ::= atom+ [ '\' ... | 'mu' ... ]      (left-associative)
//! atom  ::= ident | '(' term ')'
//! cmd   ::= '[' ident ']' term | '(' cmd ')'
//! stack ::= 'eps' | term ('::' term)* ['::' 'eps']
//! ```
//! `λ`, `μ` and `ε` are accepted for `\`, `mu` and `eps`.

use super::{Command, Expr, Stack, Term};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Lambda,
    Mu,
    Dot,
    LBrack,
    RBrack,
    LParen,
    RParen,
    Cons,
    Eps,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(x) => format!("identifier `{x}`"),
        Tok::Lambda => "`\\`".into(),
        Tok::Mu => "`mu`".into(),
        Tok::Dot => "`.`".into(),
        Tok::LBrack => "`[`".into(),
        Tok::RBrack => "`]`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Cons => "`::`".into(),
        Tok::Eps => "`eps`".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut toks = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        match c {
            c if c.is_whitespace() => {
                it.next();
            }
            '\\' | 'λ' => {
                it.next();
                toks.push((Tok::Lambda, i));
            }
            'μ' => {
                it.next();
                toks.push((Tok::Mu, i));
            }
            'ε' => {
                it.next();
                toks.push((Tok::Eps, i));
            }
            '.' => {
                it.next();
                toks.push((Tok::Dot, i));
            }
            '[' => {
                it.next();
                toks.push((Tok::LBrack, i));
            }
            ']' => {
                it.next();
                toks.push((Tok::RBrack, i));
            }
            '(' => {
                it.next();
                toks.push((Tok::LParen, i));
            }
            ')' => {
                it.next();
                toks.push((Tok::RParen, i));
            }
            ':' => {
                it.next();
                match it.peek() {
                    Some(&(_, ':')) => {
                        it.next();
                        toks.push((Tok::Cons, i));
                    }
                    _ => return Err(ParseError { offset: i, message: "expected `::`".into() }),
                }
            }
            c if c.is_ascii_lowercase() => {
                let mut s = String::new();
                while let Some(&(_, d)) = it.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' || d == '\'' {
                        s.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                let tok = match s.as_str() {
                    "mu" => Tok::Mu,
                    "eps" => Tok::Eps,
                    _ => Tok::Ident(s),
                };
                toks.push((tok, i));
            }
            other => {
                return Err(ParseError { offset: i, message: format!("unexpected character `{other}`") })
            }
        }
    }
    toks.push((Tok::End, src.len()));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.offset(),
            message: format!("expected {expected}, found {}", describe(self.peek())),
        })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.err(what)
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(x) => {
                self.bump();
                Ok(x)
            }
            _ => self.err("an identifier"),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Tok::Lambda | Tok::Mu => self.binder(),
            _ => self.app(),
        }
    }

    fn binder(&mut self) -> Result<Term, ParseError> {
        match self.bump() {
            Tok::Lambda => {
                let mut xs = vec![self.ident()?];
                while let Tok::Ident(_) = self.peek() {
                    xs.push(self.ident()?);
                }
                self.expect(Tok::Dot, "`.`")?;
                let body = self.term()?;
                Ok(xs.iter().rev().fold(body, |b, x| Term::lam(x, b)))
            }
            Tok::Mu => {
                let a = self.ident()?;
                self.expect(Tok::Dot, "`.`")?;
                let c = self.command()?;
                Ok(Term::mu(&a, c))
            }
            _ => unreachable!("binder called on a non-binder token"),
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::LParen)
    }

    fn app(&mut self) -> Result<Term, ParseError> {
        let mut head = self.atom()?;
        loop {
            if self.starts_atom() {
                let a = self.atom()?;
                head = Term::app(head, a);
            } else if matches!(self.peek(), Tok::Lambda | Tok::Mu) {
                let a = self.binder()?;
                return Ok(Term::app(head, a));
            } else {
                return Ok(head);
            }
        }
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Ident(x) => {
                self.bump();
                Ok(Term::Var(x))
            }
            Tok::LParen => {
                self.bump();
                if *self.peek() == Tok::LBrack {
                    return Err(ParseError {
                        offset: self.offset(),
                        message: "expected a term, found a command".into(),
                    });
                }
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            _ => self.err("a term"),
        }
    }

    fn command(&mut self) -> Result<Command, ParseError> {
        match self.peek() {
            Tok::LBrack => {
                self.bump();
                let a = self.ident()?;
                self.expect(Tok::RBrack, "`]`")?;
                let body = self.term()?;
                Ok(Command { name: a, body })
            }
            Tok::LParen => {
                self.bump();
                let c = self.command()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(c)
            }
            _ => self.err("a command `[a] M`"),
        }
    }

    fn end(&mut self) -> Result<(), ParseError> {
        self.expect(Tok::End, "end of input")
    }
}

fn parser(src: &str) -> Result<Parser, ParseError> {
    Ok(Parser { toks: lex(src)?, pos: 0 })
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = parser(src)?;
    if *p.peek() == Tok::LBrack {
        return Err(ParseError { offset: p.offset(), message: "expected a term, found a command".into() });
    }
    let t = p.term()?;
    p.end()?;
    Ok(t)
}

pub fn parse_command(src: &str) -> Result<Command, ParseError> {
    let mut p = parser(src)?;
    let c = p.command()?;
    p.end()?;
    Ok(c)
}

/// Parses a term or, when the input starts with `[`, a command.
pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    if src.trim_start().starts_with('[') {
        parse_command(src).map(Expr::Cmd)
    } else {
        parse_term(src).map(Expr::Term)
    }
}

pub fn parse_stack(src: &str) -> Result<Stack, ParseError> {
    let mut p = parser(src)?;
    let mut items = Vec::new();
    if *p.peek() == Tok::Eps {
        p.bump();
        p.end()?;
        return Ok(Stack(items));
    }
    loop {
        items.push(p.term()?);
        match p.peek() {
            Tok::Cons => {
                p.bump();
                if *p.peek() == Tok::Eps {
                    p.bump();
                    break;
                }
            }
            _ => break,
        }
    }
    p.end()?;
    Ok(Stack(items))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity() {
        assert_eq!(parse_term("\\x.x").unwrap(), Term::lam("x", Term::var("x")));
    }

    #[test]
    fn mu_self_application() {
        let expected = Term::mu("a", Command::new("a", Term::app(Term::var("x"), Term::var("x"))));
        assert_eq!(parse_term("mu a.[a] x x").unwrap(), expected);
        assert_eq!(parse_term("μa.[a] x x").unwrap(), expected);
    }

    #[test]
    fn unbalanced_paren_reports_offset() {
        let e = parse_term("(\\x.x").unwrap_err();
        assert_eq!(e.offset, 5);
    }

    #[test]
    fn application_is_left_associative_and_binders_extend_right() {
        let t = parse_term("x y z").unwrap();
        assert_eq!(t, Term::app(Term::app(Term::var("x"), Term::var("y")), Term::var("z")));
        let t = parse_term("x \\y. y z").unwrap();
        assert_eq!(
            t,
            Term::app(Term::var("x"), Term::lam("y", Term::app(Term::var("y"), Term::var("z"))))
        );
        let t = parse_term("\\x y. x").unwrap();
        assert_eq!(t, Term::lam("x", Term::lam("y", Term::var("x"))));
    }

    #[test]
    fn wrong_kind() {
        assert!(parse_term("[a] x").is_err());
        assert!(parse_command("x").is_err());
        assert!(parse_expr("[a] x").unwrap().as_cmd().is_some());
    }

    #[test]
    fn stacks() {
        assert_eq!(parse_stack("eps").unwrap().0.len(), 0);
        assert_eq!(parse_stack("y :: z :: eps").unwrap().0.len(), 2);
        assert_eq!(parse_stack("y::z").unwrap().0.len(), 2);
        assert_eq!(parse_stack("(x y) :: ε").unwrap().0.len(), 1);
    }
}
