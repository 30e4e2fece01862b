//! Printing in the ASCII grammar accepted by the parser.

use super::{Command, Expr, Stack, Term};
use std::fmt;

#[derive(Clone, Copy, PartialEq)]
enum Pos {
    Top,
    Fun,
    Arg,
}

fn write_term(t: &Term, pos: Pos, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t {
        Term::Var(x) => write!(f, "{x}"),
        Term::Lam(x, b) => {
            if pos != Pos::Top {
                write!(f, "(")?;
            }
            write!(f, "\\{x}. ")?;
            write_term(b, Pos::Top, f)?;
            if pos != Pos::Top {
                write!(f, ")")?;
            }
            Ok(())
        }
        Term::Mu(a, c) => {
            if pos != Pos::Top {
                write!(f, "(")?;
            }
            write!(f, "mu {a}.")?;
            write_cmd(c, f)?;
            if pos != Pos::Top {
                write!(f, ")")?;
            }
            Ok(())
        }
        Term::App(g, a) => {
            if pos == Pos::Arg {
                write!(f, "(")?;
            }
            write_term(g, Pos::Fun, f)?;
            write!(f, " ")?;
            write_term(a, Pos::Arg, f)?;
            if pos == Pos::Arg {
                write!(f, ")")?;
            }
            Ok(())
        }
    }
}

fn write_cmd(c: &Command, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "[{}] ", c.name)?;
    write_term(&c.body, Pos::Top, f)
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(self, Pos::Top, f)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_cmd(self, f)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Term(t) => t.fmt(f),
            Expr::Cmd(c) => c.fmt(f),
        }
    }
}

impl fmt::Display for Stack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.0 {
            write_term(t, Pos::Arg, f)?;
            write!(f, " :: ")?;
        }
        write!(f, "eps")
    }
}

#[cfg(test)]
mod tests {
    use crate::syntax::{parse_expr, parse_stack};

    #[test]
    fn round_trips() {
        for s in [
            "\\x. x",
            "x y z",
            "x (y z)",
            "(\\x. x) y",
            "x (\\y. y) z",
            "mu a.[b] x",
            "(mu a.[a] x) x",
            "[a] mu b.[a] x",
            "\\x. mu a.[a] x (\\y. mu b.[a] y)",
        ] {
            let e = parse_expr(s).unwrap();
            assert_eq!(e.to_string(), s);
        }
        let st = parse_stack("y :: (x z) :: eps").unwrap();
        assert_eq!(st.to_string(), "y :: (x z) :: eps");
    }
}
