//! Type grammar: `w`, `psi`, `psi_a`, `&` (left-assoc), `*` (right-assoc)
//! and `->`, binding in that order from tightest to loosest.

use super::{Sort, Type, TypeError};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Omega,
    Psi(Option<String>),
    And,
    Times,
    Arrow,
    LParen,
    RParen,
    End,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, TypeError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    let err = |offset, m: &str| TypeError::Syntax { offset, message: m.to_string() };
    while i < chars.len() {
        let (off, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '&' | '∧' => {
                out.push((Tok::And, off));
                i += 1;
            }
            '*' | '×' => {
                out.push((Tok::Times, off));
                i += 1;
            }
            '→' => {
                out.push((Tok::Arrow, off));
                i += 1;
            }
            '-' if chars.get(i + 1).map(|p| p.1) == Some('>') => {
                out.push((Tok::Arrow, off));
                i += 2;
            }
            '(' => {
                out.push((Tok::LParen, off));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, off));
                i += 1;
            }
            'ω' => {
                out.push((Tok::Omega, off));
                i += 1;
            }
            c if c.is_alphabetic() => {
                let mut word = String::new();
                while let Some(&(_, d)) = chars.get(i) {
                    if d.is_alphanumeric() || d == '_' || d == '\'' {
                        word.push(d);
                        i += 1;
                    } else {
                        break;
                    }
                }
                let tok = match word.as_str() {
                    "w" => Tok::Omega,
                    "psi" | "ψ" => Tok::Psi(None),
                    _ => match word.strip_prefix("psi_").or_else(|| word.strip_prefix("ψ_")) {
                        Some(a) if !a.is_empty() => Tok::Psi(Some(a.to_string())),
                        _ => return Err(err(off, &format!("unknown type constant `{word}`"))),
                    },
                };
                out.push((tok, off));
            }
            other => return Err(err(off, &format!("unexpected character `{other}`"))),
        }
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn fail<T>(&self, expected: &str) -> Result<T, TypeError> {
        Err(TypeError::Syntax {
            offset: self.toks[self.pos].1,
            message: format!("expected {expected}, found {:?}", self.peek()),
        })
    }

    fn arrow(&mut self) -> Result<Type, TypeError> {
        let lhs = self.prod()?;
        if *self.peek() == Tok::Arrow {
            self.pos += 1;
            let rhs = self.arrow()?;
            return Ok(Type::arrow(lhs, rhs));
        }
        Ok(lhs)
    }

    fn prod(&mut self) -> Result<Type, TypeError> {
        let lhs = self.inter()?;
        if *self.peek() == Tok::Times {
            self.pos += 1;
            let rhs = self.prod()?;
            return Ok(Type::prod(lhs, rhs));
        }
        Ok(lhs)
    }

    fn inter(&mut self) -> Result<Type, TypeError> {
        let mut acc = self.atom()?;
        while *self.peek() == Tok::And {
            self.pos += 1;
            acc = Type::inter(acc, self.atom()?);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Type, TypeError> {
        match self.peek().clone() {
            Tok::Omega => {
                self.pos += 1;
                Ok(Type::Omega)
            }
            Tok::Psi(a) => {
                self.pos += 1;
                Ok(Type::Psi(a))
            }
            Tok::LParen => {
                self.pos += 1;
                let t = self.arrow()?;
                if *self.peek() != Tok::RParen {
                    return self.fail("`)`");
                }
                self.pos += 1;
                Ok(t)
            }
            _ => self.fail("a type"),
        }
    }
}

/// Parses a type without checking its sort.
pub fn parse_any(src: &str) -> Result<Type, TypeError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let t = p.arrow()?;
    if *p.peek() != Tok::End {
        return p.fail("end of input");
    }
    Ok(t)
}

/// Parses a type and checks it against `sort`.
pub fn parse_type(src: &str, sort: Sort) -> Result<Type, TypeError> {
    let t = parse_any(src)?;
    t.check_sort(sort)?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrow_from_omega() {
        assert_eq!(parse_type("w -> psi", Sort::D).unwrap(), Type::arrow(Type::Omega, Type::psi()));
    }

    #[test]
    fn malformed_is_a_syntax_error() {
        assert!(matches!(parse_type("(k? ...)", Sort::D), Err(TypeError::Syntax { .. })));
        assert!(matches!(parse_type("(w -> psi", Sort::D), Err(TypeError::Syntax { .. })));
    }

    #[test]
    fn atom_is_a_product_head() {
        assert_eq!(parse_type("psi * w", Sort::C).unwrap(), Type::prod(Type::psi(), Type::Omega));
    }

    #[test]
    fn sort_errors() {
        assert!(matches!(parse_type("w -> w -> psi", Sort::D), Err(TypeError::Sort { .. })));
        assert!(matches!(parse_type("psi * w", Sort::D), Err(TypeError::Sort { .. })));
        assert!(matches!(parse_type("w -> psi", Sort::R), Err(TypeError::Sort { .. })));
    }

    #[test]
    fn precedence() {
        let t = parse_type("psi & psi * w -> psi", Sort::D).unwrap();
        let k = Type::prod(Type::inter(Type::psi(), Type::psi()), Type::Omega);
        assert_eq!(t, Type::arrow(k, Type::psi()));
        let c = parse_type("psi * psi * w", Sort::C).unwrap();
        assert_eq!(c, Type::chain([Type::psi(), Type::psi()], Type::Omega));
        assert_eq!(parse_type("ψ_top ∧ ω", Sort::R).unwrap(), Type::inter(Type::atom("top"), Type::Omega));
    }
}
