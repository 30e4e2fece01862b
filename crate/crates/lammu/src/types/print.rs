//! Minimal-parenthesis printing that parses back to the same tree.

use super::Type;
use std::fmt;

// Binding levels: arrow 0, product 1, intersection 2, atoms 3.
fn level(t: &Type) -> u8 {
    match t {
        Type::Arrow(..) => 0,
        Type::Prod(..) => 1,
        Type::Inter(..) => 2,
        Type::Omega | Type::Psi(_) => 3,
    }
}

fn write_at(t: &Type, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if level(t) < min {
        write!(f, "(")?;
        write_at(t, 0, f)?;
        return write!(f, ")");
    }
    match t {
        Type::Omega => write!(f, "w"),
        Type::Psi(None) => write!(f, "psi"),
        Type::Psi(Some(a)) => write!(f, "psi_{a}"),
        Type::Inter(a, b) => {
            write_at(a, 2, f)?;
            write!(f, " & ")?;
            write_at(b, 3, f)
        }
        Type::Prod(d, k) => {
            write_at(d, 2, f)?;
            write!(f, " * ")?;
            write_at(k, 1, f)
        }
        Type::Arrow(k, r) => {
            write_at(k, 1, f)?;
            write!(f, " -> ")?;
            write_at(r, 0, f)
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(self, 0, f)
    }
}

#[cfg(test)]
mod tests {
    use crate::types::parse::parse_any;

    #[test]
    fn round_trips() {
        for s in [
            "w",
            "psi_bot",
            "w -> psi",
            "psi * w -> psi",
            "(psi * w -> psi) * psi * w -> psi",
            "(w -> psi) & (psi * w -> psi)",
            "psi & (psi & psi)",
            "psi & psi & psi",
            "(psi * w) & (psi * psi * w)",
            "(psi * w) * w",
        ] {
            assert_eq!(parse_any(s).unwrap().to_string(), s);
        }
    }
}
