//! Finite result lattices.
//!
//! Config format, one directive per line, `#` starts a comment:
//!
//! ```text
//! elements: bot mid top
//! cover: bot mid
//! cover: mid top
//! bottom: bot
//! top: top
//! ```

use super::TypeError;
use std::path::Path;

pub const LATTICE_ENV: &str = "LAMMU_LATTICE";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
    join: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

impl Default for Lattice {
    fn default() -> Lattice {
        Lattice::two_point()
    }
}

impl Lattice {
    /// `{bot ⊑ top}`.
    pub fn two_point() -> Lattice {
        Lattice::from_covers(&["bot", "top"], &[(0, 1)], 0, 1).expect("two-point lattice is valid")
    }

    /// Builds a lattice from its covering pairs `(lower, upper)`, checking the
    /// partial-order and lattice laws.
    pub fn from_covers(
        names: &[&str],
        covers: &[(usize, usize)],
        bottom: usize,
        top: usize,
    ) -> Result<Lattice, TypeError> {
        let n = names.len();
        let err = |m: String| Err(TypeError::Lattice(m));
        if n == 0 {
            return err("no elements".into());
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return err(format!("duplicate element `{a}`"));
            }
        }
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in covers {
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return err(format!("cycle between `{}` and `{}`", names[i], names[j]));
                }
            }
        }
        if (0..n).any(|i| !leq[bottom][i]) {
            return err(format!("`{}` is not the least element", names[bottom]));
        }
        if (0..n).any(|i| !leq[i][top]) {
            return err(format!("`{}` is not the greatest element", names[top]));
        }
        let mut join = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let ubs: Vec<usize> = (0..n).filter(|&u| leq[i][u] && leq[j][u]).collect();
                let Some(&lub) = ubs.iter().find(|&&u| ubs.iter().all(|&v| leq[u][v])) else {
                    return err(format!("`{}` and `{}` have no least upper bound", names[i], names[j]));
                };
                join[i][j] = lub;
            }
        }
        Ok(Lattice { names: names.iter().map(|s| s.to_string()).collect(), leq, join, bottom, top })
    }

    pub fn parse(text: &str) -> Result<Lattice, TypeError> {
        let mut elements: Vec<String> = Vec::new();
        let mut covers = Vec::new();
        let (mut bottom, mut top) = (None, None);
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = || TypeError::Lattice(format!("line {}: cannot parse `{line}`", lineno + 1));
            let (key, rest) = line.split_once(':').ok_or_else(bad)?;
            let words: Vec<&str> = rest.split_whitespace().collect();
            match (key.trim(), words.as_slice()) {
                ("elements", ws) if !ws.is_empty() => elements.extend(ws.iter().map(|w| w.to_string())),
                ("cover", [a, b]) => covers.push((a.to_string(), b.to_string())),
                ("bottom", [a]) => bottom = Some(a.to_string()),
                ("top", [a]) => top = Some(a.to_string()),
                _ => return Err(bad()),
            }
        }
        let idx = |a: &str| {
            elements.iter().position(|e| e == a).ok_or_else(|| TypeError::UnknownAtom(a.to_string()))
        };
        let covers = covers
            .iter()
            .map(|(a, b)| Ok((idx(a)?, idx(b)?)))
            .collect::<Result<Vec<_>, TypeError>>()?;
        let missing = |w: &str| TypeError::Lattice(format!("missing `{w}:` line"));
        let bottom = idx(&bottom.ok_or_else(|| missing("bottom"))?)?;
        let top = idx(&top.ok_or_else(|| missing("top"))?)?;
        let names: Vec<&str> = elements.iter().map(String::as_str).collect();
        Lattice::from_covers(&names, &covers, bottom, top)
    }

    pub fn load(path: &Path) -> Result<Lattice, TypeError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| TypeError::Lattice(format!("{}: {e}", path.display())))?;
        Lattice::parse(&text)
    }

    /// The lattice named by `LAMMU_LATTICE`, or the two-point default.
    pub fn from_env() -> Result<Lattice, TypeError> {
        match std::env::var_os(LATTICE_ENV) {
            Some(p) => Lattice::load(Path::new(&p)),
            None => Ok(Lattice::two_point()),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    /// Resolves an atom: `None` is the top element.
    pub fn element(&self, atom: Option<&str>) -> Result<usize, TypeError> {
        match atom {
            None => Ok(self.top),
            Some(a) => self
                .names
                .iter()
                .position(|n| n == a)
                .ok_or_else(|| TypeError::UnknownAtom(a.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point() {
        let l = Lattice::two_point();
        assert_eq!(l.len(), 2);
        assert!(l.leq(l.bottom(), l.top()));
        assert!(!l.leq(l.top(), l.bottom()));
        assert_eq!(l.join(0, 1), 1);
        assert_eq!(l.element(None).unwrap(), l.top());
        assert_eq!(l.element(Some("bot")).unwrap(), l.bottom());
    }

    #[test]
    fn diamond_from_config() {
        let l = Lattice::parse(
            "# a diamond\nelements: b x y t\ncover: b x\ncover: b y\ncover: x t\ncover: y t\nbottom: b\ntop: t\n",
        )
        .unwrap();
        let (x, y) = (l.element(Some("x")).unwrap(), l.element(Some("y")).unwrap());
        assert_eq!(l.name(l.join(x, y)), "t");
    }

    #[test]
    fn rejects_non_lattices() {
        // Two maximal elements below no common top.
        let r = Lattice::parse("elements: b x y\ncover: b x\ncover: b y\nbottom: b\ntop: x\n");
        assert!(r.is_err());
        assert!(Lattice::parse("elements: a\nbottom: a\n").is_err());
    }
}
