use std::fmt;
use std::str::FromStr;

use super::Graph;
use crate::error::{Error, Result};

/// Named graph families.
///
/// Vertex numbering is fixed: complete bipartite `K_{k,l}` puts the `k`-side
/// on `0..k` and the `l`-side on `k..k+l`, so the centre of a star is vertex 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Complete(usize),
    CompleteBipartite(usize, usize),
    /// `K_{1,k}`.
    Star(usize),
    /// Edgeless graph.
    Empty(usize),
    /// `K_{2,l}`.
    K2Ell(usize),
    /// `K_{k,k}`.
    Kkk(usize),
}

impl Family {
    /// Rejects zero-size parameters; does not build the graph.
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Family::Complete(n) | Family::Star(n) | Family::Empty(n) => n >= 1,
            Family::K2Ell(l) => l >= 1,
            Family::Kkk(k) => k >= 1,
            Family::CompleteBipartite(k, l) => k >= 1 && l >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!("family {self} needs parameters >= 1")))
        }
    }

    /// Number of vertices, without building the graph.
    pub fn order(&self) -> usize {
        match *self {
            Family::Complete(n) | Family::Empty(n) => n,
            Family::Star(k) => k + 1,
            Family::K2Ell(l) => l + 2,
            Family::Kkk(k) => 2 * k,
            Family::CompleteBipartite(k, l) => k + l,
        }
    }

    pub fn build(&self) -> Result<Graph> {
        self.validate()?;
        match *self {
            Family::Complete(n) => {
                let mut g = Graph::empty(n)?;
                for j in 1..n {
                    for i in 0..j {
                        g.insert_edge(i, j);
                    }
                }
                Ok(g)
            }
            Family::Empty(n) => Graph::empty(n),
            Family::Star(k) => complete_bipartite(1, k),
            Family::K2Ell(l) => complete_bipartite(2, l),
            Family::Kkk(k) => complete_bipartite(k, k),
            Family::CompleteBipartite(k, l) => complete_bipartite(k, l),
        }
    }
}

fn complete_bipartite(k: usize, l: usize) -> Result<Graph> {
    let mut g = Graph::empty(k + l)?;
    for i in 0..k {
        for j in k..k + l {
            g.insert_edge(i, j);
        }
    }
    Ok(g)
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::CompleteBipartite(k, l) => write!(f, "kbip:{k},{l}"),
            Family::Star(k) => write!(f, "star:{k}"),
            Family::Empty(n) => write!(f, "empty:{n}"),
            Family::K2Ell(l) => write!(f, "k2l:{l}"),
            Family::Kkk(k) => write!(f, "kkk:{k}"),
        }
    }
}

/// Parses the family mini-language: `star:k`, `kbip:k,l`, `complete:n`,
/// `kkk:k`, `k2l:l`, `empty:n`.
impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = s
            .split_once(':')
            .ok_or_else(|| Error::parse(0, format!("expected NAME:ARGS, got {s:?}")))?;
        let offset = name.len() + 1;
        let mut nums = Vec::new();
        let mut pos = offset;
        for part in args.split(',') {
            let v: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::parse(pos, format!("bad integer {part:?}")))?;
            nums.push(v);
            pos += part.len() + 1;
        }
        let fam = match (name.trim(), nums.as_slice()) {
            ("star", [k]) => Family::Star(*k),
            ("complete", [n]) => Family::Complete(*n),
            ("empty", [n]) => Family::Empty(*n),
            ("kkk", [k]) => Family::Kkk(*k),
            ("k2l", [l]) => Family::K2Ell(*l),
            ("kbip", [k, l]) => Family::CompleteBipartite(*k, *l),
            _ => return Err(Error::parse(0, format!("unknown family {s:?}"))),
        };
        fam.validate()?;
        Ok(fam)
    }
}
