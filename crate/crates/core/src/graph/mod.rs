//! Simple undirected graphs on at most [`MAX_ORDER`] vertices.
//!
//! Adjacency is stored as one `u64` bitmask per vertex, so vertex sets are
//! plain `u64` masks as well. Graphs are immutable once built.

mod family;
mod graph6;

pub use family::Family;

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

/// Largest supported order; every adjacency row fits one machine word.
pub const MAX_ORDER: usize = 64;

/// A set of vertices encoded as a bitmask (bit `v` set iff `v` is a member).
pub type VertexSet = u64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds a graph from an edge list. Loops and repeated edges are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::domain(format!(
                    "edge ({u}, {v}) out of range for order {n}"
                )));
            }
            if u == v {
                return Err(Error::domain(format!("loop at vertex {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::domain(format!("repeated edge ({u}, {v})")));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from adjacency masks, checking symmetry and irreflexivity.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self> {
        let n = adj.len();
        check_order(n)?;
        let all = full_mask(n);
        for (v, &row) in adj.iter().enumerate() {
            if row & !all != 0 {
                return Err(Error::domain(format!("vertex {v} has a neighbour out of range")));
            }
            if row >> v & 1 == 1 {
                return Err(Error::domain(format!("loop at vertex {v}")));
            }
            let mut rest = row;
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if adj[u] >> v & 1 == 0 {
                    return Err(Error::domain(format!("asymmetric edge ({v}, {u})")));
                }
            }
        }
        Ok(Graph { n, adj })
    }

    /// Graph whose edges are the set bits of `code` over the pairs
    /// `(0,1), (0,2), (1,2), (0,3), ...` (column-major upper triangle, the
    /// same order graph6 uses).
    pub fn from_edge_code(n: usize, code: u64) -> Result<Self> {
        check_order(n)?;
        let pairs = n * (n - 1) / 2;
        if pairs < 64 && code >> pairs != 0 {
            return Err(Error::domain("edge code has bits beyond the pair count"));
        }
        let mut g = Graph::empty(n)?;
        let mut bit = 0;
        for j in 1..n {
            for i in 0..j {
                if bit < 64 && code >> bit & 1 == 1 {
                    g.insert_edge(i, j);
                }
                bit += 1;
            }
        }
        Ok(g)
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    /// N[v] as a mask.
    #[inline]
    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        self.adj[v] | 1 << v
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for j in 1..self.n {
            for i in 0..j {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Mask with every vertex of the graph set.
    pub fn vertex_mask(&self) -> VertexSet {
        full_mask(self.n)
    }

    /// N[A], the union of closed neighbourhoods of the vertices in `set`.
    pub fn closed_neighborhood_union(&self, set: VertexSet) -> Result<VertexSet> {
        if set & !self.vertex_mask() != 0 {
            let v = (set & !self.vertex_mask()).trailing_zeros();
            return Err(Error::domain(format!(
                "vertex {v} out of range for order {}",
                self.n
            )));
        }
        let mut out = 0;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= self.closed_neighborhood(v);
        }
        Ok(out)
    }

    /// True when every vertex is in `set` or adjacent to a member of it.
    pub fn is_dominating(&self, set: VertexSet) -> bool {
        (0..self.n).all(|v| self.closed_neighborhood(v) & set != 0)
    }

    /// `G[K_m]`: vertex `v` becomes the clique `{v*m, ..., v*m + m - 1}` and
    /// blocks are completely joined along the edges of `G`.
    pub fn substitute_complete(&self, m: usize) -> Result<Graph> {
        if m == 0 {
            return Err(Error::domain("substitution order must be at least 1"));
        }
        let order = self.n.saturating_mul(m);
        if order > MAX_ORDER {
            return Err(Error::Capacity {
                what: "substituted order",
                requested: order,
                limit: MAX_ORDER,
            });
        }
        let block = full_mask(m);
        let mut adj = vec![0u64; order];
        for v in 0..self.n {
            let mut row = 0u64;
            let mut rest = self.adj[v];
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                row |= block << (u * m);
            }
            for a in 0..m {
                let x = v * m + a;
                adj[x] = row | (block << (v * m)) & !(1 << x);
            }
        }
        Ok(Graph { n: order, adj })
    }

    /// `G ⊔ H` with the vertices of `other` shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let order = self.n + other.n;
        if order > MAX_ORDER {
            return Err(Error::Capacity {
                what: "union order",
                requested: order,
                limit: MAX_ORDER,
            });
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|row| row << self.n));
        Ok(Graph { n: order, adj })
    }

    /// Isomorphism-invariant signature from iterated colour refinement,
    /// starting from degrees. Isomorphic graphs always agree; the converse is
    /// only heuristic (regular graphs of equal order and degree collide).
    pub fn refinement_signature(&self) -> Vec<(u64, usize)> {
        let mut colors: Vec<u64> = (0..self.n).map(|v| self.degree(v) as u64).collect();
        for _ in 0..self.n {
            let next: Vec<u64> = (0..self.n)
                .map(|v| {
                    let mut nb: Vec<u64> = bits(self.adj[v]).map(|u| colors[u]).collect();
                    nb.sort_unstable();
                    // SipHash with fixed keys, so colours are stable across runs
                    let mut h = DefaultHasher::new();
                    (colors[v], nb).hash(&mut h);
                    h.finish()
                })
                .collect();
            let stable = count_distinct(&next) == count_distinct(&colors);
            colors = next;
            if stable {
                break;
            }
        }
        let mut hist: Vec<(u64, usize)> = Vec::new();
        let mut sorted = colors;
        sorted.sort_unstable();
        for c in sorted {
            match hist.last_mut() {
                Some((last, count)) if *last == c => *count += 1,
                _ => hist.push((c, 1)),
            }
        }
        hist
    }
}

fn count_distinct(colors: &[u64]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("graphs must have at least one vertex"));
    }
    if n > MAX_ORDER {
        return Err(Error::Capacity {
            what: "graph order",
            requested: n,
            limit: MAX_ORDER,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn closed_neighborhood_union_examples() {
        let star = Family::Star(3).build().unwrap();
        assert_eq!(star.closed_neighborhood_union(0b1).unwrap(), 0b1111);
        assert_eq!(c4().closed_neighborhood_union(0).unwrap(), 0);
        assert_eq!(c4().closed_neighborhood_union(0b1).unwrap(), 0b1011);
        let g = c4();
        assert_eq!(g.closed_neighborhood_union(g.vertex_mask()).unwrap(), g.vertex_mask());
        assert!(matches!(g.closed_neighborhood_union(1 << 4), Err(Error::Domain(_))));
    }

    #[test]
    fn substitute_complete_examples() {
        let k2 = Family::Complete(2).build().unwrap();
        assert_eq!(k2.substitute_complete(2).unwrap(), Family::Complete(4).build().unwrap());
        assert_eq!(k2.substitute_complete(3).unwrap(), Family::Complete(6).build().unwrap());
        assert_eq!(c4().substitute_complete(1).unwrap(), c4());
        assert!(matches!(
            Graph::empty(33).unwrap().substitute_complete(2),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn substitute_edge_count_formula() {
        let g = c4();
        for m in 1..=5 {
            let h = g.substitute_complete(m).unwrap();
            assert_eq!(h.order(), 4 * m);
            assert_eq!(h.edge_count(), m * g.edge_count() * m + 4 * m * (m - 1) / 2);
        }
    }

    #[test]
    fn disjoint_union_examples() {
        let k1 = Graph::empty(1).unwrap();
        assert_eq!(k1.disjoint_union(&k1).unwrap(), Graph::empty(2).unwrap());
        let k2 = Family::Complete(2).build().unwrap();
        let matching = k2.disjoint_union(&k2).unwrap();
        assert_eq!(matching.edges(), vec![(0, 1), (2, 3)]);
        let u = k1.disjoint_union(&c4()).unwrap();
        assert_eq!((u.order(), u.edge_count()), (5, 4));
        assert!(Graph::empty(40).unwrap().disjoint_union(&Graph::empty(30).unwrap()).is_err());
    }

    #[test]
    fn rejects_bad_construction() {
        assert!(Graph::empty(0).is_err());
        assert!(Graph::empty(65).is_err());
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_adjacency(vec![0b10, 0b00]).is_err());
    }

    #[test]
    fn edge_code_matches_graph6_order() {
        // bit 0 = (0,1), bit 1 = (0,2), bit 2 = (1,2)
        let g = Graph::from_edge_code(3, 0b101).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn refinement_signature_is_relabel_invariant() {
        let p = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let q = Graph::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(p.refinement_signature(), q.refinement_signature());
        assert_ne!(p.refinement_signature(), Family::Star(3).build().unwrap().refinement_signature());
    }
}
