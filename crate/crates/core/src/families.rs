//! Constructors for the named graphs used throughout: complete bipartite
//! graphs, paths, cycles, complete (optionally looped) graphs, the
//! independent-set target, and the star-of-cliques graph `G1`.
//!
//! Paths are indexed by vertex count: `path(k)` has `k` vertices.

use crate::error::{Error, Result};
use crate::graph::{Bits, Graph};

/// `K_{a,b}` with classes `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    if a == 0 || b == 0 {
        return Err(Error::Precondition("complete bipartite classes must be nonempty".into()));
    }
    let mut g = Graph::empty(a + b)?;
    for i in 0..a {
        for j in a..a + b {
            g.insert_edge(i, j)?;
        }
    }
    Ok(g)
}

/// Path on `k` vertices.
pub fn path(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::Precondition("path needs at least one vertex".into()));
    }
    let mut g = Graph::empty(k)?;
    for i in 1..k {
        g.insert_edge(i - 1, i)?;
    }
    Ok(g)
}

/// Cycle on `k >= 3` vertices.
pub fn cycle(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(Error::Precondition(format!("cycle needs at least 3 vertices, got {k}")));
    }
    let mut g = path(k)?;
    g.insert_edge(0, k - 1)?;
    Ok(g)
}

/// `K_q`, or the fully looped complete graph when `looped` is set. The
/// looped variant is returned as a target graph.
pub fn complete(q: usize, looped: bool) -> Result<Graph> {
    let mut g = Graph::new(q, looped)?;
    for u in 0..q {
        let start = if looped { u } else { u + 1 };
        for v in start..q {
            g.insert_edge(u, v)?;
        }
    }
    Ok(g)
}

/// One edge `0-1` with a loop on `0`.
pub fn h_ind() -> Graph {
    Graph::from_edges(2, &[(0, 0), (0, 1)], true).expect("static construction")
}

/// `n / (delta + 1)` disjoint copies of `K_{delta+1}` with vertex `0` of copy
/// `0` joined to vertex `0` of every other copy. Copy `c` occupies vertices
/// `c(delta+1) .. (c+1)(delta+1)`.
pub fn g1(n: usize, delta: usize) -> Result<Graph> {
    if delta < 2 {
        return Err(Error::Precondition(format!("G1 needs delta >= 2, got {delta}")));
    }
    let block = delta + 1;
    if n == 0 || !n.is_multiple_of(block) {
        return Err(Error::Precondition(format!("G1 needs (delta+1) | n, got n={n}, delta={delta}")));
    }
    let mut g = Graph::empty(n)?;
    for c in 0..n / block {
        let base = c * block;
        for u in 0..block {
            for v in u + 1..block {
                g.insert_edge(base + u, base + v)?;
            }
        }
        if c > 0 {
            g.insert_edge(0, base)?;
        }
    }
    Ok(g)
}

pub fn disjoint_union(a: &Graph, b: &Graph) -> Result<Graph> {
    let shift = a.vertex_count();
    let mut rows: Vec<u64> = a.rows().to_vec();
    if shift + b.vertex_count() > crate::graph::MAX_VERTICES {
        return Err(Error::TooManyVertices(shift + b.vertex_count()));
    }
    for &r in b.rows() {
        rows.push(Bits(r).fold(0u64, |acc, w| acc | 1 << (w + shift)));
    }
    Graph::from_rows(rows, a.loops_allowed() || b.loops_allowed())
}

/// Copy of `g` with the edge `u-v` added; `g` is left untouched.
pub fn add_edge(g: &Graph, u: usize, v: usize) -> Result<Graph> {
    let mut out = g.clone();
    out.insert_edge(u, v)?;
    Ok(out)
}
