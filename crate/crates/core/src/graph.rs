//! Graph representation shared by source graphs `G` and target graphs `H`.
//!
//! Vertices are dense indices `0..n`. Each vertex stores its neighborhood as a
//! `u64` bitset, so graphs are capped at [`MAX_VERTICES`] vertices. A loop at
//! `v` is bit `v` of row `v` and, following the degree convention used
//! throughout the crate, contributes exactly one to the degree of `v`.
//!
//! Source graphs are built with `loops_allowed = false` and can never carry a
//! loop; target graphs may.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported vertex count (one machine word per neighborhood).
pub const MAX_VERTICES: usize = 64;

/// Bitmask with the low `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterator over the set bits of a word, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    loops_allowed: bool,
}

/// Per-vertex degrees with the loop-counts-once rule applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub max_degree: usize,
    pub min_degree: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize, loops_allowed: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n], loops_allowed })
    }

    /// Edgeless source graph (loops forbidden).
    pub fn empty(n: usize) -> Result<Self> {
        Graph::new(n, false)
    }

    /// Build from an edge list. `u == v` entries are loops and require
    /// `loops_allowed`. Duplicate edges are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], loops_allowed: bool) -> Result<Self> {
        let mut g = Graph::new(n, loops_allowed)?;
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    /// Build from raw neighborhood rows. Rows must be symmetric and, unless
    /// loops are allowed, loop-free.
    pub fn from_rows(rows: Vec<u64>, loops_allowed: bool) -> Result<Self> {
        let n = rows.len();
        let g = Graph::new(n, loops_allowed)?;
        let mask = full_mask(n);
        for (v, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                return Err(Error::Precondition(format!("row {v} references vertices >= {n}")));
            }
            if !loops_allowed && row >> v & 1 == 1 {
                return Err(Error::InvalidEdge { u: v, v, reason: "loop on a loopless graph" });
            }
            for w in Bits(row) {
                if rows[w] >> v & 1 == 0 {
                    return Err(Error::Precondition(format!("adjacency not symmetric at {v}-{w}")));
                }
            }
        }
        Ok(Graph { adj: rows, ..g })
    }

    /// Same adjacency, viewed as a target graph on which loops are permitted.
    pub fn as_target(&self) -> Graph {
        Graph { loops_allowed: true, ..self.clone() }
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Add an edge in place. Rejects duplicates and loops on loopless graphs.
    pub fn insert_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v && !self.loops_allowed {
            return Err(Error::InvalidEdge { u, v, reason: "loop on a loopless graph" });
        }
        if self.has_edge(u, v) {
            return Err(Error::InvalidEdge { u, v, reason: "edge already present" });
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(Error::InvalidEdge { u, v, reason: "edge not present" });
        }
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
        Ok(())
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn loops_allowed(&self) -> bool {
        self.loops_allowed
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn has_loop(&self, v: usize) -> bool {
        self.has_edge(v, v)
    }

    /// Neighborhood bitset of `v`; contains `v` itself when `v` is looped.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.n)
    }

    /// Degree of `v`; a loop adds one.
    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn loop_count(&self) -> usize {
        (0..self.n).filter(|&v| self.has_loop(v)).count()
    }

    /// Number of non-loop edges.
    pub fn edge_count(&self) -> usize {
        let total: usize = self.adj.iter().map(|r| r.count_ones() as usize).sum();
        (total - self.loop_count()) / 2
    }

    /// Edges `(u, v)` with `u <= v`, in lexicographic order; loops are `(v, v)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in Bits(self.adj[u] & !full_mask(u)) {
                out.push((u, v));
            }
        }
        out
    }

    /// Vertices reachable from `start` inside `within` (loops ignored).
    pub fn component_of(&self, start: usize, within: u64) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier) {
                next |= self.adj[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Connected components of the subgraph induced by `within`, each as a
    /// bitset, ordered by smallest vertex.
    pub fn components_within(&self, within: u64) -> Vec<u64> {
        let mut rest = within;
        let mut out = Vec::new();
        while rest != 0 {
            let c = self.component_of(rest.trailing_zeros() as usize, within);
            out.push(c);
            rest &= !c;
        }
        out
    }

    pub fn components(&self) -> Vec<u64> {
        self.components_within(self.vertex_mask())
    }

    /// Subgraph induced on the vertices of `mask`, relabeled in increasing
    /// order. Returns `None` for an empty mask.
    pub fn induced(&self, mask: u64) -> Option<Graph> {
        let verts: Vec<usize> = Bits(mask & self.vertex_mask()).collect();
        if verts.is_empty() {
            return None;
        }
        let mut rows = vec![0u64; verts.len()];
        for (i, &v) in verts.iter().enumerate() {
            for (j, &w) in verts.iter().enumerate() {
                if self.has_edge(v, w) {
                    rows[i] |= 1 << j;
                }
            }
        }
        Some(Graph { n: verts.len(), adj: rows, loops_allowed: self.loops_allowed })
    }

    /// Relabel so that old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut rows = vec![0u64; self.n];
        for v in 0..self.n {
            let mut r = 0u64;
            for w in Bits(self.adj[v]) {
                r |= 1 << perm[w];
            }
            rows[perm[v]] = r;
        }
        Graph { n: self.n, adj: rows, loops_allowed: self.loops_allowed }
    }

    /// Copy with an extra vertex `n` adjacent to `mask`.
    pub fn with_vertex(&self, mask: u64) -> Result<Graph> {
        if self.n >= MAX_VERTICES {
            return Err(Error::TooManyVertices(self.n + 1));
        }
        let mut rows = self.adj.clone();
        let v = self.n;
        for w in Bits(mask & self.vertex_mask()) {
            rows[w] |= 1 << v;
        }
        rows.push(mask & self.vertex_mask());
        Ok(Graph { n: self.n + 1, adj: rows, loops_allowed: self.loops_allowed })
    }

    /// Merge `v` into `u` (union of neighborhoods), drop `v`, and relabel the
    /// remaining vertices in increasing order. Parallel edges collapse; the
    /// edge `u-v` itself disappears.
    pub fn contract(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v || self.n < 2 {
            return Err(Error::Precondition("contraction needs two distinct vertices".into()));
        }
        let mut rows = self.adj.clone();
        let merged = (rows[u] | rows[v]) & !(1 << u) & !(1 << v);
        rows[u] = merged;
        for w in Bits(merged) {
            rows[w] |= 1 << u;
        }
        for r in &mut rows {
            *r &= !(1 << v);
        }
        let g = Graph { n: self.n, adj: rows, loops_allowed: self.loops_allowed };
        Ok(g.induced(self.vertex_mask() & !(1 << v)).expect("at least one vertex remains"))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

pub fn degree_profile(g: &Graph) -> DegreeProfile {
    let degrees: Vec<usize> = (0..g.n).map(|v| g.degree(v)).collect();
    let max_degree = degrees.iter().copied().max().unwrap_or(0);
    let min_degree = degrees.iter().copied().min().unwrap_or(0);
    DegreeProfile { degrees, max_degree, min_degree }
}

/// Maximum degree (Δ when applied to a target graph).
pub fn max_degree(g: &Graph) -> usize {
    (0..g.n).map(|v| g.degree(v)).max().unwrap_or(0)
}

pub fn min_degree(g: &Graph) -> usize {
    (0..g.n).map(|v| g.degree(v)).min().unwrap_or(0)
}

pub fn is_regular(h: &Graph) -> bool {
    let d = h.degree(0);
    (1..h.n).all(|v| h.degree(v) == d)
}

pub fn is_connected(g: &Graph) -> bool {
    g.component_of(0, g.vertex_mask()) == g.vertex_mask()
}

/// True iff removing `v` disconnects the graph (or leaves it empty).
pub fn is_cut_vertex(g: &Graph, v: usize) -> bool {
    let rest = g.vertex_mask() & !(1u64 << v);
    if rest == 0 {
        return true;
    }
    g.component_of(rest.trailing_zeros() as usize, rest) != rest
}

/// Maximum number of internally vertex-disjoint `s`-`t` paths, stopping
/// early once `limit` paths are found. `s` and `t` must be nonadjacent.
fn vertex_disjoint_paths(g: &Graph, s: usize, t: usize, limit: usize) -> usize {
    // Split each vertex x into x_in = 2x and x_out = 2x + 1 joined by a
    // unit-capacity arc; each edge becomes two unbounded arcs out -> in.
    let n = g.n;
    let nodes = 2 * n;
    let big = n as i32 + 1;
    let mut cap = vec![vec![0i32; nodes]; nodes];
    for x in 0..n {
        cap[2 * x][2 * x + 1] = if x == s || x == t { big } else { 1 };
        for y in Bits(g.adj[x] & !(1u64 << x)) {
            cap[2 * x + 1][2 * y] = big;
        }
    }
    let (src, sink) = (2 * s + 1, 2 * t);
    let mut flow = 0;
    while flow < limit {
        let mut prev = vec![usize::MAX; nodes];
        prev[src] = src;
        let mut queue = std::collections::VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            if x == sink {
                break;
            }
            for y in 0..nodes {
                if prev[y] == usize::MAX && cap[x][y] > 0 {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if prev[sink] == usize::MAX {
            break;
        }
        let mut y = sink;
        while y != src {
            let x = prev[y];
            cap[x][y] -= 1;
            cap[y][x] += 1;
            y = x;
        }
        flow += 1;
    }
    flow
}

/// k-vertex-connectivity: more than `k` vertices and no vertex cut of size
/// below `k`. Loops are ignored.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    let n = g.n;
    if n <= k {
        return false;
    }
    if k == 0 {
        return true;
    }
    if !is_connected(g) {
        return false;
    }
    for s in 0..n {
        for t in s + 1..n {
            if !g.has_edge(s, t) && vertex_disjoint_paths(g, s, t, k) < k {
                return false;
            }
        }
    }
    true
}

/// Intersection of the neighborhoods of every entry of `tuple`; a looped
/// vertex is its own neighbor.
pub fn common_neighbors(h: &Graph, tuple: &[usize]) -> Result<u64> {
    if tuple.is_empty() {
        return Err(Error::Precondition("common_neighbors needs a nonempty tuple".into()));
    }
    let mut acc = h.vertex_mask();
    for &v in tuple {
        h.check_vertex(v)?;
        acc &= h.adj[v];
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// graph6

fn graph6_size_prefix(n: usize, out: &mut String) {
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + 63) as char);
        }
    }
}

/// Encode a loopless graph as graph6 (no header, no newline).
pub fn to_graph6(g: &Graph) -> Result<String> {
    if g.loop_count() > 0 {
        return Err(Error::Precondition("graph6 cannot encode loops".into()));
    }
    let mut out = String::new();
    graph6_size_prefix(g.n, &mut out);
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..g.n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push(((acc << (6 - nbits)) + 63) as char);
    }
    Ok(out)
}

/// Decode one graph6 string into a loopless source graph. An optional
/// `>>graph6<<` header and surrounding whitespace are accepted.
pub fn from_graph6(s: &str) -> Result<Graph> {
    let s = s.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse("empty graph6 string".into()));
    }
    for &b in bytes {
        if !(63..=126).contains(&b) {
            return Err(Error::Parse(format!("invalid graph6 byte {b:#04x}")));
        }
    }
    let (n, body) = if bytes[0] != 126 {
        (bytes[0] as usize - 63, &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] == 126 {
        return Err(Error::CapExceeded { what: "graph6 vertex count".into(), cap: MAX_VERTICES });
    } else {
        if bytes.len() < 4 {
            return Err(Error::Parse("truncated graph6 size field".into()));
        }
        let n = bytes[1..4].iter().fold(0usize, |acc, &b| acc << 6 | (b as usize - 63));
        (n, &bytes[4..])
    };
    if n > MAX_VERTICES {
        return Err(Error::CapExceeded { what: format!("graph6 vertex count {n}"), cap: MAX_VERTICES });
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if body.len() != need {
        return Err(Error::Parse(format!(
            "graph6 body has {} bytes, expected {need} for n={n}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.insert_edge(i, j)?;
            }
            k += 1;
        }
    }
    let pad = need * 6 - nbits;
    if pad > 0 && (body[need - 1] - 63) & ((1 << pad) - 1) != 0 {
        return Err(Error::Parse("nonzero graph6 padding bits".into()));
    }
    Ok(g)
}

// ---------------------------------------------------------------------------
// H-format: first line n, then one "u v" per edge with u <= v; "u u" is a loop.

pub fn to_h_format(h: &Graph) -> String {
    let mut out = format!("{}\n", h.n);
    for (u, v) in h.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn from_h_format(text: &str) -> Result<Graph> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let first = lines.next().ok_or_else(|| Error::Parse("missing vertex count".into()))?;
    let n: usize = first
        .parse()
        .map_err(|_| Error::Parse(format!("bad vertex count {first:?}")))?;
    if n > MAX_VERTICES {
        return Err(Error::CapExceeded { what: format!("H-format vertex count {n}"), cap: MAX_VERTICES });
    }
    let mut h = Graph::new(n, true)?;
    for line in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [a, b] = parts.as_slice() else {
            return Err(Error::Parse(format!("expected \"u v\", got {line:?}")));
        };
        let u: usize = a.parse().map_err(|_| Error::Parse(format!("bad vertex {a:?}")))?;
        let v: usize = b.parse().map_err(|_| Error::Parse(format!("bad vertex {b:?}")))?;
        if u > v || v >= n {
            return Err(Error::Parse(format!("edge line {line:?} must satisfy 0 <= u <= v < {n}")));
        }
        if h.has_edge(u, v) {
            return Err(Error::Parse(format!("duplicate edge line {line:?}")));
        }
        h.insert_edge(u, v)?;
    }
    Ok(h)
}
