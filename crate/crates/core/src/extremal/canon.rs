//! Canonical labeling by partition refinement and individualization.
//!
//! The search tree is the usual one: refine the ordered partition to an
//! equitable one, individualize each vertex of the first non-singleton cell
//! in turn, and recurse. Every leaf is a discrete partition and gives a
//! relabeled adjacency matrix; the canonical form is the largest of these.
//! Leaves that reproduce the first or the best matrix yield automorphisms,
//! which prune sibling subtrees (orbit pruning under the generators that fix
//! the current prefix pointwise) and allow jumping back to the common
//! ancestor. Equality decisions always compare full matrices.

use crate::graph::{Bits, Graph};

/// Isomorphism-class key: vertex count, optional vertex colors in canonical
/// order, and the canonically relabeled adjacency rows (diagonal = loops).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    n: usize,
    colors: Vec<u32>,
    rows: Vec<u64>,
}

impl CanonicalForm {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Fixed-length encoding: `n`, then each row as 8 little-endian bytes,
    /// then each color as 4 little-endian bytes.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = vec![self.n as u8];
        for r in &self.rows {
            out.extend_from_slice(&r.to_le_bytes());
        }
        for c in &self.colors {
            out.extend_from_slice(&c.to_le_bytes());
        }
        out
    }

    /// The canonical representative as a graph.
    pub fn to_graph(&self, loops_allowed: bool) -> Graph {
        let looped = self.rows.iter().enumerate().any(|(v, r)| r >> v & 1 == 1);
        Graph::from_rows(self.rows.clone(), loops_allowed || looped)
            .expect("canonical rows are a valid graph")
    }
}

/// Result of a canonical labeling run.
#[derive(Clone, Debug)]
pub struct Labeling {
    /// `position[v]` is the canonical index of vertex `v`.
    pub position: Vec<usize>,
    pub form: CanonicalForm,
    /// Automorphisms found during the search, as vertex maps.
    pub generators: Vec<Vec<usize>>,
}

type Cells = Vec<Vec<usize>>;

struct Leaf {
    rows: Vec<u64>,
    order: Vec<usize>,
    prefix: Vec<usize>,
}

struct Canonizer<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

/// Split cells until every vertex in a cell has the same number of neighbors
/// in every cell. Fragments keep the original cell's position and are ordered
/// by ascending neighbor count.
fn refine(g: &Graph, cells: &mut Cells) {
    'outer: loop {
        let masks: Vec<u64> = cells.iter().map(|c| c.iter().fold(0, |m, &v| m | 1 << v)).collect();
        for &splitter in &masks {
            let key = |v: usize| (g.neighbors(v) & splitter).count_ones();
            for c in 0..cells.len() {
                if cells[c].len() == 1 {
                    continue;
                }
                let k0 = key(cells[c][0]);
                if cells[c].iter().all(|&v| key(v) == k0) {
                    continue;
                }
                let mut cell = std::mem::take(&mut cells[c]);
                cell.sort_by_key(|&v| (key(v), v));
                let mut fragments: Cells = Vec::new();
                let mut last = None;
                for v in cell {
                    let k = key(v);
                    if last != Some(k) {
                        fragments.push(Vec::new());
                        last = Some(k);
                    }
                    fragments.last_mut().unwrap().push(v);
                }
                cells.splice(c..=c, fragments);
                continue 'outer;
            }
        }
        break;
    }
}

fn orbit_of(generators: &[&Vec<usize>], n: usize) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for gen in generators {
        for v in 0..n {
            let (a, b) = (find(&mut parent, v), find(&mut parent, gen[v]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl Canonizer<'_> {
    fn leaf_rows(&self, order: &[usize]) -> Vec<u64> {
        let n = order.len();
        let mut pos = vec![0usize; n];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        order
            .iter()
            .map(|&v| Bits(self.g.neighbors(v)).fold(0u64, |r, w| r | 1 << pos[w]))
            .collect()
    }

    /// Automorphism sending the vertex at each position of `from` to the
    /// vertex at the same position of `to`.
    fn automorphism(from: &[usize], to: &[usize]) -> Vec<usize> {
        let mut gamma = vec![0; from.len()];
        for (p, &v) in from.iter().enumerate() {
            gamma[v] = to[p];
        }
        gamma
    }

    /// Returns `Some(level)` to abandon everything below `level`.
    fn search(&mut self, cells: Cells, prefix: &mut Vec<usize>) -> Option<usize> {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            return self.visit_leaf(&cells, prefix);
        };
        let level = prefix.len();
        let n = self.g.vertex_count();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cells[target] {
            if !explored.is_empty() {
                let fixing: Vec<&Vec<usize>> = self
                    .generators
                    .iter()
                    .filter(|gen| prefix.iter().all(|&u| gen[u] == u))
                    .collect();
                if !fixing.is_empty() {
                    let orbit = orbit_of(&fixing, n);
                    if explored.iter().any(|&w| orbit[w] == orbit[v]) {
                        continue;
                    }
                }
            }
            let mut child = cells.clone();
            let rest: Vec<usize> = child[target].iter().copied().filter(|&w| w != v).collect();
            child.splice(target..=target, [vec![v], rest]);
            refine(self.g, &mut child);
            prefix.push(v);
            let jump = self.search(child, prefix);
            prefix.pop();
            explored.push(v);
            if let Some(j) = jump {
                if j < level {
                    return Some(j);
                }
            }
        }
        None
    }

    fn visit_leaf(&mut self, cells: &Cells, prefix: &[usize]) -> Option<usize> {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let rows = self.leaf_rows(&order);
        let Some(first) = &self.first else {
            self.best = Some(Leaf { rows: rows.clone(), order: order.clone(), prefix: prefix.to_vec() });
            self.first = Some(Leaf { rows, order, prefix: prefix.to_vec() });
            return None;
        };
        if rows == first.rows {
            self.generators.push(Self::automorphism(&first.order, &order));
            return Some(common_prefix(&first.prefix, prefix));
        }
        let best = self.best.as_ref().expect("best set with first");
        match rows.cmp(&best.rows) {
            std::cmp::Ordering::Greater => {
                self.best = Some(Leaf { rows, order, prefix: prefix.to_vec() });
                None
            }
            std::cmp::Ordering::Equal => {
                self.generators.push(Self::automorphism(&best.order, &order));
                Some(common_prefix(&best.prefix, prefix))
            }
            std::cmp::Ordering::Less => None,
        }
    }
}

/// Canonical labeling of `g` with an optional vertex coloring. Colored
/// vertices are only mapped to vertices of the same color; the initial
/// partition orders color classes by color value, then loopless before looped.
pub fn canonical_labeling_colored(g: &Graph, colors: Option<&[u32]>) -> Labeling {
    let n = g.vertex_count();
    let color = |v: usize| colors.map_or(0, |c| c[v]);
    let mut verts: Vec<usize> = (0..n).collect();
    verts.sort_by_key(|&v| (color(v), g.has_loop(v), v));
    let mut cells: Cells = Vec::new();
    let mut last = None;
    for v in verts {
        let k = (color(v), g.has_loop(v));
        if last != Some(k) {
            cells.push(Vec::new());
            last = Some(k);
        }
        cells.last_mut().unwrap().push(v);
    }
    refine(g, &mut cells);
    let mut canon = Canonizer { g, first: None, best: None, generators: Vec::new() };
    canon.search(cells, &mut Vec::new());
    let best = canon.best.expect("at least one leaf");
    let mut position = vec![0; n];
    for (p, &v) in best.order.iter().enumerate() {
        position[v] = p;
    }
    let canon_colors = match colors {
        Some(c) => best.order.iter().map(|&v| c[v]).collect(),
        None => Vec::new(),
    };
    Labeling {
        position,
        form: CanonicalForm { n, colors: canon_colors, rows: best.rows },
        generators: canon.generators,
    }
}

pub fn canonical_labeling(g: &Graph) -> Labeling {
    canonical_labeling_colored(g, None)
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).form
}

/// The canonically relabeled copy of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    g.permuted(&canonical_labeling(g).position)
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && a.loop_count() == b.loop_count()
        && canonical_form(a) == canonical_form(b)
}

/// True iff some automorphism of `g` maps `u` to `v`.
pub fn same_orbit(g: &Graph, u: usize, v: usize) -> bool {
    if u == v {
        return true;
    }
    let n = g.vertex_count();
    let mut cu = vec![0u32; n];
    cu[u] = 1;
    let mut cv = vec![0u32; n];
    cv[v] = 1;
    canonical_labeling_colored(g, Some(&cu)).form == canonical_labeling_colored(g, Some(&cv)).form
}
