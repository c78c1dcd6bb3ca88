//! Isomorph-free generation of graphs with a minimum-degree floor.
//!
//! Graphs grow one vertex at a time. A child `G + v` of a parent `G` on `k`
//! vertices is kept only when `v` lies in the automorphism orbit of the
//! child's canonical deletion vertex (canonical augmentation); isomorphic
//! siblings are then removed by canonical form. Partial graphs are pruned
//! when some vertex can no longer reach degree δ with the vertices still to
//! come, and, when only connected graphs are wanted, when they are
//! disconnected. The canonical deletion vertex is always chosen among
//! non-cut vertices in the connected case so that every target graph keeps a
//! valid parent.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::extremal::canon::{canonical_labeling, same_orbit, CanonicalForm};
use crate::graph::{self, Bits, Graph};

/// Largest vertex count accepted by [`enumerate_graphs`].
pub const MAX_ENUMERATION_VERTICES: usize = 9;

/// Filters for an enumeration run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Family {
    pub n: usize,
    pub min_degree: usize,
    pub connected: bool,
    pub k_connected: Option<usize>,
}

impl Family {
    pub fn new(n: usize, min_degree: usize, connected: bool) -> Self {
        Family { n, min_degree, connected, k_connected: None }
    }

    pub fn with_k_connected(mut self, k: Option<usize>) -> Self {
        self.k_connected = k;
        self
    }

    /// Whether a complete `n`-vertex graph satisfies the filters.
    pub fn accepts(&self, g: &Graph) -> bool {
        g.vertex_count() == self.n
            && graph::min_degree(g) >= self.min_degree
            && (!self.connected || graph::is_connected(g))
            && self.k_connected.is_none_or(|k| graph::is_k_connected(g, k))
    }
}

struct Generator {
    family: Family,
    out: Vec<Graph>,
}

impl Generator {
    /// Degree floor a vertex of a partial graph on `k` vertices must meet.
    fn floor(&self, k: usize) -> usize {
        self.family.min_degree.saturating_sub(self.family.n - k)
    }

    fn deletion_candidates(&self, g: &Graph) -> u64 {
        let mut cands = g.vertex_mask();
        if self.family.connected && g.vertex_count() > 1 {
            cands = Bits(cands).filter(|&v| !graph::is_cut_vertex(g, v)).fold(0, |m, v| m | 1 << v);
        }
        let dmin = Bits(cands).map(|v| g.degree(v)).min().expect("some vertex is not a cut vertex");
        Bits(cands).filter(|&v| g.degree(v) == dmin).fold(0, |m, v| m | 1 << v)
    }

    /// Canonical augmentation test for the vertex `new` just added to `g`.
    fn is_canonical_child(&self, g: &Graph, new: usize) -> Option<CanonicalForm> {
        let cands = self.deletion_candidates(g);
        if cands >> new & 1 == 0 {
            return None;
        }
        let lab = canonical_labeling(g);
        let star = Bits(cands).max_by_key(|&v| lab.position[v]).expect("nonempty");
        if star == new || same_orbit(g, star, new) {
            Some(lab.form)
        } else {
            None
        }
    }

    fn extend(&mut self, g: &Graph) {
        let k = g.vertex_count();
        if k == self.family.n {
            if self.family.accepts(g) {
                self.out.push(crate::extremal::canon::canonical_graph(g));
            }
            return;
        }
        let floor = self.floor(k + 1);
        let mut seen: HashSet<CanonicalForm> = HashSet::new();
        for mask in 0..1u64 << k {
            if (mask.count_ones() as usize) < floor {
                continue;
            }
            if self.family.connected && mask == 0 {
                continue;
            }
            // Existing vertices gain one degree from the new vertex if adjacent.
            if (0..k).any(|v| g.degree(v) + ((mask >> v & 1) as usize) < floor) {
                continue;
            }
            let child = g.with_vertex(mask).expect("below vertex cap");
            if let Some(form) = self.is_canonical_child(&child, k) {
                if seen.insert(form) {
                    self.extend(&child);
                }
            }
        }
    }
}

/// One representative per isomorphism class of `n`-vertex graphs meeting the
/// filters, in a deterministic order. Representatives are canonically
/// labeled.
pub fn enumerate_graphs(
    n: usize,
    min_degree: usize,
    connected: bool,
    k_connected: Option<usize>,
) -> Result<Vec<Graph>> {
    enumerate_family(Family::new(n, min_degree, connected).with_k_connected(k_connected))
}

pub fn enumerate_family(family: Family) -> Result<Vec<Graph>> {
    if family.n == 0 {
        return Err(Error::EmptyGraph);
    }
    if family.n > MAX_ENUMERATION_VERTICES {
        return Err(Error::CapExceeded {
            what: format!("enumeration over {} vertices", family.n),
            cap: MAX_ENUMERATION_VERTICES,
        });
    }
    let mut gen = Generator { family, out: Vec::new() };
    let seed = Graph::empty(1)?;
    if graph::min_degree(&seed) >= gen.floor(1) {
        gen.extend(&seed);
    }
    Ok(gen.out)
}

/// All loop-permitting graphs on exactly `n` vertices, one per isomorphism
/// class, by filtering every labeled graph (`2^(n(n+1)/2)` of them).
pub fn enumerate_targets(n: usize) -> Result<Vec<Graph>> {
    const MAX_TARGET_VERTICES: usize = 5;
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > MAX_TARGET_VERTICES {
        return Err(Error::CapExceeded {
            what: format!("target enumeration over {n} vertices"),
            cap: MAX_TARGET_VERTICES,
        });
    }
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|u| (u..n).map(move |v| (u, v))).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << slots.len() {
        let edges: Vec<_> = Bits(mask).map(|i| slots[i]).collect();
        let h = Graph::from_edges(n, &edges, true)?;
        let form = crate::extremal::canon::canonical_form(&h);
        if seen.insert(form.clone()) {
            out.push(form.to_graph(true));
        }
    }
    out.sort_by_key(|h| (h.edge_count() + h.loop_count(), h.rows().to_vec()));
    Ok(out)
}

/// Connected, non-regular targets on at most `max_n` vertices.
pub fn connected_nonregular_targets(max_n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(
            enumerate_targets(n)?
                .into_iter()
                .filter(|h| graph::is_connected(h) && !graph::is_regular(h)),
        );
    }
    Ok(out)
}
