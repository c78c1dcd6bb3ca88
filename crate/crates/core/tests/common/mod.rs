//! Independent reference implementations used by the integration tests.
//! Nothing here calls into the counting or enumeration code under test.

#![allow(dead_code)]

use homext::Graph;
use num_bigint::BigUint;

/// Every map `V(g) -> V(h)`, kept when all edges of `g` land on edges of `h`.
pub fn brute_force_hom(g: &Graph, h: &Graph) -> u64 {
    let n = g.vertex_count();
    let m = h.vertex_count();
    let edges = g.edges();
    let mut colors = vec![0usize; n];
    let mut count = 0u64;
    loop {
        if edges.iter().all(|&(u, v)| h.has_edge(colors[u], colors[v])) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            colors[i] += 1;
            if colors[i] < m {
                break;
            }
            colors[i] = 0;
            i += 1;
        }
    }
}

/// `hom(P_k, h)` for `k = 1..=k_max` by walk counting with a plain vector.
pub fn path_counts_by_walks(h: &Graph, k_max: usize) -> Vec<BigUint> {
    let m = h.vertex_count();
    let mut walks = vec![BigUint::from(1u32); m];
    let mut out = Vec::new();
    for k in 1..=k_max {
        if k > 1 {
            walks = (0..m)
                .map(|i| (0..m).filter(|&j| h.has_edge(i, j)).map(|j| walks[j].clone()).sum())
                .collect();
        }
        out.push(walks.iter().sum());
    }
    out
}

/// Walk counts between every pair: entries of `A^len`.
pub fn walk_matrix(h: &Graph, len: usize) -> Vec<Vec<u128>> {
    let m = h.vertex_count();
    let mut cur: Vec<Vec<u128>> = (0..m).map(|i| (0..m).map(|j| (i == j) as u128).collect()).collect();
    for _ in 0..len {
        cur = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| (0..m).filter(|&l| h.has_edge(l, j)).map(|l| cur[i][l]).sum())
                    .collect()
            })
            .collect();
    }
    cur
}

pub fn connected(n: usize, adj: &[u64]) -> bool {
    if n == 0 {
        return true;
    }
    let mut seen = 1u64;
    let mut stack = vec![0usize];
    while let Some(v) = stack.pop() {
        for w in 0..n {
            if adj[v] >> w & 1 == 1 && seen >> w & 1 == 0 {
                seen |= 1 << w;
                stack.push(w);
            }
        }
    }
    seen.count_ones() as usize == n
}

/// Vertex pairs `(u, v)` with `u < v`, indexed in a fixed order.
pub fn pair_slots(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(p.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, p, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            p.swap(j, k - 1);
        }
    }
    heap(n, &mut p, &mut out);
    out
}

/// Labeled graphs on `n` vertices encoded as pair-slot bitmasks, together
/// with the slot permutation induced by every vertex permutation.
pub struct LabeledGraphs {
    pub n: usize,
    pub slots: Vec<(usize, usize)>,
    pub slot_perms: Vec<Vec<usize>>,
}

impl LabeledGraphs {
    pub fn new(n: usize) -> Self {
        let slots = pair_slots(n);
        let index = |u: usize, v: usize| {
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            slots.iter().position(|&s| s == (a, b)).unwrap()
        };
        let slot_perms = permutations(n)
            .iter()
            .map(|p| slots.iter().map(|&(u, v)| index(p[u], p[v])).collect())
            .collect();
        LabeledGraphs { n, slots, slot_perms }
    }

    pub fn adjacency(&self, mask: u64) -> Vec<u64> {
        let mut adj = vec![0u64; self.n];
        for (i, &(u, v)) in self.slots.iter().enumerate() {
            if mask >> i & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        adj
    }

    pub fn image(&self, mask: u64, perm: usize) -> u64 {
        let sp = &self.slot_perms[perm];
        (0..self.slots.len()).filter(|&i| mask >> i & 1 == 1).fold(0, |m, i| m | 1 << sp[i])
    }

    /// Smallest mask over all relabelings: a canonical form by brute force.
    pub fn min_image(&self, mask: u64) -> u64 {
        (0..self.slot_perms.len()).map(|p| self.image(mask, p)).min().unwrap()
    }

    pub fn mask_of(&self, g: &Graph) -> u64 {
        g.edges()
            .iter()
            .map(|&e| self.slots.iter().position(|&s| s == e).unwrap())
            .fold(0, |m, i| m | 1 << i)
    }

    /// Isomorphism classes of labeled graphs passing `keep` (an isomorphism
    /// invariant property), found by marking whole orbits.
    pub fn count_classes(&self, keep: impl Fn(&[u64]) -> bool) -> usize {
        let total = 1usize << self.slots.len();
        let mut seen = vec![false; total];
        let mut classes = 0;
        for mask in 0..total as u64 {
            if seen[mask as usize] || !keep(&self.adjacency(mask)) {
                continue;
            }
            classes += 1;
            for p in 0..self.slot_perms.len() {
                seen[self.image(mask, p) as usize] = true;
            }
        }
        classes
    }
}

pub fn min_degree_of(adj: &[u64]) -> usize {
    adj.iter().map(|r| r.count_ones() as usize).min().unwrap_or(0)
}
