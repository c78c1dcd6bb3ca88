//! Executable forms of the counting argument behind the `K_{δ,n-δ}` bound:
//! the iterative-coloring upper bound, the largest common-neighbor core, and
//! the single-edge-addition test.

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{add_edge, complete_bipartite};
use crate::graph::{self, Bits, Graph};
use crate::homcount::{count_hom, is_endpoint_excluded, HomCount};

/// One round of the iterative coloring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ColoringStep {
    /// A maximal path of a tree component; both ends touch colored vertices.
    TreePath { vertices: Vec<usize>, factor: HomCount },
    /// A connecting path (ending on the cycle) followed by the rest of a cycle.
    CycleWithPath { path: Vec<usize>, cycle: Vec<usize>, factor: HomCount },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralBound {
    pub seed: usize,
    pub steps: Vec<ColoringStep>,
    /// Vertices left isolated once every component is trivial.
    pub leftover: Vec<usize>,
    /// Whether per-step factors use the `(Δ² - 1)` saving; false for the
    /// excluded targets, where each new vertex is charged Δ.
    pub endpoint_saving: bool,
    pub bound: HomCount,
}

/// Path between `a` and `b` inside `within` (BFS, lowest-index parents).
fn bfs_path(g: &Graph, a: usize, b: usize, within: u64) -> Vec<usize> {
    let n = g.vertex_count();
    let mut parent = vec![usize::MAX; n];
    parent[a] = a;
    let mut queue = std::collections::VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        if x == b {
            break;
        }
        for y in Bits(g.neighbors(x) & within) {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut path = vec![b];
    let mut x = b;
    while x != a {
        x = parent[x];
        path.push(x);
    }
    path.reverse();
    path
}

/// Shortest cycle inside `within`, as a vertex sequence. Ties go to the
/// lexicographically smallest (length, sequence).
fn shortest_cycle(g: &Graph, within: u64) -> Option<Vec<usize>> {
    let mut best: Option<Vec<usize>> = None;
    for (u, v) in g.edges() {
        if u == v || within >> u & 1 == 0 || within >> v & 1 == 0 {
            continue;
        }
        // Shortest u-v path avoiding the edge u-v closes a shortest cycle through it.
        let mut h = g.clone();
        h.remove_edge(u, v).expect("edge exists");
        if h.component_of(u, within) >> v & 1 == 0 {
            continue;
        }
        let cyc = bfs_path(&h, u, v, within);
        let better = match &best {
            None => true,
            Some(b) => (cyc.len(), &cyc) < (b.len(), b),
        };
        if better {
            best = Some(cyc);
        }
    }
    best
}

/// Runs the iterative coloring on `g` and multiplies the per-step color
/// counts into an upper bound on `hom(g, h)`.
///
/// Seed vertex 0 costs `|V(H)|`. A tree component contributes a maximal path
/// on `k` new vertices at `(Δ² - 1) Δ^(k - 2)`; otherwise a cycle on `c`
/// vertices reached by a path of `p` new vertices (the last on the cycle)
/// costs `Δ^p (Δ² - 1) Δ^(c - 3)`. Vertices that end up isolated cost Δ. The
/// `(Δ² - 1)` factors rely on the endpoint bound, so for the fully looped
/// complete graph on Δ vertices and for `K_{Δ,Δ}` every new vertex is
/// charged Δ instead.
pub fn structural_trace(g: &Graph, h: &Graph) -> Result<StructuralBound> {
    if g.loop_count() > 0 {
        return Err(Error::Precondition("source graph must be loopless".into()));
    }
    if !graph::is_connected(g) {
        return Err(Error::Precondition("source graph must be connected".into()));
    }
    if graph::min_degree(g) < 2 {
        return Err(Error::Precondition("source graph needs minimum degree at least 2".into()));
    }
    let d = graph::max_degree(h);
    if d < 2 {
        return Err(Error::Precondition(format!("target needs Δ >= 2, got {d}")));
    }
    let saving = !is_endpoint_excluded(h);
    let db = BigUint::from(d);
    let charge = |new: usize| -> BigUint {
        if saving {
            (&db * &db - 1u32) * db.pow(new as u32 - 2)
        } else {
            db.pow(new as u32)
        }
    };

    let seed = 0;
    let mut colored = 1u64 << seed;
    let mut bound = BigUint::from(h.vertex_count());
    let mut steps = Vec::new();
    loop {
        let uncolored = g.vertex_mask() & !colored;
        let nontrivial: Vec<u64> =
            g.components_within(uncolored).into_iter().filter(|c| c.count_ones() > 1).collect();
        if nontrivial.is_empty() {
            break;
        }
        let is_tree = |c: u64| {
            let edges: u32 = Bits(c).map(|v| (g.neighbors(v) & c).count_ones()).sum::<u32>() / 2;
            edges + 1 == c.count_ones()
        };
        if let Some(&comp) = nontrivial.iter().find(|&&c| is_tree(c)) {
            let leaves: Vec<usize> =
                Bits(comp).filter(|&v| (g.neighbors(v) & comp).count_ones() == 1).collect();
            let path = bfs_path(g, leaves[0], leaves[1], comp);
            let factor = charge(path.len());
            bound *= &factor;
            for &v in &path {
                colored |= 1 << v;
            }
            steps.push(ColoringStep::TreePath { vertices: path, factor: HomCount(factor) });
        } else {
            let comp = nontrivial[0];
            let cyc = shortest_cycle(g, comp).expect("non-tree component has a cycle");
            let on_cycle = cyc.iter().fold(0u64, |m, &v| m | 1 << v);
            // Multi-source BFS from the cycle toward a vertex with a colored neighbor.
            let n = g.vertex_count();
            let mut parent = vec![usize::MAX; n];
            let mut queue = std::collections::VecDeque::new();
            for &v in &cyc {
                parent[v] = v;
                queue.push_back(v);
            }
            let mut end = None;
            while let Some(x) = queue.pop_front() {
                if g.neighbors(x) & colored != 0 {
                    end = Some(x);
                    break;
                }
                for y in Bits(g.neighbors(x) & comp & !on_cycle) {
                    if parent[y] == usize::MAX {
                        parent[y] = x;
                        queue.push_back(y);
                    }
                }
            }
            let end = end.expect("connected graph: component touches colored set");
            // Path in coloring order: from the vertex next to C to the cycle.
            let mut path = vec![end];
            let mut x = end;
            while parent[x] != x {
                x = parent[x];
                path.push(x);
            }
            let anchor = *path.last().unwrap();
            let start = cyc.iter().position(|&v| v == anchor).unwrap();
            let cycle: Vec<usize> = (0..cyc.len()).map(|i| cyc[(start + i) % cyc.len()]).collect();
            let p = path.len();
            let c = cycle.len();
            let factor = if saving {
                db.pow(p as u32) * (&db * &db - 1u32) * db.pow(c as u32 - 3)
            } else {
                db.pow((p + c - 1) as u32)
            };
            bound *= &factor;
            for &v in path.iter().chain(&cycle) {
                colored |= 1 << v;
            }
            steps.push(ColoringStep::CycleWithPath { path, cycle, factor: HomCount(factor) });
        }
    }
    let leftover: Vec<usize> = Bits(g.vertex_mask() & !colored).collect();
    bound *= db.pow(leftover.len() as u32);
    Ok(StructuralBound { seed, steps, leftover, endpoint_saving: saving, bound: HomCount(bound) })
}

pub fn structural_upper_bound(g: &Graph, h: &Graph) -> Result<HomCount> {
    Ok(structural_trace(g, h)?.bound)
}

/// The δ-subset with the most common neighbors outside itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommonCore {
    pub subset: Vec<usize>,
    pub common_count: usize,
}

pub const CORE_MAX_DELTA: usize = 4;
pub const CORE_MAX_VERTICES: usize = 20;

/// Exhaustive scan over δ-subsets; ties go to the lexicographically first.
pub fn max_common_core(g: &Graph, delta: usize) -> Result<CommonCore> {
    let n = g.vertex_count();
    if delta == 0 || delta > n {
        return Err(Error::Precondition(format!("need 1 <= delta <= {n}, got {delta}")));
    }
    if delta > CORE_MAX_DELTA {
        return Err(Error::CapExceeded { what: format!("common core subset size {delta}"), cap: CORE_MAX_DELTA });
    }
    if n > CORE_MAX_VERTICES {
        return Err(Error::CapExceeded { what: format!("common core over {n} vertices"), cap: CORE_MAX_VERTICES });
    }
    let mut best: Option<CommonCore> = None;
    let mut subset: Vec<usize> = (0..delta).collect();
    loop {
        let mask = subset.iter().fold(0u64, |m, &v| m | 1 << v);
        let common = subset.iter().fold(g.vertex_mask(), |acc, &v| acc & g.neighbors(v)) & !mask;
        let c = common.count_ones() as usize;
        if best.as_ref().is_none_or(|b| c > b.common_count) {
            best = Some(CommonCore { subset: subset.clone(), common_count: c });
        }
        // next combination
        let mut i = delta;
        loop {
            if i == 0 {
                return Ok(best.expect("at least one subset"));
            }
            i -= 1;
            if subset[i] < n - delta + i {
                subset[i] += 1;
                for j in i + 1..delta {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeAddition {
    /// Edge added to `K_{δ,n-δ}`.
    pub edge: (usize, usize),
    pub count: HomCount,
    pub strict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeAdditionReport {
    pub delta: usize,
    pub n: usize,
    pub base_count: HomCount,
    pub additions: Vec<EdgeAddition>,
    pub all_strict: bool,
    /// First addition that failed to decrease the count, if any.
    pub counterexample: Option<(usize, usize)>,
}

/// Counts for both non-isomorphic single-edge additions to `K_{δ,n-δ}`
/// without any precondition on `h`.
pub fn edge_addition_counts(delta: usize, n: usize, h: &Graph) -> Result<EdgeAdditionReport> {
    if delta == 0 || n < 2 * delta {
        return Err(Error::Precondition(format!("need n >= 2*delta >= 2, got n={n}, delta={delta}")));
    }
    let base = complete_bipartite(delta, n - delta)?;
    let base_count = count_hom(&base, h)?;
    let mut edges = Vec::new();
    if delta >= 2 {
        edges.push((0, 1));
    }
    if n - delta >= 2 {
        edges.push((delta, delta + 1));
    }
    let mut additions = Vec::new();
    for (u, v) in edges {
        let count = count_hom(&add_edge(&base, u, v)?, h)?;
        let strict = count < base_count;
        additions.push(EdgeAddition { edge: (u, v), count, strict });
    }
    let counterexample = additions.iter().find(|a| !a.strict).map(|a| a.edge);
    Ok(EdgeAdditionReport {
        delta,
        n,
        base_count,
        all_strict: counterexample.is_none(),
        additions,
        counterexample,
    })
}

/// Adding any edge to `K_{δ,n-δ}` strictly lowers `hom(·, h)` for connected
/// non-regular `h`.
pub fn edge_addition_test(delta: usize, n: usize, h: &Graph) -> Result<EdgeAdditionReport> {
    if !graph::is_connected(h) || graph::is_regular(h) {
        return Err(Error::Precondition("edge-addition test needs a connected non-regular target".into()));
    }
    edge_addition_counts(delta, n, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    #[test]
    fn bound_dominates_on_cycle() {
        let k3 = complete(3, false).unwrap();
        let t = structural_trace(&cycle(6).unwrap(), &k3).unwrap();
        assert_eq!(t.steps.len(), 1);
        assert!(matches!(t.steps[0], ColoringStep::TreePath { .. }));
        assert_eq!(t.bound, 72u64.into());
        assert!(t.bound >= count_hom(&cycle(6).unwrap(), &k3).unwrap());
    }

    #[test]
    fn bound_on_complete_bipartite() {
        let p3 = path(3).unwrap().as_target();
        let g = complete_bipartite(2, 4).unwrap();
        let b = structural_upper_bound(&g, &p3).unwrap();
        assert!(b >= 20u64.into());
    }

    #[test]
    fn cycle_step_appears_for_dense_graphs() {
        let k5 = complete(5, false).unwrap();
        let t = structural_trace(&k5, &h_ind()).unwrap();
        assert!(matches!(t.steps[0], ColoringStep::CycleWithPath { .. }));
        assert!(t.bound >= count_hom(&k5, &h_ind()).unwrap());
    }

    #[test]
    fn excluded_targets_fall_back_to_plain_charges() {
        let looped = complete(2, true).unwrap();
        let g = cycle(6).unwrap();
        let t = structural_trace(&g, &looped).unwrap();
        assert!(!t.endpoint_saving);
        assert_eq!(t.bound, count_hom(&g, &looped).unwrap());
    }

    #[test]
    fn bound_preconditions() {
        let k3 = complete(3, false).unwrap();
        assert!(structural_upper_bound(&path(4).unwrap(), &k3).is_err());
        assert!(structural_upper_bound(&complete(2, false).unwrap(), &k3).is_err());
        assert!(structural_upper_bound(&cycle(5).unwrap(), &complete(2, false).unwrap()).is_err());
    }

    #[test]
    fn common_cores() {
        let r = max_common_core(&complete_bipartite(2, 4).unwrap(), 2).unwrap();
        assert_eq!(r, CommonCore { subset: vec![0, 1], common_count: 4 });
        assert_eq!(max_common_core(&cycle(6).unwrap(), 2).unwrap().common_count, 1);
        assert_eq!(max_common_core(&g1(6, 2).unwrap(), 2).unwrap().common_count, 1);
        assert!(max_common_core(&cycle(6).unwrap(), 5).is_err());
        assert!(max_common_core(&cycle(21).unwrap(), 2).is_err());
    }

    #[test]
    fn edge_additions() {
        let r = edge_addition_test(2, 6, &h_ind()).unwrap();
        assert_eq!(r.base_count, 19u64.into());
        assert_eq!(r.additions.len(), 2);
        assert!(r.all_strict);
        assert!(edge_addition_test(2, 6, &path(3).unwrap().as_target()).unwrap().all_strict);
        let looped = complete(2, true).unwrap();
        assert!(edge_addition_test(2, 6, &looped).is_err());
        let forced = edge_addition_counts(2, 6, &looped).unwrap();
        assert!(!forced.all_strict);
        assert!(forced.additions.iter().all(|a| a.count == forced.base_count));
        assert_eq!(forced.counterexample, Some((0, 1)));
    }
}
