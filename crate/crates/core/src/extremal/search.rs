use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::extremal::canon::is_isomorphic;
use crate::extremal::enumerate::{enumerate_family, Family};
use crate::families::complete_bipartite;
use crate::graph::{to_graph6, Graph};
use crate::homcount::{count_hom, HomCount};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Maximizer {
    pub graph6: String,
    pub hom: HomCount,
}

/// Outcome of an exhaustive extremal search over one family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub n: usize,
    pub delta: usize,
    pub h_description: String,
    pub connected_only: bool,
    pub k_connected: Option<usize>,
    pub family_size: usize,
    pub maximizers: Vec<Maximizer>,
    /// `hom(K_{δ,n-δ}, H)` when `K_{δ,n-δ}` belongs to the family.
    pub kab_count: Option<HomCount>,
    pub kab_is_maximizer: bool,
    pub kab_is_unique_maximizer: bool,
    pub runtime_millis: u64,
}

/// Every graph of the family with its count, in enumeration order.
pub fn scan_family(family: Family, h: &Graph) -> Result<Vec<(Graph, HomCount)>> {
    let graphs = enumerate_family(family)?;
    graphs
        .into_par_iter()
        .map(|g| count_hom(&g, h).map(|c| (g, c)))
        .collect()
}

pub fn find_maximizers(
    n: usize,
    delta: usize,
    h: &Graph,
    connected_only: bool,
    k_connected: Option<usize>,
    h_description: &str,
) -> Result<SearchReport> {
    let family = Family::new(n, delta, connected_only).with_k_connected(k_connected);
    Ok(search_family(family, h, h_description)?.0)
}

/// Report plus the full scan (every class with its count).
pub fn search_family(
    family: Family,
    h: &Graph,
    h_description: &str,
) -> Result<(SearchReport, Vec<(Graph, HomCount)>)> {
    let start = Instant::now();
    let (n, delta) = (family.n, family.min_degree);
    let scanned = scan_family(family, h)?;
    let best = scanned.iter().map(|(_, c)| c).max().cloned();
    let mut maximizers: Vec<Maximizer> = match &best {
        Some(b) => scanned
            .iter()
            .filter(|(_, c)| c == b)
            .map(|(g, c)| Maximizer { graph6: to_graph6(g).expect("loopless"), hom: c.clone() })
            .collect(),
        None => Vec::new(),
    };
    maximizers.sort_by(|a, b| a.graph6.cmp(&b.graph6));

    let kab = (delta >= 1 && n >= 2 * delta)
        .then(|| complete_bipartite(delta, n - delta))
        .transpose()?
        .filter(|k| family.accepts(k));
    let kab_count = kab.as_ref().map(|k| count_hom(k, h)).transpose()?;
    let kab_is_maximizer = match (&kab, &best) {
        (Some(k), Some(b)) => {
            kab_count.as_ref() == Some(b)
                && scanned.iter().any(|(g, c)| c == b && is_isomorphic(g, k))
        }
        _ => false,
    };
    let kab_is_unique_maximizer = kab_is_maximizer && maximizers.len() == 1;

    let report = SearchReport {
        n,
        delta,
        h_description: h_description.to_string(),
        connected_only: family.connected,
        k_connected: family.k_connected,
        family_size: scanned.len(),
        maximizers,
        kab_count,
        kab_is_maximizer,
        kab_is_unique_maximizer,
        runtime_millis: start.elapsed().as_millis() as u64,
    };
    Ok((report, scanned))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    #[test]
    fn independent_sets_at_six() {
        let r = find_maximizers(6, 2, &h_ind(), true, None, "Hind").unwrap();
        assert!(r.kab_is_unique_maximizer);
        assert_eq!(r.maximizers.len(), 1);
        assert_eq!(r.maximizers[0].hom, 19u64.into());
    }

    #[test]
    fn proper_four_colorings_at_six() {
        let k4 = complete(4, false).unwrap();
        let r = find_maximizers(6, 2, &k4, true, None, "Kq:4").unwrap();
        assert!(!r.kab_is_maximizer);
        assert_eq!(r.kab_count, Some(516u64.into()));
        let c6 = to_graph6(&crate::extremal::canon::canonical_graph(&cycle(6).unwrap())).unwrap();
        assert!(r.maximizers.iter().any(|m| m.graph6 == c6));
        assert_eq!(r.maximizers[0].hom, 732u64.into());
    }

    #[test]
    fn singleton_family() {
        let r = find_maximizers(5, 4, &path(3).unwrap().as_target(), true, None, "P:3").unwrap();
        assert_eq!(r.family_size, 1);
        assert_eq!(r.kab_count, None);
        assert!(!r.kab_is_unique_maximizer);
    }
}
