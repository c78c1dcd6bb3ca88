//! Graph specifications on the command line: family syntax (`Kab:2,4`,
//! `P:7`, `C:8`, `Kq:5`, `KqLooped:3`, `Hind`, `G1:12,3`), a path to a file
//! in graph6 or H-format, or an inline graph6 string.

use std::path::Path;

use crate::error::{Error, Result};
use crate::families;
use crate::graph::{from_graph6, from_h_format, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Kab(usize, usize),
    Path(usize),
    Cycle(usize),
    Kq(usize),
    KqLooped(usize),
    Hind,
    /// `G1:n,δ`.
    G1 { n: usize, delta: usize },
}

fn numbers(args: &str, want: usize, spec: &str) -> Result<Vec<usize>> {
    let vals: std::result::Result<Vec<usize>, _> = args.split(',').map(|a| a.trim().parse()).collect();
    match vals {
        Ok(v) if v.len() == want => Ok(v),
        _ => Err(Error::Parse(format!("{spec:?}: expected {want} comma-separated integers"))),
    }
}

impl FamilySpec {
    /// `None` when `s` does not use a family name.
    pub fn parse(s: &str) -> Option<Result<FamilySpec>> {
        let (name, args) = s.split_once(':').unwrap_or((s, ""));
        let spec = match name {
            "Hind" if args.is_empty() => Ok(FamilySpec::Hind),
            "Hind" => Err(Error::Parse(format!("{s:?}: Hind takes no arguments"))),
            "Kab" => numbers(args, 2, s).map(|v| FamilySpec::Kab(v[0], v[1])),
            "P" => numbers(args, 1, s).map(|v| FamilySpec::Path(v[0])),
            "C" => numbers(args, 1, s).map(|v| FamilySpec::Cycle(v[0])),
            "Kq" => numbers(args, 1, s).map(|v| FamilySpec::Kq(v[0])),
            "KqLooped" => numbers(args, 1, s).map(|v| FamilySpec::KqLooped(v[0])),
            "G1" => numbers(args, 2, s).map(|v| FamilySpec::G1 { n: v[0], delta: v[1] }),
            _ => return None,
        };
        Some(spec)
    }

    pub fn build(&self) -> Result<Graph> {
        match *self {
            FamilySpec::Kab(a, b) => families::complete_bipartite(a, b),
            FamilySpec::Path(k) => families::path(k),
            FamilySpec::Cycle(k) => families::cycle(k),
            FamilySpec::Kq(q) => families::complete(q, false),
            FamilySpec::KqLooped(q) => families::complete(q, true),
            FamilySpec::Hind => Ok(families::h_ind()),
            FamilySpec::G1 { n, delta } => families::g1(n, delta),
        }
    }
}

/// A parsed specification together with the family it named, if any.
#[derive(Clone, Debug)]
pub struct Spec {
    pub text: String,
    pub graph: Graph,
    pub family: Option<FamilySpec>,
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn first_line(text: &str) -> &str {
    text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("")
}

/// A source graph: family syntax, a file, or inline graph6.
pub fn source(s: &str) -> Result<Spec> {
    if let Some(f) = FamilySpec::parse(s) {
        let f = f?;
        return Ok(Spec { text: s.to_string(), graph: f.build()?, family: Some(f) });
    }
    let path = Path::new(s);
    let graph = if path.is_file() {
        let text = read_file(path)?;
        from_graph6(first_line(&text)).or_else(|_| from_h_format(&text))?
    } else {
        from_graph6(s)?
    };
    Ok(Spec { text: s.to_string(), graph, family: None })
}

/// A target graph: family syntax, a file (H-format, else graph6), or inline
/// graph6. Loops are permitted.
pub fn target(s: &str) -> Result<Spec> {
    if let Some(f) = FamilySpec::parse(s) {
        let f = f?;
        return Ok(Spec { text: s.to_string(), graph: f.build()?.as_target(), family: Some(f) });
    }
    let path = Path::new(s);
    let graph = if path.is_file() {
        let text = read_file(path)?;
        match from_h_format(&text) {
            Ok(h) => h,
            Err(h_err) => from_graph6(first_line(&text)).map_err(|_| h_err)?.as_target(),
        }
    } else {
        from_graph6(s)?.as_target()
    };
    Ok(Spec { text: s.to_string(), graph, family: None })
}

/// Compact one-line edge list, e.g. `2:0-0,0-1`.
pub fn label(h: &Graph) -> String {
    let edges: Vec<String> = h.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
    format!("{}:{}", h.vertex_count(), edges.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_syntax() {
        assert_eq!(FamilySpec::parse("Kab:2,4").unwrap().unwrap(), FamilySpec::Kab(2, 4));
        assert_eq!(FamilySpec::parse("G1:12,3").unwrap().unwrap(), FamilySpec::G1 { n: 12, delta: 3 });
        assert_eq!(FamilySpec::parse("Hind").unwrap().unwrap(), FamilySpec::Hind);
        assert!(FamilySpec::parse("Kab:2").unwrap().is_err());
        assert!(FamilySpec::parse("P:x").unwrap().is_err());
        assert!(FamilySpec::parse("Cl").is_none());
    }

    #[test]
    fn sources_and_targets() {
        let s = source("Cl").unwrap();
        assert_eq!(s.graph.edge_count(), 4);
        assert!(s.family.is_none());
        let t = target("KqLooped:2").unwrap();
        assert_eq!(t.graph.loop_count(), 2);
        assert_eq!(label(&target("Hind").unwrap().graph), "2:0-0,0-1");
        assert!(source("not a graph!").is_err());
    }

    #[test]
    fn files() {
        let dir = std::env::temp_dir().join(format!("homext-spec-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let h = dir.join("h.txt");
        std::fs::write(&h, "2\n0 0\n0 1\n").unwrap();
        assert_eq!(target(h.to_str().unwrap()).unwrap().graph, families::h_ind());
        let g = dir.join("g.g6");
        std::fs::write(&g, "Cl\n").unwrap();
        assert_eq!(source(g.to_str().unwrap()).unwrap().graph.edge_count(), 4);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
