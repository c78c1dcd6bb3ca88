//! The `homext` command line. Every command writes one JSON [`RunRecord`]
//! to stdout (`count` prints the bare decimal count on the line before it).
//!
//! Exit codes: 0 success, 2 when the experiment ran but its headline
//! property was not observed, 64 for usage and parse errors, 65 when a
//! resource cap refused the input, 1 for anything else.

pub mod spec;
pub mod verify;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::chrompoly;
use crate::error::Error;
use crate::extremal::{search_family, Family};
use crate::graph::{self, to_graph6};
use crate::homcount::{self, count_hom, HomCount};
use spec::{FamilySpec, Spec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_OBSERVED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_CAP: i32 = 65;
pub const EXIT_INTERNAL: i32 = 1;

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("specialized count {special} disagrees with generic count {generic}")]
    Mismatch { special: HomCount, generic: HomCount },
    #[error("thread pool: {0}")]
    Pool(String),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Lib(Error::CapExceeded { .. } | Error::TooManyVertices(_)) => EXIT_CAP,
            Failure::Lib(Error::NoConvergence(_)) => EXIT_INTERNAL,
            Failure::Lib(_) => EXIT_USAGE,
            Failure::Io { .. } | Failure::Mismatch { .. } | Failure::Pool(_) => EXIT_INTERNAL,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunRecord {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub outputs: Value,
    pub exit_code: i32,
    pub millis: u64,
}

#[derive(Parser, Debug)]
#[command(name = "homext", version, about = "Exact homomorphism counts and extremal searches")]
struct Cli {
    /// Worker threads for parallel counting (output does not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Report all timings as 0 so that output is byte-identical across runs.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count hom(G, H).
    Count {
        /// Source graph: family syntax, graph6, or a file.
        g: String,
        /// Target graph: family syntax, graph6, or an H-format file.
        h: String,
        /// Also run the generic counter and check it agrees.
        #[arg(long)]
        verbose: bool,
    },
    /// Chromatic polynomial, coefficients lowest degree first.
    Chrompoly {
        /// Source graph spec.
        g: String,
        /// Use the closed form for `Kab:a,b` or `G1:n,δ` specs.
        #[arg(long)]
        closed_form: bool,
        /// For `Kab:δ,n-δ`, the upper bound polynomial instead.
        #[arg(long, conflicts_with = "closed_form")]
        upper_bound: bool,
    },
    /// Bounds and path estimates for one target at (δ, n).
    Bounds {
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        h: String,
        #[arg(long, default_value_t = 200)]
        kmax: usize,
    },
    /// Run one of the finite verification experiments.
    Verify {
        target: VerifyTarget,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        delta: Option<usize>,
        /// Single target; otherwise a scan of connected non-regular targets.
        #[arg(long)]
        h: Option<String>,
        #[arg(long, default_value_t = 50)]
        qmax: u64,
        #[arg(long)]
        kmax: Option<usize>,
        /// Write the `thm2` table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Exhaustive maximizer search over graphs with minimum degree δ.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        h: String,
        /// Include disconnected graphs.
        #[arg(long)]
        all_graphs: bool,
        #[arg(long)]
        k_connected: Option<usize>,
        /// Write every family member and its count as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerifyTarget {
    LemmaPath,
    LemmaEndpoint,
    Eq1,
    Thm1,
    Thm2,
    EdgeAdd,
    CnK4,
}

impl VerifyTarget {
    fn name(self) -> &'static str {
        match self {
            VerifyTarget::LemmaPath => "lemma-path",
            VerifyTarget::LemmaEndpoint => "lemma-endpoint",
            VerifyTarget::Eq1 => "eq1",
            VerifyTarget::Thm1 => "thm1",
            VerifyTarget::Thm2 => "thm2",
            VerifyTarget::EdgeAdd => "edge-add",
            VerifyTarget::CnK4 => "cn-k4",
        }
    }
}

struct Output {
    record: RunRecord,
    preamble: Option<String>,
}

fn record(command: &str, inputs: Value, outputs: Value, exit_code: i32) -> Output {
    let inputs = match inputs {
        Value::Object(m) => m.into_iter().collect(),
        _ => BTreeMap::new(),
    };
    Output {
        record: RunRecord { command: command.to_string(), inputs, outputs, exit_code, millis: 0 },
        preamble: None,
    }
}

fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<(), Failure> {
    let mut text = header.join(",");
    text.push('\n');
    for r in rows {
        text.push_str(&r.join(","));
        text.push('\n');
    }
    std::fs::write(path, text).map_err(|source| Failure::Io { path: path.to_path_buf(), source })
}

/// Paths and cycles are counted from the transfer matrix without building
/// the source graph, so they are not limited by the vertex cap.
fn count_long_walk(family: FamilySpec, g: &str, h: &Spec) -> Result<Option<Output>, Failure> {
    let (method, hom) = match family {
        FamilySpec::Path(k) => ("path", homcount::count_hom_path(k, &h.graph)?),
        FamilySpec::Cycle(k) => ("cycle", homcount::count_hom_cycle(k, &h.graph)?),
        _ => return Ok(None),
    };
    let outputs = json!({ "hom": hom, "method": method });
    let mut out = record("count", json!({ "g": g, "h": h.text }), outputs, EXIT_OK);
    out.preamble = Some(hom.to_string());
    Ok(Some(out))
}

fn cmd_count(g: &str, h: &str, verbose: bool) -> Result<Output, Failure> {
    let h = spec::target(h)?;
    if !verbose {
        if let Some(family) = FamilySpec::parse(g).transpose()? {
            if let Some(out) = count_long_walk(family, g, &h)? {
                return Ok(out);
            }
        }
    }
    let g = spec::source(g)?;
    let special = match g.family {
        Some(FamilySpec::Path(k)) => Some(("path", homcount::count_hom_path(k, &h.graph)?)),
        Some(FamilySpec::Cycle(k)) => Some(("cycle", homcount::count_hom_cycle(k, &h.graph)?)),
        Some(FamilySpec::Kab(a, b)) => match homcount::count_hom_complete_bipartite(a, b, &h.graph) {
            Ok(c) => Some(("complete_bipartite", c)),
            Err(Error::CapExceeded { .. }) => None,
            Err(e) => return Err(e.into()),
        },
        _ => None,
    };
    let (method, hom, generic) = match special {
        Some((method, c)) => {
            let generic = if verbose {
                let generic = count_hom(&g.graph, &h.graph)?;
                if generic != c {
                    return Err(Failure::Mismatch { special: c, generic });
                }
                Some(generic)
            } else {
                None
            };
            (method, c, generic)
        }
        None => ("generic", count_hom(&g.graph, &h.graph)?, None),
    };
    let mut outputs = json!({ "hom": hom, "method": method });
    if let Some(gc) = generic {
        outputs["generic_hom"] = json!(gc);
        outputs["agree"] = json!(true);
    }
    let mut out = record("count", json!({ "g": g.text, "h": h.text }), outputs, EXIT_OK);
    out.preamble = Some(hom.to_string());
    Ok(out)
}

fn cmd_chrompoly(g: &str, closed_form: bool, upper_bound: bool) -> Result<Output, Failure> {
    let g = spec::source(g)?;
    let (method, poly) = match (g.family, closed_form, upper_bound) {
        (Some(FamilySpec::Kab(a, b)), true, _) => ("kab_exact", chrompoly::kab_kq_exact(a, b)?),
        (Some(FamilySpec::G1 { n, delta }), true, _) => ("g1_formula", chrompoly::g1_kq_formula(delta, n)?),
        (Some(FamilySpec::Kab(a, b)), _, true) => ("kab_upper_bound", chrompoly::kab_kq_upper_bound(a, a + b)?),
        (_, true, _) => {
            return Err(Error::Precondition("--closed-form needs a Kab:a,b or G1:n,δ spec".into()).into())
        }
        (_, _, true) => return Err(Error::Precondition("--upper-bound needs a Kab:δ,n-δ spec".into()).into()),
        _ => ("deletion_contraction", chrompoly::chromatic_polynomial(&g.graph)?),
    };
    let outputs = json!({
        "method": method,
        "degree": poly.degree(),
        "coefficients": poly,
        "polynomial": poly.to_string(),
    });
    let inputs = json!({ "g": g.text, "closed_form": closed_form, "upper_bound": upper_bound });
    Ok(record("chrompoly", inputs, outputs, EXIT_OK))
}

fn cmd_bounds(delta: usize, n: usize, h: &str, k_max: usize) -> Result<Output, Failure> {
    let h = spec::target(h)?;
    let hg = &h.graph;
    if delta == 0 || n < 2 * delta {
        return Err(Error::Precondition(format!("need n >= 2*delta >= 2, got n={n}, delta={delta}")).into());
    }
    let sd = homcount::s_delta(hg, delta, false)?;
    let lower = homcount::lower_bound_eq1(delta, n, hg)?;
    let kab = count_hom(&crate::families::complete_bipartite(delta, n - delta)?, hg)?;
    let eligible = graph::is_connected(hg) && !graph::is_regular(hg);
    let ell = if eligible { homcount::find_ell(hg, delta, k_max)? } else { None };
    let endpoint: Option<Vec<_>> = if graph::is_connected(hg) && !homcount::is_endpoint_excluded(hg) {
        Some((4..=12).map(|k| homcount::endpoint_bound_check(hg, k)).collect::<Result<_, _>>()?)
    } else {
        None
    };
    let spectral = if graph::is_connected(hg) { Some(homcount::spectral_margin(hg)?) } else { None };
    let outputs = json!({
        "delta_max": sd.delta_max,
        "s_delta": sd.s,
        "lower_bound_eq1": lower,
        "kab_count": kab,
        "eq1_holds": lower <= kab,
        "connected_nonregular": eligible,
        "ell": ell,
        "endpoint_checks": endpoint,
        "spectral_diagnostic": spectral,
    });
    let inputs = json!({ "delta": delta, "n": n, "h": h.text, "kmax": k_max });
    Ok(record("bounds", inputs, outputs, EXIT_OK))
}

fn cmd_verify(
    target: VerifyTarget,
    params: verify::Params,
    h_text: Option<String>,
    csv: Option<&Path>,
) -> Result<Output, Failure> {
    let outcome = match target {
        VerifyTarget::LemmaPath => verify::lemma_path(&params)?,
        VerifyTarget::LemmaEndpoint => verify::lemma_endpoint(&params)?,
        VerifyTarget::Eq1 => verify::eq1(&params)?,
        VerifyTarget::Thm1 => verify::thm1(&params)?,
        VerifyTarget::Thm2 => verify::thm2(&params)?,
        VerifyTarget::EdgeAdd => verify::edge_add(&params)?,
        VerifyTarget::CnK4 => verify::cn_k4(&params)?,
    };
    if let Some(path) = csv {
        write_csv(path, &["q", "kab_count", "g1_count", "g1_wins"], &outcome.rows)?;
    }
    let inputs = json!({
        "target": target.name(),
        "n": params.n,
        "delta": params.delta,
        "h": h_text,
        "qmax": params.qmax,
        "kmax": params.kmax,
    });
    let code = if outcome.all_pass { EXIT_OK } else { EXIT_NOT_OBSERVED };
    Ok(record("verify", inputs, outcome.outputs, code))
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    n: usize,
    delta: usize,
    h: &str,
    all_graphs: bool,
    k_connected: Option<usize>,
    csv: Option<&Path>,
    no_timing: bool,
) -> Result<Output, Failure> {
    let h = spec::target(h)?;
    let family = Family::new(n, delta, !all_graphs).with_k_connected(k_connected);
    let (mut report, scanned) = search_family(family, &h.graph, &h.text)?;
    if no_timing {
        report.runtime_millis = 0;
    }
    if let Some(path) = csv {
        let rows: Vec<Vec<String>> = scanned
            .iter()
            .map(|(g, c)| Ok(vec![to_graph6(g)?, c.to_string()]))
            .collect::<Result<_, Error>>()?;
        write_csv(path, &["graph6", "hom"], &rows)?;
    }
    let code = if report.kab_is_unique_maximizer { EXIT_OK } else { EXIT_NOT_OBSERVED };
    let inputs = json!({
        "n": n,
        "delta": delta,
        "h": h.text,
        "all_graphs": all_graphs,
        "k_connected": k_connected,
    });
    let outputs = serde_json::to_value(&report).expect("report serializes");
    Ok(record("search", inputs, outputs, code))
}

fn dispatch(cli: Cli) -> Result<Output, Failure> {
    let no_timing = cli.no_timing;
    match cli.command {
        Command::Count { g, h, verbose } => cmd_count(&g, &h, verbose),
        Command::Chrompoly { g, closed_form, upper_bound } => cmd_chrompoly(&g, closed_form, upper_bound),
        Command::Bounds { delta, n, h, kmax } => cmd_bounds(delta, n, &h, kmax),
        Command::Verify { target, n, delta, h, qmax, kmax, csv } => {
            let spec: Option<Spec> = h.as_deref().map(spec::target).transpose()?;
            let params = verify::Params { n, delta, h: spec, qmax, kmax };
            cmd_verify(target, params, h, csv.as_deref())
        }
        Command::Search { n, delta, h, all_graphs, k_connected, csv } => {
            cmd_search(n, delta, &h, all_graphs, k_connected, csv.as_deref(), no_timing)
        }
    }
}

fn execute(cli: Cli) -> Result<Output, Failure> {
    match cli.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Failure::Pool(e.to_string()))?
            .install(|| dispatch(cli)),
        None => dispatch(cli),
    }
}

/// Parse `args` (including the program name), run the command, and return
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let no_timing = cli.no_timing;
    let start = Instant::now();
    match execute(cli) {
        Ok(mut o) => {
            if !no_timing {
                o.record.millis = start.elapsed().as_millis() as u64;
            }
            if let Some(p) = &o.preamble {
                let _ = writeln!(out, "{p}");
            }
            let json = serde_json::to_string_pretty(&o.record).expect("record serializes");
            let _ = writeln!(out, "{json}");
            o.record.exit_code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            f.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("homext").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn count_examples() {
        for (g, h, want) in [("C:8", "Kq:4", "6564"), ("Kab:2,4", "Hind", "19"), ("P:1", "Hind", "2")] {
            let (code, out) = run_str(&["--no-timing", "count", g, h, "--verbose"]);
            assert_eq!(code, 0);
            assert_eq!(out.lines().next(), Some(want));
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_str(&["count", "Kab:2", "Hind"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["--help"]).0, EXIT_OK);
        assert_eq!(run_str(&["search", "--n", "10", "--delta", "2", "--h", "Hind"]).0, EXIT_CAP);
        assert_eq!(run_str(&["search", "--n", "6", "--delta", "2", "--h", "Hind"]).0, EXIT_OK);
        assert_eq!(run_str(&["search", "--n", "6", "--delta", "2", "--h", "Kq:4"]).0, EXIT_NOT_OBSERVED);
        assert_eq!(run_str(&["search", "--n", "5", "--delta", "4", "--h", "P:3"]).0, EXIT_NOT_OBSERVED);
    }

    #[test]
    fn verify_examples() {
        let (code, out) = run_str(&["--no-timing", "verify", "cn-k4", "--n", "8"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"6564\"") && out.contains("\"3684\""));
        let (code, out) = run_str(&["--no-timing", "verify", "thm2", "--delta", "2", "--n", "6", "--qmax", "50"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["outputs"]["crossover_q"], json!(6));
        let (code, out) = run_str(&["--no-timing", "verify", "eq1", "--delta", "2", "--n", "6", "--h", "P:3"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["outputs"]["table"][0]["lower_bound"], json!("16"));
        assert_eq!(v["outputs"]["table"][0]["kab_count"], json!("20"));
    }

    #[test]
    fn chrompoly_coefficients() {
        let (code, out) = run_str(&["--no-timing", "chrompoly", "Kq:3"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["outputs"]["coefficients"], json!(["0", "2", "-3", "1"]));
    }
}
