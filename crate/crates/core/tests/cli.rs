use std::process::Command;

use serde_json::Value;

fn homext(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_homext")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn record(stdout: &str) -> Value {
    let start = stdout.find('{').expect("JSON record");
    serde_json::from_str(&stdout[start..]).unwrap()
}

#[test]
fn count_prints_decimal_then_record() {
    let (code, out, _) = homext(&["count", "Kab:2,4", "Hind"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("19"));
    let r = record(&out);
    assert_eq!(r["command"], "count");
    assert_eq!(r["outputs"]["hom"], "19");
    assert_eq!(r["outputs"]["method"], "complete_bipartite");
}

#[test]
fn count_reads_files() {
    let dir = std::env::temp_dir().join(format!("homext-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let h = dir.join("h.txt");
    std::fs::write(&h, "2\n0 0\n0 1\n").unwrap();
    let g = dir.join("g.g6");
    // C_4.
    std::fs::write(&g, "Cl\n").unwrap();
    let (code, out, _) = homext(&["count", g.to_str().unwrap(), h.to_str().unwrap()]);
    assert_eq!(code, 0);
    // Independent sets of C_4.
    assert_eq!(out.lines().next(), Some("7"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn large_counts_are_exact_strings() {
    let (code, out, _) = homext(&["count", "P:200", "KqLooped:3"]);
    assert_eq!(code, 0);
    // Every map into the fully looped triangle is a homomorphism.
    let want = num_bigint::BigUint::from(3u32).pow(200).to_string();
    assert_eq!(out.lines().next(), Some(want.as_str()));
}

#[test]
fn usage_and_cap_errors() {
    let (code, _, err) = homext(&["count", "Kab:x", "Hind"]);
    assert_eq!(code, 64);
    assert!(err.contains("error"));
    assert_eq!(homext(&["count"]).0, 64);
    assert_eq!(homext(&["search", "--n", "12", "--delta", "2", "--h", "Hind"]).0, 65);
    assert_eq!(homext(&["--version"]).0, 0);
}

#[test]
fn search_exit_codes_and_csv() {
    let dir = std::env::temp_dir().join(format!("homext-csv-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("out.csv");
    let (code, out, _) = homext(&["search", "--n", "6", "--delta", "2", "--h", "Hind", "--csv", csv.to_str().unwrap()]);
    assert_eq!(code, 0);
    let r = record(&out);
    assert_eq!(r["outputs"]["kab_is_unique_maximizer"], true);
    assert_eq!(r["outputs"]["maximizers"][0]["hom"], "19");
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("graph6,hom"));
    assert_eq!(lines.count() as u64, r["outputs"]["family_size"].as_u64().unwrap());
    std::fs::remove_dir_all(&dir).unwrap();

    assert_eq!(homext(&["search", "--n", "6", "--delta", "2", "--h", "Kq:4"]).0, 2);
    let (code, out, _) = homext(&["search", "--n", "5", "--delta", "4", "--h", "P:3"]);
    assert_eq!(code, 2);
    assert_eq!(record(&out)["outputs"]["family_size"], 1);
}

#[test]
fn verify_reports_cases() {
    let (code, out, _) = homext(&["verify", "cn-k4", "--n", "8"]);
    assert_eq!(code, 0);
    let r = record(&out);
    assert_eq!(r["outputs"]["table"][0]["cycle_count"], "6564");
    assert_eq!(r["outputs"]["table"][0]["kab_count"], "3684");

    // K_4 is not maximized by K_{2,4}.
    let (code, out, _) = homext(&["verify", "thm1", "--n", "6", "--h", "Kq:4"]);
    assert_eq!(code, 2);
    assert_eq!(record(&out)["outputs"]["failed"], 1);

    // Regular targets are refused by the path lemma.
    let (code, _, err) = homext(&["verify", "lemma-path", "--h", "Kq:3"]);
    assert_eq!(code, 64);
    assert!(err.contains("non-regular"));

    let (code, _, _) = homext(&["verify", "lemma-endpoint", "--h", "KqLooped:2"]);
    assert_eq!(code, 64);
}

#[test]
fn chrompoly_closed_forms_agree() {
    let direct = record(&homext(&["chrompoly", "Kab:2,4"]).1);
    let closed = record(&homext(&["chrompoly", "Kab:2,4", "--closed-form"]).1);
    assert_eq!(direct["outputs"]["coefficients"], closed["outputs"]["coefficients"]);
    let direct = record(&homext(&["chrompoly", "G1:9,2"]).1);
    let closed = record(&homext(&["chrompoly", "G1:9,2", "--closed-form"]).1);
    assert_eq!(direct["outputs"]["coefficients"], closed["outputs"]["coefficients"]);
    assert_eq!(homext(&["chrompoly", "P:4", "--closed-form"]).0, 64);
}
