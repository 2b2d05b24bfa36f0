use std::path::{Path, PathBuf};
use std::process::Command;

use vstar_cli::report::Document;
use vstar_cli::{canonical_json, run, Outcome, CACHE_ENV};
use vstar_core::onepar::BigradedRing;
use vstar_core::{fixtures, GroebnerConfig};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn cli_fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn vstar(args: &[&str]) -> Outcome {
    let mut all = vec!["vstar"];
    all.extend_from_slice(args);
    run(all)
}

fn structured(out: &Outcome) -> Document {
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn validate_empty_presentation() {
    let out = vstar(&["validate", &fixture("empty.json"), "--no-cache"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("valid"));
}

#[test]
fn vr_on_steenrod_reports_both_rings() {
    let out = vstar(&["vr", &fixture("s1.json"), "-r", "2", "--no-cache"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("] / (X0_14^2, X0_12^3, X0_12^2*X1_12)"));
    assert!(out.stdout.contains("solved X1_13 = X0_12^2"));
    assert!(out.stdout.contains("F-isomorphic to\nF_2[\n  X1_12  (2, 1 - 2|t|)\n  X1_14  (2, 3 - 2|t|)\n] / ()"));
}

#[test]
fn height_below_presentation_height_is_rejected() {
    let out = vstar(&["vr", &fixture("s1.json"), "--height", "1", "--no-cache"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("height"));
}

#[test]
fn zero_bounds_are_rejected() {
    for flag in ["--max-spairs", "--depth", "--max-weight", "--height"] {
        let out = vstar(&["vr", &fixture("s1.json"), flag, "0"]);
        assert_eq!(out.code, 3, "{flag}");
    }
}

#[test]
fn exit_codes() {
    let missing = vstar(&["validate", "/nonexistent/x.json", "--no-cache"]);
    assert_eq!(missing.code, 3);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ \"prime\": 2, ").unwrap();
    assert_eq!(vstar(&["validate", bad.to_str().unwrap(), "--no-cache"]).code, 3);

    let typo = dir.path().join("typo.json");
    let mut file = fixtures::s1_file();
    file.relations.push("xi3^2".into());
    std::fs::write(&typo, serde_json::to_string(&file).unwrap()).unwrap();
    assert_eq!(vstar(&["validate", typo.to_str().unwrap(), "--no-cache"]).code, 3);

    let bound = vstar(&["vr", &fixture("stodd.json"), "--max-spairs", "1", "--no-cache"]);
    assert_eq!(bound.code, 2, "{}", bound.stderr);

    let not_prime = dir.path().join("four.json");
    let mut file = fixtures::s1_file();
    file.prime = 4;
    std::fs::write(&not_prime, serde_json::to_string(&file).unwrap()).unwrap();
    assert_eq!(vstar(&["validate", not_prime.to_str().unwrap(), "--no-cache"]).code, 1);
}

#[test]
fn broken_coproduct_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    let mut file = fixtures::s1_file();
    file.coproduct.insert("xi2".into(), "xi2#1 + xi1#xi1 + 1#xi2".into());
    std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
    let out = vstar(&["validate", path.to_str().unwrap(), "--no-cache"]);
    assert_eq!(out.code, 1, "{}{}", out.stdout, out.stderr);
    assert!(out.stdout.contains("FAIL"));
}

#[test]
fn structured_output_is_canonical_and_carries_bounds() {
    let cases: Vec<Vec<String>> = vec![
        vec!["validate".into(), fixture("s1.json")],
        vec!["embed".into(), fixture("s1.json")],
        vec!["vr".into(), fixture("w2.json")],
        vec!["cohomology".into(), fixture("s1.json"), "--depth".into(), "3".into()],
        vec![
            "psi-match".into(),
            fixture("s1.json"),
            "--cohomology".into(),
            cli_fixture("cohomology/s1.json"),
        ],
    ];
    for mut args in cases {
        args.extend(["--format".into(), "structured".into(), "--no-cache".into()]);
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = vstar(&refs);
        assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
        let value: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(canonical_json(&value), out.stdout);
        let bounds = &value["bounds"];
        assert!(bounds["max_spairs"].is_u64() && bounds["groebner_weight"].is_u64(), "{args:?}");
    }
}

#[test]
fn cohomology_bounds_are_applied() {
    let out = vstar(&[
        "cohomology",
        &fixture("s1.json"),
        "--depth",
        "2",
        "--max-weight",
        "10",
        "--format",
        "structured",
        "--no-cache",
    ]);
    let Document::Cohomology(doc) = structured(&out) else { panic!() };
    assert_eq!(doc.totals.len(), 3);
    assert_eq!((doc.bounds.depth, doc.bounds.max_weight), (Some(2), Some(10)));
}

#[test]
fn latex_output() {
    let out = vstar(&["vr", &fixture("w1_p2.json"), "-r", "2", "--format", "latex", "--no-cache"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("(X^{0}_{13})^{2}X^{1}_{12}"), "{}", out.stdout);
}

#[test]
fn psi_match_with_assignments() {
    let w2 = fixture("w2.json");
    let h = cli_fixture("cohomology/w2.json");
    let out = vstar(&["psi-match", &w2, "--cohomology", &h, "--no-cache"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("w ↦ X_16^2"));

    let swapped = [
        "z1=X_13", "z2=X_12", "z3=X_14", "z4=X_15", "w=X_16^2",
    ];
    let mut args = vec!["psi-match", &w2, "--cohomology", &h, "--no-cache"];
    for a in &swapped {
        args.extend(["--assign", a]);
    }
    let out = vstar(&args);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("FAIL z1*z4 + z2*z3"));
}

fn cached_vr(cache: &Path, extra: &[&str]) -> Outcome {
    let mut args = vec![
        "vr",
        "--cache-dir",
        cache.to_str().unwrap(),
        "--format",
        "structured",
    ];
    let path = fixture("stodd.json");
    args.push(&path);
    args.extend_from_slice(extra);
    vstar(&args)
}

#[test]
fn second_run_hits_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let first = cached_vr(dir.path(), &[]);
    let second = cached_vr(dir.path(), &[]);
    assert!(first.stderr.starts_with("cache miss"));
    assert!(second.stderr.starts_with("cache hit"));
    assert_eq!(first.stdout, second.stdout);

    let changed = cached_vr(dir.path(), &["--groebner-weight", "63"]);
    assert!(changed.stderr.starts_with("cache miss"));
}

fn cache_entries(dir: &Path) -> Vec<PathBuf> {
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect()
}

#[test]
fn corrupt_entry_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let first = cached_vr(dir.path(), &[]);
    let [entry] = cache_entries(dir.path()).try_into().unwrap();
    std::fs::write(&entry, "{\"kind\": \"vr\", \"bou").unwrap();
    let second = cached_vr(dir.path(), &[]);
    assert!(second.stderr.contains("unreadable"));
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read_to_string(&entry).unwrap(), first.stdout);
}

#[test]
fn cache_round_trip_preserves_the_ring() {
    let cfg = GroebnerConfig::default();
    let dir = tempfile::tempdir().unwrap();
    cached_vr(dir.path(), &[]);
    let [entry] = cache_entries(dir.path()).try_into().unwrap();
    let Document::Vr(doc) = serde_json::from_str(&std::fs::read_to_string(entry).unwrap()).unwrap()
    else {
        panic!()
    };
    let fresh = onepar_ring();
    let loaded = BigradedRing::from_document(&doc.ring, &cfg).unwrap();
    assert_eq!(loaded.to_document(), fresh.to_document());
    assert_eq!(loaded.relations(), fresh.relations());
    assert_eq!(loaded.hilbert(20), fresh.hilbert(20));
}

fn onepar_ring() -> BigradedRing {
    vstar_core::onepar::vr_group(&fixtures::stodd(), 1, &GroebnerConfig::default()).unwrap()
}

#[test]
fn concurrent_processes_share_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let outputs: Vec<Outcome> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..4).map(|_| s.spawn(|| cached_vr(dir.path(), &[]))).collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    assert!(outputs.iter().all(|o| o.code == 0 && o.stdout == outputs[0].stdout));
    assert_eq!(cache_entries(dir.path()).len(), 1);
    assert_eq!(cached_vr(dir.path(), &[]).stdout, outputs[0].stdout);
}

#[test]
fn binary_reads_the_cache_directory_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_vstar");
    let go = || {
        Command::new(bin)
            .args(["vr", &fixture("w2.json")])
            .env(CACHE_ENV, dir.path())
            .output()
            .unwrap()
    };
    let (a, b) = (go(), go());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&b.stderr).starts_with("cache hit"));

    let off = Command::new(bin)
        .args(["vr", &fixture("w2.json"), "--no-cache"])
        .env(CACHE_ENV, dir.path())
        .output()
        .unwrap();
    assert!(off.stderr.is_empty());
    assert_eq!(off.stdout, a.stdout);

    let code = Command::new(bin).args(["vr", "/missing.json"]).output().unwrap();
    assert_eq!(code.status.code(), Some(3));
}

#[test]
fn reproduce_detects_a_changed_golden_file() {
    let golden = tempfile::tempdir().unwrap();
    let g = golden.path().to_str().unwrap();
    assert_eq!(vstar(&["reproduce-paper", "--golden-dir", g, "--bless", "--no-cache"]).code, 0);
    let path = golden.path().join("vr_w2.json");
    let text = std::fs::read_to_string(&path).unwrap().replace("X_16", "X_17");
    std::fs::write(&path, text).unwrap();
    std::fs::remove_file(golden.path().join("psi_s1.json")).unwrap();
    let out = vstar(&["reproduce-paper", "--golden-dir", g, "--no-cache"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("vr_w2                  differs  line"));
    assert!(out.stdout.contains("psi_s1                 missing"));
    assert!(out.stdout.contains("vr_s1                  match"));
}
