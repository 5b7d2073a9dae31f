//! End-to-end runs of the installed binary: exit codes, report bytes,
//! thread-count invariance, and the printed diagnostics.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hankelet_core::audit::AuditReport;

fn exe() -> &'static str {
    env!("CARGO_BIN_EXE_hankelet")
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hankelet-cli-{}-{tag}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run_in(dir: &Path, threads: Option<&str>, args: &[&str]) -> Output {
    let mut cmd = Command::new(exe());
    cmd.args(args).current_dir(dir);
    match threads {
        Some(t) => cmd.env("HANKELET_THREADS", t),
        None => cmd.env_remove("HANKELET_THREADS"),
    };
    cmd.output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// Two measure indices, one wavelet, two profiles, one check per cell
/// class; small enough to audit in a couple of seconds.
const SMALL: &str = r#"
[battery]
alphas = [0.0, 0.5]

[[battery.wavelets]]
order = 2
width = 2.0

[[battery.functions]]
family = "gauss"

[[battery.functions]]
family = "polygauss"

[[checks]]
id = "HEIS_HANKEL_PROD"

[[checks]]
id = "LINF_BOUND"

[[checks]]
id = "ENTROPY_HWT"

[[checks]]
id = "SCALAR_ENTROPY_LEMMA"
p = 2.5
"#;

#[test]
fn audit_writes_matching_reports_and_exits_zero() {
    let dir = scratch("audit-ok");
    std::fs::write(dir.join("small.toml"), SMALL).unwrap();
    let out = run_in(&dir, Some("2"), &["audit", "small.toml"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("13 checks:"), "{text}");
    assert!(text.contains("wrote"), "{text}");

    // the JSON document round-trips field for field
    let json = std::fs::read_to_string(dir.join("audit_report.json")).unwrap();
    let report: AuditReport = serde_json::from_str(&json).unwrap();
    assert_eq!(report.entries.len(), 13);
    assert_eq!(report.summary.failed, 0);
    let reparsed: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(serde_json::to_value(&report).unwrap(), reparsed);

    // the CSV carries one row per entry under a fixed header
    let csv = std::fs::read_to_string(dir.join("audit_summary.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert!(lines[0].starts_with("id,alpha,wavelet,function,"), "{}", lines[0]);
    assert_eq!(lines.len(), 1 + report.entries.len());
    assert!(csv.contains(",pass,"), "{csv}");
}

#[test]
fn audit_is_byte_identical_across_thread_counts() {
    let mut blobs = Vec::new();
    for threads in ["1", "2"] {
        let dir = scratch(&format!("audit-t{threads}"));
        std::fs::write(dir.join("small.toml"), SMALL).unwrap();
        let out = run_in(&dir, Some(threads), &["audit", "small.toml"]);
        assert!(out.status.success(), "stderr: {}", stderr(&out));
        blobs.push((
            std::fs::read(dir.join("audit_report.json")).unwrap(),
            std::fs::read(dir.join("audit_summary.csv")).unwrap(),
        ));
    }
    assert_eq!(blobs[0].0, blobs[1].0, "JSON reports depend on the worker count");
    assert_eq!(blobs[0].1, blobs[1].1, "CSV summaries depend on the worker count");
}

#[test]
fn audit_exits_one_when_a_tolerance_is_overrun() {
    // the dispersion sum at this pair sits 2e-15 under its bound, so a
    // 1e-16 tolerance must flag it without any numerical failure
    let doc = r#"
[battery]
alphas = [0.5]
wavelets = []

[[battery.functions]]
family = "gauss"

[[checks]]
id = "HEIS_HANKEL_SUM"

[tolerances]
mu = 1e-16
"#;
    let dir = scratch("audit-fail");
    std::fs::write(dir.join("tight.toml"), doc).unwrap();
    let out = run_in(&dir, Some("1"), &["audit", "tight.toml"]);
    assert_eq!(out.status.code(), Some(1), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("1 failed"), "{}", stdout(&out));
    let csv = std::fs::read_to_string(dir.join("audit_summary.csv")).unwrap();
    assert!(csv.contains(",fail,"), "{csv}");
}

#[test]
fn refused_preconditions_are_reported_but_do_not_fail_the_run() {
    // admissibility / norm = 1/2 for this wavelet, so the entropy bound
    // refuses it; a refusal is a verdict, not a failure
    let doc = r#"
[battery]
alphas = [0.0]

[[battery.wavelets]]
order = 2
width = 1.0

[[battery.functions]]
family = "gauss"

[[checks]]
id = "ENTROPY_HWT"
"#;
    let dir = scratch("audit-refused");
    std::fs::write(dir.join("refused.toml"), doc).unwrap();
    let out = run_in(&dir, Some("1"), &["audit", "refused.toml"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("1 precondition_failed"), "{}", stdout(&out));
    let csv = std::fs::read_to_string(dir.join("audit_summary.csv")).unwrap();
    assert!(csv.contains(",precondition_failed,"), "{csv}");
}

#[test]
fn config_problems_are_usage_errors_with_named_keys() {
    let dir = scratch("audit-bad-config");
    // absent file
    let out = run_in(&dir, Some("1"), &["audit", "no-such-file.toml"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("error: "), "{}", stderr(&out));
    // weight at the allowed boundary
    let doc = "[battery]\nalphas = [0.5]\n[[checks]]\nid = \"PITT_HWT\"\nbeta = 1.5\n";
    std::fs::write(dir.join("edge.toml"), doc).unwrap();
    let out = run_in(&dir, Some("1"), &["audit", "edge.toml"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("beta < alpha + 1"), "{}", stderr(&out));
    // misspelled key
    std::fs::write(dir.join("typo.toml"), "[grid]\nradios = 3.0\n").unwrap();
    let out = run_in(&dir, Some("1"), &["audit", "typo.toml"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("radios"), "{}", stderr(&out));
}

#[test]
fn bad_thread_caps_are_usage_errors() {
    let dir = scratch("threads");
    std::fs::write(dir.join("small.toml"), SMALL).unwrap();
    for bad in ["0", "none", "-2"] {
        let out = run_in(&dir, Some(bad), &["audit", "small.toml"]);
        assert_eq!(out.status.code(), Some(2), "cap {bad:?}");
        assert!(stderr(&out).contains("HANKELET_THREADS"), "{}", stderr(&out));
    }
}

#[test]
fn transform_tabulates_a_gaussian_with_its_own_accuracy_line() {
    let dir = scratch("transform");
    let out = run_in(
        &dir,
        None,
        &["transform", "--family", "gauss(0.8)", "--alpha", "0.5", "--out", "table.csv"],
    );
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("max deviation from the closed-form image"), "{}", stdout(&out));
    let csv = std::fs::read_to_string(dir.join("table.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "xi,hf");
    assert_eq!(lines.len(), 1 + 512 + 1, "header, one row per node, one footer");
    let footer = lines.last().unwrap();
    let dev: f64 = footer.rsplit(' ').next().unwrap().parse().unwrap();
    assert!(dev <= 1e-8, "closed-form deviation {dev:.3e}");
}

#[test]
fn transform_zero_family_writes_a_zero_column() {
    let dir = scratch("transform-zero");
    let out = run_in(
        &dir,
        None,
        &["transform", "--family", "zero", "--alpha", "0", "--out", "zero.csv"],
    );
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let csv = std::fs::read_to_string(dir.join("zero.csv")).unwrap();
    for line in csv.lines().skip(1) {
        assert!(line.ends_with(",0.00000000000e0"), "{line}");
    }
}

#[test]
fn transform_rejects_an_unknown_family() {
    let dir = scratch("transform-bad");
    let out = run_in(
        &dir,
        None,
        &["transform", "--family", "sinc", "--alpha", "0", "--out", "x.csv"],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("sinc"), "{}", stderr(&out));
}

#[test]
fn wavelet_info_prints_both_columns_and_the_verdict() {
    let dir = scratch("info");
    let out = run_in(&dir, None, &["wavelet-info", "--k", "2", "--sigma", "2", "--alpha", "0"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("admissibility"), "{text}");
    assert!(text.contains("3.12500000000e-2"), "{text}");
    assert!(text.contains("1.56250000000e-2"), "{text}");
    assert!(text.contains("2.00000000000e0 -> OK"), "{text}");

    // an inadmissibly narrow width still reports, with the verdict
    // flipped and a clean exit
    let out = run_in(&dir, None, &["wavelet-info", "--k", "2", "--sigma", "1", "--alpha", "0"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("5.00000000000e-1 -> FAILED"), "{text}");

    // order zero has no admissible spectrum at all
    let out = run_in(&dir, None, &["wavelet-info", "--k", "0", "--sigma", "1", "--alpha", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("order"), "{}", stderr(&out));
}
