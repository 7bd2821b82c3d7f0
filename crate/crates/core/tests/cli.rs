use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_alpha-cheeger"));
    c.env_remove("ALPHA_CHEEGER_SEGMENTS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

/// The value after `key: ` on its own report line.
fn field<'a>(report: &'a str, key: &str) -> &'a str {
    report
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no {key} in\n{report}"))
}

#[test]
fn exit_codes_distinguish_success_usage_and_gaps() {
    assert_eq!(run(&["rect", "--length", "20", "--alpha", "1.3"]).status.code(), Some(0));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["rect", "--alpha", "1.3"]).status.code(), Some(2));
    assert_eq!(run(&["rect", "--length", "20", "--alpha", "2"]).status.code(), Some(2));
    assert_eq!(run(&["rect", "--length", "1", "--alpha", "1.3"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let gap = run(&[
        "rect", "--length", "20", "--alpha", "1.3", "--verify", "--segments", "20", "--tolerance", "1e-12",
    ]);
    assert_eq!(gap.status.code(), Some(3));
    assert!(stdout(&gap).contains("verification: FAILED"));
}

#[test]
fn verification_passes_at_default_resolution() {
    let o = run(&["rect", "--length", "3", "--alpha", "1.5", "--verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let gap: f64 = field(&stdout(&o), "gap_rel").parse().unwrap();
    assert!(gap < 1e-6);
}

#[test]
fn straight_segment_matches_the_rectangle() {
    let dir = tempfile::tempdir().unwrap();
    let seg = write(dir.path(), "seg.json", r#"{"primitive":"segment","length":20}"#);
    let strip = run(&["strip", seg.to_str().unwrap(), "--alpha", "1.3"]);
    let rect = run(&["rect", "--length", "20", "--alpha", "1.3"]);
    assert_eq!(strip.status.code(), Some(0), "{}", stderr(&strip));
    assert_eq!(stdout(&strip), stdout(&rect));
}

#[test]
fn thin_circle_prefers_the_stadium() {
    let dir = tempfile::tempdir().unwrap();
    let circle = write(dir.path(), "circle.json", r#"{"primitive":"circle","radius":5}"#);
    let o = run(&["strip", circle.to_str().unwrap(), "--alpha", "1.9"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(field(&stdout(&o), "case"), "annulus_family");
}

#[test]
fn overcurved_spine_names_the_violated_bound() {
    let dir = tempfile::tempdir().unwrap();
    let arc = write(dir.path(), "arc.json", r#"{"primitive":"arc","radius":0.8,"length":2}"#);
    let o = run(&["strip", arc.to_str().unwrap(), "--alpha", "1.5"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("curvature_bound"), "{err}");
    assert!(err.contains("1.2"), "{err}");
}

#[test]
fn svg_output_is_well_formed() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("set.svg");
    let o = run(&["rect", "--length", "20", "--alpha", "1.5", "--svg", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert!(svg.contains(r#"version="1.1""#));
    assert!(svg.trim_end().ends_with("</svg>"));
    // every opened element is closed
    let opened = svg.matches("<svg").count() + svg.matches("<g ").count() + svg.matches("<style").count();
    let closed = svg.matches("</svg>").count() + svg.matches("</g>").count() + svg.matches("</style>").count();
    assert_eq!(opened, closed);
    for line in svg.lines().filter(|l| l.starts_with("<path")) {
        assert!(line.ends_with("/>"), "{line}");
        assert_eq!(line.matches('"').count() % 2, 0);
    }
}

#[test]
fn single_cell_sweep_agrees_with_rect() {
    let rect = stdout(&run(&["rect", "--length", "3", "--alpha", "1.5"]));
    let sweep = stdout(&run(&["sweep", "--alphas", "1.5", "--lengths", "3", "--format", "csv"]));
    let mut lines = sweep.lines();
    assert_eq!(
        lines.next().unwrap(),
        "L,alpha,case,h_alpha,radius_or_M,area,perimeter,unique,oracle_h,gap"
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert!(lines.next().is_none());
    assert_eq!(row[..3], ["3", "1.5", field(&rect, "case")]);
    assert_eq!(row[3], field(&rect, "h_alpha"));
    assert_eq!(row[4], field(&rect, "r"));
    assert_eq!(row[5], field(&rect, "area"));
    assert_eq!(row[6], field(&rect, "perimeter"));
    assert_eq!(row[7], field(&rect, "unique"));
    assert_eq!(row[8..], ["", ""]);
}

#[test]
fn sweep_is_byte_for_byte_deterministic() {
    let args = [
        "sweep", "--alphas", "1.1:1.9:0.2", "--lengths", "2,5,13", "--format", "csv", "--verify", "--segments", "50",
    ];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0), "{}", stderr(&first));
    assert_eq!(stdout(&first).lines().count(), 1 + 5 * 3);
    assert_eq!(first.stdout, run(&args).stdout);
}

#[test]
fn environment_sets_the_default_resolution() {
    let args = ["rect", "--length", "3", "--alpha", "1.5", "--verify"];
    let coarse = bin().args(args).env("ALPHA_CHEEGER_SEGMENTS", "8").output().unwrap();
    let fine = run(&args);
    let gap = |o: &Output| field(&stdout(o), "gap_rel").parse::<f64>().unwrap();
    assert!(gap(&coarse) > 100.0 * gap(&fine));
    // the flag wins over the variable
    let flagged = bin()
        .args(args)
        .args(["--segments", "10000"])
        .env("ALPHA_CHEEGER_SEGMENTS", "8")
        .output()
        .unwrap();
    assert_eq!(flagged.stdout, fine.stdout);
    let bad = bin().args(args).env("ALPHA_CHEEGER_SEGMENTS", "lots").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("ALPHA_CHEEGER_SEGMENTS"));
}
