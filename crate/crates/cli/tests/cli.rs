use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use funnelgroup::mobius::IsometryClass;
use funnelgroup_cli::report::{
    DimensionReport, LimitSetReport, PantsFile, TopologyReport, VerifyReport,
};
use serde::de::DeserializeOwned;
use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_funnelgroup");

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("FUNNELGROUP_WORD_CAP")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

struct Fixture {
    dir: TempDir,
    worked: PathBuf,
    one: PathBuf,
    gamma2: PathBuf,
}

fn fixture() -> Fixture {
    let dir = tempfile::tempdir().unwrap();
    let worked = write(
        &dir,
        "worked.json",
        r#"{"rank": 2, "intervals": [[2, 8], [10, 12]]}"#,
    );
    let one = write(&dir, "one.json", r#"{"rank": 1, "intervals": [[2, 8]]}"#);
    let gamma2 = write(
        &dir,
        "gamma2.json",
        r#"{"generators": [[1, 2, 0, 1], [1, 0, 2, 1]]}"#,
    );
    Fixture {
        dir,
        worked,
        one,
        gamma2,
    }
}

/// Parses a report into its typed struct and checks that re-serializing
/// gives back the same bytes.
fn typed<T: DeserializeOwned + serde::Serialize>(text: &str) -> T {
    let value: T = serde_json::from_str(text).unwrap();
    let again = serde_json::to_string_pretty(&value).unwrap() + "\n";
    assert_eq!(again, text);
    value
}

#[test]
fn verify_worked_config_passes() {
    let f = fixture();
    let out = run(&["verify", s(&f.worked)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: VerifyReport = typed(std::str::from_utf8(&out.stdout).unwrap());
    assert!(report.passed);
    assert!(report.freeness.free);
    assert_eq!(report.freeness.depth, 8);
    let class = report.classification.unwrap();
    assert!(class.fuchsian_schottky);
    assert!(class.purely_hyperbolic.all_hyperbolic);
    let d = class.dimension_estimate.unwrap();
    assert!((d - 0.3277).abs() < 1e-3, "{d}");
}

#[test]
fn gamma_two_is_rejected_at_its_first_generator() {
    let f = fixture();
    let out = run(&["verify", "--raw-generators", s(&f.gamma2)]);
    assert_eq!(code(&out), 1);
    let report: VerifyReport = typed(std::str::from_utf8(&out.stdout).unwrap());
    let class = report.classification.unwrap();
    assert!(!class.fuchsian_schottky);
    let off = class.purely_hyperbolic.first_offending.unwrap();
    assert_eq!(off.word.to_string(), "+1");
    assert_eq!(off.class, IsometryClass::Parabolic);
}

#[test]
fn tangent_config_fails_checks() {
    let f = fixture();
    let tangent = write(
        &f.dir,
        "tangent.json",
        r#"{"rank": 2, "intervals": [[1, 2], [2.0000000001, 3]]}"#,
    );
    let out = run(&["verify", s(&tangent)]);
    assert_eq!(code(&out), 1);
    let report: VerifyReport = typed(std::str::from_utf8(&out.stdout).unwrap());
    assert!(!report.verification.unwrap().non_tangent);
}

#[test]
fn extended_group_checks_orientation_subgroup() {
    let f = fixture();
    let ext = write(
        &f.dir,
        "ext.json",
        r#"{"rank": 2, "intervals": [[2, 8], [10, 12]], "reversing": [true, false]}"#,
    );
    let out = run(&["verify", s(&ext)]);
    assert_eq!(code(&out), 0);
    let report: VerifyReport = typed(std::str::from_utf8(&out.stdout).unwrap());
    assert!(report.orientation_subgroup.unwrap().all_hyperbolic);
    assert!(report.classification.is_none());
}

#[test]
fn input_errors_exit_with_two() {
    let f = fixture();
    let cases = [
        (
            "overlap.json",
            r#"{"rank": 2, "intervals": [[2, 8], [7, 12]]}"#,
        ),
        (
            "unknown.json",
            r#"{"rank": 1, "intervals": [[2, 8]], "bogus": 1}"#,
        ),
        ("count.json", r#"{"rank": 3, "intervals": [[2, 8]]}"#),
        ("zero.json", r#"{"rank": 1, "intervals": [[0, 8]]}"#),
        (
            "flags.json",
            r#"{"rank": 1, "intervals": [[2, 8]], "reversing": [true, true]}"#,
        ),
        ("syntax.json", "{"),
    ];
    for (name, body) in cases {
        let path = write(&f.dir, name, body);
        assert_eq!(code(&run(&["verify", s(&path)])), 2, "{name}");
    }
    assert_eq!(code(&run(&["verify", "/nonexistent/config.json"])), 2);
    assert_eq!(code(&run(&["verify"])), 2);
    assert_eq!(
        code(&run(&["dimension", s(&f.worked), "--resolution", "2"])),
        2
    );
    assert_eq!(
        code(&run(&[
            "dimension",
            s(&f.worked),
            "--method",
            "boxcount",
            "--depth",
            "2"
        ])),
        2
    );
    assert_eq!(code(&run(&["pants", "--rank", "1"])), 2);
    assert_eq!(code(&run(&["topology", s(&f.worked), "--rank", "3"])), 2);
}

#[test]
fn word_cap_variable_is_validated() {
    let f = fixture();
    let bad = Command::new(BIN)
        .args(["limitset", s(&f.worked)])
        .env("FUNNELGROUP_WORD_CAP", "many")
        .output()
        .unwrap();
    assert_eq!(code(&bad), 2);

    // 4·3^5 = 972 words at depth 6 exceed a cap of 500. An explicit depth
    // over the cap is an estimation failure, not an input error.
    let capped = Command::new(BIN)
        .args(["limitset", s(&f.worked), "--depth", "6"])
        .env("FUNNELGROUP_WORD_CAP", "500")
        .output()
        .unwrap();
    assert_eq!(code(&capped), 1);
}

#[test]
fn limitset_cell_counts() {
    let f = fixture();
    let out = run(&["limitset", s(&f.worked), "--depth", "5"]);
    assert_eq!(code(&out), 0);
    let report: LimitSetReport = typed(std::str::from_utf8(&out.stdout).unwrap());
    let counts: Vec<usize> = report.layers.iter().map(|l| l.cells).collect();
    assert_eq!(counts, [4, 12, 36, 108, 324]);
    assert_eq!(report.cells.len(), 324);
    assert_eq!(report.sample_points.len(), 324);
    assert!(report.contraction_ratio.unwrap() < 1.0);
    assert!(report.total_lengths.windows(2).all(|p| p[1] < p[0]));

    let out = run(&["limitset", s(&f.one), "--depth", "3"]);
    let report: LimitSetReport = typed(std::str::from_utf8(&out.stdout).unwrap());
    assert!(report.layers.iter().all(|l| l.cells == 2));
    assert!(report.nielsen.is_none());
}

#[test]
fn dimension_report() {
    let f = fixture();
    let out = run(&["dimension", s(&f.worked), "--depth", "8"]);
    assert_eq!(code(&out), 0);
    let report: DimensionReport = typed(std::str::from_utf8(&out.stdout).unwrap());
    let p = report.pressure.unwrap().value;
    let b = report.box_counting.unwrap().value;
    assert!((p - b).abs() <= 0.05);
    assert_eq!(report.cross_method_gap, Some((p - b).abs()));
    assert!(report.dimension_at_most_half);

    let out = run(&["dimension", s(&f.one), "--method", "pressure"]);
    let report: DimensionReport = typed(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(report.pressure.unwrap().value, 0.0);
    assert!(report.box_counting.is_none());
}

#[test]
fn topology_and_pants_reports() {
    let out = run(&["topology", "--rank", "6"]);
    assert_eq!(code(&out), 0);
    let report: TopologyReport = typed(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!((report.topology.genus, report.topology.funnels), (3, 1));
    assert_eq!(report.classical.funnel_counts(), [30, 9, 2]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("30 or 9 or 2"));

    let out = run(&["pants", "--rank", "3"]);
    assert_eq!(code(&out), 0);
    let file: PantsFile = typed(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(file.pants.num_pants, 4);
    assert_eq!(file.pants.twist_count, 7);
    assert_eq!(file.pants.signature, [1, 4]);

    let f = fixture();
    let out = run(&["topology", s(&f.worked)]);
    assert_eq!(code(&out), 0);
    let report: TopologyReport = typed(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(report.rank, 2);
    assert!(report.ends.is_some());

    let out = run(&["pants", s(&f.worked)]);
    let file: PantsFile = typed(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(file.pants.curve_lengths.len(), 3);
    assert_eq!(file.collars.len(), 3);
}

#[test]
fn svg_structure() {
    let f = fixture();
    let svg = f.dir.path().join("worked.svg");
    assert_eq!(
        code(&run(&[
            "render",
            s(&f.worked),
            "--depth",
            "3",
            "--svg",
            s(&svg)
        ])),
        0
    );
    let text = fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<?xml"));
    assert!(text.contains("version=\"1.1\""));
    assert!(text.trim_end().ends_with("</svg>"));

    let semicircles = text
        .split("<g id=\"semicircles\"")
        .nth(1)
        .unwrap()
        .split("</g>")
        .next()
        .unwrap();
    assert_eq!(semicircles.matches("<path").count(), 4);
    // Upper half-plane arcs always use sweep flag 1.
    for line in text.lines().filter(|l| l.contains(" A ")) {
        assert!(line.contains(" 0 0 1 "), "{line}");
    }
    // Every depth-2 geodesic is drawn. At depth 3 the cells near the small
    // interval fall below the drawable radius and are skipped.
    let groups: Vec<usize> = text
        .split("data-depth=")
        .skip(1)
        .map(|g| g.split("</g>").next().unwrap().matches("<path").count())
        .collect();
    assert_eq!(groups[0], 12);
    assert!(groups[1] > 0 && groups[1] <= 36);
    assert_eq!(text.matches("<circle").count(), 36);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let f = fixture();
    let commands: Vec<Vec<&str>> = vec![
        vec!["verify", s(&f.worked)],
        vec!["verify", "--raw-generators", s(&f.gamma2)],
        vec!["limitset", s(&f.worked), "--depth", "4"],
        vec!["dimension", s(&f.worked)],
        vec!["topology", "--rank", "9"],
        vec!["pants", s(&f.worked)],
        vec!["render", s(&f.worked), "--depth", "4"],
    ];
    for args in commands {
        let (a, b) = (run(&args), run(&args));
        assert_eq!(a.status.code(), b.status.code(), "{args:?}");
        assert!(!a.stdout.is_empty(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn out_file_matches_stdout() {
    let f = fixture();
    let path = f.dir.path().join("report.json");
    let out = run(&["verify", s(&f.worked), "--out", s(&path)]);
    assert!(out.stdout.is_empty());
    assert_eq!(
        fs::read(&path).unwrap(),
        run(&["verify", s(&f.worked)]).stdout
    );
}
