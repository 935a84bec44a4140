use std::process::{Command, Output};

use platonic_geodesics::report::{ReportDocument, NO_SELF_GEODESICS};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_platonic-geodesics"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_cube_reports_no_self_geodesics() {
    let o = run(&[
        "verify",
        "--solid",
        "cube",
        "--bound-sq",
        "1024",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc = ReportDocument::from_json(&stdout(&o)).unwrap();
    let verdict = doc.verdict.unwrap();
    assert!(verdict.holds);
    assert_eq!(verdict.summary, NO_SELF_GEODESICS);
    assert_eq!(verdict.self_geodesics, 0);
    assert_eq!(verdict.record_count, doc.records.len());
    assert!(doc
        .records
        .iter()
        .all(|r| r.witness.as_ref().is_some_and(|w| w.valid)));
}

#[test]
fn escalating_dodecahedron_search_succeeds() {
    let o = run(&[
        "search",
        "--solid",
        "dodecahedron",
        "--escalate",
        "--format",
        "json",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let doc = ReportDocument::from_json(&stdout(&o)).unwrap();
    let search = doc.search.unwrap();
    assert!(search.escalated && search.self_geodesics > 0);
    assert!(doc
        .records
        .iter()
        .any(|r| r.self_geodesic && r.end_vertex == doc.start.vertex));
}

#[test]
fn non_primitive_trace_is_rejected() {
    let o = run(&["trace", "--solid", "cube", "--displacement", "2,2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("vertex"));
}

#[test]
fn bad_arguments_exit_with_usage() {
    assert_eq!(run(&["verify", "--solid", "cube"]).status.code(), Some(1));
    assert_eq!(
        run(&["verify", "--solid", "cube", "--bound-sq", "-4"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["enumerate", "--solid", "dodecahedron", "--bound-sq", "16"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&[
            "trace",
            "--solid",
            "cube",
            "--start-face",
            "6",
            "--displacement",
            "1,2"
        ])
        .status
        .code(),
        Some(1)
    );
}

#[test]
fn search_without_records_signals_a_finding() {
    let o = run(&["search", "--solid", "cube", "--bound-sq", "1/2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_does_not_depend_on_job_count() {
    for solid in ["tetrahedron", "icosahedron"] {
        let args = |jobs: &'static str| {
            [
                "--jobs",
                jobs,
                "verify",
                "--solid",
                solid,
                "--bound-sq",
                "196",
                "--format",
                "json",
            ]
        };
        let one = run(&args("1"));
        let four = run(&args("4"));
        assert_eq!(one.status.code(), Some(0));
        assert_eq!(one.stdout, four.stdout);
    }
}

#[test]
fn writes_to_out_file() {
    let dir = std::env::temp_dir().join(format!("pg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let svg = dir.join("cube.svg");
    let json = dir.join("trace.json");
    let o = run(&[
        "render",
        "--solid",
        "cube",
        "--displacement",
        "2,3",
        "--out",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        std::fs::read_to_string(&svg)
            .unwrap()
            .matches("<polygon")
            .count(),
        4
    );
    let o = run(&[
        "trace",
        "--solid",
        "octahedron",
        "--displacement",
        "1,2",
        "--format",
        "json",
        "--out",
        json.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&json)
        .unwrap()
        .contains("\"command\": \"trace\""));
    std::fs::remove_dir_all(&dir).unwrap();
}
