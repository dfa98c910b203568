//! End-to-end runs of the compiled binary: flag surface, file
//! round-trips, determinism and exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn belief_cmd() -> Command {
    Command::new(env!("CARGO_BIN_EXE_belief"))
}

fn run(args: &[&str]) -> Output {
    belief_cmd().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).to_string()
}

fn write_mass_file(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

const MASS1: &str = r#"{"frame": ["w1", "w2", "w3"],
 "focals": [{"set": [0], "mass": 0.2},
            {"set": [0, 1], "mass": 0.5},
            {"set": [0, 1, 2], "mass": 0.3}]}"#;

const MASS2: &str = r#"{"frame": ["w1", "w2", "w3"],
 "focals": [{"set": [1], "mass": 0.1},
            {"set": [0, 1], "mass": 0.6},
            {"set": [0, 1, 2], "mass": 0.3}]}"#;

#[test]
fn generate_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let out1 = dir.path().join("a");
    let out2 = dir.path().join("b");
    for out in [&out1, &out2] {
        let output = run(&[
            "generate",
            "--frame-size",
            "4",
            "--n",
            "20",
            "--scenario",
            "independent",
            "--seed",
            "7",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(output.status.success());
    }
    for suffix in ["-s1.json", "-s2.json"] {
        let a = std::fs::read(format!("{}{suffix}", out1.display())).unwrap();
        let b = std::fs::read(format!("{}{suffix}", out2.display())).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_empty());
    }
}

#[test]
fn analyze_reports_both_directions() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d");
    assert!(run(&[
        "generate",
        "--frame-size",
        "3",
        "--n",
        "30",
        "--scenario",
        "positive",
        "--seed",
        "5",
        "--out",
        out.to_str().unwrap(),
    ])
    .status
    .success());
    let s1 = format!("{}-s1.json", out.display());
    let s2 = format!("{}-s2.json", out.display());
    let output = run(&["analyze", &s1, &s2, "--seed", "5"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("S1 vs S2"));
    assert!(text.contains("S2 vs S1"));
    assert!(text.contains("matched pairs"));

    // CSV format carries a header and two data rows.
    let csv_out = run(&["analyze", &s1, &s2, "--seed", "5", "--format", "csv"]);
    let csv_text = stdout(&csv_out);
    assert_eq!(csv_text.lines().count(), 3);
    assert!(csv_text.starts_with("direction,"));

    // Misaligned datasets exit with the data-mismatch code.
    let other = dir.path().join("e");
    assert!(run(&[
        "generate",
        "--frame-size",
        "4",
        "--n",
        "30",
        "--scenario",
        "independent",
        "--seed",
        "5",
        "--out",
        other.to_str().unwrap(),
    ])
    .status
    .success());
    let mismatched = run(&[
        "analyze",
        &s1,
        &format!("{}-s2.json", other.display()),
        "--seed",
        "5",
    ]);
    assert_eq!(mismatched.status.code(), Some(4));

    // Asking for more clusters than objects is a parameter error.
    let too_many = run(&["analyze", &s1, &s2, "--clusters", "99"]);
    assert_eq!(too_many.status.code(), Some(2));
}

#[test]
fn adjust_reproduces_the_reference_marginal() {
    let dir = tempfile::tempdir().unwrap();
    let mass = write_mass_file(dir.path(), "m1.json", MASS1);
    let out = dir.path().join("adjusted.json");
    let output = run(&[
        "adjust",
        "--mass",
        mass.to_str().unwrap(),
        "--I",
        "0.26",
        "--P",
        "0.56",
        "--N",
        "0.18",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let adjusted = belief::io::mass_from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let f = adjusted.frame().clone();
    let expected = [
        (f.empty_set(), 0.18),
        (f.singleton(0).unwrap(), 0.052),
        (f.subset_of(&[0, 1]).unwrap(), 0.13),
        (f.full_set(), 0.638),
    ];
    for (s, v) in expected {
        assert!((adjusted.mass(s) - v).abs() < 1e-9);
    }

    // Certain independence leaves the mass untouched.
    let identity = run(&["adjust", "--mass", mass.to_str().unwrap(), "--I", "1"]);
    assert!(identity.status.success());
    let untouched = parse_mass(&identity);
    assert_eq!(untouched.mass(f.singleton(0).unwrap()), 0.2);
    assert_eq!(untouched.mass(f.subset_of(&[0, 1]).unwrap()), 0.5);
    assert_eq!(untouched.mass(f.full_set()), 0.3);

    // The trace flag dumps the product-space intermediates with
    // pair-element labels.
    let trace_path = dir.path().join("trace.json");
    let traced = run(&[
        "adjust",
        "--mass",
        mass.to_str().unwrap(),
        "--I",
        "0.26",
        "--P",
        "0.56",
        "--N",
        "0.18",
        "--trace",
        trace_path.to_str().unwrap(),
    ]);
    assert!(traced.status.success());
    let trace_text = std::fs::read_to_string(&trace_path).unwrap();
    assert!(trace_text.contains("w1|I"));
    assert!(trace_text.contains("\"combined\""));
    assert!(trace_text.contains("\"marginal\""));

    // Missing parameterization is a flag error.
    let bad = run(&["adjust", "--mass", mass.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
    // Out-of-range rates are a flag error.
    let bad = run(&[
        "adjust",
        "--mass",
        mass.to_str().unwrap(),
        "--alpha",
        "1.5",
        "--beta",
        "0",
        "--gamma",
        "0",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

fn parse_mass(output: &Output) -> belief::MassFunction {
    belief::io::mass_from_json(&stdout(output)).expect("valid mass JSON on stdout")
}

#[test]
fn combine_applies_the_rules() {
    let dir = tempfile::tempdir().unwrap();
    let m1 = write_mass_file(dir.path(), "m1.json", MASS1);
    let m2 = write_mass_file(dir.path(), "m2.json", MASS2);
    let output = run(&[
        "combine",
        m1.to_str().unwrap(),
        m2.to_str().unwrap(),
        "--rule",
        "conjunctive",
    ]);
    assert!(output.status.success());
    let combined = parse_mass(&output);
    let f = combined.frame().clone();
    let expected = [
        (f.empty_set(), 0.02),
        (f.singleton(0).unwrap(), 0.18),
        (f.singleton(1).unwrap(), 0.08),
        (f.subset_of(&[0, 1]).unwrap(), 0.63),
        (f.full_set(), 0.09),
    ];
    for (s, v) in expected {
        assert!((combined.mass(s) - v).abs() < 1e-12);
    }

    // The vacuous mass is neutral.
    let vacuous = write_mass_file(
        dir.path(),
        "vac.json",
        r#"{"frame": ["w1", "w2", "w3"], "focals": [{"set": [0, 1, 2], "mass": 1.0}]}"#,
    );
    let neutral = run(&[
        "combine",
        m1.to_str().unwrap(),
        vacuous.to_str().unwrap(),
        "--rule",
        "conjunctive",
    ]);
    let roundtrip = parse_mass(&neutral);
    assert_eq!(roundtrip.mass(f.singleton(0).unwrap()), 0.2);
    assert_eq!(roundtrip.mass(f.subset_of(&[0, 1]).unwrap()), 0.5);
    assert_eq!(roundtrip.mass(f.full_set()), 0.3);

    // Mean rule averages per focal.
    let mean = run(&[
        "combine",
        m1.to_str().unwrap(),
        m2.to_str().unwrap(),
        "--rule",
        "mean",
    ]);
    let averaged = parse_mass(&mean);
    assert!((averaged.mass(f.subset_of(&[0, 1]).unwrap()) - 0.55).abs() < 1e-12);
    assert!((averaged.mass(f.singleton(1).unwrap()) - 0.05).abs() < 1e-12);

    // Frames must agree.
    let small = write_mass_file(
        dir.path(),
        "small.json",
        r#"{"frame": ["a", "b"], "focals": [{"set": [0, 1], "mass": 1.0}]}"#,
    );
    let mismatch = run(&[
        "combine",
        m1.to_str().unwrap(),
        small.to_str().unwrap(),
        "--rule",
        "conjunctive",
    ]);
    assert_eq!(mismatch.status.code(), Some(4));
}

#[test]
fn sweep_emits_the_closed_form_grid() {
    let dir = tempfile::tempdir().unwrap();
    let dogmatic = write_mass_file(
        dir.path(),
        "dogmatic.json",
        r#"{"frame": ["w1", "w2", "w3"],
            "focals": [{"set": [0], "mass": 0.6}, {"set": [0, 1], "mass": 0.4}]}"#,
    );
    let out = dir.path().join("sweep.csv");
    let output = run(&[
        "sweep",
        "--mass",
        dogmatic.to_str().unwrap(),
        "--alpha",
        "1",
        "--grid",
        "0:1:0.25",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert_eq!(
        header,
        "alpha,beta,gamma,m({}),m({w1}),m({w1 w2}),m({w1 w2 w3})"
    );
    // 5 beta values x 5 gamma values at fixed alpha.
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 25);
    // The empty-set column is exactly beta*gamma for a conflict-free
    // mass at full attenuation.
    for row in rows {
        let cells: Vec<f64> = row.split(',').map(|c| c.parse().unwrap()).collect();
        let (beta, gamma, empty) = (cells[1], cells[2], cells[3]);
        assert!((empty - beta * gamma).abs() < 1e-12);
    }

    // Malformed grids are flag errors.
    let bad = run(&[
        "sweep",
        "--mass",
        dogmatic.to_str().unwrap(),
        "--grid",
        "0:1",
    ]);
    assert_eq!(bad.status.code(), Some(2));
    let bad = run(&[
        "sweep",
        "--mass",
        dogmatic.to_str().unwrap(),
        "--grid",
        "1:0:0.1",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn reproduce_tables_pass_offline() {
    for table in ["2", "3", "4"] {
        let output = run(&["reproduce", "--table", table]);
        assert!(
            output.status.success(),
            "table {table}: {}",
            stdout(&output)
        );
        assert!(stdout(&output).contains("checks passed"));
    }
    let bad = run(&["reproduce", "--table", "9"]);
    assert_eq!(bad.status.code(), Some(2));
    let conflict = run(&["reproduce", "--table", "2", "--figure", "1"]);
    assert_eq!(conflict.status.code(), Some(2));
}
