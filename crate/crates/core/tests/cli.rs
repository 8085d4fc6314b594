use std::path::{Path, PathBuf};
use std::process::Command;

use qentropy::cli::{format_matrix, parse_sweep_csv};
use qentropy::linalg::ComplexMatrix;
use qentropy::states::{werner_state, WernerParam};

fn qentropy(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qentropy"))
        .args(args)
        .output()
        .expect("run qentropy");
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn write_matrix(dir: &Path, name: &str, m: &ComplexMatrix) -> String {
    let path = dir.join(name);
    std::fs::write(&path, format_matrix(m)).unwrap();
    path.to_string_lossy().into_owned()
}

fn field(report: &str, key: &str) -> f64 {
    report
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no `{key}` in {report}"))
        .parse()
        .unwrap()
}

struct Files {
    _dir: tempfile::TempDir,
    root: PathBuf,
    mixed: String,
    werner1: String,
    pure: String,
    qubit: String,
}

fn files() -> Files {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path().to_path_buf();
    let mixed = write_matrix(&root, "mixed.txt", &ComplexMatrix::identity(4).scale(0.25));
    let werner = werner_state(WernerParam::new(1.0).unwrap())
        .state
        .into_matrix();
    let werner1 = write_matrix(&root, "werner1.txt", &werner);
    let pure = write_matrix(
        &root,
        "pure.txt",
        &ComplexMatrix::from_diagonal(&[0.0, 1.0, 0.0, 0.0]),
    );
    let qubit = write_matrix(&root, "qubit.txt", &ComplexMatrix::identity(2).scale(0.5));
    Files {
        _dir: dir,
        root,
        mixed,
        werner1,
        pure,
        qubit,
    }
}

#[test]
fn validate_reports() {
    let f = files();
    let (code, out, _) = qentropy(&["validate", &f.mixed]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: valid"));
    assert!(out.contains("3/2"));

    let (_, out, _) = qentropy(&["validate", &f.mixed, "--labeling", "two-qubit"]);
    assert!(out.contains("(1/2, -1/2)"));

    let low = f.root.join("low.txt");
    std::fs::write(&low, "2\n0.45+0i 0+0i\n0+0i 0.45+0i\n").unwrap();
    let (code, out, _) = qentropy(&["validate", low.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("TraceNotOne"));

    let bad = f.root.join("bad.txt");
    std::fs::write(&bad, "2\n0.5+0i 0+0i\n0+0i 0.5+0.0\n").unwrap();
    let (code, _, err) = qentropy(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");

    let (code, _, _) = qentropy(&["validate", "/nonexistent/matrix.txt"]);
    assert_eq!(code, 2);
}

#[test]
fn entropy_values() {
    let f = files();
    let value = |args: &[&str]| -> f64 {
        let (code, out, err) = qentropy(args);
        assert_eq!(code, 0, "{err}");
        let line = out.trim();
        // At least 12 significant digits.
        assert!(line.split('e').next().unwrap().len() >= 13, "{line}");
        line.parse().unwrap()
    };
    assert!((value(&["entropy", &f.mixed, "--q", "2", "--kind", "tsallis"]) - 0.75).abs() < 1e-14);
    assert!(
        (value(&["entropy", &f.mixed, "--q", "2", "--kind", "renyi"]) - 4f64.ln()).abs() < 1e-14
    );
    assert!((value(&["entropy", &f.mixed, "--kind", "von-neumann"]) - 4f64.ln()).abs() < 1e-14);
    for kind in ["tsallis", "renyi", "von-neumann"] {
        assert!(value(&["entropy", &f.pure, "--q", "3", "--kind", kind]).abs() < 1e-14);
    }

    assert_eq!(qentropy(&["entropy", &f.mixed, "--q", "-1"]).0, 3);
    assert_eq!(qentropy(&["entropy", &f.mixed, "--kind", "renyi"]).0, 3);
    assert_eq!(qentropy(&["entropy", &f.mixed, "--kind", "bogus"]).0, 3);
}

#[test]
fn qinfo_reports() {
    let f = files();
    let (code, out, _) = qentropy(&["qinfo", &f.werner1, "--q", "2", "--check"]);
    assert_eq!(code, 0);
    assert!((field(&out, "I_T") - 1.0).abs() < 1e-14);
    assert!(field(&out, "renyi_lhs").abs() < 1e-14);
    assert!(out.contains("subadditivity: satisfied"));

    let (code, out, _) = qentropy(&["qinfo", &f.mixed, "--q", "2", "--labeling", "two-qubit"]);
    assert_eq!(code, 0);
    assert!(out.contains("two-qubit state"));
    assert!((field(&out, "I_T") - 0.25).abs() < 1e-15);
    assert!((field(&out, "renyi_lhs") - 0.75).abs() < 1e-15);

    let (code, _, err) = qentropy(&["qinfo", &f.qubit, "--q", "2"]);
    assert_eq!(code, 1);
    assert!(err.contains("dimension"));

    let (code, out, _) = qentropy(&["qinfo", &f.mixed, "--q", "0.5", "--check"]);
    assert_eq!(code, 4);
    assert!(out.contains("not guaranteed"));
    assert!(out.contains("VIOLATED"));

    // Without --check the same state only reports.
    assert_eq!(qentropy(&["qinfo", &f.mixed, "--q", "0.5"]).0, 0);
}

#[test]
fn sweep_writes_csv_and_script() {
    let f = files();
    let csv = f.root.join("sweep.csv");
    let plot = f.root.join("sweep.gp");
    let (code, _, err) = qentropy(&[
        "sweep",
        "--p-min",
        "-1/3",
        "--p-max",
        "1",
        "--steps",
        "100",
        "--q-list",
        "1.000001,2,5",
        "--out",
        csv.to_str().unwrap(),
        "--gnuplot",
        plot.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("p,q,I_T,S_joint,S_first,S_second\n"));
    let rows = parse_sweep_csv(&text).unwrap();
    assert_eq!(rows.len(), 300);
    let at = |p: f64, q: f64| rows.iter().find(|r| r.p == p && r.q == q).unwrap().i_q;
    assert!((at(1.0, 2.0) - 1.0).abs() < 1e-14);
    assert!(rows.windows(2).all(|w| (w[0].q, w[0].p) < (w[1].q, w[1].p)));
    assert!(std::fs::read_to_string(&plot)
        .unwrap()
        .contains("sweep.csv"));

    let grid = f.root.join("grid.csv");
    qentropy(&[
        "sweep",
        "--p-min",
        "0",
        "--p-max",
        "1",
        "--steps",
        "3",
        "--q-list",
        "2",
        "--out",
        grid.to_str().unwrap(),
    ]);
    let rows = parse_sweep_csv(&std::fs::read_to_string(&grid).unwrap()).unwrap();
    assert_eq!(rows[0].p, 0.0);
    assert!((rows[0].i_q - 0.25).abs() < 1e-15);

    let out = csv.to_str().unwrap();
    for args in [
        vec![
            "sweep", "--p-min", "-0.5", "--p-max", "1", "--steps", "10", "--q-list", "2", "--out",
            out,
        ],
        vec![
            "sweep", "--p-min", "0", "--p-max", "1.5", "--steps", "10", "--q-list", "2", "--out",
            out,
        ],
        vec![
            "sweep", "--p-min", "1", "--p-max", "0", "--steps", "10", "--q-list", "2", "--out", out,
        ],
        vec![
            "sweep", "--p-min", "0", "--p-max", "1", "--steps", "0", "--q-list", "2", "--out", out,
        ],
        vec![
            "sweep", "--p-min", "0", "--p-max", "1", "--steps", "5", "--q-list", "2,0", "--out",
            out,
        ],
    ] {
        assert_eq!(qentropy(&args).0, 3, "{args:?}");
    }
}

#[test]
fn fuzz_summary() {
    let args = [
        "fuzz", "--seed", "1", "--count", "1000", "--q-list", "2", "--tol", "1e-10",
    ];
    let (code, first, _) = qentropy(&args);
    assert_eq!(code, 0);
    assert!(first.contains("violations: 0"));
    let (_, second, _) = qentropy(&args);
    assert_eq!(first, second);

    let (code, _, err) = qentropy(&["fuzz", "--seed", "1", "--count", "10", "--q-list", "2,0.5"]);
    assert_eq!(code, 3);
    assert!(err.contains("q must exceed 1"));
    assert_eq!(
        qentropy(&["fuzz", "--seed", "1", "--count", "0", "--q-list", "2"]).0,
        3
    );
}

#[test]
fn help_exits_cleanly() {
    let (code, out, _) = qentropy(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("sweep"));
    assert_eq!(qentropy(&["frobnicate"]).0, 3);
}
