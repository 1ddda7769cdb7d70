//! CLI golden files and exit codes. Set `UPDATE_GOLDEN=1` to rewrite the
//! expected outputs after an intentional format change.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use relcalc::cli::{run_from, Report, Status};

fn dir(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join(name)
}

fn fixtures(name: &str) -> Vec<PathBuf> {
    let mut files: Vec<_> = fs::read_dir(dir(name))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
}

/// Fixture names are `<command>.<case>.json`.
fn command_of(path: &Path) -> String {
    let name = path.file_name().unwrap().to_string_lossy();
    name.split('.').next().unwrap().to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["relcalc"];
    full.extend_from_slice(args);
    let code = run_from(full, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn binary() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_relcalc"));
    cmd.env_remove("RELCALC_TOL");
    cmd
}

fn check_golden(golden: &Path, actual: &str) {
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(golden, actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(golden).unwrap_or_else(|_| {
        panic!(
            "missing golden {}; rerun with UPDATE_GOLDEN=1",
            golden.display()
        )
    });
    assert_eq!(actual, expected, "output differs from {}", golden.display());
}

#[test]
fn json_goldens() {
    for f in fixtures("fixtures") {
        let cmd = command_of(&f);
        let (code, out, err) = run(&[&cmd, f.to_str().unwrap()]);
        assert!(
            code == 0 || code == 2,
            "{}: exit {code}, {err}",
            f.display()
        );
        check_golden(&dir("golden").join(f.file_name().unwrap()), &out);
    }
}

#[test]
fn text_goldens() {
    for case in [
        "lss-solve.classical",
        "krein-classify.neutral",
        "proj-build.overlap",
    ] {
        let f = dir("fixtures").join(format!("{case}.json"));
        let cmd = command_of(&f);
        let (code, out, _) = run(&[&cmd, f.to_str().unwrap(), "--format", "text"]);
        assert_eq!(code, 0);
        check_golden(&dir("golden").join(format!("{case}.txt")), &out);
    }
}

#[test]
fn output_is_deterministic_and_round_trips() {
    for f in fixtures("fixtures") {
        let cmd = command_of(&f);
        let (_, first, _) = run(&[&cmd, f.to_str().unwrap()]);
        let (_, second, _) = run(&[&cmd, f.to_str().unwrap()]);
        assert_eq!(first, second);
        let report = Report::from_json(&first).unwrap();
        assert_eq!(report.command, cmd);
        assert_eq!(report.to_json(), first);
    }
}

#[test]
fn verify_reports_small_oracle_delta() {
    for f in fixtures("fixtures") {
        let cmd = command_of(&f);
        let (_, out, err) = run(&[&cmd, f.to_str().unwrap(), "--verify"]);
        let report = Report::from_json(&out).unwrap_or_else(|_| panic!("{}: {err}", f.display()));
        if report.status == Status::NoSolution && cmd == "lss-solve" {
            continue;
        }
        let delta = report.diagnostics["oracle_delta"].as_f64().unwrap();
        assert!(delta <= 1e-8, "{}: oracle delta {delta}", f.display());
    }
}

#[test]
fn exit_code_dichotomy() {
    for f in fixtures("fixtures") {
        let expected = if f.to_string_lossy().contains("outside-domain") {
            2
        } else {
            0
        };
        let status = binary().arg(command_of(&f)).arg(&f).output().unwrap();
        assert_eq!(status.status.code(), Some(expected), "{}", f.display());
    }
    for f in fixtures("fixtures-invalid") {
        let status = binary().arg(command_of(&f)).arg(&f).output().unwrap();
        assert_eq!(status.status.code(), Some(1), "{}", f.display());
        assert!(String::from_utf8_lossy(&status.stderr).starts_with("error: "));
    }
    let usage = binary().arg("no-such-command").output().unwrap();
    assert_eq!(usage.status.code(), Some(1));
}

#[test]
fn error_messages_locate_the_problem() {
    let cases = [
        (
            "lss-solve.dimension.json",
            "'b' has dimension 3 but 'lss-solve.relation' has dimension 2",
        ),
        ("lss-solve.syntax.json", "line 4 column 1"),
        ("spline.missing-section.json", "missing section 'spline'"),
        ("shorted.not-psd.json", "not positive semidefinite"),
        ("relation-analyze.undefined.json", "undefined relation 'T'"),
    ];
    for (name, needle) in cases {
        let f = dir("fixtures-invalid").join(name);
        let (code, _, err) = run(&[&command_of(&f), f.to_str().unwrap()]);
        assert_eq!(code, 1);
        assert!(err.contains(needle), "{name}: {err}");
    }
}

#[test]
fn documented_answers() {
    let report = |case: &str| {
        let f = dir("fixtures").join(format!("{case}.json"));
        let (_, out, _) = run(&[&command_of(&f), f.to_str().unwrap()]);
        Report::from_json(&out).unwrap()
    };
    let lss = report("lss-solve.classical");
    assert_eq!(lss.results["min_value"].as_f64(), Some(1.0));
    let krein = report("krein-classify.neutral");
    assert_eq!(krein.results["degenerate"].as_bool(), Some(true));
    assert_eq!(krein.results["regular"].as_bool(), Some(false));
    let id = report("relation-analyze.identity");
    for (part, dim) in [("dom", 2), ("ran", 2), ("ker", 0), ("mul", 0)] {
        assert_eq!(id.results[part]["dim"].as_u64(), Some(dim));
    }
    let outside = report("relation-analyze.outside-domain");
    assert_eq!(outside.status, Status::NoSolution);
}

#[test]
fn batch_mode_is_sorted_and_reports_worst_exit() {
    let fixture_dir = dir("fixtures");
    let (code, out, _) = run(&["lss-solve", "--batch", fixture_dir.to_str().unwrap()]);
    // fixtures for other commands lack an lss-solve section
    assert_eq!(code, 1);
    let items: Vec<serde_json::Value> = serde_json::from_str(&out).unwrap();
    assert_eq!(items.len(), fixtures("fixtures").len());
    let names: Vec<_> = items
        .iter()
        .map(|i| i["file"].as_str().unwrap().to_string())
        .collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);

    let tmp = tempfile::tempdir().unwrap();
    for case in ["lss-solve.classical", "lss-solve.seminorm"] {
        fs::copy(
            fixture_dir.join(format!("{case}.json")),
            tmp.path().join(format!("{case}.json")),
        )
        .unwrap();
    }
    let (code, out, _) = run(&["lss-solve", "--batch", tmp.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    let items: Vec<serde_json::Value> = serde_json::from_str(&out).unwrap();
    assert!(items.iter().all(|i| i["exit_code"] == 0));
}

#[test]
fn tolerance_flag_and_environment() {
    let f = dir("fixtures").join("lss-solve.classical.json");
    let abs = |output: std::process::Output| {
        let r = Report::from_json(&String::from_utf8(output.stdout).unwrap()).unwrap();
        r.tolerance.abs_eps
    };
    assert_eq!(
        abs(binary().args(["lss-solve"]).arg(&f).output().unwrap()),
        1e-10
    );
    let env = binary()
        .args(["lss-solve"])
        .arg(&f)
        .env("RELCALC_TOL", "1e-6")
        .output()
        .unwrap();
    assert_eq!(abs(env), 1e-6);
    let both = binary()
        .args(["lss-solve"])
        .arg(&f)
        .args(["--tol", "1e-7"])
        .env("RELCALC_TOL", "1e-6")
        .output()
        .unwrap();
    assert_eq!(abs(both), 1e-7);
    let bad = binary()
        .args(["lss-solve"])
        .arg(&f)
        .env("RELCALC_TOL", "abc")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}
