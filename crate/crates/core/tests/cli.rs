mod common;

use std::fs;

use common::{check_goldens, fixtures, tbm};
use tbm_core::capacity::{self, Capacity};
use tbm_core::cli::files::{self, UncertaintyFile};

fn stdout(out: &std::process::Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &std::process::Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn scratch(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("tbm-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn goldens_match() {
    let problems = check_goldens();
    assert!(problems.is_empty(), "{}", problems.join("\n"));
}

#[test]
fn pignistic_worked_example() {
    let out = tbm(["pignistic", "--input", "example.json"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("a\t0.65\n"));
    assert!(text.contains("b\t0.25\n"));
    assert!(text.contains("c\t0.1\n"));
}

#[test]
fn open_world_total_shows_deficit() {
    let text = stdout(&tbm(["pignistic", "--input", "open_world.json"]));
    assert!(text.contains("total\t0.9\n"), "{text}");
    assert!(text.contains("deficit\t0.1\n"), "{text}");
}

#[test]
fn pignistic_writes_probability_file() {
    let path = scratch("betp.json");
    let out = tbm(["pignistic", "--input", "example.json", "--output"])
        .status
        .success();
    assert!(!out, "--output without a value is a usage error");
    let out = tbm([
        "pignistic",
        "--input",
        "example.json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let file = UncertaintyFile::parse(&fs::read_to_string(&path).unwrap()).unwrap();
    let values: Vec<f64> = file.entries.iter().map(|e| e.value).collect();
    assert_eq!(file.kind, files::FileKind::Probability);
    assert!((values[0] - 0.65).abs() < 1e-12);
    assert!((values[1] - 0.25).abs() < 1e-12);
    assert!((values[2] - 0.10).abs() < 1e-12);
}

#[test]
fn mass_bel_mass_roundtrip() {
    let bel = scratch("example.bel.json");
    let back = scratch("example.back.json");
    let run = |args: &[&str]| assert!(tbm(args).status.success());
    run(&[
        "convert",
        "--input",
        "example.json",
        "--to",
        "bel",
        "--output",
        bel.to_str().unwrap(),
    ]);
    run(&[
        "convert",
        "--input",
        bel.to_str().unwrap(),
        "--to",
        "mass",
        "--output",
        back.to_str().unwrap(),
    ]);
    let original =
        UncertaintyFile::parse(&fs::read_to_string(fixtures().join("example.json")).unwrap())
            .unwrap();
    let again = UncertaintyFile::parse(&fs::read_to_string(&back).unwrap()).unwrap();
    let a = files::load(&original, true).unwrap().basic_masses();
    let b = files::load(&again, true).unwrap().basic_masses();
    for (x, y) in a.masses().iter().zip(b.masses()) {
        assert!((x - y).abs() < 1e-9);
    }
}

/// Upper capacities (plausibility, possibility) compared through their dual.
fn lower(cr: Capacity) -> Capacity {
    if cr.kind().is_upper() {
        capacity::dual(&cr)
    } else {
        cr
    }
}

#[test]
fn every_target_roundtrips_through_capacity() {
    for input in [
        "example.json",
        "open_world.json",
        "possibility.json",
        "probability.json",
    ] {
        let original =
            UncertaintyFile::parse(&fs::read_to_string(fixtures().join(input)).unwrap()).unwrap();
        let base = lower(files::load(&original, true).unwrap().capacity);
        for target in ["mass", "bel", "pl", "v", "w", "capacity"] {
            let path = scratch(&format!("{input}.{target}"));
            let out = tbm([
                "convert",
                "--input",
                input,
                "--to",
                target,
                "--output",
                path.to_str().unwrap(),
            ]);
            assert!(
                out.status.success(),
                "{input} -> {target}: {}",
                stderr(&out)
            );
            let file = UncertaintyFile::parse(&fs::read_to_string(&path).unwrap()).unwrap();
            let cr = lower(files::load(&file, true).unwrap().capacity);
            let err = base
                .values()
                .iter()
                .zip(cr.values())
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max);
            assert!(err < 1e-9, "{input} -> {target}: {err}");
        }
    }
}

#[test]
fn nonmonotone_input_to_mass_is_rejected() {
    let out = tbm(["convert", "--input", "nonmonotone.json", "--to", "mass"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("invalid credibility function"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn diagnostics_name_the_problem() {
    let out = tbm(["convert", "--input", "bel_missing.json", "--to", "mass"]);
    assert!(stderr(&out).contains("missing entry for subset {b}"));
    let out = tbm([
        "decide",
        "--input",
        "example.json",
        "--utilities",
        "utilities_xyz.json",
    ]);
    assert!(stderr(&out).contains("frame mismatch"));
    let out = tbm(["condition", "--input", "example.json", "--event", "a|q"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("unknown atom `q`"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn malformed_file_reports_line() {
    let path = scratch("broken.json");
    fs::write(
        &path,
        "{\n  \"frame\": [\"a\", \"b\"],\n  \"kind\": \"mass\",\n  \"entries\": [\n    {\"subset\": [\"a\"], \"value\": 0.5}\n    {\"subset\": [\"b\"], \"value\": 0.5}\n  ]\n}\n",
    )
    .unwrap();
    let out = tbm(["pignistic", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 6"), "{}", stderr(&out));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(tbm(["pignistic"]).status.code(), Some(2));
    assert_eq!(
        tbm(["combine", "--input", "example.json", "--alpha", "0.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        tbm(["condition", "--input", "example.json"]).status.code(),
        Some(2)
    );
    assert_eq!(
        tbm([
            "pignistic",
            "--input",
            "example.json",
            "--route",
            "sideways"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(tbm(["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        tbm(["pignistic", "--input", "no_such_file.json"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn empty_event_is_accepted_in_open_mode() {
    let out = tbm(["condition", "--input", "example.json", "--event", "{}"]);
    assert!(out.status.success());
    let file = UncertaintyFile::parse(&stdout(&out)).unwrap();
    assert_eq!(file.entries.len(), 1);
    assert!(file.entries[0].subset.is_empty());
    let out = tbm([
        "condition",
        "--input",
        "example.json",
        "--event",
        "{}",
        "--mode",
        "normalized",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
