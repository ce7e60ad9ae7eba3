//! Shared helpers for the integration tests: running the `tbm` binary
//! against the fixture set and comparing its stdout with golden files.
#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

const fn case(name: &'static str, exit: i32, args: &'static [&'static str]) -> Case {
    Case { name, args, exit }
}

/// One or more cases per subcommand, covering success and failure exits.
pub const CASES: &[Case] = &[
    case(
        "convert_mass_to_bel",
        0,
        &["convert", "--input", "example.json", "--to", "bel"],
    ),
    case(
        "convert_mass_to_pl",
        0,
        &["convert", "--input", "example.json", "--to", "pl"],
    ),
    case(
        "convert_mass_to_w",
        0,
        &["convert", "--input", "example.json", "--to", "w"],
    ),
    case(
        "convert_possibility_to_mass",
        0,
        &["convert", "--input", "possibility.json", "--to", "mass"],
    ),
    case(
        "convert_probability_to_capacity",
        0,
        &["convert", "--input", "probability.json", "--to", "capacity"],
    ),
    case(
        "convert_bel_missing_subset",
        2,
        &["convert", "--input", "bel_missing.json", "--to", "mass"],
    ),
    case(
        "pignistic_example",
        0,
        &["pignistic", "--input", "example.json"],
    ),
    case(
        "pignistic_closed_form",
        0,
        &[
            "pignistic",
            "--input",
            "example.json",
            "--route",
            "closed-form",
        ],
    ),
    case(
        "pignistic_vacuous4",
        0,
        &["pignistic", "--input", "vacuous4.json"],
    ),
    case(
        "pignistic_open_world",
        0,
        &["pignistic", "--input", "open_world.json"],
    ),
    case(
        "pignistic_open_world_normalized",
        0,
        &["pignistic", "--input", "open_world.json", "--normalize"],
    ),
    case(
        "pignistic_possibility",
        0,
        &[
            "pignistic",
            "--input",
            "possibility.json",
            "--route",
            "mass-w",
        ],
    ),
    case(
        "combine_point_masses",
        0,
        &[
            "combine",
            "--input",
            "point_a.json",
            "--input",
            "point_b.json",
            "--alpha",
            "0.5",
        ],
    ),
    case(
        "combine_identical",
        0,
        &[
            "combine",
            "--input",
            "example.json",
            "--input",
            "example.json",
            "--alpha",
            "0.3",
        ],
    ),
    case(
        "combine_alpha_out_of_range",
        2,
        &[
            "combine",
            "--input",
            "point_a.json",
            "--input",
            "point_b.json",
            "--alpha",
            "1.5",
        ],
    ),
    case(
        "combine_not_combinable",
        2,
        &[
            "combine",
            "--input",
            "point_a.json",
            "--input",
            "example.json",
            "--alpha",
            "0.5",
        ],
    ),
    case(
        "condition_open",
        0,
        &["condition", "--input", "split.json", "--event", "a|b"],
    ),
    case(
        "condition_vacuous",
        0,
        &["condition", "--input", "vacuous4.json", "--event", "n|s"],
    ),
    case(
        "condition_contradiction_open",
        0,
        &["condition", "--input", "point_a.json", "--event", "b"],
    ),
    case(
        "condition_contradiction_normalized",
        3,
        &[
            "condition",
            "--input",
            "point_a.json",
            "--event",
            "b",
            "--mode",
            "normalized",
        ],
    ),
    case(
        "decide_example",
        0,
        &[
            "decide",
            "--input",
            "example.json",
            "--utilities",
            "utilities.json",
        ],
    ),
    case(
        "decide_open_world",
        0,
        &[
            "decide",
            "--input",
            "open_world.json",
            "--utilities",
            "utilities.json",
        ],
    ),
    case(
        "decide_frame_mismatch",
        2,
        &[
            "decide",
            "--input",
            "example.json",
            "--utilities",
            "utilities_xyz.json",
        ],
    ),
    case("check_valid", 0, &["check", "--input", "example.json"]),
    case(
        "check_nonmonotone",
        2,
        &["check", "--input", "nonmonotone.json"],
    ),
    case(
        "demo_two_level",
        0,
        &["demo-two-level", "--input", "split.json", "--event", "a|b"],
    ),
    case(
        "demo_two_level_probability",
        0,
        &[
            "demo-two-level",
            "--input",
            "probability.json",
            "--event",
            "a|c",
        ],
    ),
    case(
        "demo_two_level_zero_probability",
        3,
        &["demo-two-level", "--input", "point_a.json", "--event", "b"],
    ),
];

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn fixtures() -> PathBuf {
    crate_dir().join("tests/fixtures")
}

pub fn golden(name: &str) -> PathBuf {
    crate_dir().join("tests/golden").join(format!("{name}.out"))
}

/// Runs `tbm` with the fixture directory as working directory.
pub fn tbm<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_tbm"))
        .args(args)
        .current_dir(fixtures())
        .output()
        .expect("tbm binary runs")
}

/// Runs every case twice and compares against its golden file. Returns one
/// message per problem; set `TBM_BLESS=1` to rewrite the goldens instead.
pub fn check_goldens() -> Vec<String> {
    let bless = std::env::var_os("TBM_BLESS").is_some();
    let mut problems = Vec::new();
    for case in CASES {
        let first = tbm(case.args);
        let second = tbm(case.args);
        let code = first.status.code().unwrap_or(-1);
        if code != case.exit {
            problems.push(format!(
                "{}: exit {code}, expected {} ({})",
                case.name,
                case.exit,
                String::from_utf8_lossy(&first.stderr).trim()
            ));
        }
        if first.stdout != second.stdout || first.stderr != second.stderr {
            problems.push(format!("{}: output differs between runs", case.name));
        }
        let path = golden(case.name);
        if bless {
            std::fs::write(&path, &first.stdout).expect("golden written");
            continue;
        }
        match std::fs::read(&path) {
            Ok(expected) if expected == first.stdout => {}
            Ok(_) => problems.push(format!(
                "{}: stdout differs from {}",
                case.name,
                path.display()
            )),
            Err(e) => problems.push(format!("{}: {}: {e}", case.name, path.display())),
        }
    }
    problems
}
