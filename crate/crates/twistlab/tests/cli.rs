//! End-to-end tests of the command-line binary: exit codes, catalog
//! round-trips, verb filtering, deterministic reports, and the JSON Lines
//! search stream.

use std::path::PathBuf;
use std::process::{Command, Output};

use twistlab::SearchHit;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_twistlab"));
    // Isolate from whatever budget the ambient environment sets.
    cmd.env_remove("TWISTLAB_BUDGET");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

/// Write `text` to a unique temp file and return its path.
fn temp_spec(tag: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!(
        "twistlab-cli-{}-{tag}.toml",
        std::process::id()
    ));
    std::fs::write(&path, text).expect("write temp spec");
    path
}

const KC2_HEADER: &str = r#"
version = 1

[field]
kind = "rational"

[[coalgebra]]
name = "C"
dim = 2
delta = [[0, 0, 0, 1], [1, 1, 1, 1]]
eps = [[0, 1], [1, 1]]

[[algebra]]
name = "C"
dim = 2
mul = [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1]]
unit = [[0, 1]]

[[twist]]
name = "tau"
domain = ["C", "C"]
codomain = ["C", "C"]
entries = [[0, 0, 1], [2, 1, 1], [1, 2, 1], [3, 3, 1]]
"#;

#[test]
fn zoo_list_names_every_catalog_item() {
    let out = run(&["zoo", "list"]);
    assert_eq!(exit_code(&out), 0);
    let stdout = stdout_of(&out);
    let names: Vec<&str> = stdout
        .lines()
        .map(|l| l.split_whitespace().next().expect("name column"))
        .collect();
    let expected = [
        "kc2", "kc3", "kc4", "kv4", "fnc2", "fnc3", "fnv4", "sweedler", "mc2",
        "mc3", "trivial", "pair-c2", "pair-c3",
    ];
    assert_eq!(names.len(), expected.len(), "{stdout}");
    for name in expected {
        assert!(names.contains(&name), "missing {name} in:\n{stdout}");
    }
}

#[test]
fn zoo_exports_are_stable_and_verify_clean() {
    for name in ["kc2", "pair-c2", "sweedler"] {
        let first = run(&["zoo", "export", name]);
        assert_eq!(exit_code(&first), 0, "{}", stderr_of(&first));
        let second = run(&["zoo", "export", name]);
        assert_eq!(first.stdout, second.stdout, "unstable export for {name}");

        let path = temp_spec(&format!("export-{name}"), &stdout_of(&first));
        let verified = run(&["verify", path.to_str().unwrap()]);
        assert_eq!(exit_code(&verified), 0, "{}", stderr_of(&verified));
        let report = stdout_of(&verified);
        assert!(report.contains("verdict = \"pass\""), "{report}");
        assert!(!report.contains("verdict = \"fail\""), "{report}");
        assert!(!report.contains("verdict = \"error\""), "{report}");
        std::fs::remove_file(&path).ok();
    }

    let unknown = run(&["zoo", "export", "nonesuch"]);
    assert_eq!(exit_code(&unknown), 2);
    assert!(stderr_of(&unknown).contains("nonesuch"));
}

#[test]
fn verify_exit_codes_separate_failure_kinds() {
    // All checks pass: exit 0.
    let pass = temp_spec(
        "pass",
        &format!(
            "{KC2_HEADER}\n[[task]]\ncheck = \"octagon\"\ntwist = \"tau\"\n"
        ),
    );
    let out = run(&["verify", pass.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0, "{}", stderr_of(&out));

    // A genuine failing check: exit 1, and the report says which.
    let fail = temp_spec(
        "fail",
        &format!(
            "{KC2_HEADER}\n\
             [[twist]]\n\
             name = \"tau2\"\n\
             domain = [\"C\", \"C\"]\n\
             codomain = [\"C\", \"C\"]\n\
             entries = [[0, 0, 2], [2, 1, 2], [1, 2, 2], [3, 3, 2]]\n\n\
             [[task]]\ncheck = \"pentagons\"\ntwist = \"tau2\"\n"
        ),
    );
    let out = run(&["verify", fail.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1, "{}", stderr_of(&out));
    assert!(stdout_of(&out).contains("verdict = \"fail\""));

    // Missing file: exit 2 with an error line.
    let out = run(&["verify", "/nonexistent/nowhere.toml"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr_of(&out).starts_with("error:"));

    // Malformed document: exit 2 and the message locates the problem.
    let broken = temp_spec("broken", "version = \n");
    let out = run(&["verify", broken.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr_of(&out).contains("line"), "{}", stderr_of(&out));

    // Dangling reference: exit 2 and the message names the missing object.
    let dangling = temp_spec(
        "dangling",
        &format!(
            "{KC2_HEADER}\n[[task]]\ncheck = \"octagon\"\ntwist = \"nope\"\n"
        ),
    );
    let out = run(&["verify", dangling.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr_of(&out).contains("nope"), "{}", stderr_of(&out));

    for p in [pass, fail, broken, dangling] {
        std::fs::remove_file(p).ok();
    }
}

#[test]
fn verify_reports_are_deterministic_up_to_timing() {
    let export = run(&["zoo", "export", "kc2"]);
    assert_eq!(exit_code(&export), 0);
    let path = temp_spec("determinism", &stdout_of(&export));

    let strip_timing = |s: &str| -> String {
        s.lines()
            .filter(|l| !l.trim_start().starts_with("millis"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let a = run(&["verify", path.to_str().unwrap()]);
    let b = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(exit_code(&a), 0);
    assert_eq!(exit_code(&b), 0);
    assert_eq!(strip_timing(&stdout_of(&a)), strip_timing(&stdout_of(&b)));
    std::fs::remove_file(&path).ok();
}

#[test]
fn verb_specific_commands_filter_tasks() {
    let spec = temp_spec(
        "filters",
        &format!(
            "{KC2_HEADER}\n\
             [[task]]\ncheck = \"octagon\"\ntwist = \"tau\"\n\n\
             [[task]]\ncheck = \"assoc\"\ntwist = \"tau\"\n\n\
             [[task]]\ncheck = \"equivalent\"\nleft = \"tau\"\nright = \"tau\"\n"
        ),
    );
    let path = spec.to_str().unwrap();

    let count = |out: &Output, check: &str| -> usize {
        stdout_of(out)
            .matches(&format!("check = \"{check}\""))
            .count()
    };

    let all = run(&["verify", path]);
    assert_eq!(exit_code(&all), 0, "{}", stderr_of(&all));
    assert_eq!(count(&all, "octagon"), 1);
    assert_eq!(count(&all, "assoc"), 1);
    assert_eq!(count(&all, "equivalent"), 1);

    let alg = run(&["alg", "verify", path]);
    assert_eq!(exit_code(&alg), 0, "{}", stderr_of(&alg));
    assert_eq!(count(&alg, "octagon"), 0);
    assert_eq!(count(&alg, "assoc"), 1);
    assert_eq!(count(&alg, "equivalent"), 0);

    let equiv = run(&["equiv", path]);
    assert_eq!(exit_code(&equiv), 0, "{}", stderr_of(&equiv));
    assert_eq!(count(&equiv, "octagon"), 0);
    assert_eq!(count(&equiv, "assoc"), 0);
    assert_eq!(count(&equiv, "equivalent"), 1);

    std::fs::remove_file(&spec).ok();
}

#[test]
fn search_streams_json_hits() {
    let out = run(&["search", "--dims", "1", "1", "--field", "2"]);
    assert_eq!(exit_code(&out), 0, "{}", stderr_of(&out));
    let hits: Vec<SearchHit> = stdout_of(&out)
        .lines()
        .map(|l| serde_json::from_str(l).expect("JSON hit"))
        .collect();
    assert_eq!(hits.len(), 2);
    assert_eq!(hits[0].index, 0);
    assert!(!hits[0].invertible);
    assert_eq!(hits[1].index, 1);
    assert_eq!(hits[1].counit, Some(vec![1]));

    // The constrained stream over the full 2^16 space finds the sixteen
    // membership solutions.
    let out = run(&[
        "search", "--dims", "2", "2", "--field", "2", "--require", "octagon,tw",
    ]);
    assert_eq!(exit_code(&out), 0, "{}", stderr_of(&out));
    let hits: Vec<SearchHit> = stdout_of(&out)
        .lines()
        .map(|l| serde_json::from_str(l).expect("JSON hit"))
        .collect();
    assert_eq!(hits.len(), 16);
    assert!(hits.iter().all(|h| h.octagon && h.in_tw));
}

#[test]
fn sharded_search_output_matches_streaming() {
    let single = run(&["search", "--dims", "1", "2", "--field", "3"]);
    assert_eq!(exit_code(&single), 0, "{}", stderr_of(&single));
    assert_eq!(stdout_of(&single).lines().count(), 81);
    for jobs in ["2", "5"] {
        let sharded = run(&[
            "search", "--dims", "1", "2", "--field", "3", "--jobs", jobs,
        ]);
        assert_eq!(exit_code(&sharded), 0, "{}", stderr_of(&sharded));
        assert_eq!(single.stdout, sharded.stdout, "jobs = {jobs}");
    }
}

#[test]
fn search_budget_flag_and_environment_are_honored() {
    // Explicit flag smaller than the space: refused.
    let out = run(&[
        "search", "--dims", "2", "2", "--field", "2", "--budget", "100",
    ]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr_of(&out).contains("budget"), "{}", stderr_of(&out));

    // The environment variable fills in when no flag is given.
    let out = bin()
        .args(["search", "--dims", "1", "2", "--field", "3"])
        .env("TWISTLAB_BUDGET", "10")
        .output()
        .expect("binary runs");
    assert_eq!(exit_code(&out), 2);
    assert!(stderr_of(&out).contains("budget"), "{}", stderr_of(&out));

    let out = bin()
        .args(["search", "--dims", "1", "2", "--field", "3"])
        .env("TWISTLAB_BUDGET", "100")
        .output()
        .expect("binary runs");
    assert_eq!(exit_code(&out), 0, "{}", stderr_of(&out));
    assert_eq!(stdout_of(&out).lines().count(), 81);

    // An explicit flag beats the environment.
    let out = bin()
        .args([
            "search", "--dims", "1", "2", "--field", "3", "--budget", "100",
        ])
        .env("TWISTLAB_BUDGET", "10")
        .output()
        .expect("binary runs");
    assert_eq!(exit_code(&out), 0, "{}", stderr_of(&out));
}

#[test]
fn search_rejects_unknown_constraint_names() {
    let out = run(&[
        "search", "--dims", "1", "1", "--field", "2", "--require", "bogus",
    ]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr_of(&out).contains("bogus"), "{}", stderr_of(&out));
}
