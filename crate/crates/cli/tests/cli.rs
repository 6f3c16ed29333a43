use std::process::{Command, Output};

fn lucat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lucat"))
        .args(args)
        .env_remove("LUCAT_JOBS")
        .output()
        .expect("run lucat")
}

fn stdout_of(args: &[&str]) -> String {
    let out = lucat(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn lucas_text_and_json() {
    assert_eq!(stdout_of(&["lucas", "--n", "3"]), "s^2 + t\n");
    assert_eq!(stdout_of(&["lucas", "--n", "0"]), "0\n");
    assert_eq!(
        stdout_of(&["lucas", "--n", "4", "--format", "json"]),
        "[[3,0,\"1\"],[1,1,\"2\"]]\n"
    );
}

#[test]
fn binom_examples() {
    assert_eq!(
        stdout_of(&["binom", "--m", "4", "--k", "2"]),
        "s^4 + 3*s^2*t + 2*t^2\n"
    );
    assert_eq!(stdout_of(&["binom", "--m", "5", "--k", "0"]), "1\n");
    assert_eq!(stdout_of(&["binom", "--m", "2", "--k", "5"]), "0\n");
    assert_eq!(stdout_of(&["binom", "--m", "3", "--k", "-1"]), "0\n");
}

#[test]
fn catalan_examples() {
    assert_eq!(
        stdout_of(&["catalan", "--n", "2", "--method", "both"]),
        "s^2 + 2*t\nagree=true\n"
    );
    assert_eq!(stdout_of(&["catalan", "--n", "1"]), "1\n");
    assert_eq!(
        stdout_of(&["catalan", "--n", "5", "--spec", "2,-1"]),
        "42\n"
    );
    assert_eq!(
        stdout_of(&["catalan", "--n", "3", "--method", "identity"]),
        stdout_of(&["catalan", "--n", "3"])
    );
}

#[test]
fn verify_prints_one_line_per_n_and_a_summary() {
    let text = stdout_of(&["verify", "--max-n", "50", "--checks", "identity,positivity"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 51);
    for (i, line) in lines[..50].iter().enumerate() {
        assert!(line.starts_with(&format!("PASS n={} ", i + 1)), "{line}");
    }
    assert!(lines[50].starts_with("50/50 passed"), "{}", lines[50]);

    let one = stdout_of(&["verify", "--max-n", "1"]);
    assert_eq!(one.lines().filter(|l| l.starts_with("PASS")).count(), 1);
}

#[test]
fn verify_json_is_one_object_per_line() {
    let text = stdout_of(&["verify", "--max-n", "4", "--format", "json"]);
    for (i, line) in text.lines().enumerate() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["n"], i + 1);
        assert_eq!(v["division_ok"], true);
    }
}

#[test]
fn jobs_do_not_change_the_output() {
    let args = [
        "verify",
        "--max-n",
        "30",
        "--checks",
        "identity,positivity,lemma21,specializations",
    ];
    let one = lucat(&[&args[..], &["--jobs", "1"]].concat());
    let four = lucat(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.status.code(), four.status.code());
}

#[test]
fn selftest_passes() {
    let text = stdout_of(&["selftest", "--cases", "50", "--seed", "7"]);
    assert!(
        text.lines().any(|l| l.starts_with("PASS ring axioms")),
        "{text}"
    );
    assert!(!text.contains("FAIL"), "{text}");
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["bogus"][..],
        &["catalan", "--n", "0"],
        &["verify", "--max-n", "0"],
        &["verify", "--max-n", "3", "--jobs", "0"],
        &["verify", "--max-n", "3", "--checks", "nonsense"],
        &["lucas"],
        &["catalan", "--n", "2", "--spec", "2"],
    ] {
        let out = lucat(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[cfg(target_os = "linux")]
#[test]
fn write_failure_exits_with_one() {
    let full = std::fs::OpenOptions::new()
        .write(true)
        .open("/dev/full")
        .unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_lucat"))
        .args(["lucas", "--n", "5"])
        .stdout(full)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
}
