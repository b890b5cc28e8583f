use std::process::{Command, Output};

fn altvertex(args: &[&str], seed_env: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_altvertex"));
    cmd.args(args).env_remove("ALTVERTEX_SEED");
    if let Some(s) = seed_env {
        cmd.env("ALTVERTEX_SEED", s);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn passing_row_exits_zero() {
    let o = altvertex(&["verify", "--n", "5", "--report", "text"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pass"));
}

#[test]
fn budget_overflow_exits_nonzero() {
    let o = altvertex(&["verify", "--from", "8", "--to", "8", "--budget-cosets", "1"], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"complete\": false"));
}

#[test]
fn seed_flag_beats_environment() {
    let env_only = stdout(&altvertex(&["verify", "--n", "3", "--normalize-timings"], Some("7")));
    assert!(env_only.contains("\"seed\": 7"));
    let both = stdout(&altvertex(&["verify", "--n", "3", "--seed", "9"], Some("7")));
    assert!(both.contains("\"seed\": 9"));
}

#[test]
fn normalized_reruns_match() {
    let args = ["verify", "--from", "3", "--to", "6", "--normalize-timings"];
    assert_eq!(stdout(&altvertex(&args, None)), stdout(&altvertex(&args, None)));
}

#[test]
fn fixtures_dump_to_stdout_and_directory() {
    let o = altvertex(&["dump-fixtures", "--n", "6", "--field-degree", "2"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), include_str!("../../core/fixtures/n6.bundle"));

    let dir = std::env::temp_dir().join(format!("altvertex-fixtures-{}", std::process::id()));
    let d = dir.to_str().unwrap();
    let o = altvertex(&["dump-fixtures", "--n", "10", "--out", d], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.join("endo/phi6.mat").is_file());
    assert!(dir.join("groups/y_alt.perm").is_file());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn selftest_passes() {
    let o = altvertex(&["selftest", "--report", "text"], None);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(altvertex(&["verify"], None).status.code(), Some(2));
    assert_eq!(altvertex(&["verify", "--n", "2"], None).status.code(), Some(2));
    assert_eq!(altvertex(&["verify", "--n", "5", "--field-degree", "9"], None).status.code(), Some(2));
}
