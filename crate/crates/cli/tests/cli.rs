//! End-to-end behavior of the `parstat` binary: output shapes, exit codes,
//! aliases, and the self-test failure path.

use std::process::Command;

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_parstat"))
        .args(args)
        .output()
        .expect("spawn parstat");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn stat_emits_exact_rationals_with_header() {
    let (stdout, _, code) = run(&[
        "stat", "--ensemble", "size", "--weight", "supernorm", "--nmax", "3",
        "--sieve-limit", "10000",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines, ["n,value", "0,1", "1,1/2", "2,7/12", "3,59/120"]);
}

#[test]
fn stat_cumulative_max_part_closed_form_rows() {
    let (stdout, _, code) = run(&[
        "stat", "--ensemble", "max", "--weight", "supernorm", "--mode", "cumulative",
        "--nmax", "3", "--sieve-limit", "10000",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines, ["n,value", "0,1", "1,2", "2,3", "3,15/4"]);
}

#[test]
fn stat_integer_beta_powers_the_weights() {
    let (stdout, _, code) = run(&[
        "stat", "--ensemble", "size", "--weight", "norm", "--beta", "2",
        "--nmax", "3", "--sieve-limit", "10000",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().last().unwrap(), "3,49/36");
}

#[test]
fn stat_float_backend_prints_shortest_round_trips() {
    let (stdout, _, code) = run(&[
        "stat", "--ensemble", "size", "--weight", "norm", "--backend", "float",
        "--nmax", "2", "--sieve-limit", "10000",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines, ["n,value", "0,1", "1,1", "2,1.5"]);
}

#[test]
fn stat_oracle_backend_matches_the_recurrence_byte_for_byte() {
    let fast = run(&[
        "stat", "--ensemble", "perimeter", "--weight", "supernorm", "--mode", "cumulative",
        "--nmax", "8", "--sieve-limit", "10000",
    ]);
    let slow = run(&[
        "stat", "--ensemble", "perimeter", "--weight", "supernorm", "--mode", "cumulative",
        "--nmax", "8", "--backend", "exact-oracle", "--sieve-limit", "10000",
    ]);
    assert_eq!(fast.2, 0);
    assert_eq!(slow.2, 0);
    assert_eq!(fast.0, slow.0);
}

#[test]
fn ensemble_and_restriction_aliases_are_accepted() {
    let canonical = run(&[
        "stat", "--ensemble", "perimeter", "--weight", "norm", "--restrict", "all",
        "--nmax", "4", "--sieve-limit", "10000",
    ]);
    let aliased = run(&[
        "stat", "--ensemble", "per", "--weight", "norm", "--restrict", "none",
        "--nmax", "4", "--sieve-limit", "10000",
    ]);
    assert_eq!(canonical.2, 0);
    assert_eq!(aliased.2, 0);
    assert_eq!(canonical.0, aliased.0);
}

#[test]
fn divergent_combination_is_a_usage_error() {
    let (_, stderr, code) = run(&[
        "stat", "--ensemble", "max", "--weight", "norm", "--sieve-limit", "10000",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("diverge"), "stderr was: {stderr}");
}

#[test]
fn non_integer_beta_needs_the_float_backend() {
    let (_, stderr, code) = run(&[
        "stat", "--ensemble", "size", "--weight", "norm", "--beta", "0.5",
        "--nmax", "5", "--sieve-limit", "10000",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("integer"), "stderr was: {stderr}");
    let (_, _, code) = run(&[
        "stat", "--ensemble", "size", "--weight", "norm", "--beta", "0.5",
        "--backend", "float", "--nmax", "5", "--sieve-limit", "10000",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn exact_depth_cap_is_a_resource_error() {
    let (_, stderr, code) = run(&[
        "stat", "--ensemble", "size", "--weight", "norm", "--nmax", "121",
        "--sieve-limit", "10000",
    ]);
    assert_eq!(code, 3);
    assert!(stderr.contains("120"), "stderr was: {stderr}");
}

#[test]
fn unknown_figure_id_is_a_usage_error() {
    let (_, _, code) = run(&["figure", "no-such-figure"]);
    assert_eq!(code, 2);
}

#[test]
fn missing_required_flags_are_usage_errors() {
    let (_, _, code) = run(&["stat"]);
    assert_eq!(code, 2);
}

#[test]
fn bounds_rejects_a_sieve_below_the_certified_range() {
    let (_, stderr, code) = run(&["bounds", "--sieve-limit", "1000000"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("2278383"), "stderr was: {stderr}");
}

#[test]
fn verify_reports_every_suite_and_passes() {
    let (stdout, _, code) = run(&["verify", "--nmax", "5", "--sieve-limit", "100000"]);
    assert_eq!(code, 0, "stdout was: {stdout}");
    for k in 1..=7 {
        assert!(stdout.contains(&format!("[{k}/7]")), "missing suite {k}: {stdout}");
    }
    assert_eq!(stdout.matches(": ok").count(), 7, "stdout was: {stdout}");
    assert!(stdout.contains("result: all 7 suites passed"));
}

#[test]
fn injected_fault_is_caught_named_and_nonzero() {
    let (stdout, _, code) = run(&[
        "verify", "--nmax", "3", "--sieve-limit", "100000", "--fault-injection",
    ]);
    assert_eq!(code, 1);
    assert!(stdout.contains("FAIL"), "stdout was: {stdout}");
    assert!(stdout.contains("n = 2"), "stdout was: {stdout}");
    assert!(stdout.contains("7/12"), "stdout was: {stdout}");
    assert!(stdout.contains("result: at least one suite failed"));
}

#[test]
fn out_flag_writes_the_same_bytes_as_stdout() {
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("w_hat_per_out_test.csv");
    let (stdout, _, code) = run(&["figure", "w-hat-per", "--sieve-limit", "10000"]);
    assert_eq!(code, 0);
    let (empty, _, code) = run(&[
        "figure", "w-hat-per", "--sieve-limit", "10000", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(empty.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout);
    std::fs::remove_file(&path).ok();
}

#[test]
fn primes_lists_the_initial_segment() {
    let (stdout, _, code) = run(&["primes", "--nmax", "5", "--sieve-limit", "100"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines, ["n,p_n", "1,2", "2,3", "3,5", "4,7", "5,11"]);
}

#[test]
fn sieve_too_small_for_the_request_is_a_resource_error() {
    let (_, stderr, code) = run(&["primes", "--nmax", "100", "--sieve-limit", "100"]);
    assert_eq!(code, 3);
    assert!(!stderr.is_empty());
}
