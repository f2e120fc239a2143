//! End-to-end tests driving the compiled binary: pipeline behavior, exit
//! codes, and flag handling.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_hfe-sim")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hfe-sim-test-{}-{tag}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn full_pipeline_recovers_prefixes() {
    let dir = temp_dir("pipeline");
    let ok = run_in(
        &dir,
        &["setup", "--lambda", "8", "--q", "8", "--seed", "1", "--out", "msk.json"],
    );
    assert!(ok.status.success());

    let ok = run_in(
        &dir,
        &["enc", "--msk", "msk.json", "--message", "10110101", "--seed", "7", "--out", "ct.json"],
    );
    assert!(ok.status.success());

    let ok = run_in(&dir, &["keygen", "--msk", "msk.json", "--q", "8", "--out", "fk8.json"]);
    assert!(ok.status.success());
    let out = run_in(&dir, &["dec", "--key", "fk8.json", "--ct", "ct.json"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "10110101\n");

    let ok = run_in(&dir, &["keygen", "--msk", "msk.json", "--q", "3", "--out", "fk3.json"]);
    assert!(ok.status.success());
    let out = run_in(&dir, &["dec", "--key", "fk3.json", "--ct", "ct.json"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "101\n");
}

#[test]
fn eta_mode_decrypts_permuted_subsequence() {
    let dir = temp_dir("eta");
    let ok = run_in(
        &dir,
        &[
            "setup", "--lambda", "4", "--q", "4", "--eta", "2,1,4,3", "--seed", "5", "--out",
            "msk.json",
        ],
    );
    assert!(ok.status.success());
    let ok = run_in(
        &dir,
        &["enc", "--msk", "msk.json", "--message", "1011", "--seed", "9", "--out", "ct.json"],
    );
    assert!(ok.status.success());
    let ok = run_in(&dir, &["keygen", "--msk", "msk.json", "--q", "2", "--out", "fk.json"]);
    assert!(ok.status.success());
    let out = run_in(&dir, &["dec", "--key", "fk.json", "--ct", "ct.json"]);
    assert!(out.status.success());
    // m = 1011, eta = (2 1 4 3): blocks carry m_2 m_1 m_4 m_3 = 0 1 1 1
    assert_eq!(stdout(&out), "01\n");
}

#[test]
fn params_violation_exits_4() {
    let dir = temp_dir("params");
    let out = run_in(
        &dir,
        &["setup", "--lambda", "4", "--q", "2", "--seed", "1", "--out", "bad.json"],
    );
    assert_eq!(out.status.code(), Some(4));
    assert!(!dir.join("bad.json").exists());
}

#[test]
fn malformed_hex_exits_3() {
    let dir = temp_dir("hex");
    let ok = run_in(
        &dir,
        &["setup", "--lambda", "8", "--q", "8", "--seed", "1", "--out", "msk.json"],
    );
    assert!(ok.status.success());
    let out = run_in(
        &dir,
        &["keygen", "--msk", "msk.json", "--key-hex", "zz", "--out", "fk.json"],
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn random_key_yields_bottom_record() {
    let dir = temp_dir("bottom");
    let ok = run_in(
        &dir,
        &["setup", "--lambda", "32", "--q", "32", "--seed", "2", "--out", "msk.json"],
    );
    assert!(ok.status.success());
    let ok = run_in(
        &dir,
        &["keygen", "--msk", "msk.json", "--key-hex", "deadbeef", "--out", "fk.json"],
    );
    assert!(ok.status.success());
    let text = std::fs::read_to_string(dir.join("fk.json")).unwrap();
    assert!(text.contains("\"bottom\""));

    // a bottom key decrypts to the empty prefix
    let ok = run_in(
        &dir,
        &[
            "enc", "--msk", "msk.json", "--message",
            "10110101001101011011010100110101", "--seed", "3", "--out", "ct.json",
        ],
    );
    assert!(ok.status.success());
    let out = run_in(&dir, &["dec", "--key", "fk.json", "--ct", "ct.json"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "\n");
}

#[test]
fn cross_instance_key_mismatch_exits_5() {
    // a key issued under a different message length meets the ciphertext
    // with mismatched block angles and the readout is ambiguous
    let dir = temp_dir("mismatch");
    let ok = run_in(
        &dir,
        &["setup", "--lambda", "8", "--q", "8", "--seed", "1", "--out", "msk8.json"],
    );
    assert!(ok.status.success());
    let ok = run_in(
        &dir,
        &["setup", "--lambda", "8", "--q", "12", "--seed", "2", "--out", "msk12.json"],
    );
    assert!(ok.status.success());
    let ok = run_in(
        &dir,
        &["enc", "--msk", "msk8.json", "--message", "10110101", "--seed", "3", "--out", "ct.json"],
    );
    assert!(ok.status.success());
    let ok = run_in(&dir, &["keygen", "--msk", "msk12.json", "--q", "3", "--out", "fk.json"]);
    assert!(ok.status.success());
    let out = run_in(&dir, &["dec", "--key", "fk.json", "--ct", "ct.json"]);
    assert_eq!(out.status.code(), Some(5), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn analyze_reports_and_domain_errors() {
    let dir = temp_dir("analyze");
    let out = run_in(&dir, &["analyze", "entropic-curve", "--points", "11"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 12); // header + 11 rows
    for row in text.lines().skip(1) {
        let diff: f64 = row.split_whitespace().last().unwrap().parse().unwrap();
        assert!(diff < 1e-10);
    }

    let out = run_in(&dir, &["analyze", "entropic-curve", "--t", "0.2,1.2"]);
    assert_eq!(out.status.code(), Some(4));

    let out = run_in(&dir, &["analyze", "avg-states", "--grid", "16"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("max deviation from I/4"));

    let out = run_in(&dir, &["analyze", "ind-channel", "--grid", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("reported without pass/fail"));
}

#[test]
fn game_reports_pass_and_fail_verdicts() {
    let dir = temp_dir("game");
    let out = run_in(
        &dir,
        &["game", "msg-privacy", "--adversary", "basis-measurer", "--trials", "2000", "--seed", "3"],
    );
    assert!(out.status.success());
    assert!(stdout(&out).contains("verdict:    PASS"));
    assert!(stdout(&out).contains("evidence, not proof"));

    let out = run_in(
        &dir,
        &[
            "game", "msg-privacy", "--adversary", "rotation-measurer", "--trials", "2000",
            "--seed", "3", "--broken",
        ],
    );
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("verdict:    FAIL"));
    let gap_line = text.lines().find(|l| l.starts_with("gap:")).unwrap();
    let gap: f64 = gap_line.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!(gap > 0.9);

    let out = run_in(
        &dir,
        &["game", "weak-sim", "--adversary", "echo", "--trials", "500", "--seed", "3"],
    );
    assert!(out.status.success());
    assert!(stdout(&out).contains("real/ideal statistical distance: 0\n"));
    assert!(stdout(&out).contains("verdict:    PASS"));

    let out = run_in(
        &dir,
        &["game", "func-privacy", "--adversary", "matched-key-pair", "--trials", "2000", "--seed", "4"],
    );
    assert!(out.status.success());
    assert!(stdout(&out).contains("verdict:    PASS"));
}

#[test]
fn unknown_adversary_exits_4() {
    let dir = temp_dir("unknown");
    let out = run_in(
        &dir,
        &["game", "msg-privacy", "--adversary", "nonexistent", "--trials", "10", "--seed", "1"],
    );
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn missing_out_flag_exits_4() {
    let dir = temp_dir("noout");
    let out = run_in(&dir, &["setup", "--lambda", "8", "--q", "8", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn missing_file_exits_1() {
    let dir = temp_dir("nofile");
    let out = run_in(&dir, &["dec", "--key", "absent.json", "--ct", "absent.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    let dir = temp_dir("usage");
    let out = run_in(&dir, &["setup", "--nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn message_length_mismatch_exits_4() {
    let dir = temp_dir("msglen");
    let ok = run_in(
        &dir,
        &["setup", "--lambda", "8", "--q", "8", "--seed", "1", "--out", "msk.json"],
    );
    assert!(ok.status.success());
    let out = run_in(
        &dir,
        &["enc", "--msk", "msk.json", "--message", "1011", "--seed", "1", "--out", "ct.json"],
    );
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn corrupt_json_exits_3() {
    let dir = temp_dir("corrupt");
    std::fs::write(dir.join("bad.json"), "{not json").unwrap();
    let out = run_in(&dir, &["dec", "--key", "bad.json", "--ct", "bad.json"]);
    assert_eq!(out.status.code(), Some(3));
}
