use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_logfano"))
}

fn logfano(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn check_golden(args: &[&str], name: &str) {
    let out = logfano(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(stdout(&out), golden(name), "{args:?}");
}

#[test]
fn certify_goldens() {
    check_golden(
        &["--type", "A2", "--word", "1,2,1", "certify"],
        "certify_A2_121.json",
    );
    check_golden(
        &["--type", "B2", "--word", "1,2,1,2", "certify"],
        "certify_B2_1212.json",
    );
    check_golden(
        &["--type", "A1~", "--word", "1,2,1", "certify"],
        "certify_A1aff_121.json",
    );
}

#[test]
fn report_goldens() {
    check_golden(
        &["--type", "A1", "--word", "1,1", "report"],
        "report_A1_11.json",
    );
    check_golden(
        &["--type", "A1~", "--word", "1,2,2,1", "report"],
        "report_A1aff_1221.json",
    );
    check_golden(
        &["--type", "A2", "--word", "1,2,1", "report"],
        "report_A2_121.json",
    );
}

#[test]
fn sweep_golden() {
    check_golden(&["--type", "B3", "sweep"], "sweep_B3.json");
    let out = logfano(&["--type", "B3", "sweep", "--max-length", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["elements_checked"], 48);
    assert_eq!(v["failures"], serde_json::json!([]));
}

#[test]
fn exit_codes() {
    let out = logfano(&["--type", "A2", "--word", "1,1", "certify"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not reduced"));
    assert_eq!(
        logfano(&["--type", "A2", "--word", "1,2,1", "--M", "1", "certify"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        logfano(&["--type", "X2", "--word", "1", "report"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(logfano(&["--type", "A2", "certify"]).status.code(), Some(2));
    assert_eq!(logfano(&["--word", "1", "certify"]).status.code(), Some(2));
    // A fixed M below some a_j makes the sweep fail rather than reject the input.
    assert_eq!(
        logfano(&["--type", "A1~", "--max-length", "4", "--M", "2", "sweep"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn output_is_byte_stable() {
    let args = ["--type", "G2", "--all-words", "sweep"];
    assert_eq!(stdout(&logfano(&args)), stdout(&logfano(&args)));
    let args = ["--type", "F4", "--word", "1,2,3,4,3,2,1", "certify"];
    assert_eq!(stdout(&logfano(&args)), stdout(&logfano(&args)));
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("logfano-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn cartan_file_round_trip() {
    let gcm = logfano::GeneralizedCartanMatrix::builtin("B2").unwrap();
    let path = temp_file("b2.json", &gcm.to_json());
    let from_file = logfano(&[
        "--cartan",
        path.to_str().unwrap(),
        "--word",
        "1,2,1,2",
        "certify",
    ]);
    assert_eq!(stdout(&from_file), golden("certify_B2_1212.json"));

    let anon = temp_file("anon.json", r#"{"rank": 2, "cartan": [[2, -2], [-2, 2]]}"#);
    let out = logfano(&[
        "--cartan",
        anon.to_str().unwrap(),
        "--word",
        "1,2,1",
        "certify",
    ]);
    let expected = golden("certify_A1aff_121.json").replace("\"A1~\"", "\"custom\"");
    assert_eq!(stdout(&out), expected);

    let bad = temp_file("bad.json", r#"{"rank": 2, "cartan": [[2, 0], [-1, 2]]}"#);
    let out = logfano(&["--cartan", bad.to_str().unwrap(), "--word", "1", "report"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("vanish together"));
}

#[test]
fn cap_from_environment() {
    let out = bin()
        .args(["--type", "A1~", "--max-length", "8", "sweep"])
        .env("LOGFANO_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap of 5"));
}

#[test]
fn table_and_reduced_words() {
    let out = logfano(&[
        "--type",
        "A3",
        "--word",
        "1,2,1,3,2,1",
        "reduced-words",
        "--format",
        "table",
    ]);
    assert_eq!(stdout(&out).lines().count(), 16);
    let out = logfano(&[
        "--type", "B2", "--word", "1,2,1,2", "certify", "--format", "table",
    ]);
    let text = stdout(&out);
    assert!(text.contains("gamma  = (a1, a1+a2, a1+2a2, a2)"));
    assert!(text.contains("overall true"));
}
