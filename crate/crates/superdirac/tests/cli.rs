use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superdirac")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_presets_pass() {
    let sl2 = data("sl2.json");
    let osp = data("osp12.json");
    for args in [vec!["check", sl2.as_str()], vec!["check", "--susy", osp.as_str()]] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{:?}\n{}", args, stdout(&o));
        assert!(stdout(&o).contains(" 0 fail"));
    }
}

#[test]
fn corrupted_table_fails_with_witness() {
    let o = run(&["check", &data("corrupted.json")]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAIL         lie-skewsymmetry       [E,F]"), "{}", out);
    assert!(out.contains("form-invariant"));
}

#[test]
fn wbracket_osp_plain() {
    let o = run(&["wbracket", &data("osp12.json"), "--pair", "F,f"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("(3/2)*k*L*f + k*d(f)"));
    assert!(out.contains("all paths agree"));
}

#[test]
fn wbracket_osp_susy() {
    let o = run(&["wbracket", "--susy", &data("osp12.json"), "--pair", "F,F"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).lines().next(),
        Some("-(1/2)*k^5*L^2*X - (3/2)*k^2*L*Fbar - (1/2)*k^2*X*D(Fbar) - k^2*d(Fbar)")
    );
}

#[test]
fn wbracket_sl2_paths_agree() {
    let o = run(&["wbracket", &data("sl2.json"), "--pair", "F,F"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("all paths agree"));
}

#[test]
fn wbracket_json_and_latex() {
    let o = run(&["wbracket", "osp12", "--pair", "F,f", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).expect("valid json");
    assert_eq!(v["agree"], true);
    assert_eq!(v["modified_dirac"], "(3/2)*k*L*f + k*d(f)");
    let o = run(&["wbracket", "osp12", "--pair", "F,f", "--format", "latex", "--show-matrix"]);
    let out = stdout(&o);
    assert!(out.contains("\\begin{pmatrix}"));
    assert!(out.contains("\\frac{3}{2}"));
}

#[test]
fn expand_and_examples() {
    let o = run(&["expand", "sl2", "E", "F"]);
    assert_eq!(stdout(&o).trim(), "k*L + H");
    let o = run(&["expand", "nonlocal", "u", "u^2", "--trunc", "3"]);
    assert_eq!(stdout(&o).trim(), "2*L^-1*u");
    let o = run(&["examples"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(" 0 fail"));
}

#[test]
fn reduce_by_cartan() {
    let dir = std::env::temp_dir().join(format!("superdirac-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("h.txt");
    std::fs::write(&good, "H\n").unwrap();
    let o = run(&["reduce", "sl2", "--constraints", good.to_str().unwrap(), "--samples", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("{H λ E}^D = 0"));
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "H\nE +* F\n").unwrap();
    let o = run(&["reduce", "sl2", "--constraints", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn usage_errors_exit_2() {
    for args in [vec!["frob"], vec!["wbracket", "osp12"], vec!["expand", "sl2", "E", "nope"], vec!["check", "/no/such/file.json"]] {
        assert_eq!(run(&args).status.code(), Some(2), "{:?}", args);
    }
}
