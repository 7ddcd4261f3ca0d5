use std::path::Path;
use std::process::{Command, Output};

fn mplrc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mplrc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn construct_cor1(path: &Path) {
    let o = mplrc(&[
        "construct", "--family", "cor1", "--q", "7", "--r", "2", "--delta", "4", "--M", "2", "--N",
        "3", "-o", path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("[15,3,10]_7 optimal (2,4)"));
}

#[test]
fn construct_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    construct_cor1(&path);
    let first = std::fs::read(&path).unwrap();

    let o = mplrc(&["verify", path.to_str().unwrap()]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("optimal: true, d=10=bound"), "{out}");
    assert!(out.contains("predicted [15,3,10]: match"));

    // rewrite through the library and compare bytes
    let text = String::from_utf8(first.clone()).unwrap();
    let again = mplrc::codefile::CodeFile::from_json(&text).unwrap().to_json();
    assert_eq!(again.as_bytes(), &first[..]);
}

#[test]
fn two_block_summary() {
    let o = mplrc(&[
        "construct", "--family", "thm6", "--q", "7", "--r", "4", "--delta", "3", "--v", "2",
        "--tau", "1", "--N", "2",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("[22,13,4]_7 optimal (4,3)"));
}

#[test]
fn constraint_violation_exit_code() {
    let o = mplrc(&["construct", "--family", "cor2", "--q", "5", "--r", "2", "--M", "4", "--N", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("r must be odd"));
    let o = mplrc(&["construct", "--family", "thm4", "--q", "5", "--r", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn io_and_malformed_exit_code() {
    let o = mplrc(&["verify", "/nonexistent/file.json"]);
    assert_eq!(o.status.code(), Some(4));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"format_version\":1}").unwrap();
    let o = mplrc(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn tampered_prediction_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    construct_cor1(&path);
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replace("\"d\":10", "\"d\":11")).unwrap();
    let o = mplrc(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
}

#[test]
fn enumerate_formats() {
    let o = mplrc(&["enumerate", "--family", "cor1", "--q", "5", "--format", "csv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "N,M,r,delta,n,k,d");
    assert_eq!(lines.len(), 39);
    assert!(lines.contains(&"5,2,2,4,25,3,20"));

    let o = mplrc(&["enumerate", "--q", "5", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 38);

    let o = mplrc(&["enumerate", "--q", "5"]);
    assert!(stdout(&o).contains("total: 38"));
    let o = mplrc(&["enumerate", "--q", "6"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn repair_first_block() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    construct_cor1(&path);
    let file: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let g: Vec<Vec<u32>> = serde_json::from_value(file["generator"].clone()).unwrap();
    let word: Vec<u32> = (0..15).map(|j| (3 * g[0][j] + g[1][j] + 5 * g[2][j]) % 7).collect();
    let erased: Vec<String> = word
        .iter()
        .enumerate()
        .map(|(j, x)| if j < 3 { "?".to_string() } else { x.to_string() })
        .collect();
    let o = mplrc(&["repair", path.to_str().unwrap(), "--word", &erased.join(",")]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    let expected: Vec<String> = word.iter().map(|x| x.to_string()).collect();
    assert_eq!(out.lines().next().unwrap(), expected.join(","));
    for p in 1..=3 {
        assert!(out.contains(&format!("position {p} <- group 1")));
    }

    let mut too_many = erased.clone();
    too_many[3] = "?".into();
    let o = mplrc(&["repair", path.to_str().unwrap(), "--word", &too_many.join(",")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("group 1: 4 erasures"));
}

#[test]
fn composition_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let c1 = dir.path().join("c1.json");
    let cn = dir.path().join("cn.json");
    let common = ["--q", "7", "--r", "4", "--delta", "3", "--v", "2"];
    let mut a = vec!["construct", "--family", "thm4"];
    a.extend(common);
    a.extend(["-o", c1.to_str().unwrap()]);
    assert!(mplrc(&a).status.success());
    let mut a = vec!["construct", "--family", "thm5", "--tau", "1"];
    a.extend(common);
    a.extend(["-o", cn.to_str().unwrap()]);
    assert!(mplrc(&a).status.success());
    let o = mplrc(&[
        "construct", "--family", "thm2", "--c1", c1.to_str().unwrap(), "--cn",
        cn.to_str().unwrap(), "--N", "2",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("[22,13,4]_7 optimal (4,3)"));
}

#[test]
fn selftest_is_seeded() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_mplrc"))
            .args(["selftest", "--cases", "40"])
            .env("LRC_SEED", seed)
            .output()
            .unwrap()
    };
    let a = run("11");
    assert!(a.status.success());
    assert_eq!(a.stdout, run("11").stdout);
    assert!(stdout(&a).contains("seed 11: 0 failures"));
    assert_eq!(run("x").status.code(), Some(2));
}
