use std::path::PathBuf;
use std::process::Command;

use chevtori::data::Dataset;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_chevtori"))
}

fn data_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("chevtori-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (name, text) in Dataset::embedded_sources() {
        std::fs::write(dir.join(name), text).unwrap();
    }
    dir
}

#[test]
fn clean_run_exits_zero() {
    let out = bin().args(["lifts", "--type", "E7", "--isogeny", "sc"]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn corrupted_lift_exits_nonzero_and_names_the_row() {
    let dir = data_dir("lift");
    let e7 = std::fs::read_to_string(dir.join("e7.toml")).unwrap();
    // n_1 squares to h_1 in the simply connected group, so this doubles the order.
    let bad = e7.replacen("lift = 'h_3n_1'", "lift = 'n_1'", 1);
    assert_ne!(bad, e7);
    std::fs::write(dir.join("e7.toml"), bad).unwrap();
    let out = bin()
        .args(["lifts", "--type", "E7", "--isogeny", "sc", "--data"])
        .arg(&dir)
        .output()
        .unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(1), "{text}");
    assert!(text.lines().any(|l| l.starts_with("FAIL") && l.contains("table1/2/lift")), "{text}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_report_rechecks() {
    let dir = data_dir("recheck");
    let out = bin().args(["nonsplit", "--type", "E7", "--json"]).output().unwrap();
    assert!(out.status.success());
    let file = dir.join("report.json");
    std::fs::write(&file, &out.stdout).unwrap();
    let out = bin().arg("recheck").arg(&file).output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}");
    assert!(text.contains("certificate verified"), "{text}");
    std::fs::remove_dir_all(&dir).unwrap();
}
