use std::process::Command;

fn rauzy(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_rauzy")).args(args).env_remove("RAUZY_LEVEL").output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn tile_json_carries_schema_and_tiles() {
    let (code, out, _) = rauzy(&["tile", "--level", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], "rauzy/patch/v1");
    assert_eq!(v["data"]["tiles"].as_array().unwrap().len(), 17);
    assert_eq!(v["config"]["level"], 3);
}

#[test]
fn tile_svg() {
    let (code, out, _) = rauzy(&["tile", "--level", "5", "--highlight-lines", "--svg"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("<polygon").count(), 57);
    assert!(out.contains("class=\"lines\""));
}

#[test]
fn tile_svg_to_file_keeps_json_on_stdout() {
    let path = std::env::temp_dir().join(format!("rauzy-tile-{}.svg", std::process::id()));
    let (code, out, _) = rauzy(&["tile", "--level", "6", "--svg", path.to_str().unwrap(), "--highlight-lines"]);
    assert_eq!(code, 0);
    let svg = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(svg.matches("<polygon").count(), 105);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(!v["data"]["lines"].as_array().unwrap().is_empty());
}

#[test]
fn level_zero_is_the_initial_patch() {
    let (code, out, _) = rauzy(&["tile", "--level", "0"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["data"]["tiles"].as_array().unwrap().len(), 3);
}

#[test]
fn characteristic_two_is_opt_in() {
    let (code, _, _) = rauzy(&["tile", "--level", "1", "--field", "prime", "--prime", "2"]);
    assert_eq!(code, 2);
    let (code, _, _) = rauzy(&["tile", "--level", "1", "--field", "prime", "--prime", "2", "--allow-char-two"]);
    assert_eq!(code, 0);
}

#[test]
fn periodicity_report_for_level_seven() {
    let (code, out, _) = rauzy(&["verify-all", "--only", "periodicity", "--level", "7"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("k=11 period 24"), "{out}");
}

#[test]
fn verify_subset_passes() {
    let (code, out, _) = rauzy(&["verify-all", "--only", "1,tiling,9"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().filter(|l| l.contains("PASS")).count(), 3);
}

#[test]
fn failing_check_exits_one() {
    let (code, out, _) = rauzy(&["verify-all", "--only", "3", "--signs", "constant"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL"));
}

#[test]
fn config_errors_exit_two() {
    for args in [
        &["verify-all", "--only", "13"][..],
        &["analyze", "--field", "prime", "--prime", "9"],
        &["tile", "--level", "40"],
        &["census", "--signs", "wobbly"],
    ] {
        let (code, _, err) = rauzy(args);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(err.contains("configuration"), "{err}");
    }
}

#[test]
fn env_overrides_flags_defaults() {
    let out = Command::new(env!("CARGO_BIN_EXE_rauzy")).args(["tile"]).env("RAUZY_LEVEL", "2").output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["data"]["tiles"].as_array().unwrap().len(), 9);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("rauzy-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a.json");
    let (code, out, _) = rauzy(&["analyze", "--level", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema"], "rauzy/analysis/v1");
    assert!(v["data"]["algebra"]["validation_failures"].as_array().unwrap().is_empty());
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn periodicity_and_census_pass() {
    let (code, out, _) = rauzy(&["periodicity", "--level", "6"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let orbits = v["data"].as_array().unwrap();
    assert_eq!(orbits.len(), 4);
    assert!(orbits.iter().all(|o| o["period"] == 24));
    let (code, out, _) = rauzy(&["census", "--level", "7"]);
    assert_eq!(code, 0);
    assert!(out.contains("rauzy/census/v1"));
}
