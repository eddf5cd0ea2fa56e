use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_newton-dyn")).args(args).output().unwrap()
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

fn files(dir: &Path) -> Vec<String> {
    let mut v: Vec<String> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    v.sort();
    v
}

const SMALL_BASINS: &str = r#"{
  "mode": "basins", "name": "small", "map_kind": "complex", "polynomial": "z^3 - 1",
  "window": [-2, 2, -2, 2], "width": 40, "height": 30
}"#;

#[test]
fn basins_job_writes_image_and_report() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "job.json", SMALL_BASINS);
    let out = tmp.path().join("out");
    let o = run(&["basins", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(files(&out), ["small.ppm", "small.report.json"]);

    let ppm = fs::read(out.join("small.ppm")).unwrap();
    assert!(ppm.starts_with(b"P6\n40 30\n255\n"));
    assert_eq!(ppm.len(), 13 + 40 * 30 * 3);

    let report: Value = serde_json::from_slice(&fs::read(out.join("small.report.json")).unwrap()).unwrap();
    assert_eq!(report["mode"], "basins");
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["statistics"]["basins"]["pixels"], 1200);
    assert_eq!(report["artifacts"], serde_json::json!(["small.ppm", "small.report.json"]));
}

#[test]
fn malformed_polynomial_is_a_validation_error_and_writes_nothing() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "job.json", &SMALL_BASINS.replace("z^3 - 1", "z^3 - "));
    let out = tmp.path().join("out");
    let o = run(&["basins", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("polynomial"));
    assert!(!out.exists() || files(&out).is_empty());
}

#[test]
fn usage_errors_exit_with_one() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "job.json", SMALL_BASINS);
    assert_eq!(run(&["no-such-mode", "--config", &cfg]).status.code(), Some(1));
    assert_eq!(run(&["basins"]).status.code(), Some(1));
    assert_eq!(run(&["basins", "--config", "/nonexistent/job.json"]).status.code(), Some(1));
    // the config names a different mode
    assert_eq!(run(&["ifs", "--config", &cfg]).status.code(), Some(1));
    let unknown = write_config(tmp.path(), "bad.json", &SMALL_BASINS.replace("\"width\"", "\"widht\""));
    assert_eq!(run(&["basins", "--config", &unknown]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn failing_computation_exits_with_two() {
    // (1, 1) has no real counterimages under this map, so no orbit survives burn-in
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "job.json",
        r#"{
  "mode": "alpha-random", "name": "dead", "map_kind": "planar",
  "f1": "y - x^2", "f2": "x + 2 - (y - 2)^2",
  "window": [-4, 4, -4, 4], "width": 32, "height": 32,
  "seed_point": [1, 1], "length": 300, "burn_in": 100, "orbits": 1
}"#,
    );
    let out = tmp.path().join("out");
    let o = run(&["alpha-random", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(!out.exists() || files(&out).is_empty());
}

fn strip_timings(bytes: &[u8]) -> Value {
    let mut v: Value = serde_json::from_slice(bytes).unwrap();
    v.as_object_mut().unwrap().remove("timings");
    v
}

#[test]
fn reruns_are_byte_identical_across_thread_counts() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "job.json",
        r#"{
  "mode": "alpha-random", "name": "orbits", "map_kind": "complex", "polynomial": "z^3 - 1",
  "window": [-2, 2, -2, 2], "width": 64, "height": 64,
  "seed_point": [5, 1], "length": 500, "burn_in": 100, "orbits": 3, "prng_seed": 4
}"#,
    );
    let dirs: Vec<_> = ["1", "2", "1"].iter().enumerate().map(|(i, t)| {
        let out = tmp.path().join(format!("run{i}"));
        let o = run(&["alpha-random", "--config", &cfg, "--out", out.to_str().unwrap(), "--threads", t]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        out
    }).collect();

    let names = files(&dirs[0]);
    assert_eq!(names, ["orbits.ppm", "orbits.report.json", "orbits_orbit.csv"]);
    for d in &dirs[1..] {
        assert_eq!(files(d), names);
        for n in &names {
            let (a, b) = (fs::read(dirs[0].join(n)).unwrap(), fs::read(d.join(n)).unwrap());
            if n.ends_with(".json") {
                assert_eq!(strip_timings(&a), strip_timings(&b));
            } else {
                assert_eq!(a, b, "{n}");
            }
        }
    }
}

#[test]
fn seed_flag_changes_random_output() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "job.json",
        r#"{
  "mode": "alpha-random", "name": "orbits", "map_kind": "complex", "polynomial": "z^3 - 1",
  "window": [-2, 2, -2, 2], "width": 64, "height": 64,
  "seed_point": [5, 1], "length": 500, "burn_in": 100, "orbits": 1
}"#,
    );
    let csv = |seed: &str| {
        let out = tmp.path().join(format!("s{seed}"));
        let o = run(&["alpha-random", "--config", &cfg, "--out", out.to_str().unwrap(), "--seed", seed]);
        assert_eq!(o.status.code(), Some(0));
        fs::read_to_string(out.join("orbits_orbit.csv")).unwrap()
    };
    let (a, b) = (csv("1"), csv("2"));
    assert_ne!(a, b);
    assert_eq!(a.lines().count(), b.lines().count());
}
