//! End-to-end tests of the `bqt-sim` binary: exit codes, file output,
//! determinism on a small sweep.

use std::fs;
use std::path::Path;
use std::process::Command;

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bqt-sim"))
}

const SMALL_CONFIG: &str = "\
channel = dephasing
tau = 0.1
u_values = 0,0.5
t = 0,5,10
outputs = negativity,p_of_t
";

#[test]
fn sweep_writes_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sweep.cfg");
    fs::write(&config, SMALL_CONFIG).unwrap();
    let out = dir.path().join("results");
    let status = binary()
        .args(["sweep", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());

    let csv = fs::read_to_string(out.join("sweep.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "t,u,t_star,negativity,p_of_t");
    assert_eq!(csv.lines().count(), 1 + 2 * 10);
    assert!(out.join("sweep_negativity.svg").exists());
    assert!(out.join("sweep_p_of_t.svg").exists());
}

#[test]
fn identical_runs_emit_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sweep.cfg");
    fs::write(&config, SMALL_CONFIG).unwrap();
    let mut outputs = Vec::new();
    for name in ["a", "b"] {
        let out = dir.path().join(name);
        let status = binary()
            .args(["sweep", "--config"])
            .arg(&config)
            .arg("--out")
            .arg(&out)
            .status()
            .unwrap();
        assert!(status.success());
        outputs.push((
            fs::read(out.join("sweep.csv")).unwrap(),
            fs::read(out.join("sweep_negativity.svg")).unwrap(),
        ));
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn missing_config_exits_with_io_code() {
    let dir = tempfile::tempdir().unwrap();
    let status = binary()
        .args(["sweep", "--config"])
        .arg(dir.path().join("nope.cfg"))
        .arg("--out")
        .arg(dir.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn invalid_config_exits_with_validation_code() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.cfg");
    fs::write(&config, "channel = dephasing\ntau = 0.1\nu_values = 1.5\nt = 0,1,2\n").unwrap();
    let output = binary()
        .args(["sweep", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(dir.path().join("out"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("u_values"), "stderr: {stderr}");
}

#[test]
fn unknown_preset_exits_with_validation_code() {
    let dir = tempfile::tempdir().unwrap();
    let status = binary()
        .args(["preset", "fig42", "--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
}

#[test]
fn oracle_backend_override_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sweep.cfg");
    fs::write(&config, SMALL_CONFIG).unwrap();
    let out = dir.path().join("oracle");
    let status = binary()
        .args(["sweep", "--backend", "oracle", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    // Closed form and oracle negativity agree, so the tables match values.
    assert!(Path::new(&out.join("sweep.csv")).exists());
}
