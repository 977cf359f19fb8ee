use std::process::Command;

use levelset::config::{ProblemKind, RunConfig};
use levelset::runner::bench;
use levelset::snapshot::read_snapshot;
use levelset::RunReport;

fn levelset() -> Command {
    Command::new(env!("CARGO_BIN_EXE_levelset"))
}

#[test]
fn run_writes_one_snapshot_per_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let out = levelset()
        .args([
            "run",
            "--problem",
            "rockets",
            "--grid-counts",
            "11",
            "--tspan",
            "-0.5",
            "0",
            "--checkpoints",
            "3",
        ])
        .arg("--output")
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    for (k, t) in [0.0, 0.25, 0.5].iter().enumerate() {
        let s = read_snapshot(&dir.path().join(format!("snapshot_{k:03}.bin"))).unwrap();
        assert_eq!(s.counts, [11, 11, 11]);
        assert_eq!(s.mins, [-64.0; 3]);
        assert!((s.time - t).abs() < 1e-12);
    }
    assert!(!dir.path().join("snapshot_003.bin").exists());
    let report = std::fs::read_to_string(dir.path().join("report.txt")).unwrap();
    let r = RunReport::from_text(&report).unwrap();
    assert!(r.steps_taken > 0);
    assert!(report.contains("scheme = eno2"));
}

#[test]
fn config_file_and_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(
        &cfg,
        "# rotation\nproblem = rigid_rotation\ngrid_counts = 15\ntspan = 0 0.3\ncheckpoints = 2\nscheme = eno3\n",
    )
    .unwrap();
    let out = levelset()
        .args(["run", "--scheme", "first", "--config"])
        .arg(&cfg)
        .arg("--output")
        .arg(dir.path().join("o"))
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report = std::fs::read_to_string(dir.path().join("o/report.txt")).unwrap();
    assert!(report.contains("scheme = first"));
    assert!(report.contains("grid_counts = 15"));
}

#[test]
fn invalid_scheme_fails_before_compute() {
    let dir = tempfile::tempdir().unwrap();
    let out = levelset()
        .args(["run", "--scheme", "eno7"])
        .arg("--output")
        .arg(dir.path().join("never"))
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("first, eno2, eno3, weno5"), "{err}");
    assert!(!dir.path().join("never").exists());
}

#[test]
fn zero_length_rotation_writes_only_the_initial_surface() {
    let dir = tempfile::tempdir().unwrap();
    let out = levelset()
        .args([
            "run",
            "--problem",
            "rigid_rotation",
            "--grid-counts",
            "21",
            "--tspan",
            "0",
            "0",
        ])
        .arg("--output")
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(dir.path().join("snapshot_000.bin").exists());
    assert!(!dir.path().join("snapshot_001.bin").exists());
    let r = RunReport::from_text(&std::fs::read_to_string(dir.path().join("report.txt")).unwrap())
        .unwrap();
    assert_eq!(r.steps_taken, 0);
}

#[test]
fn convergence_subcommand_prints_csv() {
    let out = levelset()
        .args(["convergence", "--scheme", "eno2", "--refinements", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,dx,max_error,order");
    assert_eq!(lines.len(), 4);
    let order: f64 = lines[3].rsplit(',').next().unwrap().parse().unwrap();
    assert!(order > 1.8);
}

#[test]
fn bench_repeats_agree_on_step_count() {
    let mut c = RunConfig::defaults(ProblemKind::RigidRotation);
    c.grid_counts = 21;
    c.tspan = (0.0, 0.5);
    c.checkpoints = 2;
    c.repeats = 3;
    let r = bench(&c).unwrap();
    assert_eq!(r.repeats, 3);
    assert!(r.steps_taken > 0);
    assert!(r.global_time_std >= 0.0);
}

#[test]
fn bench_subcommand_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = levelset()
        .args([
            "bench",
            "--problem",
            "rigid_rotation",
            "--grid-counts",
            "15",
            "--tspan",
            "0",
            "0.2",
            "--checkpoints",
            "2",
            "--repeats",
            "2",
        ])
        .arg("--output")
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let r = RunReport::from_text(
        &std::fs::read_to_string(dir.path().join("bench_report.txt")).unwrap(),
    )
    .unwrap();
    assert_eq!(r.repeats, 2);
}
