use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn flrw(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flrw")).args(args).current_dir(cwd).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn list_tests_names_every_builtin() {
    let dir = tempfile::tempdir().unwrap();
    let o = flrw(&["list-tests"], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    for id in ["expanding_riemann", "oscillatory_density", "steady_b2", "trig_2d_contracting"] {
        assert!(text.contains(id), "{id} missing from\n{text}");
    }
}

#[test]
fn run_writes_snapshots_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# short run\ntest = oscillatory_density\nN = 50\nt_end = 1.3\nsnapshots = 1.1, 1.2\n").unwrap();
    let o = flrw(&["run", "run.cfg", "--out", "out"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let out = dir.path().join("out");
    for f in ["config.txt", "initial.csv", "snapshot_001.csv", "snapshot_002.csv", "final.csv", "report.csv"] {
        assert!(out.join(f).is_file(), "{f} missing");
    }
    let report = fs::read_to_string(out.join("report.csv")).unwrap();
    assert_eq!(report.lines().count(), 1 + 4);
    let snap = fs::read_to_string(out.join("snapshot_001.csv")).unwrap();
    assert!(snap.contains("# spec.test = oscillatory_density"));
    assert_eq!(snap.lines().filter(|l| !l.starts_with('#')).count(), 1 + 50);

    let o = flrw(&["compare", "out/initial.csv", "out/final.csv"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).lines().any(|l| l.starts_with("rho ")));
    let o = flrw(&["compare", "out/final.csv", "out/final.csv"], dir.path());
    let rho = stdout(&o).lines().find(|l| l.starts_with("rho ")).unwrap().to_string();
    assert!(rho.split_whitespace().skip(1).all(|v| v.parse::<f64>().unwrap() == 0.0), "{rho}");
}

#[test]
fn runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("a.cfg"), "test = expanding_riemann\nN = 40\n").unwrap();
    for out in ["one", "two"] {
        assert!(flrw(&["run", "a.cfg", "--out", out], dir.path()).status.success());
    }
    for f in ["final.csv", "report.csv"] {
        assert_eq!(
            fs::read(dir.path().join("one").join(f)).unwrap(),
            fs::read(dir.path().join("two").join(f)).unwrap()
        );
    }
}

#[test]
fn config_errors_exit_with_two_and_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.cfg"), "test = expanding_riemann\ncfl = 0.6\n").unwrap();
    let o = flrw(&["run", "bad.cfg"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("line 2") && err.contains("allow_cfl_above_half"), "{err}");

    fs::write(dir.path().join("typo.cfg"), "test = steady_b2\nkapa = 2\n").unwrap();
    let o = flrw(&["run", "typo.cfg"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown key"));

    let o = flrw(&["run", "missing.cfg"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_failures_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("a.cfg"), "test = expanding_riemann\nN = 10\n").unwrap();
    fs::write(dir.path().join("blocker"), "not a directory").unwrap();
    let o = flrw(&["run", "a.cfg", "--out", "blocker/sub"], dir.path());
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn convergence_prints_one_row_per_grid() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("c.cfg"), "test = expanding_riemann\n").unwrap();
    let o = flrw(&["convergence", "c.cfg", "--grids", "20,40", "--reference", "400"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].trim_start().starts_with("20"));
    let e20: f64 = rows[0].split_whitespace().nth(1).unwrap().parse().unwrap();
    let e40: f64 = rows[1].split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!(e40 < e20, "{text}");

    fs::write(dir.path().join("d.cfg"), "test = gaussian_2d\n").unwrap();
    let o = flrw(&["convergence", "d.cfg"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}
