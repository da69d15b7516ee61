use std::fs;
use std::path::Path;
use std::process::Command;

use icsde_core::cli::{cmd_report, cmd_run, read_records, BudgetOverride, ExperimentConfig, RUNS_FILE};

fn config(dir: &Path, body: &str) -> ExperimentConfig {
    let text = format!("output_dir = {:?}\n{body}", dir.display().to_string());
    ExperimentConfig::from_toml(&text).unwrap()
}

/// Runs file with wall-clock fields blanked.
fn normalized_runs(dir: &Path) -> String {
    fs::read_to_string(dir.join(RUNS_FILE))
        .unwrap()
        .lines()
        .map(|l| {
            let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
            v["wall_time_ms"] = serde_json::Value::from(0.0);
            v.to_string()
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn config_round_trips_and_rejects_junk() {
    let cfg = ExperimentConfig::from_toml(
        "problems = [\"mw*\"]\nvariants = [\"icsde-ga\", \"cdp-baseline\"]\nruns = 3\nbudget_override = { n = 20, fes = 400 }\n[de]\nf = 0.7\n",
    )
    .unwrap();
    assert_eq!(cfg.budget_override, Some(BudgetOverride::Fixed { n: 20, fes: 400 }));
    assert_eq!(cfg.de.unwrap().scale, 0.7);
    assert_eq!(ExperimentConfig::from_toml(&cfg.to_toml().unwrap()).unwrap(), cfg);

    for bad in [
        "problems = [\"mw1\"]\nvariants = [\"icsde\"]\ncolour = 1\n",
        "problems = [\"mw1\"]\nvariants = [\"nsga2\"]\n",
        "problems = [\"zz9\"]\nvariants = [\"icsde\"]\n",
        "problems = [\"mw1\"]\nvariants = [\"icsde\"]\nruns = 0\n",
        "problems = [\"mw1\"]\nvariants = [\"icsde\"]\nbudget_override = -1.0\n",
    ] {
        assert!(ExperimentConfig::from_toml(bad).is_err(), "{bad}");
    }
}

#[test]
fn run_then_resume() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(
        dir.path(),
        "problems = [\"mw1\"]\nvariants = [\"icsde-ga\"]\nruns = 3\nbudget_override = { n = 10, fes = 200 }\n",
    );
    let first = cmd_run(&cfg).unwrap();
    assert_eq!((first.executed, first.skipped, first.failed), (3, 0, 0));
    let records = read_records(&dir.path().join(RUNS_FILE)).unwrap();
    assert_eq!(records.len(), 3);
    assert_eq!(records.iter().map(|r| r.seed).collect::<Vec<_>>(), vec![0, 1, 2]);
    assert!(records.iter().all(|r| r.fes_used == 200 && r.n == 10 && r.wall_time_ms > 0.0));

    let again = cmd_run(&cfg).unwrap();
    assert_eq!((again.executed, again.skipped), (0, 3));

    // raising the run count executes only the new seeds
    let more = config(
        dir.path(),
        "problems = [\"mw1\"]\nvariants = [\"icsde-ga\"]\nruns = 5\nbudget_override = { n = 10, fes = 200 }\n",
    );
    let s = cmd_run(&more).unwrap();
    assert_eq!((s.executed, s.skipped), (2, 3));
    assert_eq!(read_records(&dir.path().join(RUNS_FILE)).unwrap().len(), 5);
}

#[test]
fn budget_scale_applies_to_default() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), "problems = [\"mw1\"]\nvariants = [\"icsde\"]\nbudget_override = 0.1\n");
    cmd_run(&cfg).unwrap();
    let r = &read_records(&dir.path().join(RUNS_FILE)).unwrap()[0];
    assert_eq!(r.n, 100);
    assert_eq!(r.fes_used, 6000);
    assert_eq!(r.variant, "icsde");
}

#[test]
fn identical_configs_give_identical_runs() {
    let body = "problems = [\"mw3\", \"lircmop1\"]\nvariants = [\"icsde\", \"cdp-baseline\"]\nruns = 2\nparallelism = 2\nbudget_override = { n = 12, fes = 300 }\n";
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    cmd_run(&config(a.path(), body)).unwrap();
    cmd_run(&config(b.path(), body)).unwrap();
    assert_eq!(normalized_runs(a.path()), normalized_runs(b.path()));
}

#[test]
fn report_writes_tables() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(
        dir.path(),
        "problems = [\"mw2\", \"c1_dtlz1\"]\nvariants = [\"icsde\", \"cdp-baseline\"]\nruns = 5\nbudget_override = { n = 10, fes = 300 }\n",
    );
    cmd_run(&cfg).unwrap();
    let out = dir.path().join("report");
    let summary = cmd_report(&dir.path().join(RUNS_FILE), "icsde", &out).unwrap();
    assert_eq!(summary.instances.len(), 2);
    for f in ["report.csv", "report.md", "friedman.csv", "radar.csv"] {
        let text = fs::read_to_string(out.join(f)).unwrap();
        assert!(!text.trim().is_empty(), "{f} is empty");
    }
    let md = fs::read_to_string(out.join("report.md")).unwrap();
    assert!(md.contains("+/-/="));
    // reports are a pure function of the records
    let again = dir.path().join("again");
    cmd_report(&dir.path().join(RUNS_FILE), "icsde", &again).unwrap();
    for f in ["report.csv", "report.md", "friedman.csv", "radar.csv"] {
        assert_eq!(fs::read(out.join(f)).unwrap(), fs::read(again.join(f)).unwrap());
    }
}

#[test]
fn binary_honours_output_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("exp.toml");
    fs::write(
        &cfg_path,
        "problems = [\"dascmop1\"]\nvariants = [\"icsde\"]\noutput_dir = \"ignored\"\nbudget_override = { n = 10, fes = 100 }\n",
    )
    .unwrap();
    let target = dir.path().join("elsewhere");
    let status = Command::new(env!("CARGO_BIN_EXE_icsde"))
        .arg("run")
        .arg(&cfg_path)
        .env("ICSDE_OUTPUT_DIR", &target)
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    assert_eq!(read_records(&target.join(RUNS_FILE)).unwrap().len(), 1);
    assert!(!dir.path().join("ignored").exists());

    let list = Command::new(env!("CARGO_BIN_EXE_icsde")).arg("list-problems").output().unwrap();
    let text = String::from_utf8(list.stdout).unwrap();
    assert_eq!(text.lines().count(), 42);

    let bad = Command::new(env!("CARGO_BIN_EXE_icsde"))
        .args(["bench", "nope1"])
        .output()
        .unwrap();
    assert!(!bad.status.success());
}
