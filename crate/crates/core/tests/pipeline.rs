mod common;

use std::fs;
use std::process::Command;

use common::{fixture, h3o_fixture};
use cvqe::pipeline::{read_records, run_cell, run_experiment, CellParams, RunConfig, Sweep, System};

fn small_config(out: &std::path::Path) -> RunConfig {
    let mut cfg = RunConfig::new(vec![fixture("h2_r0.74.fcidump"), h3o_fixture(1.2)]);
    cfg.times = vec![0.5, 2.0];
    cfg.cutoffs = vec![0.0, 0.11];
    cfg.seeds = vec![3, 4];
    cfg.shots = 50;
    cfg.out_dir = Some(out.to_path_buf());
    cfg
}

fn read(dir: &std::path::Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn identical_configs_give_identical_csv() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let untimed = |mut v: Vec<cvqe::pipeline::RunRecord>| {
        v.iter_mut().for_each(|r| r.wall_time_s = 0.0);
        v
    };
    let ra = untimed(run_experiment(&small_config(a.path())).unwrap());
    let mut cfg_b = small_config(b.path());
    cfg_b.workers = Some(1);
    let rb = untimed(run_experiment(&cfg_b).unwrap());
    assert_eq!(ra, rb);
    assert_eq!(ra.len(), 2 * 2 * 2 * 2);
    for name in ["records.csv", "fig3.csv", "fig4.csv", "fig5.csv", "fig6.csv"] {
        assert_eq!(read(a.path(), name), read(b.path(), name), "{name}");
    }
    for r in &ra {
        assert!(r.delta_e >= -1e-10, "{r:?}");
        assert!(r.dim >= 1 && r.dim <= 1 << 14);
        if r.hf_in_basis {
            assert!(r.e_opt <= r.e_hf + 1e-10);
        }
    }
}

#[test]
fn figure_headers_follow_schema() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small_config(dir.path());
    cfg.fixtures.truncate(1);
    run_experiment(&cfg).unwrap();
    let header = |name: &str| read(dir.path(), name).lines().next().unwrap().to_string();
    assert_eq!(header("fig3.csv"), "bond_A,E_guiding_Ha,E_opt_Ha,E_fci_Ha");
    assert_eq!(header("fig4.csv"), "T_au,dE_Ha,dPsi_sq");
    assert_eq!(header("fig5.csv"), "bond_A,eps_Ha,dE_Ha");
    assert_eq!(header("fig6.csv"), "bond_A,eps_Ha,dim");
}

#[test]
fn sweep_selects_tables() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small_config(dir.path());
    cfg.fixtures.truncate(1);
    cfg.sweep = Some(Sweep::Time);
    run_experiment(&cfg).unwrap();
    assert!(dir.path().join("fig4.csv").exists());
    assert!(!dir.path().join("fig3.csv").exists());
    assert!(!dir.path().join("fig6.csv").exists());
}

#[test]
fn rerun_skips_completed_cells() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small_config(dir.path());
    cfg.fixtures.truncate(1);
    cfg.seeds = vec![3];
    run_experiment(&cfg).unwrap();

    // mark an existing record; a recomputed cell would overwrite the marker
    let path = dir.path().join("records.csv");
    let text = read(dir.path(), "records.csv");
    let mut records = read_records(dir.path()).unwrap();
    let marker = 12345.0;
    records[0].e_guiding = marker;
    let mut w = csv::Writer::from_path(&path).unwrap();
    for r in &records {
        w.serialize(r).unwrap();
    }
    w.flush().unwrap();
    assert_ne!(text, read(dir.path(), "records.csv"));

    cfg.seeds = vec![3, 4];
    let all = run_experiment(&cfg).unwrap();
    assert_eq!(all.len(), 2 * 2 * 2);
    assert_eq!(all.iter().filter(|r| r.e_guiding == marker).count(), 1);
    assert_eq!(all.iter().filter(|r| r.replicate == 1).count(), 4);
}

#[test]
fn single_shot_still_completes() {
    let system = System::load(h3o_fixture(1.0)).unwrap();
    let mut p = CellParams::reference(11);
    p.shots = 1;
    let r = run_cell(&system, &p, 0).unwrap();
    assert_eq!(r.distinct_samples, 1);
    assert!(r.dim >= 1);
    assert!(r.delta_e >= -1e-10);
}

#[test]
fn config_file_resolves_relative_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(fixture("h2_r0.74.fcidump"), dir.path().join("h2.fcidump")).unwrap();
    fs::copy(fixture("h2_r0.74.meta.toml"), dir.path().join("h2.meta.toml")).unwrap();
    let cfg_path = dir.path().join("run.toml");
    fs::write(&cfg_path, "fixtures = [\"h2.fcidump\"]\nshots = 20\nseeds = [1, 2]\n").unwrap();
    let cfg = RunConfig::from_file(&cfg_path).unwrap();
    assert_eq!(run_experiment(&cfg).unwrap().len(), 2);
}

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cvqe"))
}

#[test]
fn cli_exit_codes() {
    let out = tempfile::tempdir().unwrap();
    let ok = cli()
        .args(["run", "--shots", "30", "--seed", "5", "--out"])
        .arg(out.path())
        .arg("--fcidump")
        .arg(fixture("h2_r0.74.fcidump"))
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stderr));
    assert!(out.path().join("records.csv").exists());

    let no_fixtures = cli().args(["run", "--shots", "30"]).output().unwrap();
    assert_eq!(no_fixtures.status.code(), Some(2));

    let bad_config = cli().args(["run", "--config", "/nonexistent/run.toml"]).output().unwrap();
    assert_eq!(bad_config.status.code(), Some(2));

    let missing = cli().args(["run", "--fcidump", "/nonexistent/x.fcidump"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(3));

    let dir = tempfile::tempdir().unwrap();
    let lonely = dir.path().join("lonely.fcidump");
    fs::copy(fixture("h2_r0.74.fcidump"), &lonely).unwrap();
    let no_sidecar = cli().arg("run").arg("--fcidump").arg(&lonely).output().unwrap();
    assert_eq!(no_sidecar.status.code(), Some(3));
}
