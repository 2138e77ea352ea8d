//! End-to-end checks of the `qrc` binary: exit codes, emitted files,
//! rerun determinism and feature caching, on a configuration small
//! enough to run in seconds.

use std::path::Path;
use std::process::{Command, Output};

fn qrc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qrc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, body: &str) -> std::path::PathBuf {
    let path = dir.join("config.json");
    std::fs::write(&path, body).unwrap();
    path
}

fn small_config(out: &Path) -> String {
    format!(
        r#"{{
  "seed": 5,
  "output_dir": "{}",
  "data": {{ "w": 5, "stride": 8, "n_train": 30, "n_test": 10 }},
  "reservoir": {{ "n": 2, "r_subs": 2 }},
  "kernel": {{ "max_tune_windows": 30, "xi_maxiter": 8 }},
  "readout": {{ "n_grid": [16, 30], "sweep_grid": [1e-9, 1e-3, 1.0] }}
}}"#,
        out.display()
    )
}

#[test]
fn full_pipeline_emits_all_files_and_is_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    let out_a = tmp.path().join("a");
    let cfg = write_config(tmp.path(), &small_config(&out_a));

    let run = qrc(&["all", "--config", cfg.to_str().unwrap()]);
    assert!(
        run.status.success(),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&run.stdout),
        String::from_utf8_lossy(&run.stderr)
    );
    let files = [
        "series.csv",
        "windows_train.csv",
        "windows_test.csv",
        "features_train.csv",
        "features_test.csv",
        "trials.csv",
        "sweep_reg.csv",
        "sweep_n.csv",
        "train_fit.csv",
        "bound.csv",
        "manifest.json",
    ];
    for f in files {
        assert!(out_a.join(f).exists(), "missing {f}");
    }
    // every CSV carries the manifest reference and a header row
    for f in files.iter().filter(|f| f.ends_with(".csv")) {
        let text = std::fs::read_to_string(out_a.join(f)).unwrap();
        assert!(text.starts_with("# manifest=manifest.json"), "{f}");
        assert!(text.lines().nth(1).unwrap().contains(','), "{f}");
    }

    // a fitted model is persisted per task, referencing the feature cache
    let model_text = std::fs::read_to_string(out_a.join("model_forecast.json")).unwrap();
    let key = std::fs::read_to_string(out_a.join("features_train.key")).unwrap();
    assert!(model_text.contains(key.trim()));

    // the bound never falls below the observed gap (true or nan status)
    let bound_text = std::fs::read_to_string(out_a.join("bound.csv")).unwrap();
    for line in bound_text.lines().skip(2) {
        let covers = line.rsplit(',').next().unwrap();
        assert!(covers == "true" || covers == "nan", "bound below gap: {line}");
    }

    // byte-identical CSVs on a rerun into a fresh directory
    let out_b = tmp.path().join("b");
    let cfg_b = write_config(&tmp.path().join("."), &small_config(&out_b));
    let rerun = qrc(&["all", "--config", cfg_b.to_str().unwrap()]);
    assert!(rerun.status.success());
    for f in files.iter().filter(|f| f.ends_with(".csv")) {
        let a = std::fs::read(out_a.join(f)).unwrap();
        let b = std::fs::read(out_b.join(f)).unwrap();
        assert_eq!(a, b, "{f} differs across reruns");
    }
}

#[test]
fn embed_reports_cache_hits_on_second_run() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("run");
    let cfg = write_config(tmp.path(), &small_config(&out));
    assert!(qrc(&["generate", "--config", cfg.to_str().unwrap()]).status.success());
    let first = qrc(&["embed", "--config", cfg.to_str().unwrap()]);
    assert!(first.status.success());
    assert!(!String::from_utf8_lossy(&first.stdout).contains("cache hit"));
    let second = qrc(&["embed", "--config", cfg.to_str().unwrap()]);
    assert!(second.status.success());
    let stdout = String::from_utf8_lossy(&second.stdout);
    assert_eq!(
        stdout.matches("cache hit").count(),
        2,
        "expected both splits cached: {stdout}"
    );
}

#[test]
fn unknown_config_key_exits_with_config_error() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), r#"{ "tasks": ["forecast"] }"#);
    let run = qrc(&["generate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&run.stderr).contains("unknown field"));
}

#[test]
fn missing_dataset_exits_with_data_error() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("nothing");
    let cfg = write_config(tmp.path(), &small_config(&out));
    let run = qrc(&["embed", "--config", cfg.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(3));
}

#[test]
fn seed_override_changes_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("run");
    let cfg = write_config(tmp.path(), &small_config(&out));
    assert!(qrc(&["generate", "--config", cfg.to_str().unwrap()]).status.success());
    let base = std::fs::read(out.join("series.csv")).unwrap();
    assert!(qrc(&["generate", "--config", cfg.to_str().unwrap(), "--seed", "99"])
        .status
        .success());
    let reseeded = std::fs::read(out.join("series.csv")).unwrap();
    assert_ne!(base, reseeded);
}

#[test]
fn test_windows_start_after_train_windows() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("run");
    let cfg = write_config(tmp.path(), &small_config(&out));
    assert!(qrc(&["generate", "--config", cfg.to_str().unwrap()]).status.success());
    let read_ends = |name: &str| -> Vec<usize> {
        std::fs::read_to_string(out.join(name))
            .unwrap()
            .lines()
            .skip(2)
            .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
            .collect()
    };
    let train = read_ends("windows_train.csv");
    let test = read_ends("windows_test.csv");
    let w = 5;
    assert!(train.last().unwrap() < &(test[0] + 1 - w));
    // uniform stride across the boundary
    assert_eq!(test[0] - train.last().unwrap(), 8);
}
