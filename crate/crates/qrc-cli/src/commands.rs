//! The experiment commands: dataset generation, feature embedding with
//! caching, kernel tuning, the two headline sweeps, and bound reporting.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use sha2::{Digest, Sha256};

use qrc::bounds::{bound, BoundInputs};
use qrc::kernel::{
    cross_distance_matrix, distance_matrix, gram_from_distances, krr_fit_with_gram, mse,
    rkhs_norm, tune, MaternParams,
};
use qrc::measure::{injectivity_audit, FeatureVector};
use qrc::pipeline::embed_dataset;
use qrc::projection::JlProjector;
use qrc::qcore::ObservableSet;
use qrc::reservoir::Reservoir;
use qrc::rng::derive_seed;
use qrc::synthdata::{make_varma, window_end_indices, windows_at};

use crate::config::{KernelMode, RunConfig};
use crate::csvio::{fmt_f64, parse_f64, parse_usize, read_csv, write_csv};
use crate::manifest::{RunManifest, TrendFit, TunedKernel};
use crate::CliError;

type Window = Vec<Vec<f64>>;

pub struct LoadedWindows {
    pub windows: Vec<Window>,
    pub labels: BTreeMap<String, Vec<f64>>,
}

fn record_timing(manifest: &mut RunManifest, key: &str, started: Instant) {
    manifest
        .timings_seconds
        .insert(key.to_owned(), started.elapsed().as_secs_f64());
}

pub fn cmd_generate(cfg: &RunConfig) -> Result<(), CliError> {
    let started = Instant::now();
    cfg.validate()?;
    let dir = &cfg.output_dir;
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Data(format!("cannot create {}: {e}", dir.display())))?;

    let spec = cfg.varma_spec();
    let process = make_varma(&spec)?;
    let radius = process.companion_spectral_radius();
    let series = process.simulate();
    println!(
        "generated VARMA({}, {}) series: {} samples, companion spectral radius {:.4}",
        spec.p,
        spec.q,
        series.len(),
        radius
    );

    let rows: Vec<Vec<String>> = series
        .iter()
        .enumerate()
        .map(|(t, x)| {
            let mut row = vec![t.to_string()];
            row.extend(x.iter().map(|v| fmt_f64(*v)));
            row
        })
        .collect();
    let mut header = vec!["t".to_owned()];
    header.extend((0..spec.d).map(|c| format!("x{c}")));
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    write_csv(&dir.join("series.csv"), &header_refs, &rows)?;

    let ends = window_end_indices(
        series.len(),
        cfg.data.w,
        cfg.data.stride,
        cfg.total_windows(),
        cfg.reserve_future(),
    )?;
    let funcs = cfg.functional_specs()?;
    let mut labels: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    let mut windows: Option<Vec<Window>> = None;
    for f in &funcs {
        let ds = windows_at(&series, &ends, f, cfg.data.w, cfg.data.stride)?;
        labels.insert(f.kind.name().to_owned(), ds.labels);
        windows.get_or_insert(ds.windows);
    }
    let windows = windows.expect("at least one task");

    // no leakage: test windows start strictly after the last train point
    let n_train = cfg.data.n_train;
    let last_train_end = ends[n_train - 1];
    let first_test_start = ends[n_train] + 1 - cfg.data.w;
    assert!(
        first_test_start > last_train_end,
        "train/test time ranges overlap"
    );

    write_window_file(cfg, dir, "windows_train.csv", &windows[..n_train], &labels, &ends[..n_train], 0)?;
    write_window_file(
        cfg,
        dir,
        "windows_test.csv",
        &windows[n_train..],
        &labels,
        &ends[n_train..],
        n_train,
    )?;
    println!(
        "wrote {} train / {} test windows (w={}, stride={}, gap={})",
        n_train,
        cfg.data.n_test,
        cfg.data.w,
        cfg.data.stride,
        cfg.data.stride - cfg.data.w
    );

    let mut manifest = RunManifest {
        version: env!("CARGO_PKG_VERSION").to_owned(),
        master_seed: cfg.seed,
        resolved_config: serde_json::to_value(cfg)
            .map_err(|e| CliError::Config(format!("cannot serialize config: {e}")))?,
        ..RunManifest::default()
    };
    for (tag, seed) in [
        ("varma", spec.seed),
        ("projector", cfg.projector_seed()),
        ("reservoir", derive_seed(cfg.seed, "reservoir", 0)),
        ("shadows", derive_seed(cfg.seed, "shadows", 0)),
        ("tune-split", derive_seed(cfg.seed, "tune-split", 0)),
    ] {
        manifest.derived_seeds.insert(tag.to_owned(), seed);
    }
    for f in &funcs {
        manifest
            .derived_seeds
            .insert(format!("functional-{}", f.kind.name()), f.seed);
    }
    for (task, ys) in &labels {
        let cap = ys[..n_train].iter().fold(0.0f64, |m, y| m.max(y.abs()));
        manifest.upsilon_y.insert(task.clone(), cap);
    }
    manifest.note_once(
        "sub-reservoir contraction factors sampled uniformly from the configured lambda interval",
    );
    manifest.note_once("projection matrix fixed per run seed and shared by all sub-reservoirs");
    record_timing(&mut manifest, "generate", started);
    manifest.save(dir)
}

fn write_window_file(
    cfg: &RunConfig,
    dir: &Path,
    name: &str,
    windows: &[Window],
    labels: &BTreeMap<String, Vec<f64>>,
    ends: &[usize],
    offset: usize,
) -> Result<(), CliError> {
    let mut header = vec!["index".to_owned(), "end_index".to_owned()];
    let task_names: Vec<String> = cfg.data.tasks.iter().map(|t| t.name().to_owned()).collect();
    for t in &task_names {
        header.push(format!("label_{t}"));
    }
    for t in 0..cfg.data.w {
        for c in 0..cfg.data.d {
            header.push(format!("x{t}_{c}"));
        }
    }
    let rows: Vec<Vec<String>> = windows
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let mut row = vec![i.to_string(), ends[i].to_string()];
            for t in &task_names {
                row.push(fmt_f64(labels[t][offset + i]));
            }
            for point in w {
                row.extend(point.iter().map(|v| fmt_f64(*v)));
            }
            row
        })
        .collect();
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    write_csv(&dir.join(name), &header_refs, &rows)
}

pub fn load_windows(cfg: &RunConfig, dir: &Path, name: &str) -> Result<LoadedWindows, CliError> {
    let path = dir.join(name);
    let (header, rows) = read_csv(&path)?;
    let task_names: Vec<String> = cfg.data.tasks.iter().map(|t| t.name().to_owned()).collect();
    let expected_cols = 2 + task_names.len() + cfg.data.w * cfg.data.d;
    if header.len() != expected_cols {
        return Err(CliError::Data(format!(
            "{name}: expected {expected_cols} columns for the configured layout, found {}",
            header.len()
        )));
    }
    let mut windows = Vec::with_capacity(rows.len());
    let mut labels: BTreeMap<String, Vec<f64>> =
        task_names.iter().map(|t| (t.clone(), Vec::new())).collect();
    for row in &rows {
        parse_usize(&row[1], name)?;
        for (k, t) in task_names.iter().enumerate() {
            labels
                .get_mut(t)
                .expect("task present")
                .push(parse_f64(&row[2 + k], name)?);
        }
        let base = 2 + task_names.len();
        let mut window = Vec::with_capacity(cfg.data.w);
        for t in 0..cfg.data.w {
            let mut point = Vec::with_capacity(cfg.data.d);
            for c in 0..cfg.data.d {
                point.push(parse_f64(&row[base + t * cfg.data.d + c], name)?);
            }
            window.push(point);
        }
        windows.push(window);
    }
    Ok(LoadedWindows { windows, labels })
}

fn feature_cache_key(cfg: &RunConfig, windows_bytes: &[u8]) -> Result<String, CliError> {
    let mut hasher = Sha256::new();
    hasher.update(windows_bytes);
    let reservoir = serde_json::to_vec(&cfg.reservoir_config()?)
        .map_err(|e| CliError::Config(format!("cannot hash reservoir config: {e}")))?;
    hasher.update(&reservoir);
    let measurement = serde_json::to_vec(&cfg.measurement)
        .map_err(|e| CliError::Config(format!("cannot hash measurement config: {e}")))?;
    hasher.update(&measurement);
    hasher.update(cfg.projector_seed().to_le_bytes());
    Ok(format!("{:x}", hasher.finalize()))
}

pub fn cmd_embed(cfg: &RunConfig) -> Result<(), CliError> {
    let started = Instant::now();
    cfg.validate()?;
    let dir = &cfg.output_dir;
    let mut manifest = RunManifest::load(dir)?;
    let reservoir = Reservoir::new(cfg.reservoir_config()?)?;
    let projector = JlProjector::new(cfg.reservoir.n, cfg.data.d, cfg.projector_seed())?;
    let obs = ObservableSet::k_local(cfg.reservoir.n, cfg.measurement.locality)?;
    let backend = cfg.backend()?;

    let mut train_features = None;
    for split in ["train", "test"] {
        let windows_name = format!("windows_{split}.csv");
        let windows_bytes = std::fs::read(dir.join(&windows_name))
            .map_err(|e| CliError::Data(format!("missing {windows_name}: {e}")))?;
        let key = feature_cache_key(cfg, &windows_bytes)?;
        let features_path = dir.join(format!("features_{split}.csv"));
        let key_path = dir.join(format!("features_{split}.key"));
        let cached = key_path
            .exists()
            .then(|| std::fs::read_to_string(&key_path).ok())
            .flatten()
            .is_some_and(|k| k.trim() == key && features_path.exists());
        if cached {
            println!("features_{split}.csv: cache hit ({key})");
        } else {
            let loaded = load_windows(cfg, dir, &windows_name)?;
            let t0 = Instant::now();
            let features =
                embed_dataset(&loaded.windows, &reservoir, &projector, &obs, &backend)?;
            println!(
                "features_{split}.csv: embedded {} windows in {:.2}s",
                features.len(),
                t0.elapsed().as_secs_f64()
            );
            write_feature_file(&features_path, &features)?;
            std::fs::write(&key_path, &key)
                .map_err(|e| CliError::Data(format!("cannot write cache key: {e}")))?;
        }
        manifest
            .cache_keys
            .insert(format!("features_{split}"), key.clone());
        if split == "train" {
            train_features = Some(load_features(dir, "train")?);
        }
    }

    // dataset-level collision audit on the training features
    let train_features = train_features.expect("train features exist");
    let audit = injectivity_audit(&train_features, 1e-8)?;
    println!(
        "injectivity audit: min pairwise distance {:.3e}, {} collisions",
        audit.min_pairwise_distance,
        audit.collisions.len()
    );
    manifest.cache_keys.insert(
        "injectivity_min_distance".to_owned(),
        fmt_f64(audit.min_pairwise_distance),
    );
    record_timing(&mut manifest, "embed", started);
    manifest.save(dir)
}

fn write_feature_file(path: &Path, features: &[FeatureVector]) -> Result<(), CliError> {
    let dim = features.first().map_or(0, FeatureVector::len);
    let mut header = vec!["index".to_owned()];
    header.extend((0..dim).map(|i| format!("f{i}")));
    let rows: Vec<Vec<String>> = features
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let mut row = vec![i.to_string()];
            row.extend(f.values.iter().map(|v| fmt_f64(*v)));
            row
        })
        .collect();
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    write_csv(path, &header_refs, &rows)
}

pub fn load_features(dir: &Path, split: &str) -> Result<Vec<FeatureVector>, CliError> {
    let name = format!("features_{split}.csv");
    let (_, rows) = read_csv(&dir.join(&name))?;
    rows.iter()
        .map(|row| {
            row[1..]
                .iter()
                .map(|v| parse_f64(v, &name))
                .collect::<Result<Vec<f64>, _>>()
                .map(|values| FeatureVector { values })
        })
        .collect()
}

/// Kernel parameters for a task: fixed from the config, or the tuned
/// values recorded in the manifest.
fn kernel_params_for(
    cfg: &RunConfig,
    manifest: &RunManifest,
    task: &str,
) -> Result<MaternParams, CliError> {
    match cfg.kernel.mode {
        KernelMode::Fixed => Ok(cfg.fixed_kernel()?),
        KernelMode::Tune => {
            let tuned = manifest.tuned_kernel.get(task).ok_or_else(|| {
                CliError::Data(format!(
                    "no tuned kernel for task '{task}' in the manifest; run `tune` first"
                ))
            })?;
            MaternParams::new(tuned.nu, tuned.xi).map_err(CliError::from)
        }
    }
}

pub fn cmd_tune(cfg: &RunConfig) -> Result<(), CliError> {
    let started = Instant::now();
    cfg.validate()?;
    let dir = &cfg.output_dir;
    let mut manifest = RunManifest::load(dir)?;
    if cfg.kernel.mode == KernelMode::Fixed {
        println!("kernel.mode = fixed; recording the configured parameters");
        for kind in &cfg.data.tasks {
            manifest.tuned_kernel.insert(
                kind.name().to_owned(),
                TunedKernel {
                    nu: cfg.kernel.nu,
                    xi: cfg.kernel.xi,
                    val_mse: f64::NAN,
                },
            );
        }
        record_timing(&mut manifest, "tune", started);
        return manifest.save(dir);
    }

    let features = load_features(dir, "train")?;
    let loaded = load_windows(cfg, dir, "windows_train.csv")?;
    let limit = cfg.kernel.max_tune_windows.min(features.len());
    let tuner = cfg.tuner_config();
    let mut trial_rows: Vec<Vec<String>> = Vec::new();
    for kind in &cfg.data.tasks {
        let task = kind.name();
        let y = &loaded.labels[task];
        let result = tune(&tuner, &features[..limit], &y[..limit])?;
        println!(
            "tuned {task}: nu={}, xi={:.6}, val_mse={:.3e} ({} trials on {limit} windows)",
            result.params.nu,
            result.params.xi,
            result.val_mse,
            result.trials.len()
        );
        for (i, t) in result.trials.iter().enumerate() {
            trial_rows.push(vec![
                task.to_owned(),
                i.to_string(),
                fmt_f64(t.nu),
                fmt_f64(t.xi),
                fmt_f64(t.val_mse),
            ]);
        }
        manifest.tuned_kernel.insert(
            task.to_owned(),
            TunedKernel {
                nu: result.params.nu,
                xi: result.params.xi,
                val_mse: result.val_mse,
            },
        );
    }
    write_csv(
        &dir.join("trials.csv"),
        &["task", "trial", "nu", "xi", "val_mse"],
        &trial_rows,
    )?;
    manifest.note_once(&format!(
        "kernel tuned on the chronological prefix of {limit} training windows"
    ));
    record_timing(&mut manifest, "tune", started);
    manifest.save(dir)
}

pub fn cmd_sweep_reg(cfg: &RunConfig) -> Result<(), CliError> {
    let started = Instant::now();
    cfg.validate()?;
    let dir = &cfg.output_dir;
    let mut manifest = RunManifest::load(dir)?;
    let train = load_features(dir, "train")?;
    let test = load_features(dir, "test")?;
    let train_labels = load_windows(cfg, dir, "windows_train.csv")?.labels;
    let test_labels = load_windows(cfg, dir, "windows_test.csv")?.labels;

    let dist_train = distance_matrix(&train)?;
    let dist_cross = cross_distance_matrix(&test, &train)?;
    let mut grid = cfg.sweep_grid();
    grid.sort_by(|a, b| a.partial_cmp(b).expect("finite lambda grid"));

    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut fit_rows: Vec<Vec<String>> = Vec::new();
    for kind in &cfg.data.tasks {
        let task = kind.name();
        let params = kernel_params_for(cfg, &manifest, task)?;
        let k_train = gram_from_distances(&params, &dist_train)?;
        let k_cross = gram_from_distances(&params, &dist_cross)?;
        let y = &train_labels[task];
        let y_test = &test_labels[task];
        for (gi, &lambda) in grid.iter().enumerate() {
            let model =
                krr_fit_with_gram(&params, lambda, &train, &k_train, y, cfg.readout.convention)?;
            let train_mse = model.train_mse();
            let preds: Vec<f64> = (&k_cross * &model.alpha).iter().cloned().collect();
            let test_mse = mse(&preds, y_test);
            rows.push(vec![
                task.to_owned(),
                fmt_f64(lambda),
                fmt_f64(train_mse),
                fmt_f64(test_mse),
                fmt_f64(rkhs_norm(&model)),
            ]);
            if gi == 0 {
                let fitted = model.predict_train();
                for (i, (truth, pred)) in y.iter().zip(fitted.iter()).enumerate() {
                    fit_rows.push(vec![
                        task.to_owned(),
                        i.to_string(),
                        fmt_f64(*truth),
                        fmt_f64(*pred),
                    ]);
                }
            }
        }
        println!("swept {} regularization points for {task}", grid.len());
    }
    write_csv(
        &dir.join("sweep_reg.csv"),
        &["task", "lambda_reg", "train_mse", "test_mse", "rkhs_norm"],
        &rows,
    )?;
    write_csv(
        &dir.join("train_fit.csv"),
        &["task", "index", "y_true", "y_pred"],
        &fit_rows,
    )?;
    record_timing(&mut manifest, "sweep_reg", started);
    manifest.save(dir)
}

pub fn cmd_sweep_n(cfg: &RunConfig) -> Result<(), CliError> {
    let started = Instant::now();
    cfg.validate()?;
    let dir = &cfg.output_dir;
    let mut manifest = RunManifest::load(dir)?;
    let train = load_features(dir, "train")?;
    let test = load_features(dir, "test")?;
    let train_labels = load_windows(cfg, dir, "windows_train.csv")?.labels;
    let test_labels = load_windows(cfg, dir, "windows_test.csv")?.labels;

    let mut grid: Vec<usize> = cfg
        .readout
        .n_grid
        .iter()
        .cloned()
        .filter(|&n| n <= train.len())
        .collect();
    grid.sort_unstable();
    grid.dedup();
    if grid.is_empty() {
        return Err(CliError::Config(
            "readout.n_grid has no entry within the training set size".into(),
        ));
    }

    let dist_train = distance_matrix(&train)?;
    let dist_cross = cross_distance_matrix(&test, &train)?;
    let lambda = cfg.readout.lambda_reg;

    let mut rows: Vec<Vec<String>> = Vec::new();
    for kind in &cfg.data.tasks {
        let task = kind.name();
        let params = kernel_params_for(cfg, &manifest, task)?;
        let k_train = gram_from_distances(&params, &dist_train)?;
        let k_cross = gram_from_distances(&params, &dist_cross)?;
        let y = &train_labels[task];
        let y_test = &test_labels[task];
        let mut curve: Vec<(usize, f64)> = Vec::new();
        for &n in &grid {
            // nested chronological prefixes keep the stride discipline
            let k_sub = k_train.view((0, 0), (n, n)).into_owned();
            let model = krr_fit_with_gram(
                &params,
                lambda,
                &train[..n],
                &k_sub,
                &y[..n],
                cfg.readout.convention,
            )?;
            let preds: Vec<f64> = (k_cross.columns(0, n) * &model.alpha).iter().cloned().collect();
            let test_mse = mse(&preds, y_test);
            rows.push(vec![
                task.to_owned(),
                n.to_string(),
                fmt_f64(model.train_mse()),
                fmt_f64(test_mse),
            ]);
            curve.push((n, test_mse));
        }
        let fit = fit_inverse_sqrt_trend(&curve);
        println!(
            "{task}: test MSE {:.3e} -> {:.3e} over N in [{}, {}]; 1/sqrt(N) trend r^2 = {:.3}",
            curve.first().expect("nonempty grid").1,
            curve.last().expect("nonempty grid").1,
            grid.first().expect("nonempty"),
            grid.last().expect("nonempty"),
            fit.r_squared
        );
        manifest.sweep_n_fit.insert(task.to_owned(), fit);
    }
    write_csv(
        &dir.join("sweep_n.csv"),
        &["task", "n_train", "train_mse", "test_mse"],
        &rows,
    )?;
    record_timing(&mut manifest, "sweep_n", started);
    manifest.save(dir)
}

/// Least squares for test_mse ~ floor + coeff / sqrt(N).
fn fit_inverse_sqrt_trend(curve: &[(usize, f64)]) -> TrendFit {
    let m = curve.len() as f64;
    let xs: Vec<f64> = curve.iter().map(|(n, _)| 1.0 / (*n as f64).sqrt()).collect();
    let ys: Vec<f64> = curve.iter().map(|(_, e)| *e).collect();
    let mean_x = xs.iter().sum::<f64>() / m;
    let mean_y = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x) * (x - mean_x)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let coeff = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let floor = mean_y - coeff * mean_x;
    let ss_tot: f64 = ys.iter().map(|y| (y - mean_y) * (y - mean_y)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let fit = floor + coeff * x;
            (y - fit) * (y - fit)
        })
        .sum();
    let r_squared = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else { 1.0 };
    TrendFit {
        floor,
        coeff,
        r_squared,
    }
}

pub fn cmd_bound(cfg: &RunConfig) -> Result<(), CliError> {
    let started = Instant::now();
    cfg.validate()?;
    let dir = &cfg.output_dir;
    let mut manifest = RunManifest::load(dir)?;
    let train = load_features(dir, "train")?;
    let test = load_features(dir, "test")?;
    let train_labels = load_windows(cfg, dir, "windows_train.csv")?.labels;
    let test_labels = load_windows(cfg, dir, "windows_test.csv")?.labels;
    let reservoir_config = cfg.reservoir_config()?;
    let n_obs = ObservableSet::k_local(cfg.reservoir.n, cfg.measurement.locality)?.len();
    let beta_g = cfg.beta_g()?;

    let dist_train = distance_matrix(&train)?;
    let dist_cross = cross_distance_matrix(&test, &train)?;

    let mut rows: Vec<Vec<String>> = Vec::new();
    for kind in &cfg.data.tasks {
        let task = kind.name();
        let params = kernel_params_for(cfg, &manifest, task)?;
        let k_train = gram_from_distances(&params, &dist_train)?;
        let k_cross = gram_from_distances(&params, &dist_cross)?;
        let y = &train_labels[task];
        let model = krr_fit_with_gram(
            &params,
            cfg.readout.lambda_reg,
            &train,
            &k_train,
            y,
            cfg.readout.convention,
        )?;
        let train_mse = model.train_mse();
        let preds: Vec<f64> = (&k_cross * &model.alpha).iter().cloned().collect();
        let test_mse = mse(&preds, &test_labels[task]);
        let observed_gap = (test_mse - train_mse).abs();

        // persist the fitted readout, referencing the feature cache
        let support_key = manifest
            .cache_keys
            .get("features_train")
            .cloned()
            .unwrap_or_default();
        let record = model.record(&support_key);
        let model_path = dir.join(format!("model_{task}.json"));
        let text = serde_json::to_string_pretty(&record)
            .map_err(|e| CliError::Data(format!("cannot serialize model: {e}")))?;
        std::fs::write(&model_path, text)
            .map_err(|e| CliError::Data(format!("cannot write {}: {e}", model_path.display())))?;

        let lambda_cap = cfg.bound.lambda_cap.unwrap_or_else(|| rkhs_norm(&model));
        let upsilon = *manifest.upsilon_y.get(task).ok_or_else(|| {
            CliError::Data(format!("manifest lacks upsilon_y for task '{task}'"))
        })?;
        let inputs = BoundInputs {
            n_windows: train.len(),
            w: cfg.data.w,
            lambda_cap,
            upsilon_y: upsilon,
            nu: params.nu,
            xi: params.xi,
            r_subs: cfg.reservoir.r_subs,
            n_obs,
            lambda_star: reservoir_config.lambda_star(),
            delta: cfg.bound.delta,
            beta_g,
        };
        // the truncation term needs nu > 1; a task tuned to the rough
        // exponential kernel gets flagged instead of aborting the run
        let (status, report) = if params.nu > 1.0 {
            let report = bound(&inputs)?;
            let status = if report.vacuous { "vacuous" } else { "ok" };
            (status, Some(report))
        } else {
            println!("{task}: bound unavailable (nu = {} <= 1)", params.nu);
            ("nu_out_of_range", None)
        };
        match &report {
            Some(r) if r.vacuous => {
                println!("{task}: bound vacuous (delta' = {:.3e} <= 0)", r.delta_prime)
            }
            Some(r) => println!(
                "{task}: bound total {:.3e} vs observed gap {:.3e}",
                r.total, observed_gap
            ),
            None => {}
        }
        let term = |f: fn(&qrc::bounds::BoundReport) -> f64| -> String {
            report.as_ref().map_or("nan".to_owned(), |r| fmt_f64(f(r)))
        };
        rows.push(vec![
            task.to_owned(),
            train.len().to_string(),
            fmt_f64(lambda_cap),
            fmt_f64(upsilon),
            term(|r| r.rademacher_term),
            term(|r| r.mixing_penalty),
            term(|r| r.truncation_term),
            term(|r| r.total),
            term(|r| r.delta_prime),
            status.to_owned(),
            fmt_f64(train_mse),
            fmt_f64(test_mse),
            fmt_f64(observed_gap),
            report
                .as_ref()
                .map_or("nan".to_owned(), |r| {
                    (r.vacuous || r.total >= observed_gap).to_string()
                }),
        ]);
    }
    write_csv(
        &dir.join("bound.csv"),
        &[
            "task",
            "n_train",
            "lambda_cap",
            "upsilon_y",
            "rademacher_term",
            "mixing_penalty",
            "truncation_term",
            "total",
            "delta_prime",
            "status",
            "train_mse",
            "test_mse",
            "observed_gap",
            "bound_covers_gap",
        ],
        &rows,
    )?;
    record_timing(&mut manifest, "bound", started);
    manifest.save(dir)
}

pub fn cmd_all(cfg: &RunConfig) -> Result<(), CliError> {
    cmd_generate(cfg)?;
    cmd_embed(cfg)?;
    cmd_tune(cfg)?;
    cmd_sweep_reg(cfg)?;
    cmd_sweep_n(cfg)?;
    cmd_bound(cfg)
}
