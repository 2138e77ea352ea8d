//! Run configuration: a JSON document with a strict schema (unknown keys
//! rejected) where every field has a default. The resolved form is
//! echoed into the run manifest.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use qrc::kernel::{MaternParams, RidgeConvention, TunerConfig};
use qrc::measure::ShadowPlan;
use qrc::pipeline::MeasurementBackend;
use qrc::reservoir::Topology;
use qrc::rng::derive_seed;
use qrc::synthdata::{FunctionalKind, FunctionalSpec, VarmaSpec};

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub seed: u64,
    pub output_dir: PathBuf,
    pub data: DataConfig,
    pub reservoir: ReservoirSection,
    pub measurement: MeasurementSection,
    pub kernel: KernelSection,
    pub readout: ReadoutSection,
    pub bound: BoundSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            output_dir: PathBuf::from("runs/default"),
            data: DataConfig::default(),
            reservoir: ReservoirSection::default(),
            measurement: MeasurementSection::default(),
            kernel: KernelSection::default(),
            readout: ReadoutSection::default(),
            bound: BoundSection::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DataConfig {
    pub d: usize,
    pub p: usize,
    pub q: usize,
    pub gamma: f64,
    pub eta: f64,
    pub rho_ma: f64,
    pub sigma: f64,
    pub burn_in: usize,
    /// Memory decay of the fading functionals.
    pub alpha: f64,
    pub tasks: Vec<FunctionalKind>,
    pub w: usize,
    pub stride: usize,
    pub n_train: usize,
    pub n_test: usize,
}

impl Default for DataConfig {
    fn default() -> Self {
        Self {
            d: 3,
            p: 3,
            q: 3,
            gamma: 0.9,
            eta: 0.5,
            rho_ma: 0.5,
            sigma: 0.5,
            burn_in: 1000,
            alpha: 0.9,
            tasks: vec![
                FunctionalKind::Forecast,
                FunctionalKind::ExpFading,
                FunctionalKind::Volterra,
            ],
            w: 25,
            stride: 100,
            n_train: 1600,
            n_test: 200,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ReservoirSection {
    pub n: usize,
    pub r_subs: usize,
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// Only the ring generator is named; other graphs come as edge lists.
    pub topology: TopologySection,
}

impl Default for ReservoirSection {
    fn default() -> Self {
        Self {
            n: 5,
            r_subs: 3,
            lambda_min: 0.7,
            lambda_max: 0.95,
            topology: TopologySection::Ring,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "snake_case")]
pub enum TopologySection {
    Ring,
    Edges(Vec<(usize, usize)>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MeasurementSection {
    pub backend: BackendKind,
    /// Classical snapshots per circuit when the backend is `shadows`.
    pub snapshots: usize,
    /// Median-of-means batch count.
    pub groups: usize,
    /// Pauli locality of the measured observable set.
    pub locality: usize,
}

impl Default for MeasurementSection {
    fn default() -> Self {
        Self {
            backend: BackendKind::Exact,
            snapshots: 1000,
            groups: 10,
            locality: 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum BackendKind {
    Exact,
    Shadows,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct KernelSection {
    pub mode: KernelMode,
    /// Fixed-mode parameters.
    pub nu: f64,
    pub xi: f64,
    /// Tune-mode search space.
    pub nu_grid: Vec<f64>,
    pub xi_min: f64,
    pub xi_max: f64,
    pub val_ratio: f64,
    pub tune_lambda_reg: f64,
    pub xi_maxiter: usize,
    /// Chronological prefix used for tuning, keeping the search light.
    pub max_tune_windows: usize,
}

impl Default for KernelSection {
    fn default() -> Self {
        Self {
            mode: KernelMode::Tune,
            nu: 1.5,
            xi: 1.0,
            nu_grid: vec![0.5, 1.5, 2.5, 5.0],
            xi_min: 1e-3,
            xi_max: 1e3,
            val_ratio: 0.2,
            tune_lambda_reg: 1e-6,
            xi_maxiter: 80,
            max_tune_windows: 512,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelMode {
    Fixed,
    Tune,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ReadoutSection {
    pub lambda_reg: f64,
    /// Sweep grid for `sweep-reg`; log-spaced default when empty.
    pub sweep_grid: Vec<f64>,
    /// Nested training sizes for `sweep-n`.
    pub n_grid: Vec<usize>,
    pub convention: RidgeConvention,
}

impl Default for ReadoutSection {
    fn default() -> Self {
        Self {
            lambda_reg: 1e-6,
            sweep_grid: Vec::new(),
            n_grid: vec![100, 200, 400, 800, 1600],
            convention: RidgeConvention::ScaledByN,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BoundSection {
    pub delta: f64,
    /// Direct mixing coefficient at the window gap. Ignored when the
    /// geometric constants are both given.
    pub beta_g: f64,
    pub beta0: Option<f64>,
    pub beta1: Option<f64>,
    /// Optional explicit norm budget; the fitted readout norm otherwise.
    pub lambda_cap: Option<f64>,
}

impl Default for BoundSection {
    fn default() -> Self {
        Self {
            delta: 0.05,
            beta_g: 0.0,
            beta0: None,
            beta1: None,
            lambda_cap: None,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("invalid config {}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if self.data.tasks.is_empty() {
            return bad("data.tasks must not be empty".into());
        }
        if self.data.stride < self.data.w {
            return bad(format!(
                "stride {} smaller than window {} gives a negative gap",
                self.data.stride, self.data.w
            ));
        }
        if self.data.n_train == 0 || self.data.n_test == 0 {
            return bad("n_train and n_test must be positive".into());
        }
        if !(0.0 < self.reservoir.lambda_min && self.reservoir.lambda_min < self.reservoir.lambda_max && self.reservoir.lambda_max < 1.0) {
            return bad("reservoir lambda interval must satisfy 0 < min < max < 1".into());
        }
        if self.measurement.locality == 0 || self.measurement.locality > self.reservoir.n {
            return bad(format!(
                "locality {} out of range for n = {}",
                self.measurement.locality, self.reservoir.n
            ));
        }
        if self.measurement.groups == 0 || self.measurement.snapshots < self.measurement.groups {
            return bad("measurement needs snapshots >= groups >= 1".into());
        }
        if self.readout.n_grid.is_empty() {
            return bad("readout.n_grid must not be empty".into());
        }
        Ok(())
    }

    /// Total number of windows cut from one series.
    pub fn total_windows(&self) -> usize {
        self.data.n_train + self.data.n_test
    }

    pub fn reserve_future(&self) -> bool {
        self.data
            .tasks
            .iter()
            .any(FunctionalKind::needs_future_point)
    }

    /// Series length: exactly what the window layout requires.
    pub fn series_length(&self) -> usize {
        (self.total_windows() - 1) * self.data.stride
            + self.data.w
            + usize::from(self.reserve_future())
    }

    pub fn varma_spec(&self) -> VarmaSpec {
        VarmaSpec {
            d: self.data.d,
            p: self.data.p,
            q: self.data.q,
            gamma: self.data.gamma,
            eta: self.data.eta,
            rho_ma: self.data.rho_ma,
            sigma: self.data.sigma,
            burn_in: self.data.burn_in,
            length: self.series_length(),
            seed: derive_seed(self.seed, "varma", 0),
        }
    }

    pub fn functional_specs(&self) -> Result<Vec<FunctionalSpec>, CliError> {
        self.data
            .tasks
            .iter()
            .map(|&kind| {
                FunctionalSpec::sample(
                    kind,
                    self.data.d,
                    self.data.alpha,
                    derive_seed(self.seed, "functional", kind as u64),
                )
                .map_err(CliError::from)
            })
            .collect()
    }

    pub fn topology(&self) -> Result<Topology, CliError> {
        match &self.reservoir.topology {
            TopologySection::Ring => Ok(Topology::ring(self.reservoir.n)),
            TopologySection::Edges(edges) => {
                Topology::new(self.reservoir.n, edges.clone()).map_err(CliError::from)
            }
        }
    }

    pub fn reservoir_config(&self) -> Result<qrc::reservoir::ReservoirConfig, CliError> {
        qrc::reservoir::ReservoirConfig::sample(
            self.reservoir.n,
            self.reservoir.r_subs,
            self.topology()?,
            (self.reservoir.lambda_min, self.reservoir.lambda_max),
            derive_seed(self.seed, "reservoir", 0),
        )
        .map_err(CliError::from)
    }

    pub fn projector_seed(&self) -> u64 {
        derive_seed(self.seed, "projector", 0)
    }

    pub fn backend(&self) -> Result<MeasurementBackend, CliError> {
        match self.measurement.backend {
            BackendKind::Exact => Ok(MeasurementBackend::Exact),
            BackendKind::Shadows => Ok(MeasurementBackend::Shadows {
                plan: ShadowPlan::new(self.measurement.snapshots, self.measurement.groups)?,
                seed: derive_seed(self.seed, "shadows", 0),
            }),
        }
    }

    pub fn tuner_config(&self) -> TunerConfig {
        TunerConfig {
            nu_grid: self.kernel.nu_grid.clone(),
            xi_bounds: (self.kernel.xi_min, self.kernel.xi_max),
            val_ratio: self.kernel.val_ratio,
            lambda_reg: self.kernel.tune_lambda_reg,
            xi_maxiter: self.kernel.xi_maxiter,
            split_seed: derive_seed(self.seed, "tune-split", 0),
            convention: self.readout.convention,
        }
    }

    pub fn fixed_kernel(&self) -> Result<MaternParams, CliError> {
        MaternParams::new(self.kernel.nu, self.kernel.xi).map_err(CliError::from)
    }

    /// Log-spaced default grid when none is configured.
    pub fn sweep_grid(&self) -> Vec<f64> {
        if !self.readout.sweep_grid.is_empty() {
            return self.readout.sweep_grid.clone();
        }
        let points = 16usize;
        let (lo, hi) = (-12.0f64, 2.0f64);
        (0..points)
            .map(|i| 10f64.powf(lo + (hi - lo) * i as f64 / (points - 1) as f64))
            .collect()
    }

    /// Mixing coefficient at the window gap, from the geometric profile
    /// when its constants are configured.
    pub fn beta_g(&self) -> Result<f64, CliError> {
        match (self.bound.beta0, self.bound.beta1) {
            (Some(b0), Some(b1)) => {
                let g = (self.data.stride - self.data.w) as f64;
                qrc::bounds::beta_from_geometric(b0, b1, g).map_err(CliError::from)
            }
            (None, None) => Ok(self.bound.beta_g),
            _ => Err(CliError::Config(
                "bound.beta0 and bound.beta1 must be given together".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_resolves_to_defaults() {
        let cfg: RunConfig = serde_json::from_str("{}").unwrap();
        assert_eq!(cfg.reservoir.n, 5);
        assert_eq!(cfg.reservoir.r_subs, 3);
        assert_eq!(cfg.data.w, 25);
        assert_eq!(cfg.data.stride, 100);
        assert_eq!(cfg.measurement.snapshots, 1000);
        assert_eq!(cfg.measurement.locality, 2);
        cfg.validate().unwrap();
    }

    #[test]
    fn unknown_keys_rejected() {
        let err = serde_json::from_str::<RunConfig>(r#"{"datasets": {}}"#).unwrap_err();
        assert!(err.to_string().contains("unknown field"));
        let err =
            serde_json::from_str::<RunConfig>(r#"{"data": {"window": 3}}"#).unwrap_err();
        assert!(err.to_string().contains("unknown field"));
    }

    #[test]
    fn series_length_accounts_for_future_point() {
        let mut cfg = RunConfig::default();
        cfg.data.n_train = 10;
        cfg.data.n_test = 2;
        assert!(cfg.reserve_future());
        assert_eq!(cfg.series_length(), 11 * 100 + 25 + 1);
        cfg.data.tasks = vec![FunctionalKind::ExpFading];
        assert_eq!(cfg.series_length(), 11 * 100 + 25);
    }

    #[test]
    fn derived_seeds_are_stable() {
        let a = RunConfig::default();
        let b = RunConfig::default();
        assert_eq!(a.varma_spec().seed, b.varma_spec().seed);
        assert_eq!(a.projector_seed(), b.projector_seed());
        let mut c = RunConfig::default();
        c.seed = 43;
        assert_ne!(a.varma_spec().seed, c.varma_spec().seed);
    }

    #[test]
    fn sweep_grid_default_is_log_spaced() {
        let cfg = RunConfig::default();
        let grid = cfg.sweep_grid();
        assert_eq!(grid.len(), 16);
        assert!((grid[0] - 1e-12).abs() < 1e-20);
        assert!((grid[15] - 1e2).abs() < 1e-10);
        for pair in grid.windows(2) {
            assert!(pair[1] > pair[0]);
        }
    }
}
