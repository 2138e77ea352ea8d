//! Synthetic weakly-dependent inputs: a stable VARMA(p, q) generator with
//! tanh squashing, the three label functionals (one-step forecast,
//! exponentially fading linear, order-2 Volterra), and strided window
//! extraction with gap control.

use nalgebra::{DMatrix, DVector};
use rand::Rng as _;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::rng::rng_from_seed;
use crate::{Error, Result};

/// Parameters of the stable VARMA family. The AR side is normalized so
/// the spectral norms of the lag matrices sum to the stability budget
/// gamma < 1; the MA amplitudes decay geometrically.
///
/// sigma = 0 is accepted as a degenerate noiseless simulation; the
/// mixing guarantees assume sigma > 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VarmaSpec {
    pub d: usize,
    pub p: usize,
    pub q: usize,
    pub gamma: f64,
    pub eta: f64,
    pub rho_ma: f64,
    pub sigma: f64,
    pub burn_in: usize,
    pub length: usize,
    pub seed: u64,
}

impl Default for VarmaSpec {
    fn default() -> Self {
        Self {
            d: 3,
            p: 3,
            q: 3,
            gamma: 0.7,
            eta: 0.5,
            rho_ma: 0.5,
            sigma: 1.0,
            burn_in: 1000,
            length: 10_000,
            seed: 0,
        }
    }
}

impl VarmaSpec {
    pub fn validate(&self) -> Result<()> {
        if self.d == 0 || self.p == 0 {
            return Err(Error::invalid("need d >= 1 and p >= 1"));
        }
        if !(0.0 < self.gamma && self.gamma < 1.0) {
            return Err(Error::invalid("gamma must lie in (0, 1)"));
        }
        if !(self.eta > 0.0) {
            return Err(Error::invalid("eta must be positive"));
        }
        if !(0.0 < self.rho_ma && self.rho_ma < 1.0) {
            return Err(Error::invalid("rho_ma must lie in (0, 1)"));
        }
        if !(self.sigma >= 0.0) {
            return Err(Error::invalid("sigma must be >= 0"));
        }
        if self.length == 0 {
            return Err(Error::invalid("length must be positive"));
        }
        Ok(())
    }
}

/// Sampled coefficient matrices of one VARMA instance.
#[derive(Debug, Clone)]
pub struct VarmaProcess {
    pub spec: VarmaSpec,
    /// AR matrices Phi_i = a_i U_i with sum_i ||Phi_i||_2 = gamma.
    pub phi: Vec<DMatrix<f64>>,
    /// MA matrices Theta_j = eta rho^{j-1} V_j; Theta_0 = I is implicit.
    pub theta: Vec<DMatrix<f64>>,
}

fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    m.clone().svd(false, false).singular_values.max()
}

fn gaussian_matrix(d: usize, rng: &mut crate::rng::Rng) -> DMatrix<f64> {
    DMatrix::from_fn(d, d, |_, _| rng.sample::<f64, _>(StandardNormal))
}

/// Draws the coefficient matrices. The draw order is part of the
/// reproducibility contract: AR directions, AR weights, MA directions.
pub fn make_varma(spec: &VarmaSpec) -> Result<VarmaProcess> {
    spec.validate()?;
    let mut rng = rng_from_seed(spec.seed);
    let d = spec.d;

    let directions: Vec<DMatrix<f64>> = (0..spec.p)
        .map(|_| {
            let g = gaussian_matrix(d, &mut rng);
            let norm = spectral_norm(&g);
            g / norm
        })
        .collect();
    let weights: Vec<f64> = (0..spec.p).map(|_| rng.gen_range(0.0..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let phi: Vec<DMatrix<f64>> = directions
        .into_iter()
        .zip(&weights)
        .map(|(u, &w)| u * (spec.gamma * w / total))
        .collect();

    let theta: Vec<DMatrix<f64>> = (0..spec.q)
        .map(|j| {
            let g = gaussian_matrix(d, &mut rng);
            let norm = spectral_norm(&g);
            g * (spec.eta * spec.rho_ma.powi(j as i32) / norm)
        })
        .collect();

    Ok(VarmaProcess {
        spec: spec.clone(),
        phi,
        theta,
    })
}

impl VarmaProcess {
    /// Block companion matrix of the AR part; its spectral radius is
    /// below 1 whenever sum_i ||Phi_i||_2 < 1.
    pub fn companion_matrix(&self) -> DMatrix<f64> {
        let d = self.spec.d;
        let p = self.spec.p;
        let mut c = DMatrix::zeros(d * p, d * p);
        for (i, phi) in self.phi.iter().enumerate() {
            c.view_mut((0, i * d), (d, d)).copy_from(phi);
        }
        for i in 1..p {
            c.view_mut((i * d, (i - 1) * d), (d, d))
                .copy_from(&DMatrix::identity(d, d));
        }
        c
    }

    pub fn companion_spectral_radius(&self) -> f64 {
        self.companion_matrix()
            .complex_eigenvalues()
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Runs the Z recursion with Gaussian innovations for burn_in +
    /// length steps and returns tanh of the retained tail, every
    /// component strictly inside (-1, 1).
    pub fn simulate(&self) -> Vec<Vec<f64>> {
        let spec = &self.spec;
        let d = spec.d;
        // innovation stream is separate from the coefficient stream so
        // the same matrices can drive longer runs
        let mut rng = rng_from_seed(crate::rng::derive_seed(spec.seed, "varma-innovations", 0));
        let total = spec.burn_in + spec.length;
        let mut z_hist: Vec<DVector<f64>> = Vec::with_capacity(total);
        let mut eps_hist: Vec<DVector<f64>> = Vec::with_capacity(total);
        let mut out = Vec::with_capacity(spec.length);
        for t in 0..total {
            let eps = DVector::from_fn(d, |_, _| {
                spec.sigma * rng.sample::<f64, _>(StandardNormal)
            });
            let mut z = eps.clone();
            for (i, phi) in self.phi.iter().enumerate() {
                if t > i {
                    z += phi * &z_hist[t - 1 - i];
                }
            }
            for (j, theta) in self.theta.iter().enumerate() {
                if t > j {
                    z += theta * &eps_hist[t - 1 - j];
                }
            }
            if t >= spec.burn_in {
                out.push(z.iter().map(|v| v.tanh()).collect());
            }
            z_hist.push(z);
            eps_hist.push(eps);
        }
        out
    }
}

/// Which ground-truth functional labels a window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionalKind {
    /// y_t = u . x_{t+1}: linear in the immediate future point.
    Forecast,
    /// y_t = sum_{k<w} alpha^k u . x_{t-k}.
    ExpFading,
    /// The fading linear term plus 1/2 (sum_k alpha^k v . x_{t-k})^2.
    Volterra,
}

impl FunctionalKind {
    pub fn name(&self) -> &'static str {
        match self {
            FunctionalKind::Forecast => "forecast",
            FunctionalKind::ExpFading => "exp_fading",
            FunctionalKind::Volterra => "volterra",
        }
    }

    /// Forecast labels consume one sample beyond the window end.
    pub fn needs_future_point(&self) -> bool {
        matches!(self, FunctionalKind::Forecast)
    }
}

/// A label functional: the kind, its unit projection vector(s) and the
/// memory decay alpha. v is always orthogonalized against u.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionalSpec {
    pub kind: FunctionalKind,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub alpha: f64,
    pub seed: u64,
}

impl FunctionalSpec {
    /// Draws u (and v, orthogonalized against u) uniformly on the unit
    /// sphere from the functional seed.
    pub fn sample(kind: FunctionalKind, d: usize, alpha: f64, seed: u64) -> Result<Self> {
        if !(0.0 < alpha && alpha < 1.0) {
            return Err(Error::invalid("alpha must lie in (0, 1)"));
        }
        if d < 2 {
            return Err(Error::invalid("need d >= 2 to orthogonalize v against u"));
        }
        let mut rng = rng_from_seed(seed);
        let draw_unit = |rng: &mut crate::rng::Rng| -> Vec<f64> {
            loop {
                let g: Vec<f64> = (0..d).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
                let norm: f64 = g.iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm > 1e-12 {
                    return g.iter().map(|x| x / norm).collect();
                }
            }
        };
        let u = draw_unit(&mut rng);
        let v = loop {
            let raw = draw_unit(&mut rng);
            let dot: f64 = raw.iter().zip(&u).map(|(a, b)| a * b).sum();
            let ortho: Vec<f64> = raw.iter().zip(&u).map(|(a, b)| a - dot * b).collect();
            let norm: f64 = ortho.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-9 {
                break ortho.iter().map(|x| x / norm).collect();
            }
        };
        Ok(Self {
            kind,
            u,
            v,
            alpha,
            seed,
        })
    }

    fn dot_u(&self, x: &[f64]) -> f64 {
        self.u.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    fn dot_v(&self, x: &[f64]) -> f64 {
        self.v.iter().zip(x).map(|(a, b)| a * b).sum()
    }
}

/// Evaluates the window-truncated functional at end index `t` over the
/// last `w` points of `series`. The Volterra double sum is computed in
/// its factored form, algebraically identical to the explicit loop.
pub fn label(series: &[Vec<f64>], t: usize, spec: &FunctionalSpec, w: usize) -> Result<f64> {
    if t + 1 < w {
        return Err(Error::Data(format!(
            "need {w} history points before index {t}"
        )));
    }
    if t >= series.len() {
        return Err(Error::Data(format!("index {t} beyond series length")));
    }
    match spec.kind {
        FunctionalKind::Forecast => {
            if t + 1 >= series.len() {
                return Err(Error::Data(
                    "forecast label needs one sample beyond the window end".into(),
                ));
            }
            Ok(spec.dot_u(&series[t + 1]))
        }
        FunctionalKind::ExpFading => {
            let mut acc = 0.0;
            let mut decay = 1.0;
            for k in 0..w {
                acc += decay * spec.dot_u(&series[t - k]);
                decay *= spec.alpha;
            }
            Ok(acc)
        }
        FunctionalKind::Volterra => {
            let mut linear = 0.0;
            let mut quad = 0.0;
            let mut decay = 1.0;
            for k in 0..w {
                linear += decay * spec.dot_u(&series[t - k]);
                quad += decay * spec.dot_v(&series[t - k]);
                decay *= spec.alpha;
            }
            Ok(linear + 0.5 * quad * quad)
        }
    }
}

/// FNV-1a over the little-endian bit patterns of a series; stable across
/// platforms and Rust versions, used for dataset provenance.
pub fn series_hash(series: &[Vec<f64>]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for point in series {
        for v in point {
            for b in v.to_le_bytes() {
                h ^= u64::from(b);
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        }
    }
    h
}

/// Strided windows with their labels for one functional.
#[derive(Debug, Clone)]
pub struct WindowDataset {
    /// Each window is w points of dimension d, oldest first.
    pub windows: Vec<Vec<Vec<f64>>>,
    pub labels: Vec<f64>,
    /// End index of each window in the source series.
    pub end_indices: Vec<usize>,
    pub w: usize,
    pub stride: usize,
    /// Hash of the source series the windows were cut from.
    pub source_hash: u64,
}

impl WindowDataset {
    pub fn gap(&self) -> usize {
        self.stride - self.w
    }

    pub fn len(&self) -> usize {
        self.windows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.windows.is_empty()
    }
}

/// End indices for `count` windows ending as late as possible: the last
/// window ends at the final usable sample and consecutive ends are
/// spaced by `stride`, chronologically ordered.
pub fn window_end_indices(
    series_len: usize,
    w: usize,
    stride: usize,
    count: usize,
    reserve_future: bool,
) -> Result<Vec<usize>> {
    if w == 0 || count == 0 {
        return Err(Error::invalid("w and N must be positive"));
    }
    if stride < w {
        return Err(Error::invalid(format!(
            "stride {stride} smaller than window {w} gives negative gap"
        )));
    }
    let future = usize::from(reserve_future);
    let needed = (count - 1) * stride + w + future;
    if series_len < needed {
        return Err(Error::Data(format!(
            "series too short: need at least {needed} samples for {count} windows \
             (w={w}, stride={stride}{}), have {series_len}",
            if reserve_future { ", +1 future point" } else { "" }
        )));
    }
    let last_end = series_len - 1 - future;
    Ok((0..count)
        .map(|i| last_end - (count - 1 - i) * stride)
        .collect())
}

/// Extracts `count` strided windows labeled by `spec`, newest-last.
pub fn make_windows(
    series: &[Vec<f64>],
    spec: &FunctionalSpec,
    w: usize,
    stride: usize,
    count: usize,
) -> Result<WindowDataset> {
    let ends = window_end_indices(
        series.len(),
        w,
        stride,
        count,
        spec.kind.needs_future_point(),
    )?;
    windows_at(series, &ends, spec, w, stride)
}

/// Windows and labels at explicit end indices (shared across tasks so
/// every functional sees identical inputs).
pub fn windows_at(
    series: &[Vec<f64>],
    ends: &[usize],
    spec: &FunctionalSpec,
    w: usize,
    stride: usize,
) -> Result<WindowDataset> {
    let mut windows = Vec::with_capacity(ends.len());
    let mut labels = Vec::with_capacity(ends.len());
    for &t in ends {
        windows.push(series[t + 1 - w..=t].to_vec());
        labels.push(label(series, t, spec, w)?);
    }
    Ok(WindowDataset {
        windows,
        labels,
        end_indices: ends.to_vec(),
        w,
        stride,
        source_hash: series_hash(series),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn single_lag_budget_is_exact() {
        let spec = VarmaSpec {
            p: 1,
            ..VarmaSpec::default()
        };
        let proc = make_varma(&spec).unwrap();
        assert_abs_diff_eq!(spectral_norm(&proc.phi[0]), 0.7, epsilon = 1e-12);
    }

    #[test]
    fn spectral_norm_budget_sums_to_gamma() {
        for seed in [1u64, 2, 3] {
            let spec = VarmaSpec {
                seed,
                ..VarmaSpec::default()
            };
            let proc = make_varma(&spec).unwrap();
            let total: f64 = proc.phi.iter().map(spectral_norm).sum();
            assert_abs_diff_eq!(total, spec.gamma, epsilon = 1e-10);
            // MA amplitudes decay as eta rho^{j-1}
            for (j, theta) in proc.theta.iter().enumerate() {
                assert_abs_diff_eq!(
                    spectral_norm(theta),
                    spec.eta * spec.rho_ma.powi(j as i32),
                    epsilon = 1e-10
                );
            }
        }
    }

    #[test]
    fn pure_var_has_no_ma_terms() {
        let spec = VarmaSpec {
            q: 0,
            ..VarmaSpec::default()
        };
        let proc = make_varma(&spec).unwrap();
        assert!(proc.theta.is_empty());
    }

    #[test]
    fn companion_radius_below_one() {
        for seed in 0..20u64 {
            let spec = VarmaSpec {
                seed,
                length: 1,
                burn_in: 0,
                ..VarmaSpec::default()
            };
            let proc = make_varma(&spec).unwrap();
            let radius = proc.companion_spectral_radius();
            assert!(radius < 1.0, "seed {seed}: spectral radius {radius}");
        }
    }

    #[test]
    fn outputs_strictly_inside_unit_cube() {
        let spec = VarmaSpec {
            length: 500,
            burn_in: 100,
            seed: 5,
            ..VarmaSpec::default()
        };
        let series = make_varma(&spec).unwrap().simulate();
        assert_eq!(series.len(), 500);
        for x in &series {
            assert_eq!(x.len(), 3);
            assert!(x.iter().all(|v| v.abs() < 1.0));
        }
    }

    #[test]
    fn zero_innovations_give_zero_series() {
        let spec = VarmaSpec {
            sigma: 0.0,
            length: 100,
            burn_in: 10,
            seed: 8,
            ..VarmaSpec::default()
        };
        let series = make_varma(&spec).unwrap().simulate();
        assert!(series.iter().flatten().all(|v| *v == 0.0));
    }

    #[test]
    fn simulation_is_deterministic() {
        let spec = VarmaSpec {
            length: 50,
            burn_in: 10,
            seed: 9,
            ..VarmaSpec::default()
        };
        let a = make_varma(&spec).unwrap().simulate();
        let b = make_varma(&spec).unwrap().simulate();
        assert_eq!(a, b);
    }

    #[test]
    fn autocorrelation_decays_with_lag() {
        let spec = VarmaSpec {
            length: 20_000,
            seed: 11,
            ..VarmaSpec::default()
        };
        let proc = make_varma(&spec).unwrap();
        let series = proc.simulate();
        let f = FunctionalSpec::sample(FunctionalKind::ExpFading, 3, 0.8, 1).unwrap();
        let scalar: Vec<f64> = series.iter().map(|x| f.dot_u(x)).collect();
        let mean = scalar.iter().sum::<f64>() / scalar.len() as f64;
        let var: f64 =
            scalar.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / scalar.len() as f64;
        let auto = |lag: usize| -> f64 {
            let m = scalar.len() - lag;
            (0..m)
                .map(|t| (scalar[t] - mean) * (scalar[t + lag] - mean))
                .sum::<f64>()
                / (m as f64 * var)
        };
        assert!(auto(1) > 0.1, "lag-1 autocorrelation {}", auto(1));
        assert!(auto(50).abs() <= 0.1, "lag-50 autocorrelation {}", auto(50));
    }

    #[test]
    fn functional_vectors_are_unit_and_orthogonal() {
        let f = FunctionalSpec::sample(FunctionalKind::Volterra, 3, 0.8, 77).unwrap();
        let nu: f64 = f.u.iter().map(|x| x * x).sum::<f64>().sqrt();
        let nv: f64 = f.v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let dot: f64 = f.u.iter().zip(&f.v).map(|(a, b)| a * b).sum();
        assert_abs_diff_eq!(nu, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(nv, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(dot, 0.0, epsilon = 1e-12);
        // regenerable
        let g = FunctionalSpec::sample(FunctionalKind::Volterra, 3, 0.8, 77).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn exp_fading_on_constant_series_is_geometric_sum() {
        let f = FunctionalSpec::sample(FunctionalKind::ExpFading, 3, 0.5, 3).unwrap();
        let c = vec![0.4, -0.1, 0.9];
        let series = vec![c.clone(); 30];
        let w = 10;
        let y = label(&series, 20, &f, w).unwrap();
        let geometric = (1.0 - 0.5f64.powi(w as i32)) / (1.0 - 0.5);
        assert_abs_diff_eq!(y, f.dot_u(&c) * geometric, epsilon = 1e-12);
    }

    #[test]
    fn volterra_reduces_to_exp_fading_when_v_component_vanishes() {
        let vol = FunctionalSpec::sample(FunctionalKind::Volterra, 3, 0.6, 4).unwrap();
        let exp = FunctionalSpec {
            kind: FunctionalKind::ExpFading,
            ..vol.clone()
        };
        // series proportional to u has zero v-component since v is
        // orthogonal to u
        let series: Vec<Vec<f64>> = (0..20)
            .map(|t| vol.u.iter().map(|ui| ui * 0.1 * (t as f64).sin()).collect())
            .collect();
        let a = label(&series, 15, &vol, 8).unwrap();
        let b = label(&series, 15, &exp, 8).unwrap();
        assert_abs_diff_eq!(a, b, epsilon = 1e-12);
    }

    #[test]
    fn volterra_factored_form_matches_double_loop() {
        let f = FunctionalSpec::sample(FunctionalKind::Volterra, 3, 0.7, 5).unwrap();
        let spec = VarmaSpec {
            length: 40,
            burn_in: 50,
            seed: 6,
            ..VarmaSpec::default()
        };
        let series = make_varma(&spec).unwrap().simulate();
        let w = 5;
        let t = 30;
        let fast = label(&series, t, &f, w).unwrap();
        // brute-force double sum
        let mut brute = 0.0;
        for k in 0..w {
            brute += f.alpha.powi(k as i32) * f.dot_u(&series[t - k]);
        }
        for k in 0..w {
            for l in 0..w {
                brute += 0.5
                    * f.alpha.powi((k + l) as i32)
                    * f.dot_v(&series[t - k])
                    * f.dot_v(&series[t - l]);
            }
        }
        assert_abs_diff_eq!(fast, brute, epsilon = 1e-12);
    }

    #[test]
    fn forecast_label_is_next_point_projection() {
        let f = FunctionalSpec::sample(FunctionalKind::Forecast, 3, 0.8, 7).unwrap();
        let series: Vec<Vec<f64>> = (0..10)
            .map(|t| vec![t as f64 * 0.01, -0.2,  0.3])
            .collect();
        let y = label(&series, 5, &f, 3).unwrap();
        assert_abs_diff_eq!(y, f.dot_u(&series[6]), epsilon = 1e-15);
        assert!(label(&series, 9, &f, 3).is_err());
    }

    #[test]
    fn window_end_arithmetic() {
        // w=2, s=3, N=2 on 8 samples: end indices {4, 7}
        let ends = window_end_indices(8, 2, 3, 2, false).unwrap();
        assert_eq!(ends, vec![4, 7]);
        // the forecast variant shifts everything one step earlier
        let ends = window_end_indices(8, 2, 3, 2, true).unwrap();
        assert_eq!(ends, vec![3, 6]);
        // brute-force consistency on small cases
        for len in 5..30usize {
            for w in 1..4usize {
                for s in w..6usize {
                    for n in 1..4usize {
                        match window_end_indices(len, w, s, n, false) {
                            Ok(ends) => {
                                assert_eq!(ends.len(), n);
                                assert_eq!(*ends.last().unwrap(), len - 1);
                                for pair in ends.windows(2) {
                                    assert_eq!(pair[1] - pair[0], s);
                                }
                                assert!(ends[0] + 1 >= w);
                            }
                            Err(_) => {
                                assert!((n - 1) * s + w > len);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dataset_extraction_and_gap() {
        let f = FunctionalSpec::sample(FunctionalKind::ExpFading, 3, 0.8, 8).unwrap();
        let spec = VarmaSpec {
            length: 500,
            burn_in: 20,
            seed: 12,
            ..VarmaSpec::default()
        };
        let series = make_varma(&spec).unwrap().simulate();
        let ds = make_windows(&series, &f, 2, 3, 2).unwrap();
        assert_eq!(ds.gap(), 1);
        assert_eq!(ds.len(), 2);
        assert_eq!(ds.end_indices, vec![496, 499]);
        assert_eq!(ds.windows[0], series[495..=496].to_vec());
        assert_eq!(ds.source_hash, series_hash(&series));
        assert_ne!(ds.source_hash, series_hash(&series[..10]));

        // paper-scale stride arithmetic: w=25, s=100 gives gap 75
        let ds = make_windows(&series, &f, 25, 100, 4).unwrap();
        assert_eq!(ds.gap(), 75);

        let err = make_windows(&series, &f, 25, 100, 50).unwrap_err();
        assert!(matches!(err, Error::Data(msg) if msg.contains("need at least")));
    }

    #[test]
    fn labels_are_bounded_by_geometric_envelope() {
        let spec = VarmaSpec {
            length: 2000,
            seed: 13,
            ..VarmaSpec::default()
        };
        let series = make_varma(&spec).unwrap().simulate();
        let w = 25;
        let alpha = 0.8f64;
        let envelope = (1.0 - alpha.powi(w as i32)) / (1.0 - alpha);
        let f = FunctionalSpec::sample(FunctionalKind::ExpFading, 3, alpha, 14).unwrap();
        let ds = make_windows(&series, &f, w, 100, 15).unwrap();
        // |u . x| <= ||x|| < sqrt(d), so |y| < envelope * sqrt(d)
        let bound = envelope * 3f64.sqrt();
        assert!(ds.labels.iter().all(|y| y.abs() < bound));
    }
}
