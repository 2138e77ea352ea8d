//! Contractive reservoir evolution: input injection through an Ising-like
//! entangler, a reset-rate contraction, per-window embedding from a fixed
//! initial state, and spatial multiplexing over independent sub-reservoirs.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::projection::JlProjector;
use crate::qcore::{
    apply_unitary, controlled_swap, embed_one_qubit, embed_two_qubit, gate_h, gate_rx, gate_ry,
    gate_rz, gate_rzz, partial_trace, CMatrix, DensityOperator,
};
use crate::rng::{derive_seed, rng_from_seed};
use crate::{Error, Result};

/// Default interval the per-sub-reservoir contraction is sampled from;
/// keeps window memories useful at w = 25.
pub const DEFAULT_LAMBDA_RANGE: (f64, f64) = (0.7, 0.95);

/// Qubit connectivity as an ordered edge list with i < j per edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Topology {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Topology {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for &(i, j) in &edges {
            if i >= j || j >= n {
                return Err(Error::invalid(format!(
                    "edge ({i}, {j}) invalid for n={n}: need i < j < n"
                )));
            }
            if !seen.insert((i, j)) {
                return Err(Error::invalid(format!("duplicate edge ({i}, {j})")));
            }
        }
        Ok(Self { n, edges })
    }

    /// Ring connectivity: (0,1), (1,2), ..., (n-2,n-1), (0,n-1).
    /// For n = 2 the wrap edge coincides with (0,1) and is dropped;
    /// n = 1 has no edges.
    pub fn ring(n: usize) -> Self {
        let mut edges: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        if n > 2 {
            edges.push((0, n - 1));
        }
        Self { n, edges }
    }
}

/// All sampled parameters of one sub-reservoir; regenerable bit-exactly
/// from `seed` given the topology and lambda interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubReservoirParams {
    pub theta_x: Vec<f64>,
    pub theta_z: Vec<f64>,
    pub theta_zz: Vec<f64>,
    pub lambda: f64,
    pub seed: u64,
}

fn open_uniform(rng: &mut crate::rng::Rng, lo: f64, hi: f64) -> f64 {
    // rejects the (measure-zero but representable) left endpoint so the
    // draw lies in the open interval
    loop {
        let v = rng.gen_range(lo..hi);
        if v > lo {
            return v;
        }
    }
}

impl SubReservoirParams {
    /// Draw order: theta_x, theta_z, theta_zz (edge-list order), lambda.
    pub fn sample(seed: u64, topology: &Topology, lambda_range: (f64, f64)) -> Result<Self> {
        let (lo, hi) = lambda_range;
        if !(0.0 < lo && lo < hi && hi < 1.0) {
            return Err(Error::invalid(format!(
                "lambda interval ({lo}, {hi}) must sit strictly inside (0, 1)"
            )));
        }
        let mut rng = rng_from_seed(seed);
        let n = topology.n;
        let theta_x = (0..n).map(|_| open_uniform(&mut rng, -PI, PI)).collect();
        let theta_z = (0..n).map(|_| open_uniform(&mut rng, -PI, PI)).collect();
        let theta_zz = (0..topology.edges.len())
            .map(|_| open_uniform(&mut rng, -PI, PI))
            .collect();
        let lambda = open_uniform(&mut rng, lo, hi);
        Ok(Self {
            theta_x,
            theta_z,
            theta_zz,
            lambda,
            seed,
        })
    }

    /// Explicit parameters (tests and reproducibility audits).
    pub fn from_angles(
        theta_x: Vec<f64>,
        theta_z: Vec<f64>,
        theta_zz: Vec<f64>,
        lambda: f64,
    ) -> Result<Self> {
        if !(0.0 < lambda && lambda < 1.0) {
            return Err(Error::invalid(format!("lambda {lambda} outside (0, 1)")));
        }
        Ok(Self {
            theta_x,
            theta_z,
            theta_zz,
            lambda,
            seed: 0,
        })
    }
}

/// Serializable description of a multiplexed reservoir. Sub-reservoir
/// seeds derive deterministically from `master_seed` and the index r.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReservoirConfig {
    pub n: usize,
    pub r_subs: usize,
    pub topology: Topology,
    pub lambda_range: (f64, f64),
    pub master_seed: u64,
    pub subs: Vec<SubReservoirParams>,
}

impl ReservoirConfig {
    pub fn sample(
        n: usize,
        r_subs: usize,
        topology: Topology,
        lambda_range: (f64, f64),
        master_seed: u64,
    ) -> Result<Self> {
        if topology.n != n {
            return Err(Error::invalid("topology qubit count differs from n"));
        }
        if r_subs == 0 {
            return Err(Error::invalid("need at least one sub-reservoir"));
        }
        let subs = (0..r_subs)
            .map(|r| {
                let seed = derive_seed(master_seed, "sub-reservoir", r as u64);
                SubReservoirParams::sample(seed, &topology, lambda_range)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            n,
            r_subs,
            topology,
            lambda_range,
            master_seed,
            subs,
        })
    }

    /// Largest contraction factor across sub-reservoirs.
    pub fn lambda_star(&self) -> f64 {
        self.subs.iter().map(|s| s.lambda).fold(0.0, f64::max)
    }
}

/// W = (Rx block)(Rz block)(Rzz block), rightmost factor acting first:
/// ZZ couplings over the edge list, then Rz on every qubit, then Rx.
pub fn build_entangler(params: &SubReservoirParams, topology: &Topology) -> Result<CMatrix> {
    let n = topology.n;
    if params.theta_x.len() != n || params.theta_z.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: params.theta_x.len(),
        });
    }
    if params.theta_zz.len() != topology.edges.len() {
        return Err(Error::DimensionMismatch {
            expected: topology.edges.len(),
            got: params.theta_zz.len(),
        });
    }
    let dim = 1usize << n;
    let mut w = CMatrix::identity(dim, dim);
    for (&(i, j), &angle) in topology.edges.iter().zip(&params.theta_zz) {
        w = embed_two_qubit(&gate_rzz(angle)?, i, j, n)? * w;
    }
    for (q, &angle) in params.theta_z.iter().enumerate() {
        w = embed_one_qubit(&gate_rz(angle)?, q, n)? * w;
    }
    for (q, &angle) in params.theta_x.iter().enumerate() {
        w = embed_one_qubit(&gate_rx(angle)?, q, n)? * w;
    }
    Ok(w)
}

/// Injection angle theta(z) = pi * tanh(z), saturating inside (-pi, pi).
pub fn injection_angle(z: f64) -> f64 {
    PI * z.tanh()
}

fn injection_unitary_with(entangler: &CMatrix, z: &[f64], n: usize) -> Result<CMatrix> {
    if z.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: z.len(),
        });
    }
    if z.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("non-finite reservoir coordinate"));
    }
    let mut ry = CMatrix::identity(1, 1);
    for &zj in z {
        ry = ry.kronecker(&gate_ry(injection_angle(zj))?);
    }
    Ok(entangler * ry)
}

/// V(x) = W * (x)_j Ry(theta(z_j)) for projected coordinates z.
pub fn injection_unitary(
    params: &SubReservoirParams,
    topology: &Topology,
    z: &[f64],
) -> Result<CMatrix> {
    let w = build_entangler(params, topology)?;
    injection_unitary_with(&w, z, topology.n)
}

/// Reset-rate channel: lambda * rho + (1 - lambda) |+><+|^(x)n.
pub fn reset_channel(rho: &DensityOperator, lambda: f64) -> Result<DensityOperator> {
    if !(0.0 < lambda && lambda < 1.0) {
        return Err(Error::invalid(format!("lambda {lambda} outside (0, 1)")));
    }
    let plus = DensityOperator::plus_state(rho.n());
    let data = rho.data() * Complex64::new(lambda, 0.0)
        + plus.data() * Complex64::new(1.0 - lambda, 0.0);
    Ok(DensityOperator::from_matrix_unchecked(rho.n(), data))
}

/// Coin angle for the SWAP dilation: theta = 2 arcsin sqrt(1 - lambda),
/// so Pr[coin = 1] = 1 - lambda.
pub fn dilation_coin_angle(lambda: f64) -> f64 {
    2.0 * (1.0 - lambda).sqrt().asin()
}

/// Reference realization of the reset channel on 2n+1 qubits: ancillas
/// prepared |+> via H on |0>, a coin rotated by Ry(theta_lambda), then
/// coin-controlled SWAPs, then tracing out ancillas and coin. Slow and
/// test-only; must match `reset_channel` to 1e-10.
pub fn dilation_reset_channel(rho: &DensityOperator, lambda: f64) -> Result<DensityOperator> {
    if !(0.0 < lambda && lambda < 1.0) {
        return Err(Error::invalid(format!("lambda {lambda} outside (0, 1)")));
    }
    let n = rho.n();
    let total = 2 * n + 1;
    // register layout: reservoir 0..n, ancillas n..2n, coin 2n
    let zeros = DensityOperator::basis_state(n + 1, 0);
    let mut full = rho.data().kronecker(zeros.data());

    let h = gate_h();
    for a in 0..n {
        let u = embed_one_qubit(&h, n + a, total)?;
        full = &u * full * u.adjoint();
    }
    let coin = embed_one_qubit(&gate_ry(dilation_coin_angle(lambda))?, 2 * n, total)?;
    full = &coin * full * coin.adjoint();
    for q in 0..n {
        let cs = controlled_swap(total, 2 * n, q, n + q)?;
        full = &cs * full * cs.adjoint();
    }
    let keep: Vec<usize> = (0..n).collect();
    partial_trace(total, &full, &keep)
}

/// One sub-reservoir with its entangler prebuilt; the evolution
/// T(rho, x) = E_lambda(V(x) rho V(x)&dagger;) is pure and immutable.
#[derive(Debug, Clone)]
pub struct SubReservoir {
    params: SubReservoirParams,
    n: usize,
    entangler: CMatrix,
}

impl SubReservoir {
    pub fn new(params: SubReservoirParams, topology: &Topology) -> Result<Self> {
        let entangler = build_entangler(&params, topology)?;
        Ok(Self {
            params,
            n: topology.n,
            entangler,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.params.lambda
    }

    pub fn params(&self) -> &SubReservoirParams {
        &self.params
    }

    /// One evolution step on already-projected coordinates.
    pub fn step_projected(&self, rho: &DensityOperator, z: &[f64]) -> Result<DensityOperator> {
        let v = injection_unitary_with(&self.entangler, z, self.n)?;
        reset_channel(&apply_unitary(rho, &v)?, self.params.lambda)
    }

    /// One evolution step on a raw d-dimensional input.
    pub fn step(
        &self,
        rho: &DensityOperator,
        x: &[f64],
        projector: &JlProjector,
    ) -> Result<DensityOperator> {
        self.step_projected(rho, &projector.project(x)?)
    }

    /// Folds the window oldest-point-first starting from |+><+|^(x)n.
    pub fn embed_window(
        &self,
        window: &[Vec<f64>],
        projector: &JlProjector,
    ) -> Result<DensityOperator> {
        self.embed_window_from(DensityOperator::plus_state(self.n), window, projector)
    }

    /// Same fold from an explicit initial state (washout experiments).
    pub fn embed_window_from(
        &self,
        initial: DensityOperator,
        window: &[Vec<f64>],
        projector: &JlProjector,
    ) -> Result<DensityOperator> {
        if window.is_empty() {
            return Err(Error::invalid("window must contain at least one point"));
        }
        let mut rho = initial;
        for x in window {
            rho = self.step(&rho, x, projector)?;
        }
        Ok(rho)
    }
}

/// The full multiplexed featurizer: R independent sub-reservoirs driven
/// by the same projected inputs.
#[derive(Debug, Clone)]
pub struct Reservoir {
    config: ReservoirConfig,
    subs: Vec<SubReservoir>,
}

impl Reservoir {
    pub fn new(config: ReservoirConfig) -> Result<Self> {
        let subs = config
            .subs
            .iter()
            .map(|p| SubReservoir::new(p.clone(), &config.topology))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { config, subs })
    }

    pub fn config(&self) -> &ReservoirConfig {
        &self.config
    }

    pub fn subs(&self) -> &[SubReservoir] {
        &self.subs
    }

    /// Embeds one window under every sub-reservoir, ordered by r.
    pub fn embed_multiplexed(
        &self,
        window: &[Vec<f64>],
        projector: &JlProjector,
    ) -> Result<Vec<DensityOperator>> {
        self.subs
            .iter()
            .map(|s| s.embed_window(window, projector))
            .collect()
    }
}
