//! Solvers for `min_{||x||_2 = 1} ||Wx||_inf`.
//!
//! Four routes with very different trust levels:
//!
//! - [`exact_dual_vertex`]: exact global optimum for n <= 24 via the dual
//!   identity `min ||Wx||_inf = 1 / max_{s in {-1,1}^n} ||W^{-1} s||_2`
//!   (the inner maximum of a convex function over the cube sits at a vertex).
//! - [`projected_subgradient`]: multi-start subgradient descent on the sphere.
//! - [`smoothed_lse`]: annealed log-sum-exp smoothing with tangential
//!   gradient steps and renormalization.
//! - [`sampled_oracle`]: uniform sphere samples plus one local polish pass;
//!   an upper bound that converges in probability.
//!
//! All methods are deterministic functions of (W, config/seed); restarts may
//! run in parallel but reduce in restart order, so the result is identical to
//! the sequential one.

mod exact;
mod sampled;
mod smoothed;
mod subgradient;

pub use exact::{exact_dual_vertex, MAX_EXACT_DIMENSION};
pub use sampled::sampled_oracle;
pub use smoothed::{lse_objective_gradient, smoothed_lse};
pub use subgradient::projected_subgradient;

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::{csv_field, fmt_f64};
use crate::linalg::Matrix;

/// Solver identity tags, also used on the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ExactDualVertex,
    ProjectedSubgradient,
    SmoothedLse,
    Sampled,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            Method::ExactDualVertex => "exact_dual_vertex",
            Method::ProjectedSubgradient => "projected_subgradient",
            Method::SmoothedLse => "smoothed_lse",
            Method::Sampled => "sampled",
        };
        f.write_str(tag)
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exact" | "exact_dual_vertex" => Ok(Method::ExactDualVertex),
            "subgradient" | "projected_subgradient" => Ok(Method::ProjectedSubgradient),
            "smoothed" | "smoothed_lse" => Ok(Method::SmoothedLse),
            "sampled" => Ok(Method::Sampled),
            other => Err(Error::Domain(format!("unknown solver method `{other}`"))),
        }
    }
}

/// Step schedule `eta_t = initial / (t+1)^decay`.
///
/// `initial = None` means scale-aware: 1 / (max Euclidean row norm of W).
#[derive(Debug, Clone, Copy)]
pub struct StepSchedule {
    pub initial: Option<f64>,
    pub decay: f64,
}

impl Default for StepSchedule {
    fn default() -> Self {
        StepSchedule {
            initial: None,
            decay: 0.5,
        }
    }
}

/// Annealing schedule for the smoothing parameter mu.
///
/// `initial = None` derives mu_0 from the matrix scale (max row norm);
/// `final_value = None` means 1e-6 * mu_0.
#[derive(Debug, Clone, Copy)]
pub struct SmoothingSchedule {
    pub initial: Option<f64>,
    pub decay: f64,
    pub final_value: Option<f64>,
}

impl Default for SmoothingSchedule {
    fn default() -> Self {
        SmoothingSchedule {
            initial: None,
            decay: 0.5,
            final_value: None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    pub max_iterations: usize,
    pub restarts: usize,
    pub seed: u64,
    pub step: StepSchedule,
    pub smoothing: SmoothingSchedule,
    /// Relative-improvement threshold for the 50-iteration convergence window.
    pub tolerance: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_iterations: 2000,
            restarts: 16,
            seed: 0,
            step: StepSchedule::default(),
            smoothing: SmoothingSchedule::default(),
            tolerance: 1e-9,
        }
    }
}

impl SolverConfig {
    pub fn with_seed(seed: u64) -> Self {
        SolverConfig {
            seed,
            ..Self::default()
        }
    }

    pub(crate) fn validate(&self) {
        assert!(self.restarts >= 1, "restarts must be positive");
        assert!(self.tolerance > 0.0, "tolerance must be positive");
        assert!(
            self.step.decay > 0.0 && self.step.decay <= 1.0,
            "step decay exponent must lie in (0, 1]"
        );
        if let Some(s) = self.step.initial {
            assert!(s > 0.0, "initial step must be positive");
        }
        assert!(
            self.smoothing.decay > 0.0 && self.smoothing.decay < 1.0,
            "smoothing decay factor must lie in (0, 1)"
        );
        if let (Some(a), Some(b)) = (self.smoothing.initial, self.smoothing.final_value) {
            assert!(b <= a, "final smoothing must not exceed the initial value");
        }
    }
}

/// Length of the trailing window used for the convergence flag.
pub(crate) const CONVERGENCE_WINDOW: usize = 50;

/// Outcome of one solve.
#[derive(Debug, Clone, Serialize)]
pub struct SolveResult {
    /// Unit vector achieving `value`.
    pub x: Vec<f64>,
    /// The recomputed objective ||Wx||_inf at `x`.
    pub value: f64,
    pub method: Method,
    pub iterations: usize,
    pub converged: bool,
    /// The optimal cube vertex, exact method only.
    pub witness_sign_vector: Option<Vec<i8>>,
    pub seed: u64,
}

impl SolveResult {
    pub const CSV_HEADER: &'static str = "method,n,value,converged,iterations,seed,x";

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn to_csv_row(&self) -> String {
        let x_joined = self
            .x
            .iter()
            .map(|&v| fmt_f64(v))
            .collect::<Vec<_>>()
            .join(";");
        [
            self.method.to_string(),
            self.n().to_string(),
            fmt_f64(self.value),
            self.converged.to_string(),
            self.iterations.to_string(),
            self.seed.to_string(),
            x_joined,
        ]
        .iter()
        .map(|f| csv_field(f))
        .collect::<Vec<_>>()
        .join(",")
    }
}

/// max_k |(Wx)_k|.
pub fn evaluate_objective(w: &Matrix, x: &[f64]) -> Result<f64> {
    if x.len() != w.n() {
        return Err(Error::DimensionMismatch {
            expected: w.n(),
            got: x.len(),
        });
    }
    Ok(linf(&w.matvec(x)))
}

#[inline]
pub(crate) fn linf(y: &[f64]) -> f64 {
    y.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

/// Index achieving max |y_k| (lowest index on ties) and the signed entry there.
#[inline]
pub(crate) fn argmax_abs(y: &[f64]) -> (usize, f64) {
    let mut k = 0;
    let mut best = y[0].abs();
    for (i, &v) in y.iter().enumerate().skip(1) {
        if v.abs() > best {
            best = v.abs();
            k = i;
        }
    }
    (k, y[k])
}

/// Normalize in place to the unit sphere; returns the pre-normalization norm.
pub(crate) fn normalize_unit(x: &mut [f64]) -> f64 {
    let norm = crate::linalg::norm2(x);
    if norm > 0.0 {
        for v in x.iter_mut() {
            *v /= norm;
        }
    }
    norm
}

/// Uniform unit vector via a normalized Gaussian draw.
pub(crate) fn random_unit(n: usize, rng: &mut impl Rng) -> Vec<f64> {
    loop {
        let mut x: Vec<f64> = (0..n)
            .map(|_| rand_distr::Distribution::sample(&rand_distr::StandardNormal, rng))
            .collect();
        if normalize_unit(&mut x) > 1e-12 {
            return x;
        }
    }
}

/// Convergence flag: relative improvement of the running best over the last
/// `CONVERGENCE_WINDOW` iterations fell below `tolerance`.
pub(crate) fn window_converged(best_history: &[f64], tolerance: f64) -> bool {
    if best_history.len() <= CONVERGENCE_WINDOW {
        return false;
    }
    let prev = best_history[best_history.len() - 1 - CONVERGENCE_WINDOW];
    let cur = *best_history.last().unwrap();
    (prev - cur) < tolerance * prev.abs().max(f64::EPSILON)
}

/// Per-restart outcome, reduced deterministically by (value, restart index).
#[derive(Debug, Clone)]
pub(crate) struct RestartOutcome {
    pub value: f64,
    pub x: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

pub(crate) fn run_restarts<F>(restarts: usize, body: F) -> Vec<RestartOutcome>
where
    F: Fn(usize) -> RestartOutcome + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..restarts).into_par_iter().map(body).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..restarts).map(body).collect()
    }
}

/// Reduce restart outcomes: min value, ties to the lowest restart index.
pub(crate) fn reduce_outcomes(
    outcomes: Vec<RestartOutcome>,
    method: Method,
    seed: u64,
) -> SolveResult {
    let total_iterations: usize = outcomes.iter().map(|o| o.iterations).sum();
    let best = outcomes
        .into_iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| a.value.total_cmp(&b.value).then(i.cmp(j)))
        .map(|(_, o)| o)
        .expect("at least one restart");
    SolveResult {
        x: best.x,
        value: best.value,
        method,
        iterations: total_iterations,
        converged: best.converged,
        witness_sign_vector: None,
        seed,
    }
}
