//! Annealed log-sum-exp smoothing of the max objective.
//!
//! `f_mu(x) = mu * log sum_k (exp((Wx)_k / mu) + exp(-(Wx)_k / mu))`
//! sandwiches the true objective:
//! `||Wx||_inf <= f_mu(x) <= ||Wx||_inf + mu * log(2n)`.
//!
//! With mu large, f_mu is nearly a smooth quadratic-over-sphere whose
//! minimizer sits in the smallest-singular-direction basin, so annealing mu
//! downward acts as graduated non-convexity. Each stage runs backtracked
//! tangential gradient descent with renormalization onto the sphere.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{dot, Matrix};
use crate::rng;
use crate::solver::{
    linf, normalize_unit, random_unit, reduce_outcomes, run_restarts, window_converged, Method,
    RestartOutcome, SolveResult, SolverConfig,
};

/// Value and ambient gradient of the smoothed objective, plus the true
/// objective at the same point (shares the matvec).
fn lse_eval(w: &Matrix, x: &[f64], mu: f64) -> (f64, Vec<f64>, f64) {
    assert!(mu > 0.0, "smoothing parameter must be positive");
    let y = w.matvec(x);
    let true_value = linf(&y);
    // Shift by the largest |t_k| so every exponent is <= 0.
    let m = true_value / mu;
    let mut z = 0.0;
    let mut p = vec![0.0; y.len()];
    for (k, &yk) in y.iter().enumerate() {
        let t = yk / mu;
        let ep = (t - m).exp();
        let en = (-t - m).exp();
        z += ep + en;
        p[k] = ep - en;
    }
    for v in p.iter_mut() {
        *v /= z;
    }
    let value = mu * (m + z.ln());
    let grad = w.tr_matvec(&p);
    (value, grad, true_value)
}

/// Smoothed objective value and its analytic gradient at x.
///
/// Exposed so the gradient can be checked against finite differences.
pub fn lse_objective_gradient(w: &Matrix, x: &[f64], mu: f64) -> (f64, Vec<f64>) {
    let (value, grad, _) = lse_eval(w, x, mu);
    (value, grad)
}

/// Annealed smoothing solver. Tracks the best true objective over every
/// iterate; the smoothed surrogate only steers the walk.
pub fn smoothed_lse(w: &Matrix, cfg: &SolverConfig) -> SolveResult {
    cfg.validate();
    let n = w.n();
    let row_scale = w.max_row_norm().max(f64::MIN_POSITIVE);
    let mu0 = cfg.smoothing.initial.unwrap_or(row_scale);
    let mu_final = cfg.smoothing.final_value.unwrap_or(1e-6 * mu0).min(mu0);
    let decay = cfg.smoothing.decay;

    let stages = if mu_final >= mu0 {
        1
    } else {
        ((mu_final / mu0).ln() / decay.ln()).ceil() as usize + 1
    };
    // Gradient-descent step ceiling from the smoothness bound ||W||^2 / mu;
    // backtracking shrinks it whenever the quadratic model is optimistic.
    let lip_sq = row_scale * row_scale * n as f64;

    let outcomes = run_restarts(cfg.restarts, |restart| {
        let mut rng = ChaCha8Rng::seed_from_u64(rng::derive(cfg.seed, restart as u64));
        let mut x = random_unit(n, &mut rng);
        let mut best_value = f64::INFINITY;
        let mut best_x = x.clone();
        let mut history = Vec::new();
        let mut iterations = 0usize;

        // With every restart annealed from mu0, the first (nearly convex)
        // stage funnels all starts into one basin and the restarts are
        // wasted. Staggering the entry point down the mu ladder keeps the
        // full graduated path (restart 0) while letting later restarts
        // explore their own neighborhoods at finer smoothing.
        let skip = restart % stages;
        let restart_stages = stages - skip;
        let iters_per_stage = (cfg.max_iterations / restart_stages).max(1);
        let mut mu = mu0 * decay.powi(skip as i32);

        for stage in 0..restart_stages {
            let mut eta = 4.0 * mu / lip_sq;
            let (mut f_cur, mut grad, mut true_value) = lse_eval(w, &x, mu);
            if true_value < best_value {
                best_value = true_value;
                best_x.copy_from_slice(&x);
            }
            for _ in 0..iters_per_stage {
                iterations += 1;
                // Tangential component; the radial part is killed by the
                // renormalization anyway.
                let radial = dot(&grad, &x);
                let mut dir: Vec<f64> =
                    grad.iter().zip(&x).map(|(g, xi)| g - radial * xi).collect();
                let dir_norm = crate::linalg::norm2(&dir);
                if dir_norm <= 1e-15 * row_scale {
                    history.push(best_value);
                    break;
                }
                for v in dir.iter_mut() {
                    *v /= dir_norm;
                }
                // Backtracking line search on the smoothed objective.
                let mut accepted = false;
                for _ in 0..40 {
                    let mut cand: Vec<f64> =
                        x.iter().zip(&dir).map(|(xi, d)| xi - eta * d).collect();
                    normalize_unit(&mut cand);
                    let (f_new, g_new, v_new) = lse_eval(w, &cand, mu);
                    if f_new < f_cur {
                        x = cand;
                        f_cur = f_new;
                        grad = g_new;
                        true_value = v_new;
                        accepted = true;
                        break;
                    }
                    eta *= 0.5;
                    if eta < 1e-18 {
                        break;
                    }
                }
                if true_value < best_value {
                    best_value = true_value;
                    best_x.copy_from_slice(&x);
                }
                history.push(best_value);
                if !accepted {
                    break; // stage converged to line-search resolution
                }
                eta *= 1.5;
            }
            if stage + 1 < restart_stages {
                mu = (mu * decay).max(mu_final);
            }
        }

        RestartOutcome {
            value: best_value,
            x: best_x,
            iterations,
            converged: window_converged(&history, cfg.tolerance),
        }
    });

    reduce_outcomes(outcomes, Method::SmoothedLse, cfg.seed)
}
