//! Multi-start projected subgradient descent on the sphere.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::Matrix;
use crate::rng;
use crate::solver::{
    argmax_abs, linf, normalize_unit, random_unit, reduce_outcomes, run_restarts, window_converged,
    Method, RestartOutcome, SolveResult, SolverConfig,
};

/// Projected subgradient method: at x, one coordinate k* attains
/// `max_k |(Wx)_k|` (lowest index on ties); the step direction is
/// `sign((Wx)_{k*}) * row_{k*}(W)`, followed by renormalization.
///
/// Each restart spends the first half of its budget on the diminishing
/// schedule `eta0 / (t+1)^decay` (mobile enough to locate a basin), then
/// polishes from its incumbent best with Polyak-type steps
/// `(f(x) - (1 - delta_t) f_best) / ||g||^2`, `delta_t = 1/2 (t+1)^-1/2`,
/// which scale with the gap over the running best. The polish phase is what
/// delivers *relative* accuracy when the optimum is orders of magnitude
/// smaller than the matrix scale; a fixed absolute schedule stalls there.
///
/// Returns the best objective seen over all iterates of all restarts.
/// Never fails: with a zero iteration budget it reports the best random start.
pub fn projected_subgradient(w: &Matrix, cfg: &SolverConfig) -> SolveResult {
    cfg.validate();
    let n = w.n();
    let row_scale = w.max_row_norm();
    let step0 = cfg.step.initial.unwrap_or(if row_scale > 0.0 {
        1.0 / row_scale
    } else {
        1.0
    });

    let outcomes = run_restarts(cfg.restarts, |restart| {
        let mut rng = ChaCha8Rng::seed_from_u64(rng::derive(cfg.seed, restart as u64));
        let mut x = random_unit(n, &mut rng);
        let mut y = w.matvec(&x);
        let mut value = linf(&y);
        let mut best_value = value;
        let mut best_x = x.clone();
        let mut history = Vec::with_capacity(cfg.max_iterations + 1);
        history.push(best_value);

        let explore_iters = cfg.max_iterations / 2;
        for phase in 0..2 {
            let phase_iters = if phase == 0 {
                explore_iters
            } else {
                cfg.max_iterations - explore_iters
            };
            if phase == 1 && phase_iters > 0 {
                // Polish the incumbent rather than the wandering iterate.
                x.copy_from_slice(&best_x);
                y = w.matvec(&x);
                value = linf(&y);
            }
            for t in 0..phase_iters {
                let (k, yk) = argmax_abs(&y);
                let sign = if yk >= 0.0 { 1.0 } else { -1.0 };
                let eta = if phase == 0 {
                    step0 / ((t + 1) as f64).powf(cfg.step.decay)
                } else {
                    let g_sq: f64 = (0..n).map(|j| w.get(k, j) * w.get(k, j)).sum();
                    if g_sq <= f64::MIN_POSITIVE {
                        break;
                    }
                    let target = (1.0 - 0.5 / ((t + 1) as f64).sqrt()) * best_value;
                    (value - target) / g_sq
                };
                for (j, xj) in x.iter_mut().enumerate() {
                    *xj -= eta * sign * w.get(k, j);
                }
                normalize_unit(&mut x);
                y = w.matvec(&x);
                value = linf(&y);
                if value < best_value {
                    best_value = value;
                    best_x.copy_from_slice(&x);
                }
                history.push(best_value);
            }
        }

        RestartOutcome {
            value: best_value,
            x: best_x,
            iterations: cfg.max_iterations,
            converged: window_converged(&history, cfg.tolerance),
        }
    });

    reduce_outcomes(outcomes, Method::ProjectedSubgradient, cfg.seed)
}
