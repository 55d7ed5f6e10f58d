//! Sampling cross-check: uniform sphere points plus one polish pass.
//!
//! Any sampled unit vector upper-bounds the true minimum, so this is an
//! independent consistency oracle for the other solvers: it converges to the
//! minimum in probability as the sample count grows and can never fall below
//! the exact value.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::Matrix;
use crate::rng;
use crate::solver::{argmax_abs, linf, normalize_unit, random_unit, Method, SolveResult};

/// Subgradient polish iterations applied to the best sample.
const REFINE_ITERATIONS: usize = 200;

/// Minimum of the objective over `samples` uniform sphere points (normalized
/// Gaussian draws), then one local refinement pass from the best sample.
pub fn sampled_oracle(w: &Matrix, samples: usize, seed: u64) -> SolveResult {
    assert!(samples >= 1, "need at least one sample");
    let n = w.n();
    let mut rng = ChaCha8Rng::seed_from_u64(rng::derive(seed, 0x5a3d));

    let mut best_x = random_unit(n, &mut rng);
    let mut best_value = linf(&w.matvec(&best_x));
    for _ in 1..samples {
        let x = random_unit(n, &mut rng);
        let value = linf(&w.matvec(&x));
        if value < best_value {
            best_value = value;
            best_x = x;
        }
    }

    // Local refinement: short subgradient descent with decaying steps,
    // keeping the best point seen (the pass can only improve the answer).
    let row_scale = w.max_row_norm();
    let step0 = if row_scale > 0.0 {
        0.1 / row_scale
    } else {
        0.1
    };
    let mut x = best_x.clone();
    for t in 0..REFINE_ITERATIONS {
        let y = w.matvec(&x);
        let (k, yk) = argmax_abs(&y);
        let sign = if yk >= 0.0 { 1.0 } else { -1.0 };
        let eta = step0 / ((t + 1) as f64).sqrt();
        for (j, xj) in x.iter_mut().enumerate() {
            *xj -= eta * sign * w.get(k, j);
        }
        normalize_unit(&mut x);
        let value = linf(&w.matvec(&x));
        if value < best_value {
            best_value = value;
            best_x.copy_from_slice(&x);
        }
    }

    SolveResult {
        x: best_x,
        value: best_value,
        method: Method::Sampled,
        iterations: samples + REFINE_ITERATIONS,
        converged: true,
        witness_sign_vector: None,
        seed,
    }
}
