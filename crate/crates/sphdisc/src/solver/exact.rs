//! Exact oracle via dual vertex enumeration.
//!
//! `min_{||x||_2=1} ||Wx||_inf = 1 / max_{||z||_inf <= 1} ||W^{-1} z||_2`,
//! and the maximum of the convex map `z -> ||W^{-1} z||_2` over the cube is
//! attained at a vertex `s in {-1,1}^n`. The minimizer is then
//! `x* = W^{-1} s* / ||W^{-1} s*||_2`. Since `z -> -z` mirrors the objective,
//! only `2^{n-1}` vertices (first coordinate pinned to +1) are visited, in
//! Gray-code order so each step updates `W^{-1} s` with one column.

use crate::error::{Error, Result};
use crate::linalg::{dot, factorize, inverse, norm2, Matrix};
use crate::solver::{evaluate_objective, Method, SolveResult};

/// Hard cap for the enumeration; beyond this the caller gets an error rather
/// than a silent fallback to a heuristic.
pub const MAX_EXACT_DIMENSION: usize = 24;

/// Exact global minimizer of `||Wx||_inf` on the unit sphere, n <= 24.
pub fn exact_dual_vertex(w: &Matrix) -> Result<SolveResult> {
    let n = w.n();
    if n > MAX_EXACT_DIMENSION {
        return Err(Error::DimensionTooLarge {
            n,
            max: MAX_EXACT_DIMENSION,
        });
    }
    let f = factorize(w)?;
    let a = inverse(&f)?;

    // Start at s = (+1, ..., +1): y = A s is the column sum of A.
    let mut y = vec![0.0f64; n];
    for j in 0..n {
        for (yi, &c) in y.iter_mut().zip(a.column(j)) {
            *yi += c;
        }
    }
    let mut signs = vec![1.0f64; n];
    let mut best_sq = dot(&y, &y);
    let mut best_idx: u64 = 0;

    let total: u64 = 1 << (n - 1);
    for idx in 1..total {
        // Gray-code walk over coordinates 1..n (coordinate 0 stays +1).
        let j = idx.trailing_zeros() as usize + 1;
        signs[j] = -signs[j];
        let delta = 2.0 * signs[j];
        for (yi, &c) in y.iter_mut().zip(a.column(j)) {
            *yi += delta * c;
        }
        let sq = dot(&y, &y);
        if sq > best_sq {
            best_sq = sq;
            best_idx = idx;
        }
    }

    // Recover the winning vertex from its Gray code and recompute y exactly,
    // discarding any drift the incremental updates accumulated.
    let gray = best_idx ^ (best_idx >> 1);
    let mut witness = vec![1i8; n];
    for b in 0..n.saturating_sub(1) {
        if (gray >> b) & 1 == 1 {
            witness[b + 1] = -1;
        }
    }
    let s: Vec<f64> = witness.iter().map(|&v| f64::from(v)).collect();
    let y_best = a.matvec(&s);
    let norm = norm2(&y_best);
    let x: Vec<f64> = y_best.iter().map(|v| v / norm).collect();
    let value = evaluate_objective(w, &x)?;

    Ok(SolveResult {
        x,
        value,
        method: Method::ExactDualVertex,
        iterations: total as usize,
        converged: true,
        witness_sign_vector: Some(witness),
        seed: 0,
    })
}
