//! Upper-bound certificates for `min_{||x||_2=1} ||Wx||_inf`.
//!
//! The volume-ratio bound compares the image of one unit ball with another:
//! the minimum of ||Wx||_L over the K-sphere is at most
//! `(Vol(W(B_K)) / Vol(B_L))^{1/n}`, and `Vol(W(B_K)) = |det W| Vol(B_K)`.
//! For the (l2, linf) pair this becomes `|det W|^{1/n}` times the
//! [`eq5_coefficient`] factor, which Hadamard's inequality then chains
//! through the geometric and arithmetic means of the column norms.

use serde::Serialize;

use crate::error::Result;
use crate::geometry::{asymptotic_constant, eq5_coefficient, log_volume_lp_ball, Exponent};
use crate::io::{csv_field, fmt_f64};
use crate::linalg::{column_euclidean_norms, factorize, log_abs_det, Matrix};

/// Mean-column-norm hypothesis slack.
pub const HYPOTHESIS_TOLERANCE: f64 = 1e-12;

/// Every bound quantity for one instance, in one flat record.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub n: usize,
    /// log|det W|; -inf for singular input.
    pub log_abs_det: f64,
    /// |det W|^{1/n}.
    pub det_root: f64,
    /// Geometric mean of the column Euclidean norms.
    pub hadamard_root: f64,
    /// Arithmetic mean of the column Euclidean norms.
    pub mean_column_norm: f64,
    /// Volume-ratio bound for the requested (p, q) pair; 0 for singular input.
    pub lemma2_bound: f64,
    /// det_root times the finite-n coefficient; 0 for singular input.
    pub eq5_bound: f64,
    /// Whether the mean column norm is at most 1 (+ tolerance).
    pub hypothesis_ok: bool,
}

impl BoundReport {
    pub const CSV_HEADER: &'static str =
        "n,log_abs_det,det_root,hadamard_root,mean_column_norm,lemma2_bound,eq5_bound,hypothesis_ok";

    pub fn to_csv_row(&self) -> String {
        [
            self.n.to_string(),
            fmt_f64(self.log_abs_det),
            fmt_f64(self.det_root),
            fmt_f64(self.hadamard_root),
            fmt_f64(self.mean_column_norm),
            fmt_f64(self.lemma2_bound),
            fmt_f64(self.eq5_bound),
            self.hypothesis_ok.to_string(),
        ]
        .iter()
        .map(|f| csv_field(f))
        .collect::<Vec<_>>()
        .join(",")
    }
}

/// The volume-ratio bound with K = B_p^n and L = B_q^n:
/// `exp((log|det W| + log Vol(B_p) - log Vol(B_q)) / n)`.
///
/// Requires a nonsingular W (the image volume must be positive).
pub fn lemma2_bound(w: &Matrix, p: Exponent, q: Exponent) -> Result<f64> {
    let n = w.n();
    let f = factorize(w)?;
    let ld = log_abs_det(&f);
    let lp = log_volume_lp_ball(n, p)?;
    let lq = log_volume_lp_ball(n, q)?;
    Ok(((ld + lp - lq) / n as f64).exp())
}

/// The explicit (l2, linf) bound: `|det W|^{1/n} * eq5_coefficient(n)`.
///
/// Identical in exact arithmetic to `lemma2_bound(w, 2, inf)`; the two code
/// paths are kept distinct deliberately so they can check each other.
pub fn theorem3_bound(w: &Matrix) -> Result<f64> {
    let f = factorize(w)?;
    let det_root = (log_abs_det(&f) / w.n() as f64).exp();
    Ok(det_root * eq5_coefficient(w.n()))
}

/// Assemble a [`BoundReport`] for the (p, q) ball pair.
///
/// Singular input is reported (det_root = 0, bounds 0), not rejected: the
/// determinant chain still holds with equality at zero on the left.
pub fn bound_report(w: &Matrix, p: Exponent, q: Exponent) -> Result<BoundReport> {
    let n = w.n();
    let nf = n as f64;
    let norms = column_euclidean_norms(w);
    let mean_column_norm = norms.iter().sum::<f64>() / nf;
    // Geometric mean via logs; a zero column sends it to exactly 0.
    let hadamard_root = if norms.contains(&0.0) {
        0.0
    } else {
        (norms.iter().map(|r| r.ln()).sum::<f64>() / nf).exp()
    };

    let report = match factorize(w) {
        Ok(f) => {
            let ld = log_abs_det(&f);
            let det_root = (ld / nf).exp();
            let lp = log_volume_lp_ball(n, p)?;
            let lq = log_volume_lp_ball(n, q)?;
            BoundReport {
                n,
                log_abs_det: ld,
                det_root,
                hadamard_root,
                mean_column_norm,
                lemma2_bound: ((ld + lp - lq) / nf).exp(),
                eq5_bound: det_root * eq5_coefficient(n),
                hypothesis_ok: mean_column_norm <= 1.0 + HYPOTHESIS_TOLERANCE,
            }
        }
        Err(_) => BoundReport {
            n,
            log_abs_det: f64::NEG_INFINITY,
            det_root: 0.0,
            hadamard_root,
            mean_column_norm,
            lemma2_bound: 0.0,
            eq5_bound: 0.0,
            hypothesis_ok: mean_column_norm <= 1.0 + HYPOTHESIS_TOLERANCE,
        },
    };

    debug_assert!(
        report.det_root <= report.hadamard_root + 1e-10 * report.hadamard_root.max(1.0),
        "determinant root exceeded Hadamard root"
    );
    debug_assert!(
        report.hadamard_root <= report.mean_column_norm + 1e-10 * report.mean_column_norm.max(1.0),
        "geometric mean exceeded arithmetic mean"
    );
    Ok(report)
}

/// The (2, inf) report: the determinant chain of the headline bound.
pub fn hadamard_chain(w: &Matrix) -> BoundReport {
    bound_report(w, Exponent::Finite(2.0), Exponent::Infinity)
        .expect("(2, inf) volumes are always defined")
}

/// Convenience: `eq5_coefficient(n) * sqrt(n)` stays below this for every n.
pub fn scaling_ceiling() -> f64 {
    asymptotic_constant()
}
