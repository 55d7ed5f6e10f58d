//! Browser bindings: matrix generation, bound reports, solves and scaling
//! sweeps as JSON-over-strings, exported through wasm-bindgen.
//!
//! The plain-Rust [`api`] module carries the logic so it can be tested on the
//! host; the `#[wasm_bindgen]` wrappers only translate errors to `JsValue`.

use wasm_bindgen::prelude::*;

pub mod api {
    use serde::Serialize;

    use sphdisc::bounds::{bound_report, BoundReport};
    use sphdisc::geometry::{asymptotic_constant, eq5_coefficient, Exponent};
    use sphdisc::harness::{
        auto_config, generate_instance, geometric_grid, verify_theorem3_with, Generator,
    };
    use sphdisc::io::{format_matrix, parse_matrix};
    use sphdisc::solver::{
        exact_dual_vertex, projected_subgradient, sampled_oracle, smoothed_lse, Method,
        SolveResult, MAX_EXACT_DIMENSION,
    };

    /// Keep in-browser sweeps responsive.
    const MAX_SWEEP_DIMENSION: usize = 512;

    fn err<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
        r.map_err(|e| e.to_string())
    }

    /// Synthesize an instance and render it in the matrix text format.
    pub fn generate_matrix(kind: &str, n: usize, seed: u64) -> Result<String, String> {
        let kind: Generator = err(kind.parse())?;
        let inst = err(generate_instance(kind, n, seed))?;
        Ok(format_matrix(&inst.matrix))
    }

    /// Bound report for a matrix in text format, as a JSON record.
    pub fn bound_report_json(matrix_text: &str, p: &str, q: &str) -> Result<String, String> {
        let w = err(parse_matrix(matrix_text))?;
        let p: Exponent = err(p.parse())?;
        let q: Exponent = err(q.parse())?;
        let report = err(bound_report(&w, p, q))?;
        err(serde_json::to_string(&report))
    }

    #[derive(Serialize)]
    struct SolvePayload {
        result: SolveResult,
        bounds: BoundReport,
    }

    /// Solve and report the result next to the instance's bounds.
    /// `restarts` / `max_iter` of 0 mean "use the scaled defaults".
    pub fn solve_json(
        matrix_text: &str,
        method: &str,
        seed: u64,
        restarts: usize,
        max_iter: usize,
    ) -> Result<String, String> {
        let w = err(parse_matrix(matrix_text))?;
        let method: Method = err(method.parse())?;
        let result = match method {
            Method::ExactDualVertex => err(exact_dual_vertex(&w))?,
            Method::Sampled => {
                let samples = if max_iter == 0 { 20_000 } else { max_iter };
                sampled_oracle(&w, samples, seed)
            }
            Method::ProjectedSubgradient | Method::SmoothedLse => {
                let mut cfg = auto_config(method, w.n(), seed);
                if restarts > 0 {
                    cfg.restarts = restarts;
                }
                if max_iter > 0 {
                    cfg.max_iterations = max_iter;
                }
                if method == Method::ProjectedSubgradient {
                    projected_subgradient(&w, &cfg)
                } else {
                    smoothed_lse(&w, &cfg)
                }
            }
        };
        let bounds = err(bound_report(&w, Exponent::Finite(2.0), Exponent::Infinity))?;
        err(serde_json::to_string(&SolvePayload { result, bounds }))
    }

    #[derive(Serialize)]
    struct SweepRow {
        n: usize,
        achieved: f64,
        bound: f64,
        sqrt_n_times_value: f64,
        sqrt_n_times_bound: f64,
        ratio: f64,
        method: Method,
    }

    #[derive(Serialize)]
    struct SweepPayload {
        constant: f64,
        rows: Vec<SweepRow>,
        max_sqrt_n_times_value: f64,
    }

    /// Scaling sweep over a geometric dimension grid: exact oracle up to
    /// n = 20, annealed smoothing beyond.
    pub fn scaling_sweep_json(
        n_min: usize,
        n_max: usize,
        points: usize,
        trials: usize,
        seed: u64,
        generator: &str,
    ) -> Result<String, String> {
        if n_max > MAX_SWEEP_DIMENSION {
            return Err(format!(
                "sweep dimension capped at {MAX_SWEEP_DIMENSION} in the demo"
            ));
        }
        let generator: Generator = err(generator.parse())?;
        let grid = err(geometric_grid(n_min, n_max, points))?;
        let mut rows = Vec::new();
        let mut max_scaled = f64::NEG_INFINITY;
        for &n in &grid {
            let method = if n <= 20.min(MAX_EXACT_DIMENSION) {
                Method::ExactDualVertex
            } else {
                Method::SmoothedLse
            };
            let records = err(verify_theorem3_with(&[n], trials, seed, method, generator))?;
            for r in records {
                let nf = n as f64;
                max_scaled = max_scaled.max(r.sqrt_n_times_value);
                rows.push(SweepRow {
                    n,
                    achieved: r.achieved_value,
                    bound: r.eq5_bound,
                    sqrt_n_times_value: r.sqrt_n_times_value,
                    sqrt_n_times_bound: nf.sqrt() * r.eq5_bound,
                    ratio: r.ratio,
                    method,
                });
            }
        }
        err(serde_json::to_string(&SweepPayload {
            constant: asymptotic_constant(),
            rows,
            max_sqrt_n_times_value: max_scaled,
        }))
    }

    #[derive(Serialize)]
    struct CurvePoint {
        n: usize,
        scaled_coefficient: f64,
    }

    #[derive(Serialize)]
    struct CurvePayload {
        constant: f64,
        points: Vec<CurvePoint>,
    }

    /// The scaled bound coefficient sqrt(n) * eq5_coefficient(n) for
    /// n = 2..=n_max, with its limit. Monotone increasing toward the limit.
    pub fn coefficient_curve_json(n_max: usize) -> Result<String, String> {
        if !(2..=100_000).contains(&n_max) {
            return Err("curve dimension must lie in [2, 100000]".into());
        }
        let points = (2..=n_max)
            .map(|n| CurvePoint {
                n,
                scaled_coefficient: (n as f64).sqrt() * eq5_coefficient(n),
            })
            .collect();
        err(serde_json::to_string(&CurvePayload {
            constant: asymptotic_constant(),
            points,
        }))
    }
}

fn to_js<T>(r: Result<T, String>) -> Result<T, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn generate_matrix(kind: &str, n: usize, seed: u64) -> Result<String, JsValue> {
    to_js(api::generate_matrix(kind, n, seed))
}

#[wasm_bindgen]
pub fn bound_report_json(matrix_text: &str, p: &str, q: &str) -> Result<String, JsValue> {
    to_js(api::bound_report_json(matrix_text, p, q))
}

#[wasm_bindgen]
pub fn solve_json(
    matrix_text: &str,
    method: &str,
    seed: u64,
    restarts: usize,
    max_iter: usize,
) -> Result<String, JsValue> {
    to_js(api::solve_json(
        matrix_text,
        method,
        seed,
        restarts,
        max_iter,
    ))
}

#[wasm_bindgen]
pub fn scaling_sweep_json(
    n_min: usize,
    n_max: usize,
    points: usize,
    trials: usize,
    seed: u64,
    generator: &str,
) -> Result<String, JsValue> {
    to_js(api::scaling_sweep_json(
        n_min, n_max, points, trials, seed, generator,
    ))
}

#[wasm_bindgen]
pub fn coefficient_curve_json(n_max: usize) -> Result<String, JsValue> {
    to_js(api::coefficient_curve_json(n_max))
}
