//! Volumes of lp unit balls and the bound coefficient, all in the log domain.
//!
//! `Vol B_2^n` underflows f64 near n = 350, so nothing here ever leaves
//! logs until a caller exponentiates an n-th root.

use std::f64::consts::{E, PI};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An lp exponent in [1, inf]. Infinity is a distinguished value so that the
/// cube volume n*log(2) stays exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_infinite() && p > 0.0 {
            Ok(Exponent::Infinity)
        } else if p.is_finite() && p >= 1.0 {
            Ok(Exponent::Finite(p))
        } else {
            Err(Error::Domain(format!(
                "lp exponent must lie in [1, inf], got {p}"
            )))
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "oo" => Ok(Exponent::Infinity),
            other => {
                let p: f64 = other
                    .parse()
                    .map_err(|_| Error::Domain(format!("cannot parse lp exponent `{s}`")))?;
                Exponent::new(p)
            }
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

/// An lp unit-ball descriptor in dimension n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallSpec {
    pub p: Exponent,
    pub n: usize,
}

impl BallSpec {
    pub fn new(n: usize, p: Exponent) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidDimension(
                "ball dimension must be >= 1".into(),
            ));
        }
        Ok(BallSpec { p, n })
    }

    /// The gauge ||x||_p of this ball.
    pub fn gauge(&self, x: &[f64]) -> f64 {
        match self.p {
            Exponent::Infinity => x.iter().fold(0.0f64, |m, v| m.max(v.abs())),
            Exponent::Finite(p) => {
                if p == 1.0 {
                    x.iter().map(|v| v.abs()).sum()
                } else if p == 2.0 {
                    x.iter().map(|v| v * v).sum::<f64>().sqrt()
                } else {
                    // Scale out the max to keep powf away from under/overflow.
                    let m = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                    if m == 0.0 {
                        return 0.0;
                    }
                    m * x
                        .iter()
                        .map(|v| (v.abs() / m).powf(p))
                        .sum::<f64>()
                        .powf(1.0 / p)
                }
            }
        }
    }

    pub fn log_volume(&self) -> f64 {
        log_volume_lp_ball(self.n, self.p).expect("BallSpec invariants hold")
    }
}

// Stirling-de Moivre series coefficients B_{2k} / (2k (2k-1)) for k = 1..=7.
const STIRLING_COEFFS: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
];

/// Arguments at or above this point use the asymptotic series directly.
const STIRLING_CUTOFF: f64 = 10.0;

fn stirling_log_gamma(z: f64) -> f64 {
    let half_log_two_pi = 0.5 * (2.0 * PI).ln();
    let mut series = 0.0;
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut term = inv;
    for c in STIRLING_COEFFS {
        series += c * term;
        term *= inv2;
    }
    (z - 0.5) * z.ln() - z + half_log_two_pi + series
}

/// log Gamma(x) for x > 0.
///
/// Recurrence-shifted Stirling series: relative error stays below 1e-13 on
/// [0.5, 1e4], comfortably inside the 1e-12 contract.
pub fn log_gamma(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::Domain(format!("log_gamma requires x > 0, got {x}")));
    }
    let mut shift = 0.0;
    let mut z = x;
    while z < STIRLING_CUTOFF {
        shift += z.ln();
        z += 1.0;
    }
    Ok(stirling_log_gamma(z) - shift)
}

/// log Vol(B_p^n).
///
/// Finite p uses the Dirichlet formula Vol = (2 Gamma(1 + 1/p))^n / Gamma(1 + n/p);
/// p = inf returns n * log 2 exactly.
pub fn log_volume_lp_ball(n: usize, p: Exponent) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidDimension(
            "ball dimension must be >= 1".into(),
        ));
    }
    match p {
        Exponent::Infinity => Ok(n as f64 * std::f64::consts::LN_2),
        Exponent::Finite(p) => {
            if p.is_nan() || p < 1.0 || !p.is_finite() {
                return Err(Error::Domain(format!(
                    "lp exponent must lie in [1, inf], got {p}"
                )));
            }
            let nf = n as f64;
            let per_dim = std::f64::consts::LN_2 + log_gamma(1.0 + 1.0 / p)?;
            Ok(nf * per_dim - log_gamma(1.0 + nf / p)?)
        }
    }
}

/// The finite-n coefficient sqrt(pi) / (2 Gamma(n/2 + 1)^{1/n}).
///
/// Multiplying by |det W|^{1/n} gives the (2, inf) volume-ratio bound.
/// Strictly positive, decreasing in n for n >= 2.
pub fn eq5_coefficient(n: usize) -> f64 {
    assert!(n >= 1, "dimension must be >= 1");
    let nf = n as f64;
    let lg = log_gamma(nf / 2.0 + 1.0).expect("argument is positive");
    (0.5 * PI.ln() - std::f64::consts::LN_2 - lg / nf).exp()
}

/// sqrt(2 pi e) / 2, the large-n limit of `eq5_coefficient(n) * sqrt(n)`.
pub fn asymptotic_constant() -> f64 {
    (2.0 * PI * E).sqrt() / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Independent half-integer oracle:
    /// log Gamma(k + 1/2) = log sqrt(pi) + sum_{j=1..k} log((2j-1)/2).
    fn log_gamma_half_integer(k: u32) -> f64 {
        let mut acc = 0.5 * PI.ln();
        for j in 1..=k {
            acc += ((2 * j - 1) as f64).ln() - std::f64::consts::LN_2;
        }
        acc
    }

    /// Independent factorial oracle: log Gamma(m) = sum_{j=2..m-1} log j.
    fn log_factorial(m: u32) -> f64 {
        (2..m).map(|j| (j as f64).ln()).sum()
    }

    #[test]
    fn log_gamma_at_one_is_zero() {
        assert!(log_gamma(1.0).unwrap().abs() < 1e-13);
        assert!(log_gamma(2.0).unwrap().abs() < 1e-13);
    }

    #[test]
    fn log_gamma_half_integer_identity() {
        // Gamma(1.5) = sqrt(pi)/2.
        assert_relative_eq!(
            log_gamma(1.5).unwrap(),
            (PI.sqrt() / 2.0).ln(),
            max_relative = 1e-13
        );
        for k in 0..=100 {
            let x = k as f64 + 0.5;
            assert_relative_eq!(
                log_gamma(x).unwrap(),
                log_gamma_half_integer(k),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn log_gamma_factorials() {
        // Gamma(7) = 720.
        assert_relative_eq!(log_gamma(7.0).unwrap(), 720.0f64.ln(), max_relative = 1e-13);
        for m in 2..=60 {
            assert_relative_eq!(
                log_gamma(m as f64).unwrap(),
                log_factorial(m),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn log_gamma_recurrence_large_arguments() {
        // Gamma(x+1) = x Gamma(x) across the direct-series region up to 1e4.
        let mut x = 0.5;
        while x < 1e4 {
            let a = log_gamma(x + 1.0).unwrap();
            let b = log_gamma(x).unwrap() + x.ln();
            assert_relative_eq!(a, b, max_relative = 1e-12);
            x *= 1.7;
        }
    }

    #[test]
    fn log_gamma_rejects_nonpositive() {
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-3.5).is_err());
        assert!(log_gamma(f64::NAN).is_err());
    }

    #[test]
    fn ball_volume_euclidean_plane() {
        // Vol B_2^2 = pi.
        assert_relative_eq!(
            log_volume_lp_ball(2, Exponent::Finite(2.0)).unwrap(),
            PI.ln(),
            max_relative = 1e-13
        );
    }

    #[test]
    fn ball_volume_cube_is_exact() {
        // Vol B_inf^3 = 8, and exactness matters: n * LN_2 bit-for-bit.
        let v = log_volume_lp_ball(3, Exponent::Infinity).unwrap();
        assert_eq!(v, 3.0 * std::f64::consts::LN_2);
        assert_relative_eq!(v, 8.0f64.ln(), max_relative = 1e-15);
    }

    #[test]
    fn ball_volume_cross_polytope_plane() {
        // The l1 ball in the plane is a square of diagonal 2: area 2.
        assert_relative_eq!(
            log_volume_lp_ball(2, Exponent::Finite(1.0)).unwrap(),
            2.0f64.ln(),
            max_relative = 1e-13
        );
    }

    #[test]
    fn euclidean_volume_two_routes_agree() {
        // General-p Dirichlet route vs the direct pi^{n/2}/Gamma(n/2+1) route.
        for n in 1..=512 {
            let general = log_volume_lp_ball(n, Exponent::Finite(2.0)).unwrap();
            let direct = (n as f64 / 2.0) * PI.ln() - log_gamma(n as f64 / 2.0 + 1.0).unwrap();
            assert!(
                (general - direct).abs() <= 1e-12 * direct.abs().max(1.0),
                "n={n}: {general} vs {direct}"
            );
        }
    }

    #[test]
    fn volume_monotone_in_p() {
        let ps = [1.0, 1.5, 2.0, 3.0, 5.0, 10.0, 50.0];
        for n in [1, 2, 3, 8, 33, 128] {
            let mut prev = f64::NEG_INFINITY;
            for &p in &ps {
                let v = log_volume_lp_ball(n, Exponent::Finite(p)).unwrap();
                assert!(v >= prev - 1e-12, "n={n} p={p}");
                prev = v;
            }
            let vinf = log_volume_lp_ball(n, Exponent::Infinity).unwrap();
            assert!(vinf >= prev - 1e-12, "n={n} p=inf");
        }
    }

    #[test]
    fn volume_sandwich() {
        for n in 1..=256 {
            let nf = n as f64;
            let v1 = log_volume_lp_ball(n, Exponent::Finite(1.0)).unwrap();
            let v2 = log_volume_lp_ball(n, Exponent::Finite(2.0)).unwrap();
            let cube = nf * std::f64::consts::LN_2;
            let expect_v1 = cube - log_gamma(nf + 1.0).unwrap();
            assert!((v1 - expect_v1).abs() <= 1e-10 * expect_v1.abs().max(1.0));
            assert!(v1 <= v2 + 1e-12);
            assert!(v2 <= cube + 1e-12);
        }
    }

    #[test]
    fn gauge_ordering_matches_ball_nesting() {
        // ||x||_p is nonincreasing in p, which is why the balls nest upward.
        let x = [0.3, -0.7, 0.2, 0.05];
        let mut prev = f64::INFINITY;
        for p in [1.0, 1.5, 2.0, 4.0, 16.0] {
            let g = BallSpec::new(4, Exponent::Finite(p)).unwrap().gauge(&x);
            assert!(g <= prev + 1e-12);
            prev = g;
        }
        let ginf = BallSpec::new(4, Exponent::Infinity).unwrap().gauge(&x);
        assert!(ginf <= prev + 1e-12);
        assert_eq!(ginf, 0.7);
    }

    #[test]
    fn eq5_coefficient_small_n() {
        // n=2: sqrt(pi)/2 with Gamma(2) = 1.
        assert_relative_eq!(eq5_coefficient(2), PI.sqrt() / 2.0, max_relative = 1e-13);
        // n=4: sqrt(pi) / (2 * 2^{1/4}) with Gamma(3) = 2.
        assert_relative_eq!(
            eq5_coefficient(4),
            PI.sqrt() / (2.0 * 2.0f64.powf(0.25)),
            max_relative = 1e-13
        );
    }

    #[test]
    fn eq5_coefficient_decreasing() {
        let mut prev = eq5_coefficient(2);
        for n in 3..=1024 {
            let c = eq5_coefficient(n);
            assert!(c > 0.0 && c < prev, "n={n}");
            prev = c;
        }
    }

    #[test]
    fn scaled_coefficient_approaches_constant_from_below() {
        let limit = asymptotic_constant();
        let mut prev = 0.0;
        for n in 2..=1000 {
            let s = eq5_coefficient(n) * (n as f64).sqrt();
            assert!(s > prev, "monotonicity broke at n={n}");
            assert!(s < limit, "overshoot at n={n}");
            prev = s;
        }
        assert!((eq5_coefficient(1000) * 1000.0f64.sqrt() - limit).abs() < 0.01 * limit);
    }

    #[test]
    fn stirling_agreement_tail() {
        let limit = asymptotic_constant();
        for n in 64..=2048 {
            let c = eq5_coefficient(n);
            let approx_c = limit / (n as f64).sqrt();
            assert!(
                (c - approx_c).abs() / c <= 5.0 / n as f64,
                "n={n}: {c} vs {approx_c}"
            );
        }
    }

    #[test]
    fn exponent_parsing() {
        assert_eq!("inf".parse::<Exponent>().unwrap(), Exponent::Infinity);
        assert_eq!("2".parse::<Exponent>().unwrap(), Exponent::Finite(2.0));
        assert_eq!("1.5".parse::<Exponent>().unwrap(), Exponent::Finite(1.5));
        assert!("0.5".parse::<Exponent>().is_err());
        assert!("abc".parse::<Exponent>().is_err());
        assert!(Exponent::new(f64::NAN).is_err());
    }
}
