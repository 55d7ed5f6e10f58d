//! Instance generators and general-position repair.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{norm2, Matrix};
use crate::rng;

/// Instance families. `from_file` is a provenance tag for matrices read off
/// disk and cannot be synthesized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Generator {
    Identity,
    ScaledIdentity,
    SylvesterHadamard,
    RandomUnitColumns,
    RandomMeanNorm,
    NearSingular,
    FromFile,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            Generator::Identity => "identity",
            Generator::ScaledIdentity => "scaled_identity",
            Generator::SylvesterHadamard => "sylvester_hadamard",
            Generator::RandomUnitColumns => "random_unit_columns",
            Generator::RandomMeanNorm => "random_mean_norm",
            Generator::NearSingular => "near_singular",
            Generator::FromFile => "from_file",
        };
        f.write_str(tag)
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "identity" => Ok(Generator::Identity),
            "scaled_identity" => Ok(Generator::ScaledIdentity),
            "sylvester_hadamard" => Ok(Generator::SylvesterHadamard),
            "random_unit_columns" => Ok(Generator::RandomUnitColumns),
            "random_mean_norm" => Ok(Generator::RandomMeanNorm),
            "near_singular" => Ok(Generator::NearSingular),
            "from_file" => Ok(Generator::FromFile),
            other => Err(Error::Domain(format!("unknown generator `{other}`"))),
        }
    }
}

/// A matrix plus the provenance needed to regenerate it.
#[derive(Debug, Clone)]
pub struct Instance {
    pub matrix: Matrix,
    pub generator: Generator,
    pub seed: u64,
    /// Whether a general-position perturbation has been applied.
    pub repaired: bool,
}

impl Instance {
    /// Wrap a matrix loaded from disk.
    pub fn from_matrix(matrix: Matrix) -> Self {
        Instance {
            matrix,
            generator: Generator::FromFile,
            seed: 0,
            repaired: false,
        }
    }
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    rand_distr::Distribution::sample(&rand_distr::StandardNormal, rng)
}

fn unit_column(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let mut col: Vec<f64> = (0..n).map(|_| gaussian(rng)).collect();
        let norm = norm2(&col);
        if norm > 1e-12 {
            for v in col.iter_mut() {
                *v /= norm;
            }
            return col;
        }
    }
}

fn from_columns(n: usize, cols: Vec<Vec<f64>>) -> Matrix {
    let mut m = Matrix::from_column_major(n, vec![0.0; n * n]);
    for (j, col) in cols.into_iter().enumerate() {
        m.column_mut(j).copy_from_slice(&col);
    }
    m
}

/// Sylvester doubling: H_{2m} = [[H, H], [H, -H]], scaled by 1/sqrt(n).
fn sylvester_hadamard(n: usize) -> Result<Matrix> {
    if !n.is_power_of_two() {
        return Err(Error::InvalidDimension(format!(
            "sylvester_hadamard needs a power-of-two dimension, got {n}"
        )));
    }
    let mut h = vec![vec![1.0f64]];
    let mut m = 1;
    while m < n {
        let mut next = vec![vec![0.0; 2 * m]; 2 * m];
        for i in 0..m {
            for j in 0..m {
                let v = h[i][j];
                next[i][j] = v;
                next[i][j + m] = v;
                next[i + m][j] = v;
                next[i + m][j + m] = -v;
            }
        }
        h = next;
        m *= 2;
    }
    let scale = 1.0 / (n as f64).sqrt();
    Ok(Matrix::from_fn(n, |i, j| h[i][j] * scale))
}

/// Synthesize an instance; deterministic in (kind, n, seed).
pub fn generate_instance(kind: Generator, n: usize, seed: u64) -> Result<Instance> {
    if n < 1 {
        return Err(Error::InvalidDimension("dimension must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng::derive(seed, kind_stream(kind)));
    let matrix = match kind {
        Generator::Identity => Matrix::identity(n),
        Generator::ScaledIdentity => {
            // Scale in [0.1, 1] so the mean-norm hypothesis stays satisfied.
            let c = rng.gen_range(0.1..=1.0);
            Matrix::identity(n).scale(c)
        }
        Generator::SylvesterHadamard => sylvester_hadamard(n)?,
        Generator::RandomUnitColumns => {
            from_columns(n, (0..n).map(|_| unit_column(n, &mut rng)).collect())
        }
        Generator::RandomMeanNorm => {
            // Norm drawn uniformly in [0, 1) per column; the mean is then
            // at most 1 by construction.
            let cols = (0..n)
                .map(|_| {
                    let r: f64 = rng.gen_range(0.0..1.0);
                    let mut col = unit_column(n, &mut rng);
                    for v in col.iter_mut() {
                        *v *= r;
                    }
                    col
                })
                .collect();
            from_columns(n, cols)
        }
        Generator::NearSingular => {
            if n < 2 {
                return Err(Error::InvalidDimension(
                    "near_singular needs dimension >= 2".into(),
                ));
            }
            let mut cols: Vec<Vec<f64>> = (0..n).map(|_| unit_column(n, &mut rng)).collect();
            cols[1] = cols[0].clone();
            from_columns(n, cols)
        }
        Generator::FromFile => return Err(Error::UnsupportedGenerator("from_file")),
    };
    Ok(Instance {
        matrix,
        generator: kind,
        seed,
        repaired: false,
    })
}

fn kind_stream(kind: Generator) -> u64 {
    match kind {
        Generator::Identity => 1,
        Generator::ScaledIdentity => 2,
        Generator::SylvesterHadamard => 3,
        Generator::RandomUnitColumns => 4,
        Generator::RandomMeanNorm => 5,
        Generator::NearSingular => 6,
        Generator::FromFile => 7,
    }
}

/// Default perturbation magnitude: far below every test tolerance, scaled to
/// the instance.
pub fn default_perturbation(w: &Matrix) -> f64 {
    1e-10 * w.max_column_norm()
}

/// Norm-preserving general-position repair: each column becomes
/// `||w_i|| * normalize(w_i + epsilon * g_i)` with seeded Gaussian g_i.
/// Zero columns stay zero.
pub fn perturb_general_position(inst: &Instance, epsilon: f64) -> Instance {
    let n = inst.matrix.n();
    let mut rng = ChaCha8Rng::seed_from_u64(rng::derive(inst.seed, 0x9e37));
    let mut matrix = inst.matrix.clone();
    for j in 0..n {
        let g: Vec<f64> = (0..n).map(|_| gaussian(&mut rng)).collect();
        let norm = norm2(matrix.column(j));
        if norm == 0.0 {
            continue;
        }
        let mut v: Vec<f64> = matrix
            .column(j)
            .iter()
            .zip(&g)
            .map(|(w, gi)| w + epsilon * gi)
            .collect();
        let vnorm = norm2(&v);
        if vnorm == 0.0 {
            continue; // pathological cancellation; keep the original column
        }
        for u in v.iter_mut() {
            *u *= norm / vnorm;
        }
        matrix.column_mut(j).copy_from_slice(&v);
    }
    Instance {
        matrix,
        generator: inst.generator,
        seed: inst.seed,
        repaired: true,
    }
}
