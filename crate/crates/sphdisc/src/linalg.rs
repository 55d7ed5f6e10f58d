//! Dense real linear algebra: LU factorization, log-determinant, linear
//! solves and column norms.
//!
//! Storage is column-major so that `column(i)` hands back the i-th input
//! vector as a contiguous slice. Everything is `f64`; determinant-sized
//! quantities are only ever exposed in the log domain.

use crate::error::{Error, Result};

/// Relative pivot threshold below which a factorization is declared singular.
pub const SINGULARITY_THRESHOLD: f64 = 1e-12;

/// A square real matrix whose columns are the instance vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    /// Column-major: entry (i, j) lives at `data[j * n + i]`.
    data: Vec<f64>,
}

impl Matrix {
    /// Build from column-major data. Panics on dimension or finiteness violations.
    pub fn from_column_major(n: usize, data: Vec<f64>) -> Self {
        assert!(n >= 1, "matrix dimension must be at least 1");
        assert_eq!(
            data.len(),
            n * n,
            "expected {} entries, got {}",
            n * n,
            data.len()
        );
        assert!(
            data.iter().all(|x| x.is_finite()),
            "matrix entries must be finite"
        );
        Matrix { n, data }
    }

    /// Build from rows (the text-file layout). Each row must have length `n`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        assert!(n >= 1, "matrix dimension must be at least 1");
        let mut data = vec![0.0; n * n];
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(
                row.len(),
                n,
                "row {} has length {}, expected {}",
                i,
                row.len(),
                n
            );
            for (j, &v) in row.iter().enumerate() {
                data[j * n + i] = v;
            }
        }
        Self::from_column_major(n, data)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = vec![0.0; n * n];
        for j in 0..n {
            for i in 0..n {
                data[j * n + i] = f(i, j);
            }
        }
        Self::from_column_major(n, data)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        Self::from_fn(entries.len(), |i, j| if i == j { entries[i] } else { 0.0 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[j * self.n + i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[j * self.n + i] = v;
    }

    /// The i-th column, i.e. the i-th instance vector.
    pub fn column(&self, j: usize) -> &[f64] {
        &self.data[j * self.n..(j + 1) * self.n]
    }

    pub fn column_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.data[j * self.n..(j + 1) * self.n]
    }

    /// Row i gathered into a fresh vector (rows are strided in this layout).
    pub fn row(&self, i: usize) -> Vec<f64> {
        (0..self.n).map(|j| self.get(i, j)).collect()
    }

    /// y = W x.
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        let mut y = vec![0.0; self.n];
        for (j, &xj) in x.iter().enumerate() {
            if xj != 0.0 {
                let col = self.column(j);
                for (yi, &cij) in y.iter_mut().zip(col) {
                    *yi += xj * cij;
                }
            }
        }
        y
    }

    /// y = W^T v (dot of each column with v).
    pub fn tr_matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.n);
        (0..self.n).map(|j| dot(self.column(j), v)).collect()
    }

    pub fn scale(&self, c: f64) -> Matrix {
        Matrix::from_column_major(self.n, self.data.iter().map(|x| c * x).collect())
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Largest Euclidean row norm; a Lipschitz constant for x -> ||Wx||_inf.
    pub fn max_row_norm(&self) -> f64 {
        let mut sums = vec![0.0; self.n];
        for j in 0..self.n {
            for (i, &v) in self.column(j).iter().enumerate() {
                sums[i] += v * v;
            }
        }
        sums.iter().fold(0.0f64, |m, &s| m.max(s)).sqrt()
    }

    pub fn max_column_norm(&self) -> f64 {
        (0..self.n)
            .map(|j| norm2(self.column(j)))
            .fold(0.0, f64::max)
    }
}

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm2(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

/// Partial-pivoted LU factorization P W = L U.
///
/// Factors are packed: strict lower triangle holds L (unit diagonal implied),
/// upper triangle holds U.
#[derive(Debug, Clone)]
pub struct LuFactorization {
    n: usize,
    packed: Vec<f64>, // column-major, same layout as Matrix
    /// Row k of PW is row `perm[k]` of W.
    perm: Vec<usize>,
    sign_of_permutation: f64,
}

impl LuFactorization {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn sign_of_permutation(&self) -> f64 {
        self.sign_of_permutation
    }

    #[inline]
    fn packed_at(&self, i: usize, j: usize) -> f64 {
        self.packed[j * self.n + i]
    }

    /// Unit-lower-triangular factor L.
    pub fn lower(&self) -> Matrix {
        Matrix::from_fn(self.n, |i, j| {
            if i == j {
                1.0
            } else if i > j {
                self.packed_at(i, j)
            } else {
                0.0
            }
        })
    }

    /// Upper-triangular factor U.
    pub fn upper(&self) -> Matrix {
        Matrix::from_fn(
            self.n,
            |i, j| if i <= j { self.packed_at(i, j) } else { 0.0 },
        )
    }
}

/// Factor W with partial pivoting.
///
/// Declares singularity when a pivot magnitude drops to or below
/// `SINGULARITY_THRESHOLD * max column norm of W` (scale-invariant cutoff).
pub fn factorize(w: &Matrix) -> Result<LuFactorization> {
    let n = w.n();
    let threshold = SINGULARITY_THRESHOLD * w.max_column_norm();
    let mut packed = w.data.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1.0f64;

    for k in 0..n {
        // Pivot search in column k, rows k..n.
        let mut p = k;
        let mut pmax = packed[k * n + k].abs();
        for i in (k + 1)..n {
            let a = packed[k * n + i].abs();
            if a > pmax {
                pmax = a;
                p = i;
            }
        }
        if pmax <= threshold {
            return Err(Error::SingularMatrix {
                step: k,
                pivot: pmax,
                threshold,
            });
        }
        if p != k {
            for j in 0..n {
                packed.swap(j * n + p, j * n + k);
            }
            perm.swap(p, k);
            sign = -sign;
        }
        let pivot = packed[k * n + k];
        for i in (k + 1)..n {
            packed[k * n + i] /= pivot;
        }
        for j in (k + 1)..n {
            let ukj = packed[j * n + k];
            if ukj != 0.0 {
                let (lcol, jcol) = {
                    // Split borrows: multiplier column k, target column j.
                    let (a, b) = packed.split_at_mut(j * n);
                    (&a[k * n..k * n + n], &mut b[..n])
                };
                for i in (k + 1)..n {
                    jcol[i] -= lcol[i] * ukj;
                }
            }
        }
    }

    Ok(LuFactorization {
        n,
        packed,
        perm,
        sign_of_permutation: sign,
    })
}

/// Sum of log|pivot|: log|det W|, exact in the log domain.
pub fn log_abs_det(f: &LuFactorization) -> f64 {
    (0..f.n).map(|k| f.packed_at(k, k).abs().ln()).sum()
}

/// Solve W v = b through the factorization.
pub fn solve_system(f: &LuFactorization, b: &[f64]) -> Result<Vec<f64>> {
    let n = f.n;
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: b.len(),
        });
    }
    // Forward substitution on the permuted right-hand side (L has unit diagonal).
    let mut v: Vec<f64> = f.perm.iter().map(|&r| b[r]).collect();
    for k in 0..n {
        let vk = v[k];
        if vk != 0.0 {
            for i in (k + 1)..n {
                v[i] -= f.packed_at(i, k) * vk;
            }
        }
    }
    // Back substitution with U.
    for k in (0..n).rev() {
        v[k] /= f.packed_at(k, k);
        let vk = v[k];
        if vk != 0.0 {
            for i in 0..k {
                v[i] -= f.packed_at(i, k) * vk;
            }
        }
    }
    Ok(v)
}

/// W^{-1}, assembled column by column from solves against unit vectors.
pub fn inverse(f: &LuFactorization) -> Result<Matrix> {
    let n = f.n;
    let mut data = vec![0.0; n * n];
    let mut e = vec![0.0; n];
    for j in 0..n {
        e[j] = 1.0;
        let col = solve_system(f, &e)?;
        data[j * n..(j + 1) * n].copy_from_slice(&col);
        e[j] = 0.0;
    }
    Ok(Matrix::from_column_major(n, data))
}

/// Euclidean norm of every column: entry i is ||w_i||_2.
pub fn column_euclidean_norms(w: &Matrix) -> Vec<f64> {
    (0..w.n()).map(|j| norm2(w.column(j))).collect()
}
