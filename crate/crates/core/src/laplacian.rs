//! Directed flag Laplacians `L_k = B_{k+1} B_{k+1}^T + B_k^T B_k` and their spectra.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::boundary::{boundary_matrix, BoundaryMatrix};
use crate::complex::FilteredFlagComplex;
use crate::error::{Error, Result};

/// Default relative zero threshold: eigenvalues below
/// `DEFAULT_ZERO_TOL * max(1, ||L||_inf)` count as harmonic.
pub const DEFAULT_ZERO_TOL: f64 = 1e-8;

/// Largest matrix handed to the dense eigensolver by default.
pub const DEFAULT_MAX_SIZE: usize = 2000;

#[derive(Debug, Clone, PartialEq)]
pub struct LaplacianMatrix {
    pub k: usize,
    pub a: f64,
    pub matrix: DMatrix<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralOptions {
    /// Relative zero threshold coefficient.
    pub zero_tol: f64,
    /// Matrices larger than this raise [`Error::Capacity`].
    pub max_size: usize,
    pub eigenvectors: bool,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        Self {
            zero_tol: DEFAULT_ZERO_TOL,
            max_size: DEFAULT_MAX_SIZE,
            eigenvectors: false,
        }
    }
}

/// Spectrum of one (persistent) Laplacian. Non-persistent records have `a == b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectraRecord {
    pub dim: usize,
    #[serde(with = "crate::report::filtration")]
    pub a: f64,
    #[serde(with = "crate::report::filtration")]
    pub b: f64,
    /// Non-decreasing.
    pub eigenvalues: Vec<f64>,
    /// Number of eigenvalues below `zero_threshold`.
    pub betti: usize,
    /// Smallest eigenvalue at or above `zero_threshold`.
    pub lambda_min_nonzero: Option<f64>,
    /// Absolute threshold used to separate harmonic eigenvalues.
    pub zero_threshold: f64,
    /// Unit eigenvectors as columns, ordered like `eigenvalues`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvectors: Option<Vec<Vec<f64>>>,
}

/// Assembles `L_k^a`. The down term is absent for `k = 0` and the up term is
/// absent when `k` is the complex's top dimension.
pub fn laplacian(complex: &FilteredFlagComplex, k: usize, a: f64) -> Result<LaplacianMatrix> {
    let n = complex.simplices_at(k, a)?.len();
    let mut matrix = DMatrix::zeros(n, n);
    if k >= 1 {
        add_down(&mut matrix, &boundary_matrix(complex, k, a)?);
    }
    if k < complex.max_dim() {
        add_up(&mut matrix, &boundary_matrix(complex, k + 1, a)?);
    }
    Ok(LaplacianMatrix { k, a, matrix })
}

/// `m += B B^T`, one outer product per column of `B`.
pub(crate) fn add_up(m: &mut DMatrix<f64>, b: &BoundaryMatrix) {
    for col in b.columns() {
        for &(i, s) in col {
            for &(j, t) in col {
                m[(i, j)] += (s * t) as f64;
            }
        }
    }
}

/// `m += B^T B`, accumulated row by row of `B`.
pub(crate) fn add_down(m: &mut DMatrix<f64>, b: &BoundaryMatrix) {
    let mut rows: Vec<Vec<(usize, i8)>> = vec![Vec::new(); b.nrows()];
    for (j, col) in b.columns().iter().enumerate() {
        for &(i, s) in col {
            rows[i].push((j, s));
        }
    }
    for row in &rows {
        for &(i, s) in row {
            for &(j, t) in row {
                m[(i, j)] += (s * t) as f64;
            }
        }
    }
}

pub(crate) fn inf_norm(m: &DMatrix<f64>) -> f64 {
    m.row_iter()
        .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Full eigendecomposition of a non-persistent Laplacian.
pub fn spectra(l: &LaplacianMatrix, opts: &SpectralOptions) -> Result<SpectraRecord> {
    symmetric_spectra(&l.matrix, l.k, l.a, l.a, opts)
}

pub(crate) fn symmetric_spectra(
    m: &DMatrix<f64>,
    dim: usize,
    a: f64,
    b: f64,
    opts: &SpectralOptions,
) -> Result<SpectraRecord> {
    let n = m.nrows();
    if n > opts.max_size {
        return Err(Error::Capacity {
            size: n,
            limit: opts.max_size,
        });
    }
    let norm = inf_norm(m);
    let zero_threshold = opts.zero_tol * norm.max(1.0);
    if n == 0 {
        return Ok(SpectraRecord {
            dim,
            a,
            b,
            eigenvalues: Vec::new(),
            betti: 0,
            lambda_min_nonzero: None,
            zero_threshold,
            eigenvectors: opts.eigenvectors.then(Vec::new),
        });
    }

    let eig = SymmetricEigen::try_new(m.clone(), f64::EPSILON, 10_000 * n).ok_or(Error::NoConvergence { n, norm })?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let betti = eigenvalues.iter().filter(|&&x| x < zero_threshold).count();
    let lambda_min_nonzero = eigenvalues.get(betti).copied();
    let eigenvectors = opts.eigenvectors.then(|| {
        order
            .iter()
            .map(|&i| eig.eigenvectors.column(i).iter().copied().collect())
            .collect()
    });

    Ok(SpectraRecord {
        dim,
        a,
        b,
        eigenvalues,
        betti,
        lambda_min_nonzero,
        zero_threshold,
        eigenvectors,
    })
}

/// Whether `v` is an eigenvector of `l` for `lambda`: `||Lv - lambda v|| <= tol ||v||`.
pub fn eigenvector_check(l: &LaplacianMatrix, v: &[f64], lambda: f64, tol: f64) -> Result<bool> {
    let n = l.matrix.nrows();
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    let v = nalgebra::DVector::from_column_slice(v);
    let norm = v.norm();
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    let residual = &l.matrix * &v - lambda * &v;
    Ok(residual.norm() <= tol * norm)
}

impl SpectraRecord {
    /// Eigenvalues below the zero threshold.
    pub fn harmonic(&self) -> &[f64] {
        &self.eigenvalues[..self.betti]
    }

    pub fn non_harmonic(&self) -> &[f64] {
        &self.eigenvalues[self.betti..]
    }
}
