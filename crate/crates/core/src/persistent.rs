//! Persistent directed flag Laplacians.
//!
//! For `a <= b`, the persistent up-term lives on `C_{k+1}^{a,b}`, the
//! `(k+1)`-chains at `b` whose boundary lies in `C_k^a`. An orthonormal basis
//! `Z` of that subspace (as columns in the standard basis of `C_{k+1}^b`) makes
//! the adjoint of the persistent boundary `J B_{k+1}^b Z` its plain transpose,
//! so
//!
//! ```text
//! L_k^{a,b} = (J B_{k+1}^b Z)(J B_{k+1}^b Z)^T + (B_k^a)^T B_k^a
//! ```
//!
//! acts on `C_k^a` and its kernel dimension is the persistent Betti number.
//!
//! The only rank decision is the kernel of the rows of `B_{k+1}^b` indexed by
//! `k`-simplices born in `(a, b]`. It is found by column reduction, either
//! exactly with integer arithmetic or in floating point with a relative
//! tolerance, and the result is then orthonormalized.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::boundary::{boundary_matrix, BoundaryMatrix};
use crate::complex::FilteredFlagComplex;
use crate::error::{Error, Result};
use crate::laplacian::{add_down, symmetric_spectra, SpectraRecord, SpectralOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReductionMode {
    /// Exact below `exact_column_limit` columns, floating point above.
    Auto,
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PersistentOptions {
    pub mode: ReductionMode,
    pub exact_column_limit: usize,
    /// Relative tolerance for the floating-point reduction and for dropping
    /// dependent columns during orthonormalization.
    pub sub_tol: f64,
}

impl Default for PersistentOptions {
    fn default() -> Self {
        Self {
            mode: ReductionMode::Auto,
            exact_column_limit: 500,
            sub_tol: 1e-10,
        }
    }
}

/// Orthonormal basis of `C_{dim}^{a,b}` inside `C_{dim}^b`.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistentChainBasis {
    pub dim: usize,
    pub a: f64,
    pub b: f64,
    /// Rows: `dim`-simplices at `b`. Columns: orthonormal basis vectors.
    pub z: DMatrix<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PersistentLaplacian {
    pub k: usize,
    pub a: f64,
    pub b: f64,
    /// Matrix of the persistent boundary `d_{k+1}^{a,b}`: rows are the
    /// `k`-simplices at `a`, columns the basis of `C_{k+1}^{a,b}`.
    pub boundary: DMatrix<f64>,
    pub matrix: DMatrix<f64>,
}

fn check_pair(a: f64, b: f64) -> Result<()> {
    if a > b || a.is_nan() || b.is_nan() {
        Err(Error::InvalidPair { a, b })
    } else {
        Ok(())
    }
}

/// Orthonormal basis of the `dim`-chains at `b` whose boundary lies in the
/// chain group at `a`. Empty when `dim` exceeds the complex's cap.
pub fn persistent_chain_basis(
    complex: &FilteredFlagComplex,
    dim: usize,
    a: f64,
    b: f64,
    opts: &PersistentOptions,
) -> Result<PersistentChainBasis> {
    check_pair(a, b)?;
    if dim > complex.max_dim() {
        return Ok(PersistentChainBasis {
            dim,
            a,
            b,
            z: DMatrix::zeros(0, 0),
        });
    }
    let bb = boundary_matrix(complex, dim, b)?;
    let m = bb.ncols();
    let n_old = if dim == 0 { 0 } else { complex.count_at(dim - 1, a) };
    let new_rows = row_view(&bb, n_old);

    let exact = match opts.mode {
        ReductionMode::Exact => true,
        ReductionMode::Float => false,
        ReductionMode::Auto => m <= opts.exact_column_limit,
    };
    let generators = if new_rows.iter().all(Vec::is_empty) {
        DMatrix::identity(m, m)
    } else if exact {
        kernel_exact(&new_rows, m)
    } else {
        kernel_float(&new_rows, m, opts.sub_tol)
    };
    Ok(PersistentChainBasis {
        dim,
        a,
        b,
        z: orthonormalize_columns(&generators, opts.sub_tol),
    })
}

/// Rows `first..` of `b` as sparse `(col, sign)` lists.
fn row_view(b: &BoundaryMatrix, first: usize) -> Vec<Vec<(usize, i8)>> {
    let mut rows = vec![Vec::new(); b.nrows().saturating_sub(first)];
    for (j, col) in b.columns().iter().enumerate() {
        for &(i, s) in col {
            if i >= first {
                rows[i - first].push((j, s));
            }
        }
    }
    rows
}

/// Integer kernel basis of the sparse row block, by fraction-free column
/// reduction. Columns are scaled to unit max-norm before conversion.
fn kernel_exact(rows: &[Vec<(usize, i8)>], m: usize) -> DMatrix<f64> {
    let mut active: Vec<Vec<BigInt>> = (0..m)
        .map(|j| {
            let mut v = vec![BigInt::zero(); m];
            v[j] = BigInt::from(1);
            v
        })
        .collect();
    for row in rows {
        if active.is_empty() {
            break;
        }
        let values: Vec<BigInt> = active
            .iter()
            .map(|z| row.iter().map(|&(c, s)| &z[c] * BigInt::from(s)).sum())
            .collect();
        let Some(p) = values.iter().position(|v| !v.is_zero()) else {
            continue;
        };
        let pivot = active.remove(p);
        let mut values = values;
        let vp = values.remove(p);
        for (z, vj) in active.iter_mut().zip(values) {
            if vj.is_zero() {
                continue;
            }
            for (x, y) in z.iter_mut().zip(&pivot) {
                *x = &vp * &*x - &vj * y;
            }
            let g = z.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if !g.is_zero() && g != BigInt::from(1) {
                for x in z.iter_mut() {
                    *x /= &g;
                }
            }
        }
    }
    let mut out = DMatrix::zeros(m, active.len());
    for (j, z) in active.iter().enumerate() {
        let scale = z.iter().map(|x| x.abs()).max().unwrap_or_default();
        let shift = scale.bits().saturating_sub(52);
        for (i, x) in z.iter().enumerate() {
            out[(i, j)] = (x >> shift).to_f64().unwrap_or(0.0);
        }
    }
    out
}

/// Floating-point kernel basis by column reduction with largest-magnitude
/// pivoting. Entries of `row . z` below `tol * ||row|| * ||z||` count as zero.
fn kernel_float(rows: &[Vec<(usize, i8)>], m: usize, tol: f64) -> DMatrix<f64> {
    let mut active: Vec<DVector<f64>> = (0..m)
        .map(|j| {
            let mut v = DVector::zeros(m);
            v[j] = 1.0;
            v
        })
        .collect();
    for row in rows {
        if active.is_empty() {
            break;
        }
        let row_norm = (row.len() as f64).sqrt();
        let values: Vec<f64> = active
            .iter()
            .map(|z| {
                let v: f64 = row.iter().map(|&(c, s)| z[c] * s as f64).sum();
                if v.abs() <= tol * row_norm * z.norm() {
                    0.0
                } else {
                    v
                }
            })
            .collect();
        let (p, &vp) = values
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.abs().total_cmp(&y.1.abs()))
            .expect("nonempty");
        if vp == 0.0 {
            continue;
        }
        let pivot = active.remove(p);
        let mut values = values;
        values.remove(p);
        for (z, vj) in active.iter_mut().zip(values) {
            if vj != 0.0 {
                z.axpy(-vj / vp, &pivot, 1.0);
            }
        }
    }
    let mut out = DMatrix::zeros(m, active.len());
    for (j, z) in active.iter().enumerate() {
        out.set_column(j, z);
    }
    out
}

/// Orthonormal basis of the column span of `m`, by modified Gram-Schmidt with
/// column pivoting and a second orthogonalization pass. Columns whose residual
/// falls below `tol` times their original norm are dropped as dependent.
pub fn orthonormalize_columns(m: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let n = m.nrows();
    let mut cols: Vec<DVector<f64>> = m.column_iter().map(|c| c.into_owned()).collect();
    let mut reference: Vec<f64> = cols.iter().map(|c| c.norm()).collect();
    let mut basis: Vec<DVector<f64>> = Vec::new();

    while !cols.is_empty() {
        // pivot: largest remaining residual, first index on ties
        let mut p = 0;
        for j in 1..cols.len() {
            if cols[j].norm() > cols[p].norm() {
                p = j;
            }
        }
        let mut q = cols.remove(p);
        let r = reference.remove(p);
        for _ in 0..2 {
            for e in &basis {
                let d = e.dot(&q);
                q.axpy(-d, e, 1.0);
            }
        }
        let norm = q.norm();
        if norm <= tol * r.max(f64::MIN_POSITIVE) || norm == 0.0 {
            // everything left is at most as large, but may still be independent
            continue;
        }
        q /= norm;
        for c in cols.iter_mut() {
            let d = q.dot(c);
            c.axpy(-d, &q, 1.0);
        }
        basis.push(q);
    }
    if basis.is_empty() {
        return DMatrix::zeros(n, 0);
    }
    DMatrix::from_columns(&basis)
}

/// Matrix of `d_{dim}^{a,b}`: `J B_{dim}^b Z`, keeping only rows present at `a`.
pub fn persistent_boundary(
    complex: &FilteredFlagComplex,
    dim: usize,
    a: f64,
    b: f64,
    opts: &PersistentOptions,
) -> Result<DMatrix<f64>> {
    let basis = persistent_chain_basis(complex, dim, a, b, opts)?;
    boundary_through_basis(complex, &basis)
}

fn boundary_through_basis(complex: &FilteredFlagComplex, basis: &PersistentChainBasis) -> Result<DMatrix<f64>> {
    let dim = basis.dim;
    let n_rows = if dim == 0 {
        0
    } else {
        complex.count_at(dim - 1, basis.a)
    };
    let r = basis.z.ncols();
    let mut out = DMatrix::zeros(n_rows, r);
    if dim > complex.max_dim() || r == 0 || n_rows == 0 {
        return Ok(out);
    }
    let bb = boundary_matrix(complex, dim, basis.b)?;
    if bb.ncols() != basis.z.nrows() {
        return Err(Error::DimensionMismatch {
            expected: bb.ncols(),
            found: basis.z.nrows(),
        });
    }
    for (c, col) in bb.columns().iter().enumerate() {
        for &(i, s) in col {
            if i < n_rows {
                for j in 0..r {
                    out[(i, j)] += s as f64 * basis.z[(c, j)];
                }
            }
        }
    }
    Ok(out)
}

/// Assembles `L_k^{a,b}` on `C_k^a`.
pub fn persistent_laplacian(
    complex: &FilteredFlagComplex,
    k: usize,
    a: f64,
    b: f64,
    opts: &PersistentOptions,
) -> Result<PersistentLaplacian> {
    check_pair(a, b)?;
    complex.simplices_at(k, a)?;
    let basis = persistent_chain_basis(complex, k + 1, a, b, opts)?;
    persistent_laplacian_with_basis(complex, k, &basis)
}

/// Assembles `L_k^{a,b}` from a caller-supplied orthonormal basis of
/// `C_{k+1}^{a,b}`.
pub fn persistent_laplacian_with_basis(
    complex: &FilteredFlagComplex,
    k: usize,
    basis: &PersistentChainBasis,
) -> Result<PersistentLaplacian> {
    let (a, b) = (basis.a, basis.b);
    check_pair(a, b)?;
    let n = complex.simplices_at(k, a)?.len();
    let boundary = boundary_through_basis(complex, basis)?;

    let mut matrix = DMatrix::zeros(n, n);
    if k >= 1 {
        add_down(&mut matrix, &boundary_matrix(complex, k, a)?);
    }
    for i in 0..n {
        for j in i..n {
            let up = boundary.row(i).dot(&boundary.row(j));
            matrix[(i, j)] += up;
            if i != j {
                matrix[(j, i)] += up;
            }
        }
    }
    Ok(PersistentLaplacian {
        k,
        a,
        b,
        boundary,
        matrix,
    })
}

pub fn persistent_spectra(pl: &PersistentLaplacian, opts: &SpectralOptions) -> Result<SpectraRecord> {
    symmetric_spectra(&pl.matrix, pl.k, pl.a, pl.b, opts)
}
