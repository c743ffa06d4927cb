//! Exact Betti numbers over the rationals, used to cross-check spectral kernels.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::boundary::boundary_matrix;
use crate::complex::FilteredFlagComplex;
use crate::error::{Error, Result};

/// Largest number of columns the oracle will eliminate.
pub const ORACLE_COLUMN_LIMIT: usize = 300;

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalMatrix {
    nrows: usize,
    ncols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            data: vec![BigRational::zero(); nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))))
            .collect();
        Self { nrows, ncols, data }
    }

    /// `B_k^a` as a rational matrix.
    pub fn from_boundary(complex: &FilteredFlagComplex, k: usize, a: f64) -> Result<Self> {
        let b = boundary_matrix(complex, k, a)?;
        let mut m = Self::zeros(b.nrows(), b.ncols());
        for (j, col) in b.columns().iter().enumerate() {
            for &(i, s) in col {
                m.set(i, j, BigRational::from_integer(BigInt::from(s)));
            }
        }
        Ok(m)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.ncols + j] = v;
    }

    /// `[self | rhs]`. Row counts must agree.
    pub fn hcat(&self, rhs: &RationalMatrix) -> Result<Self> {
        if self.nrows != rhs.nrows {
            return Err(Error::DimensionMismatch {
                expected: self.nrows,
                found: rhs.nrows,
            });
        }
        let mut m = Self::zeros(self.nrows, self.ncols + rhs.ncols);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.ncols {
                m.set(i, self.ncols + j, rhs.get(i, j).clone());
            }
        }
        Ok(m)
    }

    /// Copy with zero rows appended up to `nrows`.
    pub fn pad_rows(&self, nrows: usize) -> Self {
        let mut m = Self::zeros(nrows.max(self.nrows), self.ncols);
        m.data[..self.data.len()].clone_from_slice(&self.data);
        m
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.ncols {
            if r == m.nrows {
                break;
            }
            let Some(p) = (r..m.nrows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.ncols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.nrows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.ncols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Basis of the right nullspace, one column per free variable.
    pub fn nullspace(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(self.ncols, free.len());
        for (j, &f) in free.iter().enumerate() {
            out.set(f, j, BigRational::one());
            for (row, &p) in pivots.iter().enumerate() {
                out.set(p, j, -r.get(row, f));
            }
        }
        out
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.ncols {
                self.data.swap(i * self.ncols + c, j * self.ncols + c);
            }
        }
    }
}

pub fn exact_rank(m: &RationalMatrix) -> usize {
    m.rref().1.len()
}

fn check_columns(m: &RationalMatrix) -> Result<()> {
    if m.ncols() > ORACLE_COLUMN_LIMIT {
        Err(Error::Capacity {
            size: m.ncols(),
            limit: ORACLE_COLUMN_LIMIT,
        })
    } else {
        Ok(())
    }
}

/// `B_{k+1}^a`, or a matrix with no columns when `k` is the top dimension.
fn upper_boundary(complex: &FilteredFlagComplex, k: usize, a: f64) -> Result<RationalMatrix> {
    if k + 1 > complex.max_dim() {
        Ok(RationalMatrix::zeros(complex.count_at(k, a), 0))
    } else {
        RationalMatrix::from_boundary(complex, k + 1, a)
    }
}

/// `beta_k^a = nullity(B_k^a) - rank(B_{k+1}^a)`.
pub fn oracle_betti(complex: &FilteredFlagComplex, k: usize, a: f64) -> Result<usize> {
    let lower = RationalMatrix::from_boundary(complex, k, a)?;
    let upper = upper_boundary(complex, k, a)?;
    check_columns(&lower)?;
    check_columns(&upper)?;
    let nullity = lower.ncols() - exact_rank(&lower);
    Ok(nullity - exact_rank(&upper))
}

/// `beta_k^{a,b} = dim Z_k^a - dim(Z_k^a ∩ B_k^b)`, with the intersection from
/// `dim U + dim W - dim(U + W)`.
pub fn oracle_persistent_betti(complex: &FilteredFlagComplex, k: usize, a: f64, b: f64) -> Result<usize> {
    if a > b {
        return Err(Error::InvalidPair { a, b });
    }
    let lower = RationalMatrix::from_boundary(complex, k, a)?;
    let upper = upper_boundary(complex, k, b)?;
    check_columns(&lower)?;
    check_columns(&upper)?;

    let cycles = lower.nullspace().pad_rows(complex.count_at(k, b));
    let dim_z = cycles.ncols();
    let dim_b = exact_rank(&upper);
    let joint = cycles.hcat(&upper)?;
    check_columns(&joint)?;
    let dim_sum = exact_rank(&joint);
    let dim_cap = dim_z + dim_b - dim_sum;
    Ok(dim_z - dim_cap)
}
