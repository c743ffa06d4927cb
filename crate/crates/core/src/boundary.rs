//! Boundary matrices of the filtered directed flag complex.

use std::io::{self, Write};

use nalgebra::DMatrix;

use crate::complex::FilteredFlagComplex;
use crate::error::Result;
use crate::model::Simplex;

/// Matrix of `d_k` restricted to simplices present at `a`.
///
/// Rows are the `(k-1)`-simplices at `a` and columns the `k`-simplices at `a`,
/// both in the complex's canonical order. Stored column-major as `(row, sign)`
/// pairs; the column of `(x_0, ..., x_k)` carries `(-1)^i` at the face that
/// omits `x_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryMatrix {
    pub k: usize,
    pub a: f64,
    n_rows: usize,
    columns: Vec<Vec<(usize, i8)>>,
}

/// Assembles `B_k^a`. For `k = 0` the result has no rows (the zero map).
pub fn boundary_matrix(complex: &FilteredFlagComplex, k: usize, a: f64) -> Result<BoundaryMatrix> {
    let cols = complex.simplices_at(k, a)?;
    if k == 0 {
        return Ok(BoundaryMatrix {
            k,
            a,
            n_rows: 0,
            columns: vec![Vec::new(); cols.len()],
        });
    }
    let n_rows = complex.count_at(k - 1, a);
    let columns = cols.iter().map(|s| column(complex, s)).collect();
    Ok(BoundaryMatrix { k, a, n_rows, columns })
}

/// Sparse boundary column of one simplex, against the full list of its faces'
/// dimension.
pub(crate) fn column(complex: &FilteredFlagComplex, s: &Simplex) -> Vec<(usize, i8)> {
    (0..s.vertices.len())
        .map(|i| {
            let row = complex
                .index_of(&s.face(i))
                .expect("directed flag complex is closed under faces");
            (row, if i % 2 == 0 { 1 } else { -1 })
        })
        .collect()
}

/// True when `B_k^a B_{k+1}^a = 0` for every `k` in range, using exact integer
/// arithmetic.
pub fn verify_chain_complex(complex: &FilteredFlagComplex, a: f64) -> bool {
    (1..complex.max_dim()).all(|k| {
        let lower = boundary_matrix(complex, k, a).expect("k in range");
        let upper = boundary_matrix(complex, k + 1, a).expect("k + 1 in range");
        lower.compose(&upper).iter().all(|col| col.iter().all(|&(_, v)| v == 0))
    })
}

impl BoundaryMatrix {
    pub fn nrows(&self) -> usize {
        self.n_rows
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<(usize, i8)>] {
        &self.columns
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.columns[col]
            .iter()
            .filter(|&&(r, _)| r == row)
            .map(|&(_, s)| s as i64)
            .sum()
    }

    /// Row simplices, i.e. the `(k-1)`-simplices at `a`.
    pub fn row_simplices<'c>(&self, complex: &'c FilteredFlagComplex) -> &'c [Simplex] {
        if self.k == 0 {
            &[]
        } else {
            complex.simplices_at(self.k - 1, self.a).unwrap_or(&[])
        }
    }

    pub fn col_simplices<'c>(&self, complex: &'c FilteredFlagComplex) -> &'c [Simplex] {
        complex.simplices_at(self.k, self.a).unwrap_or(&[])
    }

    /// Exact product `self * rhs`, one sparse column per column of `rhs`, with
    /// explicit zeros dropped.
    pub fn compose(&self, rhs: &BoundaryMatrix) -> Vec<Vec<(usize, i64)>> {
        rhs.columns
            .iter()
            .map(|col| {
                let mut acc = vec![0i64; self.n_rows];
                for &(mid, s) in col {
                    for &(r, t) in &self.columns[mid] {
                        acc[r] += (s as i64) * (t as i64);
                    }
                }
                acc.into_iter().enumerate().filter(|&(_, v)| v != 0).collect()
            })
            .collect()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n_rows, self.columns.len());
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, s) in col {
                m[(i, j)] += s as f64;
            }
        }
        m
    }

    /// Dense integer rows, for exact downstream use.
    pub fn to_dense_i64(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.columns.len()]; self.n_rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, s) in col {
                m[i][j] += s as i64;
            }
        }
        m
    }

    /// Plain-text triplets, one `row col value` line per nonzero, column-major.
    pub fn write_triplets<W: Write>(&self, mut w: W) -> io::Result<()> {
        for (j, col) in self.columns.iter().enumerate() {
            let mut entries = col.clone();
            entries.sort_unstable();
            for (i, s) in entries {
                writeln!(w, "{i} {j} {s}")?;
            }
        }
        Ok(())
    }
}
