//! The filtered directed flag complex of a filtered digraph.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{FilteredDigraph, FiltrationGrid, Simplex, VertexId};

/// Ordered simplices (directed cliques) of a filtered digraph, grouped by
/// dimension up to a cap.
///
/// Within a dimension, simplices are sorted by `(filtration, vertex tuple)`, so
/// the simplices present at any parameter `a` form a prefix of each list. All
/// matrix row and column orders derive from this canonical order.
#[derive(Debug, Clone)]
pub struct FilteredFlagComplex {
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Vec<VertexId>, usize>>,
    grid: FiltrationGrid,
    max_dim: usize,
}

/// Enumerates every directed clique of `digraph` with at most `max_dim + 1`
/// vertices.
///
/// A simplex enters the filtration at the largest value among its vertices and
/// edges.
pub fn build_complex(digraph: &FilteredDigraph, max_dim: usize) -> FilteredFlagComplex {
    let bound = digraph.id_bound();
    let mut out_nbrs: Vec<Vec<VertexId>> = vec![Vec::new(); bound];
    let mut edge_value: HashMap<(VertexId, VertexId), f64> = HashMap::with_capacity(digraph.edges().len());
    for e in digraph.edges() {
        out_nbrs[e.source].push(e.target);
        edge_value.insert((e.source, e.target), e.value);
    }
    // edges() is sorted by (source, target), so neighbour lists are sorted

    let mut simplices: Vec<Vec<Simplex>> = vec![Vec::new(); max_dim + 1];
    simplices[0] = digraph
        .vertices()
        .iter()
        .map(|v| Simplex {
            vertices: vec![v.id],
            filtration: v.value,
        })
        .collect();

    if max_dim >= 1 {
        let found: Vec<Vec<Simplex>> = digraph
            .vertices()
            .par_iter()
            .map(|v| {
                let mut acc = Vec::new();
                let mut clique = vec![v.id];
                extend(
                    &mut clique,
                    v.value,
                    &out_nbrs[v.id],
                    &out_nbrs,
                    &edge_value,
                    max_dim,
                    &mut acc,
                );
                acc
            })
            .collect();
        for s in found.into_iter().flatten() {
            let d = s.dim();
            simplices[d].push(s);
        }
    }

    for level in simplices.iter_mut() {
        level.sort_by(|x, y| {
            x.filtration
                .total_cmp(&y.filtration)
                .then_with(|| x.vertices.cmp(&y.vertices))
        });
    }
    let index = simplices
        .iter()
        .map(|level| level.iter().enumerate().map(|(i, s)| (s.vertices.clone(), i)).collect())
        .collect();
    let grid = FiltrationGrid::from_values(simplices.iter().flatten().map(|s| s.filtration));

    FilteredFlagComplex {
        simplices,
        index,
        grid,
        max_dim,
    }
}

/// Extends `clique` by every vertex in `candidates` (the common out-neighbours
/// of all its members), recording each extension and recursing.
fn extend(
    clique: &mut Vec<VertexId>,
    value: f64,
    candidates: &[VertexId],
    out_nbrs: &[Vec<VertexId>],
    edge_value: &HashMap<(VertexId, VertexId), f64>,
    max_dim: usize,
    acc: &mut Vec<Simplex>,
) {
    for &w in candidates {
        let filtration = clique.iter().map(|&u| edge_value[&(u, w)]).fold(value, f64::max);
        clique.push(w);
        acc.push(Simplex {
            vertices: clique.clone(),
            filtration,
        });
        if clique.len() <= max_dim {
            let next = intersect_sorted(candidates, &out_nbrs[w]);
            if !next.is_empty() {
                extend(clique, filtration, &next, out_nbrs, edge_value, max_dim, acc);
            }
        }
        clique.pop();
    }
}

fn intersect_sorted(a: &[VertexId], b: &[VertexId]) -> Vec<VertexId> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

impl FilteredFlagComplex {
    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn grid(&self) -> &FiltrationGrid {
        &self.grid
    }

    /// All `k`-simplices in canonical order.
    pub fn simplices(&self, k: usize) -> Result<&[Simplex]> {
        self.check_dim(k)?;
        Ok(&self.simplices[k])
    }

    /// The `k`-simplices with filtration value at most `a`; a prefix of
    /// [`FilteredFlagComplex::simplices`].
    pub fn simplices_at(&self, k: usize, a: f64) -> Result<&[Simplex]> {
        self.check_dim(k)?;
        Ok(&self.simplices[k][..self.count_unchecked(k, a)])
    }

    /// Number of `k`-simplices present at `a`; zero when `k` exceeds the cap.
    pub fn count_at(&self, k: usize, a: f64) -> usize {
        if k > self.max_dim {
            0
        } else {
            self.count_unchecked(k, a)
        }
    }

    /// Position of the simplex with this vertex tuple in its dimension's list.
    pub fn index_of(&self, vertices: &[VertexId]) -> Option<usize> {
        let k = vertices.len().checked_sub(1)?;
        self.index.get(k)?.get(vertices).copied()
    }

    /// Number of simplices per dimension.
    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    fn count_unchecked(&self, k: usize, a: f64) -> usize {
        self.simplices[k].partition_point(|s| s.filtration <= a)
    }

    fn check_dim(&self, k: usize) -> Result<()> {
        if k > self.max_dim {
            Err(Error::DimensionOutOfRange { k, max: self.max_dim })
        } else {
            Ok(())
        }
    }
}
