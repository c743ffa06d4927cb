#![allow(dead_code)]

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use pdfl::{boundary_matrix, FilteredDigraph, FilteredFlagComplex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random filtered digraph: up to `max_n` vertices, values in `{0, 1, 2}`,
/// each ordered pair an edge with probability `p`.
pub fn random_digraph(rng: &mut ChaCha8Rng, max_n: usize, p: f64) -> FilteredDigraph {
    let n = rng.gen_range(1..=max_n);
    let values: Vec<f64> = (0..n).map(|_| rng.gen_range(0..3) as f64).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                let w = (rng.gen_range(0..3) as f64).max(values[u]).max(values[v]);
                edges.push((u, v, w));
            }
        }
    }
    FilteredDigraph::new_strict(values.into_iter().enumerate().collect(), edges).unwrap()
}

pub fn corpus(seed: u64, count: usize, max_n: usize, p: f64) -> Vec<FilteredDigraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_digraph(&mut rng, max_n, p)).collect()
}

/// Every directed clique with at most `max_len` vertices present at `a`, by
/// testing all ordered vertex tuples.
pub fn brute_force_cliques(g: &FilteredDigraph, max_len: usize, a: f64) -> BTreeSet<Vec<usize>> {
    let ids: Vec<usize> = g.vertices().iter().filter(|v| v.value <= a).map(|v| v.id).collect();
    let mut out = BTreeSet::new();
    let mut stack: Vec<Vec<usize>> = ids.iter().map(|&v| vec![v]).collect();
    while let Some(t) = stack.pop() {
        let ok = (0..t.len()).all(|i| (i + 1..t.len()).all(|j| g.edge_value(t[i], t[j]).is_some_and(|w| w <= a)));
        if !ok {
            continue;
        }
        if t.len() < max_len {
            for &v in &ids {
                if !t.contains(&v) {
                    let mut u = t.clone();
                    u.push(v);
                    stack.push(u);
                }
            }
        }
        out.insert(t);
    }
    out
}

/// Up-term of the persistent Laplacian as a Schur complement of the up
/// Laplacian at `b` onto the simplices present at `a`.
pub fn schur_up(complex: &FilteredFlagComplex, k: usize, a: f64, b: f64) -> DMatrix<f64> {
    let na = complex.count_at(k, a);
    if k + 1 > complex.max_dim() {
        return DMatrix::zeros(na, na);
    }
    let nb = complex.count_at(k, b);
    let bb = boundary_matrix(complex, k + 1, b).unwrap().to_dense();
    let up = &bb * bb.transpose();
    let aa = up.view((0, 0), (na, na)).into_owned();
    if nb == na {
        return aa;
    }
    let ab = up.view((0, na), (na, nb - na)).into_owned();
    let bbk = up.view((na, na), (nb - na, nb - na)).into_owned();
    let pinv = bbk.pseudo_inverse(1e-10).unwrap();
    aa - &ab * pinv * ab.transpose()
}

/// Full persistent Laplacian by the Schur-complement route.
pub fn schur_laplacian(complex: &FilteredFlagComplex, k: usize, a: f64, b: f64) -> DMatrix<f64> {
    let mut l = schur_up(complex, k, a, b);
    if k >= 1 {
        let d = boundary_matrix(complex, k, a).unwrap().to_dense();
        l += d.transpose() * d;
    }
    l
}

/// Weakly connected components of the sublevel graph at `a`.
pub fn weak_components(g: &FilteredDigraph, a: f64) -> usize {
    let bound = g.vertices().last().map_or(0, |v| v.id + 1);
    let mut parent: Vec<usize> = (0..bound).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for e in g.edges().iter().filter(|e| e.value <= a) {
        let (x, y) = (find(&mut parent, e.source), find(&mut parent, e.target));
        parent[x] = y;
    }
    let present: Vec<usize> = g.vertices().iter().filter(|v| v.value <= a).map(|v| v.id).collect();
    present
        .iter()
        .map(|&v| find(&mut parent, v))
        .collect::<BTreeSet<_>>()
        .len()
}

pub fn max_abs_diff(x: &DMatrix<f64>, y: &DMatrix<f64>) -> f64 {
    assert_eq!(x.shape(), y.shape());
    x.iter().zip(y.iter()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

pub fn fixture(name: &str) -> String {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn fixture_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}
