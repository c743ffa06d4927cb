//! Filtered digraphs, ordered simplices and filtration grids.

use std::collections::{BTreeMap, HashSet};

use log::warn;

use crate::error::{Error, Result};

/// Dense vertex index. Original labels, if any, live in the digraph's label map.
pub type VertexId = usize;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vertex {
    pub id: VertexId,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub source: VertexId,
    pub target: VertexId,
    pub value: f64,
}

/// A finite digraph without self-loops or parallel edges where every vertex and
/// edge carries the filtration value at which it appears.
///
/// Edge values are never below the values of their endpoints, so every sublevel
/// set is itself a digraph.
#[derive(Debug, Clone)]
pub struct FilteredDigraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    labels: BTreeMap<VertexId, String>,
    clamped: usize,
}

impl PartialEq for FilteredDigraph {
    /// Content equality; the clamp counter is bookkeeping and ignored.
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges && self.labels == other.labels
    }
}

impl FilteredDigraph {
    /// Validates and builds a digraph. Edge values below an endpoint's value are
    /// raised to that value; see [`FilteredDigraph::clamped_edges`].
    pub fn new(vertices: Vec<(VertexId, f64)>, edges: Vec<(VertexId, VertexId, f64)>) -> Result<Self> {
        Self::build(vertices, edges, false)
    }

    /// Like [`FilteredDigraph::new`] but an edge below its endpoints is an error.
    pub fn new_strict(vertices: Vec<(VertexId, f64)>, edges: Vec<(VertexId, VertexId, f64)>) -> Result<Self> {
        Self::build(vertices, edges, true)
    }

    pub fn build(vertices: Vec<(VertexId, f64)>, edges: Vec<(VertexId, VertexId, f64)>, strict: bool) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let mut values = BTreeMap::new();
        for &(id, value) in &vertices {
            if !value.is_finite() {
                return Err(Error::NonFinite(format!("vertex {id}")));
            }
            if values.insert(id, value).is_some() {
                return Err(Error::DuplicateVertex(id));
            }
        }

        let mut seen = HashSet::with_capacity(edges.len());
        let mut out = Vec::with_capacity(edges.len());
        let mut clamped = 0;
        for (source, target, value) in edges {
            if source == target {
                return Err(Error::SelfLoop(source));
            }
            let (Some(&fs), Some(&ft)) = (values.get(&source), values.get(&target)) else {
                let missing = if values.contains_key(&source) { target } else { source };
                return Err(Error::DanglingEndpoint(missing));
            };
            if !value.is_finite() {
                return Err(Error::NonFinite(format!("edge ({source}, {target})")));
            }
            if !seen.insert((source, target)) {
                return Err(Error::DuplicateEdge(source, target));
            }
            let floor = fs.max(ft);
            let value = if value < floor {
                if strict {
                    return Err(Error::EdgeBelowEndpoints {
                        source_id: source,
                        target_id: target,
                        value,
                        floor,
                    });
                }
                warn!("edge ({source}, {target}) at {value} raised to endpoint value {floor}");
                clamped += 1;
                floor
            } else {
                value
            };
            out.push(Edge { source, target, value });
        }
        out.sort_by_key(|e| (e.source, e.target));

        Ok(Self {
            vertices: values.into_iter().map(|(id, value)| Vertex { id, value }).collect(),
            edges: out,
            labels: BTreeMap::new(),
            clamped,
        })
    }

    /// Attaches display labels, indexed by vertex id.
    pub fn with_labels(mut self, labels: impl IntoIterator<Item = (VertexId, String)>) -> Self {
        self.labels = labels.into_iter().collect();
        self
    }

    /// Vertices sorted by id.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Edges sorted by (source, target).
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Number of edges whose filtration value was raised to their endpoints' value.
    pub fn clamped_edges(&self) -> usize {
        self.clamped
    }

    pub fn label(&self, id: VertexId) -> String {
        self.labels.get(&id).cloned().unwrap_or_else(|| id.to_string())
    }

    pub fn labels(&self) -> &BTreeMap<VertexId, String> {
        &self.labels
    }

    pub fn vertex_value(&self, id: VertexId) -> Option<f64> {
        self.vertices
            .binary_search_by_key(&id, |v| v.id)
            .ok()
            .map(|i| self.vertices[i].value)
    }

    pub fn edge_value(&self, source: VertexId, target: VertexId) -> Option<f64> {
        self.edges
            .binary_search_by_key(&(source, target), |e| (e.source, e.target))
            .ok()
            .map(|i| self.edges[i].value)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The subgraph of vertices and edges with filtration value at most `a`.
    /// Vertex ids are preserved.
    pub fn sublevel(&self, a: f64) -> FilteredDigraph {
        let vertices: Vec<Vertex> = self.vertices.iter().copied().filter(|v| v.value <= a).collect();
        let labels = self
            .labels
            .iter()
            .filter(|(id, _)| vertices.binary_search_by_key(id, |v| &v.id).is_ok())
            .map(|(id, l)| (*id, l.clone()))
            .collect();
        FilteredDigraph {
            vertices,
            edges: self.edges.iter().copied().filter(|e| e.value <= a).collect(),
            labels,
            clamped: 0,
        }
    }

    /// Distinct filtration values of vertices and edges.
    pub fn grid(&self) -> FiltrationGrid {
        FiltrationGrid::from_values(
            self.vertices
                .iter()
                .map(|v| v.value)
                .chain(self.edges.iter().map(|e| e.value)),
        )
    }

    pub(crate) fn id_bound(&self) -> usize {
        self.vertices.last().map_or(0, |v| v.id + 1)
    }
}

/// An ordered simplex: a directed clique `(v_0, ..., v_k)` with an edge
/// `v_i -> v_j` for every `i < j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    pub vertices: Vec<VertexId>,
    pub filtration: f64,
}

impl Simplex {
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// The face obtained by deleting the vertex at position `i`.
    pub fn face(&self, i: usize) -> Vec<VertexId> {
        let mut f = self.vertices.clone();
        f.remove(i);
        f
    }
}

/// Strictly increasing list of the filtration values that occur in a complex.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FiltrationGrid(Vec<f64>);

impl FiltrationGrid {
    pub fn from_values(values: impl IntoIterator<Item = f64>) -> Self {
        let mut v: Vec<f64> = values.into_iter().collect();
        v.sort_by(f64::total_cmp);
        v.dedup();
        Self(v)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(g_i, g_{i+1})` for consecutive grid values, followed by the terminal
    /// pair `(g_last, g_last)`.
    pub fn consecutive_pairs(&self) -> Vec<(f64, f64)> {
        let mut pairs: Vec<(f64, f64)> = self.0.windows(2).map(|w| (w[0], w[1])).collect();
        if let Some(&last) = self.0.last() {
            pairs.push((last, last));
        }
        pairs
    }

    /// Every `(g_i, g_j)` with `i <= j`.
    pub fn all_pairs(&self) -> Vec<(f64, f64)> {
        let mut pairs = Vec::new();
        for (i, &a) in self.0.iter().enumerate() {
            for &b in &self.0[i..] {
                pairs.push((a, b));
            }
        }
        pairs
    }
}
