//! Weighted undirected road-network graph with planar vertex coordinates.
//!
//! All queries are pure and the graph is immutable after construction, so it
//! can be shared freely between concurrent simulations.

use alloc::collections::binary_heap::BinaryHeap;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;

/// Index of a vertex inside one particular [`Graph`].
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct VertexId(pub(crate) u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Index of an edge inside one particular [`Graph`].
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct EdgeId(pub(crate) u32);

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GraphError {
    DuplicateVertex(String),
    DanglingEndpoint(String),
    NonFiniteCoordinate(String),
    NonPositiveLength { u: String, v: String },
    SelfLoop(String),
    ParallelEdge { u: String, v: String },
    UnknownVertex(String),
    NotAnEdge { u: String, v: String },
    EmptyPath,
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::DuplicateVertex(id) => write!(f, "duplicate vertex id {id:?}"),
            GraphError::DanglingEndpoint(id) => write!(f, "dangling endpoint {id:?}"),
            GraphError::NonFiniteCoordinate(id) => {
                write!(f, "non-finite coordinate on vertex {id:?}")
            }
            GraphError::NonPositiveLength { u, v } => {
                write!(f, "non-positive length on edge ({u:?}, {v:?})")
            }
            GraphError::SelfLoop(id) => write!(f, "self-loop on vertex {id:?}"),
            GraphError::ParallelEdge { u, v } => write!(f, "parallel edge ({u:?}, {v:?})"),
            GraphError::UnknownVertex(id) => write!(f, "unknown vertex id {id:?}"),
            GraphError::NotAnEdge { u, v } => write!(f, "({u:?}, {v:?}) is not an edge"),
            GraphError::EmptyPath => write!(f, "empty path"),
        }
    }
}

impl core::error::Error for GraphError {}

struct EdgeRecord {
    /// Endpoint with the lexicographically smaller id string.
    lo: VertexId,
    hi: VertexId,
    length: f64,
}

/// Weighted undirected graph. Simple (no self-loops, no parallel edges),
/// every vertex carries planar coordinates in meters.
pub struct Graph {
    ids: Vec<String>,
    coords: Vec<(f64, f64)>,
    id_index: BTreeMap<String, VertexId>,
    edges: Vec<EdgeRecord>,
    /// Adjacency lists sorted by neighbor id rank.
    adj: Vec<Vec<(VertexId, EdgeId)>>,
}

/// Incremental construction with validation deferred to [`GraphBuilder::build`].
#[derive(Default)]
pub struct GraphBuilder {
    vertices: Vec<(String, f64, f64)>,
    edges: Vec<(String, String, Option<f64>)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, id: &str, x: f64, y: f64) -> &mut Self {
        self.vertices.push((id.to_string(), x, y));
        self
    }

    pub fn edge(&mut self, u: &str, v: &str, length: f64) -> &mut Self {
        self.edges
            .push((u.to_string(), v.to_string(), Some(length)));
        self
    }

    /// Edge whose length defaults to the Euclidean distance between its endpoints.
    pub fn edge_euclidean(&mut self, u: &str, v: &str) -> &mut Self {
        self.edges.push((u.to_string(), v.to_string(), None));
        self
    }

    pub fn build(self) -> Result<Graph, GraphError> {
        let mut id_index = BTreeMap::new();
        let mut ids = Vec::with_capacity(self.vertices.len());
        let mut coords = Vec::with_capacity(self.vertices.len());
        for (id, x, y) in self.vertices {
            if !(x.is_finite() && y.is_finite()) {
                return Err(GraphError::NonFiniteCoordinate(id));
            }
            let v = VertexId(ids.len() as u32);
            if id_index.insert(id.clone(), v).is_some() {
                return Err(GraphError::DuplicateVertex(id));
            }
            ids.push(id);
            coords.push((x, y));
        }

        // id_index iterates in lexicographic order; rank drives the
        // deterministic tie-breaks baked into adjacency order below
        let mut rank = alloc::vec![0u32; ids.len()];
        for (r, (_, v)) in id_index.iter().enumerate() {
            rank[v.index()] = r as u32;
        }

        let mut edges: Vec<EdgeRecord> = Vec::with_capacity(self.edges.len());
        let mut seen: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
        let mut adj: Vec<Vec<(VertexId, EdgeId)>> = alloc::vec![Vec::new(); ids.len()];
        for (u, v, length) in self.edges {
            let ui = *id_index
                .get(&u)
                .ok_or_else(|| GraphError::DanglingEndpoint(u.clone()))?;
            let vi = *id_index
                .get(&v)
                .ok_or_else(|| GraphError::DanglingEndpoint(v.clone()))?;
            if ui == vi {
                return Err(GraphError::SelfLoop(u));
            }
            let (lo, hi) = if ids[ui.index()] < ids[vi.index()] {
                (ui, vi)
            } else {
                (vi, ui)
            };
            if !seen.insert((lo, hi)) {
                return Err(GraphError::ParallelEdge { u, v });
            }
            let (x0, y0) = coords[ui.index()];
            let (x1, y1) = coords[vi.index()];
            let length = match length {
                Some(l) => l,
                None => libm::hypot(x1 - x0, y1 - y0),
            };
            if !(length > 0.0) || !length.is_finite() {
                return Err(GraphError::NonPositiveLength { u, v });
            }
            let e = EdgeId(edges.len() as u32);
            adj[lo.index()].push((hi, e));
            adj[hi.index()].push((lo, e));
            edges.push(EdgeRecord { lo, hi, length });
        }
        for list in adj.iter_mut() {
            list.sort_by_key(|(v, _)| rank[v.index()]);
        }

        Ok(Graph {
            ids,
            coords,
            id_index,
            edges,
            adj,
        })
    }
}

/// Simple path through the graph: an ordered vertex sequence whose
/// consecutive pairs are edges.
#[derive(Clone, Debug, PartialEq)]
pub struct Path {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
    length: f64,
}

impl Path {
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// Number of edges (one less than the number of vertices).
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn length(&self) -> f64 {
        self.length
    }
}

/// Total-order wrapper so f64 distances can live in a BinaryHeap.
#[derive(PartialEq)]
struct OrdF64(f64);

impl Eq for OrdF64 {}

impl PartialOrd for OrdF64 {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdF64 {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl Graph {
    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex(&self, id: &str) -> Option<VertexId> {
        self.id_index.get(id).copied()
    }

    pub fn require_vertex(&self, id: &str) -> Result<VertexId, GraphError> {
        self.vertex(id)
            .ok_or_else(|| GraphError::UnknownVertex(id.to_string()))
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.ids[v.index()]
    }

    pub fn coordinates(&self, v: VertexId) -> (f64, f64) {
        self.coords[v.index()]
    }

    /// Vertices in lexicographic id order.
    pub fn vertices_sorted(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.id_index.values().copied()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(|i| EdgeId(i as u32))
    }

    /// Endpoints with the lexicographically smaller id first.
    pub fn edge_endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let rec = &self.edges[e.index()];
        (rec.lo, rec.hi)
    }

    pub fn edge_length(&self, e: EdgeId) -> f64 {
        self.edges[e.index()].length
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.adj[u.index()]
            .iter()
            .find(|(w, _)| *w == v)
            .map(|(_, e)| *e)
    }

    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adj[v.index()]
    }

    pub fn euclidean(&self, p: VertexId, q: VertexId) -> f64 {
        let (x0, y0) = self.coords[p.index()];
        let (x1, y1) = self.coords[q.index()];
        libm::hypot(x1 - x0, y1 - y0)
    }

    /// UAV motion weight: the road length if (p, q) is a graph edge, the
    /// Euclidean distance otherwise. Symmetric, zero iff p = q.
    pub fn motion_weight(&self, p: VertexId, q: VertexId) -> f64 {
        if p == q {
            return 0.0;
        }
        match self.edge_between(p, q) {
            Some(e) => self.edge_length(e),
            None => self.euclidean(p, q),
        }
    }

    /// Minimum-length path from `src` to `dst` that avoids `blocked` entirely,
    /// or `None` when `dst` is unreachable. Ties between equal-length paths are
    /// broken toward the lexicographically smallest vertex-id sequence.
    pub fn shortest_path(
        &self,
        src: VertexId,
        dst: VertexId,
        blocked: &BTreeSet<EdgeId>,
    ) -> Option<Path> {
        let dist = self.dijkstra_from(dst, blocked);
        if !dist[src.index()].is_finite() {
            return None;
        }

        // Walk greedily from src, always taking the smallest-id neighbor that
        // stays on a shortest path; this yields the lexicographically smallest
        // optimal vertex sequence.
        let mut vertices = alloc::vec![src];
        let mut edges = Vec::new();
        let mut u = src;
        while u != dst {
            let du = dist[u.index()];
            let mut chosen: Option<(VertexId, EdgeId)> = None;
            for &(v, e) in &self.adj[u.index()] {
                if blocked.contains(&e) {
                    continue;
                }
                if self.edge_length(e) + dist[v.index()] == du {
                    chosen = Some((v, e));
                    break; // adjacency is sorted by id rank
                }
            }
            let (v, e) = chosen?;
            vertices.push(v);
            edges.push(e);
            u = v;
        }
        let length = edges.iter().map(|e| self.edge_length(*e)).sum();
        Some(Path {
            vertices,
            edges,
            length,
        })
    }

    fn dijkstra_from(&self, source: VertexId, blocked: &BTreeSet<EdgeId>) -> Vec<f64> {
        let mut dist = alloc::vec![f64::INFINITY; self.ids.len()];
        dist[source.index()] = 0.0;
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((OrdF64(0.0), source)));
        while let Some(Reverse((OrdF64(d), u))) = heap.pop() {
            if d > dist[u.index()] {
                continue;
            }
            for &(v, e) in &self.adj[u.index()] {
                if blocked.contains(&e) {
                    continue;
                }
                let nd = d + self.edge_length(e);
                if nd < dist[v.index()] {
                    dist[v.index()] = nd;
                    heap.push(Reverse((OrdF64(nd), v)));
                }
            }
        }
        dist
    }

    /// Sum of member edge lengths; zero for a single-vertex sequence.
    /// Errors when a consecutive pair is not a graph edge.
    pub fn path_length(&self, vertices: &[VertexId]) -> Result<f64, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::EmptyPath);
        }
        let mut total = 0.0;
        for pair in vertices.windows(2) {
            let e = self
                .edge_between(pair[0], pair[1])
                .ok_or_else(|| GraphError::NotAnEdge {
                    u: self.vertex_name(pair[0]).to_string(),
                    v: self.vertex_name(pair[1]).to_string(),
                })?;
            total += self.edge_length(e);
        }
        Ok(total)
    }

    /// Build a `Path` from an explicit vertex sequence, validating edges.
    pub fn path_from_vertices(&self, vertices: Vec<VertexId>) -> Result<Path, GraphError> {
        let length = self.path_length(&vertices)?;
        let edges = vertices
            .windows(2)
            .map(|p| self.edge_between(p[0], p[1]).expect("validated above"))
            .collect();
        Ok(Path {
            vertices,
            edges,
            length,
        })
    }
}
