//! Immutable CSR graphs, edge lists and the transformations between them.

pub mod fixtures;
mod generate;
mod io;

pub use generate::{barabasi_albert, erdos_renyi, generate_graph, torus, GraphModel};
pub use io::{load_adjacency_graph, load_edge_list, parse_adjacency_graph, parse_edge_list, write_adjacency_graph};

use std::collections::VecDeque;
use std::ops::Range;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Vertex identifier in `[0, n)`.
pub type VertexId = usize;

/// Index of a directed edge in a [`Graph`]'s neighbor array.
pub type EdgeId = usize;

/// Symmetric graph in compressed-sparse-row layout.
///
/// The out-neighbors of `u` live in `neighbors[offsets[u]..offsets[u + 1]]`.
/// Every undirected edge is stored twice, once per direction, so `m()`
/// counts directed edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<VertexId>,
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            neighbors: Vec::new(),
        }
    }

    /// Builds a graph from raw CSR arrays, checking the offset invariants
    /// and target ranges. Symmetry is not checked.
    pub fn from_csr(offsets: Vec<usize>, neighbors: Vec<VertexId>) -> Result<Self> {
        if offsets.is_empty() {
            return Err(Error::InvalidParameter("offsets must hold n + 1 entries".into()));
        }
        if offsets[0] != 0 {
            return Err(Error::InvalidParameter("offsets[0] must be 0".into()));
        }
        if offsets.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidParameter("offsets must be nondecreasing".into()));
        }
        if *offsets.last().unwrap() != neighbors.len() {
            return Err(Error::InvalidParameter(format!(
                "offsets[n] = {} but {} neighbors given",
                offsets.last().unwrap(),
                neighbors.len()
            )));
        }
        let n = offsets.len() - 1;
        if let Some(&bad) = neighbors.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidParameter(format!(
                "neighbor {bad} out of range for n = {n}"
            )));
        }
        Ok(Graph { offsets, neighbors })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of directed edges.
    #[inline]
    pub fn m(&self) -> usize {
        self.neighbors.len()
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.neighbors[self.edge_range(v)]
    }

    /// Directed edge ids leaving `v`.
    #[inline]
    pub fn edge_range(&self, v: VertexId) -> Range<EdgeId> {
        self.offsets[v]..self.offsets[v + 1]
    }

    #[inline]
    pub fn edge_target(&self, e: EdgeId) -> VertexId {
        self.neighbors[e]
    }

    /// Source vertex of directed edge `e` (binary search over offsets).
    pub fn edge_source(&self, e: EdgeId) -> VertexId {
        debug_assert!(e < self.m());
        self.offsets.partition_point(|&o| o <= e) - 1
    }

    pub fn edge_endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        (self.edge_source(e), self.edge_target(e))
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn neighbor_array(&self) -> &[VertexId] {
        &self.neighbors
    }

    /// Checks sortedness, self-loop freedom and that every edge has its
    /// reverse. Returns a description of the first violation.
    pub fn verify_symmetric(&self) -> std::result::Result<(), String> {
        (0..self.n()).into_par_iter().try_for_each(|u| {
            let nbrs = self.neighbors(u);
            if nbrs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("neighbors of {u} are not strictly increasing"));
            }
            for &v in nbrs {
                if v == u {
                    return Err(format!("self-loop at {u}"));
                }
                if self.neighbors(v).binary_search(&u).is_err() {
                    return Err(format!("edge ({u},{v}) has no reverse"));
                }
            }
            Ok(())
        })
    }

    /// Undirected edges `(u, v)` with `u < v`, in CSR order.
    pub fn undirected_edges(&self) -> Vec<(VertexId, VertexId)> {
        (0..self.n())
            .flat_map(|u| self.neighbors(u).iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect()
    }

    /// Hop distances from `source` (`usize::MAX` for unreachable vertices).
    pub fn bfs_distances(&self, source: VertexId) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &v in self.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Double-sweep lower bound on the diameter of the component holding the
    /// highest-degree vertex. `None` for an empty graph.
    pub fn estimate_diameter(&self) -> Option<usize> {
        let start = (0..self.n()).max_by_key(|&v| (self.degree(v), std::cmp::Reverse(v)))?;
        let farthest = |dist: &[usize]| {
            dist.iter()
                .enumerate()
                .filter(|(_, &d)| d != usize::MAX)
                .max_by_key(|(v, &d)| (d, std::cmp::Reverse(*v)))
                .map(|(v, &d)| (v, d))
                .unwrap()
        };
        let (far, _) = farthest(&self.bfs_distances(start));
        let (_, ecc) = farthest(&self.bfs_distances(far));
        Some(ecc)
    }
}

/// Edge list in coordinate form, optionally weighted.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct EdgeList {
    pub n: usize,
    pub pairs: Vec<(VertexId, VertexId)>,
    pub weights: Option<Vec<f64>>,
}

impl EdgeList {
    pub fn new(n: usize, pairs: Vec<(VertexId, VertexId)>) -> Self {
        EdgeList {
            n,
            pairs,
            weights: None,
        }
    }

    pub fn weighted(n: usize, pairs: Vec<(VertexId, VertexId)>, weights: Vec<f64>) -> Self {
        assert_eq!(pairs.len(), weights.len(), "one weight per edge");
        EdgeList {
            n,
            pairs,
            weights: Some(weights),
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn check_bounds(&self) -> Result<()> {
        match self.pairs.iter().find(|&&(u, v)| u >= self.n || v >= self.n) {
            Some(&(u, v)) => Err(Error::InvalidParameter(format!(
                "edge ({u},{v}) out of range for n = {}",
                self.n
            ))),
            None => Ok(()),
        }
    }
}

/// Builds the symmetric CSR graph of `edges` on `n` vertices: both
/// directions of every edge, self-loops and duplicates dropped, neighbor
/// lists sorted.
pub fn symmetrize(edges: &[(VertexId, VertexId)], n: usize) -> Result<Graph> {
    if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= n || v >= n) {
        return Err(Error::InvalidParameter(format!(
            "edge ({u},{v}) out of range for n = {n}"
        )));
    }
    let mut directed: Vec<(VertexId, VertexId)> = edges
        .par_iter()
        .filter(|(u, v)| u != v)
        .flat_map_iter(|&(u, v)| [(u, v), (v, u)])
        .collect();
    directed.par_sort_unstable();
    directed.dedup();

    let mut offsets = vec![0usize; n + 1];
    for &(u, _) in &directed {
        offsets[u + 1] += 1;
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    let neighbors = directed.into_iter().map(|(_, v)| v).collect();
    Ok(Graph { offsets, neighbors })
}

impl TryFrom<&EdgeList> for Graph {
    type Error = Error;

    fn try_from(list: &EdgeList) -> Result<Self> {
        symmetrize(&list.pairs, list.n)
    }
}
