//! Reference implementations for integration tests. Deliberately simple
//! and sequential, sharing no code with the library under test.

#![allow(dead_code)]

use connectit::graph::{erdos_renyi, EdgeList, Graph, GraphModel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Sequential union-find with path halving and union by index.
pub struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// False if `a` and `b` were already connected.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    pub fn connected(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    /// Smallest vertex of each vertex's set. Union by index keeps the
    /// smallest vertex as the root.
    pub fn canonical(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|v| self.find(v)).collect()
    }
}

/// Canonical component labels of an undirected edge set.
pub fn partition(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut d = Dsu::new(n);
    for &(u, v) in edges {
        d.union(u, v);
    }
    d.canonical()
}

pub fn graph_partition(g: &Graph) -> Vec<usize> {
    partition(g.n(), &g.undirected_edges())
}

pub fn count_components(canonical: &[usize]) -> usize {
    canonical.iter().enumerate().filter(|&(v, &l)| v == l).count()
}

/// Checks `forest` is a spanning forest of `g`; returns the reason if not.
pub fn forest_violation(g: &Graph, forest: &[(usize, usize)]) -> Option<String> {
    let n = g.n();
    let expected = graph_partition(g);
    if forest.len() != n - count_components(&expected) {
        return Some(format!(
            "{} edges, want {}",
            forest.len(),
            n - count_components(&expected)
        ));
    }
    let mut d = Dsu::new(n);
    for &(u, v) in forest {
        if !g.neighbors(u).contains(&v) {
            return Some(format!("({u},{v}) not a graph edge"));
        }
        if !d.union(u, v) {
            return Some(format!("({u},{v}) closes a cycle"));
        }
    }
    (d.canonical() != expected).then(|| "forest partition differs from graph".to_string())
}

pub fn er(n: usize, avg_degree: f64, seed: u64) -> Graph {
    let GraphModel::ErdosRenyi { n, p } = GraphModel::erdos_renyi_avg_degree(n, avg_degree) else {
        unreachable!()
    };
    erdos_renyi(n, p, seed).unwrap()
}

/// ER graph with independent Exp(1) edge weights.
pub fn weighted_er(n: usize, avg_degree: f64, seed: u64) -> EdgeList {
    let g = er(n, avg_degree, seed);
    let pairs = g.undirected_edges();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let weights = pairs
        .iter()
        .map(|_| (-(1.0 - rng.random::<f64>()).ln()).max(f64::MIN_POSITIVE))
        .collect();
    EdgeList::weighted(n, pairs, weights)
}

/// Exact minimum spanning forest weights in ascending order.
pub fn kruskal_weights(list: &EdgeList) -> Vec<f64> {
    let w = list.weights.as_ref().unwrap();
    let mut order: Vec<usize> = (0..list.pairs.len()).collect();
    order.sort_by(|&a, &b| w[a].total_cmp(&w[b]));
    let mut d = Dsu::new(list.n);
    order
        .into_iter()
        .filter(|&i| d.union(list.pairs[i].0, list.pairs[i].1))
        .map(|i| w[i])
        .collect()
}

pub fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}
