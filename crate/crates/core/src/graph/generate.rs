//! Seeded synthetic graph generators. All output is symmetric and
//! bit-identical for a fixed `(model, seed)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{symmetrize, Graph, VertexId};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum GraphModel {
    /// G(n, p) with edge probability `p`.
    ErdosRenyi { n: usize, p: f64 },
    /// `d`-dimensional torus with `side^d` vertices, each joined to its `2d`
    /// axis neighbors with wraparound.
    Torus { dims: u32, side: usize },
    /// Preferential attachment: each new vertex attaches to `edges_per_vertex`
    /// distinct existing vertices.
    BarabasiAlbert { n: usize, edges_per_vertex: usize },
}

impl GraphModel {
    /// G(n, p) parameterized by expected average degree.
    pub fn erdos_renyi_avg_degree(n: usize, avg_degree: f64) -> Self {
        let p = if n > 1 { avg_degree / (n - 1) as f64 } else { 0.0 };
        GraphModel::ErdosRenyi { n, p }
    }
}

pub fn generate_graph(model: &GraphModel, seed: u64) -> Result<Graph> {
    match *model {
        GraphModel::ErdosRenyi { n, p } => erdos_renyi(n, p, seed),
        GraphModel::Torus { dims, side } => torus(dims, side),
        GraphModel::BarabasiAlbert { n, edges_per_vertex } => barabasi_albert(n, edges_per_vertex, seed),
    }
}

/// G(n, p) by geometric skipping over the `n(n-1)/2` candidate pairs.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::InvalidParameter(format!("edge probability {p} not in [0, 1]")));
    }
    let mut edges = Vec::new();
    if p > 0.0 && n > 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let log_q = (1.0 - p).ln();
        // Walk pairs (v, w) with w < v in row-major order.
        let mut v: usize = 1;
        let mut w: i64 = -1;
        while v < n {
            let skip = if p >= 1.0 {
                0
            } else {
                let r: f64 = rng.random::<f64>();
                ((1.0 - r).ln() / log_q).floor() as i64
            };
            w += 1 + skip;
            while v < n && w >= v as i64 {
                w -= v as i64;
                v += 1;
            }
            if v < n {
                edges.push((v, w as usize));
            }
        }
    }
    symmetrize(&edges, n)
}

pub fn torus(dims: u32, side: usize) -> Result<Graph> {
    if dims == 0 || side == 0 {
        return Err(Error::InvalidParameter("torus needs dims >= 1 and side >= 1".into()));
    }
    let n = side
        .checked_pow(dims)
        .ok_or_else(|| Error::InvalidParameter("torus too large".into()))?;
    let mut edges = Vec::with_capacity(n * dims as usize);
    for v in 0..n {
        let mut stride = 1;
        for _ in 0..dims {
            let coord = (v / stride) % side;
            let next = (coord + 1) % side;
            let u = v - coord * stride + next * stride;
            edges.push((v, u));
            stride *= side;
        }
    }
    symmetrize(&edges, n)
}

pub fn barabasi_albert(n: usize, edges_per_vertex: usize, seed: u64) -> Result<Graph> {
    let k = edges_per_vertex;
    if k == 0 || n <= k {
        return Err(Error::InvalidParameter(format!(
            "Barabasi-Albert needs edges_per_vertex >= 1 and n > edges_per_vertex (got n = {n}, k = {k})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(n * k);
    // Endpoint multiset: sampling from it is sampling proportional to degree.
    let mut endpoints: Vec<VertexId> = Vec::with_capacity(2 * n * k);
    // Seed clique on the first k + 1 vertices.
    for u in 0..=k {
        for v in 0..u {
            edges.push((u, v));
            endpoints.push(u);
            endpoints.push(v);
        }
    }
    let mut chosen = Vec::with_capacity(k);
    for v in (k + 1)..n {
        chosen.clear();
        while chosen.len() < k {
            let t = endpoints[rng.random_range(0..endpoints.len())];
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for &t in &chosen {
            edges.push((v, t));
            endpoints.push(v);
            endpoints.push(t);
        }
    }
    symmetrize(&edges, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_is_a_cycle() {
        let g = torus(1, 4).unwrap();
        assert_eq!(g.n(), 4);
        assert!((0..4).all(|v| g.degree(v) == 2));
        assert_eq!(g.neighbors(0), &[1, 3]);
    }

    #[test]
    fn torus_degrees() {
        let g = torus(3, 5).unwrap();
        assert_eq!(g.n(), 125);
        assert!((0..g.n()).all(|v| g.degree(v) == 6));
        g.verify_symmetric().unwrap();
    }

    #[test]
    fn er_zero_probability_is_edgeless() {
        let g = erdos_renyi(100, 0.0, 3).unwrap();
        assert_eq!(g.m(), 0);
    }

    #[test]
    fn er_full_probability_is_complete() {
        let g = erdos_renyi(8, 1.0, 3).unwrap();
        assert_eq!(g.m(), 8 * 7);
    }

    #[test]
    fn er_average_degree_is_close() {
        let g = generate_graph(&GraphModel::erdos_renyi_avg_degree(20_000, 10.0), 1).unwrap();
        let avg = g.m() as f64 / g.n() as f64;
        assert!((avg - 10.0).abs() < 0.3, "avg degree {avg}");
        g.verify_symmetric().unwrap();
    }

    #[test]
    fn generators_are_deterministic() {
        let a = erdos_renyi(500, 0.01, 9).unwrap();
        let b = erdos_renyi(500, 0.01, 9).unwrap();
        assert_eq!(a, b);
        let a = barabasi_albert(300, 3, 9).unwrap();
        let b = barabasi_albert(300, 3, 9).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, barabasi_albert(300, 3, 10).unwrap());
    }

    #[test]
    fn ba_shape() {
        let g = barabasi_albert(1000, 4, 1).unwrap();
        g.verify_symmetric().unwrap();
        // clique edges + k per later vertex, all distinct
        assert_eq!(g.m(), 2 * (10 + 4 * (1000 - 5)));
        assert!(barabasi_albert(4, 4, 1).is_err());
        assert!(erdos_renyi(10, 1.5, 1).is_err());
        assert!(torus(0, 3).is_err());
    }
}
