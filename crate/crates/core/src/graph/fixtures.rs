//! Named test graphs shared by the verification grid and the benchmarks.

use super::{barabasi_albert, erdos_renyi, symmetrize, torus, Graph, GraphModel};

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub graph: Graph,
}

impl Fixture {
    fn new(name: impl Into<String>, graph: Graph) -> Self {
        Fixture {
            name: name.into(),
            graph,
        }
    }
}

/// Six vertices on a path 1-3-4-5-2-0. Rem with `splice_atomic` and
/// `find_compress` can split it into two components.
pub fn counter_example_edges() -> Vec<(usize, usize)> {
    vec![(0, 2), (1, 3), (2, 5), (3, 4), (4, 5)]
}

fn sym(name: &str, edges: &[(usize, usize)], n: usize) -> Fixture {
    Fixture::new(name, symmetrize(edges, n).expect("fixture edges in range"))
}

fn er(n: usize, avg_degree: f64, seed: u64) -> Graph {
    let GraphModel::ErdosRenyi { n, p } = GraphModel::erdos_renyi_avg_degree(n, avg_degree) else {
        unreachable!()
    };
    erdos_renyi(n, p, seed).expect("valid probability")
}

/// Hand-sized graphs: counter-example, edgeless, path, two triangles,
/// 4-cycle, K_8 and three tori.
pub fn small_fixtures() -> Vec<Fixture> {
    let k8: Vec<_> = (0..8).flat_map(|u| (u + 1..8).map(move |v| (u, v))).collect();
    let path: Vec<_> = (0..9).map(|v| (v, v + 1)).collect();
    vec![
        sym("counter_example", &counter_example_edges(), 6),
        Fixture::new("edgeless", Graph::empty(8)),
        sym("path", &path, 10),
        sym("two_triangles", &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)], 6),
        sym("cycle4", &[(0, 1), (1, 2), (2, 3), (3, 0)], 4),
        sym("k8", &k8, 8),
        Fixture::new("torus_1d_64", torus(1, 64).unwrap()),
        Fixture::new("torus_2d_16", torus(2, 16).unwrap()),
        Fixture::new("torus_3d_8", torus(3, 8).unwrap()),
    ]
}

/// The small fixtures plus ER(2000) at average degree 2 and 8 and BA(2000)
/// with 4 edges per vertex.
pub fn standard_fixtures() -> Vec<Fixture> {
    let mut v = small_fixtures();
    v.push(Fixture::new("er_2000_2", er(2000, 2.0, 11)));
    v.push(Fixture::new("er_2000_8", er(2000, 8.0, 7)));
    v.push(Fixture::new("ba_2000_4", barabasi_albert(2000, 4, 5).unwrap()));
    v
}

/// `count` Erdos-Renyi graphs of varying size and density around the
/// connectivity threshold, seeded `0..count`.
pub fn seeded_er(count: usize) -> Vec<Fixture> {
    (0..count)
        .map(|i| {
            let n = 100 + 37 * i;
            let avg = 0.5 + 0.25 * (i % 8) as f64;
            Fixture::new(format!("er_seed{i}_{n}"), er(n, avg, i as u64))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let f = standard_fixtures();
        assert_eq!(f.len(), 12);
        assert_eq!(f[0].graph.m(), 10);
        assert_eq!(f[5].graph.m(), 56);
        assert_eq!(f[7].graph.n(), 256);
        assert_eq!(seeded_er(20).len(), 20);
    }
}
