use rayon::prelude::*;

use super::{KOutVariant, SamplingSpec};
use crate::dsu::{compress_all, ForestEdges, ParentArray, UnionFind, UnionFindSpec};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::rng::hash_below;

/// The edges `u` contributes to the sample, as CSR edge ids. Random picks
/// are with replacement, so fewer than `k` distinct edges may result.
fn selected_edges(graph: &Graph, u: VertexId, k: usize, variant: KOutVariant, seed: u64) -> Vec<EdgeId> {
    let range = graph.edge_range(u);
    let d = range.len();
    if d == 0 {
        return Vec::new();
    }
    let random = |i: usize| range.start + hash_below(seed, (u as u64) << 8 | i as u64, d);
    match variant {
        KOutVariant::Afforest => range.clone().take(k).collect(),
        KOutVariant::Pure => (0..k).map(random).collect(),
        KOutVariant::Hybrid => std::iter::once(range.start).chain((1..k).map(random)).collect(),
        KOutVariant::MaxDeg => {
            let best = range
                .clone()
                .max_by_key(|&e| {
                    let v = graph.edge_target(e);
                    (graph.degree(v), std::cmp::Reverse(v))
                })
                .unwrap();
            std::iter::once(best).chain((1..k).map(random)).collect()
        }
    }
}

/// Contracts up to `k` edges per vertex with concurrent union-find and fully
/// compresses the result. Cluster roots are cluster minima.
pub fn kout_sample(
    graph: &Graph,
    spec: &SamplingSpec,
    labels: &ParentArray,
    forest: Option<&ForestEdges>,
) -> Result<()> {
    if spec.kout_k < 1 {
        return Err(Error::InvalidParameter("kout k must be at least 1".into()));
    }
    let uf = UnionFind::with_parents(UnionFindSpec::rem_cas_default(), labels.clone(), spec.seed);
    (0..graph.n()).into_par_iter().for_each(|u| {
        for e in selected_edges(graph, u, spec.kout_k, spec.kout_variant, spec.seed) {
            let v = graph.edge_target(e);
            match forest {
                Some(f) => uf.unite_recording(u, v, f, e),
                None => uf.unite(u, v),
            };
        }
    });
    let parents = uf.into_parents();
    compress_all(&parents);
    for v in 0..labels.len() {
        labels.set(v, parents.get(v));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::test_util::*;
    use super::super::{SamplingScheme, SamplingSpec};
    use super::*;
    use crate::graph::{erdos_renyi, symmetrize};

    fn spec(variant: KOutVariant, k: usize) -> SamplingSpec {
        SamplingSpec {
            kout_k: k,
            kout_variant: variant,
            ..SamplingSpec::new(SamplingScheme::KOut)
        }
    }

    #[test]
    fn afforest_k1_on_star_contracts_everything() {
        let edges: Vec<_> = (1..10).map(|v| (0, v)).collect();
        let g = symmetrize(&edges, 10).unwrap();
        let r = spec(KOutVariant::Afforest, 1).sample(&g, None).unwrap();
        assert_eq!(r.labels.to_vec(), vec![0; 10]);
        assert_eq!(r.stats.coverage, 1.0);
    }

    #[test]
    fn edgeless_stays_identity() {
        let g = Graph::empty(5);
        for variant in KOutVariant::ALL {
            let r = spec(variant, 2).sample(&g, None).unwrap();
            assert_eq!(r.labels.to_vec(), vec![0, 1, 2, 3, 4]);
            assert_eq!(r.stats.coverage, 1.0 / 5.0);
        }
    }

    #[test]
    fn zero_k_rejected() {
        assert!(spec(KOutVariant::Hybrid, 0).sample(&Graph::empty(2), None).is_err());
    }

    #[test]
    fn variants_are_sound_and_height_one() {
        let g = erdos_renyi(400, 0.004, 5).unwrap();
        for variant in KOutVariant::ALL {
            for k in 1..4 {
                let labels = spec(variant, k).sample(&g, None).unwrap().labels.into_vec();
                assert_height_one(&labels);
                assert_sound(&g, &labels);
                assert!(labels.iter().enumerate().all(|(v, &l)| l <= v));
            }
        }
    }

    #[test]
    fn maxdeg_picks_heaviest_neighbor() {
        // 0 - 1, 0 - 2, 2 - 3, 2 - 4: vertex 0's heaviest neighbor is 2.
        let g = symmetrize(&[(0, 1), (0, 2), (2, 3), (2, 4)], 5).unwrap();
        let e = selected_edges(&g, 0, 1, KOutVariant::MaxDeg, 0);
        assert_eq!(g.edge_target(e[0]), 2);
    }
}
