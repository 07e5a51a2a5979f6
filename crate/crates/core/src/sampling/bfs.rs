use std::sync::atomic::{AtomicUsize, Ordering::Relaxed};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::SamplingSpec;
use crate::dsu::{ForestEdges, ParentArray};
use crate::error::Result;
use crate::graph::{EdgeId, Graph, VertexId};

const UNSEEN: usize = usize::MAX;

/// Level-synchronous BFS from `source`. Returns, per vertex, the CSR id of
/// the edge it was discovered through (`UNSEEN` if unreached; the source
/// keeps `UNSEEN` too) and the number of reached vertices. Among several
/// frontier edges into a vertex the smallest id wins, so the tree does not
/// depend on scheduling.
pub(crate) fn bfs_tree(graph: &Graph, source: VertexId) -> (Vec<usize>, Vec<bool>, usize) {
    let n = graph.n();
    let parent_edge: Vec<AtomicUsize> = (0..n).map(|_| AtomicUsize::new(UNSEEN)).collect();
    let mut visited = vec![false; n];
    visited[source] = true;
    let mut reached = 1;
    let mut frontier = vec![source];
    while !frontier.is_empty() {
        let seen = &visited;
        let mut next: Vec<VertexId> = frontier
            .par_iter()
            .flat_map_iter(|&u| {
                let pe = &parent_edge;
                graph.edge_range(u).filter_map(move |e| {
                    let v = graph.edge_target(e);
                    (!seen[v]).then(|| {
                        pe[v].fetch_min(e, Relaxed);
                        v
                    })
                })
            })
            .collect();
        next.par_sort_unstable();
        next.dedup();
        for &v in &next {
            visited[v] = true;
        }
        reached += next.len();
        frontier = next;
    }
    (
        parent_edge.into_iter().map(AtomicUsize::into_inner).collect(),
        visited,
        reached,
    )
}

/// Up to `bfs_rounds` attempts: BFS from a random source and keep the
/// result if it reaches more than `bfs_threshold` of the vertices. On
/// success every reached vertex is labeled with the source; otherwise the
/// labels stay identity. Returns the number of attempts made.
pub fn bfs_sample(
    graph: &Graph,
    spec: &SamplingSpec,
    labels: &ParentArray,
    forest: Option<&ForestEdges>,
) -> Result<usize> {
    let n = graph.n();
    if n == 0 {
        return Ok(0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for attempt in 1..=spec.bfs_rounds {
        let source = rng.random_range(0..n);
        let (parent_edge, visited, reached) = bfs_tree(graph, source);
        if reached as f64 > spec.bfs_threshold * n as f64 {
            (0..n).into_par_iter().for_each(|v| {
                if visited[v] {
                    labels.set(v, source);
                    if let (Some(f), e) = (forest, parent_edge[v]) {
                        if e != UNSEEN {
                            f.record(v, e as EdgeId);
                        }
                    }
                }
            });
            return Ok(attempt);
        }
    }
    Ok(spec.bfs_rounds)
}

#[cfg(test)]
mod tests {
    use super::super::test_util::*;
    use super::super::{SamplingScheme, SamplingSpec};
    use super::*;
    use crate::graph::{symmetrize, torus};

    #[test]
    fn connected_graph_single_attempt() {
        let g = torus(2, 8).unwrap();
        let r = SamplingSpec::new(SamplingScheme::Bfs)
            .with_seed(3)
            .sample(&g, None)
            .unwrap();
        assert_eq!(r.stats.coverage, 1.0);
        assert_eq!(r.stats.attempts, 1);
        assert_height_one(&r.labels.to_vec());
    }

    #[test]
    fn isolated_vertices_fall_back_to_identity() {
        let g = Graph::empty(30);
        let r = SamplingSpec::new(SamplingScheme::Bfs).sample(&g, None).unwrap();
        assert_eq!(r.labels.to_vec(), (0..30).collect::<Vec<_>>());
        assert_eq!(r.stats.attempts, 3);
    }

    #[test]
    fn large_component_claims_source() {
        // Path over 0..90 and path over 90..100.
        let mut edges: Vec<_> = (0..89).map(|v| (v, v + 1)).collect();
        edges.extend((90..99).map(|v| (v, v + 1)));
        let g = symmetrize(&edges, 100).unwrap();
        let seed = (0..)
            .find(|&s| ChaCha8Rng::seed_from_u64(s).random_range(0..100usize) < 90)
            .unwrap();
        let source = ChaCha8Rng::seed_from_u64(seed).random_range(0..100usize);
        let r = SamplingSpec::new(SamplingScheme::Bfs)
            .with_seed(seed)
            .sample(&g, None)
            .unwrap();
        assert_eq!(r.stats.frequent_label, Some(source));
        assert!((r.stats.coverage - 0.9).abs() < 1e-12);
        assert_sound(&g, &r.labels.to_vec());
    }

    #[test]
    fn forest_holds_tree_edges_at_children() {
        let g = symmetrize(&[(0, 1), (1, 2), (2, 0), (2, 3)], 4).unwrap();
        let f = ForestEdges::new(4);
        let r = SamplingSpec::new(SamplingScheme::Bfs).sample(&g, Some(&f)).unwrap();
        let source = r.labels.get(0);
        let assigned = f.assigned();
        assert_eq!(assigned.len(), 3);
        for (slot, e) in assigned {
            assert_ne!(slot, source);
            assert_eq!(g.edge_target(e), slot);
        }
    }
}
