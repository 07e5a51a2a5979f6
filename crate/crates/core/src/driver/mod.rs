//! The two-phase connectivity framework: sample, pick the most frequent
//! label, finish the remaining work, canonicalize. Also spanning forest and
//! the reference BFS oracle.

mod spec;

pub use spec::{AlgorithmSpec, FinishSpec};

use std::collections::VecDeque;
use std::sync::atomic::{AtomicUsize, Ordering::Relaxed};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::dsu::{root_of, ForestEdges, ParentArray, UnionFind};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::minbased::{MinBasedSpec, RoundOptions, WorkEdges};
use crate::rng::mix64;
use crate::sampling::SampleStats;

#[derive(Clone, Debug, Default)]
pub struct Timings {
    pub sample: Duration,
    pub identify: Duration,
    pub finish: Duration,
}

impl Timings {
    pub fn total(&self) -> Duration {
        self.sample + self.identify + self.finish
    }
}

#[derive(Clone, Debug)]
pub struct ComponentReport {
    pub num_components: usize,
    pub largest_size: usize,
    /// Each vertex's label is the smallest vertex id in its component.
    pub canonical_labels: Vec<usize>,
    pub timings: Timings,
    pub sample_stats: Option<SampleStats>,
    /// The label whose vertices the finish phase skipped, in sampled-label
    /// terms.
    pub skipped_label: Option<usize>,
}

impl ComponentReport {
    fn from_labels(raw: &[usize], timings: Timings, sample_stats: Option<SampleStats>, skipped: Option<usize>) -> Self {
        let canonical_labels = canonicalize(raw);
        let (num_components, largest_size) = component_stats(&canonical_labels);
        ComponentReport {
            num_components,
            largest_size,
            canonical_labels,
            timings,
            sample_stats,
            skipped_label: skipped,
        }
    }

    pub fn label_checksum(&self) -> u64 {
        label_checksum(&self.canonical_labels)
    }
}

/// Knobs that change how a run proceeds but never its answer.
#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Replaces the sampled most-frequent label: `Some(None)` skips nothing,
    /// `Some(Some(l))` skips label `l` even if it is not the mode.
    pub frequent_override: Option<Option<usize>>,
}

/// Connected components of `graph` with `spec`.
pub fn connectivity(graph: &Graph, spec: &AlgorithmSpec) -> Result<ComponentReport> {
    connectivity_with(graph, spec, &RunOptions::default())
}

pub fn connectivity_with(graph: &Graph, spec: &AlgorithmSpec, opts: &RunOptions) -> Result<ComponentReport> {
    let run = run_phases(graph, spec, opts, None)?;
    Ok(ComponentReport::from_labels(
        &run.labels,
        run.timings,
        Some(run.stats),
        run.skipped,
    ))
}

/// Spanning forest of `graph` as undirected `(u, v)` pairs, together with
/// the component report. Requires a root-based finish.
pub fn spanning_forest(graph: &Graph, spec: &AlgorithmSpec) -> Result<(Vec<(VertexId, VertexId)>, ComponentReport)> {
    spanning_forest_with(graph, spec, &RunOptions::default())
}

pub fn spanning_forest_with(
    graph: &Graph,
    spec: &AlgorithmSpec,
    opts: &RunOptions,
) -> Result<(Vec<(VertexId, VertexId)>, ComponentReport)> {
    if !spec.finish.is_root_based() {
        return Err(Error::Ineligible(format!(
            "{} is not root-based and cannot build a spanning forest",
            spec.finish
        )));
    }
    let forest = ForestEdges::new(graph.n());
    let run = run_phases(graph, spec, opts, Some(&forest))?;
    let edges = forest.edge_ids().into_iter().map(|e| graph.edge_endpoints(e)).collect();
    Ok((
        edges,
        ComponentReport::from_labels(&run.labels, run.timings, Some(run.stats), run.skipped),
    ))
}

struct PhaseRun {
    labels: Vec<usize>,
    timings: Timings,
    stats: SampleStats,
    skipped: Option<usize>,
}

fn run_phases(
    graph: &Graph,
    spec: &AlgorithmSpec,
    opts: &RunOptions,
    forest: Option<&ForestEdges>,
) -> Result<PhaseRun> {
    let n = graph.n();
    let sample = spec.sampling.sample(graph, forest)?;
    let frequent = opts.frequent_override.unwrap_or(sample.stats.frequent_label);
    if let Some(l) = frequent {
        if l >= n {
            return Err(Error::InvalidParameter(format!(
                "skip label {l} out of range for n = {n}"
            )));
        }
    }
    let sampled = sample.labels.into_vec();
    let (sampled, skip) = normalize_clusters(graph, sampled, frequent, forest);

    let start = Instant::now();
    let seed = spec.sampling.seed;
    let labels = match spec.finish {
        FinishSpec::UnionFind(uf_spec) => {
            let uf = UnionFind::with_parents(uf_spec, ParentArray::from_vec(sampled.clone()), seed);
            (0..n).into_par_iter().for_each(|u| {
                let lu = sampled[u];
                if Some(lu) == skip {
                    return;
                }
                for e in graph.edge_range(u) {
                    let v = graph.edge_target(e);
                    if sampled[v] == lu {
                        continue;
                    }
                    match forest {
                        Some(f) => uf.unite_recording(u, v, f, e),
                        None => uf.unite(u, v),
                    };
                }
            });
            uf.into_parents().into_vec()
        }
        FinishSpec::MinBased(m) if m.is_root_based() => {
            let edges = work_edges(graph, &sampled, skip, 0);
            let labels = ParentArray::from_vec(sampled);
            let opts = RoundOptions { forest, on_round: None };
            m.run(&edges, &labels, &opts)?;
            labels.into_vec()
        }
        FinishSpec::MinBased(m) => run_reserved(graph, m, &sampled, skip)?,
    };
    let timings = Timings {
        sample: sample.stats.elapsed,
        identify: sample.stats.identify_elapsed,
        finish: start.elapsed(),
    };
    Ok(PhaseRun {
        labels,
        timings,
        stats: sample.stats,
        skipped: frequent,
    })
}

/// Directed edges still needing work: the source is not skipped and the
/// endpoints lie in different sampled clusters. Endpoints are shifted by
/// `offset`.
fn work_edges(graph: &Graph, sampled: &[usize], skip: Option<usize>, offset: usize) -> WorkEdges {
    let (pairs, ids) = (0..graph.n())
        .into_par_iter()
        .filter(|&u| Some(sampled[u]) != skip)
        .flat_map_iter(|u| {
            graph.edge_range(u).filter_map(move |e| {
                let v = graph.edge_target(e);
                (sampled[u] != sampled[v]).then_some(((u + offset, v + offset), e))
            })
        })
        .unzip();
    WorkEdges { pairs, ids }
}

/// Runs a non-root-based min-based method with slot 0 reserved for the
/// skipped cluster. Vertex `v` lives at slot `v + 1`, so the skipped
/// cluster's label is below every other and its members never move.
fn run_reserved(graph: &Graph, method: MinBasedSpec, sampled: &[usize], skip: Option<usize>) -> Result<Vec<usize>> {
    let n = graph.n();
    let mut shifted = Vec::with_capacity(n + 1);
    shifted.push(0);
    shifted.extend(sampled.iter().map(|&l| if Some(l) == skip { 0 } else { l + 1 }));
    let labels = ParentArray::from_vec(shifted);
    let mut edges = work_edges(graph, sampled, skip, 1);
    // These methods may overwrite a non-root member's label, cutting it off
    // from its cluster root. Star edges to the root keep the cluster
    // connected in place of the dropped intra-cluster edges.
    let star: Vec<(usize, usize)> = (0..n)
        .into_par_iter()
        .filter(|&v| sampled[v] != v && Some(sampled[v]) != skip)
        .flat_map_iter(|v| [(v + 1, sampled[v] + 1), (sampled[v] + 1, v + 1)])
        .collect();
    edges.ids.extend(std::iter::repeat_n(ForestEdges::SENTINEL, star.len()));
    edges.pairs.extend(star);
    method.run(&edges, &labels, &RoundOptions::default())?;
    let shifted = labels.into_vec();
    Ok((0..n)
        .map(|v| match shifted[v + 1] {
            0 => skip.expect("reserved label only assigned to the skipped cluster"),
            l => l - 1,
        })
        .collect())
}

/// Relabels every sampled cluster by its smallest member, so cluster roots
/// sit below all their members. When a forest is being built, each moved
/// root's tree path is reversed so the new root's slot is the empty one.
/// Returns the new labels and the skip label in new terms.
fn normalize_clusters(
    graph: &Graph,
    mut sampled: Vec<usize>,
    skip: Option<usize>,
    forest: Option<&ForestEdges>,
) -> (Vec<usize>, Option<usize>) {
    let n = sampled.len();
    let min_member: Vec<AtomicUsize> = (0..n).map(AtomicUsize::new).collect();
    (0..n).into_par_iter().for_each(|v| {
        min_member[sampled[v]].fetch_min(v, Relaxed);
    });
    let min_member: Vec<usize> = min_member.into_iter().map(AtomicUsize::into_inner).collect();

    if let Some(f) = forest {
        for r in 0..n {
            let m = min_member[r];
            if sampled[r] == r && m != r {
                reroot(graph, f, m);
            }
        }
    }
    sampled.par_iter_mut().for_each(|l| *l = min_member[*l]);
    // An overridden skip label that is not a cluster root maps to itself.
    // It then matches either nothing or one whole cluster; both are sound.
    let skip = skip.map(|l| min_member[l]);
    (sampled, skip)
}

/// Reverses the recorded tree path from `new_root` up to its current root.
/// Each slot holds the edge to the vertex's parent.
fn reroot(graph: &Graph, forest: &ForestEdges, new_root: VertexId) {
    let mut carried = None;
    let mut x = new_root;
    while let Some(e) = forest.get(x) {
        let (a, b) = graph.edge_endpoints(e);
        let parent = if a == x { b } else { a };
        forest.replace(x, carried);
        carried = Some(e);
        x = parent;
    }
    forest.replace(x, carried);
}

/// Labels each vertex with the smallest vertex id in its tree. `labels`
/// must be a quiescent forest (every path reaches a self-labeled root).
pub fn canonicalize(labels: &[usize]) -> Vec<usize> {
    let n = labels.len();
    let roots: Vec<usize> = (0..n).into_par_iter().map(|v| root_of(labels, v)).collect();
    let min_of: Vec<AtomicUsize> = (0..n).map(|_| AtomicUsize::new(usize::MAX)).collect();
    (0..n).into_par_iter().for_each(|v| {
        min_of[roots[v]].fetch_min(v, Relaxed);
    });
    roots.par_iter().map(|&r| min_of[r].load(Relaxed)).collect()
}

/// `(number of components, size of the largest)` of a canonical labeling.
pub fn component_stats(canonical: &[usize]) -> (usize, usize) {
    let mut sizes = vec![0usize; canonical.len()];
    for &l in canonical {
        sizes[l] += 1;
    }
    let count = sizes.iter().filter(|&&s| s > 0).count();
    (count, sizes.into_iter().max().unwrap_or(0))
}

/// Order-independent fingerprint of a canonical labeling.
pub fn label_checksum(canonical: &[usize]) -> u64 {
    canonical
        .par_iter()
        .enumerate()
        .map(|(v, &l)| mix64(mix64(v as u64) ^ l as u64))
        .reduce(|| 0, u64::wrapping_add)
}

/// Reference labeling by sequential BFS from each unvisited vertex in id
/// order.
pub fn bfs_oracle(graph: &Graph) -> Vec<usize> {
    let n = graph.n();
    let mut label = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = s;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &v in graph.neighbors(u) {
                if label[v] == usize::MAX {
                    label[v] = s;
                    queue.push_back(v);
                }
            }
        }
    }
    label
}

/// Checks that `forest` is a spanning forest of `graph`: every edge is a
/// graph edge, replaying the edges closes no cycle, and the forest's
/// components equal the graph's.
pub fn check_spanning_forest(graph: &Graph, forest: &[(VertexId, VertexId)]) -> std::result::Result<(), String> {
    let n = graph.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(u, v) in forest {
        if u >= n || v >= n || !graph.neighbors(u).contains(&v) {
            return Err(format!("({u},{v}) is not an edge of the graph"));
        }
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            return Err(format!("({u},{v}) closes a cycle"));
        }
        parent[ru.max(rv)] = ru.min(rv);
    }
    let from_forest: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
    let expected = bfs_oracle(graph);
    if canonicalize(&from_forest) != expected {
        let components = component_stats(&expected).0;
        return Err(format!(
            "forest has {} edges but the graph needs {} to span its components",
            forest.len(),
            n - components
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::symmetrize;

    fn counter_example() -> Graph {
        symmetrize(&[(0, 2), (1, 3), (2, 5), (3, 4), (4, 5)], 6).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(canonicalize(&[2, 2, 2]), vec![0, 0, 0]);
        assert_eq!(canonicalize(&[0, 1, 2]), vec![0, 1, 2]);
        assert_eq!(canonicalize(&[0, 0, 1, 3]), vec![0, 0, 0, 3]);
        let once = canonicalize(&[3, 3, 1, 3]);
        assert_eq!(canonicalize(&once), once);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(bfs_oracle(&counter_example()), vec![0; 6]);
        assert_eq!(bfs_oracle(&Graph::empty(3)), vec![0, 1, 2]);
        let g = symmetrize(&[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)], 6).unwrap();
        assert_eq!(bfs_oracle(&g), vec![0, 0, 0, 3, 3, 3]);
    }

    #[test]
    fn edgeless_any_spec() {
        for spec in AlgorithmSpec::grid() {
            let r = connectivity(&Graph::empty(4), &spec).unwrap();
            assert_eq!(r.num_components, 4, "{spec}");
            assert_eq!(r.canonical_labels, vec![0, 1, 2, 3]);
        }
    }

    #[test]
    fn counter_example_every_spec() {
        let g = counter_example();
        for spec in AlgorithmSpec::grid() {
            let r = connectivity(&g, &spec).unwrap();
            assert_eq!(r.num_components, 1, "{spec}");
            assert_eq!(r.largest_size, 6);
        }
    }

    #[test]
    fn forest_of_a_tree_is_the_tree() {
        let tree = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (5, 6), (6, 7), (6, 8), (8, 9)];
        let g = symmetrize(&tree, 10).unwrap();
        let mut want: Vec<_> = tree.to_vec();
        want.sort();
        for spec in AlgorithmSpec::grid().into_iter().filter(|s| s.finish.is_root_based()) {
            let (f, _) = spanning_forest(&g, &spec).unwrap();
            let mut got: Vec<_> = f.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
            got.sort();
            assert_eq!(got, want, "{spec}");
        }
    }

    #[test]
    fn forest_rejects_non_root_based() {
        let spec: AlgorithmSpec = "none + stergiou".parse().unwrap();
        assert!(matches!(
            spanning_forest(&Graph::empty(2), &spec),
            Err(Error::Ineligible(_))
        ));
        let spec: AlgorithmSpec = "none + lt_pusa".parse().unwrap();
        assert!(spanning_forest(&Graph::empty(2), &spec).is_err());
    }

    #[test]
    fn empty_forest_on_edgeless() {
        let spec: AlgorithmSpec = "kout + sv".parse().unwrap();
        let (f, r) = spanning_forest(&Graph::empty(5), &spec).unwrap();
        assert!(f.is_empty());
        assert_eq!(r.num_components, 5);
    }

    #[test]
    fn checksum_ignores_nothing_but_order() {
        let a = label_checksum(&[0, 0, 2]);
        assert_ne!(a, label_checksum(&[0, 1, 2]));
        assert_eq!(a, label_checksum(&[0, 0, 2]));
    }

    #[test]
    fn endpoint_writers_keep_sampled_clusters_together() {
        use crate::graph::fixtures::{seeded_er, small_fixtures};
        let mut graphs: Vec<Graph> = seeded_er(20).into_iter().skip(17).map(|f| f.graph).collect();
        graphs.push(small_fixtures()[8].graph.clone());
        for g in &graphs {
            let oracle = bfs_oracle(g);
            for s in [
                "ldd + lt_cusa",
                "ldd + lt_eus",
                "kout + lt_eufa",
                "ldd + label_prop",
                "kout + label_prop",
            ] {
                let spec: AlgorithmSpec = s.parse().unwrap();
                assert_eq!(connectivity(g, &spec).unwrap().canonical_labels, oracle, "{s}");
            }
        }
    }
}
