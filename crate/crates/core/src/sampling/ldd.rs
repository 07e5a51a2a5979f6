use std::sync::atomic::{AtomicUsize, Ordering::Relaxed};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::SamplingSpec;
use crate::dsu::{ForestEdges, ParentArray};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::rng::mix64;

const UNSEEN: usize = usize::MAX;

/// Exponential(beta) shift for slot `i`, by inverse transform.
fn shift(seed: u64, i: u64, beta: f64) -> f64 {
    let u = (mix64(seed ^ mix64(i ^ 0x006c_6464)) >> 11) as f64 / (1u64 << 53) as f64;
    -(1.0 - u).ln() / beta
}

/// Round at which each vertex would start its own cluster.
fn start_rounds(n: usize, spec: &SamplingSpec) -> Vec<usize> {
    let mut delta: Vec<f64> = (0..n as u64)
        .into_par_iter()
        .map(|i| shift(spec.seed, i, spec.ldd_beta))
        .collect();
    if spec.ldd_permute {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(spec.seed));
        let mut sorted = delta.clone();
        sorted.sort_unstable_by(|a, b| b.total_cmp(a));
        for (rank, &v) in order.iter().enumerate() {
            delta[v] = sorted[rank];
        }
    }
    let max = delta.iter().copied().fold(0.0, f64::max);
    delta.iter().map(|&d| (max - d).floor() as usize).collect()
}

/// One round of Miller-Peng-Xu low-diameter decomposition. Each vertex draws
/// an exponential shift; an uncovered vertex starts a cluster once the round
/// counter reaches `floor(max_shift - shift)`, and clusters grow one hop per
/// round. A vertex reached by several clusters in the same round joins the
/// one with the smallest center.
pub fn ldd_sample(
    graph: &Graph,
    spec: &SamplingSpec,
    labels: &ParentArray,
    forest: Option<&ForestEdges>,
) -> Result<()> {
    if !(spec.ldd_beta > 0.0 && spec.ldd_beta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "ldd beta {} not in (0, 1)",
            spec.ldd_beta
        )));
    }
    let n = graph.n();
    if n == 0 {
        return Ok(());
    }
    let start = start_rounds(n, spec);
    let last = *start.iter().max().unwrap();
    let mut by_round: Vec<Vec<VertexId>> = vec![Vec::new(); last + 1];
    for (v, &r) in start.iter().enumerate() {
        by_round[r].push(v);
    }

    let center: Vec<AtomicUsize> = (0..n).map(|_| AtomicUsize::new(UNSEEN)).collect();
    let parent_edge: Vec<AtomicUsize> = (0..n).map(|_| AtomicUsize::new(UNSEEN)).collect();
    let mut covered = vec![false; n];
    let mut num_covered = 0;
    let mut frontier: Vec<VertexId> = Vec::new();
    let mut round = 0;
    while num_covered < n {
        let seen = &covered;
        let mut next: Vec<VertexId> = frontier
            .par_iter()
            .flat_map_iter(|&u| {
                let c = center[u].load(Relaxed);
                let center = &center;
                graph.neighbors(u).iter().filter(|&&v| !seen[v]).map(move |&v| {
                    center[v].fetch_min(c, Relaxed);
                    v
                })
            })
            .collect();
        next.par_sort_unstable();
        next.dedup();
        if forest.is_some() {
            frontier.par_iter().for_each(|&u| {
                let c = center[u].load(Relaxed);
                for e in graph.edge_range(u) {
                    let v = graph.edge_target(e);
                    if !seen[v] && center[v].load(Relaxed) == c {
                        parent_edge[v].fetch_min(e, Relaxed);
                    }
                }
            });
        }
        for &v in &next {
            covered[v] = true;
        }
        num_covered += next.len();
        if let Some(starting) = by_round.get(round) {
            for &v in starting {
                if !covered[v] {
                    covered[v] = true;
                    center[v].store(v, Relaxed);
                    num_covered += 1;
                    next.push(v);
                }
            }
        }
        frontier = next;
        round += 1;
    }

    (0..n).into_par_iter().for_each(|v| {
        labels.set(v, center[v].load(Relaxed));
        if let Some(f) = forest {
            let e = parent_edge[v].load(Relaxed);
            if e != UNSEEN {
                f.record(v, e);
            }
        }
    });
    Ok(())
}
