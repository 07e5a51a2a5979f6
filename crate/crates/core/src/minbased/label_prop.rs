use std::sync::atomic::{AtomicBool, Ordering::Relaxed};

use rayon::prelude::*;

use super::{MinBasedSpec, RoundOptions, WorkEdges};
use crate::dsu::ParentArray;
use crate::error::Result;

/// Frontier-based label propagation. Every active vertex pushes its label to
/// its work-edge neighbors and pulls theirs, each with a min-write; vertices
/// whose label dropped form the next frontier.
///
/// Only sources of work edges are ever active, so a vertex with no outgoing
/// work edges keeps its label and still passes it on through pulls.
pub fn label_propagation(edges: &WorkEdges, labels: &ParentArray, opts: &RoundOptions) -> Result<usize> {
    MinBasedSpec::LabelPropagation.check_forest(opts)?;
    let n = labels.len();
    let mut offsets = vec![0usize; n + 1];
    for &(u, _) in &edges.pairs {
        offsets[u + 1] += 1;
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    let mut targets = vec![0usize; edges.len()];
    let mut fill = offsets.clone();
    for &(u, v) in &edges.pairs {
        targets[fill[u]] = v;
        fill[u] += 1;
    }

    let mut frontier: Vec<usize> = (0..n).filter(|&u| offsets[u + 1] > offsets[u]).collect();
    let mut rounds = 0;
    loop {
        rounds += 1;
        let next: Vec<AtomicBool> = (0..n).map(|_| AtomicBool::new(false)).collect();
        frontier.par_iter().for_each(|&u| {
            for &v in &targets[offsets[u]..offsets[u + 1]] {
                let (lu, lv) = (labels.get(u), labels.get(v));
                if lu < lv {
                    if labels.write_min(v, lu) {
                        next[v].store(true, Relaxed);
                    }
                } else if lv < lu && labels.write_min(u, lv) {
                    next[u].store(true, Relaxed);
                }
            }
        });
        opts.end_round(labels);
        frontier = (0..n)
            .into_par_iter()
            .filter(|&v| next[v].load(Relaxed) && offsets[v + 1] > offsets[v])
            .collect();
        let any = next.iter().any(|b| b.load(Relaxed));
        if !any {
            return Ok(rounds);
        }
    }
}
