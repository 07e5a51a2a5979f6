use std::sync::atomic::{AtomicBool, Ordering::Relaxed};

use rayon::prelude::*;

use super::{shortcut, ConnectKind, LiuTarjanSpec, MinBasedSpec, RoundOptions, WorkEdges};
use crate::dsu::ParentArray;
use crate::error::Result;

/// Candidate `(slot, value)` writes for edge `(a, b)` against the round-start
/// labels `prev`. At most four.
#[inline]
fn proposals(kind: ConnectKind, a: usize, b: usize, prev: &[usize]) -> ([(usize, usize); 4], usize) {
    let (pa, pb) = (prev[a], prev[b]);
    match kind {
        ConnectKind::Connect => ([(a, b), (b, a), (0, 0), (0, 0)], 2),
        ConnectKind::ParentConnect => ([(pa, pb), (pb, pa), (0, 0), (0, 0)], 2),
        ConnectKind::ExtendedConnect => ([(pa, pb), (pb, pa), (a, pb), (b, pa)], 4),
    }
}

/// Runs the Liu-Tarjan variant `spec` to a fixed point.
pub fn liu_tarjan(spec: LiuTarjanSpec, edges: &WorkEdges, labels: &ParentArray, opts: &RoundOptions) -> Result<usize> {
    MinBasedSpec::LiuTarjan(spec).check_forest(opts)?;
    let mut live: Vec<(usize, usize)> = edges.pairs.clone();
    let mut ids: Vec<usize> = edges.ids.clone();
    let mut rounds = 0;
    loop {
        rounds += 1;
        let prev = labels.to_vec();
        let eligible = |s: usize| !spec.root_up || prev[s] == s;
        let changed = AtomicBool::new(false);

        live.par_iter().for_each(|&(a, b)| {
            let (props, k) = proposals(spec.connect, a, b, &prev);
            for &(s, val) in &props[..k] {
                if eligible(s) && labels.write_min(s, val) {
                    changed.store(true, Relaxed);
                }
            }
        });

        if let Some(forest) = opts.forest {
            // A root that moved took the value of exactly one winning
            // proposal; the first edge that made it records itself.
            live.par_iter().zip(ids.par_iter()).for_each(|(&(a, b), &id)| {
                let (props, k) = proposals(spec.connect, a, b, &prev);
                for &(s, val) in &props[..k] {
                    if eligible(s) && val < prev[s] && labels.get(s) == val {
                        forest.record(s, id);
                    }
                }
            });
        }

        if shortcut(labels, spec.shortcut) {
            changed.store(true, Relaxed);
        }

        if spec.alter {
            let rewritten: Vec<((usize, usize), usize)> = live
                .par_iter()
                .zip(ids.par_iter())
                .filter_map(|(&(a, b), &id)| {
                    let (la, lb) = (labels.get(a), labels.get(b));
                    if (la, lb) != (a, b) {
                        changed.store(true, Relaxed);
                    }
                    (la != lb).then_some(((la, lb), id))
                })
                .collect();
            (live, ids) = rewritten.into_iter().unzip();
        }

        opts.end_round(labels);
        if !changed.into_inner() {
            return Ok(rounds);
        }
    }
}
