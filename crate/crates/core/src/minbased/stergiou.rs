use std::sync::atomic::{AtomicBool, Ordering::Relaxed};

use rayon::prelude::*;

use super::{shortcut_once, MinBasedSpec, RoundOptions, WorkEdges};
use crate::dsu::ParentArray;
use crate::error::Result;

/// Two-array parent-connect: each round reads a snapshot of the previous
/// parents, min-writes into the current array, then shortcuts once.
pub fn stergiou(edges: &WorkEdges, labels: &ParentArray, opts: &RoundOptions) -> Result<usize> {
    MinBasedSpec::Stergiou.check_forest(opts)?;
    let mut rounds = 0;
    loop {
        rounds += 1;
        let prev = labels.to_vec();
        let changed = AtomicBool::new(false);
        edges.pairs.par_iter().for_each(|&(a, b)| {
            let (pa, pb) = (prev[a], prev[b]);
            let (hi, lo) = if pa > pb { (pa, pb) } else { (pb, pa) };
            if hi != lo && labels.write_min(hi, lo) {
                changed.store(true, Relaxed);
            }
        });
        if shortcut_once(labels) {
            changed.store(true, Relaxed);
        }
        opts.end_round(labels);
        if !changed.into_inner() {
            return Ok(rounds);
        }
    }
}
