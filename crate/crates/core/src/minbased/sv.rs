use std::sync::atomic::{AtomicBool, Ordering::Relaxed};

use rayon::prelude::*;

use super::{shortcut, MinBasedSpec, RoundOptions, ShortcutKind, WorkEdges};
use crate::dsu::ParentArray;
use crate::error::Result;

/// Shiloach-Vishkin: every edge between two trees tries to hook the larger
/// root under the smaller label, then trees are flattened to stars.
///
/// Expects a forest of stars on entry (identity or a height-one sampled
/// labeling).
pub fn shiloach_vishkin(edges: &WorkEdges, labels: &ParentArray, opts: &RoundOptions) -> Result<usize> {
    MinBasedSpec::ShiloachVishkin.check_forest(opts)?;
    let mut rounds = 0;
    loop {
        rounds += 1;
        let prev = labels.to_vec();
        // Hooks are decided from the round-start snapshot so that each root
        // moves at most once per round and the recorded forest is acyclic.
        let proposal = |&(u, v): &(usize, usize)| {
            let (pu, pv) = (prev[u], prev[v]);
            let (lo, hi) = if pu < pv { (pu, pv) } else { (pv, pu) };
            (lo != hi && prev[hi] == hi).then_some((hi, lo))
        };
        let changed = AtomicBool::new(false);
        edges.pairs.par_iter().for_each(|e| {
            if let Some((hi, lo)) = proposal(e) {
                if labels.write_min(hi, lo) {
                    changed.store(true, Relaxed);
                }
            }
        });
        if let Some(forest) = opts.forest {
            edges.pairs.par_iter().zip(edges.ids.par_iter()).for_each(|(e, &id)| {
                if let Some((hi, lo)) = proposal(e) {
                    if labels.get(hi) == lo {
                        forest.record(hi, id);
                    }
                }
            });
        }
        shortcut(labels, ShortcutKind::Full);
        opts.end_round(labels);
        if !changed.into_inner() {
            return Ok(rounds);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::test_util::*;
    use super::*;

    #[test]
    fn four_cycle() {
        let (labels, rounds) = run_identity(MinBasedSpec::ShiloachVishkin, 4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(labels, vec![0; 4]);
        assert!(rounds <= 3, "{rounds}");
    }

    #[test]
    fn edgeless_single_round() {
        let (labels, rounds) = run_identity(MinBasedSpec::ShiloachVishkin, 5, &[]);
        assert_eq!(labels, vec![0, 1, 2, 3, 4]);
        assert_eq!(rounds, 1);
    }

    #[test]
    fn counter_example() {
        let (labels, _) = run_identity(
            MinBasedSpec::ShiloachVishkin,
            6,
            &super::super::test_util::counter_example(),
        );
        assert_eq!(labels, vec![0; 6]);
    }
}
