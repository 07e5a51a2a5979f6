//! Approximate minimum spanning forest by bucketing weights into powers of
//! `1 + epsilon` and building a spanning forest bucket by bucket.

use std::fmt;
use std::str::FromStr;

use petgraph::unionfind::UnionFind as SequentialUnionFind;
use rayon::prelude::*;

use crate::dsu::{ForestEdges, UnionFind, UnionFindSpec};
use crate::error::{Error, Result};
use crate::graph::{EdgeList, VertexId};
use crate::sampling::{identify_frequent, DEFAULT_FREQUENT_SAMPLES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AmsfVariant {
    /// Sort edges by bucket once, then walk the buckets in order.
    Coo,
    /// Rescan the full edge list for every bucket.
    Nf,
    /// Like `Nf`, but each bucket skips sources in the currently largest
    /// component.
    NfS,
}

impl AmsfVariant {
    pub const ALL: [AmsfVariant; 3] = [AmsfVariant::Coo, AmsfVariant::Nf, AmsfVariant::NfS];

    pub fn name(self) -> &'static str {
        match self {
            AmsfVariant::Coo => "coo",
            AmsfVariant::Nf => "nf",
            AmsfVariant::NfS => "nf_s",
        }
    }
}

impl fmt::Display for AmsfVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AmsfVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::UnknownToken(s.to_string()))
    }
}

#[derive(Clone, Debug)]
pub struct AmsfResult {
    /// Indices into the input edge list, ascending.
    pub forest: Vec<usize>,
    pub weight: f64,
    /// Bucket index of each forest edge, in the order of `forest`.
    pub buckets: Vec<usize>,
}

impl AmsfResult {
    /// Number of forest edges per bucket index.
    pub fn bucket_profile(&self) -> Vec<usize> {
        let len = self.buckets.iter().max().map_or(0, |&b| b + 1);
        let mut counts = vec![0; len];
        for &b in &self.buckets {
            counts[b] += 1;
        }
        counts
    }
}

/// Index `i` with `w` in `[w_min (1+eps)^i, w_min (1+eps)^(i+1))`.
pub fn bucket_of(w: f64, w_min: f64, epsilon: f64) -> usize {
    let base = 1.0 + epsilon;
    let lower = |i: i64| w_min * base.powi(i as i32);
    let mut i = ((w / w_min).ln() / base.ln()).floor().max(0.0) as i64;
    // Float error can put boundary weights one bucket off either way.
    while i > 0 && lower(i) > w {
        i -= 1;
    }
    while lower(i + 1) <= w {
        i += 1;
    }
    i as usize
}

fn validate(edges: &EdgeList, epsilon: f64) -> Result<&[f64]> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let weights = edges
        .weights
        .as_deref()
        .ok_or_else(|| Error::InvalidParameter("AMSF needs a weighted edge list".into()))?;
    if let Some(w) = weights.iter().find(|&&w| !(w > 0.0 && w.is_finite())) {
        return Err(Error::InvalidParameter(format!(
            "edge weights must be positive, got {w}"
        )));
    }
    edges.check_bounds()?;
    Ok(weights)
}

/// Approximate minimum spanning forest: total weight at most `1 + epsilon`
/// times the optimum.
pub fn amsf(edges: &EdgeList, epsilon: f64, variant: AmsfVariant, seed: u64) -> Result<AmsfResult> {
    let weights = validate(edges, epsilon)?;
    let n = edges.n;
    let w_min = weights.iter().copied().fold(f64::INFINITY, f64::min);
    let bucket: Vec<usize> = weights.par_iter().map(|&w| bucket_of(w, w_min, epsilon)).collect();

    // Both directions of every non-loop edge, as (source, target, input index).
    let directed: Vec<(VertexId, VertexId, usize)> = edges
        .pairs
        .iter()
        .enumerate()
        .filter(|(_, &(u, v))| u != v)
        .flat_map(|(i, &(u, v))| [(u, v, i), (v, u, i)])
        .collect();

    let mut present: Vec<usize> = directed.iter().map(|&(_, _, i)| bucket[i]).collect();
    present.sort_unstable();
    present.dedup();

    let uf = UnionFind::new(UnionFindSpec::rem_cas_default(), n, seed);
    let forest = ForestEdges::new(n);
    let apply = |batch: &mut dyn Iterator<Item = &(VertexId, VertexId, usize)>| {
        // Drop edges already inside one tree before the concurrent pass.
        let live: Vec<_> = batch.filter(|&&(u, v, _)| uf.find(u) != uf.find(v)).copied().collect();
        live.par_iter().for_each(|&(u, v, i)| {
            uf.unite_recording(u, v, &forest, i);
        });
    };

    match variant {
        AmsfVariant::Coo => {
            let mut sorted = directed.clone();
            sorted.par_sort_by_key(|&(_, _, i)| bucket[i]);
            let mut start = 0;
            while start < sorted.len() {
                let b = bucket[sorted[start].2];
                let end = start + sorted[start..].partition_point(|&(_, _, i)| bucket[i] == b);
                apply(&mut sorted[start..end].iter());
                start = end;
            }
        }
        AmsfVariant::Nf => {
            for &b in &present {
                apply(&mut directed.iter().filter(|&&(_, _, i)| bucket[i] == b));
            }
        }
        AmsfVariant::NfS => {
            // Private adjacency: directed edges grouped by source.
            let mut by_source = directed.clone();
            by_source.par_sort_unstable_by_key(|&(u, _, _)| u);
            let mut offsets = vec![0usize; n + 1];
            for &(u, _, _) in &by_source {
                offsets[u + 1] += 1;
            }
            for v in 0..n {
                offsets[v + 1] += offsets[v];
            }
            for (round, &b) in present.iter().enumerate() {
                let roots: Vec<usize> = (0..n).into_par_iter().map(|v| uf.find(v)).collect();
                let skip = identify_frequent(&roots, DEFAULT_FREQUENT_SAMPLES, seed ^ round as u64);
                let batch: Vec<(VertexId, VertexId, usize)> = (0..n)
                    .into_par_iter()
                    .filter(|&u| Some(roots[u]) != skip)
                    .flat_map_iter(|u| {
                        by_source[offsets[u]..offsets[u + 1]]
                            .iter()
                            .filter(|&&(_, _, i)| bucket[i] == b)
                            .copied()
                    })
                    .collect();
                apply(&mut batch.iter());
            }
        }
    }

    let mut chosen = forest.edge_ids();
    chosen.sort_unstable();
    let weight = chosen.iter().map(|&i| weights[i]).sum();
    let buckets = chosen.iter().map(|&i| bucket[i]).collect();
    Ok(AmsfResult {
        forest: chosen,
        weight,
        buckets,
    })
}

/// Exact minimum spanning forest weight by Kruskal's algorithm.
pub fn kruskal_oracle(edges: &EdgeList) -> Result<f64> {
    let weights = edges
        .weights
        .as_deref()
        .ok_or_else(|| Error::InvalidParameter("Kruskal needs a weighted edge list".into()))?;
    edges.check_bounds()?;
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by(|&a, &b| weights[a].total_cmp(&weights[b]));
    let mut uf = SequentialUnionFind::<usize>::new(edges.n);
    let mut total = 0.0;
    for i in order {
        let (u, v) = edges.pairs[i];
        if uf.union(u, v) {
            total += weights[i];
        }
    }
    Ok(total)
}
