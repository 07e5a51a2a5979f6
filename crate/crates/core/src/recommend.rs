//! Picks an algorithm from cheap graph statistics.

use crate::driver::{AlgorithmSpec, FinishSpec};
use crate::dsu::UnionFindSpec;
use crate::graph::Graph;
use crate::sampling::{SamplingScheme, SamplingSpec};

/// `m / n` below which sampling costs more than it saves.
pub const SPARSE_RATIO: f64 = 3.0;

/// Diameter at or below which the graph counts as low-diameter.
pub fn low_diameter_bound(n: usize) -> usize {
    let log = usize::BITS - n.max(1).next_power_of_two().leading_zeros() - 1;
    16.max(2 * log as usize)
}

/// Recommends a spec from `n`, `m` and an optional diameter estimate.
/// `m` counts directed edges, so each undirected edge twice.
pub fn recommend_for(n: usize, m: usize, diameter: Option<usize>) -> AlgorithmSpec {
    let finish = FinishSpec::UnionFind(UnionFindSpec::rem_cas_default());
    if n == 0 || (m as f64) < SPARSE_RATIO * n as f64 {
        return AlgorithmSpec::unsampled(finish);
    }
    let scheme = match diameter {
        Some(d) if d <= low_diameter_bound(n) => SamplingScheme::Ldd,
        _ => SamplingScheme::KOut,
    };
    AlgorithmSpec::new(SamplingSpec::new(scheme), finish)
}

pub fn recommend(graph: &Graph) -> AlgorithmSpec {
    let diameter = if (graph.m() as f64) < SPARSE_RATIO * graph.n() as f64 {
        None
    } else {
        graph.estimate_diameter()
    };
    recommend_for(graph.n(), graph.m(), diameter)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound() {
        assert_eq!(low_diameter_bound(1), 16);
        assert_eq!(low_diameter_bound(1 << 10), 20);
        assert_eq!(low_diameter_bound(1000), 20);
    }

    #[test]
    fn choices() {
        let rem = "uf_rem_cas;split_atomic_one;find_naive";
        assert_eq!(recommend_for(100, 200, Some(3)).to_string(), format!("none + {rem}"));
        assert_eq!(recommend_for(100, 1000, None).to_string(), format!("kout + {rem}"));
        assert_eq!(recommend_for(100, 1000, Some(5)).to_string(), format!("ldd + {rem}"));
        assert_eq!(recommend_for(100, 1000, Some(500)).to_string(), format!("kout + {rem}"));
    }
}
