use std::fmt;
use std::str::FromStr;

use crate::dsu::UnionFindSpec;
use crate::error::{Error, Result};
use crate::minbased::MinBasedSpec;
use crate::sampling::{SamplingScheme, SamplingSpec};

/// The finish phase: a union-find configuration or a min-based method.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FinishSpec {
    UnionFind(UnionFindSpec),
    MinBased(MinBasedSpec),
}

impl FinishSpec {
    /// Every valid finish: the union-find matrix followed by the min-based
    /// methods.
    pub fn all() -> Vec<FinishSpec> {
        let mut v: Vec<_> = UnionFindSpec::all_valid()
            .into_iter()
            .map(FinishSpec::UnionFind)
            .collect();
        v.extend(MinBasedSpec::all().into_iter().map(FinishSpec::MinBased));
        v
    }

    /// Methods whose structural writes always relink a tree root; only
    /// these can produce a spanning forest.
    pub fn is_root_based(&self) -> bool {
        match self {
            FinishSpec::UnionFind(_) => true,
            FinishSpec::MinBased(m) => m.is_root_based(),
        }
    }
}

impl fmt::Display for FinishSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FinishSpec::UnionFind(s) => s.fmt(f),
            FinishSpec::MinBased(s) => s.fmt(f),
        }
    }
}

impl FromStr for FinishSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with("uf_") {
            s.parse().map(FinishSpec::UnionFind)
        } else {
            s.parse().map(FinishSpec::MinBased)
        }
    }
}

/// Sampling choice plus finish method. Written as `<sampling> + <finish>`,
/// e.g. `kout + uf_rem_cas;split_atomic_one;find_naive`; a bare finish
/// means no sampling.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlgorithmSpec {
    pub sampling: SamplingSpec,
    pub finish: FinishSpec,
}

impl AlgorithmSpec {
    pub fn new(sampling: SamplingSpec, finish: FinishSpec) -> Self {
        AlgorithmSpec { sampling, finish }
    }

    pub fn unsampled(finish: FinishSpec) -> Self {
        AlgorithmSpec::new(SamplingSpec::default(), finish)
    }

    /// Every sampling scheme (default parameters) crossed with every finish.
    pub fn grid() -> Vec<AlgorithmSpec> {
        let finishes = FinishSpec::all();
        SamplingScheme::ALL
            .into_iter()
            .flat_map(|scheme| {
                finishes
                    .iter()
                    .map(move |&finish| AlgorithmSpec::new(SamplingSpec::new(scheme), finish))
            })
            .collect()
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.sampling.seed = seed;
        self
    }
}

impl fmt::Display for AlgorithmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}", self.sampling, self.finish)
    }
}

impl FromStr for AlgorithmSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('+') {
            Some((sampling, finish)) => Ok(AlgorithmSpec::new(sampling.parse()?, finish.parse()?)),
            None => Ok(AlgorithmSpec::unsampled(s.parse()?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_size() {
        assert_eq!(FinishSpec::all().len(), 36 + 19);
        assert_eq!(AlgorithmSpec::grid().len(), 4 * 55);
    }

    #[test]
    fn round_trip_grid() {
        for spec in AlgorithmSpec::grid() {
            let s = spec.to_string();
            assert_eq!(s.parse::<AlgorithmSpec>().unwrap(), spec, "{s}");
        }
        let custom: AlgorithmSpec = "ldd[beta=0.1,seed=3] + lt_prf".parse().unwrap();
        assert_eq!(custom.to_string(), "ldd[beta=0.1,seed=3] + lt_prf");
    }

    #[test]
    fn bare_finish_means_no_sampling() {
        let spec: AlgorithmSpec = "sv".parse().unwrap();
        assert_eq!(spec.sampling.scheme, SamplingScheme::None);
        assert_eq!(spec.to_string(), "none + sv");
    }

    #[test]
    fn rejection_propagates() {
        let err = "kout + uf_rem_lock;splice_atomic;find_compress"
            .parse::<AlgorithmSpec>()
            .unwrap_err();
        assert!(matches!(err, Error::RejectedSpec(_)));
        assert!(matches!(
            "kout + nope".parse::<AlgorithmSpec>(),
            Err(Error::UnknownToken(_))
        ));
    }
}
