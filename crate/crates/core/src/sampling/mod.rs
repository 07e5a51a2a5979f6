//! Sampling phases. Each produces a height-one partial labeling: every
//! vertex carries its own id or the id of a self-labeled cluster root, and
//! equal labels imply connectivity.

mod bfs;
mod kout;
mod ldd;

pub use bfs::bfs_sample;
pub use kout::kout_sample;
pub use ldd::ldd_sample;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::dsu::{ForestEdges, ParentArray};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::hash_below;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SamplingScheme {
    None,
    KOut,
    Bfs,
    Ldd,
}

impl SamplingScheme {
    pub const ALL: [SamplingScheme; 4] = [
        SamplingScheme::None,
        SamplingScheme::KOut,
        SamplingScheme::Bfs,
        SamplingScheme::Ldd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SamplingScheme::None => "none",
            SamplingScheme::KOut => "kout",
            SamplingScheme::Bfs => "bfs",
            SamplingScheme::Ldd => "ldd",
        }
    }
}

impl FromStr for SamplingScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::UnknownToken(s.to_string()))
    }
}

/// How k-out sampling picks the edges of each vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KOutVariant {
    /// The first `k` edges.
    Afforest,
    /// `k` edges uniformly at random.
    Pure,
    /// The first edge plus `k - 1` random ones.
    Hybrid,
    /// The edge to the highest-degree neighbor plus `k - 1` random ones.
    MaxDeg,
}

impl KOutVariant {
    pub const ALL: [KOutVariant; 4] = [
        KOutVariant::Afforest,
        KOutVariant::Pure,
        KOutVariant::Hybrid,
        KOutVariant::MaxDeg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            KOutVariant::Afforest => "afforest",
            KOutVariant::Pure => "pure",
            KOutVariant::Hybrid => "hybrid",
            KOutVariant::MaxDeg => "maxdeg",
        }
    }
}

impl FromStr for KOutVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::UnknownToken(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SamplingSpec {
    pub scheme: SamplingScheme,
    pub kout_k: usize,
    pub kout_variant: KOutVariant,
    /// Maximum BFS attempts.
    pub bfs_rounds: usize,
    /// A BFS attempt succeeds when it reaches more than this fraction of
    /// the vertices.
    pub bfs_threshold: f64,
    pub ldd_beta: f64,
    /// Assign the drawn shifts to vertices through a seeded permutation
    /// instead of drawing one per vertex id.
    pub ldd_permute: bool,
    pub seed: u64,
}

impl Default for SamplingSpec {
    fn default() -> Self {
        SamplingSpec {
            scheme: SamplingScheme::None,
            kout_k: 2,
            kout_variant: KOutVariant::Hybrid,
            bfs_rounds: 3,
            bfs_threshold: 0.10,
            ldd_beta: 0.2,
            ldd_permute: false,
            seed: 0,
        }
    }
}

impl SamplingSpec {
    pub fn new(scheme: SamplingScheme) -> Self {
        SamplingSpec {
            scheme,
            ..Default::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.kout_k < 1 {
            return Err(Error::InvalidParameter("kout k must be at least 1".into()));
        }
        if !(self.ldd_beta > 0.0 && self.ldd_beta < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "ldd beta {} not in (0, 1)",
                self.ldd_beta
            )));
        }
        if !(0.0..=1.0).contains(&self.bfs_threshold) {
            return Err(Error::InvalidParameter(format!(
                "bfs threshold {} not in [0, 1]",
                self.bfs_threshold
            )));
        }
        Ok(())
    }

    /// Runs the configured sampler from identity labels.
    pub fn sample(&self, graph: &Graph, forest: Option<&ForestEdges>) -> Result<SampleResult> {
        self.validate()?;
        let start = Instant::now();
        let labels = ParentArray::identity(graph.n());
        let attempts = match self.scheme {
            SamplingScheme::None => 0,
            SamplingScheme::KOut => {
                kout_sample(graph, self, &labels, forest)?;
                1
            }
            SamplingScheme::Bfs => bfs_sample(graph, self, &labels, forest)?,
            SamplingScheme::Ldd => {
                ldd_sample(graph, self, &labels, forest)?;
                1
            }
        };
        let elapsed = start.elapsed();
        let identify_start = Instant::now();
        let snapshot = labels.to_vec();
        let frequent_label = identify_frequent(&snapshot, DEFAULT_FREQUENT_SAMPLES, self.seed);
        let identify_elapsed = identify_start.elapsed();
        let coverage = match frequent_label {
            Some(l) => snapshot.iter().filter(|&&x| x == l).count() as f64 / graph.n() as f64,
            None => 0.0,
        };
        Ok(SampleResult {
            labels,
            stats: SampleStats {
                frequent_label,
                coverage,
                attempts,
                elapsed,
                identify_elapsed,
            },
        })
    }
}

impl fmt::Display for SamplingSpec {
    /// The scheme name, followed by bracketed parameters that differ from
    /// the defaults, e.g. `kout[k=3,variant=pure]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = SamplingSpec::default();
        let mut params = Vec::new();
        match self.scheme {
            SamplingScheme::None => {}
            SamplingScheme::KOut => {
                if self.kout_k != d.kout_k {
                    params.push(format!("k={}", self.kout_k));
                }
                if self.kout_variant != d.kout_variant {
                    params.push(format!("variant={}", self.kout_variant.name()));
                }
            }
            SamplingScheme::Bfs => {
                if self.bfs_rounds != d.bfs_rounds {
                    params.push(format!("rounds={}", self.bfs_rounds));
                }
                if self.bfs_threshold != d.bfs_threshold {
                    params.push(format!("threshold={}", self.bfs_threshold));
                }
            }
            SamplingScheme::Ldd => {
                if self.ldd_beta != d.ldd_beta {
                    params.push(format!("beta={}", self.ldd_beta));
                }
                if self.ldd_permute {
                    params.push("permute=true".into());
                }
            }
        }
        if self.seed != 0 {
            params.push(format!("seed={}", self.seed));
        }
        f.write_str(self.scheme.name())?;
        if !params.is_empty() {
            write!(f, "[{}]", params.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for SamplingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, params) = match s.split_once('[') {
            Some((name, rest)) => {
                let inner = rest
                    .strip_suffix(']')
                    .ok_or_else(|| Error::InvalidParameter(format!("unterminated parameters in `{s}`")))?;
                (name, Some(inner))
            }
            None => (s, None),
        };
        let mut spec = SamplingSpec::new(name.parse()?);
        let bad = |kv: &str| Error::InvalidParameter(format!("bad sampling parameter `{kv}`"));
        for kv in params
            .into_iter()
            .flat_map(|p| p.split(','))
            .filter(|kv| !kv.is_empty())
        {
            let (k, v) = kv.split_once('=').ok_or_else(|| bad(kv))?;
            match (spec.scheme, k) {
                (_, "seed") => spec.seed = v.parse().map_err(|_| bad(kv))?,
                (SamplingScheme::KOut, "k") => spec.kout_k = v.parse().map_err(|_| bad(kv))?,
                (SamplingScheme::KOut, "variant") => spec.kout_variant = v.parse()?,
                (SamplingScheme::Bfs, "rounds") => spec.bfs_rounds = v.parse().map_err(|_| bad(kv))?,
                (SamplingScheme::Bfs, "threshold") => spec.bfs_threshold = v.parse().map_err(|_| bad(kv))?,
                (SamplingScheme::Ldd, "beta") => spec.ldd_beta = v.parse().map_err(|_| bad(kv))?,
                (SamplingScheme::Ldd, "permute") => spec.ldd_permute = v.parse().map_err(|_| bad(kv))?,
                _ => return Err(bad(kv)),
            }
        }
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Clone, Debug)]
pub struct SampleStats {
    pub frequent_label: Option<usize>,
    /// Fraction of vertices carrying `frequent_label`.
    pub coverage: f64,
    /// Sampler attempts made (BFS may retry; zero for no sampling).
    pub attempts: usize,
    pub elapsed: Duration,
    pub identify_elapsed: Duration,
}

pub struct SampleResult {
    pub labels: ParentArray,
    pub stats: SampleStats,
}

pub const DEFAULT_FREQUENT_SAMPLES: usize = 1024;

/// Most common label among `samples` randomly chosen slots, or the exact
/// mode when there are at most `samples` slots. Ties go to the smaller
/// label.
pub fn identify_frequent(labels: &[usize], samples: usize, seed: u64) -> Option<usize> {
    let n = labels.len();
    if n == 0 {
        return None;
    }
    let mut picked: Vec<usize> = if n <= samples {
        labels.to_vec()
    } else {
        (0..samples as u64)
            .map(|i| labels[hash_below(seed ^ 0x6672_6571, i, n)])
            .collect()
    };
    picked.sort_unstable();
    let mut best = (0usize, picked[0]);
    let mut i = 0;
    while i < picked.len() {
        let j = picked[i..].partition_point(|&x| x == picked[i]) + i;
        if j - i > best.0 {
            best = (j - i, picked[i]);
        }
        i = j;
    }
    Some(best.1)
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frequent_examples() {
        assert_eq!(identify_frequent(&[7; 20], 1024, 0), Some(7));
        assert_eq!(identify_frequent(&[0, 0, 0, 1], 1024, 0), Some(0));
        assert_eq!(identify_frequent(&[], 1024, 0), None);
        assert_eq!(identify_frequent(&[3, 1, 3, 1], 1024, 0), Some(1));
    }

    #[test]
    fn frequent_sampled_mode() {
        let mut labels = vec![5usize; 100_000];
        for (i, l) in labels.iter_mut().enumerate().take(10_000) {
            *l = i;
        }
        assert_eq!(identify_frequent(&labels, 1024, 9), Some(5));
    }

    #[test]
    fn spec_strings_round_trip() {
        let mut s = SamplingSpec::new(SamplingScheme::KOut);
        assert_eq!(s.to_string(), "kout");
        s.kout_k = 3;
        s.kout_variant = KOutVariant::Pure;
        s.seed = 4;
        assert_eq!(s.to_string(), "kout[k=3,variant=pure,seed=4]");
        assert_eq!(s.to_string().parse::<SamplingSpec>().unwrap(), s);
        let mut l = SamplingSpec::new(SamplingScheme::Ldd);
        l.ldd_beta = 0.05;
        l.ldd_permute = true;
        assert_eq!(l.to_string().parse::<SamplingSpec>().unwrap(), l);
        assert!("bfs[k=2]".parse::<SamplingSpec>().is_err());
        assert!("ldd[beta=1.5]".parse::<SamplingSpec>().is_err());
        assert!("fancy".parse::<SamplingSpec>().is_err());
    }
}
