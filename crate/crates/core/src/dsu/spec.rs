use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnionKernel {
    Async,
    Hooks,
    Early,
    RemLock,
    RemCas,
    Jtb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FindOption {
    Naive,
    AtomicSplit,
    AtomicHalve,
    Compress,
    TwoTrySplit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpliceOption {
    SplitAtomicOne,
    HalveAtomicOne,
    SpliceAtomic,
}

impl UnionKernel {
    pub const ALL: [UnionKernel; 6] = [
        UnionKernel::Async,
        UnionKernel::Hooks,
        UnionKernel::Early,
        UnionKernel::RemLock,
        UnionKernel::RemCas,
        UnionKernel::Jtb,
    ];

    pub fn name(self) -> &'static str {
        match self {
            UnionKernel::Async => "uf_async",
            UnionKernel::Hooks => "uf_hooks",
            UnionKernel::Early => "uf_early",
            UnionKernel::RemLock => "uf_rem_lock",
            UnionKernel::RemCas => "uf_rem_cas",
            UnionKernel::Jtb => "uf_jtb",
        }
    }

    pub fn is_rem(self) -> bool {
        matches!(self, UnionKernel::RemLock | UnionKernel::RemCas)
    }
}

impl FindOption {
    pub const ALL: [FindOption; 5] = [
        FindOption::Naive,
        FindOption::AtomicSplit,
        FindOption::AtomicHalve,
        FindOption::Compress,
        FindOption::TwoTrySplit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FindOption::Naive => "find_naive",
            FindOption::AtomicSplit => "find_atomic_split",
            FindOption::AtomicHalve => "find_atomic_halve",
            FindOption::Compress => "find_compress",
            FindOption::TwoTrySplit => "find_two_try_split",
        }
    }
}

impl SpliceOption {
    pub const ALL: [SpliceOption; 3] = [
        SpliceOption::SplitAtomicOne,
        SpliceOption::HalveAtomicOne,
        SpliceOption::SpliceAtomic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpliceOption::SplitAtomicOne => "split_atomic_one",
            SpliceOption::HalveAtomicOne => "halve_atomic_one",
            SpliceOption::SpliceAtomic => "splice_atomic",
        }
    }
}

macro_rules! impl_name_parse {
    ($t:ty) => {
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }

        impl FromStr for $t {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                <$t>::ALL
                    .into_iter()
                    .find(|x| x.name() == s)
                    .ok_or_else(|| Error::UnknownToken(s.to_string()))
            }
        }
    };
}

impl_name_parse!(UnionKernel);
impl_name_parse!(FindOption);
impl_name_parse!(SpliceOption);

/// A union-find configuration: union kernel, find option and, for the Rem
/// kernels, a splice option.
///
/// Construct through [`UnionFindSpec::new`] or parsing, both of which
/// validate against the allowed matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnionFindSpec {
    pub kernel: UnionKernel,
    pub find: FindOption,
    pub splice: Option<SpliceOption>,
}

impl UnionFindSpec {
    pub fn new(kernel: UnionKernel, find: FindOption, splice: Option<SpliceOption>) -> Result<Self> {
        UnionFindSpec { kernel, find, splice }.validate()
    }

    /// `uf_rem_cas;split_atomic_one;find_naive`, the default for sampling and
    /// AMSF.
    pub fn rem_cas_default() -> Self {
        UnionFindSpec {
            kernel: UnionKernel::RemCas,
            find: FindOption::Naive,
            splice: Some(SpliceOption::SplitAtomicOne),
        }
    }

    pub fn validate(self) -> Result<Self> {
        let UnionFindSpec { kernel, find, splice } = self;
        let reject = |why: String| Err(Error::RejectedSpec(format!("{self}: {why}")));
        match (kernel.is_rem(), splice) {
            (true, None) => return reject(format!("{kernel} requires a splice option")),
            (false, Some(s)) => return reject(format!("splice option {s} only applies to Rem kernels")),
            _ => {}
        }
        if kernel.is_rem() && splice == Some(SpliceOption::SpliceAtomic) && find == FindOption::Compress {
            return reject(
                "combining find_compress with splice_atomic in Rem's algorithm is incorrect under concurrency".into(),
            );
        }
        if kernel == UnionKernel::Jtb && !matches!(find, FindOption::Naive | FindOption::TwoTrySplit) {
            return reject("uf_jtb pairs only with find_naive or find_two_try_split".into());
        }
        if kernel != UnionKernel::Jtb && find == FindOption::TwoTrySplit {
            return reject("find_two_try_split pairs only with uf_jtb".into());
        }
        Ok(self)
    }

    /// Whether unite, find and is_connected may be freely interleaved.
    /// Rem with `splice_atomic` is only correct when unions and finds run in
    /// separate phases.
    pub fn is_wait_free(&self) -> bool {
        self.splice != Some(SpliceOption::SpliceAtomic)
    }

    /// Every spec that passes [`validate`](Self::validate), in a fixed order.
    pub fn all_valid() -> Vec<UnionFindSpec> {
        let mut out = Vec::new();
        for kernel in UnionKernel::ALL {
            let splices: Vec<Option<SpliceOption>> = if kernel.is_rem() {
                SpliceOption::ALL.iter().copied().map(Some).collect()
            } else {
                vec![None]
            };
            for splice in splices {
                for find in FindOption::ALL {
                    if let Ok(spec) = UnionFindSpec::new(kernel, find, splice) {
                        out.push(spec);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for UnionFindSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.splice {
            Some(s) => write!(f, "{};{};{}", self.kernel, s, self.find),
            None => write!(f, "{};{}", self.kernel, self.find),
        }
    }
}

impl FromStr for UnionFindSpec {
    type Err = Error;

    /// Accepts `kernel;splice;find` or `kernel;find`. Tokens after the
    /// kernel are recognized by name, so their order does not matter.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(';').map(str::trim);
        let kernel: UnionKernel = parts.next().unwrap_or_default().parse()?;
        let mut find = None;
        let mut splice = None;
        for tok in parts {
            if let Ok(f) = tok.parse::<FindOption>() {
                if find.replace(f).is_some() {
                    return Err(Error::RejectedSpec(format!("{s}: more than one find option")));
                }
            } else if let Ok(sp) = tok.parse::<SpliceOption>() {
                if splice.replace(sp).is_some() {
                    return Err(Error::RejectedSpec(format!("{s}: more than one splice option")));
                }
            } else {
                return Err(Error::UnknownToken(tok.to_string()));
            }
        }
        let find = find.ok_or_else(|| Error::RejectedSpec(format!("{s}: missing find option")))?;
        UnionFindSpec::new(kernel, find, splice)
    }
}
