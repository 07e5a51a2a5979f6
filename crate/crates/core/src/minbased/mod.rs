//! Round-synchronous min-based finish methods.
//!
//! Each method works on a label array and a list of directed work edges in
//! the same id space as the array. Callers decide what that space is: plain
//! vertex ids, or vertex ids shifted up by one so that slot 0 can hold a
//! label smaller than every vertex.

mod label_prop;
mod lt;
mod stergiou;
mod sv;

pub use label_prop::label_propagation;
pub use lt::liu_tarjan;
pub use stergiou::stergiou;
pub use sv::shiloach_vishkin;

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;

use crate::dsu::{ForestEdges, ParentArray};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConnectKind {
    /// Edge `(a, b)` proposes `b` to slot `a`.
    Connect,
    /// Edge `(a, b)` proposes `P[b]` to slot `P[a]`.
    ParentConnect,
    /// Parent-connect plus `P[b]` to slot `a`.
    ExtendedConnect,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ShortcutKind {
    Single,
    Full,
}

/// One of the sixteen Liu-Tarjan variants, named by letters: connect kind
/// (C/P/E), update rule (U = unconditional, R = roots only), shortcut
/// (S = single, F = full) and an optional A for alter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LiuTarjanSpec {
    pub connect: ConnectKind,
    pub root_up: bool,
    pub shortcut: ShortcutKind,
    pub alter: bool,
}

impl LiuTarjanSpec {
    pub const NAMES: [&'static str; 16] = [
        "CUSA", "CRSA", "PUSA", "PRSA", "PUS", "PRS", "EUSA", "EUS", "CUFA", "CRFA", "PUFA", "PRFA", "PUF", "PRF",
        "EUFA", "EUF",
    ];

    pub fn new(connect: ConnectKind, root_up: bool, shortcut: ShortcutKind, alter: bool) -> Result<Self> {
        let spec = LiuTarjanSpec {
            connect,
            root_up,
            shortcut,
            alter,
        };
        if connect == ConnectKind::Connect && !alter {
            return Err(Error::RejectedSpec(format!("{}: connect requires alter", spec.name())));
        }
        if root_up && connect == ConnectKind::ExtendedConnect {
            return Err(Error::RejectedSpec(format!(
                "{}: root-up applies only to connect and parent-connect",
                spec.name()
            )));
        }
        Ok(spec)
    }

    pub fn all() -> Vec<LiuTarjanSpec> {
        Self::NAMES.iter().map(|n| n.parse().unwrap()).collect()
    }

    pub fn name(&self) -> String {
        let mut s = String::with_capacity(4);
        s.push(match self.connect {
            ConnectKind::Connect => 'C',
            ConnectKind::ParentConnect => 'P',
            ConnectKind::ExtendedConnect => 'E',
        });
        s.push(if self.root_up { 'R' } else { 'U' });
        s.push(match self.shortcut {
            ShortcutKind::Single => 'S',
            ShortcutKind::Full => 'F',
        });
        if self.alter {
            s.push('A');
        }
        s
    }

    /// Root-based variants only ever relink tree roots, which is what
    /// spanning forest and streaming need.
    pub fn is_root_based(&self) -> bool {
        self.root_up
    }
}

impl fmt::Display for LiuTarjanSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for LiuTarjanSpec {
    type Err = Error;

    /// Parses a variant name such as `PRF` (case-insensitive).
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownToken(s.to_string());
        let up = s.to_ascii_uppercase();
        let b = up.as_bytes();
        if !(3..=4).contains(&b.len()) {
            return Err(unknown());
        }
        let connect = match b[0] {
            b'C' => ConnectKind::Connect,
            b'P' => ConnectKind::ParentConnect,
            b'E' => ConnectKind::ExtendedConnect,
            _ => return Err(unknown()),
        };
        let root_up = match b[1] {
            b'U' => false,
            b'R' => true,
            _ => return Err(unknown()),
        };
        let shortcut = match b[2] {
            b'S' => ShortcutKind::Single,
            b'F' => ShortcutKind::Full,
            _ => return Err(unknown()),
        };
        let alter = match b.get(3) {
            None => false,
            Some(b'A') => true,
            Some(_) => return Err(unknown()),
        };
        LiuTarjanSpec::new(connect, root_up, shortcut, alter)
    }
}

/// A min-based finish method.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MinBasedSpec {
    LiuTarjan(LiuTarjanSpec),
    Stergiou,
    ShiloachVishkin,
    LabelPropagation,
}

impl MinBasedSpec {
    pub fn all() -> Vec<MinBasedSpec> {
        let mut v: Vec<_> = LiuTarjanSpec::all().into_iter().map(MinBasedSpec::LiuTarjan).collect();
        v.extend([
            MinBasedSpec::Stergiou,
            MinBasedSpec::ShiloachVishkin,
            MinBasedSpec::LabelPropagation,
        ]);
        v
    }

    pub fn is_root_based(&self) -> bool {
        match self {
            MinBasedSpec::LiuTarjan(lt) => lt.is_root_based(),
            MinBasedSpec::ShiloachVishkin => true,
            MinBasedSpec::Stergiou | MinBasedSpec::LabelPropagation => false,
        }
    }

    /// Runs the method to its fixed point. Returns the number of rounds,
    /// counting the final round that observed no change.
    pub fn run(&self, edges: &WorkEdges, labels: &ParentArray, opts: &RoundOptions) -> Result<usize> {
        match self {
            MinBasedSpec::LiuTarjan(lt) => liu_tarjan(*lt, edges, labels, opts),
            MinBasedSpec::Stergiou => stergiou(edges, labels, opts),
            MinBasedSpec::ShiloachVishkin => shiloach_vishkin(edges, labels, opts),
            MinBasedSpec::LabelPropagation => label_propagation(edges, labels, opts),
        }
    }

    pub(crate) fn check_forest(&self, opts: &RoundOptions) -> Result<()> {
        if opts.forest.is_some() && !self.is_root_based() {
            return Err(Error::Ineligible(format!(
                "{self} is not root-based and cannot build a spanning forest"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for MinBasedSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinBasedSpec::LiuTarjan(lt) => write!(f, "lt_{}", lt.name().to_ascii_lowercase()),
            MinBasedSpec::Stergiou => f.write_str("stergiou"),
            MinBasedSpec::ShiloachVishkin => f.write_str("sv"),
            MinBasedSpec::LabelPropagation => f.write_str("label_prop"),
        }
    }
}

impl FromStr for MinBasedSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stergiou" => Ok(MinBasedSpec::Stergiou),
            "sv" => Ok(MinBasedSpec::ShiloachVishkin),
            "label_prop" => Ok(MinBasedSpec::LabelPropagation),
            _ => match s.strip_prefix("lt_") {
                Some(v) => v.parse().map(MinBasedSpec::LiuTarjan),
                None => Err(Error::UnknownToken(s.to_string())),
            },
        }
    }
}

/// Directed work edges in label space. `ids[i]` names edge `pairs[i]` for
/// spanning-forest recording.
#[derive(Clone, Debug, Default)]
pub struct WorkEdges {
    pub pairs: Vec<(usize, usize)>,
    pub ids: Vec<usize>,
}

impl WorkEdges {
    pub fn new(pairs: Vec<(usize, usize)>) -> Self {
        let ids = (0..pairs.len()).collect();
        WorkEdges { pairs, ids }
    }

    /// Both directions of each undirected pair.
    pub fn symmetric(pairs: &[(usize, usize)]) -> Self {
        WorkEdges::new(pairs.iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect())
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Per-run hooks for the min-based methods.
#[derive(Default)]
pub struct RoundOptions<'a> {
    /// Spanning-forest output; only accepted by root-based methods.
    pub forest: Option<&'a ForestEdges>,
    /// Called with the labels after every round.
    pub on_round: Option<&'a (dyn Fn(&ParentArray) + Sync)>,
}

impl RoundOptions<'_> {
    pub(crate) fn end_round(&self, labels: &ParentArray) {
        if let Some(f) = self.on_round {
            f(labels);
        }
    }
}

/// One pointer-jumping pass. Returns whether any slot changed.
pub(crate) fn shortcut_once(labels: &ParentArray) -> bool {
    let changed = AtomicBool::new(false);
    (0..labels.len()).into_par_iter().for_each(|v| {
        let p = labels.get(v);
        let gp = labels.get(p);
        if gp < p && labels.write_min(v, gp) {
            changed.store(true, Ordering::Relaxed);
        }
    });
    changed.into_inner()
}

pub(crate) fn shortcut(labels: &ParentArray, kind: ShortcutKind) -> bool {
    match kind {
        ShortcutKind::Single => shortcut_once(labels),
        ShortcutKind::Full => {
            let mut any = false;
            while shortcut_once(labels) {
                any = true;
            }
            any
        }
    }
}

#[cfg(test)]
pub(crate) mod test_util {
    use super::*;

    /// Runs `spec` from identity labels and returns the labels.
    pub fn run_identity(spec: MinBasedSpec, n: usize, undirected: &[(usize, usize)]) -> (Vec<usize>, usize) {
        let labels = ParentArray::identity(n);
        let rounds = spec
            .run(&WorkEdges::symmetric(undirected), &labels, &RoundOptions::default())
            .unwrap();
        (labels.into_vec(), rounds)
    }

    pub fn counter_example() -> Vec<(usize, usize)> {
        vec![(0, 2), (1, 3), (2, 5), (3, 4), (4, 5)]
    }
}
