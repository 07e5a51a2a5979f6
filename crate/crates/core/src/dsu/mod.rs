//! Concurrent union-find: shared parent array, find and splice options, and
//! the union kernels.

mod find;
mod spec;
mod union;

pub use find::{find_with, splice_with};
pub use spec::{FindOption, SpliceOption, UnionFindSpec, UnionKernel};
pub use union::UnionFind;

use std::sync::atomic::{AtomicUsize, Ordering::SeqCst};

use crate::graph::VertexId;

/// Shared array of `n` label slots. Used both as the union-find parent
/// array and as the label array of the min-based algorithms.
pub struct ParentArray {
    slots: Vec<AtomicUsize>,
}

impl ParentArray {
    /// Every slot points to itself.
    pub fn identity(n: usize) -> Self {
        ParentArray {
            slots: (0..n).map(AtomicUsize::new).collect(),
        }
    }

    pub fn from_vec(values: Vec<usize>) -> Self {
        ParentArray {
            slots: values.into_iter().map(AtomicUsize::new).collect(),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.slots.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    #[inline]
    pub fn get(&self, v: VertexId) -> usize {
        self.slots[v].load(SeqCst)
    }

    #[inline]
    pub fn set(&self, v: VertexId, x: usize) {
        self.slots[v].store(x, SeqCst)
    }

    #[inline]
    pub fn is_root(&self, v: VertexId) -> bool {
        self.get(v) == v
    }

    #[inline]
    pub fn cas(&self, v: VertexId, old: usize, new: usize) -> bool {
        self.slots[v].compare_exchange(old, new, SeqCst, SeqCst).is_ok()
    }

    /// Stores `x` if it is smaller than the current value. Returns whether
    /// the slot changed.
    #[inline]
    pub fn write_min(&self, v: VertexId, x: usize) -> bool {
        self.slots[v].fetch_min(x, SeqCst) > x
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.slots.iter().map(|s| s.load(SeqCst)).collect()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.slots.into_iter().map(AtomicUsize::into_inner).collect()
    }
}

impl Clone for ParentArray {
    fn clone(&self) -> Self {
        ParentArray::from_vec(self.to_vec())
    }
}

impl std::fmt::Debug for ParentArray {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.to_vec()).finish()
    }
}

/// Auxiliary hook slots for UF-Hooks. Each slot moves from [`HookArray::EMPTY`]
/// to a real value at most once.
pub struct HookArray {
    slots: Vec<AtomicUsize>,
}

impl HookArray {
    pub const EMPTY: usize = usize::MAX;

    pub fn new(n: usize) -> Self {
        HookArray {
            slots: (0..n).map(|_| AtomicUsize::new(Self::EMPTY)).collect(),
        }
    }

    pub fn try_claim(&self, v: VertexId, target: usize) -> bool {
        self.slots[v]
            .compare_exchange(Self::EMPTY, target, SeqCst, SeqCst)
            .is_ok()
    }

    pub fn get(&self, v: VertexId) -> Option<usize> {
        match self.slots[v].load(SeqCst) {
            Self::EMPTY => None,
            x => Some(x),
        }
    }
}

/// One edge slot per vertex, written at most once. A union that hooks root
/// `r` stores the id of the edge it was processing at slot `r`; the filled
/// slots form a spanning forest.
///
/// Edge ids are opaque to this type: CSR edge indices for graph runs, list
/// indices for AMSF.
pub struct ForestEdges {
    slots: Vec<AtomicUsize>,
}

impl ForestEdges {
    pub const SENTINEL: usize = usize::MAX;

    pub fn new(n: usize) -> Self {
        ForestEdges {
            slots: (0..n).map(|_| AtomicUsize::new(Self::SENTINEL)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Claims `slot` for `edge`. Returns false if the slot was already taken.
    #[inline]
    pub fn record(&self, slot: VertexId, edge: usize) -> bool {
        debug_assert_ne!(edge, Self::SENTINEL);
        self.slots[slot]
            .compare_exchange(Self::SENTINEL, edge, SeqCst, SeqCst)
            .is_ok()
    }

    pub fn get(&self, slot: VertexId) -> Option<usize> {
        match self.slots[slot].load(SeqCst) {
            Self::SENTINEL => None,
            e => Some(e),
        }
    }

    /// Overwrites a slot outright. Only for single-threaded re-rooting.
    pub(crate) fn replace(&self, slot: VertexId, edge: Option<usize>) {
        self.slots[slot].store(edge.unwrap_or(Self::SENTINEL), SeqCst)
    }

    /// Filled slots as `(slot, edge)` pairs in slot order.
    pub fn assigned(&self) -> Vec<(VertexId, usize)> {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(v, s)| match s.load(SeqCst) {
                Self::SENTINEL => None,
                e => Some((v, e)),
            })
            .collect()
    }

    pub fn edge_ids(&self) -> Vec<usize> {
        self.assigned().into_iter().map(|(_, e)| e).collect()
    }
}

/// What a successful write to a parent slot did.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkKind {
    /// A union linked a root below another vertex.
    Hook,
    /// A find or splice redirected a non-root link along its path.
    Path,
}

/// Sees every successful write that changes the parent array, made by a
/// [`UnionFind`].
/// Used for instrumentation in tests; the default [`Quiet`] does nothing.
pub trait LinkObserver: Sync {
    fn on_link(&self, slot: VertexId, old: usize, new: usize, kind: LinkKind);
}

pub struct Quiet;

impl LinkObserver for Quiet {
    #[inline(always)]
    fn on_link(&self, _: VertexId, _: usize, _: usize, _: LinkKind) {}
}

pub(crate) static QUIET: Quiet = Quiet;

#[inline]
pub(crate) fn cas_observed(
    p: &ParentArray,
    obs: &dyn LinkObserver,
    slot: VertexId,
    old: usize,
    new: usize,
    kind: LinkKind,
) -> bool {
    let ok = p.cas(slot, old, new);
    if ok && old != new {
        obs.on_link(slot, old, new, kind);
    }
    ok
}

impl FindOption {
    /// Finds the root of `u`, rewriting the path as the option prescribes.
    pub fn find(self, u: VertexId, p: &ParentArray) -> VertexId {
        find_with(self, u, p, &QUIET)
    }
}

impl SpliceOption {
    /// One splice step of Rem's algorithm from `u` toward `v`'s path.
    /// Returns the next vertex on `u`'s path.
    pub fn splice(self, u: VertexId, v: VertexId, p: &ParentArray) -> VertexId {
        splice_with(self, u, v, p, &QUIET)
    }
}

/// Follows parent links to the root with no writes. For quiescent arrays.
pub fn root_of(p: &[usize], mut v: VertexId) -> VertexId {
    while p[v] != v {
        v = p[v];
    }
    v
}

/// Rewrites every slot to point directly at its root. Single pass over a
/// quiescent forest; parallel across vertices.
pub fn compress_all(p: &ParentArray) {
    use rayon::prelude::*;
    (0..p.len()).into_par_iter().for_each(|v| {
        let mut r = p.get(v);
        while p.get(r) != r {
            r = p.get(r);
        }
        p.set(v, r);
    });
}
