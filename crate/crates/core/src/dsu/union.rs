use parking_lot::Mutex;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{
    cas_observed, find_with, splice_with, FindOption, ForestEdges, HookArray, LinkKind, LinkObserver, ParentArray,
    UnionFindSpec, UnionKernel, QUIET,
};
use crate::graph::VertexId;

/// A parent array together with the auxiliary state its union kernel needs.
///
/// `unite`, `find` and `is_connected` take `&self` and may be called from
/// many threads at once. For specs that are not wait-free (Rem with
/// `splice_atomic`) unions and finds must run in separate phases.
pub struct UnionFind<'o> {
    spec: UnionFindSpec,
    parents: ParentArray,
    hooks: Option<HookArray>,
    locks: Option<Vec<Mutex<()>>>,
    priority: Option<Vec<u32>>,
    observer: &'o dyn LinkObserver,
}

impl UnionFind<'static> {
    pub fn new(spec: UnionFindSpec, n: usize, seed: u64) -> Self {
        Self::with_parents(spec, ParentArray::identity(n), seed)
    }

    /// Starts from an existing forest. Every non-root must point at a
    /// smaller id (true for identity and for min-rooted sampled labelings)
    /// except under `uf_jtb`, which links by random priority.
    pub fn with_parents(spec: UnionFindSpec, parents: ParentArray, seed: u64) -> Self {
        let n = parents.len();
        let hooks = (spec.kernel == UnionKernel::Hooks).then(|| HookArray::new(n));
        let locks = (spec.kernel == UnionKernel::RemLock).then(|| (0..n).map(|_| Mutex::new(())).collect());
        let priority = (spec.kernel == UnionKernel::Jtb).then(|| {
            let mut order: Vec<u32> = (0..n as u32).collect();
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            order
        });
        UnionFind {
            spec,
            parents,
            hooks,
            locks,
            priority,
            observer: &QUIET,
        }
    }
}

impl<'o> UnionFind<'o> {
    /// Reports every successful parent write to `observer`.
    pub fn observed<'a>(self, observer: &'a dyn LinkObserver) -> UnionFind<'a> {
        UnionFind {
            spec: self.spec,
            parents: self.parents,
            hooks: self.hooks,
            locks: self.locks,
            priority: self.priority,
            observer,
        }
    }

    pub fn spec(&self) -> UnionFindSpec {
        self.spec
    }

    pub fn len(&self) -> usize {
        self.parents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parents.is_empty()
    }

    pub fn parents(&self) -> &ParentArray {
        &self.parents
    }

    pub fn into_parents(self) -> ParentArray {
        self.parents
    }

    #[inline]
    pub fn find(&self, u: VertexId) -> VertexId {
        find_with(self.spec.find, u, &self.parents, self.observer)
    }

    /// True iff `u` and `v` shared a tree at some instant during the call.
    pub fn is_connected(&self, u: VertexId, v: VertexId) -> bool {
        loop {
            let ru = self.find(u);
            let rv = self.find(v);
            if ru == rv {
                return true;
            }
            if self.parents.get(ru) == ru {
                return false;
            }
        }
    }

    /// Merges the sets of `u` and `v`. Returns true if this call performed
    /// the root hook that joined them.
    #[inline]
    pub fn unite(&self, u: VertexId, v: VertexId) -> bool {
        self.unite_impl(u, v, None)
    }

    /// [`unite`](Self::unite) that also stores `edge` in the forest slot of
    /// the root it hooks.
    #[inline]
    pub fn unite_recording(&self, u: VertexId, v: VertexId, forest: &ForestEdges, edge: usize) -> bool {
        self.unite_impl(u, v, Some((forest, edge)))
    }

    fn unite_impl(&self, u: VertexId, v: VertexId, forest: Option<(&ForestEdges, usize)>) -> bool {
        let hooked = match self.spec.kernel {
            UnionKernel::Async => self.unite_async(u, v),
            UnionKernel::Hooks => self.unite_hooks(u, v),
            UnionKernel::Early => self.unite_early(u, v),
            UnionKernel::RemCas => self.unite_rem_cas(u, v),
            UnionKernel::RemLock => self.unite_rem_lock(u, v),
            UnionKernel::Jtb => self.unite_jtb(u, v),
        };
        match hooked {
            Some(root) => {
                if let Some((f, e)) = forest {
                    f.record(root, e);
                }
                true
            }
            None => false,
        }
    }

    #[inline]
    fn hook(&self, root: VertexId, target: usize) -> bool {
        cas_observed(&self.parents, self.observer, root, root, target, LinkKind::Hook)
    }

    fn unite_async(&self, u: VertexId, v: VertexId) -> Option<VertexId> {
        loop {
            let mut pu = self.find(u);
            let mut pv = self.find(v);
            if pu == pv {
                return None;
            }
            if pu < pv {
                std::mem::swap(&mut pu, &mut pv);
            }
            if self.parents.get(pu) == pu && self.hook(pu, pv) {
                return Some(pu);
            }
        }
    }

    fn unite_hooks(&self, u: VertexId, v: VertexId) -> Option<VertexId> {
        let hooks = self.hooks.as_ref().expect("hook array");
        loop {
            let mut pu = self.find(u);
            let mut pv = self.find(v);
            if pu == pv {
                return None;
            }
            if pu < pv {
                std::mem::swap(&mut pu, &mut pv);
            }
            if self.parents.get(pu) == pu && hooks.try_claim(pu, pv) {
                self.parents.set(pu, pv);
                self.observer.on_link(pu, pu, pv, LinkKind::Hook);
                return Some(pu);
            }
        }
    }

    fn unite_early(&self, u0: VertexId, v0: VertexId) -> Option<VertexId> {
        let (mut u, mut v) = (u0, v0);
        let p = &self.parents;
        let hooked = loop {
            if u == v {
                break None;
            }
            if v > u {
                std::mem::swap(&mut u, &mut v);
            }
            if p.get(u) == u && self.hook(u, v) {
                break Some(u);
            }
            let z = p.get(u);
            let w = p.get(z);
            cas_observed(p, self.observer, u, z, w, LinkKind::Path);
            u = z;
        };
        if self.spec.find != FindOption::Naive {
            self.find(u0);
            self.find(v0);
        }
        hooked
    }

    fn unite_rem_cas(&self, u: VertexId, v: VertexId) -> Option<VertexId> {
        let splice = self.spec.splice.expect("rem kernel has a splice option");
        let p = &self.parents;
        let (mut rx, mut ry) = (u, v);
        loop {
            let mut px = p.get(rx);
            let mut py = p.get(ry);
            if px == py {
                return None;
            }
            if px < py {
                std::mem::swap(&mut rx, &mut ry);
                std::mem::swap(&mut px, &mut py);
            }
            if rx == px {
                if self.hook(rx, py) {
                    self.trailing_finds(u, v);
                    return Some(rx);
                }
            } else {
                rx = splice_with(splice, rx, ry, p, self.observer);
            }
        }
    }

    fn unite_rem_lock(&self, u: VertexId, v: VertexId) -> Option<VertexId> {
        let splice = self.spec.splice.expect("rem kernel has a splice option");
        let locks = self.locks.as_ref().expect("lock array");
        let p = &self.parents;
        let (mut rx, mut ry) = (u, v);
        loop {
            let mut px = p.get(rx);
            let mut py = p.get(ry);
            if px == py {
                return None;
            }
            if px < py {
                std::mem::swap(&mut rx, &mut ry);
                std::mem::swap(&mut px, &mut py);
            }
            if rx == px {
                let linked = {
                    let _guard = locks[rx].lock();
                    let py = p.get(ry);
                    if p.get(rx) == rx && rx > py {
                        p.set(rx, py);
                        self.observer.on_link(rx, rx, py, LinkKind::Hook);
                        true
                    } else {
                        false
                    }
                };
                if linked {
                    self.trailing_finds(u, v);
                    return Some(rx);
                }
            } else {
                rx = splice_with(splice, rx, ry, p, self.observer);
            }
        }
    }

    fn unite_jtb(&self, u: VertexId, v: VertexId) -> Option<VertexId> {
        let prio = self.priority.as_ref().expect("priority order");
        loop {
            let ru = self.find(u);
            let rv = self.find(v);
            if ru == rv {
                return None;
            }
            let (lo, hi) = if prio[ru] < prio[rv] { (ru, rv) } else { (rv, ru) };
            if self.hook(lo, hi) {
                return Some(lo);
            }
        }
    }

    #[inline]
    fn trailing_finds(&self, u: VertexId, v: VertexId) {
        if self.spec.find != FindOption::Naive {
            self.find(u);
            self.find(v);
        }
    }
}
