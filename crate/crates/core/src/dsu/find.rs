use super::{cas_observed, FindOption, LinkKind, LinkObserver, ParentArray, SpliceOption};
use crate::graph::VertexId;

/// [`FindOption::find`] with every successful path write reported to `obs`.
pub fn find_with(opt: FindOption, u: VertexId, p: &ParentArray, obs: &dyn LinkObserver) -> VertexId {
    match opt {
        FindOption::Naive => find_naive(u, p),
        FindOption::Compress => find_compress(u, p, obs),
        FindOption::AtomicSplit => find_atomic_split(u, p, obs),
        FindOption::AtomicHalve => find_atomic_halve(u, p, obs),
        FindOption::TwoTrySplit => find_two_try_split(u, p, obs),
    }
}

#[inline]
fn find_naive(mut u: VertexId, p: &ParentArray) -> VertexId {
    loop {
        let v = p.get(u);
        if v == u {
            return u;
        }
        u = v;
    }
}

/// Walks to the root, then points every slot on the path at it. Relies on
/// parents never exceeding their child's id, which holds for every kernel
/// except JTB (which never pairs with this option).
fn find_compress(u: VertexId, p: &ParentArray, obs: &dyn LinkObserver) -> VertexId {
    let r = find_naive(u, p);
    let mut i = u;
    loop {
        let j = p.get(i);
        if j <= r {
            break;
        }
        cas_observed(p, obs, i, j, r, LinkKind::Path);
        i = j;
    }
    r
}

fn find_atomic_split(mut u: VertexId, p: &ParentArray, obs: &dyn LinkObserver) -> VertexId {
    loop {
        let v = p.get(u);
        let w = p.get(v);
        if v == w {
            return v;
        }
        cas_observed(p, obs, u, v, w, LinkKind::Path);
        u = v;
    }
}

fn find_atomic_halve(mut u: VertexId, p: &ParentArray, obs: &dyn LinkObserver) -> VertexId {
    loop {
        let v = p.get(u);
        let w = p.get(v);
        if v == w {
            return v;
        }
        cas_observed(p, obs, u, v, w, LinkKind::Path);
        u = p.get(u);
    }
}

/// Splitting with two attempts per node before advancing.
fn find_two_try_split(mut u: VertexId, p: &ParentArray, obs: &dyn LinkObserver) -> VertexId {
    loop {
        for _ in 0..2 {
            let v = p.get(u);
            let w = p.get(v);
            if v == w {
                return v;
            }
            cas_observed(p, obs, u, v, w, LinkKind::Path);
        }
        u = p.get(u);
    }
}

/// [`SpliceOption::splice`] with every successful write reported to `obs`.
pub fn splice_with(opt: SpliceOption, u: VertexId, v: VertexId, p: &ParentArray, obs: &dyn LinkObserver) -> VertexId {
    match opt {
        SpliceOption::SplitAtomicOne => {
            let a = p.get(u);
            let b = p.get(a);
            if a != b {
                cas_observed(p, obs, u, a, b, LinkKind::Path);
            }
            a
        }
        SpliceOption::HalveAtomicOne => {
            let a = p.get(u);
            let b = p.get(a);
            if a == b {
                return a;
            }
            cas_observed(p, obs, u, a, b, LinkKind::Path);
            b
        }
        SpliceOption::SpliceAtomic => {
            let z = p.get(u);
            let target = p.get(v);
            // Only ever move a link downward; a stale `target` above `z`
            // would undo progress and could form a cycle.
            if target < z {
                cas_observed(p, obs, u, z, target, LinkKind::Path);
            }
            z
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pa(v: &[usize]) -> ParentArray {
        ParentArray::from_vec(v.to_vec())
    }

    #[test]
    fn naive_walks_without_writing() {
        let p = pa(&[0, 0, 1]);
        assert_eq!(FindOption::Naive.find(2, &p), 0);
        assert_eq!(p.to_vec(), vec![0, 0, 1]);
        let p = ParentArray::identity(6);
        assert_eq!(FindOption::Naive.find(5, &p), 5);
        assert_eq!(FindOption::Naive.find(1, &pa(&[0, 0, 0])), 0);
    }

    #[test]
    fn compress_flattens_path() {
        let p = pa(&[0, 0, 1, 2]);
        assert_eq!(FindOption::Compress.find(3, &p), 0);
        assert_eq!(p.to_vec(), vec![0, 0, 0, 0]);
    }

    #[test]
    fn split_points_each_node_at_grandparent() {
        let p = pa(&[0, 0, 1, 2]);
        assert_eq!(FindOption::AtomicSplit.find(3, &p), 0);
        assert_eq!(p.to_vec(), vec![0, 0, 0, 1]);
    }

    #[test]
    fn halve_skips_every_other_node() {
        let p = pa(&[0, 0, 1, 2]);
        assert_eq!(FindOption::AtomicHalve.find(3, &p), 0);
        // 3 -> 1, then the walk jumps to 1 whose parent is the root.
        assert_eq!(p.get(3), 1);
        assert_eq!(p.to_vec(), vec![0, 0, 1, 1]);
    }

    #[test]
    fn two_try_split_reaches_root() {
        let p = pa(&[0, 0, 1, 2, 3]);
        assert_eq!(FindOption::TwoTrySplit.find(4, &p), 0);
        assert_eq!(FindOption::Naive.find(4, &p), 0);
    }

    #[test]
    fn every_find_is_identity_on_roots() {
        for opt in FindOption::ALL {
            let p = ParentArray::identity(4);
            assert_eq!(opt.find(2, &p), 2);
            assert_eq!(p.to_vec(), vec![0, 1, 2, 3]);
        }
    }

    #[test]
    fn splice_atomic_moves_link_to_other_parent() {
        // P[4] = 3, P[5] = 2
        let p = pa(&[0, 1, 2, 3, 3, 2]);
        assert_eq!(SpliceOption::SpliceAtomic.splice(4, 5, &p), 3);
        assert_eq!(p.get(4), 2);
    }

    #[test]
    fn split_one_at_root_child_does_not_write() {
        let p = pa(&[0, 0]);
        assert_eq!(SpliceOption::SplitAtomicOne.splice(1, 0, &p), 0);
        assert_eq!(p.to_vec(), vec![0, 0]);
    }

    #[test]
    fn halve_one_on_chain() {
        let p = pa(&[0, 0, 1]);
        assert_eq!(SpliceOption::HalveAtomicOne.splice(2, 0, &p), 0);
        assert_eq!(p.get(2), 0);
    }
}
