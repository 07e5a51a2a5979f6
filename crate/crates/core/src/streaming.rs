//! Batch-incremental connectivity: batches of edge insertions and
//! connectivity queries applied to a live labeling.

use std::sync::atomic::{AtomicBool, Ordering::Relaxed};

use rayon::prelude::*;

use crate::driver::{canonicalize, connectivity, AlgorithmSpec, FinishSpec};
use crate::dsu::{LinkObserver, ParentArray, UnionFind};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::minbased::{MinBasedSpec, RoundOptions, WorkEdges};

/// How a finish method can absorb insertions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StreamClass {
    /// Union-find without `splice_atomic`: inserts and queries interleave
    /// freely.
    WaitFree,
    /// Shiloach-Vishkin and root-based Liu-Tarjan: inserts are absorbed by
    /// rerunning rounds over the batch; queries run alongside.
    RoundSynchronous,
    /// Rem with `splice_atomic`: all inserts, a barrier, then all queries.
    PhaseConcurrent,
}

impl StreamClass {
    pub fn of(finish: &FinishSpec) -> Result<StreamClass> {
        match finish {
            FinishSpec::UnionFind(s) if s.is_wait_free() => Ok(StreamClass::WaitFree),
            FinishSpec::UnionFind(_) => Ok(StreamClass::PhaseConcurrent),
            FinishSpec::MinBased(m) if m.is_root_based() => Ok(StreamClass::RoundSynchronous),
            FinishSpec::MinBased(m) => Err(Error::Ineligible(format!(
                "{m} is not root-based and cannot process streaming updates"
            ))),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Batch {
    pub inserts: Vec<(VertexId, VertexId)>,
    pub queries: Vec<(VertexId, VertexId)>,
}

enum State<'o> {
    UnionFind(UnionFind<'o>),
    MinBased { method: MinBasedSpec, labels: ParentArray },
}

pub struct StreamEngine<'o> {
    class: StreamClass,
    finish: FinishSpec,
    state: State<'o>,
}

impl StreamEngine<'static> {
    /// Engine over `n` vertices and no edges.
    pub fn new(n: usize, spec: &AlgorithmSpec) -> Result<Self> {
        Self::from_labels((0..n).collect(), spec)
    }

    /// Engine whose labels reflect `graph`, computed with the static
    /// algorithm `spec` (sampling included).
    pub fn initialize(graph: &Graph, spec: &AlgorithmSpec) -> Result<Self> {
        StreamClass::of(&spec.finish)?;
        let report = connectivity(graph, spec)?;
        Self::from_labels(report.canonical_labels, spec)
    }

    fn from_labels(labels: Vec<usize>, spec: &AlgorithmSpec) -> Result<Self> {
        let class = StreamClass::of(&spec.finish)?;
        let parents = ParentArray::from_vec(labels);
        let state = match spec.finish {
            FinishSpec::UnionFind(uf) => State::UnionFind(UnionFind::with_parents(uf, parents, spec.sampling.seed)),
            FinishSpec::MinBased(method) => State::MinBased {
                method,
                labels: parents,
            },
        };
        Ok(StreamEngine {
            class,
            finish: spec.finish,
            state,
        })
    }
}

impl<'o> StreamEngine<'o> {
    /// Reports union-find parent writes to `observer`. No effect for
    /// min-based engines.
    pub fn observed<'a>(self, observer: &'a dyn LinkObserver) -> StreamEngine<'a> {
        let state = match self.state {
            State::UnionFind(uf) => State::UnionFind(uf.observed(observer)),
            State::MinBased { method, labels } => State::MinBased { method, labels },
        };
        StreamEngine {
            class: self.class,
            finish: self.finish,
            state,
        }
    }

    pub fn class(&self) -> StreamClass {
        self.class
    }

    pub fn finish(&self) -> FinishSpec {
        self.finish
    }

    pub fn n(&self) -> usize {
        match &self.state {
            State::UnionFind(uf) => uf.len(),
            State::MinBased { labels, .. } => labels.len(),
        }
    }

    /// Applies the batch and answers its queries, in query order.
    ///
    /// A true answer means the pair is connected by the edges of this and
    /// earlier batches; a false answer means it was not connected by the
    /// earlier batches alone.
    pub fn process_batch(&mut self, batch: &Batch) -> Result<Vec<bool>> {
        let n = self.n();
        if let Some(&(u, v)) = batch
            .inserts
            .iter()
            .chain(&batch.queries)
            .find(|&&(u, v)| u >= n || v >= n)
        {
            return Err(Error::InvalidParameter(format!(
                "pair ({u},{v}) out of range for n = {n}"
            )));
        }
        let answers: Vec<AtomicBool> = (0..batch.queries.len()).map(|_| AtomicBool::new(false)).collect();
        let answer = |i: usize, yes: bool| answers[i].store(yes, Relaxed);
        match (&self.state, self.class) {
            (State::UnionFind(uf), StreamClass::WaitFree) => {
                // One pool of operations, inserts and queries interleaved.
                let total = batch.inserts.len() + batch.queries.len();
                (0..total).into_par_iter().for_each(|i| {
                    let (is_query, idx) = interleave(i, batch.inserts.len(), batch.queries.len());
                    if is_query {
                        let (u, v) = batch.queries[idx];
                        answer(idx, uf.is_connected(u, v));
                    } else {
                        let (u, v) = batch.inserts[idx];
                        uf.unite(u, v);
                    }
                });
            }
            (State::UnionFind(uf), _) => {
                batch.inserts.par_iter().for_each(|&(u, v)| {
                    uf.unite(u, v);
                });
                batch.queries.par_iter().enumerate().for_each(|(i, &(u, v))| {
                    answer(i, uf.is_connected(u, v));
                });
            }
            (State::MinBased { method, labels }, _) => {
                let edges = WorkEdges::symmetric(&batch.inserts);
                let (res, ()) = rayon::join(
                    || method.run(&edges, labels, &RoundOptions::default()),
                    || {
                        batch.queries.par_iter().enumerate().for_each(|(i, &(u, v))| {
                            answer(i, labels_connected(labels, u, v));
                        })
                    },
                );
                res?;
            }
        }
        Ok(answers.into_iter().map(AtomicBool::into_inner).collect())
    }

    /// Canonical labels of everything inserted so far. Call between batches.
    pub fn final_labels(&self) -> Vec<usize> {
        match &self.state {
            State::UnionFind(uf) => canonicalize(&uf.parents().to_vec()),
            State::MinBased { labels, .. } => canonicalize(&labels.to_vec()),
        }
    }
}

/// Maps position `i` of a merged operation sequence to an insert or query,
/// spreading the shorter list evenly through the longer one.
fn interleave(i: usize, inserts: usize, queries: usize) -> (bool, usize) {
    let total = inserts + queries;
    // Number of queries among positions [0, pos).
    let before = |pos: usize| (pos * queries).div_ceil(total.max(1));
    let q_before = before(i);
    let q_through = before(i + 1);
    if q_through > q_before {
        (true, q_before)
    } else {
        (false, i - q_before)
    }
}

/// Query against a min-based label array that rounds may be updating.
/// Labels never exceed their slot, so walks terminate.
fn labels_connected(labels: &ParentArray, u: VertexId, v: VertexId) -> bool {
    let root = |mut x: usize| loop {
        let p = labels.get(x);
        if p == x {
            return x;
        }
        x = p;
    };
    loop {
        let ru = root(u);
        let rv = root(v);
        if ru == rv {
            return true;
        }
        if labels.get(ru) == ru {
            return false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::symmetrize;

    fn spec(s: &str) -> AlgorithmSpec {
        s.parse().unwrap()
    }

    #[test]
    fn classes() {
        assert_eq!(
            StreamEngine::new(8, &spec("uf_async;find_naive")).unwrap().class(),
            StreamClass::WaitFree
        );
        assert_eq!(
            StreamEngine::new(8, &spec("uf_rem_cas;splice_atomic;find_naive"))
                .unwrap()
                .class(),
            StreamClass::PhaseConcurrent
        );
        assert_eq!(
            StreamEngine::new(8, &spec("sv")).unwrap().class(),
            StreamClass::RoundSynchronous
        );
        assert!(matches!(
            StreamEngine::new(8, &spec("label_prop")),
            Err(Error::Ineligible(_))
        ));
        assert!(StreamEngine::new(8, &spec("lt_cusa")).is_err());
        assert_eq!(
            StreamEngine::new(8, &spec("uf_async;find_naive"))
                .unwrap()
                .final_labels(),
            (0..8).collect::<Vec<_>>()
        );
    }

    #[test]
    fn interleave_is_a_bijection() {
        for (a, b) in [(0, 0), (3, 0), (0, 4), (5, 2), (2, 7), (10, 10)] {
            let mut ins = vec![0; a];
            let mut qs = vec![0; b];
            for i in 0..a + b {
                match interleave(i, a, b) {
                    (true, j) => qs[j] += 1,
                    (false, j) => ins[j] += 1,
                }
            }
            assert!(ins.iter().chain(&qs).all(|&c| c == 1), "{a} {b}");
        }
    }

    #[test]
    fn initial_graph_is_visible() {
        let g = symmetrize(&[(0, 1), (1, 2)], 4).unwrap();
        for s in ["uf_rem_cas;split_atomic_one;find_naive", "kout + sv", "lt_prf"] {
            let mut e = StreamEngine::initialize(&g, &spec(s)).unwrap();
            let batch = Batch {
                inserts: vec![],
                queries: vec![(0, 2), (0, 3)],
            };
            assert_eq!(e.process_batch(&batch).unwrap(), vec![true, false], "{s}");
        }
    }

    #[test]
    fn phase_concurrent_sees_own_inserts() {
        let mut e = StreamEngine::new(3, &spec("uf_rem_lock;splice_atomic;find_naive")).unwrap();
        let batch = Batch {
            inserts: vec![(0, 1), (1, 2)],
            queries: vec![(0, 2)],
        };
        assert_eq!(e.process_batch(&batch).unwrap(), vec![true]);
    }

    #[test]
    fn out_of_range_rejected() {
        let mut e = StreamEngine::new(3, &spec("sv")).unwrap();
        let batch = Batch {
            inserts: vec![(0, 3)],
            queries: vec![],
        };
        assert!(e.process_batch(&batch).is_err());
    }
}
