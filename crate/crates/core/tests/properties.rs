mod common;

use std::sync::Mutex;

use proptest::prelude::*;

use connectit::amsf::{amsf, AmsfVariant};
use connectit::driver::{canonicalize, connectivity, spanning_forest, AlgorithmSpec, FinishSpec};
use connectit::dsu::{ForestEdges, ParentArray, UnionFind, UnionFindSpec, UnionKernel};
use connectit::graph::{parse_adjacency_graph, symmetrize, write_adjacency_graph, EdgeList, Graph};
use connectit::minbased::{MinBasedSpec, RoundOptions, WorkEdges};
use connectit::sampling::{KOutVariant, SamplingScheme, SamplingSpec};
use connectit::streaming::{Batch, StreamClass, StreamEngine};

use common::*;

fn small_graph() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..40).prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..3 * n)))
}

fn any_spec() -> impl Strategy<Value = AlgorithmSpec> {
    let grid = AlgorithmSpec::grid();
    (0..grid.len(), any::<u64>()).prop_map(move |(i, seed)| grid[i].with_seed(seed))
}

fn root_based_spec() -> impl Strategy<Value = AlgorithmSpec> {
    let grid: Vec<_> = AlgorithmSpec::grid()
        .into_iter()
        .filter(|s| s.finish.is_root_based())
        .collect();
    (0..grid.len(), any::<u64>()).prop_map(move |(i, seed)| grid[i].with_seed(seed))
}

fn sampling_spec() -> impl Strategy<Value = SamplingSpec> {
    (
        0..SamplingScheme::ALL.len(),
        1usize..5,
        0..KOutVariant::ALL.len(),
        1usize..5,
        0.01f64..0.9,
        0.01f64..1.0,
        any::<bool>(),
        any::<u64>(),
    )
        .prop_map(|(s, k, v, rounds, thr, beta, permute, seed)| {
            let mut spec = SamplingSpec::new(SamplingScheme::ALL[s]).with_seed(seed);
            spec.kout_k = k;
            spec.kout_variant = KOutVariant::ALL[v];
            spec.bfs_rounds = rounds;
            spec.bfs_threshold = thr;
            spec.ldd_beta = beta;
            spec.ldd_permute = permute;
            spec
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn every_spec_matches_oracle((n, edges) in small_graph(), spec in any_spec()) {
        let g = symmetrize(&edges, n).unwrap();
        let report = connectivity(&g, &spec).unwrap();
        prop_assert_eq!(&report.canonical_labels, &partition(n, &edges));
        prop_assert_eq!(report.num_components, count_components(&report.canonical_labels));
    }

    #[test]
    fn forests_are_spanning((n, edges) in small_graph(), spec in root_based_spec()) {
        let g = symmetrize(&edges, n).unwrap();
        let (forest, _) = spanning_forest(&g, &spec).unwrap();
        prop_assert_eq!(forest_violation(&g, &forest), None);
    }

    #[test]
    fn sampling_is_sound_and_flat((n, edges) in small_graph(), spec in sampling_spec()) {
        let g = symmetrize(&edges, n).unwrap();
        let forest = ForestEdges::new(n);
        let labels = spec.sample(&g, Some(&forest)).unwrap().labels.to_vec();
        let oracle = partition(n, &edges);
        for v in 0..n {
            let l = labels[v];
            prop_assert_eq!(labels[l], l, "height one");
            prop_assert_eq!(oracle[v], oracle[l], "label crosses components");
        }
        // Recorded edges form a spanning forest of each sampled cluster.
        let mut d = Dsu::new(n);
        for e in forest.edge_ids() {
            let (u, v) = g.edge_endpoints(e);
            prop_assert_eq!(labels[u], labels[v]);
            prop_assert!(d.union(u, v), "cycle in sampled forest");
        }
        prop_assert_eq!(d.canonical(), canonicalize(&labels));
    }

    #[test]
    fn sampling_spec_strings_round_trip(spec in sampling_spec()) {
        let text = spec.to_string();
        let back: SamplingSpec = text.parse().unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back.scheme, spec.scheme);
        prop_assert_eq!(back.seed, spec.seed);
    }

    #[test]
    fn union_find_links_down((n, edges) in small_graph(), i in 0usize..36, seed in any::<u64>()) {
        let spec = UnionFindSpec::all_valid()[i];
        let uf = UnionFind::new(spec, n, seed);
        let mut d = Dsu::new(n);
        for &(u, v) in &edges {
            prop_assert_eq!(uf.unite(u, v), d.union(u, v));
            if spec.kernel != UnionKernel::Jtb {
                let p = uf.parents().to_vec();
                prop_assert!((0..n).all(|x| p[x] <= x));
            }
        }
        for &(u, v) in &edges {
            prop_assert!(uf.is_connected(u, v));
        }
        prop_assert_eq!(canonicalize(&uf.parents().to_vec()), d.canonical());
    }

    #[test]
    fn min_based_labels_never_rise((n, edges) in small_graph(), i in 0usize..19) {
        let method = MinBasedSpec::all()[i];
        let labels = ParentArray::identity(n);
        let last = Mutex::new((0..n).collect::<Vec<_>>());
        let violation = Mutex::new(None);
        let check = |now: &ParentArray| {
            let now = now.to_vec();
            let mut prev = last.lock().unwrap();
            if let Some(v) = (0..now.len()).find(|&v| now[v] > prev[v] || now[v] > v) {
                *violation.lock().unwrap() = Some(v);
            }
            *prev = now;
        };
        let opts = RoundOptions { forest: None, on_round: Some(&check) };
        method.run(&WorkEdges::symmetric(&edges), &labels, &opts).unwrap();
        prop_assert_eq!(*violation.lock().unwrap(), None);
        prop_assert_eq!(canonicalize(&labels.into_vec()), partition(n, &edges));
    }

    #[test]
    fn canonicalize_is_idempotent(parents in prop::collection::vec(any::<prop::sample::Index>(), 1..60)) {
        // Any array with p[x] <= x is a forest.
        let p: Vec<usize> = parents.iter().enumerate().map(|(x, i)| i.index(x + 1)).collect();
        let once = canonicalize(&p);
        prop_assert_eq!(canonicalize(&once), once.clone());
        let pairs: Vec<(usize, usize)> = p.iter().enumerate().map(|(x, &q)| (x, q)).collect();
        prop_assert_eq!(once, partition(p.len(), &pairs));
    }

    #[test]
    fn streaming_matches_static((n, edges) in small_graph(), i in 0usize..55, batch in 1usize..12) {
        let finish = FinishSpec::all()[i];
        prop_assume!(StreamClass::of(&finish).is_ok());
        let mut engine = StreamEngine::new(n, &AlgorithmSpec::unsampled(finish)).unwrap();
        // Only pairs inserted by earlier batches are guaranteed visible.
        let mut previous = Vec::new();
        for chunk in edges.chunks(batch) {
            let batch = Batch { inserts: chunk.to_vec(), queries: previous };
            let answers = engine.process_batch(&batch).unwrap();
            prop_assert!(answers.iter().all(|&a| a), "earlier insert reported disconnected");
            previous = batch.inserts;
        }
        prop_assert_eq!(engine.final_labels(), partition(n, &edges));
    }

    #[test]
    fn amsf_within_factor(
        (n, edges) in small_graph(),
        weights in prop::collection::vec(0.01f64..100.0, 120),
        eps in 0.05f64..1.0,
        v in 0usize..3,
        seed in any::<u64>(),
    ) {
        let w: Vec<f64> = (0..edges.len()).map(|i| weights[i % weights.len()]).collect();
        let list = EdgeList::weighted(n, edges.clone(), w.clone());
        let r = amsf(&list, eps, AmsfVariant::ALL[v], seed).unwrap();
        let mut got: Vec<f64> = r.forest.iter().map(|&i| w[i]).collect();
        got.sort_by(f64::total_cmp);
        let opt = kruskal_weights(&list);
        prop_assert_eq!(got.len(), opt.len());
        // Elementwise domination of the sorted weights implies the sandwich.
        for (a, o) in got.iter().zip(&opt) {
            prop_assert!(*a >= *o && *a <= (1.0 + eps) * *o * (1.0 + 1e-12), "{} vs {}", a, o);
        }
        let g = Graph::try_from(&list).unwrap();
        let forest: Vec<(usize, usize)> = r.forest.iter().map(|&i| edges[i]).collect();
        prop_assert_eq!(forest_violation(&g, &forest), None);
    }

    #[test]
    fn adjacency_text_round_trips((n, edges) in small_graph()) {
        let g = symmetrize(&edges, n).unwrap();
        prop_assert_eq!(parse_adjacency_graph(&write_adjacency_graph(&g)).unwrap(), g);
    }
}
