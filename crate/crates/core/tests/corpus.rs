mod common;

use basis_core::conditions::{check_interval_condition, check_local_positioning, check_local_triangle};
use basis_core::graph::certificate;
use basis_core::matroid::{uniform_matroid, verify_matroid, DEFAULT_BASES_BUDGET};
use basis_core::reconstruct::ReconstructOptions;
use basis_core::{basis_graph, maurer_check, reconstruct_matroid, CheckOptions, Graph, Mode, SetSystem64};
use proptest::prelude::*;

#[test]
fn basis_graphs_satisfy_interval_positioning_and_link() {
    let corpus = common::matroid_corpus();
    assert!(corpus.len() > 380);
    let bad = common::conjecture_counterexamples(&corpus);
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn local_conditions_imply_their_consequences() {
    let corpus: Vec<(String, Graph)> =
        common::matroid_corpus().into_iter().map(|(name, ss)| (name, basis_graph(&ss).graph)).collect();
    let random = common::random_graphs(1000, 0);
    let graphs = corpus
        .iter()
        .map(|(name, g)| (name.clone(), g))
        .chain(random.iter().enumerate().map(|(i, g)| (format!("random #{i}"), g)));
    let (hypotheses, bad) = common::local_implication_failures(graphs);
    assert!(bad.is_empty(), "{bad:#?}");
    // Every corpus member meets the hypotheses.
    assert!(hypotheses >= corpus.len());
}

#[test]
fn graphic_matroids_round_trip() {
    for (name, ss) in common::graphic_corpus() {
        let g = basis_graph(&ss).graph;
        let rec = reconstruct_matroid::<u64>(&g, &ReconstructOptions::default())
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(verify_matroid(&rec.matroid).holds(), "{name}");
        let back = basis_graph(&rec.matroid).graph;
        assert_eq!(certificate(&back, None).unwrap(), certificate(&g, None).unwrap(), "{name}");
    }
}

fn shuffled(g: &Graph, keys: &[u32]) -> Graph {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (keys[v % keys.len()].wrapping_mul(v as u32 + 1), v));
    let mut perm = vec![0; g.n()];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    g.relabel(&perm)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn relabelled_uniform_basis_graphs_round_trip(m in 2usize..=6, k in 1usize..=5, keys in prop::collection::vec(any::<u32>(), 1..8)) {
        prop_assume!(k < m);
        let ss: SetSystem64 = uniform_matroid(m, k, DEFAULT_BASES_BUDGET).unwrap();
        let g = shuffled(&basis_graph(&ss).graph, &keys);
        prop_assert!(maurer_check(&g, Mode::Matroid, &CheckOptions::default()).unwrap().pass);
        let rec = reconstruct_matroid::<u64>(&g, &ReconstructOptions::default()).unwrap();
        let back = basis_graph(&rec.matroid).graph;
        prop_assert_eq!(certificate(&back, None).unwrap(), certificate(&g, None).unwrap());
    }

    #[test]
    fn witnesses_on_random_graphs_revalidate(seed in any::<u64>()) {
        let opts = CheckOptions { max_witnesses: usize::MAX, ..CheckOptions::default() };
        for g in common::random_graphs(4, seed) {
            for r in [check_interval_condition(&g, &opts), check_local_positioning(&g, &opts), check_local_triangle(&g, &opts)] {
                prop_assert_eq!(r.pass, r.witnesses.is_empty());
                prop_assert_eq!(r.stats.violations as usize, r.witnesses.len());
                for w in &r.witnesses {
                    prop_assert!(w.revalidate(&g), "{:?}", w);
                }
            }
        }
    }
}
