mod common;

use basis_core::cover::{build_universal_cover, default_budget, sheets, CoverError};
use basis_core::matroid::{antipodal_action, quotient, DEFAULT_BASES_BUDGET};
use basis_core::{basis_graph, Graph};
use common::{coset_count, pi1_order, COSET_CAP};

/// Sheets of the constructed cover, retrying once with room for `hint` sheets.
fn cover_sheets(g: &Graph, hint: Option<usize>) -> Option<usize> {
    match build_universal_cover(g, 0, default_budget(g)) {
        Ok(state) => Some(sheets(&state).unwrap()),
        Err(CoverError::BudgetExceeded { .. }) => {
            let k = hint?;
            Some(sheets(&build_universal_cover(g, 0, k * g.n()).ok()?).unwrap())
        }
        Err(e) => panic!("{e}"),
    }
}

#[test]
fn enumerator_on_known_presentations() {
    let (a, ai, b, bi) = (0, 1, 2, 3);
    assert_eq!(coset_count(1, &[vec![a; 7]], 100), Some(7));
    // S3, A5 and the quaternions.
    assert_eq!(coset_count(2, &[vec![a, a], vec![b, b, b], vec![a, b, a, b]], 1000), Some(6));
    let ab5: Vec<usize> = [a, b].repeat(5);
    assert_eq!(coset_count(2, &[vec![a, a], vec![b, b, b], ab5], 1000), Some(60));
    assert_eq!(coset_count(2, &[vec![a; 4], vec![a, a, bi, bi], vec![bi, a, b, a]], 1000), Some(8));
    // Z^2 never closes.
    assert_eq!(coset_count(2, &[vec![a, b, ai, bi]], 1000), None);
    assert_eq!(coset_count(2, &[], 1000), None);
}

#[test]
fn oracle_on_small_complexes() {
    for g in [Graph::empty(1), Graph::path(4), Graph::complete(3), Graph::cycle(4), Graph::octahedron(), Graph::wheel(5)] {
        assert_eq!(pi1_order(&g, COSET_CAP), Some(1), "{g:?}");
    }
    for n in 5..=8 {
        assert_eq!(pi1_order(&Graph::cycle(n), 1000), None);
    }
    // Two squares glued along a path of length two.
    let g = Graph::complete_bipartite(2, 3);
    assert_eq!(pi1_order(&g, COSET_CAP), Some(1));
}

#[test]
fn corpus_census() {
    // Connected graphs with e edges, e = 0..=8, up to isomorphism.
    let expected = [1, 1, 1, 3, 5, 12, 30, 79, 227];
    let graphs = common::connected_graphs(8);
    for (e, &count) in expected.iter().enumerate() {
        assert_eq!(graphs.iter().filter(|g| g.edge_count() == e).count(), count, "{e} edges");
    }
    assert_eq!(common::uniform_corpus().len(), 28);
}

#[test]
fn sheets_match_oracle_on_corpus() {
    let mut compared = 0;
    for (name, ss) in common::matroid_corpus() {
        let g = basis_graph(&ss).graph;
        if g.n() > 12 {
            continue;
        }
        let order = pi1_order(&g, COSET_CAP);
        assert_eq!(cover_sheets(&g, order), order, "{name}");
        compared += 1;
    }
    assert!(compared > 300, "only {compared} complexes compared");
}

#[test]
fn sheets_match_oracle_on_antipodal_quotients() {
    for n in 2..=5 {
        let (_, action) = antipodal_action::<u64>(n, DEFAULT_BASES_BUDGET).unwrap();
        let q = quotient(&action).unwrap().graph;
        let order = pi1_order(&q, COSET_CAP);
        assert_eq!(order, Some(if n == 5 { 2 } else { 1 }), "H_{n}");
        assert_eq!(cover_sheets(&q, order), order, "H_{n}");
    }
}

#[test]
fn cycles_have_no_finite_cover() {
    for n in 5..=9 {
        let g = Graph::cycle(n);
        assert_eq!(pi1_order(&g, 1000), None);
        assert!(matches!(build_universal_cover(&g, 0, 1000), Err(CoverError::BudgetExceeded { .. })));
    }
}
