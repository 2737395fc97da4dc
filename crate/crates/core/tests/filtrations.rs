mod common;

use common::{hypergraph, labeled_at, static_relbs, static_resbs, Labeled};
use hyperph::{
    betti_oracle, build_scc_filtration, compute_persistence, downward_closure, relative_subdivision,
    restricted_subdivision, Cell, FilteredComplex, FiltrationKind, Hypergraph, Simplex,
};
use proptest::prelude::*;

fn check_nested(k: &FilteredComplex) {
    k.validate().unwrap();
    let values = k.values();
    for w in values.windows(2) {
        let (small, large) = (k.restrict(w[0]), k.restrict(w[1]));
        for (s, _) in small.simplices() {
            assert!(large.contains(s));
        }
    }
}

fn scc_static(h: &Hypergraph, t: u32) -> Vec<Simplex> {
    let mut v: Vec<Simplex> = downward_closure(&h.prefix(t), 2).simplices().iter().map(|(s, _)| s.clone()).collect();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn relbs_prefix_matches_static_construction(h in hypergraph(8, 8, 4, 5)) {
        let s = relative_subdivision(&h);
        for t in 0..5 {
            prop_assert_eq!(labeled_at(&s, t), static_relbs(&h, t), "t = {}", t);
        }
    }

    #[test]
    fn resbs_prefix_matches_static_construction(h in hypergraph(8, 8, 4, 5)) {
        let s = restricted_subdivision(&h);
        for t in 0..5 {
            prop_assert_eq!(labeled_at(&s, t), static_resbs(&h, t), "t = {}", t);
        }
    }

    #[test]
    fn scc_prefix_matches_closure_of_prefix(h in hypergraph(8, 8, 4, 5)) {
        let k = build_scc_filtration(&h);
        for t in 0..5 {
            let mut at: Vec<Simplex> = k.restrict(t).simplices().iter().map(|(s, _)| s.clone()).collect();
            at.sort();
            prop_assert_eq!(at, scc_static(&h, t));
        }
    }

    #[test]
    fn every_builder_is_nested_and_valid(h in hypergraph(8, 8, 4, 5)) {
        for kind in FiltrationKind::ALL {
            check_nested(&kind.build(&h));
        }
    }

    #[test]
    fn vertex_counts(h in hypergraph(8, 8, 4, 5)) {
        let distinct = common::hyperedge_sets(&h).len();
        prop_assert_eq!(restricted_subdivision(&h).complex.counts()[0], distinct);
        let missing = common::full_closure(&h).len() > distinct;
        let rel = relative_subdivision(&h);
        prop_assert_eq!(rel.complex.counts()[0], distinct + usize::from(missing));
        prop_assert_eq!(rel.cells.contains(&Cell::Quotient), missing);
    }

    #[test]
    fn closure_is_monotone_in_the_hypergraph(h in hypergraph(8, 8, 4, 5), extra in prop::collection::btree_set(0u32..8, 1..=3)) {
        let before = build_scc_filtration(&h);
        let mut edges = h.edges().to_vec();
        let t = h.max_arrival().unwrap_or(0) + 1;
        let n = h.num_vertices().max(8);
        edges.push(hyperph::Hyperedge::new(extra.into_iter().collect(), t).unwrap());
        let bigger = Hypergraph::new("g", n, edges).unwrap();
        let after = build_scc_filtration(&bigger);
        for (s, v) in before.simplices() {
            prop_assert!(after.value(s).is_some_and(|w| w <= *v));
        }
    }

    #[test]
    fn static_and_incremental_relbs_have_same_betti(h in hypergraph(6, 6, 3, 4)) {
        let k = relative_subdivision(&h).complex;
        let b = compute_persistence(&k).unwrap();
        for t in 0..4 {
            let (b0, b1) = betti_oracle(&k, t);
            prop_assert_eq!(b.alive_count(0, t), b0);
            prop_assert_eq!(b.alive_count(1, t), b1);
        }
    }
}

fn open_triangle() -> Hypergraph {
    Hypergraph::from_edge_lists("open_triangle", [vec![1], vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
}

#[test]
fn open_triangle_final_static_shapes() {
    let h = open_triangle();
    let he = |v: &[u32]| Cell::Hyperedge(v.to_vec());
    let rel = labeled_at(&relative_subdivision(&h), u32::MAX);
    let expected = Labeled {
        vertices: [Cell::Quotient, he(&[1]), he(&[0, 1]), he(&[1, 2]), he(&[0, 2])].into_iter().collect(),
        edges: [
            [he(&[1]), he(&[0, 1])],
            [he(&[1]), he(&[1, 2])],
            [he(&[0, 1]), Cell::Quotient],
            [he(&[1, 2]), Cell::Quotient],
            [he(&[0, 2]), Cell::Quotient],
        ]
        .into_iter()
        .map(|e| e.into_iter().collect())
        .collect(),
        triangles: Default::default(),
    };
    assert_eq!(rel, expected);
    assert_eq!(rel, static_relbs(&h, u32::MAX));

    let res = labeled_at(&restricted_subdivision(&h), u32::MAX);
    assert_eq!(res.vertices.len(), 4);
    assert_eq!(res.edges.len(), 2);
}

#[test]
fn open_triangle_scc_dump() {
    // a=0, b=1, c=2 with arrivals b:0, ab:1, bc:2, ac:3
    assert_eq!(build_scc_filtration(&open_triangle()).dump(), "1\t0\n0\t1\n0,1\t1\n2\t2\n1,2\t2\n0,2\t3\n");
}

#[test]
fn relbs_dedups_parallel_edge_at_earliest_value() {
    // {0,1} at 0 has missing subsets {0},{1}; later the superset {0,1,2}
    // offers another route to p. One edge, value 0.
    let h = Hypergraph::from_edge_lists("g", [vec![0, 1], vec![0, 1, 2]]).unwrap();
    let s = relative_subdivision(&h);
    let e = s.cells.iter().position(|c| *c == Cell::Hyperedge(vec![0, 1])).unwrap() as u32;
    let p = s.cells.iter().position(|c| *c == Cell::Quotient).unwrap() as u32;
    assert_eq!(s.complex.value(&Simplex::edge(e, p)), Some(0));
    assert_eq!(s.complex.simplices().iter().filter(|(x, _)| x.dim() == 1 && x.vertices().contains(&p)).count(), 2);
}

#[test]
fn large_hyperedge_does_not_enumerate_closure() {
    // 24 vertices: 2^24 subsets, handled by counting
    let h = Hypergraph::from_edge_lists("big", [vec![0], (0..24).collect::<Vec<u32>>()]).unwrap();
    let s = relative_subdivision(&h);
    assert_eq!(s.complex.counts(), [3, 3, 0]);
    assert_eq!(betti_oracle(&s.complex, 1), (1, 1));
}
