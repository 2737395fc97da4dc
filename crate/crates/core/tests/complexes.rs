mod common;

use common::complex;
use hyperph::{
    barycentric_subdivision, betti_oracle, compute_persistence, compute_persistence_with, PersistenceOptions,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    #[test]
    fn persistence_matches_oracle(k in complex(12, 6)) {
        let b = compute_persistence(&k).unwrap();
        for t in 0..6 {
            let (b0, b1) = betti_oracle(&k, t);
            prop_assert_eq!(b.alive_count(0, t), b0, "dim 0 at {}", t);
            prop_assert_eq!(b.alive_count(1, t), b1, "dim 1 at {}", t);
        }
    }

    #[test]
    fn persistence_is_deterministic(k in complex(12, 6)) {
        prop_assert_eq!(compute_persistence(&k).unwrap(), compute_persistence(&k.clone()).unwrap());
    }

    #[test]
    fn every_simplex_is_creator_or_destroyer(k in complex(12, 6)) {
        let p = compute_persistence_with(&k, PersistenceOptions { include_zero_bars: true }).unwrap();
        let finite = p.barcode.pairs.iter().filter(|x| !x.is_infinite()).count();
        let infinite = p.barcode.pairs.len() - finite;
        let [v, e, t] = k.counts();
        prop_assert_eq!(2 * finite + infinite + p.unpaired_triangles, v + e + t);
    }

    #[test]
    fn zero_bars_only_differ_by_dropped(k in complex(12, 6)) {
        let all = compute_persistence_with(&k, PersistenceOptions { include_zero_bars: true }).unwrap();
        let some = compute_persistence_with(&k, PersistenceOptions::default()).unwrap();
        prop_assert_eq!(
            all.barcode.pairs.len(),
            some.barcode.pairs.len() + some.dropped_zero_bars[0] + some.dropped_zero_bars[1]
        );
        prop_assert!(some.barcode.pairs.iter().all(|p| p.death != Some(p.birth)));
    }

    #[test]
    fn infinite_dim0_bars_count_components(k in complex(12, 6)) {
        let b = compute_persistence(&k).unwrap();
        let (b0, _) = betti_oracle(&k, u32::MAX);
        prop_assert_eq!(b.dim(0).filter(|p| p.is_infinite()).count(), b0);
    }

    #[test]
    fn subdivision_preserves_homology(k in complex(12, 4)) {
        let bs = barycentric_subdivision(&k);
        bs.validate().unwrap();
        for t in 0..4 {
            prop_assert_eq!(betti_oracle(&bs, t), betti_oracle(&k, t));
        }
    }

    #[test]
    fn subdivision_chain_counts(k in complex(12, 4)) {
        let bs = barycentric_subdivision(&k);
        let s = k.simplices();
        let pairs = s.iter().flat_map(|(a, _)| s.iter().map(move |(b, _)| (a, b)))
            .filter(|(a, b)| a.is_proper_face_of(b))
            .count();
        let c = bs.counts();
        prop_assert_eq!(c[0], k.len());
        prop_assert_eq!(c[1], pairs);
    }
}

#[test]
fn elder_rule_on_merge() {
    use hyperph::{FilteredComplex, PersistencePair, Simplex};
    let k =
        FilteredComplex::from_simplices([(Simplex::vertex(0), 2), (Simplex::vertex(1), 0), (Simplex::edge(0, 1), 4)])
            .unwrap();
    let b = compute_persistence(&k).unwrap();
    assert_eq!(b.pairs, vec![PersistencePair::infinite(0, 0), PersistencePair::finite(0, 2, 4)]);
}
