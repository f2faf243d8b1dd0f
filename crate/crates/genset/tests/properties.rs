//! Property tests for the structural invariants that hold on every input,
//! not just the worked examples.

use proptest::prelude::*;

use genset::bits::binom;
use genset::kneser::{
    disjointness_graph, hom_count, injective_hom_count, Graph, PatternGraph,
};
use genset::setfam::{
    canonical_generator, balanced_partition, counting_lower_bound, enumerate_k_unions,
    is_k_base, is_k_generator, section, SectionKind, SetFamily, SubsetMask,
};

fn family_strategy() -> impl Strategy<Value = SetFamily> {
    (1u32..=6).prop_flat_map(|n| {
        prop::collection::btree_set(0u32..(1u32 << n), 0..=12)
            .prop_map(move |masks| SetFamily::from_bits(n, &masks.into_iter().collect::<Vec<_>>()).unwrap())
    })
}

fn graph_strategy(max_order: usize) -> impl Strategy<Value = Graph> {
    (2usize..=max_order).prop_flat_map(|order| {
        let pairs = order * (order - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |flags| {
            let mut g = Graph::new(order).unwrap();
            let mut idx = 0;
            for u in 0..order {
                for v in u + 1..order {
                    if flags[idx] {
                        g.add_edge(u, v).unwrap();
                    }
                    idx += 1;
                }
            }
            g
        })
    })
}

fn pattern_strategy() -> impl Strategy<Value = PatternGraph> {
    (2usize..=4).prop_flat_map(|order| {
        let pairs = order * (order - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |flags| {
            let mut edges = Vec::new();
            let mut idx = 0;
            for a in 0..order {
                for b in a + 1..order {
                    if flags[idx] {
                        edges.push((a, b));
                    }
                    idx += 1;
                }
            }
            PatternGraph::new(order, &edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn sections_partition_the_family(f in family_strategy(), i in 1u32..=6) {
        prop_assume!(i <= f.ground_n());
        let lower = section(&f, i, SectionKind::Lower).unwrap();
        let upper = section(&f, i, SectionKind::Upper).unwrap();
        prop_assert_eq!(lower.len() + upper.len(), f.len());
        // lower members never contain i; upper members came from ones that did
        prop_assert!(lower.iter().all(|m| !m.contains(i)));
        prop_assert!(upper.iter().all(|m| !m.contains(i)));
    }

    #[test]
    fn coverage_is_monotone_under_growth(f in family_strategy(), extra in 0u32..64, k in 1usize..=3) {
        let n = f.ground_n();
        let extra = extra & ((1u32 << n) - 1);
        let base = enumerate_k_unions(&f, k).unwrap();
        let mut bigger = f.clone();
        bigger.insert(SubsetMask::new(extra, n).unwrap()).unwrap();
        let grown = enumerate_k_unions(&bigger, k).unwrap();
        for x in 0..(1u32 << n) {
            prop_assert!(!base.covered_bits(x) || grown.covered_bits(x),
                "coverage lost at {x:#b} after inserting {extra:#b}");
        }
    }

    #[test]
    fn generator_implies_base(f in family_strategy(), k in 1usize..=3) {
        if is_k_generator(&f, k).unwrap() {
            prop_assert!(is_k_base(&f, k).unwrap());
        }
    }

    #[test]
    fn family_text_round_trips(f in family_strategy()) {
        let text = f.to_text();
        let back = SetFamily::parse_str(&text).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(back.to_text(), text);
    }

    #[test]
    fn generators_obey_the_counting_bound(
        n in 2u32..=6,
        k in 1u32..=3,
        extra in prop::collection::btree_set(1u32..64, 0..=6),
    ) {
        prop_assume!(k <= n);
        // supersets of the canonical generator stay generators
        let mut fam = canonical_generator(&balanced_partition(n, k).unwrap());
        for mask in extra {
            let mask = mask & ((1u32 << n) - 1);
            if mask != 0 {
                fam.insert(SubsetMask::new(mask, n).unwrap()).unwrap();
            }
        }
        prop_assert!(is_k_generator(&fam, k as usize).unwrap());
        prop_assert!(fam.len() as u64 >= counting_lower_bound(n, k));
    }

    #[test]
    fn hom_count_sandwich(p in pattern_strategy(), g in graph_strategy(7)) {
        let f = p.order();
        let n = g.order();
        let hom = hom_count(&p, &g).unwrap();
        let inj = injective_hom_count(&p, &g).unwrap();
        prop_assert!(inj <= hom);
        let slack = binom(f as u64, 2) * (n as u128).pow(f as u32 - 1);
        prop_assert!(hom - inj <= slack,
            "non-injective excess {} above C(f,2) n^(f-1) = {slack}", hom - inj);
    }

    #[test]
    fn disjointness_graph_edges_match_masks(f in family_strategy()) {
        let g = disjointness_graph(&f).unwrap();
        let members = f.members();
        for i in 0..members.len() {
            for j in (i + 1)..members.len() {
                prop_assert_eq!(g.has_edge(i, j), members[i].is_disjoint(&members[j]));
            }
        }
    }
}
