//! Cross-module checks: the min-degree lemma conclusion on dense k-partite
//! graphs, conjecture verification end to end, and the counterexample
//! pipeline driven through the library (not the CLI).

use num::{BigRational, One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use genset::kneser::{chromatic_number, disjointness_graph, turan_graph, Graph};
use genset::search::{counterexample_family, verify_conjecture, Budget};
use genset::setfam::SetFamily;
use genset::stability::{kpartization_distance_exact, min_degree_prune};

/// The min-degree lemma conclusion: a k-partite graph with
/// e >= (1 - 1/k - delta) n^2 / 2 prunes to an induced subgraph of order
/// at least (1 - sqrt(delta)) n whose min degree clears the threshold.
#[test]
fn prune_conclusion_on_dense_kpartite_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for k in 2..=4usize {
        for n in [k * 3, k * 4, 14] {
            // start from the Turán graph and remove a few edges
            let turan = turan_graph(k, n).unwrap();
            let mut g = Graph::new(n).unwrap();
            let mut removed = 0u64;
            for (u, v) in turan.edges() {
                if removed < 2 && rng.gen_bool(0.1) {
                    removed += 1;
                    continue;
                }
                g.add_edge(u, v).unwrap();
            }
            // choose the smallest power-of-two-denominator delta that makes
            // the density hypothesis hold: e >= (1 - 1/k - delta) n^2 / 2
            let e = BigRational::from_integer((g.edge_count()).into());
            let n_rat = BigRational::from_integer((n as u64).into());
            let mut delta = BigRational::new(1.into(), 64.into());
            loop {
                let needed = (BigRational::one()
                    - BigRational::new(1.into(), (k as u64).into())
                    - &delta)
                    * &n_rat
                    * &n_rat
                    / BigRational::from_integer(2.into());
                if e >= needed {
                    break;
                }
                delta *= BigRational::from_integer(2.into());
                assert!(delta <= BigRational::one(), "delta escaped [0,1]");
            }
            let result = min_degree_prune(&g, k, &delta).unwrap();
            let kept = result.graph.order() as u64;
            // order >= (1 - sqrt(delta)) n  <=>  (n - kept)^2 <= delta n^2
            let shortfall = BigRational::from_integer((n as u64 - kept).into());
            assert!(
                &shortfall * &shortfall <= &delta * &n_rat * &n_rat,
                "pruned too far at k={k} n={n}: kept {kept}, delta {delta}"
            );
            // fixed point: min degree clears the threshold at the final order
            let one_minus = BigRational::one() - BigRational::new(1.into(), (k as u64).into());
            for v in 0..result.graph.order() {
                let deg = BigRational::from_integer((result.graph.degree(v) as u64).into());
                let slack =
                    &one_minus * BigRational::from_integer((kept - 1).into()) - deg;
                let below = slack.is_positive()
                    && &slack * &slack
                        > &delta
                            * BigRational::from_integer((kept - 1).into())
                            * BigRational::from_integer((kept - 1).into());
                assert!(!below, "survivor {v} below threshold at k={k} n={n}");
            }
        }
    }
}

#[test]
fn conjecture_reports_for_the_small_grid() {
    for (n, k) in [(4u32, 2u32), (5, 2), (4, 3), (5, 3), (3, 3)] {
        let report = verify_conjecture(n, k, &Budget::default()).unwrap();
        assert!(report.sizes_match, "(n,k)=({n},{k})");
        if n > 2 * k {
            assert!(report.uniqueness_checked);
            assert_eq!(report.all_optima_canonical, Some(true));
            assert_eq!(report.counts_match, Some(true));
        }
    }
}

#[test]
fn conjecture_with_uniqueness_at_six_two() {
    // n = 6 > 2k: full enumeration, ten optima, one per balanced partition
    let report = verify_conjecture(6, 2, &Budget::default()).unwrap();
    assert!(report.sizes_match);
    assert_eq!(report.min_size, 14);
    assert!(report.uniqueness_checked);
    assert_eq!(report.optima_count, Some(10));
    assert_eq!(report.balanced_partition_count, Some(10));
    assert_eq!(report.all_optima_canonical, Some(true));
    assert_eq!(report.counts_match, Some(true));
}

#[test]
fn counterexample_obstruction_pipeline() {
    // the induced graph on the 2-element members of A(6) is K(6,2):
    // chromatic number 4, hence tripartization distance at least 1
    let family = counterexample_family(6).unwrap();
    let two: Vec<u32> = family
        .iter()
        .filter(|m| m.cardinality() == 2)
        .map(|m| m.bits())
        .collect();
    let graph = disjointness_graph(&SetFamily::from_bits(6, &two).unwrap()).unwrap();
    assert_eq!(chromatic_number(&graph).unwrap(), 4);
    let distance = kpartization_distance_exact(&graph, 3).unwrap();
    assert!(distance >= 1);
    // and 4 colors are enough: distance for k=4 is 0
    assert_eq!(kpartization_distance_exact(&graph, 4).unwrap(), 0);
}
