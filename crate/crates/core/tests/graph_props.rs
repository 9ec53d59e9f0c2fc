mod common;

use nbrw::families;
use nbrw::{EdgeKind, Graph, Irreducibility};
use proptest::prelude::*;

fn any_multigraph() -> impl Strategy<Value = Graph> {
    (any::<u64>(), 1usize..=12, 0usize..=12)
        .prop_map(|(seed, n, extra)| families::random_multigraph(&mut common::rng(seed), n, extra, true))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn reversal_is_an_involution(g in any_multigraph()) {
        for d in g.darts() {
            let r = g.dart(d.reverse);
            prop_assert_eq!(r.reverse, d.index);
            prop_assert_eq!(r.tail, d.head);
            prop_assert_eq!(r.head, d.tail);
            prop_assert_eq!(r.edge, d.edge);
            let half = g.edges()[d.edge].kind == EdgeKind::HalfLoop;
            prop_assert_eq!(d.reverse == d.index, half);
        }
    }

    #[test]
    fn degrees_and_transitions(g in any_multigraph()) {
        let mut tails = vec![0usize; g.vertex_count()];
        for d in g.darts() {
            tails[d.tail] += 1;
        }
        prop_assert_eq!(&tails[..], g.degrees());
        prop_assert_eq!(g.dart_count(), g.degrees().iter().sum::<usize>());
        for d in g.darts() {
            let succ = g.dart_transitions(d.index);
            prop_assert_eq!(succ.len(), g.degree(d.head) - 1);
            for &f in succ {
                prop_assert_eq!(g.dart(f).tail, d.head);
                prop_assert_ne!(f, d.reverse);
            }
        }
    }

    #[test]
    fn text_round_trip(g in any_multigraph()) {
        let back = Graph::parse_text(&g.to_text()).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(back.vertex_count(), g.vertex_count());
    }
}

#[test]
fn irreducibility_reasons() {
    let two_triangles = Graph::from_pairs(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
    assert_eq!(two_triangles.nb_irreducibility(), Irreducibility::NotConnected);
    let pendant = Graph::from_pairs(4, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3), (3, 3)]).unwrap();
    assert!(pendant.is_nb_irreducible());
    let tail = Graph::from_pairs(4, [(0, 1), (1, 2), (2, 0), (0, 1), (2, 3)]).unwrap();
    assert_eq!(tail.nb_irreducibility(), Irreducibility::MinDegreeBelow2);
    let hexagon = Graph::from_pairs(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
    assert_eq!(hexagon.nb_irreducibility(), Irreducibility::IsCycle);
    assert!(families::k4_minus_edge().is_nb_irreducible());
}
