use std::sync::Arc;

use proptest::prelude::*;

use ribbon_core::cobordism::{apply_move, elementary_chain_map, ElementaryMove};
use ribbon_core::complex::build_complex;
use ribbon_core::diagram::Sign;
use ribbon_core::{knots, BarNatan, Homology, HomologySummary, LinkDiagram};

fn start(which: usize) -> LinkDiagram {
    match which {
        0 => LinkDiagram::unknot(),
        1 => knots::diagram_by_name("3_1").unwrap(),
        _ => knots::diagram_by_name("4_1").unwrap(),
    }
}

fn summary(d: &LinkDiagram) -> HomologySummary {
    let c = Arc::new(build_complex(d, &BarNatan::bar_natan()).unwrap());
    Homology::compute(c).unwrap().summary("")
}

fn pick_move(d: &LinkDiagram, kind: u8, a: usize, b: usize, face: usize) -> ElementaryMove {
    let edges = d.edges();
    let e = |i: usize| edges[i % edges.len()];
    match kind % 3 {
        0 => ElementaryMove::r1_plus(e(a), if b.is_multiple_of(2) { Sign::Positive } else { Sign::Negative }),
        1 => ElementaryMove::R1Plus {
            edge: e(a),
            sign: if b.is_multiple_of(2) { Sign::Positive } else { Sign::Negative },
            over_first: true,
            fresh: None,
            position: None,
        },
        _ => ElementaryMove::R2Plus { over: e(a), under: e(b), face: face % 2, directions: None, fresh: None, positions: None },
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reidemeister_moves_keep_diagrams_valid_and_invert(
        which in 0usize..3,
        moves in proptest::collection::vec((0u8..3, 0usize..64, 0usize..64, 0usize..2), 1..4),
    ) {
        let mut d = start(which);
        for (kind, a, b, face) in moves {
            let m = pick_move(&d, kind, a, b, face);
            let Ok(out) = apply_move(&d, &m) else { continue };
            prop_assert!(out.diagram.is_planar(), "{m} on {}", d.to_pd_string());
            prop_assert_eq!(out.diagram.component_count(), d.component_count());
            prop_assert_eq!(out.diagram.crossing_count(), d.crossing_count() + if kind % 3 == 2 { 2 } else { 1 });
            let back = apply_move(&out.diagram, &out.inverse).unwrap().diagram;
            prop_assert_eq!(&back, &d);
            d = out.diagram;
        }
        prop_assert!(summary(&d).same_module(&summary(&start(which))));
    }

    #[test]
    fn reidemeister_chain_maps_are_isomorphisms_on_homology(
        which in 0usize..2,
        (kind, a, b, face) in (0u8..3, 0usize..64, 0usize..64, 0usize..2),
    ) {
        let d = start(which);
        let m = pick_move(&d, kind, a, b, face);
        prop_assume!(apply_move(&d, &m).is_ok());
        let t = BarNatan::bar_natan();
        let f = elementary_chain_map(&d, &m, &t).unwrap();
        prop_assert!(f.is_chain_map());
        let out = apply_move(&d, &m).unwrap();
        let g = elementary_chain_map(&out.diagram, &out.inverse, &t).unwrap();
        let round = g.compose(&f).unwrap();
        let h = Homology::compute(round.source.clone()).unwrap();
        let induced = ribbon_core::homology::induced_map(&round, &h, &h).unwrap();
        prop_assert_eq!(induced, h.identity_map());
    }
}
