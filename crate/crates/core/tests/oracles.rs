use std::collections::BTreeMap;
use std::sync::Arc;

use ribbon_core::cobordism::{apply_move, ElementaryMove};
use ribbon_core::complex::build_complex;
use ribbon_core::diagram::Sign;
use ribbon_core::frobenius::parse_selector;
use ribbon_core::{knots, with_theory, BarNatan, Homology, LinkDiagram, Theory, F2};
use ribbon_oracles::{dense_summary, fixture, jones, jones_from_euler};

#[test]
fn euler_characteristic_matches_kauffman_bracket() {
    let kh = Theory::<F2>::khovanov();
    for k in knots::up_to(7) {
        let d = k.diagram().unwrap();
        let chi = build_complex(&d, &kh).unwrap().graded_euler_characteristic().unwrap();
        assert_eq!(jones_from_euler(&chi), Some(jones(&d)), "{}", k.name);
    }
}

#[test]
fn bracket_agrees_with_knotinfo() {
    let rows = fixture();
    for k in knots::up_to(8) {
        let row = rows.iter().find(|r| r.name == k.name).unwrap();
        assert_eq!(jones(&k.diagram().unwrap()), row.jones, "{}", k.name);
    }
}

#[test]
fn khovanov_over_f2_matches_knotinfo() {
    let rows = fixture();
    let kh = Theory::<F2>::khovanov();
    for k in knots::up_to(7) {
        let d = k.diagram().unwrap();
        let s = Homology::compute(Arc::new(build_complex(&d, &kh).unwrap())).unwrap().summary(k.name);
        let ours: BTreeMap<(i32, i32), usize> = s.free.iter().map(|f| ((f.r, f.q.unwrap()), f.rank)).collect();
        let row = rows.iter().find(|r| r.name == k.name).unwrap();
        assert_eq!(ours, row.khovanov_f2(), "{}", k.name);
        assert!(s.torsion.is_empty());
    }
}

#[test]
fn reduced_homology_matches_dense_smith_form() {
    for selector in ["bn", "kh-f2", "kh-q", "alpha@0,t/f2", "alpha@1,-1/q", "alpha@0,t/f3"] {
        let t = parse_selector(selector).unwrap();
        for k in knots::up_to(5) {
            let d = k.diagram().unwrap();
            with_theory!(&t, t => {
                let c = Arc::new(build_complex(&d, t).unwrap());
                let mut fast = Homology::compute(c.clone()).unwrap().summary(k.name);
                fast.note = None;
                assert_eq!(fast, dense_summary(&c, k.name), "{selector} {}", k.name);
            });
        }
    }
}

fn mu(d: &LinkDiagram) -> u32 {
    let c = build_complex(d, &BarNatan::bar_natan()).unwrap();
    dense_summary(&c, "").mu.unwrap()
}

fn step(d: &LinkDiagram, m: ElementaryMove) -> LinkDiagram {
    apply_move(d, &m).unwrap().diagram
}

#[test]
fn trefoil_torsion_order_is_stable_under_reidemeister_moves() {
    assert_eq!(mu(&LinkDiagram::unknot()), 0);
    let t = knots::diagram_by_name("3_1").unwrap();
    let e = t.edges();
    let kinked = step(&t, ElementaryMove::r1_plus(e[0], Sign::Negative));
    let bigon = step(&t, ElementaryMove::r2_plus(e[1], e[4]));
    let both = step(&bigon, ElementaryMove::r1_plus(bigon.edges()[2], Sign::Positive));
    for d in [&t, &kinked, &bigon, &both] {
        assert!(d.is_knot() && d.is_planar());
        assert_eq!(mu(d), 1, "{}", d.to_pd_string());
    }
    assert_eq!(mu(&t.mirror()), 1);
}

#[test]
fn bar_natan_torsion_orders_are_read_off_the_dense_form() {
    for k in knots::up_to(6) {
        let c = build_complex(&k.diagram().unwrap(), &BarNatan::bar_natan()).unwrap();
        let s = dense_summary(&c, k.name);
        assert_eq!(s.free_rank(), 2, "{}", k.name);
        assert!(s.mu.unwrap() >= 1, "{}", k.name);
    }
}
