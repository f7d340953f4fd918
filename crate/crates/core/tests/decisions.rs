use ltile::decide::{closed_form_inflated, closed_form_rect, Answer, Decider, Method};
use ltile::groebner::CompletionConfig;
use ltile::oracle::{self, verify_certificate, Window};
use ltile::tilesets::{inflated_l_region, rect_region, CellSet, TileSet};
use ltile::{Domain, Monomial};

#[test]
fn rectangle_decisions_match_closed_form_on_small_grid() {
    let decider = Decider::default();
    for (n, plus) in [(4, false), (4, true), (6, false), (6, true), (8, false)] {
        let table = decider.scan(n, plus, Domain::Z, 2 * n, 2 * n).unwrap();
        assert_eq!(table.disagreements(), 0, "T{n} plus={plus}");
        assert_eq!(table.errors(), 0);
    }
}

#[test]
fn decisions_are_symmetric_and_z_implies_q() {
    let decider = Decider::default();
    for n in [4, 6] {
        for plus in [false, true] {
            for p in 1..=10 {
                for q in 1..=10 {
                    let z = decider.rect(n, plus, Domain::Z, p, q).unwrap().answer;
                    assert_eq!(z, decider.rect(n, plus, Domain::Z, q, p).unwrap().answer);
                    let r = decider.rect(n, plus, Domain::Q, p, q).unwrap().answer;
                    if z.is_yes() {
                        assert!(r.is_yes(), "T{n} plus={plus} {p}x{q}");
                    }
                }
            }
        }
    }
}

#[test]
fn disjoint_union_of_tileable_regions_is_tileable() {
    let decider = Decider::default();
    let tiles = TileSet::ribbon_l(6, false).unwrap();
    let a = rect_region(6, 2).unwrap();
    let b = rect_region(2, 6).unwrap().translate(10, 0);
    for region in [&a, &b] {
        assert!(decider
            .signed_tileable(region, &tiles, Domain::Z, None)
            .unwrap()
            .answer
            .is_yes());
    }
    let joined = a.union(&b);
    let d = decider
        .signed_tileable(&joined, &tiles, Domain::Z, None)
        .unwrap();
    assert_eq!(d.answer, Answer::Yes);
    assert_eq!(d.method, Method::Groebner);
}

#[test]
fn decision_is_translation_invariant() {
    let decider = Decider::default();
    let tiles = TileSet::ribbon_l(8, false).unwrap();
    let region = rect_region(8, 2).unwrap();
    let here = decider
        .signed_tileable(&region, &tiles, Domain::Z, None)
        .unwrap();
    let there = decider
        .signed_tileable(&region.translate(-5, 13), &tiles, Domain::Z, None)
        .unwrap();
    assert_eq!(here.answer, there.answer);
    assert_eq!(here.test_monomial, there.test_monomial);
}

#[test]
fn single_tiles_are_tileable_with_trivial_shift() {
    let decider = Decider::default();
    for n in [4, 6, 8, 10] {
        let tiles = TileSet::ribbon_l(n, false).unwrap();
        for t in &tiles.tiles {
            let d = decider
                .signed_tileable(&t.cells, &tiles, Domain::Z, None)
                .unwrap();
            assert_eq!(d.answer, Answer::Yes);
            assert_eq!(d.test_monomial, Some(Monomial::ONE));
        }
    }
}

#[test]
fn single_cell_is_not_tileable() {
    let decider = Decider::default();
    let cell = CellSet::new([(0, 0)]);
    for (n, plus) in [(4, true), (6, false), (8, true)] {
        let tiles = TileSet::ribbon_l(n, plus).unwrap();
        for domain in [Domain::Z, Domain::Q] {
            let d = decider
                .signed_tileable(&cell, &tiles, domain, None)
                .unwrap();
            assert_eq!(d.answer, Answer::No);
            assert_eq!(d.test_monomial, None);
        }
    }
}

#[test]
fn inflated_l_copies_are_all_tileable() {
    let decider = Decider::default();
    for n in [6, 8] {
        for factor in 1..=4 {
            assert!(
                decider.inflated(n, factor).unwrap().answer.is_yes(),
                "T{n} factor {factor}"
            );
        }
    }
    assert!(closed_form_inflated(6, 3).unwrap());
    assert!(!closed_form_inflated(8, 3).unwrap());
}

#[test]
fn oracle_confirms_odd_inflation_for_t8() {
    let tiles = TileSet::ribbon_l(8, false).unwrap();
    for factor in [1, 3] {
        let region = inflated_l_region(8, factor).unwrap();
        let cert = oracle::solve(&region, &tiles, Domain::Z, 8)
            .unwrap()
            .expect("certificate");
        assert!(verify_certificate(&cert, &region));
    }
}

#[test]
fn oracle_agrees_with_groebner_on_small_rectangles() {
    let decider = Decider::default();
    for (n, plus) in [(4, false), (4, true), (6, false)] {
        let tiles = TileSet::ribbon_l(n, plus).unwrap();
        for domain in [Domain::Z, Domain::Q] {
            for p in 1..=6 {
                for q in p..=6 {
                    let region = rect_region(p, q).unwrap();
                    let cert = oracle::solve(&region, &tiles, domain, n).unwrap();
                    let g = decider.rect(n, plus, domain, p, q).unwrap().answer.is_yes();
                    assert_eq!(cert.is_some(), g, "T{n} plus={plus} {domain} {p}x{q}");
                    if let Some(c) = cert {
                        assert!(verify_certificate(&c, &region));
                    }
                }
            }
        }
    }
}

#[test]
fn oracle_is_monotone_in_window_and_deterministic() {
    let tiles = TileSet::ribbon_l(6, false).unwrap();
    let region = rect_region(4, 6).unwrap();
    let mut found = false;
    for margin in 0..=6 {
        let cert = oracle::solve(&region, &tiles, Domain::Z, margin).unwrap();
        if found {
            assert!(cert.is_some(), "margin {margin} lost a solution");
        }
        found |= cert.is_some();
    }
    assert!(found);
    let window = Window::around(&region, 6).unwrap();
    let a = oracle::solve_in_window(&region, &tiles, Domain::Z, &window)
        .unwrap()
        .unwrap();
    let b = oracle::solve_in_window(&region, &tiles, Domain::Z, &window)
        .unwrap()
        .unwrap();
    assert_eq!(a.to_text(), b.to_text());
}

#[test]
fn scan_reports_resource_cap_per_row() {
    let decider = Decider::new(CompletionConfig { step_cap: 1 });
    let table = decider.scan(6, false, Domain::Z, 3, 3).unwrap();
    assert_eq!(table.errors(), table.rows.len());
    assert!(table.rows.iter().all(|r| r.groebner.is_none()));
}

#[test]
fn closed_forms_reject_bad_sizes() {
    assert!(closed_form_rect(5, false, 2, 2).is_err());
    assert!(closed_form_rect(2, false, 2, 2).is_err());
    assert!(closed_form_inflated(4, 1).is_err());
}
