use bigres::bd;
use bigres::combinat::{chi, chi_region, chi_sign, nd, nd_grid, neg_part, pos_part, RegionTag, Sign};

#[test]
fn positive_and_negative_parts() {
    assert_eq!((pos_part(5), neg_part(5)), (5, 0));
    assert_eq!((pos_part(-4), neg_part(-4)), (0, 4));
    assert_eq!((pos_part(0), neg_part(0)), (0, 0));
    for c in -10..=10 {
        assert_eq!(pos_part(c) - neg_part(c), c);
    }
}

#[test]
fn nd_values_for_1_6() {
    let d = bd(1, 6);
    for (a, want) in [((3, 10), 1), ((3, 11), 6), ((4, 10), 5), ((1, 18), 1), ((1, 19), 2), ((1, 20), 3)] {
        assert_eq!(nd(d, bd(a.0, a.1)), want, "a = {a:?}");
    }
    assert_eq!(nd(d, bd(0, 0)), 0);
}

#[test]
fn chi_values() {
    assert_eq!(chi(bd(1, 1), bd(3, 3)), 0);
    assert_eq!(chi(bd(1, 6), bd(1, 4)), 10);
}

#[test]
fn chi_regions() {
    let d = bd(1, 6);
    assert_eq!(chi_region(d, bd(0, 5)), (RegionTag::A1, Some(6)));
    assert_eq!(chi_region(d, bd(3, 18)), (RegionTag::A4, Some(0)));
    assert_eq!(chi_region(d, bd(4, 13)).0, RegionTag::Gap);
    assert_eq!(chi_region(d, bd(4, 13)).1, None);
}

#[test]
fn region_values_match_chi() {
    for d in [bd(1, 1), bd(1, 6), bd(2, 3), bd(3, 2)] {
        for a in bd(20, 30).box_points() {
            if let (_, Some(v)) = chi_region(d, a) {
                assert_eq!(v, chi(d, a), "d = {d:?}, a = {a:?}");
            }
        }
    }
}

#[test]
fn chi_signs() {
    assert_eq!(chi_sign(bd(2, 2), bd(1, 1)), Sign::Pos);
    assert_eq!(chi_sign(bd(2, 2), bd(5, 7)), Sign::Zero);
    assert!(bd(30, 30)
        .box_points()
        .into_iter()
        .any(|a| chi_sign(bd(1, 6), a) == Sign::Neg));
}

#[test]
fn nd_is_negative_part_of_chi() {
    for d in [bd(1, 1), bd(1, 2), bd(1, 6), bd(2, 2), bd(2, 5), bd(3, 4), bd(4, 1)] {
        for a in bd(59, 59).box_points() {
            assert_eq!(nd(d, a), neg_part(chi(d, a)), "d = {d:?}, a = {a:?}");
        }
    }
}

#[test]
fn chi_is_difference_of_parts() {
    for d in [bd(1, 3), bd(2, 2)] {
        for a in bd(15, 15).box_points() {
            let c = chi(d, a);
            assert_eq!(c, pos_part(c) - nd(d, a));
        }
    }
}

#[test]
fn nd_grid_matches_pointwise() {
    let d = bd(1, 6);
    let g = nd_grid(d, bd(6, 20));
    for a in g.points() {
        assert_eq!(g.get(a), nd(d, a));
    }
}
