mod common;

use std::collections::BTreeMap;

use bigres::betti::{
    betti_table, first_betti_h1, mcomplex_sums, degree3_syzygies_with_report, verify_resolution,
    BettiTable, Convention,
};
use bigres::segre::{basepoint_free, conic_resolution, detect_conic};
use bigres::strands::{default_box, is_generic, Genericity};
use bigres::{bd, BiDegree, Gf, SystemF};
use common::*;

fn table(rows: &[(usize, (i64, i64), usize)]) -> BettiTable {
    let mut t = BettiTable::new(Convention::Ideal);
    for &(i, (a, b), m) in rows {
        t.add(i, bd(a, b), m);
    }
    t
}

fn free_gf(d: BiDegree, seed: u64) -> SystemF<Gf> {
    (seed..)
        .map(|s| random_gf(d, s))
        .find(|s| basepoint_free(s).is_free())
        .unwrap()
}

fn table_11() -> BettiTable {
    table(&[
        (0, (1, 1), 3),
        (1, (1, 3), 1),
        (1, (2, 2), 3),
        (1, (3, 1), 1),
        (2, (2, 3), 2),
        (2, (3, 2), 2),
        (3, (3, 3), 1),
    ])
}

#[test]
fn bidegree_11_table() {
    for seed in 0..5 {
        let sys = free_gf(d11(), seed * 100);
        let t = betti_table(&sys, bd(4, 4), Convention::Ideal);
        assert_eq!(t.entries().collect::<Vec<_>>(), table_11().entries().collect::<Vec<_>>(), "seed {seed}");
    }
}

#[test]
fn quotient_convention_shifts() {
    let sys = free_gf(d11(), 7);
    let q = betti_table(&sys, bd(4, 4), Convention::Quotient);
    assert_eq!(q.get(0, bd(0, 0)), 1);
    assert_eq!(q.get(2, bd(2, 2)), 3);
    assert_eq!(q.to_convention(Convention::Ideal).entries().collect::<Vec<_>>(), table_11().entries().collect::<Vec<_>>());
}

fn conic_12() -> SystemF<Gf> {
    // a0 = u^2, a1 = v^2 + uv
    let a0 = mono::<Gf>(1, [0, 0, 2, 0]);
    let a1 = &mono::<Gf>(1, [0, 0, 0, 2]) + &mono(1, [0, 0, 1, 1]);
    let t = mono::<Gf>(1, [0, 1, 0, 0]);
    let s = mono::<Gf>(1, [1, 0, 0, 0]);
    SystemF::new([&t * &a0, &(&s * &a0) + &(&t * &a1), &s * &a1]).unwrap()
}

#[test]
fn smooth_conic_12_table() {
    let sys = conic_12();
    assert!(basepoint_free(&sys).is_free());
    assert!(detect_conic(&sys).unwrap().is_some());
    let t = betti_table(&sys, bd(4, 7), Convention::Ideal);
    let want = table(&[
        (0, (1, 2), 3),
        (1, (1, 6), 1),
        (1, (2, 4), 3),
        (1, (3, 2), 1),
        (2, (2, 6), 2),
        (2, (3, 4), 2),
        (3, (3, 6), 1),
    ]);
    assert_eq!(t.entries().collect::<Vec<_>>(), want.entries().collect::<Vec<_>>());
}

fn generic_16(seed: u64) -> SystemF<Gf> {
    (seed..)
        .map(|s| random_gf(bd(1, 6), s))
        .find(|s| is_generic(s, default_box(s.d())).unwrap() == Genericity::GenericOnBox)
        .unwrap()
}

fn beta_16() -> BTreeMap<BiDegree, usize> {
    [((3, 10), 1), ((3, 11), 4), ((4, 10), 3), ((6, 9), 2), ((1, 18), 1)]
        .into_iter()
        .map(|((a, b), m)| (bd(a, b), m))
        .collect()
}

#[test]
fn generic_16_first_betti_h1_route() {
    let sys = generic_16(1);
    assert_eq!(first_betti_h1(&sys, bd(8, 24)), beta_16());
}

#[test]
fn generic_16_tor_route_agrees() {
    let sys = generic_16(2);
    let t = betti_table(&sys, bd(7, 19), Convention::Ideal);
    assert_eq!(t.non_koszul_first(sys.d()), beta_16());
    assert_eq!(first_betti_h1(&sys, bd(7, 19)), beta_16());
}

#[test]
fn generic_16_mcomplex_sums() {
    let sys = generic_16(3);
    let g = mcomplex_sums(&sys, bd(12, 24));
    let total = |k: usize| g[k].points().into_iter().map(|a| g[k].get(a)).sum::<usize>();
    assert_eq!((total(1), total(2)), (18, 7));
}

#[test]
fn conic_resolutions_verify() {
    let sys = conic_12();
    let rc = conic_resolution(&sys).unwrap();
    let rep = verify_resolution(&rc, bd(5, 8));
    assert!(rep.passed(), "{rep:?}");
}

#[test]
fn degree3_syzygies_generic() {
    for n in [5i64, 6, 7] {
        let sys = random_gf(bd(1, n), 40 + n as u64);
        let r = degree3_syzygies_with_report(&sys).unwrap();
        assert_eq!(r.syzygies.len(), 5);
        assert!(r.mk_zero);
        assert_eq!(r.hb.column_degrees.iter().sum::<usize>(), n as usize);
    }
}
