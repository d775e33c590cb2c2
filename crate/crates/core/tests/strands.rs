mod common;

use bigres::combinat::{chi, nd};
use bigres::strands::*;
use bigres::{bd, Gf, Rational};
use common::*;
use num_traits::Zero;

#[test]
fn split_pencil6_phi1_shape() {
    let sys = maps_system::<Rational>(6);
    let (p1, _) = phi_matrices(&sys, bd(3, 6));
    let m = &p1.matrix;
    assert_eq!((m.rows(), m.cols()), (30, 11));
    let zero_cols: Vec<usize> = (0..11).filter(|&j| m.column(j).iter().all(|x| x.is_zero())).collect();
    assert_eq!(zero_cols, vec![5]);
    assert_eq!(m.rank(), 10);
    assert_eq!(h1_dim(&sys, bd(3, 6)), 1);
    assert_eq!(koszul_strand_homology(&sys, bd(3, 6), 1), 1);
}

#[test]
fn split_pencil6_not_generic() {
    let sys = maps_system::<Gf>(6);
    assert_eq!(is_generic(&sys, default_box(sys.d())).unwrap(), Genericity::NotGeneric(bd(3, 6)));
}

#[test]
fn empty_strands() {
    let sys = random_gf(d11(), 1);
    let (p1, p2) = phi_matrices(&sys, bd(0, 0));
    assert_eq!((p1.matrix.cols(), p2.matrix.cols()), (0, 0));
    assert_eq!(h1_dim(&sys, bd(0, 0)), 0);
    assert_eq!(hf_quotient(&sys, bd(0, 0)), 1);
    assert_eq!(hf_quotient(&sys, bd(3, 3)), 0);
}

#[test]
fn phi1_sizes_for_1n() {
    for n in 2..6 {
        let sys = random_gf(bd(1, n), n as u64);
        let (p1, _) = phi_matrices(&sys, bd(3, n));
        assert_eq!(p1.matrix.cols(), (2 * n - 1) as usize);
        assert_eq!(p1.matrix.rows(), (6 * (n - 1)) as usize);
    }
}

#[test]
fn euler_identity_and_sweeps() {
    for (d, seed) in [(bd(1, 1), 3), (bd(1, 3), 4), (bd(2, 2), 5), (bd(2, 3), 6)] {
        let sys = random_gf(d, seed);
        let bx = bd(3 * d.a1 + 3, 3 * d.a2 + 3);
        let hg = h1_grid(&sys, bx);
        let fg = hf_grid(&sys, bx);
        for a in bx.box_points() {
            let h1 = h1_dim(&sys, a);
            let hf = hf_quotient(&sys, a);
            assert_eq!(hg.get(a), h1, "h1 sweep at {a}");
            assert_eq!(fg.get(a), hf, "hf sweep at {a}");
            assert_eq!(hf as i64 - h1 as i64, chi(d, a), "euler at {a}");
            assert!(h1 as i64 >= nd(d, a));
            assert_eq!(koszul_strand_homology(&sys, a, 1), h1);
            assert_eq!(koszul_strand_homology(&sys, a, 2), 0);
            assert_eq!(koszul_strand_homology(&sys, a, 3), 0);
        }
        assert_eq!(is_generic(&sys, bx).unwrap(), Genericity::GenericOnBox);
    }
}
