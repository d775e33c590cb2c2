mod common;

use bigres::bipoly::{dim_r, gcd_all, gcd_binary, mul_matrix, split_st, strand_basis, Monomial};
use bigres::{bd, BiDegree, BiPoly, BinaryForm, Field, Gf, Rational};
use common::{mono, rng};

fn random(d: BiDegree, r: &mut impl rand::Rng) -> BiPoly<Gf> {
    BiPoly::from_coeffs(d, (0..dim_r(d)).map(|_| Gf::sample(r, 0)).collect()).unwrap()
}

fn q(v: i64) -> Rational {
    Rational::from_i64(v)
}

#[test]
fn strand_basis_order() {
    let b = strand_basis(bd(1, 1));
    let want = [[1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 0, 1]];
    assert_eq!(b, want.map(Monomial).to_vec());
    assert_eq!(strand_basis(bd(2, 3)).len(), 12);
    assert_eq!(dim_r(bd(2, 3)), 12);
    assert!(strand_basis(bd(-1, 3)).is_empty());
    assert_eq!(dim_r(bd(0, -1)), 0);
}

#[test]
fn mul_matrix_by_s() {
    let s = BiPoly::<Rational>::var('s');
    let m = mul_matrix(&s, bd(0, 1)).matrix;
    // u, v  ->  su, sv, tu, tv
    assert_eq!((m.rows(), m.cols()), (4, 2));
    assert_eq!(m.column(0), vec![q(1), q(0), q(0), q(0)]);
    assert_eq!(m.column(1), vec![q(0), q(1), q(0), q(0)]);
}

#[test]
fn mul_matrix_composes() {
    let mut r = rng(3);
    for _ in 0..20 {
        let g = random(bd(1, 2), &mut r);
        let h = random(bd(2, 1), &mut r);
        let b = bd(1, 3);
        let gh = mul_matrix(&(&g * &h), b).matrix;
        let comp = mul_matrix(&g, b + h.degree()).matrix.mul(&mul_matrix(&h, b).matrix);
        assert_eq!(gh, comp);
    }
}

#[test]
fn product_evaluates_pointwise() {
    let mut r = rng(9);
    let g = random(bd(2, 1), &mut r);
    let h = random(bd(1, 3), &mut r);
    let x = [3, -5, 11, 2].map(Gf::from_i64);
    let gh = &g * &h;
    assert_eq!(gh.degree(), bd(3, 4));
    assert_eq!(
        gh.eval(&x[0], &x[1], &x[2], &x[3]),
        g.eval(&x[0], &x[1], &x[2], &x[3]) * h.eval(&x[0], &x[1], &x[2], &x[3])
    );
}

#[test]
fn split_st_recovers_parts() {
    // f = s(u^2 + 2v^2) + t(3uv)
    let f = &(&mono::<Rational>(1, [1, 0, 2, 0]) + &mono(2, [1, 0, 0, 2])) + &mono(3, [0, 1, 1, 1]);
    let (p, qq) = split_st(&f).unwrap();
    assert_eq!(p, BinaryForm::from_i64(&[2, 0, 1]));
    assert_eq!(qq, BinaryForm::from_i64(&[0, 3, 0]));
    assert_eq!(BiPoly::from_st(&p, &qq), f);
    assert!(split_st(&mono::<Rational>(1, [2, 0, 1, 0])).is_err());
}

#[test]
fn gcd_of_binary_forms() {
    // u^2 - v^2 and u^2 + 2uv + v^2 share u + v
    let a = BinaryForm::<Rational>::from_i64(&[-1, 0, 1]);
    let b = BinaryForm::<Rational>::from_i64(&[1, 2, 1]);
    assert_eq!(gcd_binary(&a, &b).unwrap(), BinaryForm::from_i64(&[1, 1]));
    // common power of v survives
    let c = BinaryForm::<Rational>::from_i64(&[0, 0, 1, 0]);
    let d = BinaryForm::<Rational>::from_i64(&[0, 1, 0]);
    // gcd(u^2 v, u v) = u v
    assert_eq!(gcd_binary(&c, &d).unwrap(), BinaryForm::from_i64(&[0, 1, 0]));
    // coprime
    let e = BinaryForm::<Rational>::from_i64(&[1, 0, 1]);
    assert_eq!(gcd_binary(&a, &e).unwrap().degree(), 0);
    assert!(gcd_binary(&BinaryForm::<Rational>::zero(2), &BinaryForm::zero(3)).is_err());
    assert_eq!(gcd_all(&[a.clone(), BinaryForm::zero(1), b]).unwrap(), BinaryForm::from_i64(&[1, 1]));
}

#[test]
fn canonical_rendering() {
    assert_eq!(Monomial([1, 0, 2, 4]).to_string(), "s*t^0*u^2*v^4");
    let f = &mono::<Gf>(1, [1, 0, 1, 0]) + &mono(-2, [0, 1, 0, 1]);
    let text = f.render();
    assert!(text.contains("s*t^0*u*v^0"), "{text}");
    assert!(text.contains('-'), "{text}");
    assert_eq!(BinaryForm::<Gf>::from_i64(&[0, 0, 0]).render(), "0");
}
