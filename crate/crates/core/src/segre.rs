//! W against the Segre varieties: basepoints, the smooth conic and three
//! point cases with their resolutions, lifted syzygies, and the maps ψ_i.

use serde::Serialize;

use crate::betti::{minor_syzygy, first_betti_h1, hb_kernel, ResolutionComplex, SyzygyVector};
use crate::bipoly::{bd, gcd_all, BiDegree, BiPoly, BinaryForm};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::linalg::Matrix;
use crate::polymat::PolyMatrix;
use crate::strands::{default_box, hf_quotient, ideal_strand, is_generic, phi1, Genericity};
use crate::system::SystemF;

#[derive(Clone, Debug, PartialEq)]
pub enum BasepointVerdict<F> {
    Free,
    /// `witness` is ((s:t), (u:v)) when a point is found over the ground field;
    /// `evidence` names the gcd or Hilbert function value that proves it.
    HasBasepoint {
        witness: Option<([F; 2], [F; 2])>,
        evidence: String,
    },
    Inconclusive {
        hint: String,
    },
}

impl<F: Field> BasepointVerdict<F> {
    pub fn is_free(&self) -> bool {
        matches!(self, BasepointVerdict::Free)
    }

    pub fn describe(&self) -> String {
        match self {
            BasepointVerdict::Free => "free".into(),
            BasepointVerdict::HasBasepoint { witness, evidence } => match witness {
                Some((st, uv)) => format!(
                    "basepoint (({}:{}),({}:{})); {evidence}",
                    st[0], st[1], uv[0], uv[1]
                ),
                None => format!("basepoint; {evidence}"),
            },
            BasepointVerdict::Inconclusive { hint } => format!("inconclusive; {hint}"),
        }
    }
}

/// Scale so the last nonzero coordinate is 1.
fn normalize_point<F: Field>(p: [F; 2]) -> [F; 2] {
    let c = if !p[1].is_zero() { p[1].clone() } else { p[0].clone() };
    let inv = c.inv().expect("nonzero point");
    [p[0].clone() * inv.clone(), p[1].clone() * inv]
}

/// A root (u:v) of a nonconstant form over the ground field, if one is found.
/// Prime fields are searched exhaustively; over Q linear factors are solved
/// and small rationals tried.
fn find_root<F: Field>(g: &BinaryForm<F>) -> Option<[F; 2]> {
    if g.v_valuation().is_some_and(|k| k > 0) {
        return Some([F::one(), F::zero()]);
    }
    let is_root = |x: &F| g.eval(x, &F::one()).is_zero();
    match F::spec() {
        FieldSpec::PrimeField(p) => (0..p as i64)
            .map(F::from_i64)
            .find(is_root)
            .map(|x| [x, F::one()]),
        FieldSpec::Rationals => {
            let nz: Vec<usize> = (0..=g.degree()).filter(|&j| !g.coeff(j).is_zero()).collect();
            if nz.iter().all(|&j| j <= 1) && nz.contains(&1) {
                let x = -(g.coeff(0) / g.coeff(1));
                return Some([x, F::one()]);
            }
            for den in 1..=64i64 {
                for num in -64..=64i64 {
                    let x = F::from_i64(num) / F::from_i64(den);
                    if is_root(&x) {
                        return Some([x, F::one()]);
                    }
                }
            }
            None
        }
    }
}

fn theta_test<F: Field>(sys: &SystemF<F>) -> Result<BasepointVerdict<F>> {
    let sp = sys.split()?;
    let (p, q): (Vec<_>, Vec<_>) = sp.iter().cloned().unzip();
    let minor = |a: usize, b: usize| -> BinaryForm<F> { &(&q[a] * &p[b]) - &(&p[a] * &q[b]) };
    let minors = [minor(1, 2), minor(2, 0), minor(0, 1)];
    if minors.iter().all(|m| m.is_zero()) {
        return Ok(BasepointVerdict::HasBasepoint {
            witness: None,
            evidence: "the minors of theta vanish identically".into(),
        });
    }
    let g = gcd_all(&minors)?;
    if g.degree() == 0 {
        return Ok(BasepointVerdict::Free);
    }
    let witness = find_root(&g).map(|uv| {
        let row = sp
            .iter()
            .map(|(pi, qi)| (pi.eval(&uv[0], &uv[1]), qi.eval(&uv[0], &uv[1])))
            .find(|(x, y)| !x.is_zero() || !y.is_zero());
        let st = match row {
            Some((x, y)) => [y, -x],
            None => [F::one(), F::zero()],
        };
        (normalize_point(st), normalize_point(uv))
    });
    Ok(BasepointVerdict::HasBasepoint {
        witness,
        evidence: format!("gcd of the minors of theta is {g}"),
    })
}

/// Exact for every d: the θ-minor gcd when d1 == 1 (or d2 == 1 after
/// swapping factors), otherwise whether (R/I_W)_(3d) vanishes.
pub fn basepoint_free<F: Field>(sys: &SystemF<F>) -> BasepointVerdict<F> {
    let d = sys.d();
    if d.a1 == 1 {
        return theta_test(sys).expect("d1 == 1");
    }
    if d.a2 == 1 {
        return match theta_test(&sys.swapped()).expect("d2 == 1") {
            BasepointVerdict::HasBasepoint { witness, evidence } => BasepointVerdict::HasBasepoint {
                witness: witness.map(|(st, uv)| (uv, st)),
                evidence,
            },
            v => v,
        };
    }
    let h = hf_quotient(sys, 3 * d);
    if h == 0 {
        BasepointVerdict::Free
    } else {
        BasepointVerdict::HasBasepoint {
            witness: None,
            evidence: format!("dim (R/I_W)_{} = {h}", 3 * d),
        }
    }
}

/// f' = C·f with f'0 = t·a0, f'1 = s·a0 + t·a1, f'2 = s·a1.
#[derive(Clone, Debug)]
pub struct ConicNormalForm<F> {
    pub a0: BinaryForm<F>,
    pub a1: BinaryForm<F>,
    pub basis_change: Matrix<F>,
    pub system: SystemF<F>,
}

pub fn detect_conic<F: Field>(sys: &SystemF<F>) -> Result<Option<ConicNormalForm<F>>> {
    let d = sys.d();
    if d.a1 != 1 {
        return Err(Error::Degree(format!("need d = (1,n), got {d}")));
    }
    let ker = ideal_strand(sys, bd(3, d.a2)).kernel();
    match ker.dim() {
        0 => return Ok(None),
        1 => {}
        k => {
            return Err(Error::Internal(format!(
                "{k} independent (3,n) syzygies; input is not basepoint free"
            )))
        }
    }
    let v = &ker.basis[0];
    // σ_i = T[0][i] s² - T[1][i] st + T[2][i] t²
    let mut c = Matrix::<F>::zeros(3, 3);
    for i in 0..3 {
        c[(0, i)] = v[3 * i].clone();
        c[(1, i)] = -v[3 * i + 1].clone();
        c[(2, i)] = v[3 * i + 2].clone();
    }
    let r = c.rank();
    if r < 3 {
        return Err(Error::ImpossibleFactorization(r));
    }
    let system = sys.transform(&c)?;
    let sp = system.split()?;
    let (p0, a0) = sp[0].clone();
    let (a1, q2) = sp[2].clone();
    let (p1, q1) = sp[1].clone();
    if !p0.is_zero() || !q2.is_zero() || p1 != a0 || q1 != a1 {
        return Err(Error::Internal("conic normal form check failed".into()));
    }
    Ok(Some(ConicNormalForm {
        a0,
        a1,
        basis_change: c,
        system,
    }))
}

fn var<F: Field>(c: char) -> BiPoly<F> {
    BiPoly::var(c)
}

/// The resolution of I_W in the smooth conic case, on the normalized basis.
pub fn conic_resolution<F: Field>(sys: &SystemF<F>) -> Result<ResolutionComplex<F>> {
    let nf = detect_conic(sys)?.ok_or(Error::NotConic)?;
    let s = &nf.system;
    let n = s.d().a2;
    let d = s.d();
    let [f0, f1, f2] = s.f().clone();
    let a0 = nf.a0.to_bipoly();
    let a1 = nf.a1.to_bipoly();
    let (sv, tv) = (var::<F>('s'), var::<F>('t'));
    let z = BiPoly::<F>::zero(BiDegree::ZERO);
    let f1s = vec![bd(1, 3 * n), 2 * d, 2 * d, 2 * d, bd(3, n)];
    let d1 = PolyMatrix::new(
        vec![d; 3],
        f1s.clone(),
        vec![
            vec![&a1 * &a1, f1.clone(), f2.clone(), z.clone(), &sv * &sv],
            vec![-&(&a0 * &a1), -&f0, z.clone(), f2.clone(), -&(&sv * &tv)],
            vec![&a0 * &a0, z.clone(), -&f0, -&f1, &tv * &tv],
        ],
    )?;
    let f2s = vec![bd(2, 3 * n), bd(2, 3 * n), bd(3, 2 * n), bd(3, 2 * n)];
    let d2 = PolyMatrix::new(
        f1s,
        f2s.clone(),
        vec![
            vec![tv.clone(), sv.clone(), z.clone(), z.clone()],
            vec![-&a1, z.clone(), z.clone(), -&sv],
            vec![a0.clone(), -&a1, -&sv, tv.clone()],
            vec![z.clone(), a0.clone(), tv.clone(), z.clone()],
            vec![z.clone(), z.clone(), a1.clone(), a0.clone()],
        ],
    )?;
    let d3 = PolyMatrix::new(
        f2s,
        vec![bd(3, 3 * n)],
        vec![vec![sv.clone()], vec![-&tv], vec![a0.clone()], vec![-&a1]],
    )?;
    Ok(ResolutionComplex::new(s, vec![d1, d2, d3]))
}

/// Basis {g_i h_i} with deg g_i = (1, i0) and deg h_i = (0, n - i0).
#[derive(Clone, Debug)]
pub struct FactorizedBasis<F> {
    pub i0: usize,
    pub g: [BiPoly<F>; 3],
    pub h: [BinaryForm<F>; 3],
}

impl<F: Field> FactorizedBasis<F> {
    pub fn new(g: [BiPoly<F>; 3], h: [BinaryForm<F>; 3]) -> Result<Self> {
        let gd = g[0].degree();
        if gd.a1 != 1 || g.iter().any(|x| x.degree() != gd) {
            return Err(Error::Degree("g_i must share a bidegree (1,i)".into()));
        }
        let hd = h[0].degree();
        if h.iter().any(|x| x.degree() != hd) {
            return Err(Error::Degree("h_i must share a degree".into()));
        }
        let fb = FactorizedBasis {
            i0: gd.a2 as usize,
            g,
            h,
        };
        fb.system()?;
        Ok(fb)
    }

    pub fn n(&self) -> usize {
        self.i0 + self.h[0].degree()
    }

    pub fn system(&self) -> Result<SystemF<F>> {
        SystemF::new([0, 1, 2].map(|i| &self.g[i] * &self.h[i].to_bipoly()))
    }
}

/// (g1 g2 a0, g0 g2 a1, g0 g1 a2) for a syzygy (a0, a1, a2) on the h_i.
pub fn lift_syzygy<F: Field>(fb: &FactorizedBasis<F>, a: &[BiPoly<F>; 3]) -> Result<SyzygyVector<F>> {
    let e = a[0].degree();
    let hsum = (0..3).fold(BiPoly::zero(e + bd(0, fb.h[0].degree() as i64)), |acc, k| {
        &acc + &(&a[k] * &fb.h[k].to_bipoly())
    });
    if !hsum.is_zero() {
        return Err(Error::NotASyzygy("input is not a syzygy on the h_i".into()));
    }
    let g = &fb.g;
    let entries = [
        &(&g[1] * &g[2]) * &a[0],
        &(&g[0] * &g[2]) * &a[1],
        &(&g[0] * &g[1]) * &a[2],
    ];
    SyzygyVector::new(&fb.system()?, entries)
}

/// Output of the three noncollinear points construction.
#[derive(Clone, Debug)]
pub struct ThreePoint<F> {
    pub mu: usize,
    pub complex: ResolutionComplex<F>,
}

/// Resolution when W = span{l_i h_i} with l_i linear in s,t and the h_i independent.
pub fn three_point_resolution<F: Field>(fb: &FactorizedBasis<F>) -> Result<ThreePoint<F>> {
    if fb.i0 != 0 {
        return Err(Error::Degree("three point construction needs g_i of bidegree (1,0)".into()));
    }
    let n = fb.h[0].degree();
    let hrank = Matrix::from_rows(fb.h.iter().map(|h| h.coeffs().to_vec()).collect()).rank();
    if hrank < 3 {
        return Err(Error::ConicRedirect);
    }
    // l_i as (coefficient of s, coefficient of t)
    let lin: Vec<[F; 2]> = fb.g.iter().map(|g| [g.coeff(1, 0), g.coeff(0, 0)]).collect();
    let det2 = |x: &[F; 2], y: &[F; 2]| x[0].clone() * y[1].clone() - x[1].clone() * y[0].clone();
    let order = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
        .into_iter()
        .find(|o| !det2(&lin[o[0]], &lin[o[1]]).is_zero())
        .ok_or_else(|| Error::Basepoint("the l_i share a common zero".into()))?;
    let (l0, l1, l2) = (&lin[order[0]], &lin[order[1]], &lin[order[2]]);
    // l2 = a l0 + b l1
    let dt = det2(l0, l1);
    let a = det2(l2, l1) / dt.clone();
    let b = det2(l0, l2) / dt;
    let h: Vec<BinaryForm<F>> = order.iter().map(|&i| fb.h[i].clone()).collect();
    let hb = hb_kernel(&h).map_err(|e| match e {
        Error::CommonFactor(k) => Error::Basepoint(format!("h_i share a factor of degree {k}")),
        e => e,
    })?;
    let mu = hb.column_degrees[0];
    let bcol: Vec<BinaryForm<F>> = hb.kernel[0].clone();
    let mut ccol: Vec<BinaryForm<F>> = hb.kernel[1].clone();
    let minors = |b: &[BinaryForm<F>], c: &[BinaryForm<F>]| -> [BinaryForm<F>; 3] {
        [
            &(&b[1] * &c[2]) - &(&c[1] * &b[2]),
            &(&c[0] * &b[2]) - &(&b[0] * &c[2]),
            &(&b[0] * &c[1]) - &(&c[0] * &b[1]),
        ]
    };
    let g0 = minors(&bcol, &ccol);
    // scale C so the minors equal h
    let k = (0..=n)
        .find(|&j| !h[0].coeff(j).is_zero())
        .expect("h0 nonzero");
    let lam = g0[0].coeff(k) / h[0].coeff(k);
    let lam_inv = lam.inv().ok_or_else(|| Error::Internal("degenerate Hilbert-Burch minors".into()))?;
    ccol = ccol.iter().map(|c| c.scale(&lam_inv)).collect();
    let gm = minors(&bcol, &ccol);
    if gm.iter().zip(&h).any(|(x, y)| x != y) {
        return Err(Error::Internal("Hilbert-Burch minors are not proportional to h".into()));
    }
    // work in coordinates s' = l0, t' = l1
    let lin_form = |c: &[F; 2]| {
        &BiPoly::monomial(c[0].clone(), [1, 0, 0, 0]) + &BiPoly::monomial(c[1].clone(), [0, 1, 0, 0])
    };
    let s = lin_form(l0);
    let t = lin_form(l1);
    let l = lin_form(l2);
    let sys = SystemF::new([
        &s * &h[0].to_bipoly(),
        &t * &h[1].to_bipoly(),
        &l * &h[2].to_bipoly(),
    ])?;
    let g: Vec<BiPoly<F>> = h.iter().map(|x| x.to_bipoly()).collect();
    let bb: Vec<BiPoly<F>> = bcol.iter().map(|x| x.to_bipoly()).collect();
    let cc: Vec<BiPoly<F>> = ccol.iter().map(|x| x.to_bipoly()).collect();
    let z = BiPoly::<F>::zero(BiDegree::ZERO);
    let ni = n as i64;
    let mi = mu as i64;
    let d = sys.d();
    let sc = |p: &BiPoly<F>, c: &F| p.scale(c);
    let tl = &t * &l;
    let sl = &s * &l;
    let st = &s * &t;
    let f1s = vec![
        bd(1, 3 * ni),
        2 * d,
        2 * d,
        2 * d,
        bd(3, ni + mi),
        bd(3, 2 * ni - mi),
    ];
    let d1 = PolyMatrix::new(
        vec![d; 3],
        f1s.clone(),
        vec![
            vec![
                -&sc(&(&g[1] * &g[2]), &a),
                &t * &g[1],
                &l * &g[2],
                z.clone(),
                &tl * &bb[0],
                &tl * &cc[0],
            ],
            vec![
                -&sc(&(&g[0] * &g[2]), &b),
                -&(&s * &g[0]),
                z.clone(),
                &l * &g[2],
                &sl * &bb[1],
                &sl * &cc[1],
            ],
            vec![
                &g[0] * &g[1],
                z.clone(),
                -&(&s * &g[0]),
                -&(&t * &g[1]),
                &st * &bb[2],
                &st * &cc[2],
            ],
        ],
    )?;
    let f2s = vec![
        bd(2, 3 * ni),
        bd(2, 3 * ni),
        bd(3, 2 * ni),
        bd(3, 2 * ni),
        bd(3, 2 * ni),
    ];
    let d2 = PolyMatrix::new(
        f1s,
        f2s.clone(),
        vec![
            vec![t.clone(), s.clone(), z.clone(), z.clone(), z.clone()],
            vec![sc(&g[2], &a), -&sc(&g[2], &b), l.clone(), z.clone(), z.clone()],
            vec![z.clone(), g[1].clone(), z.clone(), t.clone(), z.clone()],
            vec![g[0].clone(), z.clone(), z.clone(), z.clone(), s.clone()],
            vec![z.clone(), z.clone(), cc[2].clone(), -&cc[1], cc[0].clone()],
            vec![z.clone(), z.clone(), -&bb[2], bb[1].clone(), -&bb[0]],
        ],
    )?;
    let d3 = PolyMatrix::new(
        f2s,
        vec![bd(3, 3 * ni)],
        vec![
            vec![s.clone()],
            vec![-&t],
            vec![-&g[2]],
            vec![g[1].clone()],
            vec![-&g[0]],
        ],
    )?;
    Ok(ThreePoint {
        mu,
        complex: ResolutionComplex::new(&sys, vec![d1, d2, d3]),
    })
}

/// ψ_i(A, B): coefficients of the product of a (1,i) form and a (0,n-i)
/// form in the basis su^n, ..., sv^n, tu^n, ..., tv^n.
pub fn psi_image<F: Field>(i: usize, n: usize, pt_a: &[F], pt_b: &[F]) -> Result<Vec<F>> {
    if i > n {
        return Err(Error::Degree(format!("level {i} exceeds n = {n}")));
    }
    if pt_a.iter().all(|x| x.is_zero()) || pt_b.iter().all(|x| x.is_zero()) {
        return Err(Error::Degree("zero point".into()));
    }
    let g = BiPoly::from_coeffs(bd(1, i as i64), pt_a.to_vec())?;
    if pt_b.len() != n - i + 1 {
        return Err(Error::Dimension {
            expected: n - i + 1,
            got: pt_b.len(),
        });
    }
    // pt_b lists u^(n-i), ..., v^(n-i)
    let h = BiPoly::from_coeffs(bd(0, (n - i) as i64), pt_b.to_vec())?;
    Ok((&g * &h).coeffs().to_vec())
}

/// The quartic defining the image of ψ_1 for n = 2.
pub fn quartic_q<F: Field>(x: &[F]) -> F {
    let c = |k: i64| F::from_i64(k);
    let m = |idx: &[usize]| idx.iter().fold(F::one(), |acc, &i| acc * x[i].clone());
    m(&[2, 2, 3, 3]) - m(&[1, 2, 3, 4]) + m(&[0, 2, 4, 4]) + m(&[1, 1, 3, 5])
        - c(2) * m(&[0, 2, 3, 5])
        - m(&[0, 1, 4, 5])
        + m(&[0, 0, 5, 5])
}

/// First syzygy degrees for W = span{g_i h_i} with (1,1) factors and a
/// (0,n-1) pencil, W ∩ Σ_(1,n) empty.
pub fn pencil_expected_degrees(n: i64) -> Vec<BiDegree> {
    let mut v = vec![
        bd(1, 3 * n),
        bd(2, 2 * n),
        bd(2, 2 * n),
        bd(2, 2 * n),
        bd(3, n + 2),
        bd(3, 2 * n - 1),
        bd(3, 2 * n - 1),
        bd(6, 2 * n - 2),
    ];
    v.sort();
    v
}

/// φ1 at (3,8) for d = (1,5) with rows p_l., q_l. and columns j = 0..5, and its determinant.
pub fn square_strand_det<F: Field>(sys: &SystemF<F>) -> Result<(Matrix<F>, F)> {
    if sys.d() != bd(1, 5) {
        return Err(Error::Degree(format!("need d = (1,5), got {}", sys.d())));
    }
    let m = phi1(sys, bd(3, 8)).matrix;
    let cols: Vec<usize> = (0..6).rev().collect();
    let m = m.select_columns(&cols);
    let det = m.det();
    Ok((m, det))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    SmoothConic,
    ThreeNoncollinearPoints(usize),
    PencilFactorized,
    GenericLike,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct SegreClassification {
    pub verdict: Verdict,
    /// Non-Koszul first syzygy degrees with multiplicity.
    pub evidence: Vec<(BiDegree, usize)>,
    pub basepoint: String,
    pub mu: Option<usize>,
}

/// Box used to collect first syzygies for classification.
pub fn classification_box(d: BiDegree) -> BiDegree {
    bd((2 * d.a2 + 2).max(3 * d.a1 + 3), 3 * d.a2 + 1)
}

pub fn classify<F: Field>(sys: &SystemF<F>) -> Result<SegreClassification> {
    let d = sys.d();
    let bp = basepoint_free(sys);
    let mut out = SegreClassification {
        verdict: Verdict::Inconclusive,
        evidence: Vec::new(),
        basepoint: bp.describe(),
        mu: None,
    };
    if !bp.is_free() {
        return Ok(out);
    }
    let betti = first_betti_h1(sys, classification_box(d));
    out.evidence = betti.iter().map(|(&a, &m)| (a, m)).collect();
    let generic = is_generic(sys, default_box(d))? == Genericity::GenericOnBox;
    if d.a1 != 1 {
        if generic {
            out.verdict = Verdict::GenericLike;
        }
        return Ok(out);
    }
    let n = d.a2;
    if detect_conic(sys)?.is_some() {
        out.verdict = Verdict::SmoothConic;
        return Ok(out);
    }
    if generic {
        out.verdict = Verdict::GenericLike;
        return Ok(out);
    }
    let threes: Vec<(BiDegree, usize)> = out.evidence.iter().filter(|(a, _)| a.a1 == 3).cloned().collect();
    let count3: usize = threes.iter().map(|(_, m)| m).sum();
    if count3 == 2 {
        let lo = threes[0].0.a2;
        let mu = lo - n;
        if mu > 0 && 2 * mu <= n && betti.get(&bd(3, 2 * n - mu)).copied().unwrap_or(0) >= 1 {
            out.verdict = Verdict::ThreeNoncollinearPoints(mu as usize);
            out.mu = Some(mu as usize);
            return Ok(out);
        }
    }
    let has = |a: BiDegree| betti.get(&a).copied().unwrap_or(0);
    if has(bd(3, n + 2)) >= 1
        && has(bd(3, 2 * n - 1)) >= 2
        && (4..=6).any(|k| has(bd(k, 2 * n - 2)) >= 1)
    {
        out.verdict = Verdict::PencilFactorized;
    }
    Ok(out)
}

/// Minor syzygy re-exported for callers working in this module's terms.
pub fn tautological_syzygy<F: Field>(sys: &SystemF<F>) -> Result<SyzygyVector<F>> {
    minor_syzygy(sys)
}
