use crate::bipoly::{BiDegree, BiPoly, BinaryForm};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::polymat::PolyMatrix;
use crate::system::SystemF;

/// (σ0, σ1, σ2) with Σ σ_i f_i = 0; total degree is deg σ_i + d.
#[derive(Clone, Debug, PartialEq)]
pub struct SyzygyVector<F> {
    pub entries: [BiPoly<F>; 3],
    pub total_degree: BiDegree,
}

impl<F: Field> SyzygyVector<F> {
    /// Checks the relation before accepting the vector.
    pub fn new(sys: &SystemF<F>, entries: [BiPoly<F>; 3]) -> Result<Self> {
        let e = entries[0].degree();
        let entries = entries.map(|p| if p.is_zero() { BiPoly::zero(e) } else { p });
        if entries.iter().any(|p| p.degree() != e) {
            return Err(Error::Degree("syzygy entries of different bidegrees".into()));
        }
        let v = SyzygyVector {
            entries,
            total_degree: e + sys.d(),
        };
        if !v.verify(sys) {
            return Err(Error::NotASyzygy("sum of sigma_i f_i is nonzero".into()));
        }
        Ok(v)
    }

    pub fn verify(&self, sys: &SystemF<F>) -> bool {
        let mut acc = BiPoly::zero(self.total_degree);
        for (s, f) in self.entries.iter().zip(sys.f()) {
            acc = &acc + &(s * f);
        }
        acc.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    /// m·σ for a form m.
    pub fn times(&self, m: &BiPoly<F>) -> SyzygyVector<F> {
        SyzygyVector {
            entries: [0, 1, 2].map(|i| m * &self.entries[i]),
            total_degree: self.total_degree + m.degree(),
        }
    }

    /// Concatenated coefficient vectors.
    pub fn flat(&self) -> Vec<F> {
        self.entries
            .iter()
            .flat_map(|p| p.coeffs().iter().cloned())
            .collect()
    }
}

/// (0, f2, -f1), (-f2, 0, f0), (f1, -f0, 0).
pub fn koszul_syzygies<F: Field>(sys: &SystemF<F>) -> [SyzygyVector<F>; 3] {
    let [f0, f1, f2] = sys.f().clone();
    let z = BiPoly::zero(sys.d());
    [
        [z.clone(), f2.clone(), -&f1],
        [-&f2, z.clone(), f0.clone()],
        [f1, -&f0, z],
    ]
    .map(|e| SyzygyVector::new(sys, e).expect("Koszul relation"))
}

/// Signed 2×2 minors of θ = [p; q], a syzygy of total degree (1, 3n).
pub fn minor_syzygy<F: Field>(sys: &SystemF<F>) -> Result<SyzygyVector<F>> {
    let sp = sys.split()?;
    let (p, q): (Vec<_>, Vec<_>) = sp.iter().cloned().unzip();
    let minor = |a: usize, b: usize| -> BinaryForm<F> { &(&q[a] * &p[b]) - &(&p[a] * &q[b]) };
    let sigma = [minor(1, 2), minor(2, 0), minor(0, 1)];
    if sigma.iter().all(|m| m.is_zero()) {
        return Err(Error::Basepoint(
            "the 2x2 minors of theta vanish identically".into(),
        ));
    }
    SyzygyVector::new(sys, sigma.map(|m| m.to_bipoly()))
}

/// The matrices of the minimal second and third syzygies built from the
/// (1,3n) syzygy and the Koszul syzygies.
#[derive(Clone, Debug)]
pub struct MinorSyzygyMatrices<F> {
    pub a: PolyMatrix<F>,
    pub a_prime: PolyMatrix<F>,
    pub third: PolyMatrix<F>,
}

pub fn minor_syzygy_matrices<F: Field>(sys: &SystemF<F>) -> Result<MinorSyzygyMatrices<F>> {
    let d = sys.d();
    let n = d.a2;
    let minors = minor_syzygy(sys)?;
    let sp = sys.split()?;
    let [f0, f1, f2] = sys.f().clone();
    let s = BiPoly::<F>::var('s');
    let t = BiPoly::<F>::var('t');
    let one = BiPoly::constant(F::one());
    let z = |deg: BiDegree| BiPoly::<F>::zero(deg);
    let p: Vec<BiPoly<F>> = sp.iter().map(|(p, _)| p.to_bipoly()).collect();
    let q: Vec<BiPoly<F>> = sp.iter().map(|(_, q)| q.to_bipoly()).collect();
    let [s0, s1, s2] = minors.entries.clone();
    let a = PolyMatrix::new(
        vec![d; 3],
        vec![BiDegree { a1: 1, a2: 3 * n }, 2 * d, 2 * d, 2 * d],
        vec![
            vec![s0, f1.clone(), f2.clone(), z(d)],
            vec![s1, -&f0, z(d), f2.clone()],
            vec![s2, z(d), -&f0, -&f1],
        ],
    )?;
    let a_prime = PolyMatrix::new(
        a.col_shifts().to_vec(),
        vec![BiDegree { a1: 2, a2: 3 * n }; 2]
            .into_iter()
            .chain([BiDegree { a1: 3, a2: 3 * n }])
            .collect(),
        vec![
            vec![s.clone(), t.clone(), z(BiDegree { a1: 2, a2: 0 })],
            vec![q[2].clone(), -&p[2], f2.clone()],
            vec![-&q[1], p[1].clone(), -&f1],
            vec![q[0].clone(), -&p[0], f0.clone()],
        ],
    )?;
    let third = PolyMatrix::new(
        a_prime.col_shifts().to_vec(),
        vec![BiDegree { a1: 3, a2: 3 * n }],
        vec![vec![t.clone()], vec![-&s], vec![one]],
    )?;
    if !a.mul(&a_prime)?.is_zero() || !a_prime.mul(&third)?.is_zero() {
        return Err(Error::NotASyzygy("A·A' or A'·[t,-s,1] is nonzero".into()));
    }
    Ok(MinorSyzygyMatrices { a, a_prime, third })
}

/// Rank of the syzygies after moving each to the common total degree `target`
/// by a power of s times a power of u.
pub fn independence_rank<F: Field>(syz: &[SyzygyVector<F>], target: BiDegree) -> usize {
    let rows: Vec<Vec<F>> = syz
        .iter()
        .map(|v| {
            let gap = target - v.total_degree;
            assert!(gap.is_nonneg(), "target below a syzygy degree");
            let m = BiPoly::monomial(F::one(), [gap.a1 as u32, 0, gap.a2 as u32, 0]);
            v.times(&m).flat()
        })
        .collect();
    let width = rows.first().map_or(0, |r| r.len());
    Matrix::from_rows_with_cols(width, rows).rank()
}
