use rand::Rng;

use crate::bipoly::{dim_r, split_st, BiDegree, BiPoly, BinaryForm};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::linalg::Matrix;

/// Three linearly independent forms f0, f1, f2 of a common bidegree d >= (1,1).
#[derive(Clone, Debug, PartialEq)]
pub struct SystemF<F> {
    d: BiDegree,
    f: [BiPoly<F>; 3],
}

impl<F: Field> SystemF<F> {
    pub fn new(f: [BiPoly<F>; 3]) -> Result<Self> {
        let d = f[0].degree();
        if f.iter().any(|g| g.degree() != d) {
            return Err(Error::Degree("forms must share one bidegree".into()));
        }
        if d.a1 < 1 || d.a2 < 1 {
            return Err(Error::Degree(format!("need d >= (1,1), got {d}")));
        }
        let m = Matrix::from_rows(f.iter().map(|g| g.coeffs().to_vec()).collect());
        if m.rank() < 3 {
            return Err(Error::Dependent);
        }
        Ok(SystemF { d, f })
    }

    pub fn from_vec(f: Vec<BiPoly<F>>) -> Result<Self> {
        let arr: [BiPoly<F>; 3] = f
            .try_into()
            .map_err(|v: Vec<BiPoly<F>>| Error::Dimension {
                expected: 3,
                got: v.len(),
            })?;
        Self::new(arr)
    }

    /// d = (1,n) system f_i = s·p_i + t·q_i.
    pub fn from_st(p: &[BinaryForm<F>; 3], q: &[BinaryForm<F>; 3]) -> Result<Self> {
        Self::new([0, 1, 2].map(|i| BiPoly::from_st(&p[i], &q[i])))
    }

    /// Uniformly random coefficients; resamples on linear dependence.
    pub fn random<R: Rng + ?Sized>(d: BiDegree, rng: &mut R, bound: u32) -> Result<Self> {
        for _ in 0..100 {
            let f = [0, 1, 2].map(|_| {
                let c = (0..dim_r(d)).map(|_| F::sample(rng, bound)).collect();
                BiPoly::from_coeffs(d, c).expect("sized")
            });
            match Self::new(f) {
                Ok(s) => return Ok(s),
                Err(Error::Dependent) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::Sampling(100))
    }

    pub fn d(&self) -> BiDegree {
        self.d
    }

    pub fn f(&self) -> &[BiPoly<F>; 3] {
        &self.f
    }

    pub fn field(&self) -> FieldSpec {
        F::spec()
    }

    /// The same system with the two factors exchanged (s <-> u, t <-> v).
    pub fn swapped(&self) -> Self {
        SystemF {
            d: self.d.swap(),
            f: [0, 1, 2].map(|i| self.f[i].swap_factors()),
        }
    }

    /// Basis change f'_k = sum_j c[k][j] f_j.
    pub fn transform(&self, c: &Matrix<F>) -> Result<Self> {
        Self::new([0, 1, 2].map(|k| {
            (0..3).fold(BiPoly::zero(self.d), |acc, j| {
                &acc + &self.f[j].scale(&c[(k, j)])
            })
        }))
    }

    /// (p_i, q_i) with f_i = s·p_i + t·q_i; requires d1 == 1.
    pub fn split(&self) -> Result<[(BinaryForm<F>, BinaryForm<F>); 3]> {
        let a = split_st(&self.f[0])?;
        let b = split_st(&self.f[1])?;
        let c = split_st(&self.f[2])?;
        Ok([a, b, c])
    }

    /// The six forms [p0, p1, p2, q0, q1, q2].
    pub fn q_forms(&self) -> Result<Vec<BinaryForm<F>>> {
        let sp = self.split()?;
        let mut v: Vec<BinaryForm<F>> = sp.iter().map(|(p, _)| p.clone()).collect();
        v.extend(sp.iter().map(|(_, q)| q.clone()));
        Ok(v)
    }

    pub fn n(&self) -> usize {
        self.d.a2 as usize
    }
}
