use crate::bipoly::{bd, gcd_all, BiDegree, BiPoly, BinaryForm};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::system::SystemF;

use super::syzygy::SyzygyVector;

/// Minimal graded kernel basis N of the row [q_0 ... q_(m-1)].
#[derive(Clone, Debug, PartialEq)]
pub struct HilbertBurchData<F> {
    pub generators: Vec<BinaryForm<F>>,
    /// Columns of N, each a vector of m forms of degree `column_degrees[k]`.
    pub kernel: Vec<Vec<BinaryForm<F>>>,
    pub column_degrees: Vec<usize>,
}

impl<F: Field> HilbertBurchData<F> {
    pub fn entry(&self, row: usize, col: usize) -> &BinaryForm<F> {
        &self.kernel[col][row]
    }

    pub fn verify(&self) -> bool {
        self.kernel.iter().all(|col| {
            let n = self.generators[0].degree() + col[0].degree();
            col.iter()
                .zip(&self.generators)
                .fold(BinaryForm::zero(n), |acc, (a, q)| &acc + &(a * q))
                .is_zero()
        })
    }
}

/// Coefficient matrix of (a_0..a_(m-1)) -> Σ a_i q_i on k[u,v]_e^m.
fn row_strand<F: Field>(q: &[BinaryForm<F>], e: usize) -> Matrix<F> {
    let n = q[0].degree();
    let mut m = Matrix::zeros(n + e + 1, q.len() * (e + 1));
    for (i, qi) in q.iter().enumerate() {
        for j in 0..=e {
            for (k, c) in qi.coeffs().iter().enumerate() {
                m[(j + k, i * (e + 1) + j)] = c.clone();
            }
        }
    }
    m
}

fn split_vector<F: Field>(v: &[F], m: usize, e: usize) -> Vec<BinaryForm<F>> {
    (0..m)
        .map(|i| BinaryForm::new(v[i * (e + 1)..(i + 1) * (e + 1)].to_vec()))
        .collect()
}

fn flatten<F: Field>(col: &[BinaryForm<F>]) -> Vec<F> {
    col.iter().flat_map(|f| f.coeffs().iter().cloned()).collect()
}

pub fn hb_kernel<F: Field>(q: &[BinaryForm<F>]) -> Result<HilbertBurchData<F>> {
    let m = q.len();
    if m < 2 {
        return Err(Error::Dimension { expected: 2, got: m });
    }
    let n = q[0].degree();
    if q.iter().any(|f| f.degree() != n) {
        return Err(Error::Degree("forms must share one degree".into()));
    }
    let g = gcd_all(q)?;
    if g.degree() > 0 {
        return Err(Error::CommonFactor(g.degree()));
    }
    let mut kernel: Vec<Vec<BinaryForm<F>>> = Vec::new();
    let mut degrees = Vec::new();
    for e in 0..=n {
        if kernel.len() == m - 1 {
            break;
        }
        let mut span: Vec<Vec<F>> = Vec::new();
        for (col, &b) in kernel.iter().zip(&degrees) {
            for j in 0..=(e - b) {
                let mono = BinaryForm::monomial(F::one(), j, e - b);
                let shifted: Vec<BinaryForm<F>> = col.iter().map(|f| f * &mono).collect();
                span.push(flatten(&shifted));
            }
        }
        let width = m * (e + 1);
        let mut rank = Matrix::from_rows_with_cols(width, span.clone()).rank();
        for v in row_strand(q, e).kernel().basis {
            span.push(v.clone());
            let r = Matrix::from_rows_with_cols(width, span.clone()).rank();
            if r > rank {
                rank = r;
                kernel.push(split_vector(&v, m, e));
                degrees.push(e);
            } else {
                span.pop();
            }
        }
    }
    let data = HilbertBurchData {
        generators: q.to_vec(),
        kernel,
        column_degrees: degrees,
    };
    if data.kernel.len() != m - 1 || !data.verify() {
        return Err(Error::Internal("Hilbert-Burch kernel incomplete".into()));
    }
    Ok(data)
}

fn det<F: Field>(m: &[Vec<BinaryForm<F>>], deg: usize) -> BinaryForm<F> {
    let k = m.len();
    let mut acc = BinaryForm::zero(deg);
    let mut perm: Vec<usize> = (0..k).collect();
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let mut term = m[0][p[0]].clone();
        for (r, &c) in p.iter().enumerate().skip(1) {
            term = &term * &m[r][c];
        }
        acc = if inversions % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    });
    acc
}

fn permute(p: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
    if i == p.len() {
        f(p);
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permute(p, i + 1, f);
        p.swap(i, j);
    }
}

/// (i, j) row pairs of the minors entering K, in the order of the entries
/// -n12, -n02, -n01, n15 - n24, n05 - n23, n04 - n13, -n45, -n35, -n34.
const K_TERMS: [(usize, usize); 12] = [
    (1, 2),
    (0, 2),
    (0, 1),
    (1, 5),
    (2, 4),
    (0, 5),
    (2, 3),
    (0, 4),
    (1, 3),
    (4, 5),
    (3, 5),
    (3, 4),
];
const K_SLOTS: [&[usize]; 9] = [&[0], &[1], &[2], &[3, 4], &[5, 6], &[7, 8], &[9], &[10], &[11]];
/// Signs of the twelve terms of a K row, in slot order. Other patterns are
/// searched only if this one fails M·Kᵗ = 0.
pub const DEFAULT_SIGNS: [i8; 12] = [-1, -1, -1, 1, -1, 1, -1, 1, -1, -1, -1, -1];

#[derive(Clone, Debug)]
pub struct Degree3Syzygies<F> {
    pub hb: HilbertBurchData<F>,
    /// Rows of K; entry l of row k pairs with column l of M.
    pub k: Vec<Vec<BinaryForm<F>>>,
    pub signs: [i8; 12],
    pub syzygies: Vec<SyzygyVector<F>>,
    pub degrees: Vec<BiDegree>,
    /// M·Kᵗ == 0.
    pub mk_zero: bool,
    /// dim ker M_e agrees with the module generated by the rows of K for all e <= n.
    pub strand_check: bool,
}

/// Entries of M·Kᵗ row by row for one K row.
fn m_times<F: Field>(q: &[BinaryForm<F>], e: &[BinaryForm<F>]) -> [BinaryForm<F>; 4] {
    let dot = |pairs: &[(usize, usize)]| {
        let deg = q[0].degree() + e[0].degree();
        pairs
            .iter()
            .fold(BinaryForm::zero(deg), |acc, &(qi, ei)| &acc + &(&q[qi] * &e[ei]))
    };
    [
        dot(&[(0, 0), (1, 1), (2, 2)]),
        dot(&[(3, 0), (4, 1), (5, 2), (0, 3), (1, 4), (2, 5)]),
        dot(&[(3, 3), (4, 4), (5, 5), (0, 6), (1, 7), (2, 8)]),
        dot(&[(3, 6), (4, 7), (5, 8)]),
    ]
}

fn k_row<F: Field>(minors: &[BinaryForm<F>], signs: &[i8; 12]) -> Vec<BinaryForm<F>> {
    K_SLOTS
        .iter()
        .map(|slot| {
            let deg = minors[0].degree();
            slot.iter().fold(BinaryForm::zero(deg), |acc, &t| {
                if signs[t] > 0 {
                    &acc + &minors[t]
                } else {
                    &acc - &minors[t]
                }
            })
        })
        .collect()
}

/// The 4×9 coefficient matrix M at u,v-degree e: (k[u,v]_e)^9 -> (k[u,v]_(n+e))^4.
fn m_strand_kernel_dim<F: Field>(q: &[BinaryForm<F>], e: usize) -> usize {
    let n = q[0].degree();
    let h = n + e + 1;
    let w = e + 1;
    let mut m = Matrix::<F>::zeros(4 * h, 9 * w);
    let layout: [&[(usize, usize)]; 4] = [
        &[(0, 0), (1, 1), (2, 2)],
        &[(3, 0), (4, 1), (5, 2), (0, 3), (1, 4), (2, 5)],
        &[(3, 3), (4, 4), (5, 5), (0, 6), (1, 7), (2, 8)],
        &[(3, 6), (4, 7), (5, 8)],
    ];
    for (r, pairs) in layout.iter().enumerate() {
        for &(qi, col) in pairs.iter() {
            for j in 0..w {
                for (k, c) in q[qi].coeffs().iter().enumerate() {
                    m[(r * h + j + k, col * w + j)] = c.clone();
                }
            }
        }
    }
    9 * w - m.rank()
}

pub fn degree3_syzygies_with_report<F: Field>(sys: &SystemF<F>) -> Result<Degree3Syzygies<F>> {
    let d = sys.d();
    if d.a1 != 1 {
        return Err(Error::Degree(format!("need d = (1,n), got {d}")));
    }
    let n = d.a2 as usize;
    let q = sys.q_forms()?;
    let rank = Matrix::from_rows(q.iter().map(|f| f.coeffs().to_vec()).collect()).rank();
    if rank < 6 {
        return Err(Error::DependentForms(rank));
    }
    let hb = hb_kernel(&q)?;
    let cols = hb.column_degrees.len();
    let minors_for = |k: usize| -> Vec<BinaryForm<F>> {
        let deg = n - hb.column_degrees[k];
        K_TERMS
            .iter()
            .map(|&(i, j)| {
                let sub: Vec<Vec<BinaryForm<F>>> = (0..6)
                    .filter(|&r| r != i && r != j)
                    .map(|r| {
                        (0..cols)
                            .filter(|&c| c != k)
                            .map(|c| hb.entry(r, c).clone())
                            .collect()
                    })
                    .collect();
                det(&sub, deg)
            })
            .collect()
    };
    let minors: Vec<Vec<BinaryForm<F>>> = (0..cols).map(minors_for).collect();
    let works = |signs: &[i8; 12]| {
        minors
            .iter()
            .all(|mk| m_times(&q, &k_row(mk, signs)).iter().all(|x| x.is_zero()))
    };
    let mut signs = DEFAULT_SIGNS;
    if !works(&signs) {
        signs = (0u32..4096)
            .map(|bits| {
                let mut s = [1i8; 12];
                for (t, x) in s.iter_mut().enumerate() {
                    if bits & (1 << t) != 0 {
                        *x = -1;
                    }
                }
                s
            })
            .find(|s| works(s))
            .ok_or_else(|| Error::NotASyzygy("no sign pattern gives M·Kᵗ = 0".into()))?;
    }
    let k: Vec<Vec<BinaryForm<F>>> = minors.iter().map(|mk| k_row(mk, &signs)).collect();
    let s2 = BiPoly::<F>::monomial(F::one(), [2, 0, 0, 0]);
    let st = BiPoly::<F>::monomial(F::one(), [1, 1, 0, 0]);
    let t2 = BiPoly::<F>::monomial(F::one(), [0, 2, 0, 0]);
    let mut syzygies = Vec::new();
    for row in &k {
        let entry = |l: usize| -> BiPoly<F> {
            let a = &s2 * &row[l].to_bipoly();
            let b = &st * &row[3 + l].to_bipoly();
            let c = &t2 * &row[6 + l].to_bipoly();
            &(&a + &b) + &c
        };
        syzygies.push(SyzygyVector::new(sys, [entry(0), entry(1), entry(2)])?);
    }
    let degrees = hb
        .column_degrees
        .iter()
        .map(|&b| bd(3, (2 * n - b) as i64))
        .collect();
    let strand_check = (0..=n).all(|e| {
        let expected: usize = hb
            .column_degrees
            .iter()
            .map(|&b| (e + b + 1).saturating_sub(n))
            .sum();
        m_strand_kernel_dim(&q, e) == expected
    });
    Ok(Degree3Syzygies {
        hb,
        k,
        signs,
        syzygies,
        degrees,
        mk_zero: true,
        strand_check,
    })
}

/// Five syzygies with entries quadratic in s, t, of degrees (3, 2n - b_k).
pub fn degree3_syzygies<F: Field>(sys: &SystemF<F>) -> Result<Vec<SyzygyVector<F>>> {
    Ok(degree3_syzygies_with_report(sys)?.syzygies)
}
