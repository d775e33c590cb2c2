use std::collections::HashMap;

use rayon::prelude::*;

use super::{BettiTable, Convention};
use crate::bipoly::{bd, dim_r, monomial_index, BiDegree};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::segre::{basepoint_free, BasepointVerdict};
use crate::strands::ideal_strand;
use crate::system::SystemF;

/// (R/I_W)_b with the non-pivot monomials of the echelonized I_b as basis.
#[derive(Clone, Debug)]
pub struct QuotientStrand<F> {
    pub degree: BiDegree,
    /// Standard monomial indices (strand order of R_b).
    pub standard: Vec<usize>,
    position: Vec<Option<usize>>,
    /// Echelon rows of I_b with their pivot monomial.
    pivots: HashMap<usize, Vec<F>>,
}

impl<F: Field> QuotientStrand<F> {
    pub fn new(sys: &SystemF<F>, b: BiDegree) -> Self {
        let n = dim_r(b);
        let mut pivots = HashMap::new();
        if n > 0 && (b - sys.d()).is_nonneg() {
            let (r, piv) = ideal_strand(sys, b).transpose().rref();
            for (i, p) in piv.into_iter().enumerate() {
                pivots.insert(p, r.row(i).to_vec());
            }
        }
        let mut position = vec![None; n];
        let mut standard = Vec::new();
        for (k, slot) in position.iter_mut().enumerate() {
            if !pivots.contains_key(&k) {
                *slot = Some(standard.len());
                standard.push(k);
            }
        }
        QuotientStrand {
            degree: b,
            standard,
            position,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    /// Normal form of the monomial with strand index k, as sparse standard coordinates.
    pub fn monomial_nf(&self, k: usize) -> Vec<(usize, F)> {
        match self.pivots.get(&k) {
            None => vec![(self.position[k].expect("standard"), F::one())],
            Some(row) => self
                .standard
                .iter()
                .enumerate()
                .filter(|(_, &m)| !row[m].is_zero())
                .map(|(p, &m)| (p, -row[m].clone()))
                .collect(),
        }
    }

    /// Standard coordinates of an arbitrary vector of R_b.
    pub fn normal_form(&self, v: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim()];
        for (k, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (p, x) in self.monomial_nf(k) {
                out[p] = out[p].clone() + c.clone() * x;
            }
        }
        out
    }
}

/// Degrees of s, t, u, v.
const VAR_DEG: [BiDegree; 4] = [bd(1, 0), bd(1, 0), bd(0, 1), bd(0, 1)];

fn subset_degree(mask: usize) -> BiDegree {
    (0..4)
        .filter(|k| mask & (1 << k) != 0)
        .fold(BiDegree::ZERO, |acc, k| acc + VAR_DEG[k])
}

/// Strand index of x_k times the monomial with strand index `idx` in R_b.
fn shift_monomial(b: BiDegree, idx: usize, k: usize) -> usize {
    let i = b.a1 - (idx as i64) / (b.a2 + 1);
    let j = b.a2 - (idx as i64) % (b.a2 + 1);
    let target = b + VAR_DEG[k];
    match k {
        0 => monomial_index(target, i + 1, j),
        1 => monomial_index(target, i, j),
        2 => monomial_index(target, i, j + 1),
        _ => monomial_index(target, i, j),
    }
}

/// dim Tor_i(R/I_W, K)_a for i = 0..=4, from quotient strands indexed by degree.
pub fn tor_dims<'q, F: Field>(
    quot: &dyn Fn(BiDegree) -> Option<&'q QuotientStrand<F>>,
    a: BiDegree,
) -> [usize; 5] {
    let subsets: Vec<Vec<usize>> = (0..=4)
        .map(|i| (0..16usize).filter(|m| m.count_ones() as usize == i).collect())
        .collect();
    let dim_of = |mask: usize| quot(a - subset_degree(mask)).map_or(0, |q| q.dim());
    let dims: Vec<usize> = subsets
        .iter()
        .map(|ss| ss.iter().map(|&m| dim_of(m)).sum())
        .collect();
    // rank of d_i : K_i -> K_{i-1}
    let mut ranks = [0usize; 6];
    for i in 1..=4 {
        if dims[i] == 0 || dims[i - 1] == 0 {
            continue;
        }
        let mut offs = HashMap::new();
        let mut acc = 0;
        for &m in &subsets[i - 1] {
            offs.insert(m, acc);
            acc += dim_of(m);
        }
        let mut mat = Matrix::<F>::zeros(dims[i - 1], dims[i]);
        let mut col = 0;
        for &mask in &subsets[i] {
            let Some(src) = quot(a - subset_degree(mask)) else {
                continue;
            };
            for &mono in &src.standard {
                let mut sign_pos = 0;
                for k in 0..4 {
                    if mask & (1 << k) == 0 {
                        continue;
                    }
                    let sub = mask & !(1 << k);
                    let sign = if sign_pos % 2 == 0 { F::one() } else { -F::one() };
                    sign_pos += 1;
                    let Some(tgt) = quot(a - subset_degree(sub)) else {
                        continue;
                    };
                    let off = offs[&sub];
                    for (p, x) in tgt.monomial_nf(shift_monomial(src.degree, mono, k)) {
                        let r = off + p;
                        mat[(r, col)] = mat[(r, col)].clone() + sign.clone() * x;
                    }
                }
                col += 1;
            }
        }
        ranks[i] = mat.rank();
    }
    let mut out = [0; 5];
    for i in 0..=4 {
        out[i] = dims[i] - ranks[i] - ranks[i + 1];
    }
    out
}

/// Betti numbers on [0, bx] from the Koszul complex on (s,t,u,v)
/// tensored with R/I_W.
pub fn betti_table<F: Field>(sys: &SystemF<F>, bx: BiDegree, convention: Convention) -> BettiTable {
    let pts = bx.box_points();
    let strands: HashMap<BiDegree, QuotientStrand<F>> = pts
        .par_iter()
        .map(|&b| (b, QuotientStrand::new(sys, b)))
        .collect();
    let quot = |b: BiDegree| strands.get(&b);
    let rows: Vec<(BiDegree, [usize; 5])> =
        pts.par_iter().map(|&a| (a, tor_dims(&quot, a))).collect();
    let mut t = BettiTable::new(Convention::Quotient);
    for (a, dims) in rows {
        for (i, &m) in dims.iter().enumerate() {
            t.add(i, a, m);
        }
    }
    if let BasepointVerdict::HasBasepoint { .. } | BasepointVerdict::Inconclusive { .. } =
        basepoint_free(sys)
    {
        t.warning = Some("input is not known to be basepoint free".into());
    }
    t.to_convention(convention)
}
