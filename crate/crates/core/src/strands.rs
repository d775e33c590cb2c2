use rayon::prelude::*;
use serde::Serialize;

use crate::bipoly::{bd, dim_r, BiDegree, BiPoly};
use crate::combinat::Grid;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::polymat::PolyMatrix;
use crate::sweep::band_rank_profile;
use crate::system::SystemF;

/// Symbols s^c t^(st_part-c) ⊗ 1/(u^(i+1) v^(j+1)) with i + j = uv_order,
/// ordered c descending then i descending. u^β v^γ sends the inverse part to
/// 1/(u^(i+1-β) v^(j+1-γ)) when both exponents stay >= 1, else to zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InverseStrandBasis {
    pub st_part: i64,
    pub uv_order: i64,
}

impl InverseStrandBasis {
    pub fn size(&self) -> usize {
        if self.st_part < 0 || self.uv_order < 0 {
            0
        } else {
            ((self.st_part + 1) * (self.uv_order + 1)) as usize
        }
    }

    #[inline]
    pub fn index(&self, c: i64, i: i64) -> usize {
        ((self.st_part - c) * (self.uv_order + 1) + (self.uv_order - i)) as usize
    }

    pub fn symbols(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.size());
        if self.size() == 0 {
            return out;
        }
        for c in (0..=self.st_part).rev() {
            for i in (0..=self.uv_order).rev() {
                let j = self.uv_order - i;
                out.push(format!(
                    "s^{c}*t^{} / (u^{}*v^{})",
                    self.st_part - c,
                    i + 1,
                    j + 1
                ));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum StrandLabel {
    /// `copies` stacked copies of R_degree.
    Plain { degree: BiDegree, copies: usize },
    /// Inverse-monomial strand; `mirrored` when the roles of the factors are exchanged.
    Inverse {
        basis: InverseStrandBasis,
        copies: usize,
        mirrored: bool,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct StrandMap<F> {
    pub matrix: Matrix<F>,
    pub domain: StrandLabel,
    pub codomain: StrandLabel,
}

/// φ1 at a: R_(a1-3d1, 3d2-a2-2) → R^3_(a1-2d1, 2d2-a2-2) in the inverse model.
pub fn phi1<F: Field>(sys: &SystemF<F>, a: BiDegree) -> StrandMap<F> {
    let d = sys.d();
    let dom = InverseStrandBasis {
        st_part: a.a1 - 3 * d.a1,
        uv_order: 3 * d.a2 - a.a2 - 2,
    };
    let cod = InverseStrandBasis {
        st_part: dom.st_part + d.a1,
        uv_order: dom.uv_order - d.a2,
    };
    let (nd, nc) = (dom.size(), cod.size());
    let mut m = Matrix::<F>::zeros(3 * nc, nd);
    if nd > 0 && nc > 0 {
        for (l, f) in sys.f().iter().enumerate() {
            for (e, beta, c) in f.terms() {
                let gamma = d.a2 - beta;
                for cc in 0..=dom.st_part {
                    for i in 0..=dom.uv_order {
                        let j = dom.uv_order - i;
                        let (i2, j2) = (i - beta, j - gamma);
                        if i2 < 0 || j2 < 0 {
                            continue;
                        }
                        let row = l * nc + cod.index(cc + e, i2);
                        let col = dom.index(cc, i);
                        m[(row, col)] = m[(row, col)].clone() + c.clone();
                    }
                }
            }
        }
    }
    StrandMap {
        matrix: m,
        domain: StrandLabel::Inverse {
            basis: dom,
            copies: 1,
            mirrored: false,
        },
        codomain: StrandLabel::Inverse {
            basis: cod,
            copies: 3,
            mirrored: false,
        },
    }
}

fn mirror<F>(mut m: StrandMap<F>) -> StrandMap<F> {
    for label in [&mut m.domain, &mut m.codomain] {
        if let StrandLabel::Inverse { mirrored, .. } = label {
            *mirrored = true;
        }
    }
    m
}

/// (φ1, φ2) at a; φ2 is φ1 of the swapped system at the swapped bidegree.
pub fn phi_matrices<F: Field>(sys: &SystemF<F>, a: BiDegree) -> (StrandMap<F>, StrandMap<F>) {
    (phi1(sys, a), mirror(phi1(&sys.swapped(), a.swap())))
}

pub fn h1_dim<F: Field>(sys: &SystemF<F>, a: BiDegree) -> usize {
    let (p1, p2) = phi_matrices(sys, a);
    p1.matrix.cols() - p1.matrix.rank() + p2.matrix.cols() - p2.matrix.rank()
}

/// The stacked multiplication map (R_(a-d))^3 → R_a.
pub fn ideal_strand<F: Field>(sys: &SystemF<F>, a: BiDegree) -> Matrix<F> {
    koszul_differentials(sys)[0].strand(a)
}

pub fn hf_quotient<F: Field>(sys: &SystemF<F>, a: BiDegree) -> usize {
    if !a.is_nonneg() {
        return 0;
    }
    if !(a - sys.d()).is_nonneg() {
        return dim_r(a);
    }
    dim_r(a) - ideal_strand(sys, a).rank()
}

/// δ1, δ2, δ3 of 0 → R(-3d) → R(-2d)^3 → R(-d)^3 → R, with
/// C2 basis e01, e02, e12.
pub fn koszul_differentials<F: Field>(sys: &SystemF<F>) -> [PolyMatrix<F>; 3] {
    let d = sys.d();
    let [f0, f1, f2] = sys.f().clone();
    let z = |deg: BiDegree| BiPoly::<F>::zero(deg);
    let d1 = PolyMatrix::new(
        vec![BiDegree::ZERO],
        vec![d; 3],
        vec![vec![f0.clone(), f1.clone(), f2.clone()]],
    )
    .expect("shifts");
    let d2 = PolyMatrix::new(
        vec![d; 3],
        vec![2 * d; 3],
        vec![
            vec![-&f1, -&f2, z(d)],
            vec![f0.clone(), z(d), -&f2],
            vec![z(d), f0.clone(), f1.clone()],
        ],
    )
    .expect("shifts");
    let d3 = PolyMatrix::new(
        vec![2 * d; 3],
        vec![3 * d],
        vec![vec![f2.clone()], vec![-&f1], vec![f0.clone()]],
    )
    .expect("shifts");
    [d1, d2, d3]
}

/// dim H_i of the degree-a strand of the Koszul complex on f.
pub fn koszul_strand_homology<F: Field>(sys: &SystemF<F>, a: BiDegree, i: usize) -> usize {
    assert!(i <= 3, "Koszul index {i} out of range");
    let ds = koszul_differentials(sys);
    let dim = |k: usize| -> usize {
        match k {
            0 => dim_r(a),
            1 => 3 * dim_r(a - sys.d()),
            2 => 3 * dim_r(a - 2 * sys.d()),
            _ => dim_r(a - 3 * sys.d()),
        }
    };
    let rank = |k: usize| -> usize {
        if (1..=3).contains(&k) {
            ds[k - 1].strand(a).rank()
        } else {
            0
        }
    };
    dim(i) - rank(i) - rank(i + 1)
}

/// Bidegrees where full rank of φ1, φ2 is not automatic.
pub fn critical(d: BiDegree, a: BiDegree) -> bool {
    (a.a1 >= 3 * d.a1 && d.a2 <= a.a2 && a.a2 <= 2 * d.a2 - 2)
        || (a.a2 >= 3 * d.a2 && d.a1 <= a.a1 && a.a1 <= 2 * d.a1 - 2)
}

pub fn default_box(d: BiDegree) -> BiDegree {
    bd(4 * d.a1, 4 * d.a2)
}

/// Domain dimension, codomain dimension and rank of a map.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RankCell {
    pub dom: usize,
    pub cod: usize,
    pub rank: usize,
}

impl RankCell {
    pub fn full(&self) -> bool {
        self.rank == self.dom.min(self.cod)
    }

    pub fn kernel(&self) -> usize {
        self.dom - self.rank
    }
}

/// Band blocks of φ1 along a1 for fixed inverse order m = 3d2 - a2 - 2.
pub fn phi1_blocks<F: Field>(sys: &SystemF<F>, m: i64) -> Vec<Matrix<F>> {
    let d = sys.d();
    let m2 = m - d.a2;
    let cw = (m + 1) as usize;
    let ow = if m2 >= 0 { (m2 + 1) as usize } else { 0 };
    let mut blocks = vec![Matrix::zeros(3 * ow, cw); d.a1 as usize + 1];
    if ow == 0 {
        return blocks;
    }
    for (l, f) in sys.f().iter().enumerate() {
        for (e, beta, c) in f.terms() {
            let gamma = d.a2 - beta;
            for i in 0..=m {
                let (i2, j2) = (i - beta, m - i - gamma);
                if i2 < 0 || j2 < 0 {
                    continue;
                }
                let row = l * ow + (m2 - i2) as usize;
                let col = (m - i) as usize;
                let b = &mut blocks[e as usize];
                b[(row, col)] = b[(row, col)].clone() + c.clone();
            }
        }
    }
    blocks
}

fn side_ranks<F: Field>(sys: &SystemF<F>, bx: BiDegree) -> Grid<RankCell> {
    let d = sys.d();
    let mut grid = Grid::new(bx, RankCell::default());
    if bx.a1 < 3 * d.a1 {
        return grid;
    }
    let max_k = (bx.a1 - 3 * d.a1) as usize;
    let rows: Vec<(i64, Vec<RankCell>)> = (0..=bx.a2)
        .into_par_iter()
        .filter_map(|a2| {
            let m = 3 * d.a2 - a2 - 2;
            if m < 0 {
                return None;
            }
            let blocks = phi1_blocks(sys, m);
            let prof = band_rank_profile(&blocks, max_k);
            let m2 = m - d.a2;
            let cells = prof
                .iter()
                .enumerate()
                .map(|(k, &rank)| {
                    let k = k as i64;
                    RankCell {
                        dom: ((k + 1) * (m + 1)) as usize,
                        cod: if m2 >= 0 {
                            (3 * (k + d.a1 + 1) * (m2 + 1)) as usize
                        } else {
                            0
                        },
                        rank,
                    }
                })
                .collect();
            Some((a2, cells))
        })
        .collect();
    for (a2, cells) in rows {
        for (k, c) in cells.into_iter().enumerate() {
            grid.set(bd(3 * d.a1 + k as i64, a2), c);
        }
    }
    grid
}

/// Ranks of φ1 and φ2 on [0, bx], by band sweeps.
pub fn phi_rank_grids<F: Field>(sys: &SystemF<F>, bx: BiDegree) -> (Grid<RankCell>, Grid<RankCell>) {
    let g1 = side_ranks(sys, bx);
    let g2s = side_ranks(&sys.swapped(), bx.swap());
    let g2 = Grid::from_fn(bx, |a| g2s.get(a.swap()));
    (g1, g2)
}

pub fn h1_grid<F: Field>(sys: &SystemF<F>, bx: BiDegree) -> Grid<usize> {
    let (g1, g2) = phi_rank_grids(sys, bx);
    Grid::from_fn(bx, |a| g1.get(a).kernel() + g2.get(a).kernel())
}

/// Hilbert function of R/I_W on [0, bx], by band sweeps.
pub fn hf_grid<F: Field>(sys: &SystemF<F>, bx: BiDegree) -> Grid<usize> {
    let d = sys.d();
    let mut grid = Grid::from_fn(bx, dim_r);
    if bx.a1 < d.a1 || bx.a2 < d.a2 {
        return grid;
    }
    let max_k = (bx.a1 - d.a1) as usize;
    let rows: Vec<(i64, Vec<usize>)> = (d.a2..=bx.a2)
        .into_par_iter()
        .map(|a2| {
            let e = a2 - d.a2;
            let cw = (e + 1) as usize;
            let mut blocks = vec![Matrix::<F>::zeros((a2 + 1) as usize, 3 * cw); d.a1 as usize + 1];
            for (l, f) in sys.f().iter().enumerate() {
                for (si, beta, c) in f.terms() {
                    for j in 0..=e {
                        let col = l * cw + (e - j) as usize;
                        let row = (a2 - (j + beta)) as usize;
                        let b = &mut blocks[si as usize];
                        b[(row, col)] = b[(row, col)].clone() + c.clone();
                    }
                }
            }
            (a2, band_rank_profile(&blocks, max_k))
        })
        .collect();
    for (a2, prof) in rows {
        for (k, rank) in prof.into_iter().enumerate() {
            let a = bd(d.a1 + k as i64, a2);
            grid.set(a, dim_r(a) - rank);
        }
    }
    grid
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Genericity {
    GenericOnBox,
    NotGeneric(BiDegree),
}

/// Full-rank test of φ1, φ2 on [0, bx]. The witness is the first failing
/// bidegree, critical ranges first, then lexicographic.
pub fn is_generic<F: Field>(sys: &SystemF<F>, bx: BiDegree) -> Result<Genericity> {
    let d = sys.d();
    let need = bd(3 * d.a1 + 1, 3 * d.a2 + 1);
    if !need.le(bx) {
        return Err(Error::BoxTooSmall { got: bx, need });
    }
    let (g1, g2) = phi_rank_grids(sys, bx);
    let witness = bx
        .box_points()
        .into_iter()
        .filter(|&a| !g1.get(a).full() || !g2.get(a).full())
        .min_by_key(|&a| (!critical(d, a), a));
    Ok(match witness {
        Some(a) => Genericity::NotGeneric(a),
        None => Genericity::GenericOnBox,
    })
}
