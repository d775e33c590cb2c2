//! H1 as an R-module in the inverse-monomial model, and the Koszul complex
//! of (s,t,u,v) on it. H1 splits as ker φ1 ⊕ ker φ2; the second summand is
//! ker φ1 of the swapped system at the swapped bidegree, so each routine
//! works on one side and the other side is obtained by swapping.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::bipoly::{bd, BiDegree};
use crate::combinat::Grid;
use crate::field::Field;
use crate::linalg::{Kernel, Matrix};
use crate::strands::{phi1, phi_rank_grids, InverseStrandBasis};
use crate::system::SystemF;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    S,
    T,
    U,
    V,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::S, Var::T, Var::U, Var::V];

    pub fn degree(self) -> BiDegree {
        match self {
            Var::S | Var::T => bd(1, 0),
            Var::U | Var::V => bd(0, 1),
        }
    }
}

fn domain_basis(d: BiDegree, a: BiDegree) -> InverseStrandBasis {
    InverseStrandBasis {
        st_part: a.a1 - 3 * d.a1,
        uv_order: 3 * d.a2 - a.a2 - 2,
    }
}

/// Kernel of φ1 at a, as a subspace of the inverse-monomial domain.
pub fn h1_side_kernel<F: Field>(sys: &SystemF<F>, a: BiDegree) -> Kernel<F> {
    phi1(sys, a).matrix.kernel()
}

/// x · v for v in the φ1 domain at a; the result lives in the domain at a + deg x.
fn act<F: Field>(d: BiDegree, a: BiDegree, x: Var, v: &[F]) -> Vec<F> {
    let src = domain_basis(d, a);
    let tgt = domain_basis(d, a + x.degree());
    let mut out = vec![F::zero(); tgt.size()];
    if out.is_empty() {
        return out;
    }
    let m = src.uv_order;
    for c in 0..=src.st_part {
        for i in 0..=m {
            let val = &v[src.index(c, i)];
            if val.is_zero() {
                continue;
            }
            let k = match x {
                Var::S => tgt.index(c + 1, i),
                Var::T => tgt.index(c, i),
                Var::U if i >= 1 => tgt.index(c, i - 1),
                Var::V if m - i >= 1 => tgt.index(c, i),
                _ => continue,
            };
            out[k] = out[k].clone() + val.clone();
        }
    }
    out
}

/// Per-degree kernel cache for one side.
struct Side<'a, F> {
    sys: &'a SystemF<F>,
    cache: HashMap<BiDegree, Kernel<F>>,
}

impl<'a, F: Field> Side<'a, F> {
    fn new(sys: &'a SystemF<F>) -> Self {
        Side {
            sys,
            cache: HashMap::new(),
        }
    }

    fn kernel(&mut self, a: BiDegree) -> &Kernel<F> {
        let sys = self.sys;
        self.cache.entry(a).or_insert_with(|| h1_side_kernel(sys, a))
    }

    /// dim K_a minus the rank of the images of K_(a - deg x), x in {s,t,u,v}.
    fn minimal_generators(&mut self, a: BiDegree) -> usize {
        let d = self.sys.d();
        let dim = self.kernel(a).dim();
        if dim == 0 {
            return 0;
        }
        let mut rows = Vec::new();
        for x in Var::ALL {
            let b = a - x.degree();
            for v in &self.kernel(b).basis {
                rows.push(act(d, b, x, v));
            }
        }
        let width = domain_basis(d, a).size();
        dim - Matrix::from_rows_with_cols(width, rows).rank()
    }

    /// Homology dimensions of the degree-a strand of the Koszul complex of
    /// (s,t,u,v) on this side; index j sits over the subsets of size j.
    fn koszul_homology(&mut self, a: BiDegree) -> [usize; 5] {
        let d = self.sys.d();
        let subsets: Vec<Vec<usize>> = (0..=4)
            .map(|j| (0..16usize).filter(|m| m.count_ones() as usize == j).collect())
            .collect();
        let deg = |mask: usize| {
            Var::ALL
                .iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .fold(BiDegree::ZERO, |acc, (_, x)| acc + x.degree())
        };
        let mut dims = [0usize; 5];
        for (j, ss) in subsets.iter().enumerate() {
            dims[j] = ss.iter().map(|&m| self.kernel(a - deg(m)).dim()).sum();
        }
        let mut ranks = [0usize; 6];
        for j in 1..=4 {
            if dims[j] == 0 || dims[j - 1] == 0 {
                continue;
            }
            let mut offs = HashMap::new();
            let mut width = 0;
            for &m in &subsets[j - 1] {
                offs.insert(m, width);
                width += domain_basis(d, a - deg(m)).size();
            }
            let mut rows = Vec::new();
            for &mask in &subsets[j] {
                let b = a - deg(mask);
                let basis = self.kernel(b).basis.clone();
                for v in &basis {
                    let mut row = vec![F::zero(); width];
                    let mut pos = 0;
                    for (k, &x) in Var::ALL.iter().enumerate() {
                        if mask & (1 << k) == 0 {
                            continue;
                        }
                        let sub = mask & !(1 << k);
                        let img = act(d, b, x, v);
                        let off = offs[&sub];
                        for (t, val) in img.into_iter().enumerate() {
                            if pos % 2 == 0 {
                                row[off + t] = row[off + t].clone() + val;
                            } else {
                                row[off + t] = row[off + t].clone() - val;
                            }
                        }
                        pos += 1;
                    }
                    rows.push(row);
                }
            }
            ranks[j] = Matrix::from_rows_with_cols(width, rows).rank();
        }
        let mut out = [0; 5];
        for j in 0..=4 {
            out[j] = dims[j] - ranks[j] - ranks[j + 1];
        }
        out
    }
}

/// dim H(M)_(j,a), j = 0..=4, summed over both sides.
pub fn mcomplex_dims<F: Field>(sys: &SystemF<F>, a: BiDegree) -> [usize; 5] {
    let sw = sys.swapped();
    let x = Side::new(sys).koszul_homology(a);
    let y = Side::new(&sw).koszul_homology(a.swap());
    [0, 1, 2, 3, 4].map(|j| x[j] + y[j])
}

/// Grids of dim H(M)_(j,a) on [0, bx].
pub fn mcomplex_sums<F: Field>(sys: &SystemF<F>, bx: BiDegree) -> Vec<Grid<usize>> {
    let vals: Vec<(BiDegree, [usize; 5])> = bx
        .box_points()
        .into_par_iter()
        .map(|a| (a, mcomplex_dims(sys, a)))
        .collect();
    let mut grids = vec![Grid::new(bx, 0usize); 5];
    for (a, v) in vals {
        for j in 0..5 {
            grids[j].set(a, v[j]);
        }
    }
    grids
}

/// Minimal generators of H1 in degree a (the non-Koszul β1 at a).
pub fn first_betti_h1_at<F: Field>(sys: &SystemF<F>, a: BiDegree) -> usize {
    let sw = sys.swapped();
    Side::new(sys).minimal_generators(a) + Side::new(&sw).minimal_generators(a.swap())
}

/// Points where a side's kernel acquires new k[s,t]-generators. Along a1 the
/// kernels form a free k[s,t]-module, so the count is the second difference.
fn candidates(h: &Grid<usize>, bx: BiDegree) -> Vec<BiDegree> {
    let get = |a1: i64, a2: i64| if a1 < 0 { 0 } else { h.get(bd(a1, a2)) as i64 };
    let mut out = Vec::new();
    for a in bx.box_points() {
        let g = get(a.a1, a.a2) - 2 * get(a.a1 - 1, a.a2) + get(a.a1 - 2, a.a2);
        if g > 0 {
            out.push(a);
        }
    }
    out
}

fn side_betti<F: Field>(sys: &SystemF<F>, bx: BiDegree) -> Vec<(BiDegree, usize)> {
    let (g1, _) = phi_rank_grids(sys, bx);
    let h = g1.map(|c| c.kernel());
    candidates(&h, bx)
        .into_par_iter()
        .filter_map(|a| {
            let b = Side::new(sys).minimal_generators(a);
            (b > 0).then_some((a, b))
        })
        .collect()
}

/// Non-Koszul first Betti numbers on [0, bx] via minimal generators of H1.
pub fn first_betti_h1<F: Field>(sys: &SystemF<F>, bx: BiDegree) -> BTreeMap<BiDegree, usize> {
    let mut out = BTreeMap::new();
    for (a, b) in side_betti(sys, bx) {
        *out.entry(a).or_insert(0) += b;
    }
    for (a, b) in side_betti(&sys.swapped(), bx.swap()) {
        *out.entry(a.swap()).or_insert(0) += b;
    }
    out
}
