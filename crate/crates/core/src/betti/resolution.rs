use rayon::prelude::*;
use serde::Serialize;

use super::{BettiTable, Convention};
use crate::bipoly::{dim_r, BiDegree, BiPoly};
use crate::field::Field;
use crate::polymat::PolyMatrix;
use crate::strands::hf_grid;
use crate::system::SystemF;

/// 0 <- R/I_W <- R <-ε- F_0 <-∂1- F_1 <- ... with F_0 = R(-d)^3 and
/// ε = [f0 f1 f2]. `modules[i]` lists the shifts of F_i and
/// `differentials[i]` is ∂_(i+1) : F_(i+1) -> F_i.
#[derive(Clone, Debug)]
pub struct ResolutionComplex<F> {
    pub sys: SystemF<F>,
    pub modules: Vec<Vec<BiDegree>>,
    pub differentials: Vec<PolyMatrix<F>>,
}

impl<F: Field> ResolutionComplex<F> {
    pub fn new(sys: &SystemF<F>, differentials: Vec<PolyMatrix<F>>) -> Self {
        let mut modules = vec![vec![sys.d(); 3]];
        for dm in &differentials {
            modules.push(dm.col_shifts().to_vec());
        }
        ResolutionComplex {
            sys: sys.clone(),
            modules,
            differentials,
        }
    }

    pub fn augmentation(&self) -> PolyMatrix<F> {
        PolyMatrix::new(
            vec![BiDegree::ZERO],
            vec![self.sys.d(); 3],
            vec![self.sys.f().to_vec()],
        )
        .expect("generator degrees")
    }

    /// Shifts as a Betti table (ideal convention).
    pub fn betti(&self) -> BettiTable {
        let mut t = BettiTable::new(Convention::Ideal);
        for (i, m) in self.modules.iter().enumerate() {
            for &a in m {
                t.add(i, a, 1);
            }
        }
        t
    }

    /// Drop column j of ∂_(i+1) and the matching row of ∂_(i+2).
    pub fn without_column(&self, i: usize, j: usize) -> Self {
        let mut ds = self.differentials.clone();
        ds[i] = ds[i].without_column(j);
        if i + 1 < ds.len() {
            let next = &ds[i + 1];
            let rows: Vec<Vec<BiPoly<F>>> = (0..next.rows())
                .filter(|&r| r != j)
                .map(|r| (0..next.cols()).map(|c| next.get(r, c).clone()).collect())
                .collect();
            let mut rs = next.row_shifts().to_vec();
            rs.remove(j);
            ds[i + 1] = PolyMatrix::new(rs, next.col_shifts().to_vec(), rows).expect("shifts");
        }
        Self::new(&self.sys, ds)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ResolutionReport {
    /// ∂_i ∂_(i+1) == 0, starting with ε ∂_1.
    pub compositions_zero: Vec<bool>,
    /// (spot i, a) where ker ∂_i != im ∂_(i+1); spot 0 is F_0 with ∂_0 = ε.
    pub exactness_failures: Vec<(usize, BiDegree)>,
    /// a where the alternating strand sum differs from dim (R/I_W)_a.
    pub euler_failures: Vec<BiDegree>,
    /// (i, row, col) of nonzero constant entries of ∂_i.
    pub nonminimal_entries: Vec<(usize, usize, usize)>,
}

impl ResolutionReport {
    pub fn passed(&self) -> bool {
        self.compositions_zero.iter().all(|&b| b)
            && self.exactness_failures.is_empty()
            && self.euler_failures.is_empty()
            && self.nonminimal_entries.is_empty()
    }
}

pub fn verify_resolution<F: Field>(rc: &ResolutionComplex<F>, bx: BiDegree) -> ResolutionReport {
    let mut maps = vec![rc.augmentation()];
    maps.extend(rc.differentials.iter().cloned());
    let mut report = ResolutionReport::default();
    for w in maps.windows(2) {
        report
            .compositions_zero
            .push(w[0].mul(&w[1]).map(|p| p.is_zero()).unwrap_or(false));
    }
    for (i, m) in rc.differentials.iter().enumerate() {
        for (r, c) in m.constant_entries() {
            report.nonminimal_entries.push((i + 1, r, c));
        }
    }
    let hf = hf_grid(&rc.sys, bx);
    let per_point: Vec<(BiDegree, Vec<usize>, bool)> = bx
        .box_points()
        .into_par_iter()
        .map(|a| {
            // ranks[i] = rank of maps[i] at a (maps[0] = ε).
            let ranks: Vec<usize> = maps.iter().map(|m| m.strand(a).rank()).collect();
            let mut bad = Vec::new();
            for (i, shifts) in rc.modules.iter().enumerate() {
                let dim: usize = shifts.iter().map(|&s| dim_r(a - s)).sum();
                let out_rank = ranks[i];
                let in_rank = ranks.get(i + 1).copied().unwrap_or(0);
                if dim - out_rank != in_rank {
                    bad.push(i);
                }
            }
            let mut alt = dim_r(a) as i64;
            for (i, shifts) in rc.modules.iter().enumerate() {
                let dim: i64 = shifts.iter().map(|&s| dim_r(a - s) as i64).sum();
                alt += if i % 2 == 0 { -dim } else { dim };
            }
            (a, bad, alt == hf.get(a) as i64)
        })
        .collect();
    for (a, bad, euler_ok) in per_point {
        for i in bad {
            report.exactness_failures.push((i, a));
        }
        if !euler_ok {
            report.euler_failures.push(a);
        }
    }
    report.exactness_failures.sort();
    report
}
