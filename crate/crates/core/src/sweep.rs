//! Rank profiles of block-banded families.
//!
//! The degree-k member has column blocks c = 0..=k and row blocks
//! r = 0..=k+D, with block (r, c) equal to `blocks[r - c]` when
//! 0 <= r - c <= D and zero otherwise. Multiplication by a form of
//! s,t-degree D on k[s,t]_k ⊗ V has this shape, so one pass over the
//! column blocks yields the rank for every k.

use crate::field::Field;
use crate::linalg::Matrix;

pub fn band_rank_profile<F: Field>(blocks: &[Matrix<F>], max_k: usize) -> Vec<usize> {
    assert!(!blocks.is_empty());
    let dd = blocks.len() - 1;
    let rw = blocks[0].rows();
    let cw = blocks[0].cols();
    if rw == 0 || cw == 0 {
        return vec![0; max_k + 1];
    }
    let width = (dd + 1) * cw;
    let mut left: Vec<Vec<F>> = Vec::new();
    let mut rank = 0;
    let mut out = Vec::with_capacity(max_k + 1);
    for c in 0..=max_k {
        let mut rows = std::mem::take(&mut left);
        let fresh: Vec<usize> = if c == 0 {
            (0..=dd).collect()
        } else {
            vec![c + dd]
        };
        for r in fresh {
            for rho in 0..rw {
                let mut v = vec![F::zero(); width];
                let mut nz = false;
                for slot in 0..=dd {
                    let cb = c + slot;
                    if r < cb || r - cb > dd {
                        continue;
                    }
                    let src = blocks[r - cb].row(rho);
                    for (x, y) in v[slot * cw..(slot + 1) * cw].iter_mut().zip(src) {
                        if !y.is_zero() {
                            *x = y.clone();
                            nz = true;
                        }
                    }
                }
                if nz {
                    rows.push(v);
                }
            }
        }
        let mut m = Matrix::from_rows_with_cols(width, rows);
        let piv = F::eliminate(&mut m, false);
        rank += piv.iter().filter(|&&p| p < cw).count();
        out.push(rank);
        for (i, &p) in piv.iter().enumerate() {
            if p >= cw {
                let mut v = m.row(i)[cw..].to_vec();
                v.extend(std::iter::repeat(F::zero()).take(cw));
                left.push(v);
            }
        }
    }
    out
}

/// Dense assembly of the degree-k member, for cross-checks.
pub fn band_matrix<F: Field>(blocks: &[Matrix<F>], k: usize) -> Matrix<F> {
    let dd = blocks.len() - 1;
    let rw = blocks[0].rows();
    let cw = blocks[0].cols();
    let mut m = Matrix::zeros((k + dd + 1) * rw, (k + 1) * cw);
    for c in 0..=k {
        for (e, b) in blocks.iter().enumerate() {
            m.set_block((c + e) * rw, c * cw, b);
        }
    }
    m
}
