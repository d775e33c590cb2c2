use std::fmt;

use crate::bipoly::{dim_r, mul_matrix, BiDegree, BiPoly};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

/// Matrix of forms describing a graded map ⊕_j R(-col_shifts[j]) → ⊕_i R(-row_shifts[i]).
/// Entry (i, j) has bidegree col_shifts[j] - row_shifts[i].
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<F> {
    row_shifts: Vec<BiDegree>,
    col_shifts: Vec<BiDegree>,
    entries: Vec<BiPoly<F>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn new(
        row_shifts: Vec<BiDegree>,
        col_shifts: Vec<BiDegree>,
        entries: Vec<Vec<BiPoly<F>>>,
    ) -> Result<Self> {
        let (r, c) = (row_shifts.len(), col_shifts.len());
        if entries.len() != r || entries.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension {
                expected: r * c,
                got: entries.iter().map(|x| x.len()).sum(),
            });
        }
        let mut flat = Vec::with_capacity(r * c);
        for (i, row) in entries.into_iter().enumerate() {
            for (j, e) in row.into_iter().enumerate() {
                let want = col_shifts[j] - row_shifts[i];
                if e.is_zero() {
                    flat.push(BiPoly::zero(want));
                } else if e.degree() != want {
                    return Err(Error::Degree(format!(
                        "entry ({i},{j}) has bidegree {}, expected {want}",
                        e.degree()
                    )));
                } else {
                    flat.push(e);
                }
            }
        }
        Ok(PolyMatrix {
            row_shifts,
            col_shifts,
            entries: flat,
        })
    }

    /// Column shifts read off the first nonzero entry of each column.
    pub fn infer(row_shifts: Vec<BiDegree>, entries: Vec<Vec<BiPoly<F>>>) -> Result<Self> {
        let c = entries.first().map_or(0, |r| r.len());
        let mut col_shifts = Vec::with_capacity(c);
        for j in 0..c {
            let (i, e) = entries
                .iter()
                .enumerate()
                .find(|(_, row)| !row[j].is_zero())
                .map(|(i, row)| (i, &row[j]))
                .ok_or_else(|| Error::Degree(format!("column {j} is zero")))?;
            col_shifts.push(row_shifts[i] + e.degree());
        }
        Self::new(row_shifts, col_shifts, entries)
    }

    pub fn rows(&self) -> usize {
        self.row_shifts.len()
    }

    pub fn cols(&self) -> usize {
        self.col_shifts.len()
    }

    pub fn row_shifts(&self) -> &[BiDegree] {
        &self.row_shifts
    }

    pub fn col_shifts(&self) -> &[BiDegree] {
        &self.col_shifts
    }

    pub fn get(&self, i: usize, j: usize) -> &BiPoly<F> {
        &self.entries[i * self.cols() + j]
    }

    pub fn column(&self, j: usize) -> Vec<BiPoly<F>> {
        (0..self.rows()).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, o: &PolyMatrix<F>) -> Result<PolyMatrix<F>> {
        if self.col_shifts != o.row_shifts {
            return Err(Error::Degree("composed maps have mismatched shifts".into()));
        }
        let mut rows = Vec::with_capacity(self.rows());
        for i in 0..self.rows() {
            let mut row = Vec::with_capacity(o.cols());
            for j in 0..o.cols() {
                let mut acc = BiPoly::zero(o.col_shifts[j] - self.row_shifts[i]);
                for k in 0..self.cols() {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                row.push(acc);
            }
            rows.push(row);
        }
        PolyMatrix::new(self.row_shifts.clone(), o.col_shifts.clone(), rows)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn without_column(&self, j: usize) -> PolyMatrix<F> {
        let mut col_shifts = self.col_shifts.clone();
        col_shifts.remove(j);
        let rows = (0..self.rows())
            .map(|i| {
                (0..self.cols())
                    .filter(|&k| k != j)
                    .map(|k| self.get(i, k).clone())
                    .collect()
            })
            .collect();
        PolyMatrix::new(self.row_shifts.clone(), col_shifts, rows).expect("same shifts")
    }

    /// Positions of nonzero entries of degree (0,0).
    pub fn constant_entries(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                let e = self.get(i, j);
                if e.degree() == BiDegree::ZERO && !e.is_zero() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The degree-a strand as a matrix, blocks in row/column order.
    pub fn strand(&self, a: BiDegree) -> Matrix<F> {
        let rdims: Vec<usize> = self.row_shifts.iter().map(|&s| dim_r(a - s)).collect();
        let cdims: Vec<usize> = self.col_shifts.iter().map(|&s| dim_r(a - s)).collect();
        let mut m = Matrix::zeros(rdims.iter().sum(), cdims.iter().sum());
        let mut r0 = 0;
        for i in 0..self.rows() {
            let mut c0 = 0;
            for j in 0..self.cols() {
                let e = self.get(i, j);
                if rdims[i] > 0 && cdims[j] > 0 && !e.is_zero() {
                    let b = mul_matrix(e, a - self.col_shifts[j]);
                    m.set_block(r0, c0, &b.matrix);
                }
                c0 += cdims[j];
            }
            r0 += rdims[i];
        }
        m
    }

    pub fn source_dim(&self, a: BiDegree) -> usize {
        self.col_shifts.iter().map(|&s| dim_r(a - s)).sum()
    }

    pub fn target_dim(&self, a: BiDegree) -> usize {
        self.row_shifts.iter().map(|&s| dim_r(a - s)).sum()
    }
}

impl<F: Field> fmt::Display for PolyMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows() {
            let row: Vec<String> = (0..self.cols()).map(|j| self.get(i, j).render()).collect();
            writeln!(f, "[{}]", row.join(" | "))?;
        }
        Ok(())
    }
}
