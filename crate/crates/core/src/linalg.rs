use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::Field;

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.data[i * self.cols..(i + 1) * self.cols]
                .iter()
                .map(|x| format!("{x:?}"))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        Self::from_rows_with_cols(rows.first().map_or(0, |r| r.len()), rows)
    }

    /// Like `from_rows`, but keeps the column count when there are no rows.
    pub fn from_rows_with_cols(cols: usize, rows: Vec<Vec<F>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| F::from_i64(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [F] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "matrix product shapes");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let neg = -a.clone();
                F::sub_mul_slice(out.row_mut(i), &neg, other.row(k));
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "matrix-vector shapes");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn hstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, other);
        m
    }

    pub fn vstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix<F>) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    /// self[r0.., c0..] += c * b
    pub fn add_block_scaled(&mut self, r0: usize, c0: usize, b: &Matrix<F>, c: &F) {
        let neg = -c.clone();
        for i in 0..b.rows {
            let cols = self.cols;
            let dst = &mut self.data[(r0 + i) * cols + c0..(r0 + i) * cols + c0 + b.cols];
            F::sub_mul_slice(dst, &neg, b.row(i));
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix<F> {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m[(i, k)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let mut m = self.clone();
        F::eliminate(&mut m, false).len()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let piv = F::eliminate(&mut m, true);
        (m, piv)
    }

    pub fn kernel(&self) -> Kernel<F> {
        let (r, piv) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &piv {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&j| !is_pivot[j]).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (ri, &pc) in piv.iter().enumerate() {
                    v[pc] = -r[(ri, f)].clone();
                }
                v
            })
            .collect();
        Kernel {
            basis,
            free,
            ambient: self.cols,
        }
    }

    pub fn det(&self) -> F {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut d = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
                return F::zero();
            };
            if p != c {
                a.swap_rows(p, c);
                d = -d;
            }
            let piv = a[(c, c)].clone();
            let inv = piv.inv().expect("nonzero pivot");
            d = d * piv;
            for i in c + 1..n {
                let f = a[(i, c)].clone() * inv.clone();
                if f.is_zero() {
                    continue;
                }
                let (dst, src) = split_rows(&mut a.data, n, i, c);
                F::sub_mul_slice(&mut dst[c..], &f, &src[c..]);
            }
        }
        d
    }
}

/// Kernel basis from the reduced echelon form: one vector per free column,
/// with a 1 in that column and zeros in the other free columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Kernel<F> {
    pub basis: Vec<Vec<F>>,
    pub free: Vec<usize>,
    pub ambient: usize,
}

impl<F: Field> Kernel<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a kernel element in `basis`.
    pub fn coords(&self, v: &[F]) -> Vec<F> {
        self.free.iter().map(|&f| v[f].clone()).collect()
    }
}

fn split_rows<F>(data: &mut [F], cols: usize, i: usize, r: usize) -> (&mut [F], &[F]) {
    debug_assert_ne!(i, r);
    if i < r {
        let (a, b) = data.split_at_mut(r * cols);
        (&mut a[i * cols..(i + 1) * cols], &b[..cols])
    } else {
        let (a, b) = data.split_at_mut(i * cols);
        (&mut b[..cols], &a[r * cols..(r + 1) * cols])
    }
}

/// Gaussian elimination with the first nonzero entry of each column as pivot.
pub fn gauss_jordan<F: Field>(m: &mut Matrix<F>, reduced: bool) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.data[i * cols + c].is_zero()) else {
            continue;
        };
        m.swap_rows(p, r);
        let inv = m.data[r * cols + c].inv().expect("nonzero pivot");
        F::scale_slice(&mut m.data[r * cols + c..(r + 1) * cols], &inv);
        let start = if reduced { 0 } else { r + 1 };
        for i in start..rows {
            if i == r {
                continue;
            }
            let f = m.data[i * cols + c].clone();
            if f.is_zero() {
                continue;
            }
            let (dst, src) = split_rows(&mut m.data, cols, i, r);
            F::sub_mul_slice(&mut dst[c..], &f, &src[c..]);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn remove_content(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g > BigInt::one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Integer-preserving elimination over Q: rows are cleared of denominators,
/// combined by cross-multiplication, and divided by their content.
pub fn fraction_free(m: &mut Matrix<BigRational>, reduced: bool) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut ints: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let row = m.row(i);
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let mut v: Vec<BigInt> = row
                .iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect();
            remove_content(&mut v);
            v
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !ints[i][c].is_zero()) else {
            continue;
        };
        ints.swap(p, r);
        let pv = ints[r][c].clone();
        let start = if reduced { 0 } else { r + 1 };
        for i in start..rows {
            if i == r || ints[i][c].is_zero() {
                continue;
            }
            let x = ints[i][c].clone();
            let (pivot_row, row) = if i < r {
                let (a, b) = ints.split_at_mut(r);
                (&b[0], &mut a[i])
            } else {
                let (a, b) = ints.split_at_mut(i);
                (&a[r], &mut b[0])
            };
            for k in 0..cols {
                let y = &pv * &row[k] - &x * &pivot_row[k];
                row[k] = y;
            }
            remove_content(row);
        }
        pivots.push(c);
        r += 1;
    }
    for (i, row) in ints.into_iter().enumerate() {
        let lead = if i < pivots.len() {
            row[pivots[i]].clone()
        } else {
            BigInt::one()
        };
        for (k, x) in row.into_iter().enumerate() {
            m.data[i * cols + k] = BigRational::new(x, lead.clone());
        }
    }
    pivots
}

pub fn mat_rank<F: Field>(m: &Matrix<F>) -> usize {
    m.rank()
}

pub fn mat_kernel_basis<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    m.kernel().basis
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpanReduction<F> {
    pub residual: Vec<F>,
    /// Coefficients on the basis columns, present iff the residual is zero.
    pub coefficients: Option<Vec<F>>,
}

/// Reduces vectors modulo the column span of a fixed matrix.
#[derive(Clone, Debug)]
pub struct SpanReducer<F> {
    len: usize,
    /// Reduced echelon rows spanning the column space, with their pivot.
    rows: Vec<(usize, Vec<F>)>,
    /// Combination of basis columns producing each echelon row.
    combos: Vec<Vec<F>>,
}

impl<F: Field> SpanReducer<F> {
    pub fn new(basis: &Matrix<F>) -> Self {
        let k = basis.cols();
        let n = basis.rows();
        let aug = basis.transpose().hstack(&Matrix::identity(k));
        let (r, piv) = aug.rref();
        let mut rows = Vec::new();
        let mut combos = Vec::new();
        for (i, &p) in piv.iter().enumerate() {
            if p >= n {
                break;
            }
            rows.push((p, r.row(i)[..n].to_vec()));
            combos.push(r.row(i)[n..].to_vec());
        }
        SpanReducer {
            len: n,
            rows,
            combos,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &[F]) -> Result<SpanReduction<F>> {
        if v.len() != self.len {
            return Err(Error::Dimension {
                expected: self.len,
                got: v.len(),
            });
        }
        let mut res = v.to_vec();
        let k = self.combos.first().map_or(0, |c| c.len());
        let mut coeff = vec![F::zero(); k];
        for ((p, row), combo) in self.rows.iter().zip(&self.combos) {
            let lam = res[*p].clone();
            if lam.is_zero() {
                continue;
            }
            F::sub_mul_slice(&mut res, &lam, row);
            let neg = -lam;
            F::sub_mul_slice(&mut coeff, &neg, combo);
        }
        let in_span = res.iter().all(|x| x.is_zero());
        Ok(SpanReduction {
            residual: res,
            coefficients: in_span.then_some(coeff),
        })
    }
}

pub fn reduce_mod_span<F: Field>(v: &[F], basis: &Matrix<F>) -> Result<SpanReduction<F>> {
    if v.len() != basis.rows() {
        return Err(Error::Dimension {
            expected: basis.rows(),
            got: v.len(),
        });
    }
    SpanReducer::new(basis).reduce(v)
}
