//! Dense exact matrices over any supported field.
//!
//! Indices are zero-based throughout the API; `E_{ij}` in docs is
//! one-based as usual. `vec` stacks columns, so `vec(L X M) = (Mᵀ ⊗ L) vec(X)`.

mod enumerate;
mod subspace;

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::exactfield::{Embedding, Field, FieldElem, FieldHom, UniPoly};

pub use enumerate::{
    count_rank_one_idempotents, matrix_count, matrix_from_index, matrix_index, rank_one_idempotents,
    rank_one_matrices, rank_one_nilpotents, vector_from_index, vectors, normalized_vectors,
};
pub use subspace::SubspaceBasis;

#[derive(Clone)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data && self.field == other.field
    }
}

impl Eq for Matrix {}

impl Hash for Matrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self.field.fmt_elem(self.get(i, j))).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Result of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// A rank-one matrix written as x·fᵀ with column vectors x, f.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOneFactor {
    pub x: Matrix,
    pub f: Matrix,
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<FieldElem>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|a| !field.contains(a)) {
            return Err(Error::FieldMismatch(format!("entry {bad:?} is not in {}", field.name())));
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub(crate) fn raw(field: &Field, rows: usize, cols: usize, data: Vec<FieldElem>) -> Matrix {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn from_i64(field: &Field, rows: usize, cols: usize, vals: &[i64]) -> Matrix {
        assert_eq!(vals.len(), rows * cols, "entry count");
        Matrix::raw(field, rows, cols, vals.iter().map(|&v| field.from_i64(v)).collect())
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<FieldElem>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Matrix::new(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix::raw(field, rows, cols, vec![field.zero(); rows * cols])
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        Matrix::scalar(field, n, field.one())
    }

    pub fn scalar(field: &Field, n: usize, c: FieldElem) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    /// The matrix unit with a one at (i, j), zero-based.
    pub fn unit(field: &Field, n: usize, i: usize, j: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        m.set(i, j, field.one());
        m
    }

    pub fn diag(field: &Field, entries: &[FieldElem]) -> Matrix {
        let n = entries.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    /// Column vector.
    pub fn column(field: &Field, entries: Vec<FieldElem>) -> Matrix {
        let n = entries.len();
        Matrix::raw(field, n, 1, entries)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field.name(), other.field.name())));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        Ok(self.add(other))
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field.name(), other.field.name())));
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul(other))
    }

    /// Panics on shape mismatch; see [`Matrix::checked_add`].
    pub fn add(&self, other: &Matrix) -> Matrix {
        assert!(self.rows == other.rows && self.cols == other.cols, "shape mismatch in add");
        let f = &self.field;
        Matrix::raw(f, self.rows, self.cols, self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect())
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert!(self.rows == other.rows && self.cols == other.cols, "shape mismatch in sub");
        let f = &self.field;
        Matrix::raw(f, self.rows, self.cols, self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect())
    }

    pub fn neg(&self) -> Matrix {
        let f = &self.field;
        Matrix::raw(f, self.rows, self.cols, self.data.iter().map(|a| f.neg(a)).collect())
    }

    pub fn scale(&self, c: &FieldElem) -> Matrix {
        let f = &self.field;
        Matrix::raw(f, self.rows, self.cols, self.data.iter().map(|a| f.mul(a, c)).collect())
    }

    /// Panics on shape mismatch; see [`Matrix::checked_mul`].
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let f = &self.field;
        let (n, m, p) = (self.rows, self.cols, other.cols);
        let mut out = vec![f.zero(); n * p];
        for i in 0..n {
            for l in 0..m {
                let a = &self.data[i * m + l];
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..p {
                    let b = &other.data[l * p + j];
                    if f.is_zero(b) {
                        continue;
                    }
                    out[i * p + j] = f.add(&out[i * p + j], &f.mul(a, b));
                }
            }
        }
        Matrix::raw(f, n, p, out)
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix::raw(&self.field, self.cols, self.rows, data)
    }

    pub fn trace(&self) -> FieldElem {
        let f = &self.field;
        (0..self.rows.min(self.cols)).fold(f.zero(), |acc, i| f.add(&acc, self.get(i, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| self.field.is_zero(a))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(&self.field, self.rows)
    }

    /// Block-diagonal sum self ⊕ other.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        let mut m = Matrix::zeros(&self.field, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in r0..r0 + rows {
            data.extend_from_slice(&self.row(i)[c0..c0 + cols]);
        }
        Matrix::raw(&self.field, rows, cols, data)
    }

    /// Matrix whose columns are the given column vectors.
    pub fn from_columns(field: &Field, rows: usize, columns: &[Matrix]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for i in 0..rows {
                m.set(i, j, c.data[i].clone());
            }
        }
        m
    }

    pub fn column_at(&self, j: usize) -> Matrix {
        Matrix::column(&self.field, (0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    /// Reduced row echelon form with pivot columns.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    m.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).unwrap();
            for j in c..self.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, rank: r, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of {v : Mv = 0} as column vectors, one per free column, with a
    /// one in that free position.
    pub fn null_space(&self) -> Vec<Matrix> {
        let f = &self.field;
        let Rref { matrix, pivots, .. } = self.rref();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(matrix.get(r, free));
            }
            out.push(Matrix::column(f, v));
        }
        out
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Matrix::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let red = aug.rref();
        if red.pivots.iter().take(n).copied().ne(0..n) || red.rank < n {
            return None;
        }
        Some(red.matrix.submatrix(0, n, n, n))
    }

    pub fn det(&self) -> FieldElem {
        assert!(self.is_square());
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return f.zero();
            };
            if pr != c {
                for j in 0..n {
                    m.data.swap(pr * n + j, c * n + j);
                }
                det = f.neg(&det);
            }
            let piv = m.get(c, c).clone();
            det = f.mul(&det, &piv);
            let inv = f.inv(&piv).unwrap();
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// Kronecker product: block (i, j) is self_{ij}·other.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let f = &self.field;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut m = Matrix::zeros(f, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if f.is_zero(a) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        m.set(i * other.rows + k, j * other.cols + l, f.mul(a, other.get(k, l)));
                    }
                }
            }
        }
        m
    }

    /// Column-stacked vectorization as an (rows·cols)×1 column.
    pub fn vec(&self) -> Matrix {
        let t = self.transpose();
        Matrix::raw(&self.field, self.data.len(), 1, t.data)
    }

    /// Inverse of [`Matrix::vec`] for square n×n results.
    pub fn unvec(v: &Matrix, n: usize) -> Matrix {
        assert_eq!(v.data.len(), n * n);
        Matrix::raw(&v.field, n, n, v.data.clone()).transpose()
    }

    /// Entry-wise image under a field automorphism.
    pub fn apply_hom(&self, hom: FieldHom) -> Result<Matrix> {
        let data = self.data.iter().map(|a| self.field.apply_hom(hom, a)).collect::<Result<_>>()?;
        Ok(Matrix::raw(&self.field, self.rows, self.cols, data))
    }

    pub fn is_idempotent(&self) -> bool {
        self.is_square() && self.mul(self) == *self
    }

    pub fn is_rank_one(&self) -> bool {
        self.rank() == 1
    }

    /// N² = 0 and N ≠ 0.
    pub fn is_square_zero(&self) -> bool {
        self.is_square() && !self.is_zero() && self.mul(self).is_zero()
    }

    pub fn is_orthogonal_pair(&self, other: &Matrix) -> bool {
        self.mul(other).is_zero() && other.mul(self).is_zero()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.pow(self.rows as u64).is_zero()
    }

    /// x·fᵀ with x taken from the first nonzero row's pivot column and f that row.
    pub fn rank_one_factorize(&self) -> Result<RankOneFactor> {
        let r = self.rank();
        if r != 1 {
            return Err(Error::RankNotOne(r));
        }
        let f = &self.field;
        let i0 = (0..self.rows).find(|&i| self.row(i).iter().any(|a| !f.is_zero(a))).unwrap();
        let j0 = (0..self.cols).find(|&j| !f.is_zero(self.get(i0, j))).unwrap();
        let inv = f.inv(self.get(i0, j0)).unwrap();
        let x = Matrix::column(f, (0..self.rows).map(|i| f.mul(self.get(i, j0), &inv)).collect());
        let fv = Matrix::column(f, self.row(i0).to_vec());
        Ok(RankOneFactor { x, f: fv })
    }

    /// det(xI − A) by fraction-free elimination over F[x].
    pub fn char_poly(&self) -> UniPoly {
        assert!(self.is_square(), "char_poly of a non-square matrix");
        let f = &self.field;
        let n = self.rows;
        if n == 0 {
            return UniPoly::one(f);
        }
        let mut m: Vec<Vec<UniPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = UniPoly::constant(f, f.neg(self.get(i, j)));
                        if i == j {
                            c.add(&UniPoly::x(f))
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect();
        let mut sign = false;
        let mut prev = UniPoly::one(f);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(i, k);
                        sign = !sign;
                    }
                    None => return UniPoly::zero(f),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                    m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
                }
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if sign {
            d.neg()
        } else {
            d
        }
    }

    /// Substitutes the matrix into a polynomial.
    pub fn eval_poly(&self, p: &UniPoly) -> Matrix {
        let n = self.rows;
        p.coeffs().iter().rev().fold(Matrix::zeros(&self.field, n, n), |acc, c| {
            acc.mul(self).add(&Matrix::scalar(&self.field, n, c.clone()))
        })
    }

    /// Canonical text: rows separated by ';', entries by ','.
    pub fn canonical_key(&self) -> String {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|a| self.field.fmt_elem(a)).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Lexicographic comparison of row-major entries.
    pub fn cmp_canonical(&self, other: &Matrix) -> std::cmp::Ordering {
        (self.rows, self.cols).cmp(&(other.rows, other.cols)).then_with(|| {
            for (a, b) in self.data.iter().zip(&other.data) {
                let o = self.field.cmp(a, b);
                if o.is_ne() {
                    return o;
                }
            }
            std::cmp::Ordering::Equal
        })
    }
}

impl Embedding {
    pub fn map_matrix(&self, m: &Matrix) -> Matrix {
        Matrix::raw(self.target(), m.rows, m.cols, m.data.iter().map(|a| self.map_elem(a)).collect())
    }
}
