use super::Matrix;
use crate::error::{Error, Result};
use crate::exactfield::{Embedding, Field, FieldElem};

/// A subspace of M_n(F), stored as the RREF of the vectorized spanning set
/// so that equal subspaces have equal basis lists.
#[derive(Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    field: Field,
    n: usize,
    basis: Vec<Matrix>,
}

impl std::fmt::Debug for SubspaceBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "span{:?}", self.basis)
    }
}

impl SubspaceBasis {
    /// Span of arbitrary n×n matrices (dependent generators are allowed).
    pub fn span(field: &Field, n: usize, gens: &[Matrix]) -> Result<SubspaceBasis> {
        for g in gens {
            if g.field() != field {
                return Err(Error::FieldMismatch(format!("generator over {}", g.field().name())));
            }
            if g.rows() != n || g.cols() != n {
                return Err(Error::DimensionMismatch(format!("generator is {}x{}, expected {n}x{n}", g.rows(), g.cols())));
            }
        }
        Ok(SubspaceBasis::from_vecs(field, n, gens.iter().map(|g| g.vec()).collect()))
    }

    fn from_vecs(field: &Field, n: usize, vecs: Vec<Matrix>) -> SubspaceBasis {
        if vecs.is_empty() {
            return SubspaceBasis::zero(field, n);
        }
        let rows: Vec<FieldElem> = vecs.iter().flat_map(|v| v.entries().to_vec()).collect();
        let stacked = Matrix::raw(field, vecs.len(), n * n, rows);
        let red = stacked.rref();
        let basis = (0..red.rank)
            .map(|r| Matrix::unvec(&Matrix::column(field, red.matrix.row(r).to_vec()), n))
            .collect();
        SubspaceBasis { field: field.clone(), n, basis }
    }

    /// Kernel of an n²×n² operator matrix acting on vec(X).
    pub fn kernel_of(field: &Field, n: usize, op: &Matrix) -> SubspaceBasis {
        assert_eq!(op.cols(), n * n, "operator must act on vec of n×n matrices");
        SubspaceBasis::from_vecs(field, n, op.null_space())
    }

    pub fn zero(field: &Field, n: usize) -> SubspaceBasis {
        SubspaceBasis { field: field.clone(), n, basis: Vec::new() }
    }

    pub fn full(field: &Field, n: usize) -> SubspaceBasis {
        let units: Vec<Matrix> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| Matrix::unit(field, n, i, j)).collect();
        SubspaceBasis::span(field, n, &units).unwrap()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Rows spanning the annihilator: c with cᵀ vec(X) = 0 for all X in the
    /// subspace, as a k×n² matrix.
    pub fn constraints(&self) -> Matrix {
        let nn = self.n * self.n;
        if self.basis.is_empty() {
            return Matrix::identity(&self.field, nn);
        }
        let rows: Vec<FieldElem> = self.basis.iter().flat_map(|b| b.vec().entries().to_vec()).collect();
        let b = Matrix::raw(&self.field, self.basis.len(), nn, rows);
        let ann = b.null_space();
        let data: Vec<FieldElem> = ann.iter().flat_map(|v| v.entries().to_vec()).collect();
        Matrix::raw(&self.field, ann.len(), nn, data)
    }

    pub fn contains(&self, x: &Matrix) -> bool {
        self.constraints().mul(&x.vec()).is_zero()
    }

    fn check_ambient(&self, other: &SubspaceBasis) -> Result<()> {
        if self.n != other.n || self.field != other.field {
            return Err(Error::DimensionMismatch(format!(
                "ambient M_{}({}) vs M_{}({})",
                self.n,
                self.field.name(),
                other.n,
                other.field.name()
            )));
        }
        Ok(())
    }

    pub fn intersect(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.check_ambient(other)?;
        let (a, b) = (self.constraints(), other.constraints());
        let mut data = a.entries().to_vec();
        data.extend_from_slice(b.entries());
        let stacked = Matrix::raw(&self.field, a.rows() + b.rows(), self.n * self.n, data);
        Ok(SubspaceBasis::kernel_of(&self.field, self.n, &stacked))
    }

    pub fn sum(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.check_ambient(other)?;
        let mut gens = self.basis.clone();
        gens.extend_from_slice(&other.basis);
        SubspaceBasis::span(&self.field, self.n, &gens)
    }

    /// Σ c_i B_i.
    pub fn combination(&self, coeffs: &[FieldElem]) -> Matrix {
        assert_eq!(coeffs.len(), self.basis.len());
        self.basis
            .iter()
            .zip(coeffs)
            .fold(Matrix::zeros(&self.field, self.n, self.n), |acc, (b, c)| acc.add(&b.scale(c)))
    }

    /// Coordinates of x in the canonical basis, if x lies in the subspace.
    pub fn coordinates(&self, x: &Matrix) -> Option<Vec<FieldElem>> {
        if !self.contains(x) {
            return None;
        }
        // the RREF basis has a pivot per element; read coefficients there
        let v = x.vec();
        let coeffs: Vec<FieldElem> = self
            .basis
            .iter()
            .map(|b| {
                let bv = b.vec();
                let pivot = bv.entries().iter().position(|a| !self.field.is_zero(a)).unwrap();
                v.entries()[pivot].clone()
            })
            .collect();
        Some(coeffs)
    }

    /// Image under X ↦ S X S⁻¹.
    pub fn conjugate(&self, s: &Matrix, s_inv: &Matrix) -> SubspaceBasis {
        let imgs: Vec<Matrix> = self.basis.iter().map(|b| s.mul(b).mul(s_inv)).collect();
        SubspaceBasis::span(&self.field, self.n, &imgs).unwrap()
    }

    pub fn map(&self, emb: &Embedding) -> SubspaceBasis {
        let imgs: Vec<Matrix> = self.basis.iter().map(|b| emb.map_matrix(b)).collect();
        SubspaceBasis::span(emb.target(), self.n, &imgs).unwrap()
    }

    /// Every element, for finite fields; q^dim of them in coefficient order.
    pub fn elements(&self) -> impl Iterator<Item = Matrix> + '_ {
        let q = self.field.order().expect("finite field") as u128;
        let d = self.dim();
        let total = crate::budget::pow_sat(q, d as u32);
        (0..total).map(move |mut idx| {
            let mut coeffs = vec![self.field.zero(); d];
            for c in coeffs.iter_mut().rev() {
                *c = self.field.elem((idx % q) as u64);
                idx /= q;
            }
            self.combination(&coeffs)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intersection_examples() {
        let q = Field::rationals();
        let e = |i, j| Matrix::unit(&q, 2, i, j);
        let u = SubspaceBasis::span(&q, 2, &[e(0, 0), e(0, 1)]).unwrap();
        let v = SubspaceBasis::span(&q, 2, &[e(0, 1), e(1, 1)]).unwrap();
        assert_eq!(u.intersect(&u).unwrap(), u);
        assert_eq!(u.intersect(&v).unwrap(), SubspaceBasis::span(&q, 2, &[e(0, 1)]).unwrap());
        let w = SubspaceBasis::span(&q, 2, &[e(1, 0)]).unwrap();
        assert!(u.intersect(&w).unwrap().is_zero());
        let other = SubspaceBasis::zero(&q, 3);
        assert!(u.intersect(&other).is_err());
    }

    #[test]
    fn canonical_basis_is_independent_of_generators() {
        let f = Field::gf(5).unwrap();
        let a = Matrix::from_i64(&f, 2, 2, &[1, 2, 3, 4]);
        let b = Matrix::from_i64(&f, 2, 2, &[0, 1, 1, 0]);
        let s1 = SubspaceBasis::span(&f, 2, &[a.clone(), b.clone()]).unwrap();
        let s2 = SubspaceBasis::span(&f, 2, &[a.add(&b), b.scale(&f.from_i64(3)), a.clone()]).unwrap();
        assert_eq!(s1, s2);
        assert_eq!(s1.dim(), 2);
        assert!(s1.contains(&a.sub(&b)));
        let c = s1.coordinates(&a.sub(&b)).unwrap();
        assert_eq!(s1.combination(&c), a.sub(&b));
        assert_eq!(s1.elements().count(), 25);
    }

    #[test]
    fn full_space_constraints_are_empty() {
        let f = Field::gf(3).unwrap();
        let full = SubspaceBasis::full(&f, 2);
        assert_eq!(full.dim(), 4);
        assert_eq!(full.constraints().rows(), 0);
        assert_eq!(SubspaceBasis::zero(&f, 2).constraints().rank(), 4);
    }
}
