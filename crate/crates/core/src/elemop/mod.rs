//! Elementary operators X ↦ Σ_j c_j L^{t−j} X M^j and the annihilator
//! spaces Ω_{•A}, Ω_{A•A} attached to a normalized polynomial.

use crate::error::{Error, Result};
use crate::exactfield::{factor_poly, Field, FieldElem};
use crate::matrixcore::{Matrix, SubspaceBasis};
use crate::multipoly::NormalizedPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryOperator {
    field: Field,
    n: usize,
    /// c_0, …, c_t.
    coeffs: Vec<FieldElem>,
    l: Matrix,
    m: Matrix,
}

impl ElementaryOperator {
    pub fn new(l: &Matrix, m: &Matrix, coeffs: Vec<FieldElem>) -> Result<ElementaryOperator> {
        if !l.is_square() || !m.is_square() || l.rows() != m.rows() {
            return Err(Error::DimensionMismatch("L and M must be square of equal size".into()));
        }
        if l.field() != m.field() {
            return Err(Error::FieldMismatch("L and M over different fields".into()));
        }
        if coeffs.is_empty() {
            return Err(Error::Invalid("an elementary operator needs at least one coefficient".into()));
        }
        Ok(ElementaryOperator { field: l.field().clone(), n: l.rows(), coeffs, l: l.clone(), m: m.clone() })
    }

    /// T_{•A}: X ↦ Σ_i β_i A^{i−1} X A^{k−i}.
    pub fn right(a: &Matrix, np: &NormalizedPoly) -> Result<ElementaryOperator> {
        check_matrix(a, np)?;
        ElementaryOperator::new(a, a, np.beta.iter().rev().cloned().collect())
    }

    /// T_{A•A}: X ↦ Σ_i hatβ_i A^{i−1} X A^{k−i}.
    pub fn left(a: &Matrix, np: &NormalizedPoly) -> Result<ElementaryOperator> {
        check_matrix(a, np)?;
        ElementaryOperator::new(a, a, np.hat_beta.iter().rev().cloned().collect())
    }

    pub fn t(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn apply(&self, x: &Matrix) -> Matrix {
        let t = self.t();
        let mut acc = Matrix::zeros(&self.field, self.n, self.n);
        for (j, c) in self.coeffs.iter().enumerate() {
            if self.field.is_zero(c) {
                continue;
            }
            let term = self.l.pow((t - j) as u64).mul(x).mul(&self.m.pow(j as u64));
            acc = acc.add(&term.scale(c));
        }
        acc
    }

    /// Σ_j c_j (M^j)ᵀ ⊗ L^{t−j}, acting on column-stacked vec(X).
    pub fn kron_matrix(&self) -> Matrix {
        let t = self.t();
        let nn = self.n * self.n;
        let mut acc = Matrix::zeros(&self.field, nn, nn);
        for (j, c) in self.coeffs.iter().enumerate() {
            if self.field.is_zero(c) {
                continue;
            }
            let block = self.m.pow(j as u64).transpose().kron(&self.l.pow((t - j) as u64));
            acc = acc.add(&block.scale(c));
        }
        acc
    }

    pub fn kernel(&self) -> SubspaceBasis {
        SubspaceBasis::kernel_of(&self.field, self.n, &self.kron_matrix())
    }
}

fn check_matrix(a: &Matrix, np: &NormalizedPoly) -> Result<()> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("A must be square".into()));
    }
    if a.field() != np.field() {
        return Err(Error::FieldMismatch(format!("A over {}, polynomial over {}", a.field().name(), np.field().name())));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Ω_{•A}: p(X, A, …, A) = 0.
    Right,
    /// Ω_{A•A}: p(A, …, X at j0, …, A) = 0.
    Left,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaSpace {
    pub side: Side,
    pub a: Matrix,
    pub basis: SubspaceBasis,
}

pub fn omega_right(a: &Matrix, np: &NormalizedPoly) -> Result<OmegaSpace> {
    let op = ElementaryOperator::right(a, np)?;
    Ok(OmegaSpace { side: Side::Right, a: a.clone(), basis: op.kernel() })
}

pub fn omega_left(a: &Matrix, np: &NormalizedPoly) -> Result<OmegaSpace> {
    let op = ElementaryOperator::left(a, np)?;
    Ok(OmegaSpace { side: Side::Left, a: a.clone(), basis: op.kernel() })
}

/// Ω_{•A} ∩ Ω_{A•A}, as the joint kernel of both operators.
pub fn omega_intersection(a: &Matrix, np: &NormalizedPoly) -> Result<SubspaceBasis> {
    let r = ElementaryOperator::right(a, np)?.kron_matrix();
    let l = ElementaryOperator::left(a, np)?.kron_matrix();
    let mut data = r.entries().to_vec();
    data.extend_from_slice(l.entries());
    let nn = a.rows() * a.rows();
    let stacked = Matrix::new(a.field(), 2 * nn, nn, data)?;
    Ok(SubspaceBasis::kernel_of(a.field(), a.rows(), &stacked))
}

/// Σ_j c_j λ^{t−j} μ^j.
pub fn spectrum_value(field: &Field, coeffs: &[FieldElem], lambda: &FieldElem, mu: &FieldElem) -> FieldElem {
    let t = coeffs.len() - 1;
    coeffs.iter().enumerate().fold(field.zero(), |acc, (j, c)| {
        let term = field.mul(c, &field.mul(&field.pow(lambda, (t - j) as u64), &field.pow(mu, j as u64)));
        field.add(&acc, &term)
    })
}

/// The unique eigenvalue of a matrix whose characteristic polynomial is a
/// power of a linear factor over its own field.
pub fn single_eigenvalue(a: &Matrix) -> Result<FieldElem> {
    let cp = a.char_poly();
    let facs = factor_poly(&cp)?;
    match facs.as_slice() {
        [(g, _)] if g.degree() == Some(1) => Ok(a.field().neg(&g.coeff(0))),
        _ => Err(Error::Precondition(format!("spectrum of {a:?} is not a singleton in {}", a.field().name()))),
    }
}

/// The single point of the spectrum of X ↦ Σ_j c_j L^{t−j} X M^j when
/// Sp(L) = {λ} and Sp(M) = {μ}.
pub fn spectrum_single_eigenvalue(l: &Matrix, m: &Matrix, coeffs: &[FieldElem]) -> Result<FieldElem> {
    if l.field() != m.field() {
        return Err(Error::FieldMismatch("L and M over different fields".into()));
    }
    if coeffs.is_empty() {
        return Err(Error::Invalid("empty coefficient list".into()));
    }
    let lambda = single_eigenvalue(l)?;
    let mu = single_eigenvalue(m)?;
    Ok(spectrum_value(l.field(), coeffs, &lambda, &mu))
}

/// p_{•A}(λ, μ) = Σ_i β_i λ^{i−1} μ^{k−i}.
pub fn p_bullet(np: &NormalizedPoly, lambda: &FieldElem, mu: &FieldElem) -> FieldElem {
    let rev: Vec<FieldElem> = np.beta.iter().rev().cloned().collect();
    spectrum_value(np.field(), &rev, lambda, mu)
}

/// p_{A•A}(λ, μ) = Σ_i tildeβ_i λ^{i−1} μ^{k−i}.
pub fn p_abullet(np: &NormalizedPoly, lambda: &FieldElem, mu: &FieldElem) -> FieldElem {
    let rev: Vec<FieldElem> = np.tilde_beta.iter().rev().cloned().collect();
    spectrum_value(np.field(), &rev, lambda, mu)
}

/// Kernel of X ↦ XA + AX.
pub fn anticommutant(a: &Matrix) -> Result<SubspaceBasis> {
    if a.field().characteristic() == 2 {
        return Err(Error::Precondition("anticommutant needs characteristic ≠ 2".into()));
    }
    let one = a.field().one();
    Ok(ElementaryOperator::new(a, a, vec![one.clone(), one])?.kernel())
}
