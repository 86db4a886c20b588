//! Companion matrices, primary rational forms and grouped Jordan forms.

use crate::error::{Error, Result};
use crate::exactfield::{factor_poly, roots, splitting_field, Embedding, Field, FieldElem, UniPoly};
use crate::matrixcore::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompanionBlock {
    pub f: UniPoly,
    pub matrix: Matrix,
}

/// C(f) with ones on the subdiagonal and −a_0, …, −a_{d−1} down the last
/// column; the 1×1 matrix (−a_0) when f is linear.
pub fn companion(f: &UniPoly) -> Result<CompanionBlock> {
    let field = f.field();
    let Some(d) = f.degree().filter(|&d| d >= 1) else {
        return Err(Error::Invalid("companion matrix needs degree ≥ 1".into()));
    };
    if !f.is_monic() {
        return Err(Error::NonMonic);
    }
    let mut m = Matrix::zeros(field, d, d);
    for i in 1..d {
        m.set(i, i - 1, field.one());
    }
    for i in 0..d {
        m.set(i, d - 1, field.neg(&f.coeff(i)));
    }
    Ok(CompanionBlock { f: f.clone(), matrix: m })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalBlock {
    /// Monic irreducible factor π of the characteristic polynomial.
    pub factor: UniPoly,
    pub exponent: usize,
    /// C(π^exponent).
    pub companion: CompanionBlock,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryRationalForm {
    pub blocks: Vec<RationalBlock>,
    /// P with P⁻¹AP = ⊕ blocks.
    pub transform: Matrix,
}

impl PrimaryRationalForm {
    pub fn block_matrix(&self) -> Matrix {
        direct_sum_all(self.transform.field(), self.blocks.iter().map(|b| &b.companion.matrix))
    }

    /// (factor, exponent) pairs in canonical order.
    pub fn invariants(&self) -> Vec<(UniPoly, usize)> {
        self.blocks.iter().map(|b| (b.factor.clone(), b.exponent)).collect()
    }
}

fn direct_sum_all<'a>(field: &Field, blocks: impl Iterator<Item = &'a Matrix>) -> Matrix {
    blocks.fold(Matrix::zeros(field, 0, 0), |acc, b| acc.direct_sum(b))
}

fn in_span(field: &Field, n: usize, base: &[Matrix], v: &Matrix) -> bool {
    if base.is_empty() {
        return v.is_zero();
    }
    let mut cols = base.to_vec();
    let r = Matrix::from_columns(field, n, &cols).rank();
    cols.push(v.clone());
    Matrix::from_columns(field, n, &cols).rank() == r
}

/// Cyclic generators of the π-primary component of A: pairs (j, v) with v
/// annihilated exactly by π(A)^j, highest exponents first. The cyclic
/// spaces Z(v) together span ker π(A)^e and are independent.
fn primary_generators(a: &Matrix, pi: &UniPoly, e: usize) -> Vec<(usize, Matrix)> {
    let field = a.field();
    let n = a.rows();
    let d = pi.degree().expect("nonconstant factor");
    let b = a.eval_poly(pi);
    let mut kers: Vec<Vec<Matrix>> = vec![Vec::new()];
    let mut bp = Matrix::identity(field, n);
    for _ in 1..=e {
        bp = bp.mul(&b);
        kers.push(bp.null_space());
    }
    let dims: Vec<usize> = kers.iter().map(Vec::len).collect();
    let s = (1..=e).rev().find(|&j| dims[j] > dims[j - 1]).unwrap_or(0);
    let count = |j: usize| if j == 0 || j > s { 0 } else { (dims[j] - dims[j - 1]) / d };

    let mut out = Vec::new();
    let mut chosen: Vec<Matrix> = Vec::new();
    for j in (1..=s).rev() {
        let mut need = count(j) - count(j + 1);
        if need == 0 {
            continue;
        }
        let mut base: Vec<Matrix> = kers[j - 1].clone();
        if j < s {
            base.extend(kers[j + 1].iter().map(|v| b.mul(v)));
        }
        base.extend(chosen.iter().cloned());
        for v in &kers[j] {
            if need == 0 {
                break;
            }
            if in_span(field, n, &base, v) {
                continue;
            }
            let mut orbit = vec![v.clone()];
            for _ in 1..d * j {
                let next = a.mul(orbit.last().unwrap());
                orbit.push(next);
            }
            base.extend(orbit.iter().cloned());
            chosen.extend(orbit);
            out.push((j, v.clone()));
            need -= 1;
        }
    }
    out
}

/// Similar block-diagonal form with companion blocks of prime-power factors.
pub fn primary_rational_form(a: &Matrix) -> Result<PrimaryRationalForm> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("rational form needs a square matrix".into()));
    }
    let field = a.field();
    let n = a.rows();
    let mut blocks = Vec::new();
    let mut columns = Vec::new();
    if n > 0 {
        let mut facs = factor_poly(&a.char_poly())?;
        facs.sort_by(|x, y| x.0.cmp_canonical(&y.0));
        for (pi, e) in facs {
            for (j, v) in primary_generators(a, &pi, e) {
                let f = pi.pow(j as u64);
                let size = f.degree().unwrap();
                let mut w = v;
                for _ in 0..size {
                    let next = a.mul(&w);
                    columns.push(w);
                    w = next;
                }
                blocks.push(RationalBlock { factor: pi.clone(), exponent: j, companion: companion(&f)? });
            }
        }
    }
    let transform = Matrix::from_columns(field, n, &columns);
    let rf = PrimaryRationalForm { blocks, transform };
    debug_assert!(rf.transform.inverse().is_some_and(|p| p.mul(a).mul(&rf.transform) == rf.block_matrix()));
    Ok(rf)
}

/// True iff some block is C(x^e) with e ≥ 2.
pub fn has_nonzero_nilpotent_block(rf: &PrimaryRationalForm) -> bool {
    rf.blocks.iter().any(|b| b.factor == UniPoly::x(b.factor.field()) && b.exponent >= 2)
}

/// Jordan cell J_m(λ): λ on the diagonal, ones on the superdiagonal.
pub fn jordan_cell(field: &Field, m: usize, lambda: &FieldElem) -> Matrix {
    let mut j = Matrix::scalar(field, m, lambda.clone());
    for i in 1..m {
        j.set(i - 1, i, field.one());
    }
    j
}

/// Jordan data over the splitting field of the characteristic polynomial,
/// grouped so that each eigenvalue owns one diagonal block C_{n_i}(λ_i).
#[derive(Clone, Debug)]
pub struct SplitJordanData {
    pub field: Field,
    pub embedding: Embedding,
    /// A carried into `field`.
    pub lifted: Matrix,
    /// Distinct eigenvalues in the field's canonical element order.
    pub eigenvalues: Vec<FieldElem>,
    pub sizes: Vec<usize>,
    /// Jordan cell sizes per eigenvalue, descending.
    pub cells: Vec<Vec<usize>>,
    /// C_{n_i}(λ_i), the direct sum of that eigenvalue's cells.
    pub blocks: Vec<Matrix>,
    /// S with S⁻¹·lifted·S = ⊕ blocks.
    pub similarity: Matrix,
    pub similarity_inv: Matrix,
}

impl SplitJordanData {
    pub fn jordan_matrix(&self) -> Matrix {
        direct_sum_all(&self.field, self.blocks.iter())
    }

    /// Row/column offset of block i.
    pub fn offset(&self, i: usize) -> usize {
        self.sizes[..i].iter().sum()
    }

    /// S·X·S⁻¹, carrying a matrix in Jordan coordinates back.
    pub fn transport(&self, x: &Matrix) -> Matrix {
        self.similarity.mul(x).mul(&self.similarity_inv)
    }
}

pub fn jordan_over_splitting_field(a: &Matrix) -> Result<SplitJordanData> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("Jordan form needs a square matrix".into()));
    }
    let n = a.rows();
    let (field, embedding) = splitting_field(&a.char_poly())?;
    let lifted = embedding.map_matrix(a);
    let mut eig = if n == 0 { Vec::new() } else { roots(&lifted.char_poly())? };
    if eig.iter().map(|(_, m)| m).sum::<usize>() != n {
        return Err(Error::NotSplit);
    }
    eig.sort_by(|x, y| field.cmp(&x.0, &y.0));
    let mut eigenvalues = Vec::new();
    let mut sizes = Vec::new();
    let mut cells = Vec::new();
    let mut blocks = Vec::new();
    let mut columns = Vec::new();
    for (lambda, mult) in eig {
        let lin = UniPoly::linear(&field, &lambda);
        let nil = lifted.sub(&Matrix::scalar(&field, n, lambda.clone()));
        let gens = primary_generators(&lifted, &lin, mult);
        let mut cell_sizes = Vec::new();
        let mut block = Matrix::zeros(&field, 0, 0);
        for (j, v) in gens {
            let mut chain = vec![v];
            for _ in 1..j {
                let next = nil.mul(chain.last().unwrap());
                chain.push(next);
            }
            chain.reverse();
            columns.extend(chain);
            cell_sizes.push(j);
            block = block.direct_sum(&jordan_cell(&field, j, &lambda));
        }
        eigenvalues.push(lambda);
        sizes.push(mult);
        cells.push(cell_sizes);
        blocks.push(block);
    }
    let similarity = Matrix::from_columns(&field, n, &columns);
    let similarity_inv = similarity.inverse().expect("Jordan chains form a basis");
    let data = SplitJordanData { field, embedding, lifted, eigenvalues, sizes, cells, blocks, similarity, similarity_inv };
    debug_assert_eq!(data.similarity_inv.mul(&data.lifted).mul(&data.similarity), data.jordan_matrix());
    Ok(data)
}
