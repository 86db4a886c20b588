//! Trichotomy classification of Ω_{•A} ∩ Ω_{A•A}, by a structural path over
//! the Jordan data of A and by a direct search in the intersection.

use crate::budget;
use crate::canonform::{jordan_over_splitting_field, SplitJordanData};
use crate::elemop::{omega_intersection, spectrum_value};
use crate::error::{Error, Result};
use crate::exactfield::{factor_poly, roots, splitting_field, Embedding, Field, FieldDescriptor, FieldElem, UniPoly};
use crate::matrixcore::{normalized_vectors, Matrix, SubspaceBasis};
use crate::multipoly::NormalizedPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OmegaCase {
    TrivialZero,
    ContainsRankOneSquareZero { witness: Matrix },
    ScalarIdempotentLine { p: Matrix },
    Other { basis: SubspaceBasis },
}

impl OmegaCase {
    pub fn kind(&self) -> &'static str {
        match self {
            OmegaCase::TrivialZero => "trivial_zero",
            OmegaCase::ContainsRankOneSquareZero { .. } => "rank_one_square_zero",
            OmegaCase::ScalarIdempotentLine { .. } => "idempotent_line",
            OmegaCase::Other { .. } => "other",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassPath {
    Structural,
    Direct,
}

impl ClassPath {
    pub fn name(self) -> &'static str {
        match self {
            ClassPath::Structural => "structural",
            ClassPath::Direct => "direct",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaClassification {
    pub case: OmegaCase,
    pub path: ClassPath,
    /// Field the witness and dimension refer to.
    pub extension: FieldDescriptor,
    pub dimension: usize,
    /// Proof step that decided a structural classification (1, 2, 4 or 5).
    pub step: Option<u8>,
}

/// The normalized polynomial with coefficients carried along `emb`.
fn lift_poly(np: &NormalizedPoly, emb: &Embedding) -> Result<NormalizedPoly> {
    if emb.is_identity() {
        return Ok(np.clone());
    }
    np.base.map_coeffs(emb.target(), |c| emb.map_elem(c)).normalize()
}

fn check_input(a: &Matrix, np: &NormalizedPoly) -> Result<()> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("A must be square".into()));
    }
    if a.field() != np.field() {
        return Err(Error::FieldMismatch(format!("A over {}, polynomial over {}", a.field().name(), np.field().name())));
    }
    Ok(())
}

fn splits(a: &Matrix) -> Result<bool> {
    if a.rows() == 0 {
        return Ok(true);
    }
    Ok(factor_poly(&a.char_poly())?.iter().all(|(g, _)| g.degree() == Some(1)))
}

/// Follows the five-step argument: Jordan data of A, then the scalar
/// polynomials p_{•A}, p_{A•A} on all eigenvalue pairs.
pub fn classify_structural(a: &Matrix, np: &NormalizedPoly, lift: bool) -> Result<OmegaClassification> {
    check_input(a, np)?;
    if !lift && !splits(a)? {
        return Err(Error::NotSplit);
    }
    let jd = jordan_over_splitting_field(a)?;
    let npx = lift_poly(np, &jd.embedding)?;
    classify_from_jordan(&jd, &npx)
}

fn classify_from_jordan(jd: &SplitJordanData, np: &NormalizedPoly) -> Result<OmegaClassification> {
    let f = &jd.field;
    let n = jd.lifted.rows();
    let rb: Vec<FieldElem> = np.beta.iter().rev().cloned().collect();
    let rt: Vec<FieldElem> = np.tilde_beta.iter().rev().cloned().collect();
    let both_vanish = |l: &FieldElem, m: &FieldElem| {
        f.is_zero(&spectrum_value(f, &rb, l, m)) && f.is_zero(&spectrum_value(f, &rt, l, m))
    };
    let ev = &jd.eigenvalues;
    let r = ev.len();
    let result = |case: OmegaCase, step: u8, dimension: usize| OmegaClassification {
        case,
        path: ClassPath::Structural,
        extension: f.descriptor(),
        dimension,
        step: Some(step),
    };

    let any_pair = (0..r).any(|i| (0..r).any(|j| both_vanish(&ev[i], &ev[j])));
    if !any_pair {
        return Ok(result(OmegaCase::TrivialZero, 1, 0));
    }
    let dim = || omega_intersection(&jd.lifted, np).map(|s| s.dim());
    for i in 0..r {
        for j in (0..r).filter(|&j| j != i) {
            if both_vanish(&ev[i], &ev[j]) {
                let row = jd.offset(i);
                let col = jd.offset(j) + jd.sizes[j] - 1;
                let witness = jd.transport(&Matrix::unit(f, n, row, col));
                return Ok(result(OmegaCase::ContainsRankOneSquareZero { witness }, 2, dim()?));
            }
        }
    }
    // a diagonal pair vanishes only at λ = 0 since 1 + ξ ≠ 0
    let i = (0..r).find(|&i| both_vanish(&ev[i], &ev[i])).expect("a vanishing pair exists");
    let off = jd.offset(i);
    if jd.sizes[i] >= 2 {
        let witness = jd.transport(&Matrix::unit(f, n, off, off + jd.sizes[i] - 1));
        Ok(result(OmegaCase::ContainsRankOneSquareZero { witness }, 4, dim()?))
    } else {
        let p = jd.transport(&Matrix::unit(f, n, off, off));
        Ok(result(OmegaCase::ScalarIdempotentLine { p }, 5, 1))
    }
}

/// Computes the intersection and inspects it: a rank-one square-zero element
/// if one exists, else a rank-one idempotent spanning it, else Other.
///
/// With `lift`, A is first carried to the splitting field of its
/// characteristic polynomial.
pub fn classify_direct(a: &Matrix, np: &NormalizedPoly, lift: bool, jobs: usize) -> Result<OmegaClassification> {
    check_input(a, np)?;
    let (field, emb) = if lift && a.rows() > 0 {
        splitting_field(&a.char_poly())?
    } else {
        (a.field().clone(), Embedding::identity(a.field()))
    };
    let ax = emb.map_matrix(a);
    let npx = lift_poly(np, &emb)?;
    let inter = omega_intersection(&ax, &npx)?;
    let dimension = inter.dim();
    let done = |case| Ok(OmegaClassification { case, path: ClassPath::Direct, extension: field.descriptor(), dimension, step: None });
    if dimension == 0 {
        return done(OmegaCase::TrivialZero);
    }
    if let Some(witness) = find_rank_one_square_zero(&inter, jobs)? {
        return done(OmegaCase::ContainsRankOneSquareZero { witness });
    }
    if dimension == 1 {
        let b = &inter.basis()[0];
        if b.is_rank_one() {
            // B² = cB with c = trace B for rank-one B
            let c = b.trace();
            if !field.is_zero(&c) && b.mul(b) == b.scale(&c) {
                let p = b.scale(&field.inv(&c).unwrap());
                return done(OmegaCase::ScalarIdempotentLine { p });
            }
        }
    }
    done(OmegaCase::Other { basis: inter })
}

fn is_rank_one_square_zero(m: &Matrix) -> bool {
    m.is_rank_one() && m.is_square_zero()
}

/// A nonzero rank-one square-zero element of the subspace, or None.
pub fn find_rank_one_square_zero(w: &SubspaceBasis, jobs: usize) -> Result<Option<Matrix>> {
    let field = w.field();
    if w.is_zero() {
        return Ok(None);
    }
    if let Some(q) = field.order() {
        let total = budget::pow_sat(q as u128, w.dim() as u32);
        if total <= budget::MATRIX_BUDGET {
            return Ok(search_span(w, total, jobs));
        }
        return search_by_column(w);
    }
    match w.dim() {
        1 => Ok(Some(w.basis()[0].clone()).filter(is_rank_one_square_zero)),
        2 => search_pencil(w),
        d => Err(Error::Unsupported(format!(
            "rank-one square-zero search in a {d}-dimensional subspace over {}",
            field.name()
        ))),
    }
}

fn search_span(w: &SubspaceBasis, total: u128, jobs: usize) -> Option<Matrix> {
    let field = w.field();
    let q = field.order().unwrap() as u128;
    let d = w.dim();
    let element = |mut idx: u128| {
        let mut coeffs = vec![field.zero(); d];
        for c in coeffs.iter_mut().rev() {
            *c = field.elem((idx % q) as u64);
            idx /= q;
        }
        w.combination(&coeffs)
    };
    crate::par::find_first(total, jobs, |i| i > 0 && is_rank_one_square_zero(&element(i))).map(element)
}

/// Rank-one square-zero elements are x·fᵀ with fᵀx = 0. For each column x
/// (first nonzero entry one) the admissible f form a linear space.
fn search_by_column(w: &SubspaceBasis) -> Result<Option<Matrix>> {
    let field = w.field();
    let n = w.n();
    let c = w.constraints();
    for x in normalized_vectors(field, n)? {
        let xs = x.entries();
        let mut g = Matrix::zeros(field, c.rows() + 1, n);
        for r in 0..c.rows() {
            for j in 0..n {
                let s = (0..n).fold(field.zero(), |acc, i| field.add(&acc, &field.mul(c.get(r, i + n * j), &xs[i])));
                g.set(r, j, s);
            }
        }
        for (j, xj) in xs.iter().enumerate() {
            g.set(c.rows(), j, xj.clone());
        }
        if let Some(f) = g.null_space().into_iter().next() {
            return Ok(Some(x.mul(&f.transpose())));
        }
    }
    Ok(None)
}

/// Two-dimensional subspace over an infinite field: test B₂, then B₁ + tB₂
/// where t runs over common roots of the minors and of the square.
fn search_pencil(w: &SubspaceBasis) -> Result<Option<Matrix>> {
    let field = w.field();
    let n = w.n();
    let (b1, b2) = (&w.basis()[0], &w.basis()[1]);
    if is_rank_one_square_zero(b2) {
        return Ok(Some(b2.clone()));
    }
    let entry = |i: usize, j: usize| UniPoly::new(field, vec![b1.get(i, j).clone(), b2.get(i, j).clone()]);
    let mut g = UniPoly::zero(field);
    for i in 0..n {
        for k in i + 1..n {
            for j in 0..n {
                for l in j + 1..n {
                    let minor = entry(i, j).mul(&entry(k, l)).sub(&entry(i, l).mul(&entry(k, j)));
                    g = g.gcd(&minor);
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let sq = (0..n).fold(UniPoly::zero(field), |acc, m| acc.add(&entry(i, m).mul(&entry(m, j))));
            g = g.gcd(&sq);
        }
    }
    if g.is_zero() {
        return Ok(Some(b1.clone()));
    }
    let mut rts = roots(&g)?;
    rts.sort_by(|x, y| field.cmp(&x.0, &y.0));
    Ok(rts.first().map(|(t, _)| b1.add(&b2.scale(t))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossReport {
    pub agree: bool,
    pub structural: OmegaClassification,
    pub direct: OmegaClassification,
}

impl CrossReport {
    pub fn diagnostic(&self) -> String {
        format!(
            "structural {} (step {:?}) vs direct {} (dimension {})",
            self.structural.case.kind(),
            self.structural.step,
            self.direct.case.kind(),
            self.direct.dimension
        )
    }
}

/// Both paths over the splitting field; agreement means equal case kinds.
pub fn cross_validate(a: &Matrix, np: &NormalizedPoly, jobs: usize) -> Result<CrossReport> {
    let structural = classify_structural(a, np, true)?;
    let direct = classify_direct(a, np, true, jobs)?;
    Ok(CrossReport { agree: structural.case.kind() == direct.case.kind(), structural, direct })
}

/// Checks the invariants a classification promises against A and p.
pub fn verify_classification(a: &Matrix, np: &NormalizedPoly, c: &OmegaClassification) -> Result<bool> {
    let field = Field::new(&c.extension)?;
    let emb = Embedding::new(a.field(), &field)?;
    let ax = emb.map_matrix(a);
    let npx = lift_poly(np, &emb)?;
    let inter = omega_intersection(&ax, &npx)?;
    Ok(match &c.case {
        OmegaCase::TrivialZero => inter.is_zero(),
        OmegaCase::ContainsRankOneSquareZero { witness } => is_rank_one_square_zero(witness) && inter.contains(witness),
        OmegaCase::ScalarIdempotentLine { p } => {
            p.is_idempotent() && p.is_rank_one() && inter == SubspaceBasis::span(&field, a.rows(), std::slice::from_ref(p))?
        }
        OmegaCase::Other { basis } => *basis == inter,
    })
}
