use crate::budget;
use crate::error::{Error, Result};
use crate::matrixcore::{rank_one_idempotents, vector_from_index, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DependenceCase {
    /// R₁, R₂, R₃ are linearly dependent.
    GloballyDependent,
    /// The images of all three fit in one 3-dimensional subspace.
    CommonThreeDimImage,
    /// dim span{(Id−P)R₁, (Id−P)R₂, (Id−P)R₃} = 1 for a rank-one idempotent P.
    RankOneProjection,
    None,
}

impl DependenceCase {
    pub fn name(self) -> &'static str {
        match self {
            DependenceCase::GloballyDependent => "globally_dependent",
            DependenceCase::CommonThreeDimImage => "common_3dim_image",
            DependenceCase::RankOneProjection => "rank_one_projection",
            DependenceCase::None => "none",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependenceReport {
    /// R₁u, R₂u, R₃u are dependent for every u.
    pub dependent_everywhere: bool,
    /// First u (in enumeration order) with independent images.
    pub independent_at: Option<Matrix>,
    pub globally_dependent: bool,
    pub common_three_dim_image: bool,
    /// First rank-one idempotent realizing the projection branch.
    pub projection: Option<Matrix>,
    /// First branch that holds, in the order listed above.
    pub conclusion_case: DependenceCase,
}

/// Checks the local dependence premise by running over all of F^n and
/// tests each conclusion branch constructively.
pub fn local_linear_dependence(r: [&Matrix; 3]) -> Result<DependenceReport> {
    let field = r[0].field();
    let n = r[0].rows();
    if r.iter().any(|m| m.field() != field || m.rows() != n || m.cols() != n) {
        return Err(Error::DimensionMismatch("three n×n matrices over one field expected".into()));
    }
    let q = field.order().ok_or_else(|| Error::Unsupported("local dependence needs a finite field".into()))? as u128;
    let vcount = budget::pow_sat(q, n as u32);
    budget::check(vcount, budget::VECTOR_BUDGET)?;
    let independent_at = (0..vcount).map(|i| vector_from_index(field, n, i)).find(|u| {
        let cols: Vec<Matrix> = r.iter().map(|m| m.mul(u)).collect();
        Matrix::from_columns(field, n, &cols).rank() == 3
    });
    let vecs: Vec<Matrix> = r.iter().map(|m| m.vec()).collect();
    let globally_dependent = Matrix::from_columns(field, n * n, &vecs).rank() < 3;
    let mut cols = Vec::with_capacity(3 * n);
    for m in &r {
        cols.extend((0..n).map(|j| m.column_at(j)));
    }
    let common_three_dim_image = Matrix::from_columns(field, n, &cols).rank() <= 3;
    let id = Matrix::identity(field, n);
    let projection = rank_one_idempotents(field, n)?.into_iter().find(|p| {
        let c = id.sub(p);
        let v: Vec<Matrix> = r.iter().map(|m| c.mul(m).vec()).collect();
        Matrix::from_columns(field, n * n, &v).rank() == 1
    });
    let conclusion_case = if globally_dependent {
        DependenceCase::GloballyDependent
    } else if common_three_dim_image {
        DependenceCase::CommonThreeDimImage
    } else if projection.is_some() {
        DependenceCase::RankOneProjection
    } else {
        DependenceCase::None
    };
    Ok(DependenceReport {
        dependent_everywhere: independent_at.is_none(),
        independent_at,
        globally_dependent,
        common_three_dim_image,
        projection,
        conclusion_case,
    })
}
