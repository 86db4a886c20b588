use super::verify::{check_commutativity_preservation, check_maps_zeros, check_zero_kernel, Strategy, Verdict};
use super::{EntryTweak, Gamma, PreserverSpec, Shift};
use crate::elemop::{omega_intersection, omega_left, omega_right, ElementaryOperator};
use crate::error::{Error, Result};
use crate::exactfield::{Field, FieldDescriptor, FieldHom};
use crate::matrixcore::{matrix_count, matrix_from_index, Matrix};
use crate::multipoly::MultilinearPoly;
use crate::omegaclass::{classify_direct, find_rank_one_square_zero, OmegaCase};

pub const EXAMPLE_IDS: [&str; 6] =
    ["add_a12", "trace_kernel", "jordan_theta", "real_omega", "gaussian_conjugation", "transpose_xy"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleReport {
    pub id: String,
    /// Field of the verdict's matrices.
    pub field: FieldDescriptor,
    pub description: String,
    pub expected: String,
    pub computed: String,
    pub matches: bool,
    /// The main preservation check, when the example has one.
    pub verdict: Option<Verdict>,
    pub details: Vec<String>,
}

fn e(f: &Field, n: usize, i: usize, j: usize) -> Matrix {
    Matrix::unit(f, n, i - 1, j - 1)
}

fn fmt_tuple(t: &[Matrix]) -> String {
    let parts: Vec<String> = t.iter().map(|m| format!("[{}]", m.canonical_key())).collect();
    format!("({})", parts.join(", "))
}

fn violation_text(v: &Verdict) -> String {
    match &v.witness {
        None => "holds".into(),
        Some(w) => format!("violated at {}", fmt_tuple(&w.tuple)),
    }
}

pub fn reproduce_example(id: &str, jobs: usize) -> Result<ExampleReport> {
    match id {
        "add_a12" => add_a12(jobs),
        "trace_kernel" => trace_kernel(jobs),
        "jordan_theta" => jordan_theta(jobs),
        "real_omega" => real_omega(jobs),
        "gaussian_conjugation" => gaussian_conjugation(jobs),
        "transpose_xy" => transpose_xy(jobs),
        _ => Err(Error::Invalid(format!("unknown example {id:?}; expected one of {}", EXAMPLE_IDS.join(", ")))),
    }
}

fn add_a12(jobs: usize) -> Result<ExampleReport> {
    let f = Field::gf(3)?;
    let n = 3;
    let p = MultilinearPoly::from_i64_terms(&f, 3, &[(&[1, 2, 3], 1), (&[2, 1, 3], -1)])?;
    let spec = PreserverSpec::tweak_only(&f, n, EntryTweak::AddA12Identity)?;
    let v = check_maps_zeros(&p, &p, &spec, false, &Strategy::witnesses(), jobs)?;
    let comm = check_commutativity_preservation(&spec, true, &Strategy::witnesses(), jobs)?;
    let expected_tuple = vec![e(&f, n, 1, 1), e(&f, n, 1, 2), e(&f, n, 1, 2)];
    let expected = format!("violated at {}", fmt_tuple(&expected_tuple));
    let computed = violation_text(&v);
    Ok(ExampleReport {
        id: "add_a12".into(),
        field: f.descriptor(),
        description: "A ↦ A + a12·Id on M_3(GF(3)) against p = xyz − yxz".into(),
        matches: computed == expected && comm.holds(),
        expected,
        computed,
        details: vec![format!("commutativity preserved strongly on the witness families: {}", comm.holds())],
        verdict: Some(v),
    })
}

fn trace_kernel(jobs: usize) -> Result<ExampleReport> {
    let f = Field::gf(5)?;
    let n = 3;
    let spec = PreserverSpec::tweak_only(&f, n, EntryTweak::SubtractTraceOverN)?;
    let sampled = check_commutativity_preservation(&spec, true, &Strategy::Sample { count: 2000, seed: 5 }, jobs)?;
    let families = check_commutativity_preservation(&spec, true, &Strategy::witnesses(), jobs)?;
    let kernel = check_zero_kernel(&spec, &Strategy::witnesses(), jobs)?;
    let id_image = spec.apply(&Matrix::identity(&f, n))?;
    let computed = format!(
        "commutativity {} strongly; Φ(Id) {}",
        if sampled.holds() && families.holds() { "preserved" } else { "not preserved" },
        if id_image.is_zero() { "= 0" } else { "≠ 0" }
    );
    let expected = "commutativity preserved strongly; Φ(Id) = 0".to_string();
    let kernel_witness = kernel.witness.as_ref().map(|w| fmt_tuple(&w.tuple)).unwrap_or_else(|| "none".into());
    Ok(ExampleReport {
        id: "trace_kernel".into(),
        field: f.descriptor(),
        description: "A ↦ A − Tr(A)/3·Id on M_3(GF(5))".into(),
        matches: computed == expected && !kernel.holds(),
        expected,
        computed,
        details: vec![format!("first nonzero matrix with zero image: {kernel_witness}")],
        verdict: Some(sampled),
    })
}

/// Matrices whose operator X ↦ XA + AX is invertible.
fn in_theta(a: &Matrix) -> Result<bool> {
    let f = a.field();
    let op = ElementaryOperator::new(a, a, vec![f.one(), f.one()])?;
    Ok(op.kernel().is_zero())
}

fn jordan_theta(jobs: usize) -> Result<ExampleReport> {
    let f = Field::gf(7)?;
    let n = 2;
    let a = Matrix::diag(&f, &[f.from_i64(1), f.from_i64(2)]);
    let p = MultilinearPoly::jordan(&f);
    let members = [a.clone(), Matrix::identity(&f, n), Matrix::from_i64(&f, n, n, &[1, 1, 0, 1])];
    let mut all_theta = true;
    for m in &members {
        all_theta &= in_theta(m)?;
    }
    let spec = PreserverSpec::table(
        &f,
        n,
        vec![
            (members[0].clone(), members[1].clone()),
            (members[1].clone(), members[2].clone()),
            (members[2].clone(), members[0].clone()),
        ],
    )?;
    // Tuples without a moved matrix map to themselves, so these cover every
    // tuple on which the map acts nontrivially.
    let per = matrix_count(&f, n, n)?;
    let mut extra = Vec::new();
    for m in &members {
        for i in 0..per {
            let x = matrix_from_index(&f, n, n, i);
            extra.push(vec![x.clone(), m.clone()]);
            extra.push(vec![m.clone(), x]);
        }
    }
    let v = check_maps_zeros(&p, &p, &spec, true, &Strategy::Witnesses { extra }, jobs)?;
    let is_similarity_scaled = members.iter().all(|m| spec.apply_unchecked(m) == *m);
    let computed = format!(
        "Θ kernel {}; cyclic permutation of Θ members {} zeros strongly",
        if all_theta { "trivial" } else { "nontrivial" },
        if v.holds() { "preserves" } else { "breaks" }
    );
    let expected = "Θ kernel trivial; cyclic permutation of Θ members preserves zeros strongly".to_string();
    Ok(ExampleReport {
        id: "jordan_theta".into(),
        field: f.descriptor(),
        description: "p = xy + yx over GF(7) with A = diag(1,2), 0 ∉ Sp(A) + Sp(A)".into(),
        matches: computed == expected && !is_similarity_scaled,
        expected,
        computed,
        details: vec![
            format!("Ω kernel of X ↦ XA + AX at diag(1,2) is zero: {}", in_theta(&a)?),
            format!("checked {} tuples touching a moved matrix", v.strategy.total),
        ],
        verdict: Some(v),
    })
}

fn real_omega(jobs: usize) -> Result<ExampleReport> {
    let q = Field::rationals();
    let a = Matrix::from_i64(&q, 2, 2, &[0, -3, 1, 0]).direct_sum(&Matrix::identity(&q, 1));
    let np = MultilinearPoly::jordan(&q).normalize()?;
    let right = omega_right(&a, &np)?;
    let left = omega_left(&a, &np)?;
    let w = omega_intersection(&a, &np)?;
    let square_zero = find_rank_one_square_zero(&w, jobs)?;
    let c = classify_direct(&a, &np, false, jobs)?;
    let computed = format!("{}, dimension {}", c.case.kind(), c.dimension);
    let expected = "other, dimension 2".to_string();
    let basis: Vec<String> = match &c.case {
        OmegaCase::Other { basis } => basis.basis().iter().map(|m| format!("[{}]", m.canonical_key())).collect(),
        _ => Vec::new(),
    };
    Ok(ExampleReport {
        id: "real_omega".into(),
        field: q.descriptor(),
        description: "A = [[0,−3],[1,0]] ⊕ 1 over ℚ with p = xy + yx".into(),
        matches: computed == expected && square_zero.is_none() && right.basis == left.basis,
        expected,
        computed,
        details: vec![
            format!("left and right kernels coincide: {}", right.basis == left.basis),
            format!("rank-one square-zero member: {}", square_zero.map_or("none".into(), |m| m.canonical_key())),
            format!("basis: {}", basis.join(", ")),
        ],
        verdict: None,
    })
}

fn gaussian_conjugation(jobs: usize) -> Result<ExampleReport> {
    let g = Field::gaussian();
    let i = g.imaginary_unit()?;
    let p = MultilinearPoly::new(&g, 2, vec![(vec![1, 2], g.one()), (vec![2, 1], g.neg(&i))])?;
    let a = Matrix::from_i64(&g, 2, 2, &[1, 1, -1, 1]);
    let b = Matrix::new(&g, 2, 2, vec![g.one(), i.clone(), i, g.from_i64(-1)])?;
    let spec = PreserverSpec::parametric(Matrix::identity(&g, 2), FieldHom::Conjugation, false, Gamma::Constant(g.one()), Shift::None, EntryTweak::None)?;
    let v = check_maps_zeros(&p, &p, &spec, false, &Strategy::Witnesses { extra: vec![vec![a.clone(), b.clone()]] }, jobs)?;
    let expected = format!("violated at {}", fmt_tuple(&[a, b]));
    let computed = violation_text(&v);
    Ok(ExampleReport {
        id: "gaussian_conjugation".into(),
        field: g.descriptor(),
        description: "entrywise conjugation on M_2(ℚ(i)) against p = xy − i·yx".into(),
        matches: computed == expected,
        expected,
        computed,
        details: vec![format!(
            "p on the conjugated pair: [{}]",
            v.witness.as_ref().map_or(String::new(), |w| w.image_value.canonical_key())
        )],
        verdict: Some(v),
    })
}

fn transpose_xy(jobs: usize) -> Result<ExampleReport> {
    let q = Field::rationals();
    let p = MultilinearPoly::product(&q);
    let spec = PreserverSpec::parametric(Matrix::identity(&q, 2), FieldHom::Identity, true, Gamma::Constant(q.one()), Shift::None, EntryTweak::None)?;
    let v = check_maps_zeros(&p, &p, &spec, false, &Strategy::witnesses(), jobs)?;
    let expected = format!("violated at {}", fmt_tuple(&[e(&q, 2, 1, 1), e(&q, 2, 2, 1)]));
    let computed = violation_text(&v);
    let value = v.witness.as_ref().map(|w| w.image_value.clone());
    Ok(ExampleReport {
        id: "transpose_xy".into(),
        field: q.descriptor(),
        description: "transposition on M_2(ℚ) against p = xy".into(),
        matches: computed == expected && value == Some(e(&q, 2, 1, 2)),
        expected,
        computed,
        details: vec![format!("p on the transposed pair: [{}]", value.map_or(String::new(), |m| m.canonical_key()))],
        verdict: Some(v),
    })
}
