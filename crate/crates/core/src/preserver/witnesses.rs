use std::collections::HashSet;

use crate::error::Result;
use crate::exactfield::{Field, FieldElem};
use crate::matrixcore::Matrix;
use crate::multipoly::{validate_admissible, MultilinearPoly, NormalizedPoly, Permutation, PolyClass};

/// Cap on the number of tuples in the unit family.
const UNIT_CAP: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessTuple {
    pub family: &'static str,
    pub tuple: Vec<Matrix>,
}

/// 0, Id and the matrix units E_ij in row-major order.
pub fn unit_matrices(field: &Field, n: usize) -> Vec<Matrix> {
    let mut out = vec![Matrix::zeros(field, n, n), Matrix::identity(field, n)];
    for i in 0..n {
        for j in 0..n {
            out.push(Matrix::unit(field, n, i, j));
        }
    }
    out
}

/// One and up to two further nonzero scalars.
fn small_scalars(field: &Field) -> Vec<FieldElem> {
    match field.order() {
        Some(q) => (1..q.min(4)).map(|i| field.elem(i)).collect(),
        None => vec![field.one(), field.from_i64(2), field.from_i64(-1)],
    }
}

/// Rank-one idempotents E_ii and E_ii + E_ij.
fn simple_idempotents(field: &Field, n: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    for i in 0..n {
        out.push(Matrix::unit(field, n, i, i));
        for j in (0..n).filter(|&j| j != i) {
            out.push(Matrix::unit(field, n, i, i).add(&Matrix::unit(field, n, i, j)));
        }
    }
    out
}

struct Collector {
    seen: HashSet<Vec<Matrix>>,
    out: Vec<WitnessTuple>,
}

impl Collector {
    fn push(&mut self, family: &'static str, tuple: Vec<Matrix>) {
        if self.seen.insert(tuple.clone()) {
            self.out.push(WitnessTuple { family, tuple });
        }
    }
}

fn filled(fill: &Matrix, k: usize, at: &[(usize, &Matrix)]) -> Vec<Matrix> {
    let mut t = vec![fill.clone(); k];
    for (pos, m) in at {
        t[pos - 1] = (*m).clone();
    }
    t
}

/// Tuples drawn from the families used in the preserver arguments, with the
/// caller's extra tuples first. Positions are one-based in the comments.
///
/// Unit tuples come first, then, for a polynomial x₁⋯x_k − Σ α_σ x_σ over an
/// admissible set: (J,…,J, ξId at t, F,…,F) and (Id,…, X at w, Y at w+1, …,
/// Id) with XY = YX. For a generic polynomial the families are built for
/// its normalized form and translated back: orthogonal idempotent tuples,
/// (X, Id−P, …, Id−P), (A, E_ii, …, E_ii) and (N, P, …, A, …, P) with
/// PN = NP = 0.
pub fn structured_witness_tuples(p: &MultilinearPoly, n: usize, extra: &[Vec<Matrix>]) -> Result<Vec<WitnessTuple>> {
    let field = p.field().clone();
    let k = p.k();
    let mut c = Collector { seen: HashSet::new(), out: Vec::new() };
    for t in extra {
        c.push("extra", t.clone());
    }
    let units = unit_matrices(&field, n);
    let pool: &[Matrix] = if units.len().checked_pow(k as u32).is_some_and(|s| s <= UNIT_CAP) {
        &units
    } else {
        &units[..units.len().min(6)]
    };
    if pool.len().checked_pow(k as u32).is_some_and(|s| s <= UNIT_CAP) {
        let total = pool.len().pow(k as u32);
        for mut idx in 0..total {
            let mut t = vec![pool[0].clone(); k];
            for slot in t.iter_mut().rev() {
                *slot = pool[idx % pool.len()].clone();
                idx /= pool.len();
            }
            c.push("unit", t);
        }
    }
    let id = Matrix::identity(&field, n);
    let zero = Matrix::zeros(&field, n, n);
    let scalars = small_scalars(&field);
    match p.classify() {
        PolyClass::Derogatory => {
            let ident = (1..=k).collect::<Vec<_>>();
            let lead = p.coeff_of(&ident);
            if !field.is_zero(&lead) {
                let xi: Vec<Permutation> = p.terms().iter().filter(|(w, _)| !w.is_identity()).map(|(w, _)| w.clone()).collect();
                if let Ok(adm) = validate_admissible(k, &xi) {
                    for s in &scalars {
                        let sid = Matrix::scalar(&field, n, s.clone());
                        for j in &units {
                            for f in &units {
                                let mut t = vec![j.clone(); adm.t - 1];
                                t.push(sid.clone());
                                t.extend(std::iter::repeat_n(f.clone(), k - adm.t));
                                c.push("lemma_first_moved", t);
                            }
                        }
                    }
                    let mut pairs_pool = units.clone();
                    pairs_pool.extend(scalars.iter().skip(1).map(|s| Matrix::scalar(&field, n, s.clone())));
                    for x in &pairs_pool {
                        for y in &pairs_pool {
                            if x.mul(y) == y.mul(x) {
                                c.push("lemma_commuting", filled(&id, k, &[(adm.w, x), (adm.w + 1, y)]));
                            }
                        }
                    }
                    if k >= 3 {
                        for y in &units {
                            for z in &units {
                                c.push("zero_padded", filled(&zero, k, &[(adm.w, y), (adm.w + 1, z)]));
                            }
                        }
                    }
                }
            }
        }
        PolyClass::Generic => {
            let np = NormalizedPoly::new(p)?;
            let back = |mut t: Vec<Matrix>| {
                t.swap(0, np.i0 - 1);
                t
            };
            let idem = simple_idempotents(&field, n);
            for pm in &idem {
                for q in &idem {
                    if pm.is_orthogonal_pair(q) {
                        c.push("orthogonal", back(filled(pm, k, &[(1, q)])));
                        c.push("orthogonal", back(filled(pm, k, &[(np.j0, q)])));
                    }
                }
            }
            for pm in &idem {
                let comp = id.sub(pm);
                let mut xs = units.clone();
                xs.push(pm.clone());
                for x in &xs {
                    c.push("complement", back(filled(&comp, k, &[(1, x)])));
                    c.push("complement", back(filled(&comp, k, &[(np.j0, x)])));
                }
            }
            for i in 0..n {
                let eii = Matrix::unit(&field, n, i, i);
                for a in &units {
                    c.push("zero_detection", back(filled(&eii, k, &[(1, a)])));
                }
            }
            if k >= 3 && n >= 2 {
                let (jp, _) = np.find_tau_index()?;
                for pm in &idem {
                    let mut xs = units.clone();
                    xs.push(pm.clone());
                    xs.push(id.sub(pm));
                    for a in 0..n {
                        for b in 0..n {
                            let nm = Matrix::unit(&field, n, a, b);
                            if !pm.is_orthogonal_pair(&nm) {
                                continue;
                            }
                            for x in &xs {
                                c.push("orthogonal_pair", back(filled(pm, k, &[(1, &nm), (jp, x)])));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(c.out)
}
