use super::Permutation;
use crate::error::{Error, Result};

/// A set Ξ of non-identity words with witnesses (t, w, u, v), all one-based.
///
/// Conditions are read on slot maps: for a word σ, `slot(i)` is the position
/// of variable i. Every σ ∈ Ξ keeps variables 1..t−1 in place and moves t;
/// variable w sits at slot v and variable w+1 at slot u < v.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleSet {
    pub k: usize,
    pub xi: Vec<Permutation>,
    pub t: usize,
    pub w: usize,
    pub u: usize,
    pub v: usize,
    /// Every valid (t, w, u, v), smallest first; the chosen one is first.
    pub candidates: Vec<(usize, usize, usize, usize)>,
}

pub fn validate_admissible(k: usize, xi: &[Permutation]) -> Result<AdmissibleSet> {
    if xi.is_empty() {
        return Err(Error::Invalid("admissible set must be nonempty".into()));
    }
    if let Some(bad) = xi.iter().find(|p| p.k() != k) {
        return Err(Error::Invalid(format!("{:?} is not a permutation of 1..{k}", bad.images())));
    }
    if xi.iter().any(|p| p.is_identity()) {
        return Err(Error::Invalid("admissible set contains the identity".into()));
    }
    let slots: Vec<Permutation> = xi.iter().map(|p| p.inverse()).collect();
    let first_moved = |s: &Permutation| (1..=k).find(|&i| s.at(i) != i).unwrap();
    let t = first_moved(&slots[0]);
    if slots.iter().any(|s| first_moved(s) != t) {
        return Err(Error::Invalid("the permutations do not share a first moved index".into()));
    }
    let mut candidates = Vec::new();
    for w in 1..k {
        let (v, u) = (slots[0].at(w), slots[0].at(w + 1));
        if u < v && slots.iter().all(|s| s.at(w) == v && s.at(w + 1) == u) {
            candidates.push((t, w, u, v));
        }
    }
    let Some(&(t, w, u, v)) = candidates.first() else {
        return Err(Error::Invalid("no common descent (w, u, v) across the set".into()));
    };
    let mut sorted = xi.to_vec();
    sorted.sort();
    Ok(AdmissibleSet { k, xi: sorted, t, w, u, v, candidates })
}
