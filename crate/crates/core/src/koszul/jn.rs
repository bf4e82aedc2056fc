//! The spaces `J_n = ⋂_{i=0}^{n-2} V^{⊗i} ⊗ R ⊗ V^{⊗(n-2-i)}` inside the span
//! of length-`n` paths.
//!
//! Each `V^{⊗i} ⊗ R ⊗ V^{⊗j}` has annihilator `V^{⊗i} ⊗ R^⊥ ⊗ V^{⊗j}` for the
//! path-basis pairing, so `J_n` is the common kernel of all the vectors
//! `p · ρ · s` with `ρ` running over a basis of `R^⊥`.

use std::collections::{BTreeMap, HashMap};

use crate::element::{Coeff, Element};
use crate::linalg::{nullspace, rref_basis, SparseVec};
use crate::path::{paths_of_length, Path};
use crate::presentation::QuadraticPresentation;
use crate::quiver::Vertex;

/// Length-`n` paths grouped by endpoints, each group in canonical order.
pub(crate) fn paths_by_endpoints(p: &QuadraticPresentation, n: usize) -> BTreeMap<(Vertex, Vertex), Vec<Path>> {
    let mut out: BTreeMap<(Vertex, Vertex), Vec<Path>> = BTreeMap::new();
    for path in paths_of_length(p.quiver(), n) {
        out.entry((path.start(), path.end())).or_default().push(path);
    }
    out
}

fn to_sparse(e: &Element, index: &HashMap<Path, usize>) -> SparseVec {
    let mut v: Vec<(usize, Coeff)> = e.terms().map(|(p, c)| (index[p], c.clone())).collect();
    v.sort_by_key(|(i, _)| *i);
    v
}

fn from_sparse(v: &SparseVec, basis: &[Path]) -> Element {
    v.iter().map(|(i, c)| (basis[*i].clone(), c.clone())).collect()
}

fn index_of(paths: &[Path]) -> HashMap<Path, usize> {
    paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect()
}

/// Basis of `R^⊥` in each endpoint component of `V ⊗ V`.
fn relation_annihilator(p: &QuadraticPresentation) -> Vec<Element> {
    let mut out = Vec::new();
    for ((s, t), paths) in paths_by_endpoints(p, 2) {
        let idx = index_of(&paths);
        let rows: Vec<SparseVec> = p
            .relators()
            .iter()
            .filter(|r| r.component() == Some((s, t)))
            .map(|r| to_sparse(r, &idx))
            .collect();
        out.extend(nullspace(&rows, paths.len()).iter().map(|v| from_sparse(v, &paths)));
    }
    out
}

/// `J_n` basis for each endpoint pair, in reduced row-echelon form over the
/// canonical path order. Pairs with `J_n = 0` are omitted.
pub fn compute_jn_by_endpoints(p: &QuadraticPresentation, n: usize) -> BTreeMap<(Vertex, Vertex), Vec<Element>> {
    assert!(n >= 1, "J_n is defined for n >= 1");
    let groups = paths_by_endpoints(p, n);
    let annihilator = if n >= 2 { relation_annihilator(p) } else { Vec::new() };
    let q = p.quiver();

    // constraint vectors p·ρ·s grouped by endpoints
    let mut constraints: BTreeMap<(Vertex, Vertex), Vec<Element>> = BTreeMap::new();
    if n >= 2 {
        for i in 0..=n - 2 {
            let prefixes = paths_of_length(q, i);
            let suffixes = paths_of_length(q, n - 2 - i);
            for rho in &annihilator {
                let (s, t) = rho.component().expect("annihilator vectors are component-pure");
                for pre in prefixes.iter().filter(|x| x.end() == s) {
                    let left = Element::from_path(pre.clone()).multiply(rho);
                    for suf in suffixes.iter().filter(|x| x.start() == t) {
                        let v = left.multiply(&Element::from_path(suf.clone()));
                        constraints.entry((pre.start(), suf.end())).or_default().push(v);
                    }
                }
            }
        }
    }

    let mut out = BTreeMap::new();
    for (key, paths) in groups {
        let idx = index_of(&paths);
        let rows: Vec<SparseVec> =
            constraints.get(&key).map(|cs| cs.iter().map(|c| to_sparse(c, &idx)).collect()).unwrap_or_default();
        let kernel = nullspace(&rows, paths.len());
        if kernel.is_empty() {
            continue;
        }
        let basis: Vec<Element> = rref_basis(&kernel).iter().map(|v| from_sparse(v, &paths)).collect();
        out.insert(key, basis);
    }
    out
}

/// Ordered basis of `J_n`: endpoint pairs in order, each block in RREF.
pub fn compute_jn(p: &QuadraticPresentation, n: usize) -> Vec<Element> {
    compute_jn_by_endpoints(p, n).into_values().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::polynomial_presentation;
    use crate::quiver::{Arrow, ArrowId, GradedQuiver};

    #[test]
    fn polynomial_wedges() {
        let p = polynomial_presentation(3);
        assert_eq!(compute_jn(&p, 1).len(), 3);
        assert_eq!(compute_jn(&p, 2).len(), 3);
        assert_eq!(compute_jn(&p, 3).len(), 1);
        assert!(compute_jn(&p, 4).is_empty());
    }

    #[test]
    fn j2_is_relator_span() {
        let p = polynomial_presentation(2);
        let j2 = compute_jn(&p, 2);
        assert_eq!(j2.len(), 1);
        assert_eq!(j2[0], p.relators()[0]);
    }

    #[test]
    fn dual_numbers() {
        let q = GradedQuiver::new(vec![0], vec![Arrow::new("x", 0, 0, 0, 1)]).unwrap();
        let xx = Element::from_path(Path::from_arrows(&q, 0, vec![ArrowId(0); 2]).unwrap());
        let p = QuadraticPresentation::new(q, vec![xx]).unwrap();
        for n in 1..=5 {
            assert_eq!(compute_jn(&p, n).len(), 1, "n = {n}");
        }
    }

    #[test]
    fn free_algebra_has_no_higher_j() {
        let q = GradedQuiver::new(vec![0], vec![Arrow::new("x", 0, 0, 0, 1), Arrow::new("y", 0, 0, 0, 1)]).unwrap();
        let p = QuadraticPresentation::new(q, vec![]).unwrap();
        assert_eq!(compute_jn(&p, 1).len(), 2);
        assert!(compute_jn(&p, 2).is_empty());
    }
}
