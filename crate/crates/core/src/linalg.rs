//! Sparse exact linear algebra over ℚ: incremental echelon forms, rank,
//! kernels, and block-diagonal splitting.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::element::Coeff;

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Coeff)>;

pub fn sparse_from_map(m: BTreeMap<usize, Coeff>) -> SparseVec {
    m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Row-echelon basis of a growing subspace. Each stored row has leading
/// coefficient 1 at its key and entries only at larger indices.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    fn reduce_in_place(&self, w: &mut BTreeMap<usize, Coeff>) {
        let mut cursor = 0usize;
        loop {
            let next = w
                .range(cursor..)
                .find(|(k, _)| self.pivots.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = next else { break };
            for (j, x) in &self.pivots[&k] {
                let slot = w.entry(*j).or_insert_with(Coeff::zero);
                *slot -= &c * x;
                if slot.is_zero() {
                    w.remove(j);
                }
            }
            cursor = k + 1;
        }
    }

    /// Remainder of `v` after elimination against the stored rows.
    pub fn reduce(&self, v: &[(usize, Coeff)]) -> SparseVec {
        let mut w: BTreeMap<usize, Coeff> = v.iter().cloned().collect();
        self.reduce_in_place(&mut w);
        sparse_from_map(w)
    }

    pub fn contains(&self, v: &[(usize, Coeff)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the spanned subspace; returns whether the rank grew.
    pub fn insert(&mut self, v: &[(usize, Coeff)]) -> bool {
        let r = self.reduce(v);
        let Some((lead, c)) = r.first().cloned() else { return false };
        let inv = Coeff::one() / c;
        let row = r.into_iter().map(|(j, x)| (j, x * &inv)).collect();
        self.pivots.insert(lead, row);
        true
    }

    /// Fully reduced row-echelon form, rows ordered by pivot column.
    pub fn into_rref(self) -> Vec<SparseVec> {
        let mut done: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (lead, row) in self.pivots.into_iter().rev() {
            let mut w: BTreeMap<usize, Coeff> = row.into_iter().collect();
            let targets: Vec<(usize, Coeff)> =
                w.iter().filter(|(j, _)| **j != lead && done.contains_key(j)).map(|(j, c)| (*j, c.clone())).collect();
            for (j, c) in targets {
                for (k, x) in &done[&j] {
                    let slot = w.entry(*k).or_insert_with(Coeff::zero);
                    *slot -= &c * x;
                    if slot.is_zero() {
                        w.remove(k);
                    }
                }
            }
            done.insert(lead, sparse_from_map(w));
        }
        done.into_values().collect()
    }
}

/// Basis of `{ x : <r, x> = 0 for all rows r }` inside a space of dimension
/// `dim`, one vector per free column of the RREF, each with a 1 at its free
/// column.
pub fn nullspace(rows: &[SparseVec], dim: usize) -> Vec<SparseVec> {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r);
    }
    let rref = ech.into_rref();
    let pivot_of: Vec<usize> = rref.iter().map(|r| r[0].0).collect();
    let mut is_pivot = vec![false; dim];
    for &p in &pivot_of {
        is_pivot[p] = true;
    }
    // column -> list of (rref row, coefficient) for non-pivot columns
    let mut col_entries: HashMap<usize, Vec<(usize, Coeff)>> = HashMap::new();
    for (ri, r) in rref.iter().enumerate() {
        for (j, c) in r.iter().skip(1) {
            col_entries.entry(*j).or_default().push((ri, c.clone()));
        }
    }
    let mut out = Vec::new();
    for f in (0..dim).filter(|&f| !is_pivot[f]) {
        let mut v: BTreeMap<usize, Coeff> = BTreeMap::new();
        v.insert(f, Coeff::one());
        if let Some(es) = col_entries.get(&f) {
            for (ri, c) in es {
                v.insert(pivot_of[*ri], -c.clone());
            }
        }
        out.push(sparse_from_map(v));
    }
    out
}

/// Row-reduces a spanning set to its RREF basis.
pub fn rref_basis(vectors: &[SparseVec]) -> Vec<SparseVec> {
    let mut ech = Echelon::new();
    for v in vectors {
        ech.insert(v);
    }
    ech.into_rref()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Splits a family of vectors into groups with pairwise disjoint supports
/// (connected components of the support graph). Zero vectors are dropped.
pub fn support_components(vectors: &[SparseVec], dim: usize) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(dim);
    for v in vectors {
        if let Some((first, _)) = v.first() {
            for (j, _) in v.iter().skip(1) {
                uf.union(*first, *j);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, v) in vectors.iter().enumerate() {
        if let Some((first, _)) = v.first() {
            groups.entry(uf.find(*first)).or_default().push(i);
        }
    }
    groups.into_values().collect()
}

/// Rank of the span of `vectors` (living in a space of dimension `dim`),
/// computed block by block over the connected components of the supports.
pub fn rank(vectors: &[SparseVec], dim: usize) -> usize {
    let groups = support_components(vectors, dim);
    groups
        .par_iter()
        .map(|g| {
            let mut ech = Echelon::new();
            for &i in g {
                ech.insert(&vectors[i]);
            }
            ech.rank()
        })
        .sum()
}

/// Echelon forms kept separately for each connected component of the
/// supports of the spanning vectors.
#[derive(Clone, Debug, Default)]
pub struct BlockEchelon {
    block_of: HashMap<usize, usize>,
    blocks: Vec<Echelon>,
}

impl BlockEchelon {
    pub fn new(vectors: &[SparseVec], dim: usize) -> Self {
        let groups = support_components(vectors, dim);
        let blocks: Vec<Echelon> = groups
            .par_iter()
            .map(|g| {
                let mut ech = Echelon::new();
                for &i in g {
                    ech.insert(&vectors[i]);
                }
                ech
            })
            .collect();
        let mut block_of = HashMap::new();
        for (b, g) in groups.iter().enumerate() {
            for &i in g {
                for (j, _) in &vectors[i] {
                    block_of.insert(*j, b);
                }
            }
        }
        BlockEchelon { block_of, blocks }
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Echelon::rank).sum()
    }

    pub fn contains(&self, v: &[(usize, Coeff)]) -> bool {
        let mut parts: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (j, c) in v {
            match self.block_of.get(j) {
                Some(&b) => parts.entry(b).or_default().push((*j, c.clone())),
                None => return false,
            }
        }
        parts.iter().all(|(b, part)| self.blocks[*b].contains(part))
    }
}

/// Column-stored sparse matrix.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn new(nrows: usize, cols: Vec<SparseVec>) -> Self {
        SparseMatrix { nrows, cols }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn rank(&self) -> usize {
        rank(&self.cols, self.nrows)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.nrows, after.ncols(), "dimension mismatch in composition");
        let cols = self
            .cols
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, Coeff> = BTreeMap::new();
                for (k, c) in col {
                    for (i, x) in &after.cols[*k] {
                        *acc.entry(*i).or_insert_with(Coeff::zero) += c * x;
                    }
                }
                sparse_from_map(acc)
            })
            .collect();
        SparseMatrix { nrows: after.nrows, cols }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::{int, ratio};

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(i, c)| (i, int(c))).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![v(&[(0, 1), (1, 2)]), v(&[(0, 2), (1, 4)]), v(&[(2, 1)])];
        assert_eq!(rank(&rows, 3), 2);
        assert_eq!(rank(&[], 3), 0);
    }

    #[test]
    fn rref_is_reduced() {
        let rows = vec![v(&[(0, 2), (1, 1), (2, 3)]), v(&[(1, 1), (2, 1)])];
        let r = rref_basis(&rows);
        assert_eq!(r.len(), 2);
        assert_eq!(r[0], vec![(0, int(1)), (2, int(1))]);
        assert_eq!(r[1], vec![(1, int(1)), (2, int(1))]);
    }

    #[test]
    fn kernel_is_orthogonal_and_complete() {
        let rows = vec![v(&[(0, 1), (1, 1), (2, 1)]), v(&[(1, 3), (3, -1)])];
        let ker = nullspace(&rows, 4);
        assert_eq!(ker.len(), 2);
        for k in &ker {
            for r in &rows {
                let dot: Coeff = r
                    .iter()
                    .map(|(i, c)| k.iter().find(|(j, _)| j == i).map(|(_, x)| c * x).unwrap_or_else(Coeff::zero))
                    .sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn echelon_membership_with_fractions() {
        let mut e = Echelon::new();
        assert!(e.insert(&[(0, int(3)), (1, int(1))]));
        assert!(e.contains(&[(0, int(1)), (1, ratio(1, 3))]));
        assert!(!e.contains(&[(1, int(1))]));
    }

    #[test]
    fn composition() {
        let a = SparseMatrix::new(2, vec![v(&[(0, 1), (1, 1)])]);
        let b = SparseMatrix::new(1, vec![v(&[(0, 1)]), v(&[(0, -1)])]);
        assert!(a.then(&b).is_zero());
    }
}
