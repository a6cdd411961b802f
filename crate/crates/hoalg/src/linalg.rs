//! Exact sparse linear algebra: ranks, kernels, quotient representatives and
//! homology dimensions.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("composite of consecutive maps is not zero ({nonzero} nonzero entries)")]
    CompositeNotZero { nonzero: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Sparse vector keyed by coordinate. Zero entries are never stored.
pub type SparseVec<K> = BTreeMap<usize, K>;

/// Adds `c * w` into `v`, dropping coordinates that cancel.
pub fn axpy<K: Scalar>(v: &mut SparseVec<K>, c: &K, w: &SparseVec<K>) {
    for (&i, x) in w {
        let delta = c.clone() * x.clone();
        add_at(v, i, delta);
    }
}

pub(crate) fn add_at<K: Scalar>(v: &mut SparseVec<K>, i: usize, delta: K) {
    if delta.is_zero() {
        return;
    }
    match v.get_mut(&i) {
        Some(x) => {
            *x = x.clone() + delta;
            if x.is_zero() {
                v.remove(&i);
            }
        }
        None => {
            v.insert(i, delta);
        }
    }
}

/// A matrix with exact entries, stored as a map from `(row, col)` to a
/// nonzero value.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMap<K> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), K>,
}

impl<K: Scalar> SparseMap<K> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMap {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries.insert((i, i), K::one());
        }
        m
    }

    /// Builds a matrix from triplets, summing duplicates.
    ///
    /// Panics if an index is out of range.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, K)>,
    ) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (r, c, x) in triplets {
            m.add_entry(r, c, x);
        }
        m
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[SparseVec<K>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (&r, x) in col {
                m.add_entry(r, c, x.clone());
            }
        }
        m
    }

    pub fn add_entry(&mut self, r: usize, c: usize, x: K) {
        assert!(
            r < self.rows && c < self.cols,
            "entry ({r}, {c}) outside a {}x{} matrix",
            self.rows,
            self.cols
        );
        if x.is_zero() {
            return;
        }
        let key = (r, c);
        match self.entries.get_mut(&key) {
            Some(y) => {
                *y = y.clone() + x;
                if y.is_zero() {
                    self.entries.remove(&key);
                }
            }
            None => {
                self.entries.insert(key, x);
            }
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> K {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(K::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &K)> {
        self.entries.iter().map(|(&(r, c), x)| (r, c, x))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn row_vectors(&self) -> Vec<SparseVec<K>> {
        let mut out = vec![SparseVec::new(); self.rows];
        for (&(r, c), x) in &self.entries {
            out[r].insert(c, x.clone());
        }
        out
    }

    pub fn col_vectors(&self) -> Vec<SparseVec<K>> {
        let mut out = vec![SparseVec::new(); self.cols];
        for (&(r, c), x) in &self.entries {
            out[c].insert(r, x.clone());
        }
        out
    }

    pub fn transpose(&self) -> Self {
        SparseMap {
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), x)| ((c, r), x.clone()))
                .collect(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let other_rows = other.row_vectors();
        let mut out = Self::zeros(self.rows, other.cols);
        for (&(i, j), a) in &self.entries {
            for (&k, b) in &other_rows[j] {
                out.add_entry(i, k, a.clone() * b.clone());
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let mut out = self.clone();
        for (&(r, c), x) in &other.entries {
            out.add_entry(r, c, x.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, k: &K) -> Self {
        let mut out = Self::zeros(self.rows, self.cols);
        for (&(r, c), x) in &self.entries {
            out.add_entry(r, c, k.clone() * x.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.add(&other.scale(&-K::one()))
    }

    pub fn apply(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let cols = self.col_vectors();
        let mut out = SparseVec::new();
        for (&c, x) in v {
            if c < self.cols {
                axpy(&mut out, x, &cols[c]);
            }
        }
        out
    }

    /// The submatrix on the given rows and columns, in the given order.
    pub fn restrict(&self, rows: &[usize], cols: &[usize]) -> Self {
        let row_pos: BTreeMap<usize, usize> =
            rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let col_pos: BTreeMap<usize, usize> =
            cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut out = Self::zeros(rows.len(), cols.len());
        for (&(r, c), x) in &self.entries {
            if let (Some(&i), Some(&j)) = (row_pos.get(&r), col_pos.get(&c)) {
                out.add_entry(i, j, x.clone());
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<K>> {
        let mut out = vec![vec![K::zero(); self.cols]; self.rows];
        for (&(r, c), x) in &self.entries {
            out[r][c] = x.clone();
        }
        out
    }
}

/// A subspace of `K^n` held in reduced row-echelon form.
#[derive(Debug, Clone)]
pub struct Subspace<K> {
    ambient: usize,
    // pivot column -> row whose leading entry (value 1) sits at that column
    pivots: BTreeMap<usize, SparseVec<K>>,
}

impl<K: Scalar> Subspace<K> {
    pub fn new(ambient: usize) -> Self {
        Subspace {
            ambient,
            pivots: BTreeMap::new(),
        }
    }

    pub fn spanned_by(ambient: usize, vectors: impl IntoIterator<Item = SparseVec<K>>) -> Self {
        let mut s = Self::new(ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivots.contains_key(&c)
    }

    /// Coordinates that survive in the quotient, ascending.
    pub fn non_pivot_columns(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|c| !self.pivots.contains_key(c))
            .collect()
    }

    /// Reduced echelon rows, ordered by pivot column.
    pub fn basis(&self) -> Vec<SparseVec<K>> {
        self.pivots.values().cloned().collect()
    }

    /// Canonical representative of `v` modulo the subspace: the unique
    /// vector in `v + span` with zeros in every pivot column.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut v = v.clone();
        let mut cursor = 0usize;
        loop {
            let next = v
                .range(cursor..)
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(&c, x)| (c, x.clone()));
            let Some((c, x)) = next else { break };
            axpy(&mut v, &-x, &self.pivots[&c]);
            cursor = c + 1;
        }
        v
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        let mut r = self.reduce(&v);
        let Some((&lead, x)) = r.iter().next() else {
            return false;
        };
        let inv = K::one() / x.clone();
        for y in r.values_mut() {
            *y = y.clone() * inv.clone();
        }
        for row in self.pivots.values_mut() {
            if let Some(y) = row.get(&lead).cloned() {
                axpy(row, &-y, &r);
            }
        }
        r.insert(lead, K::one());
        self.pivots.insert(lead, r);
        true
    }
}

/// Dimension of the column space.
pub fn rank<K: Scalar>(m: &SparseMap<K>) -> usize {
    let vectors = if m.rows() <= m.cols() {
        m.row_vectors()
    } else {
        m.col_vectors()
    };
    let ambient = m.rows().max(m.cols());
    let mut s = Subspace::new(ambient);
    for v in vectors {
        s.insert(v);
    }
    s.dim()
}

/// A basis of the null space, one vector per free column.
pub fn kernel_basis<K: Scalar>(m: &SparseMap<K>) -> Vec<SparseVec<K>> {
    let s = Subspace::spanned_by(m.cols(), m.row_vectors());
    let rows = s.basis();
    s.non_pivot_columns()
        .into_iter()
        .map(|free| {
            let mut v = SparseVec::new();
            v.insert(free, K::one());
            for row in &rows {
                let (&p, _) = row.iter().next().expect("echelon rows are nonzero");
                if let Some(x) = row.get(&free) {
                    v.insert(p, -x.clone());
                }
            }
            v
        })
        .collect()
}

/// `dim ker(d_out) - rank(d_in)` for `d_in: C_{n+1} -> C_n`,
/// `d_out: C_n -> C_{n-1}`.
pub fn homology_dim<K: Scalar>(
    d_out: &SparseMap<K>,
    d_in: &SparseMap<K>,
) -> Result<usize, LinalgError> {
    let composite = d_out.compose(d_in)?;
    if !composite.is_zero() {
        return Err(LinalgError::CompositeNotZero {
            nonzero: composite.nnz(),
        });
    }
    Ok(d_out.cols() - rank(d_out) - rank(d_in))
}

/// Dense form of [`Subspace::reduce`] with a length check.
pub fn quotient_reduce<K: Scalar>(s: &Subspace<K>, v: &[K]) -> Result<Vec<K>, LinalgError> {
    if v.len() != s.ambient() {
        return Err(LinalgError::DimensionMismatch {
            expected: s.ambient(),
            found: v.len(),
        });
    }
    let sparse: SparseVec<K> = v
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect();
    let r = s.reduce(&sparse);
    let mut out = vec![K::zero(); v.len()];
    for (i, x) in r {
        out[i] = x;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn dense(rows: &[&[i64]]) -> SparseMap<Q> {
        let cols = rows.first().map_or(0, |r| r.len());
        SparseMap::from_triplets(
            rows.len(),
            cols,
            rows.iter()
                .enumerate()
                .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &x)| (i, j, q(x)))),
        )
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMap::<Q>::zeros(3, 3)), 0);
        assert_eq!(rank(&SparseMap::<Q>::identity(2)), 2);
        assert_eq!(rank(&dense(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]])), 2);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&SparseMap::<Q>::identity(2)).is_empty());
        assert_eq!(kernel_basis(&SparseMap::<Q>::zeros(1, 4)).len(), 4);
        let k = kernel_basis(&dense(&[&[1, -1]]));
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], BTreeMap::from([(0, q(1)), (1, q(1))]));
    }

    #[test]
    fn homology_examples() {
        let d_out = SparseMap::<Q>::zeros(1, 2);
        let d_in = SparseMap::<Q>::zeros(2, 1);
        assert_eq!(homology_dim(&d_out, &d_in).unwrap(), 2);
        // 0 -> K --id--> K -> 0 is exact in the middle
        let id = SparseMap::<Q>::identity(1);
        assert_eq!(homology_dim(&SparseMap::zeros(0, 1), &id).unwrap(), 0);
        let bad = homology_dim(&id, &id);
        assert_eq!(bad, Err(LinalgError::CompositeNotZero { nonzero: 1 }));
    }

    #[test]
    fn quotient_examples() {
        let empty = Subspace::<Q>::new(3);
        let v = vec![q(1), q(5), q(-2)];
        assert_eq!(quotient_reduce(&empty, &v).unwrap(), v);

        let s = Subspace::spanned_by(3, [BTreeMap::from([(0, q(1)), (1, q(1))])]);
        assert_eq!(
            quotient_reduce(&s, &[q(1), q(0), q(0)]).unwrap(),
            vec![q(0), q(-1), q(0)]
        );
        assert_eq!(
            quotient_reduce(&s, &[q(2), q(2), q(0)]).unwrap(),
            vec![q(0), q(0), q(0)]
        );
        assert!(matches!(
            quotient_reduce(&s, &[q(1)]),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn echelon_rows_are_reduced() {
        let s = Subspace::spanned_by(
            3,
            [
                BTreeMap::from([(1, q(2)), (2, q(1))]),
                BTreeMap::from([(0, q(1)), (1, q(1)), (2, q(1))]),
            ],
        );
        let rows = s.basis();
        assert_eq!(s.pivot_columns(), vec![0, 1]);
        for row in &rows {
            let (&p, lead) = row.iter().next().unwrap();
            assert_eq!(*lead, q(1));
            for other in s.pivot_columns() {
                if other != p {
                    assert!(!row.contains_key(&other));
                }
            }
        }
    }
}
