//! Finite linear combinations over an ordered key type and the glue that
//! turns a linear map on basis keys into a [`SparseMap`].

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

use crate::linalg::{SparseMap, SparseVec};
use crate::Scalar;

/// A linear combination of keys; zero coefficients are never stored.
pub type Chain<B, K> = BTreeMap<B, K>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("term {0} lies outside the target basis")]
    OutsideBasis(String),
}

pub fn add_term<B: Ord, K: Scalar>(c: &mut Chain<B, K>, key: B, x: K) {
    if x.is_zero() {
        return;
    }
    match c.get_mut(&key) {
        Some(y) => {
            *y = y.clone() + x;
            if y.is_zero() {
                c.remove(&key);
            }
        }
        None => {
            c.insert(key, x);
        }
    }
}

/// `c += k * other`.
pub fn add_scaled<B: Ord + Clone, K: Scalar>(c: &mut Chain<B, K>, k: &K, other: &Chain<B, K>) {
    for (b, x) in other {
        add_term(c, b.clone(), k.clone() * x.clone());
    }
}

pub fn scaled<B: Ord + Clone, K: Scalar>(k: &K, c: &Chain<B, K>) -> Chain<B, K> {
    let mut out = Chain::new();
    add_scaled(&mut out, k, c);
    out
}

pub fn single<B: Ord, K: Scalar>(key: B) -> Chain<B, K> {
    Chain::from([(key, K::one())])
}

/// Applies a linear map given on keys.
pub fn apply_linear<B, C, K, F>(c: &Chain<B, K>, mut f: F) -> Chain<C, K>
where
    B: Ord,
    C: Ord + Clone,
    K: Scalar,
    F: FnMut(&B) -> Chain<C, K>,
{
    let mut out = Chain::new();
    for (b, x) in c {
        add_scaled(&mut out, x, &f(b));
    }
    out
}

/// An enumerated basis with reverse lookup.
#[derive(Debug, Clone)]
pub struct Basis<B> {
    elems: Vec<B>,
    index: HashMap<B, usize>,
}

impl<B: Clone + Eq + Hash + Debug> Basis<B> {
    pub fn new(elems: Vec<B>) -> Self {
        let index = elems
            .iter()
            .enumerate()
            .map(|(i, b)| (b.clone(), i))
            .collect();
        Basis { elems, index }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn get(&self, i: usize) -> &B {
        &self.elems[i]
    }

    pub fn elements(&self) -> &[B] {
        &self.elems
    }

    pub fn index_of(&self, b: &B) -> Option<usize> {
        self.index.get(b).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &B> {
        self.elems.iter()
    }

    pub fn coords<K: Scalar>(&self, c: &Chain<B, K>) -> Result<SparseVec<K>, ChainError>
    where
        B: Ord,
    {
        let mut v = SparseVec::new();
        for (b, x) in c {
            let i = self
                .index_of(b)
                .ok_or_else(|| ChainError::OutsideBasis(format!("{b:?}")))?;
            v.insert(i, x.clone());
        }
        Ok(v)
    }

    pub fn chain<K: Scalar>(&self, v: &SparseVec<K>) -> Chain<B, K>
    where
        B: Ord,
    {
        v.iter()
            .map(|(&i, x)| (self.elems[i].clone(), x.clone()))
            .collect()
    }
}

/// Matrix of the linear map `f` from `domain` to `codomain`.
pub fn matrix_of<B, C, K, F>(
    domain: &Basis<B>,
    codomain: &Basis<C>,
    mut f: F,
) -> Result<SparseMap<K>, ChainError>
where
    B: Clone + Eq + Hash + Debug,
    C: Clone + Eq + Hash + Debug + Ord,
    K: Scalar,
    F: FnMut(&B) -> Chain<C, K>,
{
    let mut m = SparseMap::zeros(codomain.len(), domain.len());
    for (j, b) in domain.iter().enumerate() {
        for (c, x) in f(b) {
            let i = codomain
                .index_of(&c)
                .ok_or_else(|| ChainError::OutsideBasis(format!("{c:?}")))?;
            m.add_entry(i, j, x);
        }
    }
    Ok(m)
}
