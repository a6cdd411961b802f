//! Graded bases, degree shifts and Koszul signs.

use std::collections::HashSet;

use thiserror::Error;

use crate::scalar::odd;
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradedError {
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("degree list has length {degrees}, permutation has size {perm}")]
    LengthMismatch { degrees: usize, perm: usize },
    #[error("duplicate basis name {0:?}")]
    DuplicateName(String),
}

/// Ordered list of named basis vectors with integer degrees `|a|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasis {
    elements: Vec<(String, i64)>,
}

impl GradedBasis {
    pub fn new(elements: Vec<(String, i64)>) -> Result<Self, GradedError> {
        let mut seen = HashSet::new();
        for (name, _) in &elements {
            if !seen.insert(name.as_str()) {
                return Err(GradedError::DuplicateName(name.clone()));
            }
        }
        Ok(GradedBasis { elements })
    }

    /// Basis `name_0, name_1, ...` with the given degrees.
    pub fn from_degrees(prefix: &str, degrees: &[i64]) -> Self {
        GradedBasis {
            elements: degrees
                .iter()
                .enumerate()
                .map(|(i, &d)| (format!("{prefix}{i}"), d))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i].0
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.elements[i].1
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.elements.iter().map(|e| e.1).collect()
    }

    pub fn elements(&self) -> &[(String, i64)] {
        &self.elements
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|(n, _)| n == name)
    }

    /// Disjoint union, `self` first.
    pub fn concat(&self, other: &GradedBasis) -> Result<GradedBasis, GradedError> {
        let mut elements = self.elements.clone();
        elements.extend(other.elements.iter().cloned());
        GradedBasis::new(elements)
    }
}

/// A tensor word of basis letters, read in a space shifted `shift` times.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub letters: Vec<usize>,
    pub shift: i64,
}

impl Word {
    pub fn new(letters: Vec<usize>, shift: i64) -> Self {
        Word { letters, shift }
    }

    pub fn degree(&self, basis: &GradedBasis) -> i64 {
        word_degree(basis, &self.letters, self.shift)
    }
}

/// `Σ (|a_i| - shift)`.
pub fn word_degree(basis: &GradedBasis, letters: &[usize], shift: i64) -> i64 {
    letters.iter().map(|&i| basis.degree(i) - shift).sum()
}

/// A bijection of `{0, .., n-1}`, stored as its list of images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, GradedError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(GradedError::NotAPermutation(images));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        }
    }
}

/// Parity of the Koszul sign picked up when the word with letter degrees
/// `degrees` is rearranged into `degrees[order[0]], degrees[order[1]], ...`.
///
/// `order` must be a permutation; this is not checked.
pub fn reorder_parity(degrees: &[i64], order: &[usize]) -> bool {
    // bubble sort `order` back to the identity, one adjacent swap at a time
    let mut cur: Vec<usize> = order.to_vec();
    let mut parity = false;
    let n = cur.len();
    for pass in 0..n {
        let mut swapped = false;
        for i in 0..n - 1 - pass.min(n - 1) {
            if cur[i] > cur[i + 1] {
                if odd(degrees[cur[i]]) && odd(degrees[cur[i + 1]]) {
                    parity = !parity;
                }
                cur.swap(i, i + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    parity
}

/// `ε(σ)`: the sign of `a_1⊗…⊗a_n ↦ a_{σ(1)}⊗…⊗a_{σ(n)}` for letters of the
/// given degrees.
pub fn koszul_sign<K: Scalar>(degrees: &[i64], sigma: &Permutation) -> Result<K, GradedError> {
    if degrees.len() != sigma.len() {
        return Err(GradedError::LengthMismatch {
            degrees: degrees.len(),
            perm: sigma.len(),
        });
    }
    Ok(K::sign(reorder_parity(degrees, sigma.images())))
}

/// All `(p, q)` shuffles: `σ(0) < … < σ(p-1)` and `σ(p) < … < σ(p+q-1)`,
/// in lexicographic order of the first block.
pub fn enumerate_shuffles(p: usize, q: usize) -> Vec<Permutation> {
    let n = p + q;
    let mut out = Vec::new();
    let mut first = Vec::with_capacity(p);
    fn rec(start: usize, n: usize, p: usize, first: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if first.len() == p {
            let mut images = first.clone();
            images.extend((0..n).filter(|i| !first.contains(i)));
            out.push(Permutation { images });
            return;
        }
        for i in start..n {
            if n - i < p - first.len() {
                break;
            }
            first.push(i);
            rec(i + 1, n, p, first, out);
            first.pop();
        }
    }
    rec(0, n, p, &mut first, &mut out);
    out
}

/// Shifted degrees of the letters of a word.
pub fn shifted_degrees(basis: &GradedBasis, letters: &[usize], shift: i64) -> Vec<i64> {
    letters.iter().map(|&i| basis.degree(i) - shift).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::new(images.to_vec()).unwrap()
    }

    #[test]
    fn sign_examples() {
        let one = Q::from_integer(1.into());
        assert_eq!(koszul_sign::<Q>(&[1, 3, 2], &Permutation::identity(3)).unwrap(), one);
        assert_eq!(koszul_sign::<Q>(&[1, 1], &perm(&[1, 0])).unwrap(), -one.clone());
        // letters of degrees (1,2,1) cyclically rotated to a_2 a_3 a_1:
        // a_1 passes a_2 (1·2, even) and a_3 (1·1, odd)
        assert_eq!(koszul_sign::<Q>(&[1, 2, 1], &perm(&[1, 2, 0])).unwrap(), -one);
        assert!(matches!(
            Permutation::new(vec![0, 0]),
            Err(GradedError::NotAPermutation(_))
        ));
        assert!(matches!(
            koszul_sign::<Q>(&[1], &perm(&[1, 0])),
            Err(GradedError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn degree_examples() {
        let b = GradedBasis::from_degrees("a", &[0, 2, 3]);
        assert_eq!(word_degree(&b, &[0], 1), -1);
        assert_eq!(word_degree(&b, &[1, 2], 1), 3);
        assert_eq!(word_degree(&b, &[0, 0, 0], 0), 0);
        assert_eq!(Word::new(vec![1, 2], 1).degree(&b), 3);
    }

    #[test]
    fn shuffle_counts() {
        assert_eq!(enumerate_shuffles(1, 1).len(), 2);
        assert_eq!(enumerate_shuffles(2, 1).len(), 3);
        assert_eq!(enumerate_shuffles(2, 2).len(), 6);
        for s in enumerate_shuffles(2, 3) {
            let im = s.images();
            assert!(im[0] < im[1] && im[2] < im[3] && im[3] < im[4]);
        }
    }

    #[test]
    fn duplicate_names_rejected() {
        let r = GradedBasis::new(vec![("x".into(), 0), ("x".into(), 1)]);
        assert_eq!(r, Err(GradedError::DuplicateName("x".into())));
    }
}
