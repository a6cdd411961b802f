//! The Koszul resolution `U(𝔤) ⊗ Λ𝔤 → ℝ` of the trivial module, truncated
//! to a filtration piece `F_p(C)`, its associated graded `W_p^q` with the
//! leading differential `d`, and the contracting homotopy `h`.
//!
//! `U(𝔤)` is handled through PBW monomials (sorted index lists, repeats only
//! at even letters) and the filtration degree of a monomial is its length.
//! Exterior words are sorted with repeats only at odd letters; swapping two
//! letters costs `-(-1)^{|a||b|}`.

use thiserror::Error;

use crate::algebras::{AlgebraPresentation, Kind};
use crate::chain::{add_scaled, add_term, matrix_of, Basis, Chain, ChainError};
use crate::graded::reorder_parity;
use crate::linalg::{homology_dim, LinalgError, SparseMap};
use crate::scalar::odd;
use crate::Scalar;

pub type PbwMonomial = Vec<usize>;
pub type ExtWord = Vec<usize>;
pub type PbwChain<K> = Chain<PbwMonomial, K>;
/// A basis element `u ⊗ a_{j_1}∧…∧a_{j_n}` of `U(𝔤) ⊗ Λ^n 𝔤`.
pub type KoszulBasisElem = (PbwMonomial, ExtWord);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KoszulError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn require_lie<K: Scalar>(g: &AlgebraPresentation<K>) -> Result<(), KoszulError> {
    if g.kind != Kind::Lie {
        return Err(KoszulError::InvalidInput(format!(
            "the Koszul resolution needs a Lie algebra, got {}",
            g.kind.name()
        )));
    }
    Ok(())
}

/// `m·a_i` in normal order.
pub fn pbw_multiply<K: Scalar>(g: &AlgebraPresentation<K>, m: &[usize], i: usize) -> PbwChain<K> {
    let Some((&last, prefix)) = m.split_last() else {
        return Chain::from([(vec![i], K::one())]);
    };
    let even = !odd(g.degree(i));
    if last < i || (last == i && even) {
        let mut w = m.to_vec();
        w.push(i);
        return Chain::from([(w, K::one())]);
    }
    let mut out = Chain::new();
    if last == i {
        // a·a = ½[a, a] for odd a
        let half = K::one() / K::from_count(2);
        for (k, x) in g.br(i, i) {
            add_scaled(&mut out, &(half.clone() * x), &pbw_multiply(g, prefix, k));
        }
        return out;
    }
    // a_l a_i = (-1)^{|a_l||a_i|} a_i a_l + [a_l, a_i]
    let s = K::sign(odd(g.degree(last) * g.degree(i)));
    for (w, x) in pbw_multiply(g, prefix, i) {
        add_scaled(&mut out, &(s.clone() * x), &pbw_multiply(g, &w, last));
    }
    for (k, x) in g.br(last, i) {
        add_scaled(&mut out, &x, &pbw_multiply(g, prefix, k));
    }
    out
}

/// `c·a_{w_1}⋯a_{w_r}` in normal order.
pub fn pbw_mul_word<K: Scalar>(g: &AlgebraPresentation<K>, c: &PbwChain<K>, w: &[usize]) -> PbwChain<K> {
    let mut acc = c.clone();
    for &i in w {
        let mut next = Chain::new();
        for (m, x) in &acc {
            add_scaled(&mut next, x, &pbw_multiply(g, m, i));
        }
        acc = next;
    }
    acc
}

/// Product of two PBW chains.
pub fn pbw_mul<K: Scalar>(g: &AlgebraPresentation<K>, a: &PbwChain<K>, b: &PbwChain<K>) -> PbwChain<K> {
    let mut out = Chain::new();
    for (w, x) in b {
        add_scaled(&mut out, x, &pbw_mul_word(g, a, w));
    }
    out
}

// sorted multisets of size n; `repeat(x)` allows x to occur more than once
fn multisets(dim: usize, n: usize, repeat: &dyn Fn(usize) -> bool) -> Vec<Vec<usize>> {
    fn go(start: usize, dim: usize, left: usize, repeat: &dyn Fn(usize) -> bool, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for x in start..dim {
            cur.push(x);
            go(if repeat(x) { x } else { x + 1 }, dim, left - 1, repeat, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, dim, n, repeat, &mut Vec::new(), &mut out);
    out
}

/// PBW monomials of length `k`.
pub fn pbw_monomials<K: Scalar>(g: &AlgebraPresentation<K>, k: usize) -> Vec<PbwMonomial> {
    multisets(g.dim(), k, &|x| !odd(g.degree(x)))
}

/// Exterior words of length `n`.
pub fn ext_words<K: Scalar>(g: &AlgebraPresentation<K>, n: usize) -> Vec<ExtWord> {
    multisets(g.dim(), n, &|x| odd(g.degree(x)))
}

/// Sorts a wedge of letters, or `None` if an even letter repeats.
pub fn canonical_ext<K: Scalar>(g: &AlgebraPresentation<K>, letters: &[usize]) -> Option<(ExtWord, K)> {
    let mut order: Vec<usize> = (0..letters.len()).collect();
    order.sort_by_key(|&i| letters[i]);
    let word: ExtWord = order.iter().map(|&i| letters[i]).collect();
    if word.windows(2).any(|p| p[0] == p[1] && !odd(g.degree(p[0]))) {
        return None;
    }
    let degrees: Vec<i64> = letters.iter().map(|&x| g.degree(x)).collect();
    let ones = vec![1; letters.len()];
    Some((word, K::sign(reorder_parity(&degrees, &order) ^ reorder_parity(&ones, &order))))
}

/// Basis of `F_p(C)_n`: `u ⊗ ω` with `|ω| = n`, `len u + n ≤ p`, ordered by
/// monomial length, then monomial, then word.
pub fn koszul_chain_basis<K: Scalar>(g: &AlgebraPresentation<K>, p: usize, n: usize) -> Result<Basis<KoszulBasisElem>, KoszulError> {
    require_lie(g)?;
    let mut out = Vec::new();
    if n <= p {
        for k in 0..=p - n {
            out.extend(graded_elems(g, k, n));
        }
    }
    Ok(Basis::new(out))
}

fn graded_elems<K: Scalar>(g: &AlgebraPresentation<K>, k: usize, n: usize) -> Vec<KoszulBasisElem> {
    let words = ext_words(g, n);
    pbw_monomials(g, k)
        .into_iter()
        .flat_map(|u| words.iter().map(move |w| (u.clone(), w.clone())))
        .collect()
}

/// Basis of `W_p^n = F_p(C)_n / F_{p-1}(C)_n`: monomials of length exactly `p - n`.
pub fn graded_basis<K: Scalar>(g: &AlgebraPresentation<K>, p: usize, n: usize) -> Result<Basis<KoszulBasisElem>, KoszulError> {
    require_lie(g)?;
    Ok(Basis::new(if n <= p { graded_elems(g, p - n, n) } else { Vec::new() }))
}

// the two sums of ∂ on one basis element; `leading` keeps only the first,
// restricted to top-length monomials
fn boundary_elem<K: Scalar>(g: &AlgebraPresentation<K>, u: &[usize], w: &[usize], leading: bool) -> Chain<KoszulBasisElem, K> {
    let n = w.len();
    let mut out = Chain::new();
    let ones = vec![1; n];
    let degrees: Vec<i64> = w.iter().map(|&x| g.degree(x)).collect();
    let wedge_sign = |order: &[usize]| reorder_parity(&degrees, order) ^ reorder_parity(&ones, order);
    for i in 0..n {
        let mut order = vec![i];
        order.extend((0..n).filter(|&p| p != i));
        let s = K::sign(wedge_sign(&order));
        let rest: ExtWord = order[1..].iter().map(|&p| w[p]).collect();
        for (m, x) in pbw_multiply(g, u, w[i]) {
            if leading && m.len() != u.len() + 1 {
                continue;
            }
            add_term(&mut out, (m, rest.clone()), s.clone() * x);
        }
    }
    if leading {
        return out;
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut order = vec![i, j];
            order.extend((0..n).filter(|&p| p != i && p != j));
            // (-1)^{i+j} is minus the parity of bringing a_i, a_j to the front
            let s = -K::sign(wedge_sign(&order));
            for (k, x) in g.br(w[i], w[j]) {
                let mut letters = vec![k];
                letters.extend(order[2..].iter().map(|&p| w[p]));
                if let Some((word, s2)) = canonical_ext(g, &letters) {
                    add_term(&mut out, (u.to_vec(), word), s.clone() * s2 * x);
                }
            }
        }
    }
    out
}

/// `∂_n : F_p(C)_n → F_p(C)_{n-1}` for `n ≥ 1`.
pub fn koszul_boundary<K: Scalar>(g: &AlgebraPresentation<K>, p: usize, n: usize) -> Result<SparseMap<K>, KoszulError> {
    if n == 0 {
        return Err(KoszulError::InvalidInput("∂_0 is the augmentation".into()));
    }
    let src = koszul_chain_basis(g, p, n)?;
    let dst = koszul_chain_basis(g, p, n - 1)?;
    Ok(matrix_of(&src, &dst, |(u, w)| boundary_elem(g, u, w, false))?)
}

/// The augmentation `F_p(C)_0 → ℝ`.
pub fn koszul_augmentation<K: Scalar>(g: &AlgebraPresentation<K>, p: usize) -> Result<SparseMap<K>, KoszulError> {
    let src = koszul_chain_basis(g, p, 0)?;
    let mut out = SparseMap::zeros(1, src.len());
    if let Some(i) = src.index_of(&(Vec::new(), Vec::new())) {
        out.add_entry(0, i, K::one());
    }
    Ok(out)
}

/// The leading differential `d_n : W_p^n → W_p^{n-1}`.
pub fn koszul_leading_differential<K: Scalar>(g: &AlgebraPresentation<K>, p: usize, n: usize) -> Result<SparseMap<K>, KoszulError> {
    let src = graded_basis(g, p, n)?;
    if n == 0 {
        return Ok(SparseMap::zeros(0, src.len()));
    }
    let dst = graded_basis(g, p, n - 1)?;
    Ok(matrix_of(&src, &dst, |(u, w)| boundary_elem(g, u, w, true))?)
}

/// `h_{n+1} : W_p^n → W_p^{n+1}`: moves the last monomial letter `a` to the
/// front of the wedge with factor `1/#{copies of a in the new wedge}`, and
/// vanishes when that letter is smaller than the last wedge letter, equal to
/// it and even, or when the monomial is empty.
pub fn koszul_homotopy<K: Scalar>(g: &AlgebraPresentation<K>, p: usize, n: usize) -> Result<SparseMap<K>, KoszulError> {
    let src = graded_basis(g, p, n)?;
    let dst = graded_basis(g, p, n + 1)?;
    Ok(matrix_of(&src, &dst, |(u, w)| {
        let mut out = Chain::new();
        let Some((&a, prefix)) = u.split_last() else { return out };
        if let Some(&last) = w.last() {
            if a < last || (a == last && !odd(g.degree(a))) {
                return out;
            }
        }
        let mut letters = vec![a];
        letters.extend_from_slice(w);
        if let Some((word, s)) = canonical_ext::<K>(g, &letters) {
            let copies = word.iter().filter(|&&x| x == a).count();
            out.insert((prefix.to_vec(), word), s / K::from_count(copies));
        }
        out
    })?)
}

/// Homology of the augmented complex `0 ← ℝ ← F_p(C)_0 ← … ← F_p(C)_p ← 0`.
/// Entry 0 is the `ℝ` slot, entry `n+1` is `F_p(C)_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionReport {
    pub p_max: usize,
    pub homology: Vec<usize>,
}

impl ResolutionReport {
    pub fn is_exact(&self) -> bool {
        self.homology.iter().all(|&h| h == 0)
    }
}

/// `F_{p_max}(C)` is a subcomplex, so every degree of it is checked.
pub fn verify_resolution<K: Scalar>(g: &AlgebraPresentation<K>, p_max: usize) -> Result<ResolutionReport, KoszulError> {
    // maps[n] : slot n → slot n-1, slot 0 = ℝ
    let mut maps = vec![SparseMap::zeros(0, 1), koszul_augmentation(g, p_max)?];
    for n in 1..=p_max + 1 {
        maps.push(koszul_boundary(g, p_max, n)?);
    }
    let homology = (0..=p_max + 1)
        .map(|s| homology_dim(&maps[s], &maps[s + 1]))
        .collect::<Result<_, _>>()?;
    Ok(ResolutionReport { p_max, homology })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::examples::*;
    use crate::Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    // 𝔤 with one odd letter x, one even y and [x, x] = y
    fn odd_square() -> AlgebraPresentation<Q> {
        let mut g = abelian::<Q>(&[1, 2]);
        g.bracket.set(0, 0, 1, q(1));
        assert!(crate::algebras::validate(&g).unwrap().is_empty());
        g
    }

    #[test]
    fn straightening_examples() {
        let g = aff1::<Q>();
        assert_eq!(pbw_multiply(&g, &[0], 1), Chain::from([(vec![0, 1], q(1))]));
        assert_eq!(pbw_multiply(&g, &[1], 0), Chain::from([(vec![0, 1], q(1)), (vec![1], q(-1))]));
        let ab = abelian::<Q>(&[1]);
        assert!(pbw_multiply(&ab, &[0], 0).is_empty());
        let g = odd_square();
        assert_eq!(pbw_multiply(&g, &[0], 0), Chain::from([(vec![1], Q::new(1.into(), 2.into()))]));
    }

    #[test]
    fn straightening_is_associative() {
        for g in [sl2::<Q>(), aff1(), heisenberg(), odd_square()] {
            let d = g.dim();
            for a in crate::bar::tensor_words(d, 2) {
                for b in crate::bar::tensor_words(d, 1) {
                    for c in crate::bar::tensor_words(d, 1) {
                        let one = |w: &Vec<usize>| pbw_mul_word(&g, &Chain::from([(Vec::new(), q(1))]), w);
                        let left = pbw_mul(&g, &pbw_mul(&g, &one(&a), &one(&b)), &one(&c));
                        let right = pbw_mul(&g, &one(&a), &pbw_mul(&g, &one(&b), &one(&c)));
                        assert_eq!(left, right, "{a:?} {b:?} {c:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn boundary_examples() {
        let g = aff1::<Q>();
        let d1 = koszul_boundary(&g, 3, 1).unwrap();
        let src = koszul_chain_basis(&g, 3, 1).unwrap();
        let dst = koszul_chain_basis(&g, 3, 0).unwrap();
        let col = src.index_of(&(vec![], vec![0])).unwrap();
        let row = dst.index_of(&(vec![0], vec![])).unwrap();
        assert_eq!(d1.get(row, col), q(1));
        // ∂(1⊗e∧f) = e⊗f - f⊗e - 1⊗f
        let src = koszul_chain_basis(&g, 3, 2).unwrap();
        let d2 = koszul_boundary(&g, 3, 2).unwrap();
        let col = d2.col_vectors()[src.index_of(&(vec![], vec![0, 1])).unwrap()].clone();
        let image: Chain<KoszulBasisElem, Q> = col.into_iter().map(|(i, x)| (koszul_chain_basis(&g, 3, 1).unwrap().get(i).clone(), x)).collect();
        assert_eq!(
            image,
            Chain::from([
                ((vec![0], vec![1]), q(1)),
                ((vec![1], vec![0]), q(-1)),
                ((vec![], vec![1]), q(-1)),
            ])
        );
    }

    #[test]
    fn boundary_squares_to_zero() {
        for g in [sl2::<Q>(), aff1(), odd_square()] {
            for p in 1..=4 {
                for n in 1..=p {
                    let a = koszul_boundary(&g, p, n).unwrap();
                    let b = koszul_boundary(&g, p, n + 1).unwrap();
                    assert!(a.compose(&b).unwrap().is_zero());
                }
                let e = koszul_augmentation(&g, p).unwrap();
                assert!(e.compose(&koszul_boundary(&g, p, 1).unwrap()).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn homotopy_identity() {
        for (g, pmax) in [(aff1::<Q>(), 4), (sl2(), 3), (odd_square(), 4), (abelian(&[1, 1]), 4)] {
            for p in 1..=pmax {
                for n in 0..=p {
                    let d_n = koszul_leading_differential(&g, p, n).unwrap();
                    let d_up = koszul_leading_differential(&g, p, n + 1).unwrap();
                    let h_up = koszul_homotopy(&g, p, n).unwrap();
                    let mut total = d_up.compose(&h_up).unwrap();
                    if n > 0 {
                        let h_n = koszul_homotopy(&g, p, n - 1).unwrap();
                        total = total.add(&h_n.compose(&d_n).unwrap()).unwrap();
                    }
                    assert_eq!(total, SparseMap::identity(d_n.cols()), "p = {p}, n = {n}");
                }
            }
        }
    }

    #[test]
    fn resolutions_are_exact() {
        for (g, p) in [(aff1::<Q>(), 4), (abelian(&[0, 0]), 4), (sl2(), 3), (odd_square(), 4)] {
            let r = verify_resolution(&g, p).unwrap();
            assert!(r.is_exact(), "{r:?}");
            assert_eq!(r.homology.len(), p + 2);
        }
    }

    #[test]
    fn exterior_matches_symmetric_on_shift() {
        for g in [sl2::<Q>(), odd_square(), abelian(&[0, 1, 2])] {
            for n in 0..=4 {
                let deg = crate::chevalley::sym_degree(&g, None);
                assert_eq!(ext_words(&g, n).len(), crate::chevalley::sym_words(g.dim(), n, &deg).len());
            }
        }
    }
}
