//! The symmetric coalgebra on `𝔤[1]`, the codifferential `ℓ` and Chevalley
//! (co)homology of modules.
//!
//! A symmetric word is a sorted list of letter indices over `𝔤[1] ⊕ M[1]`,
//! module letters being numbered after those of `𝔤`. Letters of odd shifted
//! degree occur at most once.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebras::{semidirect, AlgebraError, AlgebraPresentation, Kind, ModulePresentation};
use crate::bar::{in_column_span, Actions, CochainSpace, MorphismReport, TaylorCoefficients};
use crate::chain::{add_scaled, add_term, matrix_of, Basis, Chain, ChainError};
use crate::graded::reorder_parity;
use crate::linalg::{homology_dim, LinalgError, SparseMap, SparseVec};
use crate::scalar::odd;
use crate::Scalar;

pub type SymWord = Vec<usize>;
pub type SymChain<K> = Chain<SymWord, K>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChevalleyError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Sorts `letters` into a symmetric word with its Koszul sign, or `None` if
/// an odd letter repeats.
pub fn canonical<K: Scalar>(letters: &[usize], deg: &dyn Fn(usize) -> i64) -> Option<(SymWord, K)> {
    let mut order: Vec<usize> = (0..letters.len()).collect();
    order.sort_by_key(|&i| letters[i]);
    let word: SymWord = order.iter().map(|&i| letters[i]).collect();
    if word.windows(2).any(|p| p[0] == p[1] && odd(deg(p[0]))) {
        return None;
    }
    let degrees: Vec<i64> = letters.iter().map(|&x| deg(x)).collect();
    Some((word, K::sign(reorder_parity(&degrees, &order))))
}

/// Product `c_1•…•c_k` of symmetric chains.
pub fn sym_product<K: Scalar>(factors: &[SymChain<K>], deg: &dyn Fn(usize) -> i64) -> SymChain<K> {
    let mut acc: SymChain<K> = Chain::from([(Vec::new(), K::one())]);
    for f in factors {
        let mut next = Chain::new();
        for (w, x) in &acc {
            for (u, y) in f {
                let letters: Vec<usize> = w.iter().chain(u).copied().collect();
                if let Some((word, s)) = canonical::<K>(&letters, deg) {
                    add_term(&mut next, word, s * x.clone() * y.clone());
                }
            }
        }
        acc = next;
    }
    acc
}

/// Sorted multisets of size `n` over `0..dim`, odd letters at most once.
pub fn sym_words(dim: usize, n: usize, deg: &dyn Fn(usize) -> i64) -> Vec<SymWord> {
    fn go(start: usize, dim: usize, left: usize, deg: &dyn Fn(usize) -> i64, cur: &mut SymWord, out: &mut Vec<SymWord>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for x in start..dim {
            cur.push(x);
            let next = if odd(deg(x)) { x + 1 } else { x };
            go(next, dim, left - 1, deg, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, dim, n, deg, &mut Vec::new(), &mut out);
    out
}

fn shifted<K: Scalar>(acts: &Actions<'_, K>) -> impl Fn(usize) -> i64 {
    let degs: Vec<i64> = (0..acts.dim_a() + acts.dim_m()).map(|x| acts.degree(x) - 1).collect();
    move |x| degs[x]
}

fn require_lie<K: Scalar>(g: &AlgebraPresentation<K>) -> Result<(), ChevalleyError> {
    if g.kind != Kind::Lie {
        return Err(ChevalleyError::InvalidInput(format!(
            "Chevalley complexes need a Lie algebra, got {}",
            g.kind.name()
        )));
    }
    Ok(())
}

/// Basis of `S^n(𝔤[1])`, or of `C_n(𝔤, M) = M[1]•S^n(𝔤[1])` when a module
/// is given (one module letter, `𝔤`-part major).
pub fn sym_basis<K: Scalar>(
    g: &AlgebraPresentation<K>,
    m: Option<&ModulePresentation<K>>,
    n: usize,
) -> Result<Basis<SymWord>, ChevalleyError> {
    require_lie(g)?;
    let acts = Actions::new(g, m);
    let deg = shifted(&acts);
    let base = sym_words(g.dim(), n, &deg);
    Ok(Basis::new(match m {
        None => base,
        Some(m) => base
            .into_iter()
            .flat_map(|w| {
                (0..m.dim()).map(move |v| {
                    let mut w = w.clone();
                    w.push(g.dim() + v);
                    w
                })
            })
            .collect(),
    }))
}

// bipartitions of 0..n by bitmask, with the sign of w ↦ w_I w_J
fn split<K: Scalar>(w: &[usize], mask: usize, deg: &dyn Fn(usize) -> i64) -> (SymWord, SymWord, K) {
    let (mut i_part, mut j_part, mut order) = (Vec::new(), Vec::new(), Vec::new());
    for (p, &x) in w.iter().enumerate() {
        if mask >> p & 1 == 1 {
            i_part.push(x);
            order.push(p);
        }
    }
    for (p, &x) in w.iter().enumerate() {
        if mask >> p & 1 == 0 {
            j_part.push(x);
            order.push(p);
        }
    }
    let degrees: Vec<i64> = w.iter().map(|&x| deg(x)).collect();
    (i_part, j_part, K::sign(reorder_parity(&degrees, &order)))
}

/// `Δ(a_1•…•a_n) = Σ_{I⊔J, I,J ≠ ∅} ε a_I ⊗ a_J`.
pub fn delta_sym<K: Scalar>(w: &[usize], deg: &dyn Fn(usize) -> i64) -> Vec<(SymWord, SymWord, K)> {
    let n = w.len();
    (1..(1usize << n).saturating_sub(1)).map(|mask| split(w, mask, deg)).collect()
}

/// `Δ` on a chain, collected.
pub fn delta_sym_chain<K: Scalar>(c: &SymChain<K>, deg: &dyn Fn(usize) -> i64) -> Chain<(SymWord, SymWord), K> {
    let mut out = Chain::new();
    for (w, x) in c {
        for (u, v, s) in delta_sym::<K>(w, deg) {
            add_term(&mut out, (u, v), s * x.clone());
        }
    }
    out
}

/// `D(a_1•…•a_n) = Σ_{I⊔J, I ≠ ∅} ε D_{|I|}(a_I)•a_J`.
pub fn lift_coderivation_sym<K: Scalar>(t: &TaylorCoefficients<K>, deg: &dyn Fn(usize) -> i64, w: &[usize]) -> SymChain<K> {
    let n = w.len();
    let mut out = Chain::new();
    for mask in 1..1usize << n {
        let (i_part, j_part, s) = split::<K>(w, mask, deg);
        let Some(value) = t.get(&i_part) else { continue };
        for (y, x) in value {
            let mut letters = vec![*y];
            letters.extend_from_slice(&j_part);
            if let Some((word, s2)) = canonical::<K>(&letters, deg) {
                add_term(&mut out, word, s.clone() * s2 * x.clone());
            }
        }
    }
    out
}

// set partitions of 0..n, blocks ordered by their least element
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(p: usize, n: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if p == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(p);
            go(p + 1, n, cur, out);
            cur[b].pop();
        }
        cur.push(vec![p]);
        go(p + 1, n, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

/// `F(a_1•…•a_n) = Σ_{partitions} ε F(a_{I_1})•…•F(a_{I_j})`, each unordered
/// partition taken once. `deg_out` grades the target letters.
pub fn lift_morphism_sym<K: Scalar>(
    t: &TaylorCoefficients<K>,
    deg_in: &dyn Fn(usize) -> i64,
    deg_out: &dyn Fn(usize) -> i64,
    w: &[usize],
) -> SymChain<K> {
    let degrees: Vec<i64> = w.iter().map(|&x| deg_in(x)).collect();
    let mut out = Chain::new();
    'parts: for blocks in set_partitions(w.len()) {
        let order: Vec<usize> = blocks.iter().flatten().copied().collect();
        let s = K::sign(reorder_parity(&degrees, &order));
        let mut factors = Vec::with_capacity(blocks.len());
        for b in &blocks {
            let u: SymWord = b.iter().map(|&p| w[p]).collect();
            match t.get(&u) {
                Some(v) if !v.is_empty() => factors.push(v.iter().map(|(&k, x)| (vec![k], x.clone())).collect()),
                _ => continue 'parts,
            }
        }
        add_scaled(&mut out, &s, &sym_product(&factors, deg_out));
    }
    out
}

/// Weight-one part of a symmetric chain.
pub fn project_sym<K: Scalar>(c: &SymChain<K>) -> Chain<usize, K> {
    c.iter().filter(|(w, _)| w.len() == 1).map(|(w, x)| (w[0], x.clone())).collect()
}

/// `(D⊗id + id⊗D)∘Δ - Δ∘D` on one symmetric word; empty iff the law holds.
pub fn coderivation_defect_sym<K: Scalar>(
    t: &TaylorCoefficients<K>,
    deg: &dyn Fn(usize) -> i64,
    w: &[usize],
) -> Chain<(SymWord, SymWord), K> {
    let mut out = delta_sym_chain(&lift_coderivation_sym(t, deg, w), deg);
    for (u, v, s) in delta_sym::<K>(w, deg) {
        let du: i64 = u.iter().map(|&x| deg(x)).sum();
        for (x, c) in lift_coderivation_sym(t, deg, &u) {
            add_term(&mut out, (x, v.clone()), -(s.clone() * c));
        }
        let sv = K::sign(odd(t.degree * du));
        for (y, c) in lift_coderivation_sym(t, deg, &v) {
            add_term(&mut out, (u.clone(), y), -(s.clone() * sv.clone() * c));
        }
    }
    out
}

/// `(F⊗F)∘Δ - Δ∘F` on one symmetric word, for `F` of degree zero.
pub fn morphism_defect_sym<K: Scalar>(
    t: &TaylorCoefficients<K>,
    deg_in: &dyn Fn(usize) -> i64,
    deg_out: &dyn Fn(usize) -> i64,
    w: &[usize],
) -> Chain<(SymWord, SymWord), K> {
    let mut out = delta_sym_chain(&lift_morphism_sym(t, deg_in, deg_out, w), deg_out);
    for (u, v, s) in delta_sym::<K>(w, deg_in) {
        let fu = lift_morphism_sym(t, deg_in, deg_out, &u);
        let fv = lift_morphism_sym(t, deg_in, deg_out, &v);
        for (x, a) in &fu {
            for (y, b) in &fv {
                add_term(&mut out, (x.clone(), y.clone()), -(s.clone() * a.clone() * b.clone()));
            }
        }
    }
    out
}

/// `ℓ(x•y) = (-1)^{deg x}[x, y]` on the letters of `𝔤 ⊕ M`, as a degree-one
/// Taylor family.
pub fn ell<K: Scalar>(g: &AlgebraPresentation<K>, m: Option<&ModulePresentation<K>>) -> TaylorCoefficients<K> {
    let acts = Actions::new(g, m);
    let deg = shifted(&acts);
    let n = acts.dim_a() + acts.dim_m();
    let mut t = TaylorCoefficients::new(1);
    for x in 0..n {
        for y in x..n {
            if x == y && odd(deg(x)) {
                continue;
            }
            let s = K::sign(odd(deg(x)));
            let v: Chain<usize, K> = acts.br(x, y).into_iter().map(|(k, c)| (k, s.clone() * c)).collect();
            if !v.is_empty() {
                t.set(vec![x, y], v);
            }
        }
    }
    t
}

/// The shifted degree function on the letters of `𝔤 ⊕ M`.
pub fn sym_degree<K: Scalar>(g: &AlgebraPresentation<K>, m: Option<&ModulePresentation<K>>) -> impl Fn(usize) -> i64 {
    shifted(&Actions::new(g, m))
}

/// Whether the lifted `ℓ` squares to zero on all words of weight `n`.
pub fn ell_squared_vanishes<K: Scalar>(g: &AlgebraPresentation<K>, n: usize) -> bool {
    let t = ell(g, None);
    let deg = sym_degree(g, None);
    sym_words(g.dim(), n, &deg).iter().all(|w| {
        let mut twice = Chain::new();
        for (u, x) in lift_coderivation_sym(&t, &deg, w) {
            add_scaled(&mut twice, &x, &lift_coderivation_sym(&t, &deg, &u));
        }
        twice.is_empty()
    })
}

// Σ_{i<j} ε ℓ(x_i•x_j)•rest, from the actions directly
fn boundary_word<K: Scalar>(acts: &Actions<K>, deg: &dyn Fn(usize) -> i64, w: &[usize]) -> SymChain<K> {
    let mut out = Chain::new();
    let n = w.len();
    let degrees: Vec<i64> = w.iter().map(|&x| deg(x)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let mut order = vec![i, j];
            order.extend((0..n).filter(|&p| p != i && p != j));
            let s = K::sign(reorder_parity(&degrees, &order) ^ odd(degrees[i]));
            let rest: Vec<usize> = order[2..].iter().map(|&p| w[p]).collect();
            for (k, x) in acts.br(w[i], w[j]) {
                let mut letters = vec![k];
                letters.extend_from_slice(&rest);
                if let Some((word, s2)) = canonical::<K>(&letters, deg) {
                    add_term(&mut out, word, s.clone() * s2 * x);
                }
            }
        }
    }
    out
}

/// `∂_n : C_n(𝔤, M) → C_{n-1}(𝔤, M)`; with no module, `ℓ : S^n → S^{n-1}`.
pub fn chevalley_boundary<K: Scalar>(
    g: &AlgebraPresentation<K>,
    m: Option<&ModulePresentation<K>>,
    n: usize,
) -> Result<SparseMap<K>, ChevalleyError> {
    let src = sym_basis(g, m, n)?;
    let lowest = if m.is_some() { 0 } else { 1 };
    if n <= lowest {
        return Ok(SparseMap::zeros(0, src.len()));
    }
    let dst = sym_basis(g, m, n - 1)?;
    let acts = Actions::new(g, m);
    let deg = shifted(&acts);
    Ok(matrix_of(&src, &dst, |w| boundary_word(&acts, &deg, w))?)
}

/// `dim H_n(𝔤, M)` for `n = 0..=max`.
pub fn chevalley_betti<K: Scalar>(
    g: &AlgebraPresentation<K>,
    m: &ModulePresentation<K>,
    max: usize,
) -> Result<Vec<usize>, ChevalleyError> {
    (0..=max)
        .map(|n| {
            let d_out = chevalley_boundary(g, Some(m), n)?;
            let d_in = chevalley_boundary(g, Some(m), n + 1)?;
            Ok(homology_dim(&d_out, &d_in)?)
        })
        .collect()
}

/// `C^n(𝔤, M) = L(S^n(𝔤[1]), M[1])`.
pub fn chevalley_cochain_space<K: Scalar>(
    g: &AlgebraPresentation<K>,
    m: &ModulePresentation<K>,
    n: usize,
) -> Result<CochainSpace, ChevalleyError> {
    Ok(CochainSpace {
        words: sym_basis(g, None, n)?,
        dim_m: m.dim(),
    })
}

/// `∂^{n+1} : C^n → C^{n+1}`, `∂f = [ℓ, f]`:
/// `Σ_i (-1)^{deg a_i deg f} ε ℓ(a_i•f(…)) - (-1)^{deg f} Σ_{i<j} ε f(ℓ(a_i•a_j)•…)`.
pub fn chevalley_cohomology_coboundary<K: Scalar>(
    g: &AlgebraPresentation<K>,
    m: &ModulePresentation<K>,
    n: usize,
) -> Result<SparseMap<K>, ChevalleyError> {
    let src = chevalley_cochain_space(g, m, n)?;
    let dst = chevalley_cochain_space(g, m, n + 1)?;
    let acts = Actions::new(g, Some(m));
    let deg = shifted(&acts);
    let na = g.dim();
    let word_deg = |w: &[usize]| w.iter().map(|&x| deg(x)).sum::<i64>();
    let mut out = SparseMap::zeros(dst.len(), src.len());
    for (ti, a) in dst.words.iter().enumerate() {
        let degrees: Vec<i64> = a.iter().map(|&x| deg(x)).collect();
        let len = a.len();
        for i in 0..len {
            let mut order = vec![i];
            order.extend((0..len).filter(|&p| p != i));
            let eps = reorder_parity(&degrees, &order);
            let rest: Vec<usize> = order[1..].iter().map(|&p| a[p]).collect();
            let Some(bi) = src.words.index_of(&rest) else { continue };
            for v in 0..src.dim_m {
                let deg_f = deg(na + v) - word_deg(&rest);
                let s = K::sign(eps ^ odd(deg(a[i]) * deg_f) ^ odd(deg(a[i])));
                for (k, x) in acts.br(a[i], na + v) {
                    out.add_entry(dst.index(ti, k - na), src.index(bi, v), s.clone() * x);
                }
            }
        }
        for i in 0..len {
            for j in i + 1..len {
                let mut order = vec![i, j];
                order.extend((0..len).filter(|&p| p != i && p != j));
                let eps = reorder_parity(&degrees, &order) ^ odd(degrees[i]);
                let rest: Vec<usize> = order[2..].iter().map(|&p| a[p]).collect();
                for (k, x) in acts.br(a[i], a[j]) {
                    let mut letters = vec![k];
                    letters.extend_from_slice(&rest);
                    let Some((word, s2)) = canonical::<K>(&letters, &deg) else { continue };
                    let bi = src.words.index_of(&word).expect("g-words of weight n");
                    for v in 0..src.dim_m {
                        let deg_f = deg(na + v) - word_deg(&word);
                        let s = -K::sign(eps ^ odd(deg_f)) * s2.clone();
                        out.add_entry(dst.index(ti, v), src.index(bi, v), s * x.clone());
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Coordinates of the arity-`n` part of a cochain family.
pub fn cochain_vector<K: Scalar>(space: &CochainSpace, c: &TaylorCoefficients<K>, n: usize) -> SparseVec<K> {
    crate::bar::cochain_vector(space, c, n)
}

/// Morphism and cocycle verdicts for `F_1 = ι + c_1`, `F_j = c_j` into
/// `𝔤 ⋉ M`, with `c_j` given on sorted words.
pub fn l_infty_morphism_cocycle_check<K: Scalar>(
    g: &AlgebraPresentation<K>,
    m: &ModulePresentation<K>,
    c: &TaylorCoefficients<K>,
    n_max: usize,
) -> Result<MorphismReport, ChevalleyError> {
    require_lie(g)?;
    if c.degree != 0 {
        return Err(ChevalleyError::InvalidInput("cochain family must have degree 0".into()));
    }
    let h = semidirect(g, m)?;
    let n = g.dim();
    let mut f = TaylorCoefficients::identity(n);
    for (w, out) in &c.components {
        let mut shifted: Chain<usize, K> = out.iter().map(|(&k, x)| (k + n, x.clone())).collect();
        if let Some(base) = f.get(w) {
            add_scaled(&mut shifted, &K::one(), base);
        }
        f.set(w.clone(), shifted);
    }
    let deg_g = sym_degree(g, None);
    let deg_h = sym_degree(&h, None);
    let (lg, lh) = (ell(g, None), ell(&h, None));
    let mut is_morphism = true;
    'outer: for len in 1..=n_max {
        for w in sym_words(n, len, &deg_g) {
            let mut lhs = Chain::new();
            for (u, x) in lift_morphism_sym(&f, &deg_g, &deg_h, &w) {
                add_scaled(&mut lhs, &x, &lift_coderivation_sym(&lh, &deg_h, &u));
            }
            let mut rhs = Chain::new();
            for (u, x) in lift_coderivation_sym(&lg, &deg_g, &w) {
                add_scaled(&mut rhs, &x, &lift_morphism_sym(&f, &deg_g, &deg_h, &u));
            }
            if lhs != rhs {
                is_morphism = false;
                break 'outer;
            }
        }
    }
    let mut cocycle_failures = Vec::new();
    for j in 1..n_max {
        let space = chevalley_cochain_space(g, m, j)?;
        let d = chevalley_cohomology_coboundary(g, m, j)?;
        if !d.apply(&cochain_vector(&space, c, j)).is_empty() {
            cocycle_failures.push(j);
        }
    }
    Ok(MorphismReport {
        is_morphism,
        cocycle_failures,
    })
}

/// `c_1 = 0`, `c_n = ∂b_{n-1}`.
pub fn trivial_cochain<K: Scalar>(
    g: &AlgebraPresentation<K>,
    m: &ModulePresentation<K>,
    b: &TaylorCoefficients<K>,
    n_max: usize,
) -> Result<TaylorCoefficients<K>, ChevalleyError> {
    let mut c = TaylorCoefficients::new(b.degree + 1);
    for n in 2..=n_max {
        let src = chevalley_cochain_space(g, m, n - 1)?;
        let dst = chevalley_cochain_space(g, m, n)?;
        let image = chevalley_cohomology_coboundary(g, m, n - 1)?.apply(&cochain_vector(&src, b, n - 1));
        let mut comps: BTreeMap<usize, Chain<usize, K>> = BTreeMap::new();
        for (i, x) in image {
            let (wi, v) = dst.split(i);
            comps.entry(wi).or_default().insert(v, x);
        }
        for (wi, out) in comps {
            c.set(dst.words.get(wi).clone(), out);
        }
    }
    Ok(c)
}

/// Whether `c_n` is a Chevalley coboundary.
pub fn is_coboundary<K: Scalar>(
    g: &AlgebraPresentation<K>,
    m: &ModulePresentation<K>,
    c: &TaylorCoefficients<K>,
    n: usize,
) -> Result<bool, ChevalleyError> {
    let v = cochain_vector(&chevalley_cochain_space(g, m, n)?, c, n);
    if n == 0 {
        return Ok(v.is_empty());
    }
    Ok(in_column_span(&chevalley_cohomology_coboundary(g, m, n - 1)?, &v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::examples::*;
    use crate::algebras::Table;
    use crate::linalg::{kernel_basis, rank};
    use crate::Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn sym_basis_examples() {
        let ab = abelian::<Q>(&[0, 0]);
        assert_eq!(sym_basis(&ab, None, 2).unwrap().elements(), &[vec![0, 1]]);
        assert_eq!(sym_basis(&sl2::<Q>(), None, 1).unwrap().len(), 3);
        assert_eq!(sym_basis(&sl2::<Q>(), None, 3).unwrap().len(), 1);
        // even letters repeat
        let ev = abelian::<Q>(&[1, 1]);
        assert_eq!(sym_basis(&ev, None, 2).unwrap().len(), 3);
        let m = ModulePresentation::trivial(0);
        assert_eq!(
            sym_basis(&aff1::<Q>(), Some(&m), 1).unwrap().elements(),
            &[vec![0, 2], vec![1, 2]]
        );
        assert!(sym_basis(&dual_numbers::<Q>(), None, 1).is_err());
    }

    #[test]
    fn delta_examples() {
        let even = |_: usize| 0i64;
        let oddd = |_: usize| -1i64;
        assert!(delta_sym::<Q>(&[0], &even).is_empty());
        assert_eq!(
            delta_sym::<Q>(&[0, 1], &even),
            vec![(vec![0], vec![1], q(1)), (vec![1], vec![0], q(1))]
        );
        assert_eq!(
            delta_sym::<Q>(&[0, 1], &oddd),
            vec![(vec![0], vec![1], q(1)), (vec![1], vec![0], q(-1))]
        );
    }

    #[test]
    fn delta_is_cocommutative_and_coassociative() {
        let degs = [-1i64, 0, 1, -1];
        let deg = |x: usize| degs[x];
        for n in 1..=5 {
            for w in sym_words(4, n, &deg) {
                let d = delta_sym_chain(&Chain::from([(w.clone(), q(1))]), &deg);
                let wd = |u: &SymWord| u.iter().map(|&x| deg(x)).sum::<i64>();
                let mut tau = Chain::new();
                for ((u, v), x) in &d {
                    add_term(&mut tau, (v.clone(), u.clone()), Q::sign(odd(wd(u) * wd(v))) * x.clone());
                }
                assert_eq!(tau, d, "{w:?}");
                let (mut left, mut right) = (Chain::new(), Chain::new());
                for ((u, v), x) in &d {
                    for (a, b, s) in delta_sym::<Q>(u, &deg) {
                        add_term(&mut left, (a, b, v.clone()), s * x.clone());
                    }
                    for (a, b, s) in delta_sym::<Q>(v, &deg) {
                        add_term(&mut right, (u.clone(), a, b), s * x.clone());
                    }
                }
                assert_eq!(left, right, "{w:?}");
            }
        }
    }

    #[test]
    fn lift_examples() {
        let deg = |_: usize| -1i64;
        let id = TaylorCoefficients::<Q>::identity(3);
        assert_eq!(lift_coderivation_sym(&id, &deg, &[0, 1, 2]), Chain::from([(vec![0, 1, 2], q(3))]));
        assert_eq!(lift_morphism_sym(&id, &deg, &deg, &[0, 1, 2]), Chain::from([(vec![0, 1, 2], q(1))]));
        let g = sl2::<Q>();
        let l = ell(&g, None);
        // ℓ(e•f) = -[e, f] = -h
        assert_eq!(lift_coderivation_sym(&l, &deg, &[0, 1]), Chain::from([(vec![2], q(-1))]));
        for w in sym_words(3, 2, &deg) {
            assert_eq!(project_sym(&lift_coderivation_sym(&l, &deg, &w)), l.get(&w).cloned().unwrap_or_default());
        }
    }

    #[test]
    fn lifted_maps_satisfy_their_laws() {
        let g = abelian::<Q>(&[0, 1]);
        let deg = sym_degree(&g, None);
        let mut d = TaylorCoefficients::<Q>::new(1);
        d.set(vec![0], Chain::from([(1, q(2))]));
        d.set(vec![0, 1], Chain::from([(1, q(-3))]));
        // letter 0 is odd, letter 1 even; every component has degree zero
        let mut f = TaylorCoefficients::<Q>::identity(2);
        f.set(vec![1, 1], Chain::from([(1, q(5))]));
        f.set(vec![0, 1], Chain::from([(0, q(2))]));
        f.set(vec![0, 1, 1], Chain::from([(0, q(1))]));
        for n in 1..=4 {
            for w in sym_words(2, n, &deg) {
                assert!(coderivation_defect_sym(&d, &deg, &w).is_empty(), "{w:?}");
                assert!(morphism_defect_sym(&f, &deg, &deg, &w).is_empty(), "{w:?}");
            }
        }
    }

    #[test]
    fn ell_squares_to_zero_iff_jacobi() {
        for g in [sl2::<Q>(), aff1(), heisenberg(), abelian(&[0, 1, 2])] {
            for n in 1..=4 {
                assert!(ell_squared_vanishes(&g, n));
            }
        }
        // [e,f] = h, [h,e] = e, [h,f] = f breaks Jacobi
        let mut g = sl2::<Q>();
        let mut t = Table::new();
        t.set(0, 1, 2, q(1));
        t.set(1, 0, 2, q(-1));
        t.set(2, 0, 0, q(1));
        t.set(0, 2, 0, q(-1));
        t.set(2, 1, 1, q(1));
        t.set(1, 2, 1, q(-1));
        g.bracket = t;
        assert!(!crate::algebras::validate(&g).unwrap().is_empty());
        assert!(!ell_squared_vanishes(&g, 3));
    }

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn betti_numbers() {
        let triv = ModulePresentation::trivial(0);
        assert_eq!(chevalley_betti(&sl2::<Q>(), &triv, 3).unwrap(), vec![1, 0, 0, 1]);
        assert_eq!(chevalley_betti(&aff1::<Q>(), &triv, 2).unwrap(), vec![1, 1, 0]);
        for d in 1..=4 {
            let g = abelian::<Q>(&vec![0; d]);
            let expect: Vec<usize> = (0..=d).map(|k| binomial(d, k)).collect();
            assert_eq!(chevalley_betti(&g, &triv, d).unwrap(), expect);
            for n in 1..=d {
                assert!(chevalley_boundary(&g, Some(&triv), n).unwrap().is_zero());
            }
        }
    }

    // classical boundary on M ⊗ Λ^n 𝔤, basis = (sorted subset, v)
    fn classical_betti(g: &AlgebraPresentation<Q>, m: &ModulePresentation<Q>, max: usize) -> Vec<usize> {
        let d = g.dim();
        let subsets = |n: usize| -> Vec<Vec<usize>> {
            (0..1usize << d)
                .filter(|s| s.count_ones() as usize == n)
                .map(|s| (0..d).filter(|i| s >> i & 1 == 1).collect())
                .collect()
        };
        let sort_sign = |v: &mut Vec<usize>| -> Option<Q> {
            let mut s = q(1);
            for i in 0..v.len() {
                for j in 0..v.len() - 1 - i {
                    if v[j] > v[j + 1] {
                        v.swap(j, j + 1);
                        s = -s;
                    } else if v[j] == v[j + 1] {
                        return None;
                    }
                }
            }
            if v.windows(2).any(|p| p[0] == p[1]) {
                return None;
            }
            Some(s)
        };
        let boundary = |n: usize| -> SparseMap<Q> {
            let src = subsets(n);
            let dst = if n == 0 { Vec::new() } else { subsets(n - 1) };
            let nm = m.dim();
            let mut out = SparseMap::zeros(dst.len() * nm, src.len() * nm);
            if n == 0 {
                return out;
            }
            let pos = |s: &Vec<usize>| dst.iter().position(|t| t == s).unwrap();
            for (si, x) in src.iter().enumerate() {
                for v in 0..nm {
                    for i in 0..n {
                        let rest: Vec<usize> = x.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &y)| y).collect();
                        let sgn = if i % 2 == 0 { q(-1) } else { q(1) };
                        for (w, c) in m.bracket_action.get(x[i], v) {
                            out.add_entry(pos(&rest) * nm + w, si * nm + v, sgn.clone() * c);
                        }
                    }
                    for i in 0..n {
                        for j in i + 1..n {
                            let sgn = if (i + j) % 2 == 0 { q(1) } else { q(-1) };
                            for (k, c) in g.br(x[i], x[j]) {
                                let mut word = vec![k];
                                word.extend(x.iter().enumerate().filter(|&(p, _)| p != i && p != j).map(|(_, &y)| y));
                                if let Some(s) = sort_sign(&mut word) {
                                    out.add_entry(pos(&word) * nm + v, si * nm + v, sgn.clone() * s * c);
                                }
                            }
                        }
                    }
                }
            }
            out
        };
        (0..=max)
            .map(|n| homology_dim(&boundary(n), &boundary(n + 1)).unwrap())
            .collect()
    }

    #[test]
    fn homology_matches_classical_oracle() {
        for g in [sl2::<Q>(), aff1(), heisenberg(), abelian(&[0, 0])] {
            for m in [ModulePresentation::trivial(0), ModulePresentation::regular(&g)] {
                let d = g.dim();
                assert_eq!(chevalley_betti(&g, &m, d).unwrap(), classical_betti(&g, &m, d), "{:?}", g.basis);
            }
        }
    }

    #[test]
    fn module_complex_is_restriction_of_semidirect_ell() {
        for g in [sl2::<Q>(), aff1(), abelian(&[0, 1])] {
            let adj = ModulePresentation::regular(&g);
            let h = semidirect(&g, &adj).unwrap();
            let l = ell(&h, None);
            let deg = sym_degree(&h, None);
            for n in 1..=3 {
                let src = sym_basis(&g, Some(&adj), n).unwrap();
                let dst = sym_basis(&g, Some(&adj), n - 1).unwrap();
                let restricted = matrix_of(&src, &dst, |w| lift_coderivation_sym(&l, &deg, w)).unwrap();
                assert_eq!(chevalley_boundary(&g, Some(&adj), n).unwrap(), restricted);
            }
        }
    }

    #[test]
    fn cohomology_examples() {
        let triv = ModulePresentation::trivial(0);
        let g = sl2::<Q>();
        let d1 = chevalley_cohomology_coboundary(&g, &triv, 0).unwrap();
        let d2 = chevalley_cohomology_coboundary(&g, &triv, 1).unwrap();
        assert_eq!(d2.cols() - rank(&d2) - rank(&d1), 0);
        let ab = abelian::<Q>(&[0, 0, 0]);
        for n in 0..=3 {
            assert!(chevalley_cohomology_coboundary(&ab, &triv, n).unwrap().is_zero());
        }
        let a = aff1::<Q>();
        for m in [triv, ModulePresentation::regular(&a)] {
            for n in 0..=2 {
                let d = chevalley_cohomology_coboundary(&a, &m, n).unwrap();
                let next = chevalley_cohomology_coboundary(&a, &m, n + 1).unwrap();
                assert!(next.compose(&d).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn graded_coboundary_squares_to_zero() {
        let g = abelian::<Q>(&[0, 1]);
        let mut g = g;
        // [a0, a1] = a1 with |a1| = 1
        g.bracket.set(0, 1, 1, q(1));
        g.bracket.set(1, 0, 1, q(-1));
        assert!(crate::algebras::validate(&g).unwrap().is_empty());
        let mut m = ModulePresentation::trivial(0);
        m.basis = crate::graded::GradedBasis::new(vec![("u".into(), 0), ("w".into(), 1)]).unwrap();
        m.bracket_action = g.bracket.clone();
        assert!(crate::algebras::validate_module(&g, &m).unwrap().is_empty());
        for n in 0..=3 {
            let d = chevalley_cohomology_coboundary(&g, &m, n).unwrap();
            let next = chevalley_cohomology_coboundary(&g, &m, n + 1).unwrap();
            assert!(next.compose(&d).unwrap().is_zero(), "n = {n}");
            let d_out = chevalley_boundary(&g, Some(&m), n).unwrap();
            let d_in = chevalley_boundary(&g, Some(&m), n + 1).unwrap();
            assert!(d_out.compose(&d_in).unwrap().is_zero(), "n = {n}");
        }
    }

    #[test]
    fn morphisms_match_cocycles() {
        let g = aff1::<Q>();
        let adj = ModulePresentation::regular(&g);
        let zero = TaylorCoefficients::new(0);
        let rep = l_infty_morphism_cocycle_check(&g, &adj, &zero, 3).unwrap();
        assert!(rep.is_morphism && rep.agree());
        // the 1-cocycles of aff(1) on the adjoint module
        let d = chevalley_cohomology_coboundary(&g, &adj, 1).unwrap();
        let space = chevalley_cochain_space(&g, &adj, 1).unwrap();
        let ker = kernel_basis(&d);
        assert_eq!(ker.len(), 2);
        for z in &ker {
            let mut c = TaylorCoefficients::new(0);
            for (i, x) in z {
                let (w, v) = space.split(*i);
                let mut comp = c.get(space.words.get(w)).cloned().unwrap_or_default();
                comp.insert(v, x.clone());
                c.set(space.words.get(w).clone(), comp);
            }
            let rep = l_infty_morphism_cocycle_check(&g, &adj, &c, 3).unwrap();
            assert!(rep.is_morphism && rep.agree());
        }
        // e ↦ e alone is not a derivation
        let mut c = TaylorCoefficients::new(0);
        c.set(vec![0], Chain::from([(0, q(1))]));
        let rep = l_infty_morphism_cocycle_check(&g, &adj, &c, 3).unwrap();
        assert!(!rep.is_morphism && rep.agree());
    }

    #[test]
    fn coboundary_families_are_trivial() {
        // b_1 : 𝔤[1] → M[1] of degree -1 needs |v| = -1
        let g = sl2::<Q>();
        let m = ModulePresentation::trivial(-1);
        let mut b = TaylorCoefficients::new(-1);
        b.set(vec![2], Chain::from([(0, q(2))]));
        let c = trivial_cochain(&g, &m, &b, 3).unwrap();
        assert!(!c.components.is_empty());
        let rep = l_infty_morphism_cocycle_check(&g, &m, &c, 3).unwrap();
        assert!(rep.is_morphism && rep.agree());
        assert!(is_coboundary(&g, &m, &c, 2).unwrap());
    }

    // (df)(x_1..x_{n+1}) = Σ (-1)^{i+1} x_i f(..x̂_i..) + Σ_{i<j} (-1)^{i+j} f([x_i,x_j], ..)
    fn classical_coboundary(g: &AlgebraPresentation<Q>, m: &ModulePresentation<Q>, n: usize) -> SparseMap<Q> {
        let src = chevalley_cochain_space(g, m, n).unwrap();
        let dst = chevalley_cochain_space(g, m, n + 1).unwrap();
        let mut out = SparseMap::zeros(dst.len(), src.len());
        let sgn = |e: usize| if e.is_multiple_of(2) { q(1) } else { q(-1) };
        for (ti, x) in dst.words.iter().enumerate() {
            for i in 0..=n {
                let rest: Vec<usize> = x.iter().enumerate().filter(|&(p, _)| p != i).map(|(_, &y)| y).collect();
                let bi = src.words.index_of(&rest).unwrap();
                for v in 0..m.dim() {
                    for (w, c) in m.bracket_action.get(x[i], v) {
                        out.add_entry(dst.index(ti, w), src.index(bi, v), sgn(i) * c);
                    }
                }
            }
            for i in 0..=n {
                for j in i + 1..=n {
                    for (k, c) in g.br(x[i], x[j]) {
                        let mut word = vec![k];
                        word.extend(x.iter().enumerate().filter(|&(p, _)| p != i && p != j).map(|(_, &y)| y));
                        let Some((sorted, s)) = canonical::<Q>(&word, &|_| -1) else { continue };
                        let bi = src.words.index_of(&sorted).unwrap();
                        for v in 0..m.dim() {
                            out.add_entry(dst.index(ti, v), src.index(bi, v), sgn(i + j) * s.clone() * c.clone());
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn ungraded_coboundary_is_classical_up_to_sign() {
        for g in [sl2::<Q>(), aff1(), heisenberg()] {
            let m = ModulePresentation::regular(&g);
            for n in 0..=2 {
                let ours = chevalley_cohomology_coboundary(&g, &m, n).unwrap();
                let theirs = classical_coboundary(&g, &m, n);
                let sign = if n % 2 == 0 { q(1) } else { q(-1) };
                assert_eq!(ours.scale(&sign), theirs, "n = {n}");
            }
        }
    }
}
