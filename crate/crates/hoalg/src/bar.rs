//! The tensor coalgebra on `A[1]`: deconcatenation, lifts of Taylor
//! coefficients, the bar complex and Hochschild (co)homology.
//!
//! Boundaries are `∂ = -m` where `m` is the coderivation lifted from
//! `m(a⊗b) = (-1)^{deg a} ab`. On ungraded algebras this is the classical
//! alternating-product differential.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebras::{AlgebraError, AlgebraPresentation, ModulePresentation};
use crate::chain::{add_scaled, add_term, matrix_of, Basis, Chain, ChainError};
use crate::linalg::{SparseMap, SparseVec};
use crate::scalar::odd;
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BarError {
    #[error("algebra has no unit")]
    NoUnit,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

pub type Word = Vec<usize>;
pub type WordChain<K> = Chain<Word, K>;

/// Taylor coefficients of a coderivation or coalgebra morphism: each input
/// word maps to a combination of single letters.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorCoefficients<K> {
    pub degree: i64,
    pub components: BTreeMap<Word, Chain<usize, K>>,
}

impl<K: Scalar> TaylorCoefficients<K> {
    pub fn new(degree: i64) -> Self {
        TaylorCoefficients {
            degree,
            components: BTreeMap::new(),
        }
    }

    /// The identity on the first `dim` letters, as an arity-one coefficient.
    pub fn identity(dim: usize) -> Self {
        let mut t = Self::new(0);
        for i in 0..dim {
            t.set(vec![i], Chain::from([(i, K::one())]));
        }
        t
    }

    pub fn set(&mut self, input: Word, value: Chain<usize, K>) {
        if value.is_empty() {
            self.components.remove(&input);
        } else {
            self.components.insert(input, value);
        }
    }

    pub fn get(&self, input: &[usize]) -> Option<&Chain<usize, K>> {
        self.components.get(input)
    }

    pub fn max_arity(&self) -> usize {
        self.components.keys().map(|w| w.len()).max().unwrap_or(0)
    }
}

/// `Δ(a_1⊗…⊗a_n) = Σ_{j=1}^{n-1} (a_1…a_j)⊗(a_{j+1}…a_n)`.
pub fn deconcat<K: Scalar>(w: &[usize]) -> Vec<(Word, Word, K)> {
    (1..w.len())
        .map(|j| (w[..j].to_vec(), w[j..].to_vec(), K::one()))
        .collect()
}

/// Deconcatenation extended linearly.
pub fn deconcat_chain<K: Scalar>(c: &WordChain<K>) -> Chain<(Word, Word), K> {
    let mut out = Chain::new();
    for (w, x) in c {
        for (u, v, s) in deconcat::<K>(w) {
            add_term(&mut out, (u, v), s * x.clone());
        }
    }
    out
}

/// Lifts Taylor coefficients `D_r` of degree `t.degree` to the coderivation
/// `D(w) = Σ ± w_{<j} ⊗ D_r(w_j…w_{j+r-1}) ⊗ w_{≥j+r}`; `deg` gives the
/// shifted degree of a letter.
pub fn lift_coderivation<K: Scalar>(
    t: &TaylorCoefficients<K>,
    deg: &dyn Fn(usize) -> i64,
    w: &[usize],
) -> WordChain<K> {
    let mut out = Chain::new();
    let mut prefix_deg = 0i64;
    for start in 0..w.len() {
        let s = K::sign(odd(t.degree * prefix_deg));
        for end in start + 1..=w.len() {
            if let Some(d) = t.get(&w[start..end]) {
                for (&k, x) in d {
                    let mut word = w[..start].to_vec();
                    word.push(k);
                    word.extend_from_slice(&w[end..]);
                    add_term(&mut out, word, s.clone() * x.clone());
                }
            }
        }
        prefix_deg += deg(w[start]);
    }
    out
}

/// Lifts degree-zero Taylor coefficients `F_r` to the coalgebra morphism
/// `F(w) = Σ_{r_1+…+r_k=n} F_{r_1}(…)⊗…⊗F_{r_k}(…)`.
pub fn lift_morphism<K: Scalar>(t: &TaylorCoefficients<K>, w: &[usize]) -> WordChain<K> {
    let n = w.len();
    // tails[i] = F applied to w[i..], with tails[n] the empty word
    let mut tails: Vec<WordChain<K>> = vec![Chain::new(); n + 1];
    tails[n] = Chain::from([(Vec::new(), K::one())]);
    for i in (0..n).rev() {
        let mut acc = Chain::new();
        for j in i + 1..=n {
            let Some(head) = t.get(&w[i..j]) else { continue };
            for (&k, x) in head {
                for (tail, y) in &tails[j] {
                    let mut word = vec![k];
                    word.extend_from_slice(tail);
                    add_term(&mut acc, word, x.clone() * y.clone());
                }
            }
        }
        tails[i] = acc;
    }
    if n == 0 {
        return Chain::new();
    }
    std::mem::take(&mut tails[0])
}

/// Weight-one part of a chain, as Taylor-coefficient output.
pub fn project<K: Scalar>(c: &WordChain<K>) -> Chain<usize, K> {
    c.iter()
        .filter(|(w, _)| w.len() == 1)
        .map(|(w, x)| (w[0], x.clone()))
        .collect()
}

/// `(D⊗id + id⊗D)∘Δ - Δ∘D` on one word; empty iff the law holds there.
pub fn coderivation_defect<K: Scalar>(
    t: &TaylorCoefficients<K>,
    deg: &dyn Fn(usize) -> i64,
    w: &[usize],
) -> Chain<(Word, Word), K> {
    let mut out = deconcat_chain(&lift_coderivation(t, deg, w));
    for (u, v, _) in deconcat::<K>(w) {
        let du = u.iter().map(|&i| deg(i)).sum::<i64>();
        for (x, c) in lift_coderivation(t, deg, &u) {
            add_term(&mut out, (x, v.clone()), -c);
        }
        let s = K::sign(odd(t.degree * du));
        for (y, c) in lift_coderivation(t, deg, &v) {
            add_term(&mut out, (u.clone(), y), -(s.clone() * c));
        }
    }
    out
}

/// `(F⊗F)∘Δ - Δ∘F` on one word.
pub fn morphism_defect<K: Scalar>(t: &TaylorCoefficients<K>, w: &[usize]) -> Chain<(Word, Word), K> {
    let mut out = deconcat_chain(&lift_morphism(t, w));
    for (u, v, _) in deconcat::<K>(w) {
        let fu = lift_morphism(t, &u);
        let fv = lift_morphism(t, &v);
        for (x, a) in &fu {
            for (y, b) in &fv {
                add_term(&mut out, (x.clone(), y.clone()), -(a.clone() * b.clone()));
            }
        }
    }
    out
}

/// All words of the given length over `dim` letters, lexicographic.
pub fn tensor_words(dim: usize, len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..dim).map(move |i| {
                    let mut v = w.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    out
}

/// Words of length `len` over letters `0..dim_a` (algebra) and
/// `dim_a..dim_a+dim_m` (module) with exactly one module letter, enumerated
/// module-position-major.
pub fn mixed_words(dim_a: usize, dim_m: usize, len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for pos in 0..len {
        for w in tensor_words(dim_a, len - 1) {
            for v in 0..dim_m {
                let mut word = w[..pos].to_vec();
                word.push(dim_a + v);
                word.extend_from_slice(&w[pos..]);
                out.push(word);
            }
        }
    }
    // lexicographic within each module position
    let mut keyed: Vec<(usize, Word)> = out
        .into_iter()
        .map(|w| (w.iter().position(|&x| x >= dim_a).unwrap_or(0), w))
        .collect();
    keyed.sort();
    keyed.into_iter().map(|(_, w)| w).collect()
}

/// Product and actions on the letters of `A ⊕ M`, read straight from the
/// presentations rather than from a semidirect table.
#[derive(Debug, Clone, Copy)]
pub struct Actions<'a, K> {
    pub a: &'a AlgebraPresentation<K>,
    pub m: Option<&'a ModulePresentation<K>>,
}

impl<'a, K: Scalar> Actions<'a, K> {
    pub fn new(a: &'a AlgebraPresentation<K>, m: Option<&'a ModulePresentation<K>>) -> Self {
        Actions { a, m }
    }

    pub fn dim_a(&self) -> usize {
        self.a.dim()
    }

    pub fn dim_m(&self) -> usize {
        self.m.map_or(0, |m| m.dim())
    }

    /// `|x|` for a letter of `A ⊕ M`.
    pub fn degree(&self, x: usize) -> i64 {
        let n = self.a.dim();
        if x < n {
            self.a.degree(x)
        } else {
            self.m.expect("module letter without a module").basis.degree(x - n)
        }
    }

    fn offset(c: Chain<usize, K>, by: usize) -> Chain<usize, K> {
        c.into_iter().map(|(k, x)| (k + by, x)).collect()
    }

    /// `xy`, with `M·M = 0`.
    pub fn mul(&self, x: usize, y: usize) -> Chain<usize, K> {
        let n = self.a.dim();
        match (x < n, y < n) {
            (true, true) => self.a.mul(x, y),
            (true, false) => Self::offset(self.m.expect("module").left.get(x, y - n), n),
            (false, true) => Self::offset(self.m.expect("module").right.get(x - n, y), n),
            (false, false) => Chain::new(),
        }
    }

    /// Bracket on `A ⊕ M` with `[a, v] = a•v`, `[u, b] = -(-1)^{d(b)d(u)} b•u`,
    /// where `d` is `|·|` for Lie kinds and `deg` for Gerstenhaber.
    pub fn br(&self, x: usize, y: usize) -> Chain<usize, K> {
        let n = self.a.dim();
        let d_shift = if self.a.kind == crate::algebras::Kind::Gerstenhaber { 1 } else { 0 };
        match (x < n, y < n) {
            (true, true) => self.a.br(x, y),
            (true, false) => Self::offset(self.m.expect("module").bracket_action.get(x, y - n), n),
            (false, true) => {
                let c = self.m.expect("module").bracket_action.get(y, x - n);
                let s = K::sign(odd((self.degree(y) - d_shift) * (self.degree(x) - d_shift)));
                Self::offset(c, n).into_iter().map(|(k, v)| (k, -(s.clone() * v))).collect()
            }
            (false, false) => Chain::new(),
        }
    }

    /// `m(x⊗y) = (-1)^{deg x} xy` on `(A⊕M)[1]`.
    pub fn m2(&self, x: usize, y: usize) -> Chain<usize, K> {
        let s = K::sign(odd(self.degree(x) - 1));
        self.mul(x, y).into_iter().map(|(k, v)| (k, s.clone() * v)).collect()
    }
}

/// `D_2 = m` for an algebra with a product, degree 1.
pub fn product_coderivation<K: Scalar>(a: &AlgebraPresentation<K>) -> TaylorCoefficients<K> {
    let acts = Actions::new(a, None);
    let mut t = TaylorCoefficients::new(1);
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            t.set(vec![i, j], acts.m2(i, j));
        }
    }
    t
}

/// Shifted degree function of an algebra's letters.
pub fn shifted_degree<K: Scalar>(a: &AlgebraPresentation<K>) -> impl Fn(usize) -> i64 + '_ {
    move |i| a.degree(i) - 1
}

/// The lifted `m` of `A` on one word.
pub fn m_lift<K: Scalar>(a: &AlgebraPresentation<K>, w: &[usize]) -> WordChain<K> {
    lift_coderivation(&product_coderivation(a), &shifted_degree(a), w)
}

/// Whether `m∘m` vanishes on all words of length `len`.
pub fn m_squared_vanishes<K: Scalar>(a: &AlgebraPresentation<K>, len: usize) -> bool {
    let t = product_coderivation(a);
    let deg = shifted_degree(a);
    tensor_words(a.dim(), len).iter().all(|w| {
        let once = lift_coderivation(&t, &deg, w);
        let mut twice = Chain::new();
        for (u, x) in &once {
            add_scaled(&mut twice, x, &lift_coderivation(&t, &deg, u));
        }
        twice.is_empty()
    })
}

// ∂ = -m on one word over A ⊕ M, computed from the actions directly
fn boundary_word<K: Scalar>(acts: &Actions<K>, w: &[usize]) -> WordChain<K> {
    let mut out = Chain::new();
    let mut prefix = 0i64;
    for j in 0..w.len().saturating_sub(1) {
        prefix += acts.degree(w[j]) - 1;
        let s = -K::sign(odd(prefix));
        for (k, x) in acts.mul(w[j], w[j + 1]) {
            let mut word = w[..j].to_vec();
            word.push(k);
            word.extend_from_slice(&w[j + 2..]);
            add_term(&mut out, word, s.clone() * x);
        }
    }
    out
}

/// `∂_n : ⊗^{n+1}A → ⊗^n A`.
pub fn bar_boundary<K: Scalar>(a: &AlgebraPresentation<K>, n: usize) -> Result<SparseMap<K>, BarError> {
    let src = Basis::new(tensor_words(a.dim(), n + 1));
    if n == 0 {
        return Ok(SparseMap::zeros(0, src.len()));
    }
    let dst = Basis::new(tensor_words(a.dim(), n));
    let acts = Actions::new(a, None);
    Ok(matrix_of(&src, &dst, |w| boundary_word(&acts, w))?)
}

/// `h_n : ⊗^n A → ⊗^{n+1} A`, `h(w) = 1⊗w`.
pub fn bar_homotopy<K: Scalar>(a: &AlgebraPresentation<K>, n: usize) -> Result<SparseMap<K>, BarError> {
    let unit = a.unit.ok_or(BarError::NoUnit)?;
    let src = Basis::new(tensor_words(a.dim(), n));
    let dst = Basis::new(tensor_words(a.dim(), n + 1));
    Ok(matrix_of(&src, &dst, |w| {
        let mut word = vec![unit];
        word.extend_from_slice(w);
        Chain::from([(word, K::one())])
    })?)
}

/// Basis of `C_n(A, M)`: words of length `n+1` with one module letter.
pub fn hochschild_chain_basis<K: Scalar>(a: &AlgebraPresentation<K>, m: &ModulePresentation<K>, n: usize) -> Basis<Word> {
    Basis::new(mixed_words(a.dim(), m.dim(), n + 1))
}

/// `∂_n : C_n(A,M) → C_{n-1}(A,M)`.
pub fn hochschild_boundary<K: Scalar>(
    a: &AlgebraPresentation<K>,
    m: &ModulePresentation<K>,
    n: usize,
) -> Result<SparseMap<K>, BarError> {
    let src = hochschild_chain_basis(a, m, n);
    if n == 0 {
        return Ok(SparseMap::zeros(0, src.len()));
    }
    let dst = hochschild_chain_basis(a, m, n - 1);
    let acts = Actions::new(a, Some(m));
    Ok(matrix_of(&src, &dst, |w| boundary_word(&acts, w))?)
}

/// Basis of a cochain space `Hom(V_n, M)`: pairs (source basis index,
/// module index), flattened source-major.
#[derive(Debug, Clone)]
pub struct CochainSpace {
    pub words: Basis<Word>,
    pub dim_m: usize,
}

impl CochainSpace {
    pub fn len(&self) -> usize {
        self.words.len() * self.dim_m
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, word: usize, v: usize) -> usize {
        word * self.dim_m + v
    }

    pub fn split(&self, i: usize) -> (usize, usize) {
        (i / self.dim_m, i % self.dim_m)
    }
}

/// Coboundary `C^n → C^{n+1}` of tensor-word cochains with values in `M`,
/// `∂f = [m, f]` read on weight `n+1`:
///
/// `(-1)^{deg f·deg a_0} m(a_0⊗f(a_1…a_n)) + m(f(a_0…a_{n-1})⊗a_n)
///  - (-1)^{deg f} Σ_j (-1)^{deg a_0+…+deg a_{j-1}} f(…m(a_j⊗a_{j+1})…)`.
///
/// `reduce` expresses an arbitrary source word in the source basis, which
/// lets quotient spaces reuse this routine.
pub(crate) fn tensor_coboundary<K: Scalar>(
    acts: &Actions<K>,
    src: &CochainSpace,
    dst: &CochainSpace,
    reduce: &dyn Fn(&[usize]) -> Chain<usize, K>,
) -> SparseMap<K> {
    let n_a = acts.dim_a();
    let deg = |x: usize| acts.degree(x) - 1;
    let word_deg = |w: &[usize]| w.iter().map(|&x| deg(x)).sum::<i64>();
    let mut out = SparseMap::zeros(dst.len(), src.len());
    for (ti, a) in dst.words.iter().enumerate() {
        let n1 = a.len();
        // first and last terms
        for (side, rest) in [(0usize, &a[1..]), (1usize, &a[..n1 - 1])] {
            for (bi, c) in reduce(rest) {
                let wd = word_deg(src.words.get(bi));
                for v in 0..src.dim_m {
                    let deg_f = deg(n_a + v) - wd;
                    let (s, prod) = if side == 0 {
                        (K::sign(odd(deg_f * deg(a[0]))), acts.m2(a[0], n_a + v))
                    } else {
                        (K::one(), acts.m2(n_a + v, a[n1 - 1]))
                    };
                    for (k, x) in prod {
                        let row = dst.index(ti, k - n_a);
                        out.add_entry(row, src.index(bi, v), s.clone() * c.clone() * x);
                    }
                }
            }
        }
        // middle terms
        let mut prefix = 0i64;
        for j in 0..n1 - 1 {
            for (k, x) in acts.m2(a[j], a[j + 1]) {
                let mut word = a[..j].to_vec();
                word.push(k);
                word.extend_from_slice(&a[j + 2..]);
                for (bi, c) in reduce(&word) {
                    let wd = word_deg(src.words.get(bi));
                    for v in 0..src.dim_m {
                        let deg_f = deg(n_a + v) - wd;
                        let s = -K::sign(odd(deg_f + prefix));
                        out.add_entry(dst.index(ti, v), src.index(bi, v), s * c.clone() * x.clone());
                    }
                }
            }
            prefix += deg(a[j]);
        }
    }
    out
}

/// Cochain space `C^n(A, M) = Hom(⊗^n A[1], M[1])`.
pub fn hochschild_cochain_space<K: Scalar>(a: &AlgebraPresentation<K>, m: &ModulePresentation<K>, n: usize) -> CochainSpace {
    CochainSpace {
        words: Basis::new(tensor_words(a.dim(), n)),
        dim_m: m.dim(),
    }
}

/// `∂^{n+1} : C^n(A,M) → C^{n+1}(A,M)`.
pub fn hochschild_cohomology_coboundary<K: Scalar>(
    a: &AlgebraPresentation<K>,
    m: &ModulePresentation<K>,
    n: usize,
) -> Result<SparseMap<K>, BarError> {
    let src = hochschild_cochain_space(a, m, n);
    let dst = hochschild_cochain_space(a, m, n + 1);
    let acts = Actions::new(a, Some(m));
    let words = src.words.clone();
    let reduce = move |w: &[usize]| -> Chain<usize, K> {
        words.index_of(&w.to_vec()).map(|i| Chain::from([(i, K::one())])).unwrap_or_default()
    };
    Ok(tensor_coboundary(&acts, &src, &dst, &reduce))
}

/// A cochain family `c_j : ⊗^j A[1] → M[1]` (module letters indexed from 0)
/// packed as a coordinate vector on `C^j`.
pub fn cochain_vector<K: Scalar>(space: &CochainSpace, c: &TaylorCoefficients<K>, arity: usize) -> SparseVec<K> {
    let mut v = SparseVec::new();
    for (w, out) in &c.components {
        if w.len() != arity {
            continue;
        }
        if let Some(wi) = space.words.index_of(w) {
            for (&k, x) in out {
                v.insert(space.index(wi, k), x.clone());
            }
        }
    }
    v
}

/// Verdicts of the morphism and cocycle characterisations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismReport {
    pub is_morphism: bool,
    /// Arities `j` with `∂c_j ≠ 0`.
    pub cocycle_failures: Vec<usize>,
}

impl MorphismReport {
    pub fn agree(&self) -> bool {
        self.is_morphism == self.cocycle_failures.is_empty()
    }
}

/// Builds `F_1 = ι + c_1`, `F_j = c_j` into `A ⋉ M` and compares
/// `m_B∘F = F∘m_A` on words of length `≤ n_max` with `∂c_j = 0`, `j < n_max`.
pub fn morphism_cocycle_check<K: Scalar>(
    a: &AlgebraPresentation<K>,
    m: &ModulePresentation<K>,
    c: &TaylorCoefficients<K>,
    n_max: usize,
) -> Result<MorphismReport, BarError> {
    if c.degree != 0 {
        return Err(BarError::InvalidInput("cochain family must have degree 0".into()));
    }
    let b = crate::algebras::semidirect(a, m)?;
    let n = a.dim();
    let mut f = TaylorCoefficients::identity(n);
    for (w, out) in &c.components {
        let mut shifted: Chain<usize, K> = out.iter().map(|(&k, x)| (k + n, x.clone())).collect();
        if let Some(base) = f.get(w) {
            add_scaled(&mut shifted, &K::one(), base);
        }
        f.set(w.clone(), shifted);
    }
    let mut is_morphism = true;
    'outer: for len in 1..=n_max {
        for w in tensor_words(n, len) {
            let lhs: WordChain<K> = {
                let mut acc = Chain::new();
                for (u, x) in lift_morphism(&f, &w) {
                    add_scaled(&mut acc, &x, &m_lift(&b, &u));
                }
                acc
            };
            let mut rhs = Chain::new();
            for (u, x) in m_lift(a, &w) {
                add_scaled(&mut rhs, &x, &lift_morphism(&f, &u));
            }
            if lhs != rhs {
                is_morphism = false;
                break 'outer;
            }
        }
    }
    let mut cocycle_failures = Vec::new();
    for j in 1..n_max {
        let space = hochschild_cochain_space(a, m, j);
        let d = hochschild_cohomology_coboundary(a, m, j)?;
        if !d.apply(&cochain_vector(&space, c, j)).is_empty() {
            cocycle_failures.push(j);
        }
    }
    Ok(MorphismReport {
        is_morphism,
        cocycle_failures,
    })
}

/// The trivial family built from `b` (degree -1): `c_1 = 0`,
/// `c_n = ∂b_{n-1}` for `2 ≤ n ≤ n_max`.
pub fn trivial_cochain<K: Scalar>(
    a: &AlgebraPresentation<K>,
    m: &ModulePresentation<K>,
    b: &TaylorCoefficients<K>,
    n_max: usize,
) -> Result<TaylorCoefficients<K>, BarError> {
    let mut c = TaylorCoefficients::new(b.degree + 1);
    for n in 2..=n_max {
        let src = hochschild_cochain_space(a, m, n - 1);
        let dst = hochschild_cochain_space(a, m, n);
        let d = hochschild_cohomology_coboundary(a, m, n - 1)?;
        let image = d.apply(&cochain_vector(&src, b, n - 1));
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

/// Whether `c_n` lies in the image of `∂ : C^{n-1} → C^n`.
pub fn is_coboundary<K: Scalar>(
    a: &AlgebraPresentation<K>,
    m: &ModulePresentation<K>,
    c: &TaylorCoefficients<K>,
    n: usize,
) -> Result<bool, BarError> {
    let space = hochschild_cochain_space(a, m, n);
    let v = cochain_vector(&space, c, n);
    if n == 0 {
        return Ok(v.is_empty());
    }
    let d = hochschild_cohomology_coboundary(a, m, n - 1)?;
    Ok(in_column_span(&d, &v))
}

/// Whether `v` lies in the column space of `d`.
pub fn in_column_span<K: Scalar>(d: &SparseMap<K>, v: &SparseVec<K>) -> bool {
    let s = crate::linalg::Subspace::spanned_by(d.rows(), d.col_vectors());
    s.contains(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::examples::*;
    use crate::linalg::{homology_dim, rank};
    use crate::Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn deconcat_examples() {
        assert!(deconcat::<Q>(&[0]).is_empty());
        assert_eq!(deconcat::<Q>(&[0, 1]), vec![(vec![0], vec![1], q(1))]);
        assert_eq!(
            deconcat::<Q>(&[0, 1, 2]),
            vec![(vec![0], vec![1, 2], q(1)), (vec![0, 1], vec![2], q(1))]
        );
    }

    #[test]
    fn lift_coderivation_examples() {
        let deg = |_: usize| -1i64;
        let id = TaylorCoefficients::<Q>::identity(3);
        assert_eq!(lift_coderivation(&id, &deg, &[0, 1, 2]), Chain::from([(vec![0, 1, 2], q(3))]));

        // dual numbers: x·x = 0, 1 is the unit; m(a⊗b) = -(ab) for ungraded letters
        let a = dual_numbers::<Q>();
        assert_eq!(m_lift(&a, &[1, 0]), Chain::from([(vec![1], q(-1))]));
        // m(a,b,c) = (ab,c) - (a,bc) for ungraded letters
        assert_eq!(
            m_lift(&a, &[0, 1, 0]),
            Chain::from([(vec![1, 0], q(-1)), (vec![0, 1], q(1))])
        );
    }

    #[test]
    fn lift_morphism_examples() {
        let id = TaylorCoefficients::<Q>::identity(2);
        assert_eq!(lift_morphism(&id, &[1, 0, 1]), Chain::from([(vec![1, 0, 1], q(1))]));
        let mut f = TaylorCoefficients::<Q>::identity(2);
        f.set(vec![0, 1], Chain::from([(1, q(5))]));
        assert_eq!(
            lift_morphism(&f, &[0, 1]),
            Chain::from([(vec![0, 1], q(1)), (vec![1], q(5))])
        );
        // compositions 1+1+1, 1+2, 2+1 of a length-3 word
        f.set(vec![1, 0], Chain::from([(0, q(7))]));
        let out = lift_morphism(&f, &[0, 1, 0]);
        assert_eq!(
            out,
            Chain::from([(vec![0, 1, 0], q(1)), (vec![1, 0], q(5)), (vec![0, 0], q(7))])
        );
    }

    #[test]
    fn bar_complex_is_acyclic() {
        for a in [dual_numbers::<Q>(), group_algebra_z2(), upper_triangular()] {
            for n in 1..=4 {
                let d_out = bar_boundary(&a, n).unwrap();
                let d_in = bar_boundary(&a, n + 1).unwrap();
                assert_eq!(homology_dim(&d_out, &d_in).unwrap(), 0);
            }
        }
    }

    #[test]
    fn bar_homotopy_identity() {
        let a = dual_numbers::<Q>();
        for n in 0..=3 {
            let lhs = if n == 0 {
                SparseMap::zeros(2, 2)
            } else {
                bar_homotopy(&a, n).unwrap().compose(&bar_boundary(&a, n).unwrap()).unwrap()
            };
            let rhs = bar_boundary(&a, n + 1).unwrap().compose(&bar_homotopy(&a, n + 1).unwrap()).unwrap();
            let id = SparseMap::identity(lhs.rows());
            assert_eq!(lhs.add(&rhs).unwrap(), id);
        }
        let h = bar_homotopy(&a, 1).unwrap();
        assert_eq!(h.get(0, 0), q(1));
        assert!(matches!(bar_homotopy(&aff1::<Q>(), 1), Err(BarError::NoUnit)));
    }

    #[test]
    fn hochschild_boundary_examples() {
        let r = ground_field::<Q>();
        let mut triv = ModulePresentation::trivial(0);
        triv.left.set(0, 0, 0, q(1));
        triv.right.set(0, 0, 0, q(1));
        // the module letter may sit on either side: ∂(1⊗v) = ∂(v⊗1) = v
        let d = hochschild_boundary(&r, &triv, 1).unwrap();
        assert_eq!(d.to_dense(), vec![vec![q(1), q(1)]]);

        let a = dual_numbers::<Q>();
        let m = ModulePresentation::regular(&a);
        // ∂(x ⊗ x') = x·x' = 0, ∂(1 ⊗ x') = x'
        let d1 = hochschild_boundary(&a, &m, 1).unwrap();
        let src = hochschild_chain_basis(&a, &m, 1);
        let dst = hochschild_chain_basis(&a, &m, 0);
        let col = src.index_of(&vec![1, 3]).unwrap();
        assert!((0..d1.rows()).all(|r| d1.get(r, col) == q(0)));
        let col = src.index_of(&vec![0, 3]).unwrap();
        assert_eq!(d1.get(dst.index_of(&vec![3]).unwrap(), col), q(1));
        for n in 1..=4 {
            let d_out = hochschild_boundary(&a, &m, n).unwrap();
            let d_in = hochschild_boundary(&a, &m, n + 1).unwrap();
            assert!(d_out.compose(&d_in).unwrap().is_zero());
        }
    }

    #[test]
    fn hochschild_zeroth_cohomology_of_dual_numbers() {
        let a = dual_numbers::<Q>();
        let m = ModulePresentation::regular(&a);
        let d1 = hochschild_cohomology_coboundary(&a, &m, 0).unwrap();
        assert!(d1.is_zero());
        assert_eq!(d1.cols() - rank(&d1), 2);
        for n in 0..=3 {
            let d = hochschild_cohomology_coboundary(&a, &m, n).unwrap();
            let d2 = hochschild_cohomology_coboundary(&a, &m, n + 1).unwrap();
            assert!(d2.compose(&d).unwrap().is_zero());
        }
    }

    #[test]
    fn mixed_word_order_is_position_major() {
        let w = mixed_words(2, 1, 2);
        assert_eq!(w, vec![vec![2, 0], vec![2, 1], vec![0, 2], vec![1, 2]]);
    }

    // a0·f(a1..an) - Σ (-1)^j f(..a_j a_{j+1}..) + (-1)^{n-1} f(a0..a_{n-1})·an
    fn ungraded_coboundary(a: &AlgebraPresentation<Q>, m: &ModulePresentation<Q>, n: usize) -> SparseMap<Q> {
        let src = hochschild_cochain_space(a, m, n);
        let dst = hochschild_cochain_space(a, m, n + 1);
        let mut out = SparseMap::zeros(dst.len(), src.len());
        for (si, w) in src.words.iter().enumerate() {
            for v in 0..m.dim() {
                let f = |u: &[usize]| -> Chain<usize, Q> {
                    if u == w.as_slice() {
                        Chain::from([(v, q(1))])
                    } else {
                        Chain::new()
                    }
                };
                for (ti, x) in dst.words.iter().enumerate() {
                    let mut val: Chain<usize, Q> = Chain::new();
                    for (k, c) in f(&x[1..]) {
                        add_scaled(&mut val, &c, &m.left.apply(&Chain::from([(x[0], q(1))]), &Chain::from([(k, q(1))])));
                    }
                    for j in 0..n {
                        for (k, c) in a.mul(x[j], x[j + 1]) {
                            let mut u = x[..j].to_vec();
                            u.push(k);
                            u.extend_from_slice(&x[j + 2..]);
                            let s = if j % 2 == 0 { -c } else { c };
                            add_scaled(&mut val, &s, &f(&u));
                        }
                    }
                    for (k, c) in f(&x[..n]) {
                        let s = if n % 2 == 1 { c } else { -c };
                        add_scaled(&mut val, &s, &m.right.apply(&Chain::from([(k, q(1))]), &Chain::from([(x[n], q(1))])));
                    }
                    for (k, c) in val {
                        out.add_entry(dst.index(ti, k), src.index(si, v), c);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn coboundary_matches_ungraded_formula() {
        for a in [dual_numbers::<Q>(), group_algebra_z2(), upper_triangular()] {
            let m = ModulePresentation::regular(&a);
            for n in 0..=3 {
                let sign = if n % 2 == 0 { q(1) } else { q(-1) };
                let d = hochschild_cohomology_coboundary(&a, &m, n).unwrap();
                assert_eq!(d.scale(&sign), ungraded_coboundary(&a, &m, n), "n = {n}");
            }
        }
    }
}
