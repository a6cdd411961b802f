//! The G∞ enveloping bicoalgebra of a Gerstenhaber algebra `G`.
//!
//! `H = ⊕_p (⊗^p G[1] / shuffles)` is realised by the Harrison complement
//! bases; each basis class is a *letter* of the symmetric layer
//! `S⁺(H[1])`. A letter built from the word `a_1…a_p` has degree
//! `deg a_1 + … + deg a_p − 1` with `deg a = |a| − 1`.
//!
//! Letters are numbered pure classes first (by weight, then quotient order),
//! then classes carrying one module letter, so a sorted symmetric word of
//! `C_N(G, M)` ends with its module-carrying factor.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebras::{AlgebraError, AlgebraPresentation, Kind, ModulePresentation};
use crate::bar::{mixed_words, tensor_words, Actions, CochainSpace, TaylorCoefficients, Word, WordChain};
use crate::chain::{add_scaled, add_term, matrix_of, Basis, Chain, ChainError};
use crate::chevalley::{canonical, delta_sym, lift_coderivation_sym, SymChain, SymWord};
use crate::graded::{enumerate_shuffles, reorder_parity};
use crate::harrison::HarrisonChainSpace;
use crate::linalg::{homology_dim, rank, LinalgError, SparseMap, SparseVec};
use crate::scalar::odd;
use crate::Scalar;

/// A sorted product `X_1•…•X_r` of letter ids.
pub type BicoWord = SymWord;
pub type PairChain<K> = Chain<(BicoWord, BicoWord), K>;
pub type TripleChain<K> = Chain<(BicoWord, BicoWord, BicoWord), K>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GinftyError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("the bracket does not preserve shuffles at weights ({0}, {1})")]
    QuotientNotPreserved(usize, usize),
    #[error("cochain shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `κ(a_1…a_p) = Σ_j (-1)^{deg U_j + 1}(U_j⊗V_j + τ(U_j⊗V_j))` on a raw word,
/// `U_j = a_1…a_j`, `V_j = a_{j+1}…a_p`, degrees in `H[1]`.
pub fn kappa_on_word<K: Scalar>(w: &[usize], deg: &dyn Fn(usize) -> i64) -> Vec<(Word, Word, K)> {
    let mut out = Vec::with_capacity(2 * w.len().saturating_sub(1));
    for j in 1..w.len() {
        let (u, v) = (w[..j].to_vec(), w[j..].to_vec());
        let du = u.iter().map(|&x| deg(x)).sum::<i64>() - 1;
        let dv = v.iter().map(|&x| deg(x)).sum::<i64>() - 1;
        let s = K::sign(odd(du + 1));
        out.push((v.clone(), u.clone(), s.clone() * K::sign(odd(du * dv))));
        out.push((u, v, s));
    }
    out
}

/// `[a_1…a_p ∧ a_{p+1}…a_{p+q}]`: shuffles of the two words in which a letter
/// of the first is immediately followed by one of the second, that pair
/// replaced by its bracket.
pub fn bracket_on_words<K: Scalar>(acts: &Actions<'_, K>, u: &[usize], v: &[usize]) -> WordChain<K> {
    let p = u.len();
    let c: Vec<usize> = u.iter().chain(v).copied().collect();
    let degrees: Vec<i64> = c.iter().map(|&x| acts.degree(x) - 1).collect();
    let mut out = Chain::new();
    for sigma in enumerate_shuffles(p, v.len()) {
        let order = sigma.inverse();
        let o = order.images();
        let s = K::sign(reorder_parity(&degrees, o));
        for k in 0..c.len().saturating_sub(1) {
            if o[k] < p && o[k + 1] >= p {
                for (b, x) in acts.br(c[o[k]], c[o[k + 1]]) {
                    let mut word: Word = o[..k].iter().map(|&i| c[i]).collect();
                    word.push(b);
                    word.extend(o[k + 2..].iter().map(|&i| c[i]));
                    add_term(&mut out, word, s.clone() * x);
                }
            }
        }
    }
    out
}

/// Harrison `m` on a raw word: `Σ_j (-1)^{deg a_1+…+deg a_{j-1}} …m(a_j⊗a_{j+1})…`.
fn m_on_word<K: Scalar>(acts: &Actions<'_, K>, w: &[usize]) -> WordChain<K> {
    let mut out = Chain::new();
    let mut prefix = 0i64;
    for j in 0..w.len().saturating_sub(1) {
        for (b, x) in acts.m2(w[j], w[j + 1]) {
            let mut word = w[..j].to_vec();
            word.push(b);
            word.extend_from_slice(&w[j + 2..]);
            add_term(&mut out, word, K::sign(odd(prefix)) * x);
        }
        prefix += acts.degree(w[j]) - 1;
    }
    out
}

/// Basis classes of `H` (and of the words carrying one module letter).
#[derive(Debug, Clone)]
pub struct HarrisonClasses<K> {
    n_g: usize,
    deg: Vec<i64>,
    spaces: BTreeMap<(usize, bool), HarrisonChainSpace<K>>,
    letters: Basis<Word>,
    weight: Vec<usize>,
    module: Vec<bool>,
    x: Vec<i64>,
}

impl<K: Scalar> HarrisonClasses<K> {
    fn new(acts: &Actions<'_, K>, max_weight: usize, module_letters: bool) -> Self {
        let n_g = acts.dim_a();
        let deg: Vec<i64> = (0..n_g + acts.dim_m()).map(|x| acts.degree(x) - 1).collect();
        let f = |x: usize| deg[x];
        let mut spaces = BTreeMap::new();
        for p in 1..=max_weight {
            spaces.insert((p, false), HarrisonChainSpace::from_words(tensor_words(n_g, p), &f));
        }
        if acts.m.is_some() && module_letters {
            for p in 0..=max_weight {
                let words = mixed_words(n_g, acts.dim_m(), p + 1);
                spaces.insert((p + 1, true), HarrisonChainSpace::from_words(words, &f));
            }
        }
        let mut letters = Vec::new();
        for with_module in [false, true] {
            for ((_, m), s) in &spaces {
                if *m == with_module {
                    letters.extend(s.quotient.iter().cloned());
                }
            }
        }
        let module: Vec<bool> = letters.iter().map(|w: &Word| w.iter().any(|&a| a >= n_g)).collect();
        let weight = letters.iter().zip(&module).map(|(w, &m)| w.len() - usize::from(m)).collect();
        let x = letters.iter().map(|w| w.iter().map(|&a| deg[a]).sum::<i64>() - 1).collect();
        HarrisonClasses {
            n_g,
            deg,
            spaces,
            letters: Basis::new(letters),
            weight,
            module,
            x,
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Representative word of a letter.
    pub fn word(&self, l: usize) -> &Word {
        self.letters.get(l)
    }

    /// Number of letters of `G` in the representative.
    pub fn weight(&self, l: usize) -> usize {
        self.weight[l]
    }

    pub fn has_module(&self, l: usize) -> bool {
        self.module[l]
    }

    /// Degree in `H[1]`.
    pub fn x(&self, l: usize) -> i64 {
        self.x[l]
    }

    fn space_of(&self, w: &[usize]) -> &HarrisonChainSpace<K> {
        let module_letters = w.iter().filter(|&&a| a >= self.n_g).count();
        assert!(module_letters <= 1, "words carry at most one module letter");
        &self.spaces[&(w.len(), module_letters == 1)]
    }

    /// Class of a chain of words, in letter ids.
    pub fn reduce(&self, c: &WordChain<K>) -> Chain<usize, K> {
        let mut by_space: BTreeMap<(usize, bool), WordChain<K>> = BTreeMap::new();
        for (w, x) in c {
            let m = w.iter().any(|&a| a >= self.n_g);
            by_space.entry((w.len(), m)).or_default().insert(w.clone(), x.clone());
        }
        let mut out = Chain::new();
        for (key, part) in by_space {
            let space = self.space_of(part.keys().next().expect("nonempty part"));
            debug_assert_eq!(key.0, space.words.get(0).len());
            for (w, x) in space.reduce(&part).expect("words of a known block") {
                add_term(&mut out, self.letters.index_of(&w).expect("quotient word is a letter"), x);
            }
        }
        out
    }

    fn reduce_word(&self, w: &[usize]) -> Chain<usize, K> {
        self.reduce(&Chain::from([(w.to_vec(), K::one())]))
    }
}

/// `S⁺(H[1])` with `κ`, `Δ` and the codifferentials `m`, `ℓ`, for
/// Harrison weights up to `max_weight`.
#[derive(Debug, Clone)]
pub struct Bicoalgebra<K> {
    pub classes: HarrisonClasses<K>,
    g: AlgebraPresentation<K>,
    module: Option<ModulePresentation<K>>,
    m: TaylorCoefficients<K>,
    ell: TaylorCoefficients<K>,
    max_weight: usize,
    module_letters: bool,
}

impl<K: Scalar> Bicoalgebra<K> {
    /// Builds the letters and the Taylor coefficients of `m` and `ℓ`, and
    /// checks that the bracket descends to Harrison classes.
    pub fn new(
        g: &AlgebraPresentation<K>,
        module: Option<&ModulePresentation<K>>,
        max_weight: usize,
    ) -> Result<Self, GinftyError> {
        Self::build(g, module, max_weight, true)
    }

    /// Like [`Bicoalgebra::new`] but without the letters carrying a module
    /// letter: enough for cochains, whose coboundary sees the module only
    /// through its actions. Chain complexes with coefficients are refused.
    pub fn for_cochains(
        g: &AlgebraPresentation<K>,
        module: &ModulePresentation<K>,
        max_weight: usize,
    ) -> Result<Self, GinftyError> {
        Self::build(g, Some(module), max_weight, false)
    }

    fn build(
        g: &AlgebraPresentation<K>,
        module: Option<&ModulePresentation<K>>,
        max_weight: usize,
        module_letters: bool,
    ) -> Result<Self, GinftyError> {
        if g.kind != Kind::Gerstenhaber {
            return Err(GinftyError::InvalidInput(format!(
                "G∞ structures need a Gerstenhaber algebra, got {}",
                g.kind.name()
            )));
        }
        if max_weight == 0 {
            return Err(GinftyError::InvalidInput("max weight must be at least 1".into()));
        }
        let acts = Actions::new(g, module);
        let classes = HarrisonClasses::new(&acts, max_weight, module_letters);
        let mut m = TaylorCoefficients::new(1);
        let mut ell = TaylorCoefficients::new(1);
        for l in 0..classes.len() {
            let v = classes.reduce(&m_on_word(&acts, classes.word(l)));
            if !v.is_empty() {
                m.set(vec![l], v);
            }
        }
        for i in 0..classes.len() {
            for j in i..classes.len() {
                if classes.weight(i) + classes.weight(j) > max_weight
                    || (classes.has_module(i) && classes.has_module(j))
                    || (i == j && odd(classes.x(i)))
                {
                    continue;
                }
                let b = classes.reduce(&bracket_on_words(&acts, classes.word(i), classes.word(j)));
                let s = K::sign(odd(classes.x(i)));
                let v: Chain<usize, K> = b.into_iter().map(|(k, x)| (k, s.clone() * x)).collect();
                if !v.is_empty() {
                    ell.set(vec![i, j], v);
                }
            }
        }
        let b = Bicoalgebra {
            classes,
            g: g.clone(),
            module: module.cloned(),
            m,
            ell,
            max_weight,
            module_letters,
        };
        b.check_bracket_descends()?;
        Ok(b)
    }

    fn acts(&self) -> Actions<'_, K> {
        Actions::new(&self.g, self.module.as_ref())
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    /// `[g ∧ Y]` and `[Y ∧ g]` reduce to zero for every shuffle generator
    /// `g` and every letter `Y` of compatible weight.
    pub fn check_bracket_descends(&self) -> Result<(), GinftyError> {
        let acts = self.acts();
        let c = &self.classes;
        for (&(len, with_module), space) in &c.spaces {
            for g in space.shuffle_basis() {
                let p = len - usize::from(with_module);
                for y in 0..c.len() {
                    if p + c.weight(y) > self.max_weight || (with_module && c.has_module(y)) {
                        continue;
                    }
                    let mut left = Chain::new();
                    let mut right = Chain::new();
                    for (w, x) in &g {
                        add_scaled(&mut left, x, &bracket_on_words(&acts, w, c.word(y)));
                        add_scaled(&mut right, x, &bracket_on_words(&acts, c.word(y), w));
                    }
                    if !c.reduce(&left).is_empty() || !c.reduce(&right).is_empty() {
                        return Err(GinftyError::QuotientNotPreserved(p, c.weight(y)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn x(&self, l: usize) -> i64 {
        self.classes.x(l)
    }

    fn deg(&self) -> impl Fn(usize) -> i64 + '_ {
        move |l| self.classes.x(l)
    }

    /// Total degree of a product.
    pub fn word_x(&self, w: &[usize]) -> i64 {
        w.iter().map(|&l| self.x(l)).sum()
    }

    /// Total weight of a product.
    pub fn word_weight(&self, w: &[usize]) -> usize {
        w.iter().map(|&l| self.classes.weight(l)).sum()
    }

    /// Weights of the factors, sorted decreasingly.
    pub fn shape(&self, w: &[usize]) -> Vec<usize> {
        let mut s: Vec<usize> = w.iter().map(|&l| self.classes.weight(l)).collect();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    /// Products of weight `n`: `C_n(G)`, or `C_n(G, M)` when `module` is
    /// set (exactly one factor then carries a module letter). Ordered by
    /// shape, then by letters.
    pub fn basis(&self, n: usize, module: bool) -> Basis<BicoWord> {
        fn go<K: Scalar>(
            b: &Bicoalgebra<K>,
            start: usize,
            left: usize,
            need_module: bool,
            cur: &mut Vec<usize>,
            out: &mut Vec<BicoWord>,
        ) {
            if left == 0 && !need_module {
                out.push(cur.clone());
                return;
            }
            let c = &b.classes;
            for l in start..c.len() {
                if c.weight(l) > left || (c.has_module(l) && !need_module) {
                    continue;
                }
                if !c.has_module(l) && c.weight(l) == 0 {
                    continue;
                }
                cur.push(l);
                let next = if odd(c.x(l)) { l + 1 } else { l };
                go(b, next, left - c.weight(l), need_module && !c.has_module(l), cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n <= self.max_weight && (module || n > 0) {
            go(self, 0, n, module, &mut Vec::new(), &mut out);
        }
        if module && self.module.is_none() {
            out.clear();
        }
        out.sort_by_cached_key(|w| (w.len(), self.shape(w), w.clone()));
        Basis::new(out)
    }

    /// `m(X_1•…•X_n) = Σ_j (-1)^{x_1+…+x_{j-1}} X_1•…•m(X_j)•…•X_n`.
    pub fn m_sym(&self, w: &[usize]) -> SymChain<K> {
        lift_coderivation_sym(&self.m, &self.deg(), w)
    }

    /// `ℓ(X_1•…•X_n) = Σ_{i<j} ε ℓ(X_i•X_j)•X_1•…`, `ℓ(X•Y) = (-1)^x [X∧Y]`.
    pub fn ell_sym(&self, w: &[usize]) -> SymChain<K> {
        lift_coderivation_sym(&self.ell, &self.deg(), w)
    }

    /// `(m + ℓ)` on a product.
    pub fn d_sym(&self, w: &[usize]) -> SymChain<K> {
        let mut out = self.m_sym(w);
        add_scaled(&mut out, &K::one(), &self.ell_sym(w));
        out
    }

    /// `ℓ(X•Y)` on two letters in either order.
    pub fn ell_pair(&self, a: usize, b: usize) -> Chain<usize, K> {
        let (lo, hi, s) = if a <= b {
            (a, b, K::one())
        } else {
            (b, a, K::sign(odd(self.x(a) * self.x(b))))
        };
        match self.ell.get(&[lo, hi]) {
            Some(v) => v.iter().map(|(&k, x)| (k, s.clone() * x.clone())).collect(),
            None => Chain::new(),
        }
    }

    /// `Δ` on a product.
    pub fn delta(&self, w: &[usize]) -> PairChain<K> {
        let mut out = Chain::new();
        for (u, v, s) in delta_sym::<K>(w, &self.deg()) {
            add_term(&mut out, (u, v), s);
        }
        out
    }

    /// `κ` on a single letter, reduced in both factors.
    pub fn kappa_letter(&self, l: usize) -> Chain<(usize, usize), K> {
        let deg = |a: usize| self.classes.deg[a];
        let mut out = Chain::new();
        for (u, v, s) in kappa_on_word::<K>(self.classes.word(l), &deg) {
            let ru = self.classes.reduce_word(&u);
            let rv = self.classes.reduce_word(&v);
            for (a, x) in &ru {
                for (b, y) in &rv {
                    add_term(&mut out, (*a, *b), s.clone() * x.clone() * y.clone());
                }
            }
        }
        out
    }

    /// `κ(X_1•…•X_n) = Σ_s Σ_{I⊔J} (-1)^{x_I} ε(I, s, J)
    /// Σ_{κ(X_s) = Σ U⊗V} X_I•U ⊗ V•X_J`, the Koszul sign of moving `κ`
    /// past `X_I`.
    pub fn kappa(&self, w: &[usize]) -> PairChain<K> {
        self.kappa_signed(w, false)
    }

    // `positional` uses (-1)^{x_1+…+x_{s-1}} instead of (-1)^{x_I}
    fn kappa_signed(&self, w: &[usize], positional: bool) -> PairChain<K> {
        let deg = self.deg();
        let n = w.len();
        let degrees: Vec<i64> = w.iter().map(|&l| self.x(l)).collect();
        let mut out = Chain::new();
        for s in 0..n {
            let k = self.kappa_letter(w[s]);
            let others: Vec<usize> = (0..n).filter(|&p| p != s).collect();
            for mask in 0..1usize << others.len() {
                let i_part: Vec<usize> = (0..others.len()).filter(|b| mask >> b & 1 == 1).map(|b| others[b]).collect();
                let j_part: Vec<usize> = (0..others.len()).filter(|b| mask >> b & 1 == 0).map(|b| others[b]).collect();
                let mut order = i_part.clone();
                order.push(s);
                order.extend_from_slice(&j_part);
                let passed: i64 = if positional {
                    degrees[..s].iter().sum()
                } else {
                    i_part.iter().map(|&p| degrees[p]).sum()
                };
                let eps = K::sign(reorder_parity(&degrees, &order) ^ odd(passed));
                for ((u, v), x) in &k {
                    let mut left: Vec<usize> = i_part.iter().map(|&p| w[p]).collect();
                    left.push(*u);
                    let mut right = vec![*v];
                    right.extend(j_part.iter().map(|&p| w[p]));
                    let (Some((lw, sl)), Some((rw, sr))) = (canonical::<K>(&left, &deg), canonical::<K>(&right, &deg)) else {
                        continue;
                    };
                    add_term(&mut out, (lw, rw), eps.clone() * sl * sr * x.clone());
                }
            }
        }
        out
    }

    /// Extends a map on products linearly to chains.
    pub fn apply(&self, f: &dyn Fn(&[usize]) -> SymChain<K>, c: &SymChain<K>) -> SymChain<K> {
        let mut out = Chain::new();
        for (w, x) in c {
            add_scaled(&mut out, x, &f(w));
        }
        out
    }

    /// `(f⊗id + id⊗f)` for `f` of degree `d`, with
    /// `(id⊗f)(A⊗B) = (-1)^{d·deg A} A⊗f(B)`.
    pub fn on_pairs(&self, f: &dyn Fn(&[usize]) -> SymChain<K>, d: i64, c: &PairChain<K>) -> PairChain<K> {
        let mut out = Chain::new();
        for ((a, b), x) in c {
            for (fa, y) in f(a) {
                add_term(&mut out, (fa, b.clone()), x.clone() * y);
            }
            let s = K::sign(odd(d * self.word_x(a)));
            for (fb, y) in f(b) {
                add_term(&mut out, (a.clone(), fb), s.clone() * x.clone() * y);
            }
        }
        out
    }

    /// `τ(A⊗B) = (-1)^{deg A·deg B} B⊗A`.
    pub fn tau(&self, c: &PairChain<K>) -> PairChain<K> {
        c.iter()
            .map(|((a, b), x)| {
                let s = K::sign(odd(self.word_x(a) * self.word_x(b)));
                ((b.clone(), a.clone()), s * x.clone())
            })
            .collect()
    }

    fn pairs_of(&self, f: &dyn Fn(&[usize]) -> PairChain<K>, c: &SymChain<K>) -> PairChain<K> {
        let mut out = Chain::new();
        for (w, x) in c {
            add_scaled(&mut out, x, &f(w));
        }
        out
    }

    // (f⊗id) then (id⊗g) style expansions on pair chains, into triples
    fn left_split(&self, f: &dyn Fn(&[usize]) -> PairChain<K>, c: &PairChain<K>) -> TripleChain<K> {
        let mut out = Chain::new();
        for ((a, b), x) in c {
            for ((p, q), y) in f(a) {
                add_term(&mut out, (p, q, b.clone()), x.clone() * y);
            }
        }
        out
    }

    fn right_split(&self, f: &dyn Fn(&[usize]) -> PairChain<K>, d: i64, c: &PairChain<K>) -> TripleChain<K> {
        let mut out = Chain::new();
        for ((a, b), x) in c {
            let s = K::sign(odd(d * self.word_x(a)));
            for ((p, q), y) in f(b) {
                add_term(&mut out, (a.clone(), p, q), s.clone() * x.clone() * y);
            }
        }
        out
    }

    fn tau12(&self, c: &TripleChain<K>) -> TripleChain<K> {
        c.iter()
            .map(|((a, b, d), x)| {
                let s = K::sign(odd(self.word_x(a) * self.word_x(b)));
                ((b.clone(), a.clone(), d.clone()), s * x.clone())
            })
            .collect()
    }

    fn tau23(&self, c: &TripleChain<K>) -> TripleChain<K> {
        c.iter()
            .map(|((a, b, d), x)| {
                let s = K::sign(odd(self.word_x(b) * self.word_x(d)));
                ((a.clone(), d.clone(), b.clone()), s * x.clone())
            })
            .collect()
    }

    /// Every structure law on one element of the symmetric layer.
    pub fn laws_on(&self, c: &SymChain<K>) -> LawReport {
        let delta = |w: &[usize]| self.delta(w);
        let kappa = |w: &[usize]| self.kappa(w);
        let m = |w: &[usize]| self.m_sym(w);
        let ell = |w: &[usize]| self.ell_sym(w);
        let dc = self.pairs_of(&delta, c);
        let kc = self.pairs_of(&kappa, c);
        let mc = self.apply(&m, c);
        let lc = self.apply(&ell, c);

        let cocommutative = self.tau(&dc) == dc;
        let coassociative = self.left_split(&delta, &dc) == self.right_split(&delta, 0, &dc);
        let cosymmetric = self.tau(&kc) == kc;
        let kk = self.left_split(&kappa, &kc);
        let mut jac = kk.clone();
        add_scaled(&mut jac, &K::one(), &self.tau12(&self.tau23(&kk)));
        add_scaled(&mut jac, &K::one(), &self.tau23(&self.tau12(&kk)));
        let cojacobi = jac.is_empty();
        let lhs = self.right_split(&delta, 0, &kc);
        let mut rhs = self.left_split(&kappa, &dc);
        add_scaled(&mut rhs, &K::one(), &self.tau12(&self.right_split(&kappa, -1, &dc)));
        let coleibniz = lhs == rhs;

        let kappa_coder = |f: &dyn Fn(&[usize]) -> SymChain<K>, fc: &SymChain<K>| {
            let mut e = self.on_pairs(f, 1, &kc);
            add_scaled(&mut e, &K::one(), &self.pairs_of(&kappa, fc));
            e.is_empty()
        };
        let delta_coder = |f: &dyn Fn(&[usize]) -> SymChain<K>, fc: &SymChain<K>| {
            self.on_pairs(f, 1, &dc) == self.pairs_of(&delta, fc)
        };
        let mut anti = self.apply(&m, &lc);
        add_scaled(&mut anti, &K::one(), &self.apply(&ell, &mc));
        let mut total = mc.clone();
        add_scaled(&mut total, &K::one(), &lc);
        let d = |w: &[usize]| self.d_sym(w);
        LawReport {
            delta_cocommutative: cocommutative,
            delta_coassociative: coassociative,
            kappa_cosymmetric: cosymmetric,
            kappa_cojacobi: cojacobi,
            kappa_coleibniz: coleibniz,
            m_kappa_coderivation: kappa_coder(&m, &mc),
            m_delta_coderivation: delta_coder(&m, &mc),
            m_squared: self.apply(&m, &mc).is_empty(),
            ell_kappa_coderivation: kappa_coder(&ell, &lc),
            ell_delta_coderivation: delta_coder(&ell, &lc),
            ell_squared: self.apply(&ell, &lc).is_empty(),
            leibniz: anti.is_empty(),
            total_squared: self.apply(&d, &total).is_empty(),
        }
    }

    /// All laws on every basis product of weight `1..=n_max`.
    pub fn laws(&self, n_max: usize) -> LawReport {
        let mut acc = LawReport::all_true();
        for n in 1..=n_max.min(self.max_weight) {
            for w in self.basis(n, false).iter() {
                acc.and(&self.laws_on(&Chain::from([(w.clone(), K::one())])));
            }
        }
        acc
    }

    /// Matrices of `m` and `ℓ` from `C_n(G)` to `C_{n-1}(G)`.
    pub fn m_ell_matrices(&self, n: usize) -> Result<(SparseMap<K>, SparseMap<K>), GinftyError> {
        let src = self.basis(n, false);
        let dst = self.basis(n.saturating_sub(1), false);
        Ok((
            matrix_of(&src, &dst, |w| self.m_sym(w))?,
            matrix_of(&src, &dst, |w| self.ell_sym(w))?,
        ))
    }

    /// `(m + ℓ)` of `G ⋉ M` restricted to `C_n(G, M)`.
    pub fn restricted_boundary(&self, n: usize) -> Result<SparseMap<K>, GinftyError> {
        self.require_module_letters()?;
        self.require_module()?;
        if n == 0 {
            return Ok(SparseMap::zeros(0, self.basis(0, true).len()));
        }
        Ok(matrix_of(&self.basis(n, true), &self.basis(n - 1, true), |w| self.d_sym(w))?)
    }

    /// `∂_N(X•Y) = (ℓ+m)(X)•Y + (-1)^{Σ x_i} X•m(Y)
    /// + Σ_i (-1)^{Σ_{j≠i} x_j} ε(i to the end) X_1•…X̂_i…•ℓ(X_i, Y)`,
    /// with `ℓ(X_i, Y) = (-1)^{x_i}[X_i ∧ Y]`.
    pub fn chevalley_harrison_boundary(&self, n: usize) -> Result<SparseMap<K>, GinftyError> {
        self.boundary_display(n, true)
    }

    // `signed = false` drops the (-1)^{x_i} in ℓ(X_i, Y)
    fn boundary_display(&self, n: usize, signed: bool) -> Result<SparseMap<K>, GinftyError> {
        self.require_module_letters()?;
        let src = self.basis(n, true);
        if n == 0 {
            return Ok(SparseMap::zeros(0, src.len()));
        }
        let dst = self.basis(n - 1, true);
        let deg = self.deg();
        let glue = |xs: &[usize], y: usize| -> Option<(BicoWord, K)> {
            let mut letters = xs.to_vec();
            letters.push(y);
            canonical::<K>(&letters, &deg)
        };
        Ok(matrix_of(&src, &dst, |w| {
            let (xs, y) = w.split_at(w.len() - 1);
            let y = y[0];
            let mut out = Chain::new();
            if !xs.is_empty() {
                for (u, c) in self.d_sym(xs) {
                    if let Some((word, s)) = glue(&u, y) {
                        add_term(&mut out, word, s * c);
                    }
                }
            }
            let sx = K::sign(odd(self.word_x(xs)));
            if let Some(my) = self.m.get(&[y]) {
                for (&k, c) in my {
                    if let Some((word, s)) = glue(xs, k) {
                        add_term(&mut out, word, sx.clone() * s * c.clone());
                    }
                }
            }
            let degrees: Vec<i64> = xs.iter().map(|&l| self.x(l)).collect();
            for i in 0..xs.len() {
                let mut order: Vec<usize> = (0..xs.len()).filter(|&p| p != i).collect();
                order.push(i);
                let rest: Vec<usize> = order[..xs.len() - 1].iter().map(|&p| xs[p]).collect();
                let others = self.word_x(&rest);
                let s0 = K::sign(odd(others) ^ reorder_parity(&degrees, &order) ^ (signed && odd(self.x(xs[i]))));
                let acts = self.acts();
                let br = self.classes.reduce(&bracket_on_words(&acts, self.classes.word(xs[i]), self.classes.word(y)));
                for (k, c) in br {
                    if let Some((word, s)) = glue(&rest, k) {
                        add_term(&mut out, word, s0.clone() * s * c);
                    }
                }
            }
            out
        })?)
    }

    fn require_module_letters(&self) -> Result<&ModulePresentation<K>, GinftyError> {
        let m = self.require_module()?;
        if !self.module_letters {
            return Err(GinftyError::InvalidInput("built for cochains only; chains need module letters".into()));
        }
        Ok(m)
    }

    fn require_module(&self) -> Result<&ModulePresentation<K>, GinftyError> {
        self.module
            .as_ref()
            .ok_or_else(|| GinftyError::InvalidInput("a module is required".into()))
    }

    /// `C^N(G, M) = L(C_N(G), M)`.
    pub fn cochain_space(&self, n: usize) -> Result<CochainSpace, GinftyError> {
        let m = self.require_module()?;
        Ok(CochainSpace {
            words: self.basis(n, false),
            dim_m: m.dim(),
        })
    }

    /// `d_m` and `d_ℓ` as matrices `C^N(G, M) → C^{N+1}(G, M)`.
    ///
    /// `d_m c(…X_j…) = (-1)^{deg a_1 (deg c + Σ_{i<j} x_i)} m(a_1 ⊗ c(…a_2…a_p…))
    /// + (-1)^{deg a_p Σ_{i>j} x_i} m(c(…a_1…a_{p-1}…) ⊗ a_p) − (-1)^{deg c} c(m(…))`
    /// over factors `X_j = a_1…a_p` with `p ≥ 2`, and
    /// `d_ℓ c(…) = Σ_{X_j = a} ε ℓ(c(…X̂_j…)•a) − (-1)^{deg c} c(ℓ(…))`.
    pub fn coboundary_parts(&self, n: usize) -> Result<(SparseMap<K>, SparseMap<K>), GinftyError> {
        if n == 0 || n + 1 > self.max_weight {
            return Err(GinftyError::InvalidInput(format!(
                "coboundary C^{n} needs 1 ≤ N < max weight {}",
                self.max_weight
            )));
        }
        let src = self.cochain_space(n)?;
        let dst = self.cochain_space(n + 1)?;
        let acts = self.acts();
        let n_g = self.g.dim();
        let ad = |a: usize| acts.degree(a) - 1;
        let xv = |v: usize| acts.degree(n_g + v) - 2;
        let deg = self.deg();
        let deg_c = |word: &[usize], v: usize| xv(v) - self.word_x(word);
        let mut dm = SparseMap::zeros(dst.len(), src.len());
        let mut dl = SparseMap::zeros(dst.len(), src.len());
        for (ti, z) in dst.words.iter().enumerate() {
            let degrees: Vec<i64> = z.iter().map(|&l| self.x(l)).collect();
            for j in 0..z.len() {
                let rep = self.classes.word(z[j]);
                let p = rep.len();
                let before: i64 = degrees[..j].iter().sum();
                let after: i64 = degrees[j + 1..].iter().sum();
                if p >= 2 {
                    for first in [true, false] {
                        let (a, rest) = if first { (rep[0], &rep[1..]) } else { (rep[p - 1], &rep[..p - 1]) };
                        for (b, lam) in self.classes.reduce_word(rest) {
                            let mut letters = z.clone();
                            letters[j] = b;
                            let Some((word, sc)) = canonical::<K>(&letters, &deg) else { continue };
                            let Some(bi) = src.words.index_of(&word) else { continue };
                            for v in 0..src.dim_m {
                                let (s, prod) = if first {
                                    (odd(ad(a) * (deg_c(&word, v) + before)), acts.m2(a, n_g + v))
                                } else {
                                    (odd(ad(a) * after), acts.m2(n_g + v, a))
                                };
                                for (k, mu) in prod {
                                    let coef = K::sign(s) * sc.clone() * lam.clone() * mu;
                                    dm.add_entry(dst.index(ti, k - n_g), src.index(bi, v), coef);
                                }
                            }
                        }
                    }
                } else {
                    // X_j is a single letter a of G
                    let a = rep[0];
                    let mut order: Vec<usize> = (0..z.len()).filter(|&q| q != j).collect();
                    order.push(j);
                    let eps = reorder_parity(&degrees, &order);
                    let rest: Vec<usize> = order[..z.len() - 1].iter().map(|&q| z[q]).collect();
                    let Some(bi) = src.words.index_of(&rest) else { continue };
                    for v in 0..src.dim_m {
                        // ℓ(v•a) = (-1)^{x_v x_a} (-1)^{x_a} [a, v]
                        let xa = ad(a) - 1;
                        let s = eps ^ odd(xv(v) * xa) ^ odd(xa);
                        for (k, mu) in acts.br(a, n_g + v) {
                            dl.add_entry(dst.index(ti, k - n_g), src.index(bi, v), K::sign(s) * mu);
                        }
                    }
                }
            }
            for (target, part) in [(&mut dm, self.m_sym(z)), (&mut dl, self.ell_sym(z))] {
                for (word, lam) in part {
                    let bi = src.words.index_of(&word).expect("products of weight N");
                    for v in 0..src.dim_m {
                        let s = -K::sign(odd(deg_c(&word, v)));
                        target.add_entry(dst.index(ti, v), src.index(bi, v), s * lam.clone());
                    }
                }
            }
        }
        Ok((dm, dl))
    }

    /// `∂^N = d_m + d_ℓ : C^N(G, M) → C^{N+1}(G, M)`.
    pub fn coboundary(&self, n: usize) -> Result<SparseMap<K>, GinftyError> {
        let (dm, dl) = self.coboundary_parts(n)?;
        Ok(dm.add(&dl)?)
    }
}

/// Verdict of each bicoalgebra law and of each property of `m` and `ℓ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LawReport {
    pub delta_cocommutative: bool,
    pub delta_coassociative: bool,
    pub kappa_cosymmetric: bool,
    pub kappa_cojacobi: bool,
    pub kappa_coleibniz: bool,
    pub m_kappa_coderivation: bool,
    pub m_delta_coderivation: bool,
    pub m_squared: bool,
    pub ell_kappa_coderivation: bool,
    pub ell_delta_coderivation: bool,
    pub ell_squared: bool,
    pub leibniz: bool,
    pub total_squared: bool,
}

impl LawReport {
    fn all_true() -> Self {
        LawReport {
            delta_cocommutative: true,
            delta_coassociative: true,
            kappa_cosymmetric: true,
            kappa_cojacobi: true,
            kappa_coleibniz: true,
            m_kappa_coderivation: true,
            m_delta_coderivation: true,
            m_squared: true,
            ell_kappa_coderivation: true,
            ell_delta_coderivation: true,
            ell_squared: true,
            leibniz: true,
            total_squared: true,
        }
    }

    fn and(&mut self, o: &LawReport) {
        for ((_, a), (_, b)) in self.entries_mut().into_iter().zip(o.entries()) {
            *a &= b;
        }
    }

    fn entries_mut(&mut self) -> Vec<(&'static str, &mut bool)> {
        vec![
            ("delta cocommutative", &mut self.delta_cocommutative),
            ("delta coassociative", &mut self.delta_coassociative),
            ("kappa cosymmetric", &mut self.kappa_cosymmetric),
            ("kappa coJacobi", &mut self.kappa_cojacobi),
            ("kappa coLeibniz", &mut self.kappa_coleibniz),
            ("m kappa-coderivation", &mut self.m_kappa_coderivation),
            ("m delta-coderivation", &mut self.m_delta_coderivation),
            ("m^2 = 0", &mut self.m_squared),
            ("l kappa-coderivation", &mut self.ell_kappa_coderivation),
            ("l delta-coderivation", &mut self.ell_delta_coderivation),
            ("l^2 = 0", &mut self.ell_squared),
            ("ml + lm = 0", &mut self.leibniz),
            ("(m+l)^2 = 0", &mut self.total_squared),
        ]
    }

    /// Named verdicts, in a fixed order.
    pub fn entries(&self) -> Vec<(&'static str, bool)> {
        let mut c = *self;
        c.entries_mut().into_iter().map(|(n, b)| (n, *b)).collect()
    }

    pub fn all(&self) -> bool {
        self.entries().iter().all(|(_, b)| *b)
    }
}

/// A cochain of `C^N(G, M)`: values on basis products of weight `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct GinftyCochain<K> {
    pub weight: usize,
    pub values: BTreeMap<BicoWord, Chain<usize, K>>,
}

impl<K: Scalar> GinftyCochain<K> {
    pub fn zero(weight: usize) -> Self {
        GinftyCochain {
            weight,
            values: BTreeMap::new(),
        }
    }

    pub fn to_vector(&self, space: &CochainSpace) -> Result<SparseVec<K>, GinftyError> {
        let mut v = SparseVec::new();
        for (w, vals) in &self.values {
            let i = space
                .words
                .index_of(w)
                .ok_or_else(|| GinftyError::ShapeMismatch(format!("{w:?} is not a product of weight {}", self.weight)))?;
            for (&k, x) in vals {
                if k >= space.dim_m {
                    return Err(GinftyError::ShapeMismatch(format!("module index {k} out of range")));
                }
                if !x.is_zero() {
                    v.insert(space.index(i, k), x.clone());
                }
            }
        }
        Ok(v)
    }

    pub fn from_vector(weight: usize, space: &CochainSpace, v: &SparseVec<K>) -> Self {
        let mut values: BTreeMap<BicoWord, Chain<usize, K>> = BTreeMap::new();
        for (&i, x) in v {
            let (w, k) = space.split(i);
            add_term(values.entry(space.words.get(w).clone()).or_default(), k, x.clone());
        }
        GinftyCochain { weight, values }
    }
}

/// `∂^N c` for a cochain of weight `N`.
pub fn chevalley_harrison_coboundary<K: Scalar>(
    b: &Bicoalgebra<K>,
    c: &GinftyCochain<K>,
    n: usize,
) -> Result<GinftyCochain<K>, GinftyError> {
    if c.weight != n {
        return Err(GinftyError::ShapeMismatch(format!("cochain of weight {} given for N = {n}", c.weight)));
    }
    let src = b.cochain_space(n)?;
    let dst = b.cochain_space(n + 1)?;
    let v = c.to_vector(&src)?;
    Ok(GinftyCochain::from_vector(n + 1, &dst, &b.coboundary(n)?.apply(&v)))
}

/// Homology and cohomology dimensions of the Chevalley–Harrison complexes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GinftyBetti {
    /// `dim C_N(G, M)` and `dim H_N(G, M)` for `N = 0..=n_max`.
    pub chain_dims: Vec<usize>,
    pub homology: Vec<usize>,
    /// `dim C^N(G, M)` and `dim H^N(G, M)` for `N = 1..=n_max`.
    pub cochain_dims: Vec<usize>,
    pub cohomology: Vec<usize>,
}

pub fn chevalley_harrison_betti<K: Scalar>(
    g: &AlgebraPresentation<K>,
    m: &ModulePresentation<K>,
    n_max: usize,
) -> Result<GinftyBetti, GinftyError> {
    let b = Bicoalgebra::new(g, Some(m), n_max + 1)?;
    let d: Vec<SparseMap<K>> = (0..=n_max + 1)
        .map(|n| b.chevalley_harrison_boundary(n))
        .collect::<Result<_, _>>()?;
    let mut chain_dims = Vec::new();
    let mut homology = Vec::new();
    for n in 0..=n_max {
        chain_dims.push(d[n].cols());
        homology.push(homology_dim(&d[n], &d[n + 1])?);
    }
    let cod: Vec<SparseMap<K>> = (1..=n_max).map(|n| b.coboundary(n)).collect::<Result<_, _>>()?;
    let mut cochain_dims = Vec::new();
    let mut cohomology = Vec::new();
    for n in 1..=n_max {
        let d_out = &cod[n - 1];
        if n >= 2 {
            let comp = d_out.compose(&cod[n - 2])?;
            if !comp.is_zero() {
                return Err(LinalgError::CompositeNotZero { nonzero: comp.nnz() }.into());
            }
        }
        let rank_in = if n >= 2 { rank(&cod[n - 2]) } else { 0 };
        cochain_dims.push(d_out.cols());
        cohomology.push(d_out.cols() - rank(d_out) - rank_in);
    }
    Ok(GinftyBetti {
        chain_dims,
        homology,
        cochain_dims,
        cohomology,
    })
}
