//! Presentations of associative, commutative, Lie and Gerstenhaber algebras
//! and their modules by structure constants, axiom checks and semidirect
//! products.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::chain::{add_scaled, add_term, Chain};
use crate::graded::{GradedBasis, GradedError};
use crate::scalar::odd;
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("malformed presentation: {0}")]
    MalformedPresentation(String),
    #[error("invalid input: {}", format_violations(.0))]
    InvalidInput(Vec<Violation>),
    #[error(transparent)]
    Graded(#[from] GradedError),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Associative,
    Commutative,
    Lie,
    Gerstenhaber,
}

impl Kind {
    pub fn has_product(self) -> bool {
        !matches!(self, Kind::Lie)
    }

    pub fn has_bracket(self) -> bool {
        matches!(self, Kind::Lie | Kind::Gerstenhaber)
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Associative => "associative",
            Kind::Commutative => "commutative",
            Kind::Lie => "lie",
            Kind::Gerstenhaber => "gerstenhaber",
        }
    }
}

/// One failed axiom instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: String,
    pub args: Vec<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @ ({})", self.axiom, self.args.join(","))
    }
}

/// Bilinear structure constants `(i, j) -> Σ_k c_{ij}^k e_k`, stored sparsely.
#[derive(Debug, Clone, PartialEq)]
pub struct Table<K> {
    entries: BTreeMap<(usize, usize), Chain<usize, K>>,
}

impl<K: Scalar> Default for Table<K> {
    fn default() -> Self {
        Table {
            entries: BTreeMap::new(),
        }
    }
}

impl<K: Scalar> Table<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, x: K) {
        let e = self.entries.entry((i, j)).or_default();
        e.remove(&k);
        if !x.is_zero() {
            e.insert(k, x);
        }
        if e.is_empty() {
            self.entries.remove(&(i, j));
        }
    }

    pub fn add(&mut self, i: usize, j: usize, k: usize, x: K) {
        let e = self.entries.entry((i, j)).or_default();
        add_term(e, k, x);
        if e.is_empty() {
            self.entries.remove(&(i, j));
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Chain<usize, K> {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn entry(&self, i: usize, j: usize, k: usize) -> K {
        self.entries
            .get(&(i, j))
            .and_then(|c| c.get(&k).cloned())
            .unwrap_or_else(K::zero)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, usize, &K)> {
        self.entries
            .iter()
            .flat_map(|(&(i, j), c)| c.iter().map(move |(&k, x)| (i, j, k, x)))
    }

    /// Bilinear extension to linear combinations.
    pub fn apply(&self, x: &Chain<usize, K>, y: &Chain<usize, K>) -> Chain<usize, K> {
        let mut out = Chain::new();
        for (&i, a) in x {
            for (&j, b) in y {
                if let Some(c) = self.entries.get(&(i, j)) {
                    add_scaled(&mut out, &(a.clone() * b.clone()), c);
                }
            }
        }
        out
    }

    fn max_index(&self) -> Option<(usize, usize, usize)> {
        let mut m: Option<(usize, usize, usize)> = None;
        for (i, j, k, _) in self.iter() {
            let cur = m.unwrap_or((0, 0, 0));
            m = Some((cur.0.max(i), cur.1.max(j), cur.2.max(k)));
        }
        m
    }

    /// Re-indexes every slot through the given maps.
    fn reindexed(&self, fi: impl Fn(usize) -> usize, fj: impl Fn(usize) -> usize, fk: impl Fn(usize) -> usize) -> Self {
        let mut t = Table::new();
        for (i, j, k, x) in self.iter() {
            t.add(fi(i), fj(j), fk(k), x.clone());
        }
        t
    }
}

/// A finite-dimensional graded algebra given by structure constants.
///
/// Lie brackets are stored on the unshifted space; Gerstenhaber brackets
/// have degree -1.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraPresentation<K> {
    pub kind: Kind,
    pub basis: GradedBasis,
    pub product: Table<K>,
    pub bracket: Table<K>,
    pub unit: Option<usize>,
}

/// Left/right actions and, for Lie and Gerstenhaber kinds, the bracket
/// action `a•v`. Tables are indexed `(a, v)` for left and bracket actions
/// and `(v, a)` for the right action; outputs are module indices.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulePresentation<K> {
    pub basis: GradedBasis,
    pub left: Table<K>,
    pub right: Table<K>,
    pub bracket_action: Table<K>,
}

impl<K: Scalar> AlgebraPresentation<K> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.basis.degree(i)
    }

    pub fn mul(&self, i: usize, j: usize) -> Chain<usize, K> {
        self.product.get(i, j)
    }

    pub fn br(&self, i: usize, j: usize) -> Chain<usize, K> {
        self.bracket.get(i, j)
    }

    fn check_shape(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        for (label, t) in [("product", &self.product), ("bracket", &self.bracket)] {
            if let Some((i, j, k)) = t.max_index() {
                if i >= n || j >= n || k >= n {
                    return Err(AlgebraError::MalformedPresentation(format!(
                        "{label} index out of range for a basis of size {n}"
                    )));
                }
            }
        }
        if !self.kind.has_product() && !self.product.is_empty() {
            return Err(AlgebraError::MalformedPresentation(
                "lie presentation carries a product table".into(),
            ));
        }
        if !self.kind.has_bracket() && !self.bracket.is_empty() {
            return Err(AlgebraError::MalformedPresentation(format!(
                "{} presentation carries a bracket table",
                self.kind.name()
            )));
        }
        if let Some(u) = self.unit {
            if u >= n {
                return Err(AlgebraError::MalformedPresentation("unit index out of range".into()));
            }
            if !self.kind.has_product() {
                return Err(AlgebraError::MalformedPresentation(
                    "lie presentation declares a unit".into(),
                ));
            }
        }
        Ok(())
    }

    /// The commutative algebra underlying a Gerstenhaber algebra.
    pub fn forget_bracket(&self) -> Self {
        AlgebraPresentation {
            kind: if self.kind == Kind::Gerstenhaber {
                Kind::Commutative
            } else {
                self.kind
            },
            basis: self.basis.clone(),
            product: self.product.clone(),
            bracket: Table::new(),
            unit: self.unit,
        }
    }

    /// The Lie algebra `G[1]` of a Gerstenhaber algebra.
    pub fn shifted_lie(&self) -> Self {
        let basis = GradedBasis::new(
            self.basis
                .elements()
                .iter()
                .map(|(n, d)| (n.clone(), d - 1))
                .collect(),
        )
        .expect("names already unique");
        AlgebraPresentation {
            kind: Kind::Lie,
            basis,
            product: Table::new(),
            bracket: self.bracket.clone(),
            unit: None,
        }
    }
}

fn names(b: &GradedBasis, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| b.name(i).to_string()).collect()
}

fn violation(axiom: &str, b: &GradedBasis, idx: &[usize]) -> Violation {
    Violation {
        axiom: axiom.to_string(),
        args: names(b, idx),
    }
}

/// Checks every axiom of the declared kind on all basis tuples.
pub fn validate<K: Scalar>(a: &AlgebraPresentation<K>) -> Result<Vec<Violation>, AlgebraError> {
    a.check_shape()?;
    let n = a.dim();
    let b = &a.basis;
    let deg = |i: usize| b.degree(i);
    let mut out = Vec::new();
    let one = |i: usize| Chain::from([(i, K::one())]);

    if a.kind.has_product() {
        for (i, j, k, _) in a.product.iter() {
            if deg(k) != deg(i) + deg(j) {
                out.push(violation("ProductDegree", b, &[i, j]));
            }
        }
        if let Some(u) = a.unit {
            if deg(u) != 0 {
                out.push(violation("UnitDegree", b, &[u]));
            }
            for i in 0..n {
                if a.mul(u, i) != one(i) || a.mul(i, u) != one(i) {
                    out.push(violation("Unit", b, &[i]));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = a.product.apply(&one(i), &a.mul(j, k));
                    let rhs = a.product.apply(&a.mul(i, j), &one(k));
                    if lhs != rhs {
                        out.push(violation("Ass", b, &[i, j, k]));
                    }
                }
            }
        }
        if matches!(a.kind, Kind::Commutative | Kind::Gerstenhaber) {
            for i in 0..n {
                for j in 0..n {
                    let mut c = a.mul(i, j);
                    let s = K::sign(odd(deg(i) * deg(j)));
                    add_scaled(&mut c, &-s, &a.mul(j, i));
                    if !c.is_empty() {
                        out.push(violation("Com", b, &[i, j]));
                    }
                }
            }
        }
    }

    if a.kind.has_bracket() {
        // Lie brackets see |a|, Gerstenhaber brackets see deg(a) = |a| - 1
        let (shift, bracket_degree) = match a.kind {
            Kind::Gerstenhaber => (1, -1),
            _ => (0, 0),
        };
        let d = |i: usize| deg(i) - shift;
        for (i, j, k, _) in a.bracket.iter() {
            if deg(k) != deg(i) + deg(j) + bracket_degree {
                out.push(violation("BracketDegree", b, &[i, j]));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let mut c = a.br(i, j);
                add_scaled(&mut c, &K::sign(odd(d(i) * d(j))), &a.br(j, i));
                if !c.is_empty() {
                    out.push(violation("Antisym", b, &[i, j]));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut c = Chain::new();
                    for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let inner = a.br(x, y);
                        let outer = a.bracket.apply(&inner, &one(z));
                        add_scaled(&mut c, &K::sign(odd(d(x) * d(z))), &outer);
                    }
                    if !c.is_empty() {
                        out.push(violation("Jacobi", b, &[i, j, k]));
                    }
                }
            }
        }
        if a.kind == Kind::Gerstenhaber {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let mut c = a.bracket.apply(&one(i), &a.mul(j, k));
                        let t1 = a.product.apply(&a.br(i, j), &one(k));
                        add_scaled(&mut c, &-K::one(), &t1);
                        let t2 = a.product.apply(&one(j), &a.br(i, k));
                        add_scaled(&mut c, &-K::sign(odd(deg(j) * d(i))), &t2);
                        if !c.is_empty() {
                            out.push(violation("Leibniz", b, &[i, j, k]));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

impl<K: Scalar> ModulePresentation<K> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The one-dimensional module with every action zero.
    pub fn trivial(degree: i64) -> Self {
        ModulePresentation {
            basis: GradedBasis::new(vec![("k".into(), degree)]).expect("single name"),
            left: Table::new(),
            right: Table::new(),
            bracket_action: Table::new(),
        }
    }

    /// The algebra acting on itself; basis names are primed.
    pub fn regular(a: &AlgebraPresentation<K>) -> Self {
        let basis = GradedBasis::new(
            a.basis
                .elements()
                .iter()
                .map(|(n, d)| (format!("{n}'"), *d))
                .collect(),
        )
        .expect("names already unique");
        ModulePresentation {
            basis,
            left: a.product.clone(),
            right: a.product.clone(),
            bracket_action: a.bracket.clone(),
        }
    }

    /// Fills the right action from the left one by `v.a = (-1)^{|a||v|} a.v`.
    pub fn symmetrized(mut self, a: &AlgebraPresentation<K>) -> Self {
        let mut right = Table::new();
        for (i, v, w, x) in self.left.iter() {
            let s = K::sign(odd(a.degree(i) * self.basis.degree(v)));
            right.add(v, i, w, s * x.clone());
        }
        self.right = right;
        self
    }

    /// The same actions on `M` with every degree raised by `by`. Only the
    /// bracket action survives this unchanged in general.
    pub fn shifted(mut self, by: i64) -> Self {
        self.basis = GradedBasis::new(
            self.basis
                .elements()
                .iter()
                .map(|(n, d)| (n.clone(), d + by))
                .collect(),
        )
        .expect("names are unchanged");
        self
    }

    fn check_shape(&self, a: &AlgebraPresentation<K>) -> Result<(), AlgebraError> {
        let (na, nm) = (a.dim(), self.dim());
        let bad = |t: &Table<K>, alg_first: bool| {
            t.max_index().is_some_and(|(i, j, k)| {
                let (ai, mi) = if alg_first { (i, j) } else { (j, i) };
                ai >= na || mi >= nm || k >= nm
            })
        };
        if bad(&self.left, true) || bad(&self.right, false) || bad(&self.bracket_action, true) {
            return Err(AlgebraError::MalformedPresentation(
                "module action index out of range".into(),
            ));
        }
        if !a.kind.has_product() && !(self.left.is_empty() && self.right.is_empty()) {
            return Err(AlgebraError::MalformedPresentation(
                "lie module carries product actions".into(),
            ));
        }
        if !a.kind.has_bracket() && !self.bracket_action.is_empty() {
            return Err(AlgebraError::MalformedPresentation(format!(
                "module over a {} algebra carries a bracket action",
                a.kind.name()
            )));
        }
        Ok(())
    }
}

/// Module axioms, checked as the algebra axioms of `A ⋉ M` on tuples that
/// involve a module letter.
pub fn validate_module<K: Scalar>(
    a: &AlgebraPresentation<K>,
    m: &ModulePresentation<K>,
) -> Result<Vec<Violation>, AlgebraError> {
    m.check_shape(a)?;
    let s = semidirect_unchecked(a, m)?;
    let n = a.dim();
    let module_names: Vec<String> = (n..s.dim()).map(|i| s.basis.name(i).to_string()).collect();
    Ok(validate(&s)?
        .into_iter()
        .filter(|v| v.args.iter().any(|x| module_names.contains(x)))
        .map(|mut v| {
            v.axiom = format!("Module{}", v.axiom);
            v
        })
        .collect())
}

/// `A ⋉ M` on the basis of `A` followed by the basis of `M`, without
/// validating the inputs.
pub fn semidirect_unchecked<K: Scalar>(
    a: &AlgebraPresentation<K>,
    m: &ModulePresentation<K>,
) -> Result<AlgebraPresentation<K>, AlgebraError> {
    let n = a.dim();
    let basis = a.basis.concat(&m.basis)?;
    let shift = |v: usize| v + n;
    let id = |i: usize| i;
    let mut product = a.product.clone();
    let mut bracket = a.bracket.clone();
    if a.kind.has_product() {
        // (a+u)(b+v) = ab + (ub + av)
        for (i, v, w, x) in m.left.reindexed(id, shift, shift).iter() {
            product.add(i, v, w, x.clone());
        }
        for (v, i, w, x) in m.right.reindexed(shift, id, shift).iter() {
            product.add(v, i, w, x.clone());
        }
    }
    if a.kind.has_bracket() {
        // [a+u, b+v] = [a,b] + a•v - (-1)^{d(b)d(u)} b•u
        let d_shift = if a.kind == Kind::Gerstenhaber { 1 } else { 0 };
        for (i, v, w, x) in m.bracket_action.iter() {
            bracket.add(i, shift(v), shift(w), x.clone());
            let s = K::sign(odd((a.degree(i) - d_shift) * (m.basis.degree(v) - d_shift)));
            bracket.add(shift(v), i, shift(w), -(s * x.clone()));
        }
    }
    Ok(AlgebraPresentation {
        kind: a.kind,
        basis,
        product,
        bracket,
        unit: a.unit,
    })
}

/// `A ⋉ M`, refusing inputs that fail their axioms.
pub fn semidirect<K: Scalar>(
    a: &AlgebraPresentation<K>,
    m: &ModulePresentation<K>,
) -> Result<AlgebraPresentation<K>, AlgebraError> {
    let mut bad = validate(a)?;
    bad.extend(validate_module(a, m)?);
    if !bad.is_empty() {
        return Err(AlgebraError::InvalidInput(bad));
    }
    semidirect_unchecked(a, m)
}

/// Small algebras used throughout the test suites and bundled with the CLI.
pub mod examples {
    use super::*;

    fn q<K: Scalar>(n: i64) -> K {
        K::from_i64(n).expect("small integer")
    }

    fn basis(names: &[(&str, i64)]) -> GradedBasis {
        GradedBasis::new(names.iter().map(|(n, d)| (n.to_string(), *d)).collect())
            .expect("fixture names are unique")
    }

    fn unital<K: Scalar>(kind: Kind, b: GradedBasis, products: &[(usize, usize, usize, i64)]) -> AlgebraPresentation<K> {
        let mut product = Table::new();
        for i in 0..b.len() {
            product.set(0, i, i, K::one());
            product.set(i, 0, i, K::one());
        }
        for &(i, j, k, x) in products {
            product.add(i, j, k, q(x));
        }
        AlgebraPresentation {
            kind,
            basis: b,
            product,
            bracket: Table::new(),
            unit: Some(0),
        }
    }

    fn lie<K: Scalar>(b: GradedBasis, brackets: &[(usize, usize, usize, i64)]) -> AlgebraPresentation<K> {
        let mut bracket = Table::new();
        for &(i, j, k, x) in brackets {
            bracket.add(i, j, k, q(x));
            let s: K = K::sign(odd(b.degree(i) * b.degree(j)));
            bracket.add(j, i, k, -(s * q(x)));
        }
        AlgebraPresentation {
            kind: Kind::Lie,
            basis: b,
            product: Table::new(),
            bracket,
            unit: None,
        }
    }

    /// The ground field.
    pub fn ground_field<K: Scalar>() -> AlgebraPresentation<K> {
        unital(Kind::Commutative, basis(&[("1", 0)]), &[])
    }

    /// `K[x]/(x²)` with `|x| = 0`.
    pub fn dual_numbers<K: Scalar>() -> AlgebraPresentation<K> {
        unital(Kind::Commutative, basis(&[("1", 0), ("x", 0)]), &[])
    }

    /// The group algebra of `Z/2`.
    pub fn group_algebra_z2<K: Scalar>() -> AlgebraPresentation<K> {
        unital(Kind::Commutative, basis(&[("1", 0), ("g", 0)]), &[(1, 1, 0, 1)])
    }

    /// Upper triangular 2×2 matrices on the basis `1, e12, e22`.
    pub fn upper_triangular<K: Scalar>() -> AlgebraPresentation<K> {
        unital(
            Kind::Associative,
            basis(&[("1", 0), ("e12", 0), ("e22", 0)]),
            &[(1, 2, 1, 1), (2, 2, 2, 1)],
        )
    }

    /// Exterior algebra on generators of degree 1.
    pub fn exterior<K: Scalar>(generators: usize) -> AlgebraPresentation<K> {
        exterior_with_bracket(generators, &Table::new(), Kind::Commutative)
    }

    /// `aff(1)`: `[e, f] = f`.
    pub fn aff1<K: Scalar>() -> AlgebraPresentation<K> {
        lie(basis(&[("e", 0), ("f", 0)]), &[(0, 1, 1, 1)])
    }

    /// `sl₂`: `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f`.
    pub fn sl2<K: Scalar>() -> AlgebraPresentation<K> {
        lie(
            basis(&[("e", 0), ("f", 0), ("h", 0)]),
            &[(0, 1, 2, 1), (2, 0, 0, 2), (2, 1, 1, -2)],
        )
    }

    /// Abelian Lie algebra with generators in the given degrees.
    pub fn abelian<K: Scalar>(degrees: &[i64]) -> AlgebraPresentation<K> {
        lie(GradedBasis::from_degrees("a", degrees), &[])
    }

    /// The Heisenberg algebra `[x, y] = z`.
    pub fn heisenberg<K: Scalar>() -> AlgebraPresentation<K> {
        lie(basis(&[("x", 0), ("y", 0), ("z", 0)]), &[(0, 1, 2, 1)])
    }

    /// Exterior algebra `Λ𝔤` of a Lie algebra with the Schouten bracket.
    pub fn schouten<K: Scalar>(g: &AlgebraPresentation<K>) -> AlgebraPresentation<K> {
        exterior_with_bracket(g.dim(), &g.bracket, Kind::Gerstenhaber)
    }

    /// `Λ aff(1)`.
    pub fn lambda_aff1<K: Scalar>() -> AlgebraPresentation<K> {
        schouten(&aff1())
    }

    /// A Gerstenhaber algebra with zero bracket.
    pub fn zero_bracket<K: Scalar>(c: &AlgebraPresentation<K>) -> AlgebraPresentation<K> {
        AlgebraPresentation {
            kind: Kind::Gerstenhaber,
            ..c.clone()
        }
    }

    /// Basis of `Λ(V)` for `dim V = n`: subsets as sorted index lists,
    /// ordered by size then lexicographically.
    pub fn exterior_monomials(n: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = (0..1usize << n)
            .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }

    // Product and (optional) Schouten bracket on Λ(V), V concentrated in
    // degree 1, extending a bracket on V by the Leibniz rule.
    fn exterior_with_bracket<K: Scalar>(n: usize, lie_bracket: &Table<K>, kind: Kind) -> AlgebraPresentation<K> {
        let monos = exterior_monomials(n);
        let index: BTreeMap<Vec<usize>, usize> =
            monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let names: Vec<(String, i64)> = monos
            .iter()
            .map(|m| {
                let name = if m.is_empty() {
                    "1".to_string()
                } else {
                    m.iter().map(|i| format!("v{i}")).collect::<Vec<_>>().join("^")
                };
                (name, m.len() as i64)
            })
            .collect();
        let b = GradedBasis::new(names).expect("monomial names are unique");

        // wedge of two monomials: sign of sorting the concatenation
        let wedge = |x: &[usize], y: &[usize]| -> Option<(bool, usize)> {
            let mut w: Vec<usize> = x.iter().chain(y).copied().collect();
            let mut parity = false;
            for i in 0..w.len() {
                for j in 0..w.len() - 1 - i {
                    if w[j] > w[j + 1] {
                        w.swap(j, j + 1);
                        parity = !parity;
                    } else if w[j] == w[j + 1] {
                        return None;
                    }
                }
            }
            if w.windows(2).any(|p| p[0] == p[1]) {
                return None;
            }
            Some((parity, index[&w]))
        };
        let mut product = Table::new();
        for (i, x) in monos.iter().enumerate() {
            for (j, y) in monos.iter().enumerate() {
                if let Some((p, k)) = wedge(x, y) {
                    product.add(i, j, k, K::sign(p));
                }
            }
        }

        // Schouten: [x_1..x_k, y_1..y_l] = Σ (-1)^{i+j} [x_i, y_j] x_1..x̂_i..x_k y_1..ŷ_j..y_l
        let mut bracket = Table::new();
        if !lie_bracket.is_empty() {
            for (i, x) in monos.iter().enumerate() {
                for (j, y) in monos.iter().enumerate() {
                    for (s, &xs) in x.iter().enumerate() {
                        for (t, &yt) in y.iter().enumerate() {
                            let c = lie_bracket.get(xs, yt);
                            if c.is_empty() {
                                continue;
                            }
                            let mut xr = x.clone();
                            xr.remove(s);
                            let mut yr = y.clone();
                            yr.remove(t);
                            let Some((p1, rest)) = wedge(&xr, &yr) else { continue };
                            let sign_pos = odd((s + t) as i64);
                            for (&g, coeff) in &c {
                                if let Some((p2, k)) = wedge(&[g], &monos[rest]) {
                                    let s = K::sign(sign_pos ^ p1 ^ p2);
                                    bracket.add(i, j, k, s * coeff.clone());
                                }
                            }
                        }
                    }
                }
            }
        }
        AlgebraPresentation {
            kind,
            basis: b,
            product,
            bracket,
            unit: Some(0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;
    use crate::Q;

    #[test]
    fn fixtures_validate() {
        for a in [
            ground_field::<Q>(),
            dual_numbers(),
            group_algebra_z2(),
            upper_triangular(),
            exterior(2),
            aff1(),
            sl2(),
            abelian(&[0, 0, 1]),
            heisenberg(),
            lambda_aff1(),
            schouten(&sl2()),
            zero_bracket(&dual_numbers()),
        ] {
            assert_eq!(validate(&a).unwrap(), vec![], "{:?}", a.basis);
        }
    }

    #[test]
    fn broken_antisymmetry_is_named() {
        let mut a = aff1::<Q>();
        a.bracket.set(0, 0, 1, Q::from_integer(1.into()));
        let v = validate(&a).unwrap();
        assert!(v.iter().any(|x| x.to_string() == "Antisym @ (e,e)"));
    }

    #[test]
    fn regular_and_trivial_modules() {
        for a in [dual_numbers::<Q>(), upper_triangular(), aff1(), sl2(), lambda_aff1()] {
            assert_eq!(validate_module(&a, &ModulePresentation::regular(&a)).unwrap(), vec![]);
        }
        for a in [aff1::<Q>(), sl2()] {
            assert_eq!(validate_module(&a, &ModulePresentation::trivial(0)).unwrap(), vec![]);
        }
    }

    #[test]
    fn semidirect_examples() {
        let r = ground_field::<Q>();
        let mut triv = ModulePresentation::trivial(0);
        // the unit must act as the identity on a module over a unital algebra
        triv.left.set(0, 0, 0, Q::from_integer(1.into()));
        triv.right.set(0, 0, 0, Q::from_integer(1.into()));
        let s = semidirect(&r, &triv).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.mul(1, 1).is_empty());

        let a = dual_numbers::<Q>();
        let s = semidirect(&a, &ModulePresentation::regular(&a)).unwrap();
        assert_eq!(s.dim(), 4);
        assert_eq!(validate(&s).unwrap(), vec![]);
        // x · x' = x'x = 0, 1 · x' = x', x' · x' = 0
        assert!(s.mul(1, 3).is_empty());
        assert_eq!(s.mul(0, 3), Chain::from([(3, Q::from_integer(1.into()))]));
        assert!(s.mul(3, 3).is_empty());

        let g = aff1::<Q>();
        let s = semidirect(&g, &ModulePresentation::regular(&g)).unwrap();
        assert_eq!(s.dim(), 4);
        assert_eq!(validate(&s).unwrap(), vec![]);
    }

    #[test]
    fn corrupted_action_is_detected() {
        let g = aff1::<Q>();
        let mut m = ModulePresentation::regular(&g);
        m.bracket_action.set(1, 1, 0, Q::from_integer(1.into()));
        assert!(!validate_module(&g, &m).unwrap().is_empty());
        assert!(matches!(semidirect(&g, &m), Err(AlgebraError::InvalidInput(_))));
    }

    #[test]
    fn gerstenhaber_forgets_to_commutative_and_lie() {
        let g = lambda_aff1::<Q>();
        assert_eq!(validate(&g.forget_bracket()).unwrap(), vec![]);
        assert_eq!(validate(&g.shifted_lie()).unwrap(), vec![]);
    }

    #[test]
    fn schouten_on_aff1() {
        let g = lambda_aff1::<Q>();
        let idx = |n: &str| g.basis.index_of(n).unwrap();
        let one = Q::from_integer(1.into());
        // [e, f] = f and [e, e∧f] = e∧f
        assert_eq!(g.br(idx("v0"), idx("v1")), Chain::from([(idx("v1"), one.clone())]));
        assert_eq!(g.br(idx("v0"), idx("v0^v1")), Chain::from([(idx("v0^v1"), one)]));
        assert!(g.br(idx("v1"), idx("v0^v1")).is_empty());
    }

    #[test]
    fn malformed_tables_rejected() {
        let mut a = dual_numbers::<Q>();
        a.product.set(0, 5, 1, Q::from_integer(1.into()));
        assert!(matches!(validate(&a), Err(AlgebraError::MalformedPresentation(_))));
        let mut g = aff1::<Q>();
        g.product.set(0, 0, 0, Q::from_integer(1.into()));
        assert!(matches!(validate(&g), Err(AlgebraError::MalformedPresentation(_))));
    }
}
