//! Randomised invariants over small generated inputs.

use std::sync::OnceLock;

use proptest::prelude::*;

use hoalg::algebras::examples::*;
use hoalg::algebras::ModulePresentation;
use hoalg::bar::{bar_boundary, coderivation_defect, hochschild_boundary, morphism_defect, tensor_words, TaylorCoefficients};
use hoalg::chain::{add_scaled, add_term, Chain};
use hoalg::chevalley::chevalley_boundary;
use hoalg::ginfty::Bicoalgebra;
use hoalg::graded::{reorder_parity, Permutation};
use hoalg::harrison::{shuffle_product, HarrisonCoalgebra};
use hoalg::koszul::{koszul_boundary, pbw_monomials, pbw_mul, PbwChain};
use hoalg::linalg::{kernel_basis, rank, SparseMap, SparseVec};
use hoalg::Q;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn coeff() -> impl Strategy<Value = Q> {
    (-4i64..=4, 1i64..=3).prop_filter_map("non-zero", |(n, d)| (n != 0).then(|| Q::new(n.into(), d.into())))
}

fn permutation(max: usize) -> impl Strategy<Value = Vec<usize>> {
    (1..=max).prop_flat_map(|n| Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = SparseMap<Q>> {
    prop::collection::vec(prop::option::weighted(0.4, -3i64..=3), rows * cols).prop_map(move |entries| {
        let mut m = SparseMap::zeros(rows, cols);
        for (i, e) in entries.into_iter().enumerate() {
            if let Some(x) = e {
                m.add_entry(i / cols, i % cols, q(x));
            }
        }
        m
    })
}

fn word_chain(letters: usize, max_len: usize) -> impl Strategy<Value = Chain<Vec<usize>, Q>> {
    prop::collection::vec((prop::collection::vec(0..letters, 1..=max_len), coeff()), 1..=3).prop_map(|terms| {
        let mut c = Chain::new();
        for (w, x) in terms {
            add_term(&mut c, w, x);
        }
        c
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn koszul_parity_is_a_cocycle(
        (first, second) in permutation(6).prop_flat_map(|p| {
            let n = p.len();
            (Just(p), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
        }),
        degs in prop::collection::vec(-2i64..=3, 6),
    ) {
        let n = first.len();
        let degs = &degs[..n];
        let moved: Vec<i64> = first.iter().map(|&i| degs[i]).collect();
        let both = Permutation::new(first.clone()).unwrap().compose(&Permutation::new(second.clone()).unwrap());
        prop_assert_eq!(
            reorder_parity(degs, both.images()),
            reorder_parity(degs, &first) ^ reorder_parity(&moved, &second)
        );
    }

    #[test]
    fn koszul_parity_extremes(order in permutation(7)) {
        let n = order.len();
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| order[i] > order[j]).count();
        prop_assert!(!reorder_parity(&vec![0; n], &order));
        prop_assert_eq!(reorder_parity(&vec![1; n], &order), inversions % 2 == 1);
    }

    #[test]
    fn rank_nullity(m in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| matrix(r, c))) {
        let r = rank(&m);
        prop_assert_eq!(r, rank(&m.transpose()));
        let ker = kernel_basis(&m);
        prop_assert_eq!(r + ker.len(), m.cols());
        for v in &ker {
            prop_assert!(m.apply(v).is_empty());
        }
    }

    #[test]
    fn random_taylor_coefficients_lift_to_coderivations(
        entries in prop::collection::vec((prop::collection::vec(0usize..3, 1..=3), coeff()), 0..8),
        degree in -1i64..=1,
    ) {
        // letters of degree -1, 0, 1 indexed by degree + 1, so each input has at most one homogeneous output
        let deg = |x: usize| x as i64 - 1;
        let target = |w: &[usize], d: i64| {
            let k = w.iter().map(|&x| deg(x)).sum::<i64>() + d + 1;
            (0..3).contains(&k).then_some(k as usize)
        };
        let mut d = TaylorCoefficients::new(degree);
        let mut f = TaylorCoefficients::identity(3);
        for (w, x) in entries {
            if let Some(k) = target(&w, degree) {
                let mut v = d.get(&w).cloned().unwrap_or_default();
                add_term(&mut v, k, x.clone());
                d.set(w.clone(), v);
            }
            if let Some(k) = target(&w, 0) {
                let mut v = f.get(&w).cloned().unwrap_or_default();
                add_term(&mut v, k, x);
                f.set(w, v);
            }
        }
        for n in 1..=4 {
            for w in tensor_words(3, n) {
                prop_assert!(coderivation_defect(&d, &deg, &w).is_empty());
                prop_assert!(morphism_defect(&f, &w).is_empty());
            }
        }
    }

    #[test]
    fn harrison_reduction_is_idempotent_and_kills_shuffles(
        c in word_chain(3, 4),
        split in 1usize..4,
        w in prop::collection::vec(0usize..3, 2..=4),
    ) {
        let co = HarrisonCoalgebra::<Q>::new(&[0, 1, 2], 4);
        let r = co.reduce(&c);
        prop_assert_eq!(co.reduce(&r), r);
        let p = split.min(w.len() - 1);
        let deg = |x: usize| co.deg(x);
        prop_assert!(co.reduce(&shuffle_product::<Q>(&w[..p], &w[p..], &deg)).is_empty());
    }

    #[test]
    fn cobracket_is_antisymmetric_and_cojacobi(c in word_chain(3, 4)) {
        let co = HarrisonCoalgebra::<Q>::new(&[1, 1, 2], 4);
        let d = co.delta(&c);
        let mut sum = co.tau(&d);
        add_scaled(&mut sum, &q(1), &d);
        prop_assert!(co.reduce2(&sum).is_empty());
        prop_assert!(co.cojacobi(&c).is_empty());
    }

    #[test]
    fn pbw_product_is_associative(
        picks in prop::collection::vec((0usize..40, coeff()), 3),
        which in 0usize..3,
    ) {
        let g = [sl2::<Q>(), aff1(), heisenberg()][which].clone();
        let pool: Vec<Vec<usize>> = (1..=2).flat_map(|k| pbw_monomials(&g, k)).collect();
        let elems: Vec<PbwChain<Q>> = picks
            .iter()
            .map(|(i, x)| Chain::from([(pool[i % pool.len()].clone(), x.clone())]))
            .collect();
        let left = pbw_mul(&g, &pbw_mul(&g, &elems[0], &elems[1]), &elems[2]);
        let right = pbw_mul(&g, &elems[0], &pbw_mul(&g, &elems[1], &elems[2]));
        prop_assert_eq!(left, right);
    }
}

fn lambda_aff1_bicoalgebra() -> &'static Bicoalgebra<Q> {
    static B: OnceLock<Bicoalgebra<Q>> = OnceLock::new();
    B.get_or_init(|| Bicoalgebra::new(&lambda_aff1::<Q>(), None, 4).unwrap())
}

fn restrict(xs: &[Option<Q>], len: usize) -> SparseVec<Q> {
    xs.iter().take(len).enumerate().filter_map(|(i, x)| x.clone().map(|x| (i, x))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bicoalgebra_laws_hold_on_random_elements(picks in prop::collection::vec((1usize..=4, 0usize..64, coeff()), 1..=3)) {
        let b = lambda_aff1_bicoalgebra();
        let mut c = Chain::new();
        for (n, i, x) in picks {
            let basis = b.basis(n, false);
            if !basis.is_empty() {
                add_term(&mut c, basis.get(i % basis.len()).clone(), x);
            }
        }
        let r = b.laws_on(&c);
        prop_assert!(r.all(), "{:?}", r.entries());
    }

    #[test]
    fn boundaries_square_to_zero_on_random_chains(xs in prop::collection::vec(prop::option::weighted(0.5, coeff()), 64)) {
        let a = upper_triangular::<Q>();
        let (d2, d1) = (bar_boundary(&a, 3).unwrap(), bar_boundary(&a, 2).unwrap());
        prop_assert!(d1.apply(&d2.apply(&restrict(&xs, d2.cols()))).is_empty());

        let r = dual_numbers::<Q>();
        let m = ModulePresentation::regular(&r);
        let (d2, d1) = (hochschild_boundary(&r, &m, 3).unwrap(), hochschild_boundary(&r, &m, 2).unwrap());
        prop_assert!(d1.apply(&d2.apply(&restrict(&xs, d2.cols()))).is_empty());

        let g = sl2::<Q>();
        let adj = ModulePresentation::regular(&g);
        let (d2, d1) = (chevalley_boundary(&g, Some(&adj), 3).unwrap(), chevalley_boundary(&g, Some(&adj), 2).unwrap());
        prop_assert!(d1.apply(&d2.apply(&restrict(&xs, d2.cols()))).is_empty());

        let h = aff1::<Q>();
        let (d2, d1) = (koszul_boundary(&h, 3, 2).unwrap(), koszul_boundary(&h, 3, 1).unwrap());
        prop_assert!(d1.apply(&d2.apply(&restrict(&xs, d2.cols()))).is_empty());
    }
}
