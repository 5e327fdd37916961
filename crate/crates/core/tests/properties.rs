use hom_hnn::cli::format::{parse, render, AlgebraFile};
use hom_hnn::exactlin::{int, Matrix, Scalar};
use hom_hnn::freepres::{
    check_pbw_injectivity, enveloping, normalize_term, poly_add, poly_scale, FreeConfig, Poly, PresentedAlgebraTrunc,
    Term,
};
use hom_hnn::generate::Generator;
use hom_hnn::hnn::{build_q, embedding_certificate_assoc, left_mult_op};
use hom_hnn::homalg::{
    check_hom_associative, check_hom_lie, commutator_hom_lie, HomAssociativeAlgebra, Tensor3, TwistedAlgebra,
};
use num_traits::Zero;
use proptest::prelude::*;

fn permutation(perm: &[usize]) -> Matrix {
    let n = perm.len();
    let mut rows = vec![vec![int(0); n]; n];
    for (i, &p) in perm.iter().enumerate() {
        rows[p][i] = int(1);
    }
    Matrix::from_rows(rows).unwrap()
}

fn shuffled(n: usize, key: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut k = key;
    for i in (1..n).rev() {
        p.swap(i, (k % (i as u64 + 1)) as usize);
        k /= i as u64 + 1;
    }
    p
}

fn term(depth: u32) -> impl Strategy<Value = Term> {
    let leaf = (0usize..2, any::<bool>()).prop_map(|(i, t)| if t { Term::twisted_gen(i) } else { Term::gen(i) });
    leaf.prop_recursive(depth, 8, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Term::twist),
            (inner.clone(), inner).prop_map(|(a, b)| a.mul(b)),
        ]
    })
}

fn assoc_oracle(n: usize, t: &Tensor3) -> bool {
    let e = |i: usize| {
        let mut v = vec![int(0); n];
        v[i] = int(1);
        v
    };
    (0..n).all(|i| {
        (0..n).all(|j| {
            (0..n).all(|k| {
                let left = t.apply(&t.apply(&e(i), &e(j)), &e(k));
                let right = t.apply(&e(i), &t.apply(&e(j), &e(k)));
                left == right
            })
        })
    })
}

fn free_algebra(n: usize, degree: usize) -> PresentedAlgebraTrunc {
    PresentedAlgebraTrunc::free(FreeConfig {
        names: (0..n).map(|i| format!("g{i}")).collect(),
        generator_twist: Matrix::diagonal(&(0..n).map(|i| int(if i == 0 { 1 } else { -1 })).collect::<Vec<_>>()),
        degree,
        unital: false,
        bound: None,
    })
    .unwrap()
}

fn poly_from(table_len: usize, coeffs: &[(usize, i64)]) -> Poly {
    let mut p = Poly::new();
    for &(id, c) in coeffs {
        if c != 0 {
            p = poly_add(&p, &poly_scale(&int(c), &[(id % table_len, int(1))].into_iter().collect()));
        }
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn identity_twist_hom_associativity_is_classical(entries in proptest::collection::vec(-1i64..2, 8)) {
        let mut t = Tensor3::square(2);
        for (idx, &c) in entries.iter().enumerate() {
            t.set(idx / 4, (idx / 2) % 2, idx % 2, int(c));
        }
        let a = HomAssociativeAlgebra::new(Matrix::identity(2), t.clone(), None).unwrap();
        prop_assert_eq!(check_hom_associative(&a).passed("Hom-associativity"), assoc_oracle(2, &t));
    }

    #[test]
    fn report_is_stable_under_basis_permutation(seed in any::<u64>(), key in any::<u64>()) {
        let mut g = Generator::new(seed);
        let l = g.yau_twist_lie(4).unwrap();
        let p = permutation(&shuffled(l.dim(), key));
        prop_assert!(check_hom_lie(&l.change_basis(&p).unwrap()).pass());
        let a = g.yau_twist_assoc(4).unwrap();
        let mut broken = a.table().clone();
        let old = broken.get(0, 0, 0).clone();
        broken.set(0, 0, 0, old + int(1));
        if let Ok(b) = HomAssociativeAlgebra::new(a.twist().clone(), broken, None) {
            let q = permutation(&shuffled(b.dim(), key));
            prop_assert_eq!(check_hom_associative(&b).pass(), check_hom_associative(&b.change_basis(&q).unwrap()).pass());
        }
    }

    #[test]
    fn commutator_of_generated_algebra_is_hom_lie(seed in any::<u64>()) {
        let a = Generator::new(seed).yau_twist_assoc(4).unwrap();
        prop_assert!(check_hom_associative(&a).pass());
        prop_assert!(check_hom_lie(&commutator_hom_lie(&a).unwrap()).pass());
    }

    #[test]
    fn normalize_is_idempotent_and_twist_involutive(t in term(4)) {
        let n = normalize_term(&t);
        prop_assert!(n.is_normalized());
        prop_assert_eq!(normalize_term(&n), n.clone());
        prop_assert_eq!(normalize_term(&n.clone().twist().twist()), n);
    }

    #[test]
    fn reduce_is_idempotent(coeffs in proptest::collection::vec((0usize..200, -2i64..3), 0..6)) {
        let a = free_algebra(2, 3);
        let p = poly_from(a.table().len(), &coeffs);
        let r = a.reduce(&p);
        prop_assert_eq!(a.reduce(&r), r);
        for rel in a.ideal_rows() {
            prop_assert!(a.reduce(rel).is_empty());
        }
    }

    #[test]
    fn parse_render_round_trip(seed in any::<u64>()) {
        let mut g = Generator::new(seed);
        for f in [AlgebraFile::from_assoc(&g.yau_twist_assoc(3).unwrap()), AlgebraFile::from_lie(&g.yau_twist_lie(3).unwrap())] {
            let text = render(&f);
            let back = parse(&text).unwrap();
            prop_assert_eq!(render(&back), text);
            prop_assert_eq!(back, f);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn module_twist_is_involutive(seed in any::<u64>()) {
        if let Some(data) = Generator::new(seed).hnn_assoc_instance(3).unwrap() {
            let q = build_q(&data, 2).unwrap();
            prop_assert!(q.twist_is_involutive());
        }
    }

    #[test]
    fn left_multiplication_is_linear(seed in any::<u64>(), c in -3i64..4) {
        if let Some(data) = Generator::new(seed).hnn_assoc_instance(3).unwrap() {
            let q = build_q(&data, 1).unwrap();
            let n = data.a.dim();
            let u: Vec<Scalar> = (0..n).map(|i| int(i as i64 + 1)).collect();
            let v: Vec<Scalar> = (0..n).map(|i| int(if i % 2 == 0 { -1 } else { 2 })).collect();
            let w: Vec<Scalar> = u.iter().zip(&v).map(|(a, b)| a + int(c) * b).collect();
            let lu = left_mult_op(&q, &u).matrix;
            let lv = left_mult_op(&q, &v).matrix;
            let lw = left_mult_op(&q, &w).matrix;
            for i in 0..lw.rows() {
                for j in 0..lw.cols() {
                    let expected = &lu.row(i)[j] + int(c) * &lv.row(i)[j];
                    prop_assert!((&lw.row(i)[j] - expected).is_zero());
                }
            }
        }
    }

    #[test]
    fn assoc_certificate_is_monotone(seed in any::<u64>()) {
        if let Some(data) = Generator::new(seed).hnn_assoc_instance(3).unwrap() {
            let high = embedding_certificate_assoc(&data, 2).unwrap();
            if high.pass {
                prop_assert!(embedding_certificate_assoc(&data, 1).unwrap().pass);
            }
        }
    }

    #[test]
    fn enveloping_algebra_of_generated_lie(seed in any::<u64>()) {
        let l = Generator::new(seed).yau_twist_lie(3).unwrap();
        let e = enveloping(&l, 3).unwrap();
        prop_assert!(e.verification.pass());
        let high = check_pbw_injectivity(&e);
        let low = check_pbw_injectivity(&enveloping(&l, 2).unwrap());
        prop_assert!(!high.pass || low.pass);
    }
}
