use proptest::prelude::*;
use superorbit_core::algebra::{build_algebra, parse_rational, realize, AlgebraSpec};
use superorbit_core::characters::{decompose, exterior_character, levi_character, levi_weyl_dim, Levi, WeightPolynomial};
use superorbit_core::invariants::{k_formula, labels, Oracle};
use superorbit_core::linalg::{rat, SparseVec};
use superorbit_core::parabolic::{all_gl_degree_maps, parabolic_from_degrees};

fn small_specs() -> Vec<AlgebraSpec> {
    let sigma = ["2", "-1", "-1"].map(|s| parse_rational(s).unwrap());
    vec![
        AlgebraSpec::Gl { m: 2, n: 2 },
        AlgebraSpec::Sl { m: 2, n: 1 },
        AlgebraSpec::Osp { m: 3, n: 2 },
        AlgebraSpec::Q { n: 3 },
        AlgebraSpec::Sq { n: 3 },
        AlgebraSpec::P { n: 2 },
        AlgebraSpec::Gamma { sigma },
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn evaluated_form_is_symmetric(pick in 0usize..7, coords in proptest::collection::vec(-3i64..=3, 24)) {
        let spec = &small_specs()[pick];
        let alg = build_algebra(spec).unwrap();
        let mut v = SparseVec::new();
        for (a, c) in coords.iter().enumerate().take(alg.even_dim()) {
            v.add_at(a, &rat(*c));
        }
        let x = alg.element_from_coords(v).unwrap();
        let m = alg.evaluate_form(&x).unwrap();
        prop_assert!(m.is_symmetric());
        prop_assert!(m.rank() <= alg.odd_dim());
    }

    #[test]
    fn levi_decomposition_is_exact(m in 1usize..=4, n in 1usize..=4, pick in any::<prop::sample::Index>()) {
        let maps = all_gl_degree_maps(m, n);
        let degrees = pick.get(&maps);
        let par = parabolic_from_degrees(&AlgebraSpec::Gl { m, n }, degrees).unwrap();
        let levi = Levi::of(&par).unwrap();
        let chi = exterior_character(&par).unwrap();
        let mut rebuilt = WeightPolynomial::zero(m + n);
        let mut dim = 0;
        for (lambda, mult) in decompose(&chi, &levi).unwrap() {
            prop_assert!(lambda.is_dominant());
            dim += mult * levi_weyl_dim(&levi, &lambda).unwrap();
            rebuilt.add_scaled(&levi_character(&levi, &lambda).unwrap(), mult as i64);
        }
        prop_assert_eq!(dim as i64, chi.dimension());
        prop_assert_eq!(rebuilt, chi);
    }
}

#[test]
fn exterior_dimension_is_two_to_the_c1() {
    for m in 1..=4 {
        for n in 1..=4 {
            for degrees in all_gl_degree_maps(m, n) {
                let par = parabolic_from_degrees(&AlgebraSpec::Gl { m, n }, &degrees).unwrap();
                assert_eq!(exterior_character(&par).unwrap().dimension(), 1 << par.c1, "{degrees:?}");
            }
        }
    }
}

#[test]
fn odd_rank_is_the_odd_orbit_codimension() {
    let mut specs = Vec::new();
    for (m, n) in [(1, 1), (2, 1), (2, 2), (3, 2), (3, 3)] {
        specs.push(AlgebraSpec::Gl { m, n });
        specs.push(AlgebraSpec::Sl { m, n });
    }
    for (m, n) in [(1, 2), (2, 2), (3, 2), (4, 2), (2, 4), (4, 4)] {
        specs.push(AlgebraSpec::Osp { m, n });
    }
    for spec in &specs {
        if matches!(spec, AlgebraSpec::Sl { m, n } if m == n) {
            continue;
        }
        for label in labels(spec).unwrap() {
            let (alg, x) = realize(spec, &label).unwrap();
            let k = alg.evaluate_form(&x).unwrap().rank();
            let (_, odd_centralizer) = alg.centralizer_dims(&x).unwrap();
            assert_eq!(k, alg.odd_dim() - odd_centralizer, "{spec} {label}");
        }
    }
}

#[test]
fn rank_bounds_and_parity() {
    let mut specs = small_specs();
    specs.extend([
        AlgebraSpec::Gl { m: 3, n: 2 },
        AlgebraSpec::Osp { m: 2, n: 4 },
        AlgebraSpec::Osp { m: 5, n: 4 },
        AlgebraSpec::Q { n: 4 },
        AlgebraSpec::P { n: 3 },
    ]);
    for spec in &specs {
        let oracle = Oracle::new(spec).unwrap();
        for label in labels(spec).unwrap() {
            let k = oracle.k(&label).unwrap();
            assert!(k <= spec.odd_dim());
            assert_eq!(k == 0, label.is_zero_orbit(), "{spec} {label}");
            assert_eq!(k, k_formula(spec, &label).unwrap(), "{spec} {label}");
            match spec {
                AlgebraSpec::Gl { .. } | AlgebraSpec::Sl { .. } | AlgebraSpec::Osp { m: 2, .. } => {
                    assert_eq!(k % 2, 0, "{spec} {label}")
                }
                _ => {}
            }
        }
    }
}
