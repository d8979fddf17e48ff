mod common;

use std::sync::Arc;

use proptest::prelude::*;
use uiab::chain::{graded_commutator, homology, ChainComplex};
use uiab::{BasisElement, ExactMatrix, GradedMap, GradedModule, Ring, Scalar, TensorElement, Vector};

fn module(ring: Ring, prefix: &str, degrees: &[i64]) -> Arc<GradedModule> {
    let basis = degrees.iter().enumerate().map(|(i, &d)| BasisElement::new(format!("{prefix}{i}"), d)).collect();
    Arc::new(GradedModule::new(ring, basis).unwrap())
}

/// Homogeneous map of degree `d`; coefficients are consumed from `coeffs` cyclically.
fn map(src: &Arc<GradedModule>, tgt: &Arc<GradedModule>, d: i64, coeffs: &[i64]) -> GradedMap {
    let ring = src.ring();
    let mut k = 0;
    let images: Vec<Vector> = (0..src.len())
        .map(|i| {
            let mut v = Vector::new();
            for &j in tgt.in_degree(src.degree(i) + d) {
                let c = coeffs[k % coeffs.len()];
                k += 1;
                if c != 0 {
                    v.insert(j, ring.from_int(c));
                }
            }
            v
        })
        .collect();
    GradedMap::from_images(src.clone(), tgt.clone(), d, &images).unwrap()
}

fn degrees() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-2i64..=2, 1..=4)
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 1..=24)
}

fn ring() -> impl Strategy<Value = Ring> {
    prop_oneof![Just(Ring::Integers), Just(Ring::Rationals), Just(Ring::PrimeField(5))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn koszul_interchange(
        r in ring(), da in degrees(), db in degrees(), dc in degrees(), dd in degrees(), de in degrees(), df in degrees(),
        gf in -1i64..=1, gg in -1i64..=1, gh in -1i64..=1, gk in -1i64..=1, cs in coeffs(),
    ) {
        let (a, b, c) = (module(r, "a", &da), module(r, "b", &db), module(r, "c", &dc));
        let (d, e, f) = (module(r, "d", &dd), module(r, "e", &de), module(r, "f", &df));
        let h = map(&a, &b, gh, &cs);
        let fm = map(&b, &c, gf, &cs[1..].iter().chain(&cs[..1]).copied().collect::<Vec<_>>());
        let k = map(&d, &e, gk, &cs);
        let g = map(&e, &f, gg, &cs.iter().rev().copied().collect::<Vec<_>>());
        let lhs = GradedMap::tensor_map(&fm, &g).unwrap().compose(&GradedMap::tensor_map(&h, &k).unwrap()).unwrap();
        let rhs = GradedMap::tensor_map(&fm.compose(&h).unwrap(), &g.compose(&k).unwrap())
            .unwrap()
            .scale(&r.sign(gg * gh));
        prop_assert_eq!(lhs.images(), rhs.images());
    }

    #[test]
    fn dual_reverses_composition(
        r in ring(), da in degrees(), db in degrees(), dc in degrees(), gf in -2i64..=2, gg in -2i64..=2, cs in coeffs(),
    ) {
        let (a, b, c) = (module(r, "a", &da), module(r, "b", &db), module(r, "c", &dc));
        let g = map(&a, &b, gg, &cs);
        let f = map(&b, &c, gf, &cs.iter().rev().copied().collect::<Vec<_>>());
        let lhs = f.compose(&g).unwrap().dual_map();
        let rhs = g.dual_map().compose(&f.dual_map()).unwrap().scale(&r.sign(gf * gg));
        prop_assert_eq!(lhs.images(), rhs.images());
    }

    #[test]
    fn twist_is_an_involution(r in ring(), da in degrees(), db in degrees(), cs in coeffs()) {
        let (a, b) = (module(r, "a", &da), module(r, "b", &db));
        let mut terms = std::collections::BTreeMap::new();
        let mut k = 0;
        for i in 0..a.len() {
            for j in 0..b.len() {
                if a.degree(i) + b.degree(j) == a.degree(0) + b.degree(0) {
                    let c = r.from_int(cs[k % cs.len()]);
                    k += 1;
                    if !c.is_zero() {
                        terms.insert(vec![i, j], c);
                    }
                }
            }
        }
        let t = TensorElement::new(vec![a.clone(), b.clone()], terms).unwrap();
        prop_assert_eq!(t.twist().unwrap().twist().unwrap(), t);
    }

    #[test]
    fn commutator_squares_to_zero(
        r in ring(), n0 in 1usize..=3, n1 in 1usize..=3, n2 in 1usize..=3, cs in coeffs(), hs in coeffs(),
    ) {
        // d only leaves even degrees, so d² = 0 automatically.
        let mut degs = vec![0; n0];
        degs.extend(vec![1; n1]);
        degs.extend(vec![2; n2]);
        let m = module(r, "x", &degs);
        let full = map(&m, &m, -1, &cs);
        let images: Vec<Vector> =
            (0..m.len()).map(|i| if m.degree(i) % 2 == 0 { full.apply_basis(i) } else { Vector::new() }).collect();
        let d = GradedMap::from_images(m.clone(), m.clone(), -1, &images).unwrap();
        prop_assert!(d.compose(&d).unwrap().is_zero());
        let h = map(&m, &m, 1, &hs);
        let dh = graded_commutator(&d, &d, &h).unwrap();
        prop_assert!(graded_commutator(&d, &d, &dh).unwrap().is_zero());

        // Euler characteristic of homology equals that of the chain groups over a field.
        if r.is_field() {
            let c = ChainComplex::new(m, d).unwrap();
            prop_assert_eq!(homology(&c).unwrap().euler_characteristic(), c.euler_characteristic());
        }
    }

    #[test]
    fn rank_plus_nullity(
        r in prop_oneof![Just(Ring::Rationals), Just(Ring::PrimeField(5)), Just(Ring::PrimeField(2))],
        rows in 1usize..=6, cols in 1usize..=6, cs in prop::collection::vec(-4i64..=4, 36),
    ) {
        let entries: Vec<Scalar> = (0..rows * cols).map(|k| r.from_int(cs[k])).collect();
        let m = ExactMatrix::from_entries(r, rows, cols, entries).unwrap();
        let ker = m.kernel_basis();
        prop_assert_eq!(m.rank() + ker.len(), cols);
        for v in &ker {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn smith_normal_form_matches_oracle(
        rows in 1usize..=8, cols in 1usize..=8, cs in prop::collection::vec(-9i64..=9, 64),
    ) {
        let m: Vec<Vec<i64>> = (0..rows).map(|i| cs[i * 8..i * 8 + cols].to_vec()).collect();
        prop_assert_eq!(common::snf_violation(&m), None);
    }
}

#[test]
fn bareiss_oracle_sanity() {
    let m = common::to_big(&[vec![2, 4], vec![1, 3]]);
    assert_eq!(common::bareiss(&m), (2, Some(2.into())));
    let s = common::to_big(&[vec![1, 2, 3], vec![2, 4, 6]]);
    assert_eq!(common::bareiss(&s).0, 1);
}
