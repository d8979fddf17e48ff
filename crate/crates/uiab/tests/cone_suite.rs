use uiab::bialgebra::StructureMap;
use uiab::cone::{
    assemble_cone_product, assoc_uir_identity, check_assoc_implies_uir, check_window_stability, cone_report,
    derive_secondary_ops, A2PlusData, ConeProduct,
};
use uiab::fixtures::{a2_loop_circle, a2_loop_sphere};
use uiab::{Ring, Status, TensorElement};

fn product(d: &A2PlusData) -> ConeProduct {
    assemble_cone_product(&derive_secondary_ops(d).unwrap()).unwrap()
}

#[test]
fn cone_reports_pass() {
    for data in [a2_loop_sphere(12, Ring::Integers).unwrap(), a2_loop_circle(12, Ring::Integers).unwrap()] {
        let r = cone_report(&data).unwrap();
        for c in &r.checks {
            assert_eq!(c.status, Status::Pass, "{c:?}");
            assert_eq!(c.excluded, 0, "{}", c.name);
        }
    }
}

#[test]
fn package_builds() {
    let d = a2_loop_circle(12, Ring::Integers).unwrap();
    let pkg = derive_secondary_ops(&d).unwrap();
    let p = assemble_cone_product(&pkg).unwrap();
    assert_eq!(p.module.len(), 100);
}

#[test]
fn identity_holds_for_perturbed_coproduct() {
    let data = a2_loop_sphere(12, Ring::Integers).unwrap();
    let inst = data.instance().clone();
    let u2 = inst.module().index_of("U^2").unwrap();
    let key = inst.lambda(u2).unwrap().terms().keys().next().unwrap().clone();
    let bent = inst.sign_flipped(StructureMap::Lambda, u2, &key);
    let m = bent.module().clone();
    let z2 = TensorElement::zero(vec![m.clone(), m.clone()]);
    let z3 = TensorElement::zero(vec![m.clone(), m.clone(), m]);
    let d = A2PlusData::new(bent, z2.clone(), z2, z3, 3).unwrap();
    let pkg = derive_secondary_ops(&d).unwrap();
    let p = assemble_cone_product(&pkg).unwrap();
    let r = assoc_uir_identity(&pkg, &p).unwrap();
    assert!(r.iter().all(|c| c.status == Status::Pass), "{r:?}");
    let note = &r[3].notes[0];
    assert!(!note.contains(" 0 inputs"), "{note}");
    let pre = check_assoc_implies_uir(&pkg, &p).unwrap();
    assert_eq!(pre[0].status, Status::Fail);
    assert!(pre[0].witness.is_some());
}

#[test]
fn broken_bivector_fails_precondition() {
    let data = a2_loop_circle(12, Ring::Integers).unwrap();
    let inst = data.instance().clone();
    let m = inst.module().clone();
    let z2 = TensorElement::zero(vec![m.clone(), m.clone()]);
    let z3 = TensorElement::zero(vec![m.clone(), m.clone(), m]);
    let d = A2PlusData::new(inst, z2.clone(), z2, z3, 1).unwrap();
    let pkg = derive_secondary_ops(&d).unwrap();
    let p = assemble_cone_product(&pkg).unwrap();
    let r = check_assoc_implies_uir(&pkg, &p).unwrap();
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].status, Status::Fail);
}

#[test]
fn cone_product_is_window_independent() {
    for ring in [Ring::Integers, Ring::PrimeField(5)] {
        let pairs = [
            (a2_loop_sphere(12, ring).unwrap(), a2_loop_sphere(15, ring).unwrap()),
            (a2_loop_circle(12, ring).unwrap(), a2_loop_circle(15, ring).unwrap()),
        ];
        for (small, large) in pairs {
            let r = check_window_stability(&product(&small), &product(&large));
            assert_eq!(r.status, Status::Pass, "{r:?}");
            assert_eq!(r.excluded, 0);
            assert!(r.checked > 0);
        }
    }
}
