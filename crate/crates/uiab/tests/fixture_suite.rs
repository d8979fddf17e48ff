use std::time::Instant;

use uiab::bialgebra::{check_axioms, check_involutivity, check_loday_ronco, check_opposite_from_bivector, first_axiom_failure, lambda_eta};
use uiab::fixtures::{bialgebra, circle_bivector, BIALGEBRA_FIXTURES, DEFAULT_WINDOW};
use uiab::{Ring, Status};

fn rings() -> [Ring; 3] {
    [Ring::Integers, Ring::Rationals, Ring::prime_field(5).unwrap()]
}

#[test]
fn all_fixtures_pass_on_every_ring() {
    let start = Instant::now();
    for ring in rings() {
        for name in BIALGEBRA_FIXTURES {
            let inst = bialgebra(name, DEFAULT_WINDOW, ring).unwrap();
            let r = check_axioms(&inst);
            for c in &r.checks {
                assert!(c.passed(), "{name} over {ring}: {c:?}");
                assert_eq!(c.excluded, 0, "{name}: {}", c.name);
            }
        }
    }
    eprintln!("suite took {:?}", start.elapsed());
}

#[test]
fn opposite_coproducts_from_bivector() {
    for ring in rings() {
        for (p, m) in [("lambda-s1-plus", "lambda-s1-minus"), ("omega-s1-plus", "omega-s1-minus")] {
            let plus = bialgebra(p, DEFAULT_WINDOW, ring).unwrap();
            let minus = bialgebra(m, DEFAULT_WINDOW, ring).unwrap();
            let c = circle_bivector(&plus).unwrap();
            let r = check_opposite_from_bivector(&plus, &minus, &c).unwrap();
            assert_eq!(r.status, Status::Pass, "{p}: {r:?}");
            assert_eq!(r.excluded, 0);
        }
    }
}

#[test]
fn involutivity_and_loday_ronco() {
    let s3 = bialgebra("lambda-s3", DEFAULT_WINDOW, Ring::Integers).unwrap();
    assert_eq!(check_involutivity(&s3).status, Status::Pass);
    let s1 = bialgebra("lambda-s1-plus", DEFAULT_WINDOW, Ring::Integers).unwrap();
    assert_eq!(check_involutivity(&s1).status, Status::Pass);
    let o3 = bialgebra("omega-s3", DEFAULT_WINDOW, Ring::Integers).unwrap();
    let r = check_involutivity(&o3);
    assert_eq!(r.status, Status::NotApplicable, "{r:?}");
    for name in ["omega-s1-plus", "omega-s1-minus", "omega-s3"] {
        let i = bialgebra(name, DEFAULT_WINDOW, Ring::Integers).unwrap();
        let r = check_loday_ronco(&i).unwrap();
        assert_eq!(r.status, Status::Pass, "{name} {r:?} {}", lambda_eta(&i).unwrap());
    }
    assert!(check_loday_ronco(&s3).is_err());
}

#[test]
fn every_sign_flip_is_detected() {
    let start = Instant::now();
    for name in BIALGEBRA_FIXTURES {
        let inst = bialgebra(name, DEFAULT_WINDOW, Ring::Integers).unwrap();
        let consts = inst.structure_constants();
        for (map, input, key) in &consts {
            let m = inst.sign_flipped(*map, *input, key);
            let f = first_axiom_failure(&m);
            assert!(f.is_some(), "{name}: undetected {}", inst.describe_constant(*map, *input, key));
        }
        eprintln!("{name}: {} mutants", consts.len());
    }
    eprintln!("mutation took {:?}", start.elapsed());
}
