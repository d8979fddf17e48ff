use uiab::fixtures::{bialgebra, random_instance, BIALGEBRA_FIXTURES, DEFAULT_WINDOW};
use uiab::scenario::{export_instance, Scenario, Task};
use uiab::suite::{fixture_scenario, run, RunOptions};
use uiab::{check_axioms, Error, Ring, Status};

const GOLDEN: &str = include_str!("golden/random-0-3.json");

#[test]
fn random_instance_matches_golden() {
    let i = random_instance(0, 3, 0, -1, Ring::Integers).unwrap();
    assert_eq!(export_instance(&i).to_json(), GOLDEN);
    let back = Scenario::parse(GOLDEN).unwrap().validate(None).unwrap().instance.unwrap();
    assert_eq!(back, i);
}

#[test]
fn zero_product_breaks_unit() {
    let mut sc = Scenario::parse(GOLDEN).unwrap();
    sc.mu.as_mut().unwrap().table.clear();
    let inst = sc.validate(None).unwrap().instance.unwrap();
    let r = check_axioms(&inst);
    let unit = r.checks.iter().find(|c| c.name == "unit").unwrap();
    assert_eq!(unit.status, Status::Fail);
    assert!(unit.witness.is_some());
}

#[test]
fn fixtures_round_trip_over_every_ring() {
    for ring in [Ring::Integers, Ring::Rationals, Ring::PrimeField(5)] {
        for name in BIALGEBRA_FIXTURES {
            let inst = bialgebra(name, DEFAULT_WINDOW, ring).unwrap();
            let text = export_instance(&inst).to_json();
            let back = Scenario::parse(&text).unwrap().validate(None).unwrap();
            assert_eq!(back.instance.unwrap(), inst, "{name} over {ring}");
        }
    }
}

#[test]
fn full_fixture_scenarios_round_trip() {
    for name in uiab::fixtures::CATALOG {
        let sc = fixture_scenario(name, 8, Ring::Integers).unwrap();
        let text = sc.to_json();
        assert_eq!(Scenario::parse(&text).unwrap(), sc, "{name}");
        assert_eq!(Scenario::parse(&text).unwrap().to_json(), text);
    }
}

#[test]
fn scenario_and_fixture_reports_agree() {
    let sc = fixture_scenario("lambda-s1-plus", 8, Ring::Integers).unwrap();
    let direct = check_axioms(&bialgebra("lambda-s1-plus", 8, Ring::Integers).unwrap());
    let loaded = Scenario::parse(&sc.to_json()).unwrap().validate(None).unwrap();
    let r = run(&loaded, &[Task::Axioms], RunOptions::default()).unwrap();
    assert_eq!(r.sections, vec![direct]);
}

#[test]
fn ring_override_rejects_fractions() {
    let sc = fixture_scenario("omega-s1-plus", 6, Ring::Rationals).unwrap();
    let mut text = sc.to_json();
    text = text.replacen("[\"1\", \"1\"]", "[\"1/2\", \"1\"]", 1);
    let parsed = Scenario::parse(&text).unwrap();
    assert!(parsed.validate(None).is_ok());
    assert!(matches!(parsed.validate(Some(Ring::Integers)), Err(Error::Schema { .. })));
}

#[test]
fn bivector_degree_is_validated() {
    let mut sc = fixture_scenario("lambda-s1-plus", 6, Ring::Integers).unwrap();
    sc.bivectors.insert("c".into(), vec![("1".into(), "1⊗1".into())]);
    let Err(Error::Schema { path, .. }) = sc.validate(None) else { panic!("accepted") };
    assert_eq!(path, "opposite.bivector");
}
