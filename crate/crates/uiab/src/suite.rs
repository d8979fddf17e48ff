//! Turns validated scenarios and catalog fixtures into reports.

use std::time::Instant;

use crate::bialgebra::{
    check_axioms, check_cc_implies_antisymmetry, check_cocommutativity, check_commutativity, check_involutivity,
    check_bivector_is_lambda_eta, check_loday_ronco, check_opposite_from_bivector, lambda_eta, UiabInstance,
};
use crate::chain::{homology, mapping_cone, transition_automorphism, ChainComplex};
use crate::cone::{cone_report, A2PlusData};
use crate::error::{Error, Result};
use crate::exact::Ring;
use crate::fixtures::{self, circle_bivector, Fixture};
use crate::report::{CheckResult, Report, Section, Status};
use crate::scenario::{empty_scenario, export_instance, Loaded, Scenario, Task};

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Include mapping cones and transition maps in homology sections.
    pub cone_homology: bool,
    /// Record wall-clock time per section. Reports stop being reproducible.
    pub timing: bool,
}

/// Scenario form of a catalog fixture, including the data for every check
/// that applies to it.
pub fn fixture_scenario(name: &str, window: i64, ring: Ring) -> Result<Scenario> {
    match fixtures::by_name(name, window, ring)? {
        Fixture::TStar(t) => Ok(empty_scenario(name, ring)
            .with_complex("A", &t.a)
            .with_complex("M", &t.m)
            .with_chain_map("c", "M", "A", t.c.map(), Some(&t.csec))
            .with_checks(&[Task::Homology])),
        Fixture::Bialgebra(inst) => {
            let mut tasks = vec![Task::Axioms, Task::Properties, Task::LodayRonco];
            let mut sc = export_instance(&inst);
            if let Some(base) = name.strip_suffix("-plus") {
                let minus = fixtures::bialgebra(&format!("{base}-minus"), window, ring)?;
                sc = sc.with_bivector("c", &circle_bivector(&inst)?).with_opposite(&minus, "c");
                tasks.push(Task::Opposite);
            }
            let cone = match name {
                "lambda-s3" => Some(fixtures::a2_loop_sphere(window, ring)?),
                "lambda-s1-plus" => Some(fixtures::a2_loop_circle(window, ring)?),
                _ => None,
            };
            if let Some(d) = cone {
                sc = sc.with_cone(d.n(), d.c0(), d.q0(), d.b());
                tasks.push(Task::Cone);
            }
            Ok(sc.with_checks(&tasks))
        }
    }
}

fn need_instance<'a>(l: &'a Loaded, what: &str) -> Result<&'a UiabInstance> {
    l.instance
        .as_ref()
        .ok_or_else(|| Error::Hypothesis(format!("{what} needs a bialgebra, and {:?} defines none", l.name)))
}

/// Runs `tasks` in order; each task becomes one or more sections.
pub fn run(l: &Loaded, tasks: &[Task], opts: RunOptions) -> Result<Report> {
    let mut sections = Vec::new();
    for &task in tasks {
        let start = Instant::now();
        let mut out = match task {
            Task::Axioms => vec![check_axioms(need_instance(l, "axioms")?)],
            Task::Properties => vec![properties(need_instance(l, "properties")?)],
            Task::LodayRonco => vec![loday_ronco(need_instance(l, "loday_ronco")?)],
            Task::Opposite => vec![opposite(l)?],
            Task::Cone => vec![cone(l)?],
            Task::Homology => homology_sections(l, opts.cone_homology)?,
        };
        if opts.timing {
            let ms = start.elapsed().as_millis() as u64;
            for s in &mut out {
                s.elapsed_ms = Some(ms);
            }
        }
        sections.extend(out);
    }
    Ok(Report::new(sections))
}

fn section(subject: String, ring: Ring, checks: Vec<CheckResult>) -> Section {
    Section::new(subject, ring.name(), checks)
}

fn not_applicable(name: &str, why: impl Into<String>) -> CheckResult {
    CheckResult::new(name, Status::NotApplicable).with_note(why)
}

fn properties(inst: &UiabInstance) -> Section {
    let mut checks = Vec::new();
    match lambda_eta(inst) {
        Ok(le) => {
            let sign = inst.ring().sign(inst.lambda_degree());
            let symmetric = le.twist().map(|t| t == le.scale(&sign)).unwrap_or(false);
            checks.push(CheckResult::pass("λη").with_note(format!("λη = {}", le.render())));
            checks.push(CheckResult::from_bool("τλη = (-1)^|λ| λη", symmetric));
        }
        Err(e) => checks.push(not_applicable("λη", e.to_string())),
    }
    checks.push(check_commutativity(inst));
    checks.push(check_cocommutativity(inst));
    checks.push(check_involutivity(inst));
    match check_cc_implies_antisymmetry(inst) {
        Ok(cs) => checks.extend(cs),
        Err(e) => checks.push(not_applicable("anti-symmetry from (co)commutativity", e.to_string())),
    }
    section(format!("properties of {}", inst.name()), inst.ring(), checks)
}

fn loday_ronco(inst: &UiabInstance) -> Section {
    let c = match check_loday_ronco(inst) {
        Ok(c) => c,
        Err(Error::Hypothesis(m)) => not_applicable("Loday-Ronco relation", m),
        Err(e) => CheckResult::new("Loday-Ronco relation", Status::Fail).with_note(e.to_string()),
    };
    section(format!("Loday-Ronco relation on {}", inst.name()), inst.ring(), vec![c])
}

fn opposite(l: &Loaded) -> Result<Section> {
    let inst = need_instance(l, "opposite")?;
    let (minus, name) =
        l.opposite.as_ref().ok_or_else(|| Error::Hypothesis(format!("{:?} has no opposite coproduct", l.name)))?;
    let c = &l.bivectors[name];
    let checks = vec![
        check_opposite_from_bivector(inst, minus, c)?,
        check_bivector_is_lambda_eta(minus, c)?.with_note(format!("{name} = {}", c.render())),
    ];
    Ok(section(format!("opposite coproduct of {}", inst.name()), inst.ring(), checks))
}

fn cone(l: &Loaded) -> Result<Section> {
    let inst = need_instance(l, "cone")?;
    let c = l.cone.as_ref().ok_or_else(|| Error::Hypothesis(format!("{:?} has no cone data", l.name)))?;
    match A2PlusData::new(inst.clone(), c.c0.clone(), c.q0.clone(), c.b.clone(), c.n) {
        Ok(data) => cone_report(&data),
        Err(e) => Ok(section(
            format!("cone of {}", inst.name()),
            inst.ring(),
            vec![CheckResult::new("cone data hypotheses", Status::Fail).with_note(e.to_string())],
        )),
    }
}

fn homology_check(name: &str, c: &ChainComplex) -> Result<CheckResult> {
    let h = homology(c)?;
    Ok(CheckResult::pass(format!("homology of {name}"))
        .with_note(h.to_string())
        .with_note(format!("Euler characteristic {}", h.euler_characteristic())))
}

fn homology_sections(l: &Loaded, with_cone: bool) -> Result<Vec<Section>> {
    let mut out = Vec::new();
    if let Some(inst) = &l.instance {
        let d = inst.differential().cloned();
        let c = match d {
            Some(d) => ChainComplex::new(inst.module().clone(), d)?,
            None => ChainComplex::with_zero_differential(inst.module().clone()),
        };
        out.push(section(format!("homology of {}", inst.name()), l.ring, vec![homology_check(inst.name(), &c)?]));
    }
    if l.complexes.is_empty() && l.instance.is_none() {
        return Err(Error::Hypothesis(format!("{:?} defines no chain complexes", l.name)));
    }
    let mut checks = Vec::new();
    for (name, c) in &l.complexes {
        checks.push(homology_check(name, c)?);
    }
    for (name, f) in &l.chain_maps {
        let zero = f.map.map().is_zero();
        checks.push(CheckResult::pass(format!("{name} is a chain map")).with_note(if zero {
            format!("{name} vanishes")
        } else {
            format!("{name} is nonzero")
        }));
        if !with_cone {
            continue;
        }
        let cone = mapping_cone(&f.map)?;
        checks.push(homology_check(&format!("Cone({name})"), &cone.complex)?);
        let Some(sec) = &f.secondary else { continue };
        let t = transition_automorphism(&cone, sec)?;
        checks.push(CheckResult::pass("transition Φ is a chain automorphism"));
        checks.push(CheckResult::from_bool("(Φ - id)² = 0", t.unipotent));
        let mut action = CheckResult::pass("action of Φ on homology").with_note(if t.acts_trivially {
            "Φ_* = id".to_string()
        } else {
            "Φ_* ≠ id (nontrivial)".to_string()
        });
        for (k, m) in &t.homology_action {
            if m.rows() > 0 {
                let rows: Vec<String> = (0..m.rows())
                    .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect::<Vec<_>>().join(" "))
                    .collect();
                action = action.with_note(format!("degree {k}: [{}]", rows.join("; ")));
            }
        }
        checks.push(action);
    }
    if !checks.is_empty() {
        out.push(section(format!("homology of {}", l.name), l.ring, checks));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_scenarios_round_trip() {
        for name in fixtures::BIALGEBRA_FIXTURES {
            let inst = fixtures::bialgebra(name, 7, Ring::Integers).unwrap();
            let sc = fixture_scenario(name, 7, Ring::Integers).unwrap();
            let back = Scenario::parse(&sc.to_json()).unwrap();
            assert_eq!(back, sc);
            assert_eq!(back.validate(None).unwrap().instance.unwrap(), inst, "{name}");
        }
    }

    #[test]
    fn tstar_reports_nontrivial_action() {
        let l = fixture_scenario("tstar-s1", 12, Ring::Integers).unwrap().validate(None).unwrap();
        let r = run(&l, &[Task::Homology], RunOptions { cone_homology: true, timing: false }).unwrap();
        assert!(r.all_passed());
        assert!(r.to_markdown().contains("Φ_* ≠ id"));
        let plain = run(&l, &[Task::Homology], RunOptions::default()).unwrap();
        assert!(!plain.to_markdown().contains("Φ_*"));
    }

    #[test]
    fn missing_bialgebra_is_an_error() {
        let l = fixture_scenario("tstar-s1", 12, Ring::Integers).unwrap().validate(None).unwrap();
        assert!(matches!(run(&l, &[Task::Axioms], RunOptions::default()), Err(Error::Hypothesis(_))));
    }
}
