//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uiab::bialgebra::{check_opposite_from_bivector, first_axiom_failure, StructureMap};
use uiab::cone::{
    assemble_cone_product, assoc_uir_identity, check_cone_associativity, check_closed_forms, derive_secondary_ops,
    A2PlusData,
};
use uiab::fixtures::{
    a2_loop_circle, a2_loop_sphere, bialgebra, circle_bivector, tstar_s1, BIALGEBRA_FIXTURES, CATALOG, DEFAULT_WINDOW,
};
use uiab::suite::{fixture_scenario, run, RunOptions};
use uiab::{check_axioms, lambda_eta, CheckResult, Report, Ring, Scalar, Status, TensorElement};

type Outcome = Result<String, String>;

fn rings() -> [Ring; 3] {
    [Ring::Integers, Ring::Rationals, Ring::PrimeField(5)]
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_pass(checks: &[CheckResult], what: &str) -> Result<usize, String> {
    let mut n = 0;
    for c in checks {
        ensure(c.passed() && c.excluded == 0, || format!("{what}: {} -> {c:?}", c.name))?;
        n += c.checked;
    }
    Ok(n)
}

fn strict(checks: &[CheckResult], what: &str) -> Result<usize, String> {
    let na = checks.iter().find(|c| c.status != Status::Pass);
    ensure(na.is_none(), || format!("{what}: {:?}", na.unwrap()))?;
    all_pass(checks, what)
}

fn fixtures_pass() -> Outcome {
    let start = Instant::now();
    let mut inputs = 0;
    for ring in rings() {
        for name in BIALGEBRA_FIXTURES {
            let inst = bialgebra(name, DEFAULT_WINDOW, ring).map_err(|e| e.to_string())?;
            inputs += all_pass(&check_axioms(&inst).checks, &format!("{name} over {ring}"))?;
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!("6 fixtures x 3 rings at N={DEFAULT_WINDOW}, {inputs} inputs, {:.2} s", t.as_secs_f64()))
}

fn lambda_eta_values() -> Outcome {
    let expected: [(&str, &[(i64, [&str; 2])]); 6] = [
        ("lambda-s3", &[]),
        ("omega-s3", &[]),
        ("lambda-s1-plus", &[(1, ["A", "1"]), (-1, ["1", "A"])]),
        ("lambda-s1-minus", &[(-1, ["A", "1"]), (1, ["1", "A"])]),
        ("omega-s1-plus", &[(1, ["1", "1"])]),
        ("omega-s1-minus", &[(-1, ["1", "1"])]),
    ];
    for ring in rings() {
        for (name, terms) in expected {
            let inst = bialgebra(name, DEFAULT_WINDOW, ring).map_err(|e| e.to_string())?;
            let m = inst.module().clone();
            let terms: Vec<(Scalar, Vec<&str>)> = terms.iter().map(|(c, p)| (ring.from_int(*c), p.to_vec())).collect();
            let want = TensorElement::from_names(vec![m.clone(), m], &terms).map_err(|e| e.to_string())?;
            let got = lambda_eta(&inst).map_err(|e| e.to_string())?;
            ensure(got == want, || format!("{name} over {ring}: λη = {}, expected {}", got.render(), want.render()))?;
        }
    }
    Ok("0, 0, ±(A⊗1 - 1⊗A), ±1⊗1 over Z, Q, GF(5)".into())
}

fn opposite_rebuilt() -> Outcome {
    let mut inputs = 0;
    for ring in rings() {
        for (p, m) in [("lambda-s1-plus", "lambda-s1-minus"), ("omega-s1-plus", "omega-s1-minus")] {
            let plus = bialgebra(p, DEFAULT_WINDOW, ring).map_err(|e| e.to_string())?;
            let minus = bialgebra(m, DEFAULT_WINDOW, ring).map_err(|e| e.to_string())?;
            let c = circle_bivector(&plus).map_err(|e| e.to_string())?;
            let r = check_opposite_from_bivector(&plus, &minus, &c).map_err(|e| e.to_string())?;
            inputs += all_pass(&[r], &format!("{p} over {ring}"))?;
        }
    }
    Ok(format!("λ₋ rebuilt from λ₊ and c on both circles, {inputs} inputs"))
}

fn cone_data() -> Result<[A2PlusData; 2], String> {
    Ok([
        a2_loop_sphere(DEFAULT_WINDOW, Ring::Integers).map_err(|e| e.to_string())?,
        a2_loop_circle(DEFAULT_WINDOW, Ring::Integers).map_err(|e| e.to_string())?,
    ])
}

fn closed_forms() -> Outcome {
    let mut blocks = 0;
    let mut triples = 0;
    for data in cone_data()? {
        let name = data.instance().name().to_string();
        let pkg = derive_secondary_ops(&data).map_err(|e| e.to_string())?;
        let p = assemble_cone_product(&pkg).map_err(|e| e.to_string())?;
        let forms = check_closed_forms(&pkg, &p);
        ensure(!forms.is_empty(), || format!("{name}: no closed-form checks"))?;
        blocks += strict(&forms, &name)?;
        let a = check_cone_associativity(&p);
        ensure(a.checked > 0, || format!("{name}: associativity checked nothing"))?;
        triples += strict(&[a], &name)?;
    }
    Ok(format!("closed forms agree on {blocks} entries; associative on {triples} triples (ΛS³, ΛS¹)"))
}

fn identity_holds() -> Outcome {
    let [s3, s1] = cone_data()?;
    let inst = s3.instance().clone();
    let u2 = inst.module().index_of("U^2").map_err(|e| e.to_string())?;
    let key = inst.lambda(u2).and_then(|t| t.terms().keys().next().cloned()).ok_or("λ(U^2) vanishes")?;
    let bent = inst.sign_flipped(StructureMap::Lambda, u2, &key);
    let m = bent.module().clone();
    let z2 = TensorElement::zero(vec![m.clone(), m.clone()]);
    let z3 = TensorElement::zero(vec![m.clone(), m.clone(), m]);
    let perturbed = A2PlusData::new(bent, z2.clone(), z2, z3, 3).map_err(|e| e.to_string())?;
    let mut inputs = 0;
    for (label, data) in [("ΛS³", s3), ("ΛS¹", s1), ("perturbed ΛS³", perturbed)] {
        let pkg = derive_secondary_ops(&data).map_err(|e| e.to_string())?;
        let p = assemble_cone_product(&pkg).map_err(|e| e.to_string())?;
        let r = assoc_uir_identity(&pkg, &p).map_err(|e| e.to_string())?;
        inputs += strict(&r, label)?;
    }
    Ok(format!("associator component equals the paired relation on ΛS³, ΛS¹ and a perturbed ΛS³, {inputs} inputs"))
}

fn transition() -> Outcome {
    for ring in rings() {
        let t = tstar_s1(ring).map_err(|e| e.to_string())?;
        ensure(t.c.map().is_zero(), || format!("c ≠ 0 over {ring}"))?;
        // A chain map with (Φ - id)² = 0 is invertible, with inverse 2·id - Φ.
        let tr = t.transition().map_err(|e| e.to_string())?;
        ensure(tr.unipotent, || format!("(Φ - id)² ≠ 0 over {ring}"))?;
        ensure(!tr.acts_trivially, || format!("Φ_* = id over {ring}"))?;
    }
    Ok("c = 0, Φ chain automorphism, (Φ - id)² = 0, Φ_* ≠ id over Z, Q, GF(5)".into())
}

fn smith_forms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let count = 1200;
    for k in 0..count {
        let (r, c) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        if let Some(v) = common::snf_violation(&rows) {
            return Err(format!("matrix #{k} {rows:?}: {v}"));
        }
    }
    Ok(format!("{count} random integer matrices up to 8x8: UMV = D, divisibility, rank matches Q elimination"))
}

fn sign_flips() -> Outcome {
    let mut total = 0;
    let mut witness = None;
    for name in BIALGEBRA_FIXTURES {
        let inst = bialgebra(name, DEFAULT_WINDOW, Ring::Integers).map_err(|e| e.to_string())?;
        for (map, input, key) in inst.structure_constants() {
            let what = inst.describe_constant(map, input, &key);
            let f = first_axiom_failure(&inst.sign_flipped(map, input, &key))
                .ok_or_else(|| format!("{name}: flipping {what} went undetected"))?;
            total += 1;
            if witness.is_none() {
                let w = f.witness.as_ref().map_or("no witness".to_string(), |w| {
                    format!("input {}: {} vs {}", w.input, w.lhs, w.rhs)
                });
                witness = Some(format!("{name}, flip {what}: {} fails at {w}", f.name));
            }
        }
    }
    Ok(format!("{total} mutants detected; e.g. {}", witness.unwrap_or_default()))
}

fn full_report() -> Result<String, String> {
    let opts = RunOptions { cone_homology: true, timing: false };
    let mut sections = Vec::new();
    for name in CATALOG {
        let l = fixture_scenario(name, DEFAULT_WINDOW, Ring::Integers)
            .and_then(|s| s.validate(None))
            .map_err(|e| e.to_string())?;
        sections.extend(run(&l, &l.checks, opts).map_err(|e| e.to_string())?.sections);
    }
    Ok(Report::new(sections).to_json())
}

fn reproducible() -> Outcome {
    let first = full_report()?;
    ensure(first == full_report()?, || "two runs differ".into())?;
    for threads in [1, 4] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| e.to_string())?;
        ensure(pool.install(full_report)? == first, || format!("report differs with {threads} threads"))?;
    }
    Ok(format!("{} byte report identical across runs and 1/4/default threads", first.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("axioms on all fixtures and rings", fixtures_pass),
        ("λη values", lambda_eta_values),
        ("opposite coproduct from bivector", opposite_rebuilt),
        ("cone product closed forms and associativity", closed_forms),
        ("associator and infinitesimal relation", identity_holds),
        ("transition automorphism of T*S¹", transition),
        ("Smith normal form", smith_forms),
        ("sign-flip mutants", sign_flips),
        ("reproducible reports", reproducible),
    ];
    let mut failed = 0;
    for (i, (label, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS  {label}: {detail} [{secs:.2} s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL  {label}: {why} [{secs:.2} s]", i + 1);
            }
        }
    }
    println!("acceptance: {}/9 passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
