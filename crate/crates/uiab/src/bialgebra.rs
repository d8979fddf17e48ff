//! Unital infinitesimal anti-symmetric bialgebras: structure tables, the axiom
//! checker, and the operations built from `λη` and bivectors.
//!
//! Structure maps are stored as tables over basis inputs. A `None` entry marks
//! a product that left the truncation window; identities touching it are
//! excluded from quantification.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::chain::ChainComplex;
use crate::error::{Error, Result};
use crate::exact::{Ring, Scalar};
use crate::graded::{accumulate, GradedMap, GradedModule, TensorElement, Vector};
use crate::ops::{Op, OpAlgebra, Table, Terms};
use crate::report::{CheckResult, Section, Status, Witness};

pub type AxiomReport = Section;

/// Bookkeeping for a finite window of an infinite model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub window: i64,
    /// Inputs of weight at most `radius` never leave the window in any axiom.
    pub radius: i64,
    /// Weight of each basis element, in basis order.
    pub weights: Vec<i64>,
}

#[derive(Clone, PartialEq)]
pub struct UiabInstance {
    name: String,
    module: Arc<GradedModule>,
    mu_degree: i64,
    lambda_degree: i64,
    mu: Table,
    lambda: Table,
    eta: Vector,
    differential: Option<GradedMap>,
    truncation: Option<Truncation>,
}

impl std::fmt::Debug for UiabInstance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("UiabInstance")
            .field("name", &self.name)
            .field("ring", &self.ring())
            .field("generators", &self.module.len())
            .field("mu_degree", &self.mu_degree)
            .field("lambda_degree", &self.lambda_degree)
            .finish()
    }
}

/// Operators for one instance, ready to be composed.
pub struct Structure {
    pub alg: OpAlgebra,
    pub id: Op,
    pub tau: Op,
    pub mu: Op,
    pub lambda: Op,
    pub eta: Op,
}

fn to_terms_1(v: &Vector) -> Terms {
    v.iter().map(|(&k, c)| (vec![k], c.clone())).collect()
}

impl UiabInstance {
    /// `mu[i*n + j]` is `μ(x_i⊗x_j)`, `lambda[i]` is `λ(x_i)` as a tensor over `(A, A)`.
    pub fn new(
        name: impl Into<String>,
        module: Arc<GradedModule>,
        mu_degree: i64,
        mu: Vec<Option<Vector>>,
        lambda_degree: i64,
        lambda: Vec<Option<TensorElement>>,
        eta: Vector,
    ) -> Result<Self> {
        let n = module.len();
        if mu.len() != n * n || lambda.len() != n {
            return Err(Error::Dimension(format!(
                "expected {} products and {} coproducts, got {} and {}",
                n * n,
                n,
                mu.len(),
                lambda.len()
            )));
        }
        match module.vector_degree(&eta)? {
            Some(0) | None => {}
            Some(d) => return Err(Error::Degree(format!("unit has degree {d}, expected 0"))),
        }
        let mut mu_t = Vec::with_capacity(n * n);
        for (k, v) in mu.into_iter().enumerate() {
            let Some(v) = v else {
                mu_t.push(None);
                continue;
            };
            let (i, j) = (k / n, k % n);
            let want = module.degree(i) + module.degree(j) + mu_degree;
            if let Some(&bad) = v.keys().find(|&&t| t >= n || module.degree(t) != want) {
                return Err(Error::Degree(format!(
                    "μ({}⊗{}) has a term of the wrong degree (index {bad}), expected degree {want}",
                    module.name(i),
                    module.name(j)
                )));
            }
            mu_t.push(Some(to_terms_1(&v)));
        }
        let mut la_t = Vec::with_capacity(n);
        for (i, t) in lambda.into_iter().enumerate() {
            let Some(t) = t else {
                la_t.push(None);
                continue;
            };
            if t.arity() != 2 || t.factors().iter().any(|f| **f != *module) {
                return Err(Error::Dimension(format!("λ({}) is not an element of A⊗A", module.name(i))));
            }
            let want = module.degree(i) + lambda_degree;
            if let Some(d) = t.degree()? {
                if d != want {
                    return Err(Error::Degree(format!(
                        "λ({}) has degree {d}, expected {want}",
                        module.name(i)
                    )));
                }
            }
            la_t.push(Some(t.terms().clone()));
        }
        Ok(UiabInstance {
            name: name.into(),
            module,
            mu_degree,
            lambda_degree,
            mu: Arc::new(mu_t),
            lambda: Arc::new(la_t),
            eta,
            differential: None,
            truncation: None,
        })
    }

    /// Attaches a differential; it must square to zero. Compatibility with the
    /// structure maps is reported by [`check_axioms`].
    pub fn with_differential(mut self, d: GradedMap) -> Result<Self> {
        if **d.source() != *self.module || **d.target() != *self.module {
            return Err(Error::Dimension("differential must be an endomorphism of A".into()));
        }
        ChainComplex::new(self.module.clone(), d.clone())?;
        self.differential = Some(d);
        Ok(self)
    }

    pub fn with_truncation(mut self, t: Truncation) -> Result<Self> {
        if t.weights.len() != self.module.len() {
            return Err(Error::Dimension("one weight per basis element".into()));
        }
        self.truncation = Some(t);
        Ok(self)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> Ring {
        self.module.ring()
    }

    pub fn module(&self) -> &Arc<GradedModule> {
        &self.module
    }

    pub fn mu_degree(&self) -> i64 {
        self.mu_degree
    }

    pub fn lambda_degree(&self) -> i64 {
        self.lambda_degree
    }

    pub fn eta(&self) -> &Vector {
        &self.eta
    }

    pub fn differential(&self) -> Option<&GradedMap> {
        self.differential.as_ref()
    }

    pub fn truncation(&self) -> Option<&Truncation> {
        self.truncation.as_ref()
    }

    pub fn mu_table(&self) -> &Table {
        &self.mu
    }

    pub fn lambda_table(&self) -> &Table {
        &self.lambda
    }

    /// `μ(x_i⊗x_j)`, or `None` when it was dropped by truncation.
    pub fn mu(&self, i: usize, j: usize) -> Option<Vector> {
        let n = self.module.len();
        self.mu[i * n + j].as_ref().map(|t| t.iter().map(|(k, c)| (k[0], c.clone())).collect())
    }

    pub fn lambda(&self, i: usize) -> Option<TensorElement> {
        self.lambda[i].as_ref().map(|t| {
            TensorElement::new(vec![self.module.clone(), self.module.clone()], t.clone()).expect("validated")
        })
    }

    /// Basis elements whose every axiom instance stays inside the window.
    pub fn safe_basis(&self) -> Vec<usize> {
        match &self.truncation {
            Some(t) => (0..self.module.len()).filter(|&i| t.weights[i].abs() <= t.radius).collect(),
            None => (0..self.module.len()).collect(),
        }
    }

    pub fn structure(&self) -> Structure {
        let alg = OpAlgebra::new(self.module.clone());
        let eta = alg.constant(to_terms_1(&self.eta), 0, 1);
        Structure {
            id: alg.id(),
            tau: alg.tau(),
            mu: alg.table("μ", self.mu_degree, 2, 1, self.mu.clone()),
            lambda: alg.table("λ", self.lambda_degree, 1, 2, self.lambda.clone()),
            eta,
            alg,
        }
    }

    /// Copy with `λ` replaced; degree and shape are revalidated.
    pub fn with_lambda(&self, lambda_degree: i64, lambda: Vec<Option<TensorElement>>) -> Result<Self> {
        let n = self.module.len();
        let mu = (0..n * n).map(|k| self.mu(k / n, k % n)).collect();
        let mut out = UiabInstance::new(
            self.name.clone(),
            self.module.clone(),
            self.mu_degree,
            mu,
            lambda_degree,
            lambda,
            self.eta.clone(),
        )?;
        out.differential = self.differential.clone();
        out.truncation = self.truncation.clone();
        Ok(out)
    }

    /// Every nonzero structure constant of `μ` and `λ` whose input is safe,
    /// as `(map, flattened input, output key)`.
    pub fn structure_constants(&self) -> Vec<(StructureMap, usize, Vec<usize>)> {
        let safe = self.safe_basis();
        let n = self.module.len();
        let mut out = Vec::new();
        for &i in &safe {
            for &j in &safe {
                if let Some(t) = &self.mu[i * n + j] {
                    out.extend(t.keys().map(|k| (StructureMap::Mu, i * n + j, k.clone())));
                }
            }
        }
        for &i in &safe {
            if let Some(t) = &self.lambda[i] {
                out.extend(t.keys().map(|k| (StructureMap::Lambda, i, k.clone())));
            }
        }
        out
    }

    /// Copy with one structure constant negated.
    pub fn sign_flipped(&self, map: StructureMap, input: usize, key: &[usize]) -> Self {
        let ring = self.ring();
        let flip = |table: &Table| -> Table {
            let mut t = (**table).clone();
            if let Some(Some(v)) = t.get_mut(input) {
                if let Some(c) = v.get_mut(key) {
                    *c = ring.neg(c);
                }
            }
            Arc::new(t)
        };
        let mut out = self.clone();
        match map {
            StructureMap::Mu => out.mu = flip(&self.mu),
            StructureMap::Lambda => out.lambda = flip(&self.lambda),
        }
        out
    }

    /// Human readable description of a structure constant.
    pub fn describe_constant(&self, map: StructureMap, input: usize, key: &[usize]) -> String {
        let n = self.module.len();
        let m = &self.module;
        let names = |k: &[usize]| k.iter().map(|&i| m.name(i)).collect::<Vec<_>>().join("⊗");
        match map {
            StructureMap::Mu => format!("μ({}⊗{}) ∋ {}", m.name(input / n), m.name(input % n), names(key)),
            StructureMap::Lambda => format!("λ({}) ∋ {}", m.name(input), names(key)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum StructureMap {
    Mu,
    Lambda,
}

/// All `arity`-tuples drawn from `basis`, in lexicographic order.
pub fn tuples(basis: &[usize], arity: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                basis.iter().map(move |&b| {
                    let mut t = t.clone();
                    t.push(b);
                    t
                })
            })
            .collect();
    }
    out
}

enum Outcome {
    Equal,
    Differ(Terms, Terms),
    Excluded,
}

/// Compares two operators on every input. Evaluation runs in parallel; the
/// witness is the first failing input in the given order.
pub fn compare(alg: &OpAlgebra, name: &str, lhs: &Op, rhs: &Op, inputs: &[Vec<usize>]) -> CheckResult {
    let outcomes: Vec<Outcome> = inputs
        .par_iter()
        .map(|t| match (lhs.eval(t), rhs.eval(t)) {
            (Ok(l), Ok(r)) if l == r => Outcome::Equal,
            (Ok(l), Ok(r)) => Outcome::Differ(l, r),
            _ => Outcome::Excluded,
        })
        .collect();
    let mut res = CheckResult::pass(name);
    for (t, o) in inputs.iter().zip(outcomes) {
        match o {
            Outcome::Equal => res.checked += 1,
            Outcome::Excluded => res.excluded += 1,
            Outcome::Differ(l, r) => {
                res.checked += 1;
                if res.witness.is_none() {
                    res.status = Status::Fail;
                    res.witness =
                        Some(Witness { input: alg.input_name(t), lhs: alg.render(&l), rhs: alg.render(&r) });
                }
            }
        }
    }
    res
}

fn unit_check(inst: &UiabInstance, s: &Structure) -> CheckResult {
    let a = &s.alg;
    let inputs = tuples(&inst.safe_basis(), 1);
    let left = a.compose(&s.mu, &a.tensor(&s.eta, &s.id));
    let right = a.compose(&s.mu, &a.tensor(&s.id, &s.eta));
    compare(a, "unit", &left, &s.id, &inputs).merge(compare(a, "unit", &right, &s.id, &inputs))
}

fn assoc_check(inst: &UiabInstance, s: &Structure) -> CheckResult {
    let a = &s.alg;
    let lhs = a.compose(&s.mu, &a.tensor(&s.mu, &s.id));
    let rhs = a.scale(a.sign(inst.mu_degree), &a.compose(&s.mu, &a.tensor(&s.id, &s.mu)));
    compare(a, "associativity", &lhs, &rhs, &tuples(&inst.safe_basis(), 3))
}

fn coassoc_check(inst: &UiabInstance, s: &Structure) -> CheckResult {
    let a = &s.alg;
    let lhs = a.compose(&a.tensor(&s.lambda, &s.id), &s.lambda);
    let rhs = a.scale(a.sign(inst.lambda_degree), &a.compose(&a.tensor(&s.id, &s.lambda), &s.lambda));
    compare(a, "coassociativity", &lhs, &rhs, &tuples(&inst.safe_basis(), 1))
}

fn lambda_eta_op(inst: &UiabInstance, s: &Structure) -> std::result::Result<Op, Error> {
    let le = lambda_eta(inst)?;
    Ok(s.alg.constant(le.terms().clone(), inst.lambda_degree, 2))
}

/// `(1⊗λη⊗1)` on `A⊗A`, landing in `A^{⊗4}`.
fn middle(s: &Structure, le: &Op) -> Op {
    let a = &s.alg;
    a.tensor(&a.tensor(&s.id, le), &s.id)
}

fn uir_check(inst: &UiabInstance, s: &Structure) -> Result<CheckResult> {
    let a = &s.alg;
    let (m, l) = (inst.mu_degree, inst.lambda_degree);
    let le = lambda_eta_op(inst, s)?;
    let lhs = a.compose(&s.lambda, &s.mu);
    let rhs = a.lin(vec![
        (a.sign(l * m), a.compose(&a.tensor(&s.id, &s.mu), &a.tensor(&s.lambda, &s.id))),
        (a.sign(l * m), a.compose(&a.tensor(&s.mu, &s.id), &a.tensor(&s.id, &s.lambda))),
        (a.ring().neg(&a.sign(m)), a.compose(&a.tensor(&s.mu, &s.mu), &middle(s, &le))),
    ]);
    Ok(compare(a, "unital infinitesimal relation", &lhs, &rhs, &tuples(&inst.safe_basis(), 2)))
}

/// Both sides of the anti-symmetry axiom as operators `A⊗A -> A⊗A`.
fn uas_sides(inst: &UiabInstance, s: &Structure) -> Result<(Op, Op)> {
    let a = &s.alg;
    let (m, l) = (inst.mu_degree, inst.lambda_degree);
    let le = lambda_eta_op(inst, s)?;
    let mid = middle(s, &le);
    let tl = a.compose(&s.tau, &s.lambda);
    let mt = a.compose(&s.mu, &s.tau);
    let neg = |e: i64| a.ring().neg(&a.sign(e));
    let lhs = a.lin(vec![
        (a.sign(m * (l + 1)), a.compose(&a.tensor(&s.id, &s.mu), &a.tensor(&tl, &s.id))),
        (a.sign(l * (m + 1)), a.compose(&a.tensor(&mt, &s.id), &a.tensor(&s.id, &s.lambda))),
        (neg(l + m), a.compose(&a.tensor(&mt, &s.mu), &mid)),
    ]);
    let rhs = a.lin(vec![
        (a.sign(l * m), a.chain(&[&s.tau, &a.tensor(&s.id, &mt), &a.tensor(&s.lambda, &s.id)])),
        (neg((l + 1) * (m + 1)), a.chain(&[&s.tau, &a.tensor(&s.mu, &s.id), &a.tensor(&s.id, &tl)])),
        (neg(m), a.chain(&[&s.tau, &a.tensor(&s.mu, &mt), &mid])),
    ]);
    Ok((lhs, rhs))
}

fn uas_check(inst: &UiabInstance, s: &Structure) -> Result<CheckResult> {
    let (lhs, rhs) = uas_sides(inst, s)?;
    Ok(compare(&s.alg, "unital anti-symmetry", &lhs, &rhs, &tuples(&inst.safe_basis(), 2)))
}

fn differential_checks(inst: &UiabInstance, s: &Structure) -> CheckResult {
    let name = "differential compatibility";
    let Some(d) = &inst.differential else {
        return CheckResult::new(name, Status::NotApplicable).with_note("no differential");
    };
    let a = &s.alg;
    let table: Table = Arc::new(d.images().iter().map(|v| Some(to_terms_1(v))).collect());
    let dop = a.table("d", -1, 1, 1, table);
    let d2 = a.lin(vec![
        (Scalar::one(), a.tensor(&dop, &s.id)),
        (Scalar::one(), a.tensor(&s.id, &dop)),
    ]);
    let lhs = a.compose(&dop, &s.mu);
    let rhs = a.scale(a.sign(inst.mu_degree), &a.compose(&s.mu, &d2));
    let r1 = compare(a, name, &lhs, &rhs, &tuples(&inst.safe_basis(), 2));
    let lhs = a.compose(&d2, &s.lambda);
    let rhs = a.scale(a.sign(inst.lambda_degree), &a.compose(&s.lambda, &dop));
    r1.merge(compare(a, name, &lhs, &rhs, &tuples(&inst.safe_basis(), 1)))
}

fn truncation_check(inst: &UiabInstance, checks: &[CheckResult]) -> CheckResult {
    let name = "window soundness";
    let Some(t) = &inst.truncation else {
        return CheckResult::new(name, Status::NotApplicable).with_note("untruncated");
    };
    let excluded: usize = checks.iter().map(|c| c.excluded).sum();
    let mut r = CheckResult::from_bool(name, excluded == 0);
    r.excluded = excluded;
    r.with_note(format!("window N = {}, safe radius {}", t.window, t.radius))
}

/// Checks unit, associativity, coassociativity, the unital infinitesimal
/// relation and unital anti-symmetry on the safe inputs.
pub fn check_axioms(inst: &UiabInstance) -> AxiomReport {
    let s = inst.structure();
    let mut checks = vec![unit_check(inst, &s), assoc_check(inst, &s), coassoc_check(inst, &s)];
    for (name, r) in [("unital infinitesimal relation", uir_check(inst, &s)), ("unital anti-symmetry", uas_check(inst, &s))] {
        checks.push(r.unwrap_or_else(|e| CheckResult::new(name, Status::Fail).with_note(e.to_string())));
    }
    checks.push(differential_checks(inst, &s));
    let t = truncation_check(inst, &checks);
    checks.push(t);
    Section::new(inst.name.clone(), inst.ring().name(), checks)
}

/// Runs the axioms cheapest first and stops at the first failure.
pub fn first_axiom_failure(inst: &UiabInstance) -> Option<CheckResult> {
    let s = inst.structure();
    let failed = |r: CheckResult| (r.status == Status::Fail).then_some(r);
    let err = |name: &str, e: Error| CheckResult::new(name, Status::Fail).with_note(e.to_string());
    failed(unit_check(inst, &s))
        .or_else(|| failed(coassoc_check(inst, &s)))
        .or_else(|| failed(uir_check(inst, &s).unwrap_or_else(|e| err("unital infinitesimal relation", e))))
        .or_else(|| failed(uas_check(inst, &s).unwrap_or_else(|e| err("unital anti-symmetry", e))))
        .or_else(|| failed(assoc_check(inst, &s)))
}

/// `λ(η)` as an element of `A⊗A`.
pub fn lambda_eta(inst: &UiabInstance) -> Result<TensorElement> {
    let ring = inst.ring();
    let mut terms = Terms::new();
    for (&e, c) in &inst.eta {
        let Some(img) = &inst.lambda[e] else {
            return Err(Error::Invariant(format!("λ({}) lies outside the window", inst.module.name(e))));
        };
        for (k, v) in img {
            accumulate(ring, &mut terms, k.clone(), &ring.mul(c, v));
        }
    }
    TensorElement::new(vec![inst.module.clone(), inst.module.clone()], terms)
}

fn property(alg: &OpAlgebra, name: &str, lhs: &Op, rhs: &Op, inputs: &[Vec<usize>]) -> CheckResult {
    let mut r = compare(alg, name, lhs, rhs, inputs);
    if r.status == Status::Fail {
        r.status = Status::NotApplicable;
        r.notes.push("does not hold for this instance".into());
    }
    r
}

/// `μτ = (-1)^{|μ|} μ` on safe pairs; failure is reported as not applicable.
pub fn check_commutativity(inst: &UiabInstance) -> CheckResult {
    let s = inst.structure();
    let a = &s.alg;
    let lhs = a.compose(&s.mu, &s.tau);
    let rhs = a.scale(a.sign(inst.mu_degree), &s.mu);
    property(a, "commutativity", &lhs, &rhs, &tuples(&inst.safe_basis(), 2))
}

/// `τλ = (-1)^{|λ|} λ` on safe inputs.
pub fn check_cocommutativity(inst: &UiabInstance) -> CheckResult {
    let s = inst.structure();
    let a = &s.alg;
    let lhs = a.compose(&s.tau, &s.lambda);
    let rhs = a.scale(a.sign(inst.lambda_degree), &s.lambda);
    property(a, "cocommutativity", &lhs, &rhs, &tuples(&inst.safe_basis(), 1))
}

fn mu_lambda(s: &Structure) -> Op {
    s.alg.compose(&s.mu, &s.lambda)
}

/// `μλ = 0`, asserted only when `2` is invertible, the instance is commutative
/// and cocommutative, and `|μ| + |λ|` is odd. Otherwise the values of `μλ`
/// are reported for information.
pub fn check_involutivity(inst: &UiabInstance) -> CheckResult {
    let name = "involutivity";
    let s = inst.structure();
    let a = &s.alg;
    let mut missing = Vec::new();
    if inst.ring().two_is_zero() {
        missing.push("characteristic 2".to_string());
    }
    if check_commutativity(inst).status != Status::Pass {
        missing.push("not commutative".into());
    }
    if check_cocommutativity(inst).status != Status::Pass {
        missing.push("not cocommutative".into());
    }
    if (inst.mu_degree + inst.lambda_degree).rem_euclid(2) == 0 {
        missing.push("|μ| + |λ| even".into());
    }
    let ml = mu_lambda(&s);
    let zero = a.zero(inst.mu_degree + inst.lambda_degree, 1, 1);
    let r = compare(a, name, &ml, &zero, &tuples(&inst.safe_basis(), 1));
    if missing.is_empty() {
        return r;
    }
    let mut out = CheckResult::new(name, Status::NotApplicable);
    out.checked = r.checked;
    out.excluded = r.excluded;
    out.notes.push(format!("hypotheses not met: {}", missing.join(", ")));
    match r.witness {
        Some(w) => out.notes.push(format!("μλ({}) = {}", w.input, w.lhs)),
        None => out.notes.push("μλ vanishes on the safe window".into()),
    }
    out
}

/// For commutative and cocommutative instances, anti-symmetry reduces to
/// `lhs = (-1)^{|μ|+|λ|} λμ` and `rhs = (-1)^{|μ|} τλμ`.
pub fn check_cc_implies_antisymmetry(inst: &UiabInstance) -> Result<Vec<CheckResult>> {
    if check_commutativity(inst).status != Status::Pass || check_cocommutativity(inst).status != Status::Pass {
        return Err(Error::Hypothesis("instance must be commutative and cocommutative".into()));
    }
    let s = inst.structure();
    let a = &s.alg;
    let (m, l) = (inst.mu_degree, inst.lambda_degree);
    let (lhs, rhs) = uas_sides(inst, &s)?;
    let lm = a.compose(&s.lambda, &s.mu);
    let tlm = a.compose(&s.tau, &lm);
    let inputs = tuples(&inst.safe_basis(), 2);
    Ok(vec![
        compare(a, "anti-symmetry left side", &lhs, &a.scale(a.sign(m + l), &lm), &inputs),
        compare(a, "anti-symmetry right side", &rhs, &a.scale(a.sign(m), &tlm), &inputs),
    ])
}

fn bivector_op(inst: &UiabInstance, s: &Structure, c: &TensorElement, what: &str) -> Result<Op> {
    if c.arity() != 2 || c.factors().iter().any(|f| **f != *inst.module) {
        return Err(Error::Dimension(format!("{what} must lie in A⊗A")));
    }
    match c.degree()? {
        Some(d) if d != inst.lambda_degree => {
            Err(Error::Degree(format!("{what} has degree {d}, expected |λ| = {}", inst.lambda_degree)))
        }
        _ => Ok(s.alg.constant(c.terms().clone(), inst.lambda_degree, 2)),
    }
}

/// `λ' = λ + (μ⊗1)(1⊗c_fwd) - (1⊗μ)(c_op⊗1)`, returned as a new instance.
/// Inputs whose image leaves the window become truncated entries.
pub fn secondary_relation_apply(inst: &UiabInstance, c_fwd: &TensorElement, c_op: &TensorElement) -> Result<UiabInstance> {
    let s = inst.structure();
    let a = &s.alg;
    let cf = bivector_op(inst, &s, c_fwd, "forward bivector")?;
    let co = bivector_op(inst, &s, c_op, "opposite bivector")?;
    let op = a.lin(vec![
        (Scalar::one(), s.lambda.clone()),
        (Scalar::one(), a.compose(&a.tensor(&s.mu, &s.id), &a.tensor(&s.id, &cf))),
        (a.ring().neg(&Scalar::one()), a.compose(&a.tensor(&s.id, &s.mu), &a.tensor(&co, &s.id))),
    ]);
    let images = (0..inst.module.len())
        .map(|i| {
            op.eval(&[i])
                .ok()
                .map(|t| TensorElement::new(vec![inst.module.clone(), inst.module.clone()], t))
                .transpose()
        })
        .collect::<Result<Vec<_>>>()?;
    inst.with_lambda(inst.lambda_degree, images)
}

/// Rebuilds the opposite coproduct from `plus` and a bivector `c`, in the
/// two equivalent forms, and compares both with `minus.λ` on safe inputs.
pub fn check_opposite_from_bivector(plus: &UiabInstance, minus: &UiabInstance, c: &TensorElement) -> Result<CheckResult> {
    if plus.module != minus.module {
        return Err(Error::Dimension("both instances must share one module".into()));
    }
    let rebuilt = secondary_relation_apply(plus, c, &c.neg())?;
    let s = plus.structure();
    let a = &s.alg;
    let cop = bivector_op(plus, &s, c, "bivector")?;
    let direct = a.lin(vec![
        (Scalar::one(), s.lambda.clone()),
        (Scalar::one(), a.compose(&a.tensor(&s.mu, &s.id), &a.tensor(&s.id, &cop))),
        (Scalar::one(), a.compose(&a.tensor(&s.id, &s.mu), &a.tensor(&cop, &s.id))),
    ]);
    let target = minus.structure().lambda;
    let inputs = tuples(&plus.safe_basis(), 1);
    let name = "opposite coproduct from bivector";
    let via_apply = rebuilt.structure().lambda;
    Ok(compare(a, name, &via_apply, &target, &inputs).merge(compare(a, name, &direct, &target, &inputs)))
}

/// `c = λη`: the unique bivector compatible with the opposite coproduct.
pub fn check_bivector_is_lambda_eta(inst: &UiabInstance, c: &TensorElement) -> Result<CheckResult> {
    let le = lambda_eta(inst)?;
    let name = "bivector equals λη";
    if le.terms() == c.terms() {
        return Ok(CheckResult::pass(name));
    }
    Ok(CheckResult::fail(name, Witness { input: "η".into(), lhs: c.render(), rhs: le.render() }))
}

/// The Loday-Ronco relation `λμ = (1⊗μ)(λ⊗1) + (μ⊗1)(1⊗λ) - ε·id`, valid
/// when `|λ|` is even and `λη = ε 𝟙⊗𝟙`.
pub fn check_loday_ronco(inst: &UiabInstance) -> Result<CheckResult> {
    if inst.lambda_degree.rem_euclid(2) != 0 {
        return Err(Error::Hypothesis(format!("|λ| = {} is odd", inst.lambda_degree)));
    }
    let le = lambda_eta(inst)?;
    let ring = inst.ring();
    let mut unit_sq = Terms::new();
    for (&i, ci) in &inst.eta {
        for (&j, cj) in &inst.eta {
            accumulate(ring, &mut unit_sq, vec![i, j], &ring.mul(ci, cj));
        }
    }
    let eps = if le.is_zero() {
        Scalar::zero()
    } else {
        let (k, c) = unit_sq.iter().next().ok_or_else(|| Error::Hypothesis("zero unit".into()))?;
        let e = le.terms().get(k).cloned().unwrap_or_else(Scalar::zero);
        let e = ring.div(&e, c).ok_or_else(|| Error::Hypothesis("unit coefficient not invertible".into()))?;
        let scaled: Terms =
            unit_sq.iter().map(|(k, v)| (k.clone(), ring.mul(v, &e))).filter(|(_, v)| !v.is_zero()).collect();
        if &scaled != le.terms() {
            return Err(Error::Hypothesis(format!("λη = {} is not a multiple of 𝟙⊗𝟙", le.render())));
        }
        e
    };
    let s = inst.structure();
    let a = &s.alg;
    let lhs = a.compose(&s.lambda, &s.mu);
    let rhs = a.lin(vec![
        (Scalar::one(), a.compose(&a.tensor(&s.id, &s.mu), &a.tensor(&s.lambda, &s.id))),
        (Scalar::one(), a.compose(&a.tensor(&s.mu, &s.id), &a.tensor(&s.id, &s.lambda))),
        (ring.neg(&eps), a.tensor(&s.id, &s.id)),
    ]);
    Ok(compare(a, "Loday-Ronco relation", &lhs, &rhs, &tuples(&inst.safe_basis(), 2)))
}

/// Values of `μ` as a dense map `A⊗A -> A`; dropped products are zero.
pub fn mu_map(inst: &UiabInstance) -> Result<GradedMap> {
    let aa = Arc::new(GradedModule::tensor(&inst.module, &inst.module)?);
    let images: Vec<Vector> = inst
        .mu
        .iter()
        .map(|t| t.as_ref().map(|t| t.iter().map(|(k, c)| (k[0], c.clone())).collect()).unwrap_or_default())
        .collect();
    GradedMap::from_images(aa.clone(), inst.module.clone(), inst.mu_degree, &images)
}

/// Values of `λ` as a dense map `A -> A⊗A`; dropped coproducts are zero.
pub fn lambda_map(inst: &UiabInstance) -> Result<GradedMap> {
    let aa = Arc::new(GradedModule::tensor(&inst.module, &inst.module)?);
    let images: Vec<Vector> = inst
        .lambda
        .iter()
        .map(|t| {
            t.as_ref()
                .map(|t| t.iter().map(|(k, c)| (aa.pair_index(k[0], k[1]), c.clone())).collect())
                .unwrap_or_default()
        })
        .collect();
    GradedMap::from_images(inst.module.clone(), aa, inst.lambda_degree, &images)
}

/// Counts of nonzero structure constants, for reports.
pub fn constant_counts(inst: &UiabInstance) -> BTreeMap<&'static str, usize> {
    let count = |t: &Table| t.iter().flatten().map(|v| v.len()).sum::<usize>();
    BTreeMap::from([("mu", count(&inst.mu)), ("lambda", count(&inst.lambda))])
}
