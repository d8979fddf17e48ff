//! Versioned JSON scenario files.
//!
//! A scenario describes a bialgebra (basis, `μ`, `λ`, `η`, optional
//! differential and truncation), named bivectors, optional cone data, plain
//! chain complexes with chain maps between them, and the list of checks to
//! run. Linear combinations are lists of `[coefficient, name]` pairs with the
//! coefficient written as a string, so every ring shares one encoding.
//! Tensor names join factors with `⊗`.
//!
//! Validation happens entirely in [`Scenario::validate`]; semantic problems
//! are reported as [`Error::Schema`] with a path to the offending field.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bialgebra::{Truncation, UiabInstance};
use crate::chain::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::exact::{Ring, Scalar};
use crate::graded::{accumulate, BasisElement, GradedMap, GradedModule, TensorElement, Vector, TENSOR_SEP};

pub const SCHEMA_VERSION: u32 = 1;

/// `[coefficient, basis name]` pairs.
pub type Combo = Vec<(String, String)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
}

/// A structure map given by its values on basis inputs. Absent inputs map to
/// zero; `null` marks a value dropped by truncation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpTable {
    pub degree: i64,
    #[serde(default)]
    pub table: BTreeMap<String, Option<Combo>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncationSpec {
    pub window: i64,
    pub radius: i64,
    pub weights: BTreeMap<String, i64>,
}

/// The coproduct for the opposite data, related to the main one by a bivector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OppositeSpec {
    pub lambda: OpTable,
    pub bivector: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeSpec {
    pub n: i64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub c0: Combo,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub q0: Combo,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub b: Combo,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    pub module: Vec<Generator>,
    /// Images of the degree `-1` differential.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub differential: BTreeMap<String, Combo>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainMapSpec {
    pub source: String,
    pub target: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub table: BTreeMap<String, Combo>,
    /// Degree `+1` map from source to target, used for the transition automorphism.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub secondary: Option<BTreeMap<String, Combo>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    Axioms,
    Properties,
    LodayRonco,
    Opposite,
    Cone,
    Homology,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema_version: u32,
    pub name: String,
    #[serde(default = "default_ring")]
    pub ring: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub module: Vec<Generator>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<OpTable>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<OpTable>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub eta: Combo,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub differential: Option<BTreeMap<String, Combo>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<TruncationSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub bivectors: BTreeMap<String, Combo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opposite: Option<OppositeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone: Option<ConeSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub complexes: BTreeMap<String, ComplexSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub chain_maps: BTreeMap<String, ChainMapSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Task>,
}

fn default_ring() -> String {
    "Z".into()
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema { path: path.into(), message: message.into() }
}

/// Cone data after validation; hypotheses are checked when the cone is built.
#[derive(Clone, Debug)]
pub struct ConeInputs {
    pub n: i64,
    pub c0: TensorElement,
    pub q0: TensorElement,
    pub b: TensorElement,
}

#[derive(Clone, Debug)]
pub struct ChainMapInputs {
    pub map: ChainMap,
    pub secondary: Option<GradedMap>,
}

/// A validated scenario.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub name: String,
    pub ring: Ring,
    pub instance: Option<UiabInstance>,
    pub bivectors: BTreeMap<String, TensorElement>,
    /// Instance carrying the opposite coproduct, and the bivector name.
    pub opposite: Option<(UiabInstance, String)>,
    pub cone: Option<ConeInputs>,
    pub complexes: BTreeMap<String, ChainComplex>,
    pub chain_maps: BTreeMap<String, ChainMapInputs>,
    pub checks: Vec<Task>,
}

impl Scenario {
    /// Parses JSON; syntax and shape errors carry line, column and field path.
    pub fn parse(text: &str) -> Result<Scenario> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            schema(path, format!("line {} column {}: {inner}", inner.line(), inner.column()))
        })
    }

    /// Pretty JSON with each `[coefficient, name]` pair kept on one line.
    pub fn to_json(&self) -> String {
        let pretty = serde_json::to_string_pretty(self).expect("scenario serializes");
        let lines: Vec<&str> = pretty.lines().collect();
        let mut out = String::with_capacity(pretty.len());
        let mut i = 0;
        while i < lines.len() {
            let l = lines[i];
            let pair = l.trim() == "["
                && i + 3 < lines.len()
                && lines[i + 1].trim_start().starts_with('"')
                && lines[i + 1].ends_with(',')
                && lines[i + 2].trim_start().starts_with('"')
                && lines[i + 3].trim_start().starts_with(']');
            if pair {
                let indent = &l[..l.len() - l.trim_start().len()];
                out.push_str(&format!(
                    "{indent}[{} {}{}\n",
                    lines[i + 1].trim(),
                    lines[i + 2].trim(),
                    lines[i + 3].trim()
                ));
                i += 4;
            } else {
                out.push_str(l);
                out.push('\n');
                i += 1;
            }
        }
        out
    }

    /// Checks every invariant of the file and builds the objects it describes.
    /// `ring` overrides the ring named in the file.
    pub fn validate(&self, ring: Option<Ring>) -> Result<Loaded> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(schema(
                "schema_version",
                format!("unsupported version {}, expected {SCHEMA_VERSION}", self.schema_version),
            ));
        }
        let ring = match ring {
            Some(r) => r,
            None => self.ring.parse().map_err(|e: Error| schema("ring", e.to_string()))?,
        };
        let cx = Ctx { ring };
        let instance = self.instance(&cx)?;
        let need = |field: &str| -> Result<&UiabInstance> {
            instance.as_ref().ok_or_else(|| schema(field, "requires a bialgebra (module, mu, lambda)"))
        };

        let mut bivectors = BTreeMap::new();
        for (name, combo) in &self.bivectors {
            let path = format!("bivectors[{name:?}]");
            let inst = need(&path)?;
            let t = cx.tensor(inst.module(), 2, combo, &path)?;
            bivectors.insert(name.clone(), t);
        }

        let opposite = match &self.opposite {
            None => None,
            Some(op) => {
                let inst = need("opposite")?;
                let c = bivectors.get(&op.bivector).ok_or_else(|| {
                    schema("opposite.bivector", format!("no bivector named {:?}", op.bivector))
                })?;
                if op.lambda.degree != inst.lambda_degree() {
                    return Err(schema(
                        "opposite.lambda.degree",
                        format!("expected the degree of lambda, {}", inst.lambda_degree()),
                    ));
                }
                expect_degree(c, inst.lambda_degree(), "opposite.bivector")?;
                let table = cx.lambda_table(inst.module(), &op.lambda, "opposite.lambda")?;
                let minus = inst
                    .with_lambda(op.lambda.degree, table)
                    .map_err(|e| schema("opposite.lambda", e.to_string()))?;
                Some((minus.renamed(format!("{} (opposite)", inst.name())), op.bivector.clone()))
            }
        };

        let cone = match &self.cone {
            None => None,
            Some(spec) => {
                let inst = need("cone")?;
                let m = inst.module();
                let n = spec.n;
                if n < 1 {
                    return Err(schema("cone.n", "must be positive"));
                }
                let c0 = cx.tensor(m, 2, &spec.c0, "cone.c0")?;
                let q0 = cx.tensor(m, 2, &spec.q0, "cone.q0")?;
                let b = cx.tensor(m, 3, &spec.b, "cone.b")?;
                expect_degree(&c0, -2 * n, "cone.c0")?;
                expect_degree(&q0, 1 - 2 * n, "cone.q0")?;
                expect_degree(&b, 2 - 4 * n, "cone.b")?;
                Some(ConeInputs { n, c0, q0, b })
            }
        };

        let mut complexes = BTreeMap::new();
        for (name, spec) in &self.complexes {
            let path = format!("complexes[{name:?}]");
            let m = cx.module(&spec.module, &format!("{path}.module"))?;
            let d = cx.map(&m, &m, -1, &spec.differential, &format!("{path}.differential"))?;
            let c = ChainComplex::new(m, d).map_err(|e| schema(format!("{path}.differential"), e.to_string()))?;
            complexes.insert(name.clone(), c);
        }

        let mut chain_maps = BTreeMap::new();
        for (name, spec) in &self.chain_maps {
            let path = format!("chain_maps[{name:?}]");
            let lookup = |field: &str, key: &str| {
                complexes
                    .get(key)
                    .cloned()
                    .ok_or_else(|| schema(format!("{path}.{field}"), format!("no complex named {key:?}")))
            };
            let src = lookup("source", &spec.source)?;
            let tgt = lookup("target", &spec.target)?;
            let f = cx.map(src.module(), tgt.module(), 0, &spec.table, &format!("{path}.table"))?;
            let map = ChainMap::new(src.clone(), tgt.clone(), f)
                .map_err(|e| schema(format!("{path}.table"), e.to_string()))?;
            let secondary = match &spec.secondary {
                None => None,
                Some(t) => Some(cx.map(src.module(), tgt.module(), 1, t, &format!("{path}.secondary"))?),
            };
            chain_maps.insert(name.clone(), ChainMapInputs { map, secondary });
        }

        Ok(Loaded {
            name: self.name.clone(),
            ring,
            instance,
            bivectors,
            opposite,
            cone,
            complexes,
            chain_maps,
            checks: self.checks.clone(),
        })
    }

    fn instance(&self, cx: &Ctx) -> Result<Option<UiabInstance>> {
        let (mu, lambda) = match (&self.mu, &self.lambda) {
            (None, None) if self.module.is_empty() => {
                for (field, present) in [
                    ("eta", !self.eta.is_empty()),
                    ("differential", self.differential.is_some()),
                    ("truncation", self.truncation.is_some()),
                ] {
                    if present {
                        return Err(schema(field, "requires a bialgebra (module, mu, lambda)"));
                    }
                }
                return Ok(None);
            }
            (Some(mu), Some(lambda)) => (mu, lambda),
            (None, _) => return Err(schema("mu", "missing")),
            (_, None) => return Err(schema("lambda", "missing")),
        };
        let m = cx.module(&self.module, "module")?;
        let n = m.len();
        let mut mu_t: Vec<Option<Vector>> = vec![Some(Vector::new()); n * n];
        for (key, val) in &mu.table {
            let path = format!("mu.table[{key:?}]");
            let ij = cx.names(&m, key, 2, &path)?;
            let slot = &mut mu_t[ij[0] * n + ij[1]];
            let Some(combo) = val else {
                *slot = None;
                continue;
            };
            let want = m.degree(ij[0]) + m.degree(ij[1]) + mu.degree;
            *slot = Some(cx.vector(&m, combo, Some(want), &path)?);
        }
        let la_t = cx.lambda_table(&m, lambda, "lambda")?;
        let eta = cx.vector(&m, &self.eta, Some(0), "eta")?;
        let mut inst = UiabInstance::new(self.name.clone(), m.clone(), mu.degree, mu_t, lambda.degree, la_t, eta)
            .map_err(|e| schema("module", e.to_string()))?;
        if let Some(d) = &self.differential {
            let dm = cx.map(&m, &m, -1, d, "differential")?;
            inst = inst.with_differential(dm).map_err(|e| schema("differential", e.to_string()))?;
        }
        if let Some(t) = &self.truncation {
            let mut weights = Vec::with_capacity(n);
            for i in 0..n {
                let w = t
                    .weights
                    .get(m.name(i))
                    .ok_or_else(|| schema("truncation.weights", format!("missing weight for {:?}", m.name(i))))?;
                weights.push(*w);
            }
            if let Some(k) = t.weights.keys().find(|k| !m.contains(k)) {
                return Err(schema(format!("truncation.weights[{k:?}]"), "unknown basis element"));
            }
            let tr = Truncation { window: t.window, radius: t.radius, weights };
            inst = inst.with_truncation(tr).map_err(|e| schema("truncation", e.to_string()))?;
        }
        Ok(Some(inst))
    }
}

fn expect_degree(t: &TensorElement, want: i64, path: &str) -> Result<()> {
    match t.degree() {
        Ok(Some(d)) if d != want => Err(schema(path, format!("has degree {d}, expected {want}"))),
        Err(e) => Err(schema(path, e.to_string())),
        _ => Ok(()),
    }
}

struct Ctx {
    ring: Ring,
}

impl Ctx {
    fn scalar(&self, s: &str, path: &str) -> Result<Scalar> {
        self.ring.parse(s).map_err(|e| schema(path, e.to_string()))
    }

    fn module(&self, gens: &[Generator], path: &str) -> Result<Arc<GradedModule>> {
        let basis = gens.iter().map(|g| BasisElement::new(g.name.clone(), g.degree)).collect();
        GradedModule::new(self.ring, basis).map(Arc::new).map_err(|e| schema(path, e.to_string()))
    }

    /// Splits `x⊗y⊗…` into basis indices.
    fn names(&self, m: &GradedModule, key: &str, arity: usize, path: &str) -> Result<Vec<usize>> {
        let parts: Vec<&str> = key.split(TENSOR_SEP).collect();
        if parts.len() != arity {
            return Err(schema(path, format!("expected {arity} tensor factors in {key:?}")));
        }
        parts
            .iter()
            .map(|p| m.index_of(p).map_err(|_| schema(path, format!("unknown basis element {p:?}"))))
            .collect()
    }

    fn terms(&self, m: &GradedModule, combo: &Combo, arity: usize, want: Option<i64>, path: &str) -> Result<Vec<(Vec<usize>, Scalar)>> {
        let mut out = Vec::with_capacity(combo.len());
        let mut seen: Option<i64> = want;
        for (k, (c, name)) in combo.iter().enumerate() {
            let p = format!("{path}[{k}]");
            let idx = self.names(m, name, arity, &p)?;
            let s = self.scalar(c, &p)?;
            let d: i64 = idx.iter().map(|&i| m.degree(i)).sum();
            match seen {
                Some(w) if w != d => {
                    let why = if want.is_some() { "expected" } else { "inhomogeneous, earlier terms have" };
                    return Err(schema(p, format!("term {name} has degree {d}, {why} degree {w}")));
                }
                _ => seen = Some(d),
            }
            out.push((idx, s));
        }
        Ok(out)
    }

    fn vector(&self, m: &GradedModule, combo: &Combo, want: Option<i64>, path: &str) -> Result<Vector> {
        let mut v = Vector::new();
        for (idx, s) in self.terms(m, combo, 1, want, path)? {
            accumulate(self.ring, &mut v, idx[0], &s);
        }
        Ok(v)
    }

    fn tensor(&self, m: &Arc<GradedModule>, arity: usize, combo: &Combo, path: &str) -> Result<TensorElement> {
        let mut t = BTreeMap::new();
        for (idx, s) in self.terms(m, combo, arity, None, path)? {
            accumulate(self.ring, &mut t, idx, &s);
        }
        TensorElement::new(vec![m.clone(); arity], t).map_err(|e| schema(path, e.to_string()))
    }

    fn lambda_table(&self, m: &Arc<GradedModule>, lambda: &OpTable, path: &str) -> Result<Vec<Option<TensorElement>>> {
        let mut out: Vec<Option<TensorElement>> =
            vec![Some(TensorElement::zero(vec![m.clone(), m.clone()])); m.len()];
        for (key, val) in &lambda.table {
            let p = format!("{path}.table[{key:?}]");
            let i = self.names(m, key, 1, &p)?[0];
            out[i] = match val {
                None => None,
                Some(combo) => {
                    let want = m.degree(i) + lambda.degree;
                    let mut t = BTreeMap::new();
                    for (idx, s) in self.terms(m, combo, 2, Some(want), &p)? {
                        accumulate(self.ring, &mut t, idx, &s);
                    }
                    Some(TensorElement::new(vec![m.clone(), m.clone()], t).map_err(|e| schema(&p, e.to_string()))?)
                }
            };
        }
        Ok(out)
    }

    fn map(
        &self,
        src: &Arc<GradedModule>,
        tgt: &Arc<GradedModule>,
        degree: i64,
        table: &BTreeMap<String, Combo>,
        path: &str,
    ) -> Result<GradedMap> {
        let mut images = vec![Vector::new(); src.len()];
        for (key, combo) in table {
            let p = format!("{path}[{key:?}]");
            let i = src.index_of(key).map_err(|_| schema(&p, format!("unknown basis element {key:?}")))?;
            images[i] = self.vector(tgt, combo, Some(src.degree(i) + degree), &p)?;
        }
        GradedMap::from_images(src.clone(), tgt.clone(), degree, &images).map_err(|e| schema(path, e.to_string()))
    }
}

fn combo_of(m: &GradedModule, v: &Vector) -> Combo {
    v.iter().map(|(&i, c)| (c.to_string(), m.name(i).to_string())).collect()
}

/// Tensor as a combination of `⊗`-joined names.
pub fn tensor_combo(t: &TensorElement) -> Combo {
    t.terms()
        .iter()
        .map(|(k, c)| {
            let name: Vec<&str> = k.iter().zip(t.factors()).map(|(&i, m)| m.name(i)).collect();
            (c.to_string(), name.join(&TENSOR_SEP.to_string()))
        })
        .collect()
}

fn generators(m: &GradedModule) -> Vec<Generator> {
    m.basis().iter().map(|b| Generator { name: b.name.clone(), degree: b.degree }).collect()
}

fn map_table(f: &GradedMap) -> BTreeMap<String, Combo> {
    let (s, t) = (f.source(), f.target());
    (0..s.len())
        .filter_map(|i| {
            let v = f.apply_basis(i);
            (!v.is_empty()).then(|| (s.name(i).to_string(), combo_of(t, &v)))
        })
        .collect()
}

fn lambda_spec(inst: &UiabInstance) -> OpTable {
    let m = inst.module();
    let mut table = BTreeMap::new();
    for i in 0..m.len() {
        match inst.lambda(i) {
            None => {
                table.insert(m.name(i).to_string(), None);
            }
            Some(t) if !t.is_zero() => {
                table.insert(m.name(i).to_string(), Some(tensor_combo(&t)));
            }
            Some(_) => {}
        }
    }
    OpTable { degree: inst.lambda_degree(), table }
}

/// Scenario describing `inst` alone; validating it gives back an equal instance.
pub fn export_instance(inst: &UiabInstance) -> Scenario {
    let m = inst.module();
    let n = m.len();
    let mut mu = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            let key = format!("{}{TENSOR_SEP}{}", m.name(i), m.name(j));
            match inst.mu(i, j) {
                None => {
                    mu.insert(key, None);
                }
                Some(v) if !v.is_empty() => {
                    mu.insert(key, Some(combo_of(m, &v)));
                }
                Some(_) => {}
            }
        }
    }
    let truncation = inst.truncation().map(|t| TruncationSpec {
        window: t.window,
        radius: t.radius,
        weights: (0..n).map(|i| (m.name(i).to_string(), t.weights[i])).collect(),
    });
    Scenario {
        schema_version: SCHEMA_VERSION,
        name: inst.name().to_string(),
        ring: inst.ring().name(),
        module: generators(m),
        mu: Some(OpTable { degree: inst.mu_degree(), table: mu }),
        lambda: Some(lambda_spec(inst)),
        eta: combo_of(m, inst.eta()),
        differential: inst.differential().map(map_table),
        truncation,
        bivectors: BTreeMap::new(),
        opposite: None,
        cone: None,
        complexes: BTreeMap::new(),
        chain_maps: BTreeMap::new(),
        checks: vec![Task::Axioms],
    }
}

impl Scenario {
    pub fn with_bivector(mut self, name: &str, c: &TensorElement) -> Self {
        self.bivectors.insert(name.into(), tensor_combo(c));
        self
    }

    /// Attaches the opposite coproduct of `minus`, related through bivector `name`.
    pub fn with_opposite(mut self, minus: &UiabInstance, name: &str) -> Self {
        self.opposite = Some(OppositeSpec { lambda: lambda_spec(minus), bivector: name.into() });
        self
    }

    pub fn with_cone(mut self, n: i64, c0: &TensorElement, q0: &TensorElement, b: &TensorElement) -> Self {
        self.cone = Some(ConeSpec { n, c0: tensor_combo(c0), q0: tensor_combo(q0), b: tensor_combo(b) });
        self
    }

    pub fn with_complex(mut self, name: &str, c: &ChainComplex) -> Self {
        let spec = ComplexSpec { module: generators(c.module()), differential: map_table(c.differential()) };
        self.complexes.insert(name.into(), spec);
        self
    }

    pub fn with_chain_map(mut self, name: &str, source: &str, target: &str, f: &GradedMap, secondary: Option<&GradedMap>) -> Self {
        let spec = ChainMapSpec {
            source: source.into(),
            target: target.into(),
            table: map_table(f),
            secondary: secondary.map(map_table),
        };
        self.chain_maps.insert(name.into(), spec);
        self
    }

    pub fn with_checks(mut self, checks: &[Task]) -> Self {
        self.checks = checks.to_vec();
        self
    }
}

/// An empty scenario with no bialgebra, for chain-level data only.
pub fn empty_scenario(name: &str, ring: Ring) -> Scenario {
    Scenario {
        schema_version: SCHEMA_VERSION,
        name: name.into(),
        ring: ring.name(),
        module: Vec::new(),
        mu: None,
        lambda: None,
        eta: Vec::new(),
        differential: None,
        truncation: None,
        bivectors: BTreeMap::new(),
        opposite: None,
        cone: None,
        complexes: BTreeMap::new(),
        chain_maps: BTreeMap::new(),
        checks: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "schema_version": 1,
        "name": "ground ring",
        "module": [{"name": "1", "degree": 0}],
        "mu": {"degree": 0, "table": {"1⊗1": [["1", "1"]]}},
        "lambda": {"degree": -1},
        "eta": [["1", "1"]]
    }"#;

    #[test]
    fn minimal_loads_and_passes() {
        let l = Scenario::parse(MINIMAL).unwrap().validate(None).unwrap();
        let inst = l.instance.unwrap();
        let r = crate::check_axioms(&inst);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn inhomogeneous_entry_names_the_field() {
        let bad = MINIMAL.replace(r#""lambda": {"degree": -1}"#, r#""lambda": {"degree": -1, "table": {"1": [["1", "1⊗1"]]}}"#);
        let Err(Error::Schema { path, message }) = Scenario::parse(&bad).unwrap().validate(None) else {
            panic!("accepted")
        };
        assert_eq!(path, r#"lambda.table["1"][0]"#);
        assert!(message.contains("degree 0"), "{message}");
    }

    #[test]
    fn parse_errors_carry_position() {
        let Err(Error::Schema { path, message }) = Scenario::parse(&MINIMAL.replace("\"degree\": 0}]", "\"degre\": 0}]"))
        else {
            panic!()
        };
        assert_eq!(path, "module[0].degre");
        assert!(message.starts_with("line 4 column"), "{message}");
    }

    #[test]
    fn unknown_names_rejected() {
        let bad = MINIMAL.replace(r#""eta": [["1", "1"]]"#, r#""eta": [["1", "e"]]"#);
        let e = Scenario::parse(&bad).unwrap().validate(None).unwrap_err();
        assert!(matches!(e, Error::Schema { ref path, .. } if path == "eta[0]"), "{e}");
    }

    #[test]
    fn coefficients_follow_the_ring() {
        let half = MINIMAL.replace(r#""eta": [["1", "1"]]"#, r#""eta": [["1/2", "1"]]"#);
        let s = Scenario::parse(&half).unwrap();
        assert!(s.validate(None).is_err());
        assert!(s.validate(Some(Ring::Rationals)).is_ok());
    }

    #[test]
    fn version_is_checked() {
        let s = Scenario::parse(&MINIMAL.replace("\"schema_version\": 1", "\"schema_version\": 2")).unwrap();
        assert!(matches!(s.validate(None), Err(Error::Schema { path, .. }) if path == "schema_version"));
    }
}
