//! Chain complexes, chain maps, homotopies, mapping cones, quotients by
//! images, homology and the transition automorphism of a cone.
//!
//! Differentials have degree -1. A cochain complex is stored with negated
//! grading, so `δ: C^p -> C^{p+1}` becomes a map from degree `-p` to `-p-1`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, Ring, Scalar};
use crate::graded::{BasisElement, GradedMap, GradedModule, Vector};

/// Prefix marking the shifted copy of `M` inside `Cone(c) = A ⊕ M[-1]`.
pub const SUSPENSION: &str = "↑";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    module: Arc<GradedModule>,
    differential: GradedMap,
}

impl ChainComplex {
    pub fn new(module: Arc<GradedModule>, differential: GradedMap) -> Result<Self> {
        if **differential.source() != *module || **differential.target() != *module {
            return Err(Error::Dimension("differential must be an endomorphism of the module".into()));
        }
        if differential.degree() != -1 && !differential.is_zero() {
            return Err(Error::Degree(format!("differential has degree {}", differential.degree())));
        }
        let differential = differential.retag(-1).rebind(module.clone(), module.clone())?;
        if !differential.compose(&differential)?.is_zero() {
            return Err(Error::Invariant("d∘d ≠ 0".into()));
        }
        Ok(ChainComplex { module, differential })
    }

    pub fn with_zero_differential(module: Arc<GradedModule>) -> Self {
        let d = GradedMap::zero(module.clone(), module.clone(), -1);
        ChainComplex { module, differential: d }
    }

    pub fn module(&self) -> &Arc<GradedModule> {
        &self.module
    }

    pub fn differential(&self) -> &GradedMap {
        &self.differential
    }

    pub fn ring(&self) -> Ring {
        self.module.ring()
    }

    /// Matrix of `d` out of degree `k` (rows: degree `k-1`).
    pub fn d_block(&self, k: i64) -> ExactMatrix {
        self.differential
            .block(k)
            .cloned()
            .unwrap_or_else(|| ExactMatrix::zeros(self.ring(), self.module.dim(k - 1), self.module.dim(k)))
    }

    /// Alternating sum of chain ranks.
    pub fn euler_characteristic(&self) -> i64 {
        self.module.degrees().map(|k| sign_i64(k) * self.module.dim(k) as i64).sum()
    }
}

fn sign_i64(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Degree zero map commuting with the differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    map: GradedMap,
}

impl ChainMap {
    pub fn new(source: ChainComplex, target: ChainComplex, map: GradedMap) -> Result<Self> {
        if **map.source() != *source.module || **map.target() != *target.module {
            return Err(Error::Dimension("chain map between the wrong modules".into()));
        }
        if map.degree() != 0 && !map.is_zero() {
            return Err(Error::Degree(format!("chain map has degree {}", map.degree())));
        }
        let map = map.retag(0).rebind(source.module.clone(), target.module.clone())?;
        let lhs = target.differential.compose(&map)?;
        let rhs = map.compose(&source.differential)?;
        if lhs != rhs {
            return Err(Error::Invariant("map does not commute with the differentials".into()));
        }
        Ok(ChainMap { source, target, map })
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn map(&self) -> &GradedMap {
        &self.map
    }
}

/// Degree +1 map used through the graded commutator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    pub h: GradedMap,
}

/// `[d, h] = d_target∘h - (-1)^{|h|} h∘d_source`.
pub fn graded_commutator(d_target: &GradedMap, d_source: &GradedMap, h: &GradedMap) -> Result<GradedMap> {
    let ring = h.ring();
    let a = d_target.compose(h)?;
    let b = h.compose(d_source)?.scale(&ring.sign(h.degree()));
    let b = b.retag(a.degree());
    a.sub(&b)
}

#[derive(Clone, Debug)]
pub struct HomotopyReport {
    pub holds: bool,
    /// `f - g - [d, h]`; zero exactly when the homotopy relation holds.
    pub defect: GradedMap,
}

/// Decides whether `f - g = [d, h]` exactly.
pub fn is_chain_homotopic(f: &ChainMap, g: &ChainMap, h: &Homotopy) -> Result<HomotopyReport> {
    if f.source != g.source || f.target != g.target {
        return Err(Error::Dimension("maps between different complexes".into()));
    }
    if h.h.degree() != 1 && !h.h.is_zero() {
        return Err(Error::Degree(format!("homotopy has degree {}", h.h.degree())));
    }
    let h1 = h.h.retag(1);
    let comm = graded_commutator(&f.target.differential, &f.source.differential, &h1)?;
    let defect = f.map.sub(&g.map)?.sub(&comm.retag(0))?;
    Ok(HomotopyReport { holds: defect.is_zero(), defect })
}

/// Free rank and invariant factors of a finitely generated group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub free_rank: usize,
    #[serde(serialize_with = "ser_bigints")]
    pub torsion: Vec<BigInt>,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn render(&self, ring: Ring) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push(ring.name()),
            r => parts.push(format!("{}^{r}", ring.name())),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ⊕ ")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    pub ring: String,
    pub groups: BTreeMap<i64, HomologyGroup>,
}

impl HomologySummary {
    pub fn total_rank(&self) -> usize {
        self.groups.values().map(|g| g.free_rank).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups.iter().map(|(k, g)| sign_i64(*k) * g.free_rank as i64).sum()
    }
}

impl fmt::Display for HomologySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring: Ring = self.ring.parse().map_err(|_| fmt::Error)?;
        let parts: Vec<String> =
            self.groups.iter().map(|(k, g)| format!("H_{k} = {}", g.render(ring))).collect();
        f.write_str(&parts.join(", "))
    }
}

/// `span(z) / span(b)` where `z` is a basis (a saturated lattice basis over
/// the integers) and every column of `b` lies in `span(z)`.
fn subquotient(ring: Ring, n: usize, z: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Result<HomologyGroup> {
    if z.is_empty() {
        return Ok(HomologyGroup { free_rank: 0, torsion: Vec::new() });
    }
    let zm = ExactMatrix::from_columns(ring, n, z)?;
    let mut coords = Vec::with_capacity(b.len());
    for col in b {
        let x = zm
            .solve_in_image(col)?
            .ok_or_else(|| Error::Invariant("boundary outside the cycles".into()))?;
        coords.push(x);
    }
    let p = z.len();
    let x = ExactMatrix::from_columns(ring, p, &coords)?;
    match ring {
        Ring::Integers => {
            let snf = x.smith_normal_form()?;
            let r = snf.invariants.len();
            let torsion = snf.invariants.into_iter().filter(|d| !d.is_one()).collect();
            Ok(HomologyGroup { free_rank: p - r, torsion })
        }
        _ => Ok(HomologyGroup { free_rank: p - x.rank(), torsion: Vec::new() }),
    }
}

fn columns(m: &ExactMatrix) -> Vec<Vec<Scalar>> {
    (0..m.cols()).map(|j| m.column(j)).collect()
}

pub fn homology(c: &ChainComplex) -> Result<HomologySummary> {
    let ring = c.ring();
    let mut groups = BTreeMap::new();
    for k in c.module.degrees() {
        let n = c.module.dim(k);
        let z = c.d_block(k).kernel_basis();
        let b = columns(&c.d_block(k + 1));
        groups.insert(k, subquotient(ring, n, &z, &b)?);
    }
    Ok(HomologySummary { ring: ring.name(), groups })
}

/// Basis of homology in degree `k` over a field: (boundary basis, cycle representatives).
fn field_homology_basis(c: &ChainComplex, ring: Ring, k: i64) -> Result<(Vec<Vec<Scalar>>, Vec<Vec<Scalar>>)> {
    let n = c.module.dim(k);
    let dk = c.d_block(k).change_ring(ring)?;
    let dk1 = c.d_block(k + 1).change_ring(ring)?;
    let b = dk1.column_space_basis();
    let mut span = b.clone();
    let mut reps = Vec::new();
    for z in dk.kernel_basis() {
        let mut trial = span.clone();
        trial.push(z.clone());
        let m = ExactMatrix::from_columns(ring, n, &trial)?;
        if m.rank() == trial.len() {
            span = trial;
            reps.push(z);
        }
    }
    Ok((b, reps))
}

/// Matrices of the map induced on homology, degree by degree. Integer
/// complexes are handled with rational coefficients.
pub fn induced_on_homology(f: &ChainMap) -> Result<BTreeMap<i64, ExactMatrix>> {
    let ring = if f.map.ring().is_field() { f.map.ring() } else { Ring::Rationals };
    let mut out = BTreeMap::new();
    let src = &f.source;
    let tgt = &f.target;
    for k in src.module.degrees() {
        let (_, reps) = field_homology_basis(src, ring, k)?;
        let (tb, treps) = field_homology_basis(tgt, ring, k)?;
        let fk = match f.map.block(k) {
            Some(b) => b.change_ring(ring)?,
            None => ExactMatrix::zeros(ring, tgt.module.dim(k), src.module.dim(k)),
        };
        let mut basis = tb.clone();
        basis.extend(treps.iter().cloned());
        let nt = tgt.module.dim(k);
        let bm = ExactMatrix::from_columns(ring, nt, &basis)?;
        let mut cols = Vec::new();
        for r in &reps {
            let y = fk.mul_vec(r)?;
            let x = bm
                .solve_in_image(&y)?
                .ok_or_else(|| Error::Invariant("image of a cycle is not a cycle".into()))?;
            cols.push(x[tb.len()..].to_vec());
        }
        out.insert(k, ExactMatrix::from_columns(ring, treps.len(), &cols)?);
    }
    Ok(out)
}

/// `Cone(c)` of a chain map `c: M -> A` with its structure maps.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: ChainComplex,
    pub map: ChainMap,
    /// `A -> Cone(c)`, a chain map.
    pub inclusion: ChainMap,
    /// `Cone(c) -> M` of degree -1, anticommuting with the differentials.
    pub projection: GradedMap,
}

impl Cone {
    /// Index in the cone of the suspended copy of the `M` generator `i`.
    pub fn suspended(&self, i: usize) -> usize {
        let m = self.map.source.module();
        self.complex.module.index_of(&format!("{SUSPENSION}{}", m.name(i))).expect("cone basis")
    }

    pub fn from_a(&self, i: usize) -> usize {
        let a = self.map.target.module();
        self.complex.module.index_of(a.name(i)).expect("cone basis")
    }
}

/// `Cone(c)_k = A_k ⊕ M_{k-1}` with `d(a, m) = (d_A a + c(m), -d_M m)`.
pub fn mapping_cone(c: &ChainMap) -> Result<Cone> {
    let a = c.target.module.clone();
    let m = c.source.module.clone();
    let ring = a.ring();
    let mut basis: Vec<BasisElement> = a.basis().to_vec();
    basis.extend(m.basis().iter().map(|b| BasisElement::new(format!("{SUSPENSION}{}", b.name), b.degree + 1)));
    let cone = Arc::new(GradedModule::new(ring, basis)?);
    let mut images = vec![Vector::new(); cone.len()];
    for i in 0..a.len() {
        let ci = cone.index_of(a.name(i))?;
        for (j, v) in c.target.differential.apply_basis(i) {
            images[ci].insert(cone.index_of(a.name(j))?, v);
        }
    }
    let minus = ring.from_int(-1);
    for i in 0..m.len() {
        let ci = cone.index_of(&format!("{SUSPENSION}{}", m.name(i)))?;
        for (j, v) in c.map.apply_basis(i) {
            crate::graded::accumulate(ring, &mut images[ci], cone.index_of(a.name(j))?, &v);
        }
        for (j, v) in c.source.differential.apply_basis(i) {
            let t = cone.index_of(&format!("{SUSPENSION}{}", m.name(j)))?;
            crate::graded::accumulate(ring, &mut images[ci], t, &ring.mul(&minus, &v));
        }
    }
    let d = GradedMap::from_images(cone.clone(), cone.clone(), -1, &images)?;
    let complex = ChainComplex::new(cone.clone(), d)?;

    let incl: Vec<Vector> =
        (0..a.len()).map(|i| Vector::from([(cone.index_of(a.name(i)).expect("cone"), Scalar::one())])).collect();
    let inclusion = ChainMap::new(
        c.target.clone(),
        complex.clone(),
        GradedMap::from_images(a.clone(), cone.clone(), 0, &incl)?,
    )?;
    let proj: Vec<Vector> = (0..cone.len())
        .map(|i| match cone.name(i).strip_prefix(SUSPENSION) {
            Some(n) if m.contains(n) && !a.contains(cone.name(i)) => {
                Vector::from([(m.index_of(n).expect("M generator"), Scalar::one())])
            }
            _ => Vector::new(),
        })
        .collect();
    let projection = GradedMap::from_images(cone.clone(), m.clone(), -1, &proj)?;
    Ok(Cone { complex, map: c.clone(), inclusion, projection })
}

/// `A / im c` for a chain map `c: M -> A`, presented by generators of the image.
#[derive(Clone, Debug)]
pub struct QuotientComplex {
    ambient: ChainComplex,
    image: GradedMap,
}

impl QuotientComplex {
    pub fn ambient(&self) -> &ChainComplex {
        &self.ambient
    }

    fn generators(&self, k: i64) -> Vec<Vec<Scalar>> {
        let src = self.image.source();
        let n = self.ambient.module.dim(k);
        src.in_degree(k)
            .iter()
            .map(|&i| {
                let v = self.image.apply_basis(i);
                let mut col = vec![Scalar::zero(); n];
                for (j, c) in v {
                    col[self.ambient.module.position(j)] = c;
                }
                col
            })
            .collect()
    }

    fn image_matrix(&self, k: i64) -> Result<ExactMatrix> {
        let gens = self.generators(k);
        ExactMatrix::from_columns(self.ambient.ring(), self.ambient.module.dim(k), &gens)
    }

    /// Whether a vector of `A` (in degree `k`) lies in `im c`.
    pub fn contains(&self, v: &Vector) -> Result<bool> {
        let module = &self.ambient.module;
        let Some(k) = module.vector_degree(v)? else { return Ok(true) };
        let mut col = vec![Scalar::zero(); module.dim(k)];
        for (&j, c) in v {
            col[module.position(j)] = c.clone();
        }
        Ok(self.image_matrix(k)?.solve_in_image(&col)?.is_some())
    }

    /// The group `A_k / im c_k`.
    pub fn group(&self, k: i64) -> Result<HomologyGroup> {
        let n = self.ambient.module.dim(k);
        let ident: Vec<Vec<Scalar>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
            .collect();
        subquotient(self.ambient.ring(), n, &ident, &self.generators(k))
    }

    /// `d(im c) ⊆ im c`, so the projection `A -> A / im c` is a chain map.
    pub fn projection_is_chain_map(&self) -> Result<bool> {
        for i in 0..self.image.source().len() {
            let g = self.image.apply_basis(i);
            if !self.contains(&self.ambient.differential.apply(&g))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Homology of `A / im c`: cycles `{a : da ∈ im c}` modulo `d A + im c`.
    pub fn homology(&self) -> Result<HomologySummary> {
        let ring = self.ambient.ring();
        let module = &self.ambient.module;
        let mut groups = BTreeMap::new();
        for k in module.degrees() {
            let n = module.dim(k);
            // kernel of [d_k | -I_{k-1}] projected to A_k
            let dk = self.ambient.d_block(k);
            let ik = self.image_matrix(k - 1)?;
            let rows = dk.rows();
            let mut cols = columns(&dk);
            for g in columns(&ik) {
                cols.push(g.iter().map(|x| ring.neg(x)).collect());
            }
            let stacked = ExactMatrix::from_columns(ring, rows, &cols)?;
            let gens: Vec<Vec<Scalar>> = stacked.kernel_basis().into_iter().map(|v| v[..n].to_vec()).collect();
            let z = if gens.is_empty() {
                Vec::new()
            } else {
                ExactMatrix::from_columns(ring, n, &gens)?.column_space_basis()
            };
            let mut b = columns(&self.ambient.d_block(k + 1));
            b.extend(self.generators(k));
            groups.insert(k, subquotient(ring, n, &z, &b)?);
        }
        Ok(HomologySummary { ring: ring.name(), groups })
    }
}

pub fn quotient_by_image(c: &ChainMap) -> QuotientComplex {
    QuotientComplex { ambient: c.target.clone(), image: c.map.clone() }
}

/// How a complex encodes its grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// Chains in degrees `[0, n]`; essential when `∂` vanishes on degree `n`.
    Homological,
    /// Cochains stored with negated grading in `[-n, 0]`; essential when
    /// `δ` vanishes on `C^{n-1}`.
    Cohomological,
}

fn check_support(c: &ChainComplex, lo: i64, hi: i64) -> Result<()> {
    match c.module.degrees().find(|k| *k < lo || *k > hi) {
        Some(k) => Err(Error::Hypothesis(format!("generator in degree {k} outside [{lo}, {hi}]"))),
        None => Ok(()),
    }
}

pub fn check_r_essential(c: &ChainComplex, n: i64, orientation: Orientation) -> Result<bool> {
    match orientation {
        Orientation::Homological => {
            check_support(c, 0, n)?;
            Ok(c.d_block(n).is_zero())
        }
        Orientation::Cohomological => {
            check_support(c, -n, 0)?;
            Ok(c.d_block(-(n - 1)).is_zero())
        }
    }
}

/// The homotopy `[h]` between `[c]` and `[c']` on `MC(K_1)/im c_1 -> MC(K_2)/im c_2`.
#[derive(Clone, Debug)]
pub struct QuotientHomotopy {
    /// Lift of `[h]` to `MC(K_1) -> MC(K_2)`: `h` below the top cochain degree, zero on it.
    pub h_bar: GradedMap,
    pub verified: bool,
    pub witness: Option<String>,
}

/// Complexes use cohomological orientation (negated storage) with top
/// cochain degree `n`; `c1`, `c2` are the continuation maps whose images are
/// divided out.
pub fn induced_quotient_homotopy(
    c: &ChainMap,
    c_prime: &ChainMap,
    h: &GradedMap,
    c1: &ChainMap,
    c2: &ChainMap,
    n: i64,
) -> Result<QuotientHomotopy> {
    if c.source != c_prime.source || c.target != c_prime.target {
        return Err(Error::Hypothesis("c and c' must share source and target".into()));
    }
    if c1.target != c.source || c2.target != c.target {
        return Err(Error::Hypothesis("c1, c2 must land in the source and target of c".into()));
    }
    for cx in [&c.source, &c.target] {
        if !check_r_essential(cx, n, Orientation::Cohomological)? {
            return Err(Error::Hypothesis("complex is not R-essential".into()));
        }
    }
    check_support(&c1.source, -2 * n, -n)?;
    check_support(&c2.source, -2 * n, -n)?;
    if h.degree() != 1 && !h.is_zero() {
        return Err(Error::Degree(format!("homotopy has degree {}", h.degree())));
    }
    let h = h.retag(1);
    let report = is_chain_homotopic(c_prime, c, &Homotopy { h: h.clone() })?;
    if !report.holds {
        return Err(Error::Hypothesis("c' - c ≠ [d, h]".into()));
    }
    let q2 = quotient_by_image(c2);
    for (name, f) in [("c", c), ("c'", c_prime)] {
        for i in 0..c1.source.module.len() {
            let g = c1.map.apply_basis(i);
            if !q2.contains(&f.map.apply(&g))? {
                return Err(Error::Hypothesis(format!("{name}(im c1) ⊄ im c2")));
            }
        }
    }

    let src = c.source.module.clone();
    let mut h_bar = h.clone();
    for i in src.in_degree(-n).to_vec() {
        for j in 0..c.target.module.len() {
            if c.target.module.degree(j) == -n + 1 {
                h_bar.set_entry(j, i, Scalar::zero())?;
            }
        }
    }

    let ring = c.map.ring();
    let d1 = c.source.differential();
    let d2 = c.target.differential();
    let mut witness = None;
    for i in 0..src.len() {
        let e = Vector::from([(i, Scalar::one())]);
        let lhs = c_prime.map.apply(&e);
        let mut diff = lhs;
        for (j, v) in c.map.apply(&e) {
            crate::graded::accumulate(ring, &mut diff, j, &ring.neg(&v));
        }
        let rhs1 = d2.apply(&h_bar.apply(&e));
        let rhs2 = h_bar.apply(&d1.apply(&e));
        for (j, v) in rhs1.into_iter().chain(rhs2) {
            crate::graded::accumulate(ring, &mut diff, j, &ring.neg(&v));
        }
        if !q2.contains(&diff)? {
            witness = Some(format!(
                "on {}: [c'] - [c] - [d,[h]] = {}",
                src.name(i),
                c.target.module.render(&diff)
            ));
            break;
        }
    }
    // [h] must also respect the submodules being divided out
    for i in 0..c1.source.module.len() {
        let g = c1.map.apply_basis(i);
        if witness.is_none() && !q2.contains(&h_bar.apply(&g))? {
            witness = Some("[h] does not preserve the images".into());
        }
    }
    Ok(QuotientHomotopy { h_bar, verified: witness.is_none(), witness })
}

/// The unipotent automorphism `Φ(a, m) = (a + c⃗(m), m)` of a cone.
#[derive(Clone, Debug)]
pub struct Transition {
    pub phi: ChainMap,
    /// `(Φ - id)² = 0` exactly.
    pub unipotent: bool,
    /// Action on homology per degree, in a basis of cycle representatives.
    pub homology_action: BTreeMap<i64, ExactMatrix>,
    pub acts_trivially: bool,
}

pub fn transition_automorphism(cone: &Cone, csec: &GradedMap) -> Result<Transition> {
    let m = cone.map.source.module.clone();
    let a = cone.map.target.module.clone();
    if **csec.source() != *m || **csec.target() != *a {
        return Err(Error::Dimension("secondary map must go from M to A".into()));
    }
    if csec.degree() != 1 && !csec.is_zero() {
        return Err(Error::Degree(format!("secondary map has degree {}", csec.degree())));
    }
    let csec = csec.retag(1);
    let comm = graded_commutator(cone.map.target.differential(), cone.map.source.differential(), &csec)?;
    if !comm.is_zero() {
        return Err(Error::Hypothesis("secondary map is not a chain map".into()));
    }
    let module = cone.complex.module().clone();
    let ring = module.ring();
    let mut images: Vec<Vector> = (0..module.len()).map(|i| Vector::from([(i, Scalar::one())])).collect();
    for i in 0..m.len() {
        let ci = cone.suspended(i);
        for (j, v) in csec.apply_basis(i) {
            crate::graded::accumulate(ring, &mut images[ci], cone.from_a(j), &v);
        }
    }
    let phi_map = GradedMap::from_images(module.clone(), module.clone(), 0, &images)?;
    let phi = ChainMap::new(cone.complex.clone(), cone.complex.clone(), phi_map)?;
    let n = phi.map.sub(&GradedMap::identity(module.clone()))?;
    let unipotent = n.compose(&n)?.is_zero();
    let homology_action = induced_on_homology(&phi)?;
    let acts_trivially = homology_action.iter().all(|(_, mtx)| {
        let ring = mtx.ring();
        *mtx == ExactMatrix::identity(ring, mtx.rows())
    });
    Ok(Transition { phi, unipotent, homology_action, acts_trivially })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn module(ring: Ring, gens: &[(&str, i64)]) -> Arc<GradedModule> {
        Arc::new(GradedModule::new(ring, gens.iter().map(|(n, d)| BasisElement::new(*n, *d)).collect()).unwrap())
    }

    fn scalar_map(src: &ChainComplex, tgt: &ChainComplex, k: i64) -> ChainMap {
        let ring = src.ring();
        let images = vec![Vector::from([(0, ring.from_int(k))])];
        let f = GradedMap::from_images(src.module().clone(), tgt.module().clone(), 0, &images).unwrap();
        ChainMap::new(src.clone(), tgt.clone(), f).unwrap()
    }

    #[test]
    fn circle_homology() {
        let m = module(Ring::Integers, &[("p", 0), ("q", 1)]);
        let h = homology(&ChainComplex::with_zero_differential(m)).unwrap();
        assert_eq!(h.to_string(), "H_0 = Z, H_1 = Z");
    }

    #[test]
    fn cone_of_two() {
        let z = ChainComplex::with_zero_differential(module(Ring::Integers, &[("x", 0)]));
        let cone = mapping_cone(&scalar_map(&z, &z, 2)).unwrap();
        let h = homology(&cone.complex).unwrap();
        assert_eq!(h.groups[&0], HomologyGroup { free_rank: 0, torsion: vec![BigInt::from(2)] });
        assert!(h.groups[&1].is_zero());

        let q = quotient_by_image(&scalar_map(&z, &z, 2));
        assert_eq!(q.group(0).unwrap().torsion, vec![BigInt::from(2)]);
        assert!(q.projection_is_chain_map().unwrap());
        assert_eq!(q.homology().unwrap().groups[&0].torsion, vec![BigInt::from(2)]);
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        for ring in [Ring::Integers, Ring::Rationals, Ring::PrimeField(5)] {
            let z = ChainComplex::with_zero_differential(module(ring, &[("x", 0)]));
            let cone = mapping_cone(&scalar_map(&z, &z, 1)).unwrap();
            assert!(homology(&cone.complex).unwrap().groups.values().all(HomologyGroup::is_zero));
        }
    }

    #[test]
    fn bad_differential_rejected() {
        let m = module(Ring::Integers, &[("a", 2), ("b", 1), ("c", 0)]);
        let mut imgs = vec![Vector::new(); 3];
        imgs[m.index_of("a").unwrap()] = Vector::from([(m.index_of("b").unwrap(), Scalar::one())]);
        imgs[m.index_of("b").unwrap()] = Vector::from([(m.index_of("c").unwrap(), Scalar::one())]);
        let d = GradedMap::from_images(m.clone(), m.clone(), -1, &imgs).unwrap();
        assert!(matches!(ChainComplex::new(m, d), Err(Error::Invariant(_))));
    }

    #[test]
    fn r_essential_examples() {
        let ring = Ring::Integers;
        let circle = ChainComplex::with_zero_differential(module(ring, &[("p", 0), ("q", 1)]));
        assert!(check_r_essential(&circle, 1, Orientation::Homological).unwrap());
        let m = module(ring, &[("x", 3), ("y", 2)]);
        let mut imgs = vec![Vector::new(); 2];
        imgs[m.index_of("x").unwrap()] = Vector::from([(m.index_of("y").unwrap(), Scalar::one())]);
        let d = GradedMap::from_images(m.clone(), m.clone(), -1, &imgs).unwrap();
        let c = ChainComplex::new(m, d).unwrap();
        assert!(!check_r_essential(&c, 3, Orientation::Homological).unwrap());
        assert!(check_r_essential(&c, 1, Orientation::Homological).is_err());
        let sphere = ChainComplex::with_zero_differential(module(ring, &[("min", 0), ("max", 4)]));
        assert!(check_r_essential(&sphere, 4, Orientation::Homological).unwrap());
    }

    #[test]
    fn commutator_squares_to_zero() {
        let ring = Ring::Integers;
        let m = module(ring, &[("a", 1), ("b", 0), ("c", 1), ("e", 0)]);
        let mut imgs = vec![Vector::new(); 4];
        imgs[m.index_of("a").unwrap()] = Vector::from([(m.index_of("b").unwrap(), ring.from_int(3))]);
        let d = GradedMap::from_images(m.clone(), m.clone(), -1, &imgs).unwrap();
        let mut himgs = vec![Vector::new(); 4];
        himgs[m.index_of("b").unwrap()] = Vector::from([(m.index_of("c").unwrap(), ring.from_int(2))]);
        himgs[m.index_of("e").unwrap()] = Vector::from([(m.index_of("a").unwrap(), ring.from_int(-1))]);
        let h = GradedMap::from_images(m.clone(), m.clone(), 1, &himgs).unwrap();
        let dh = graded_commutator(&d, &d, &h).unwrap();
        let ddh = graded_commutator(&d, &d, &dh).unwrap();
        assert!(ddh.is_zero());
    }
}
