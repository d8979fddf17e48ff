//! Free graded modules, homogeneous maps and the Koszul sign calculus.
//!
//! Conventions, fixed here and nowhere else:
//! * `(f⊗g)(x⊗y) = (-1)^{|g||x|} f(x)⊗g(y)`
//! * `τ(x⊗y) = (-1)^{|x||y|} y⊗x`
//! * `M[k]_n = M_{n+k}`: shifting by `k` lowers every degree by `k`
//! * `⟨f^∨ φ, x⟩ = (-1)^{|φ||f|} ⟨φ, f x⟩`
//! * `f[k] = (-1)^{k|f|} f` on the shifted modules

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, Ring, Scalar};

/// Sparse vector over the basis of a module, keyed by basis index.
pub type Vector = BTreeMap<usize, Scalar>;

/// Adds `c` to `v[i]`, dropping zeros.
pub fn accumulate<K: Ord>(ring: Ring, v: &mut BTreeMap<K, Scalar>, k: K, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match v.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c.clone());
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = ring.add(e.get(), c);
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub name: String,
    pub degree: i64,
}

impl BasisElement {
    pub fn new(name: impl Into<String>, degree: i64) -> Self {
        BasisElement { name: name.into(), degree }
    }
}

pub const TENSOR_SEP: char = '⊗';
const DUAL_MARK: &str = "^∨";

/// Name of the dual basis element; dualizing twice returns the original name.
pub fn dual_name(name: &str) -> String {
    match name.strip_suffix(DUAL_MARK) {
        Some(base) => base.to_string(),
        None => format!("{name}{DUAL_MARK}"),
    }
}

#[derive(Clone, Debug)]
pub struct GradedModule {
    ring: Ring,
    basis: Vec<BasisElement>,
    index: HashMap<String, usize>,
    factors: Vec<Arc<GradedModule>>,
    by_degree: BTreeMap<i64, Vec<usize>>,
    pos: Vec<usize>,
}

impl PartialEq for GradedModule {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.basis == other.basis
    }
}

impl Eq for GradedModule {}

impl GradedModule {
    /// Module with basis sorted canonically by degree, then name.
    pub fn new(ring: Ring, mut basis: Vec<BasisElement>) -> Result<Self> {
        for b in &basis {
            if b.name.contains(TENSOR_SEP) || b.name.trim().is_empty() {
                return Err(Error::Invariant(format!("illegal basis name {:?}", b.name)));
            }
        }
        basis.sort_by(|a, b| (a.degree, &a.name).cmp(&(b.degree, &b.name)));
        Self::from_ordered(ring, basis, Vec::new())
    }

    fn from_ordered(ring: Ring, basis: Vec<BasisElement>, factors: Vec<Arc<GradedModule>>) -> Result<Self> {
        let mut index = HashMap::with_capacity(basis.len());
        let mut by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        let mut pos = Vec::with_capacity(basis.len());
        for (i, b) in basis.iter().enumerate() {
            if index.insert(b.name.clone(), i).is_some() {
                return Err(Error::Invariant(format!("duplicate basis name {:?}", b.name)));
            }
            let block = by_degree.entry(b.degree).or_default();
            pos.push(block.len());
            block.push(i);
        }
        Ok(GradedModule { ring, basis, index, factors, by_degree, pos })
    }

    pub fn zero(ring: Ring) -> Self {
        Self::new(ring, Vec::new()).expect("empty module")
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.basis[i].degree
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownBasis(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Degrees with at least one generator, ascending.
    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.by_degree.keys().copied()
    }

    pub fn in_degree(&self, d: i64) -> &[usize] {
        self.by_degree.get(&d).map_or(&[], |v| v.as_slice())
    }

    pub fn dim(&self, d: i64) -> usize {
        self.in_degree(d).len()
    }

    /// Position of generator `i` inside its degree block.
    pub fn position(&self, i: usize) -> usize {
        self.pos[i]
    }

    /// Factors of a tensor product module; empty otherwise.
    pub fn factors(&self) -> &[Arc<GradedModule>] {
        &self.factors
    }

    /// `a⊗b` with basis ordered lexicographically in (left, right).
    pub fn tensor(a: &Arc<GradedModule>, b: &Arc<GradedModule>) -> Result<GradedModule> {
        if a.ring != b.ring {
            return Err(Error::RingMismatch(a.ring, b.ring));
        }
        let mut basis = Vec::with_capacity(a.len() * b.len());
        for x in &a.basis {
            for y in &b.basis {
                basis.push(BasisElement::new(format!("{}{TENSOR_SEP}{}", x.name, y.name), x.degree + y.degree));
            }
        }
        Self::from_ordered(a.ring, basis, vec![a.clone(), b.clone()])
    }

    /// Index of `x⊗y` in a binary tensor module.
    pub fn pair_index(&self, i: usize, j: usize) -> usize {
        i * self.factors[1].len() + j
    }

    pub fn split_pair(&self, k: usize) -> (usize, usize) {
        let n = self.factors[1].len();
        (k / n, k % n)
    }

    /// `M[k]`: same names, every degree lowered by `k`.
    pub fn shift(&self, k: i64) -> GradedModule {
        let basis = self.basis.iter().map(|b| BasisElement::new(b.name.clone(), b.degree - k)).collect();
        Self::from_ordered(self.ring, basis, Vec::new()).expect("names stay unique")
    }

    /// `M^∨` with dual basis `x^∨` in degree `-|x|`.
    pub fn dual(&self) -> GradedModule {
        let mut basis: Vec<BasisElement> =
            self.basis.iter().map(|b| BasisElement::new(dual_name(&b.name), -b.degree)).collect();
        basis.sort_by(|a, b| (a.degree, &a.name).cmp(&(b.degree, &b.name)));
        Self::from_ordered(self.ring, basis, Vec::new()).expect("names stay unique")
    }

    /// Direct sum with the generators of `a` first.
    pub fn direct_sum(a: &GradedModule, b: &GradedModule) -> Result<GradedModule> {
        if a.ring != b.ring {
            return Err(Error::RingMismatch(a.ring, b.ring));
        }
        let basis = a.basis.iter().chain(&b.basis).cloned().collect();
        Self::from_ordered(a.ring, basis, Vec::new())
    }

    /// Renames every generator.
    pub fn renamed(&self, f: impl Fn(&str) -> String) -> Result<GradedModule> {
        let basis = self.basis.iter().map(|b| BasisElement::new(f(&b.name), b.degree)).collect();
        Self::from_ordered(self.ring, basis, Vec::new())
    }

    pub fn vector_from_names(&self, terms: &[(Scalar, &str)]) -> Result<Vector> {
        let mut v = Vector::new();
        for (c, n) in terms {
            accumulate(self.ring, &mut v, self.index_of(n)?, c);
        }
        Ok(v)
    }

    /// Degree of a nonzero homogeneous vector.
    pub fn vector_degree(&self, v: &Vector) -> Result<Option<i64>> {
        let mut d = None;
        for &i in v.keys() {
            let e = self.degree(i);
            match d {
                None => d = Some(e),
                Some(x) if x != e => {
                    return Err(Error::Degree(format!("inhomogeneous vector: degrees {x} and {e}")))
                }
                _ => {}
            }
        }
        Ok(d)
    }

    pub fn render(&self, v: &Vector) -> String {
        render_terms(v.iter().map(|(&i, c)| (self.name(i).to_string(), c)))
    }
}

/// Renders a linear combination as `a - 2 b + c`; `0` when empty.
pub fn render_terms<'a>(terms: impl Iterator<Item = (String, &'a Scalar)>) -> String {
    let mut out = String::new();
    for (name, c) in terms {
        let s = c.to_string();
        let (neg, mag) = match s.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, s),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != "1" {
            out.push_str(&mag);
            out.push(' ');
        }
        out.push_str(&name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Homogeneous map stored as one matrix per source degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    source: Arc<GradedModule>,
    target: Arc<GradedModule>,
    degree: i64,
    blocks: BTreeMap<i64, ExactMatrix>,
}

impl GradedMap {
    pub fn zero(source: Arc<GradedModule>, target: Arc<GradedModule>, degree: i64) -> GradedMap {
        let ring = source.ring;
        let blocks = source
            .degrees()
            .map(|k| (k, ExactMatrix::zeros(ring, target.dim(k + degree), source.dim(k))))
            .collect();
        GradedMap { source, target, degree, blocks }
    }

    pub fn identity(m: Arc<GradedModule>) -> GradedMap {
        let ring = m.ring;
        let blocks = m.degrees().map(|k| (k, ExactMatrix::identity(ring, m.dim(k)))).collect();
        GradedMap { source: m.clone(), target: m, degree: 0, blocks }
    }

    /// Builds a map from the images of the source generators, checking homogeneity.
    pub fn from_images(
        source: Arc<GradedModule>,
        target: Arc<GradedModule>,
        degree: i64,
        images: &[Vector],
    ) -> Result<GradedMap> {
        if source.ring != target.ring {
            return Err(Error::RingMismatch(source.ring, target.ring));
        }
        if images.len() != source.len() {
            return Err(Error::Dimension(format!(
                "{} images for {} generators",
                images.len(),
                source.len()
            )));
        }
        let mut map = GradedMap::zero(source.clone(), target.clone(), degree);
        for (i, img) in images.iter().enumerate() {
            let k = source.degree(i);
            for (&j, c) in img {
                if j >= target.len() {
                    return Err(Error::Dimension(format!("target index {j} out of range")));
                }
                if target.degree(j) != k + degree {
                    return Err(Error::Degree(format!(
                        "image of {} (degree {k}) contains {} of degree {}, expected degree {}",
                        source.name(i),
                        target.name(j),
                        target.degree(j),
                        k + degree
                    )));
                }
                let block = map.blocks.get_mut(&k).expect("block per source degree");
                block.set(target.position(j), source.position(i), c.clone());
            }
        }
        Ok(map)
    }

    pub fn source(&self) -> &Arc<GradedModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedModule> {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn ring(&self) -> Ring {
        self.source.ring
    }

    pub fn blocks(&self) -> &BTreeMap<i64, ExactMatrix> {
        &self.blocks
    }

    pub fn block(&self, k: i64) -> Option<&ExactMatrix> {
        self.blocks.get(&k)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(ExactMatrix::is_zero)
    }

    pub fn apply_basis(&self, i: usize) -> Vector {
        let k = self.source.degree(i);
        let col = self.source.position(i);
        let block = &self.blocks[&k];
        let rows = self.target.in_degree(k + self.degree);
        let mut v = Vector::new();
        for (r, &j) in rows.iter().enumerate() {
            let c = block.get(r, col);
            if !c.is_zero() {
                v.insert(j, c.clone());
            }
        }
        v
    }

    /// Images of all source generators, in source order.
    pub fn images(&self) -> Vec<Vector> {
        (0..self.source.len()).map(|i| self.apply_basis(i)).collect()
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let ring = self.ring();
        let mut out = Vector::new();
        for (&i, c) in v {
            for (j, d) in self.apply_basis(i) {
                accumulate(ring, &mut out, j, &ring.mul(c, &d));
            }
        }
        out
    }

    /// Coefficient of target generator `j` in the image of source generator `i`.
    pub fn entry(&self, j: usize, i: usize) -> Scalar {
        let k = self.source.degree(i);
        if self.target.degree(j) != k + self.degree {
            return Scalar::zero();
        }
        self.blocks[&k].get(self.target.position(j), self.source.position(i)).clone()
    }

    pub fn set_entry(&mut self, j: usize, i: usize, c: Scalar) -> Result<()> {
        let k = self.source.degree(i);
        if self.target.degree(j) != k + self.degree {
            return Err(Error::Degree(format!(
                "entry {} <- {} breaks homogeneity",
                self.target.name(j),
                self.source.name(i)
            )));
        }
        let (r, c0) = (self.target.position(j), self.source.position(i));
        self.blocks.get_mut(&k).expect("block").set(r, c0, c);
        Ok(())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap> {
        if other.target != self.source {
            return Err(Error::Dimension("composition of incompatible maps".into()));
        }
        let mut out = GradedMap::zero(other.source.clone(), self.target.clone(), self.degree + other.degree);
        for (k, b) in &other.blocks {
            let mid = k + other.degree;
            if let Some(a) = self.blocks.get(&mid) {
                out.blocks.insert(*k, a.mul(b)?);
            }
        }
        Ok(out)
    }

    fn zip(&self, other: &GradedMap, f: impl Fn(&ExactMatrix, &ExactMatrix) -> Result<ExactMatrix>) -> Result<GradedMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Dimension("maps between different modules".into()));
        }
        if self.degree != other.degree && !(self.is_zero() || other.is_zero()) {
            return Err(Error::Degree(format!("degrees {} and {}", self.degree, other.degree)));
        }
        if self.degree != other.degree {
            return Ok(if self.is_zero() { other.clone() } else { self.clone() });
        }
        let mut out = self.clone();
        for (k, b) in out.blocks.iter_mut() {
            *b = f(b, &other.blocks[k])?;
        }
        Ok(out)
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap> {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &GradedMap) -> Result<GradedMap> {
        self.zip(other, |a, b| a.sub(b))
    }

    pub fn scale(&self, s: &Scalar) -> GradedMap {
        let mut out = self.clone();
        for b in out.blocks.values_mut() {
            *b = b.scale(s);
        }
        out
    }

    /// Same matrices with a different nominal degree; only valid for zero maps
    /// or when degrees already agree.
    fn with_degree(&self, degree: i64) -> GradedMap {
        if degree == self.degree {
            self.clone()
        } else {
            debug_assert!(self.is_zero());
            GradedMap::zero(self.source.clone(), self.target.clone(), degree)
        }
    }

    /// `f⊗g` between tensor modules, with the Koszul sign `(-1)^{|g||x|}`.
    pub fn tensor_map(f: &GradedMap, g: &GradedMap) -> Result<GradedMap> {
        if f.ring() != g.ring() {
            return Err(Error::RingMismatch(f.ring(), g.ring()));
        }
        let ring = f.ring();
        let src = Arc::new(GradedModule::tensor(&f.source, &g.source)?);
        let tgt = Arc::new(GradedModule::tensor(&f.target, &g.target)?);
        let fi = f.images();
        let gi = g.images();
        let mut images = Vec::with_capacity(src.len());
        for x in 0..f.source.len() {
            let sign = ring.sign(g.degree * f.source.degree(x));
            for y in 0..g.source.len() {
                let mut v = Vector::new();
                for (a, ca) in &fi[x] {
                    for (b, cb) in &gi[y] {
                        let c = ring.mul(&sign, &ring.mul(ca, cb));
                        accumulate(ring, &mut v, tgt.pair_index(*a, *b), &c);
                    }
                }
                images.push(v);
            }
        }
        GradedMap::from_images(src, tgt, f.degree + g.degree, &images)
    }

    /// `τ: M⊗N -> N⊗M`.
    pub fn twist(m: &Arc<GradedModule>, n: &Arc<GradedModule>) -> Result<GradedMap> {
        let ring = m.ring;
        let src = Arc::new(GradedModule::tensor(m, n)?);
        let tgt = Arc::new(GradedModule::tensor(n, m)?);
        let mut images = Vec::with_capacity(src.len());
        for x in 0..m.len() {
            for y in 0..n.len() {
                let mut v = Vector::new();
                v.insert(tgt.pair_index(y, x), ring.sign(m.degree(x) * n.degree(y)));
                images.push(v);
            }
        }
        GradedMap::from_images(src, tgt, 0, &images)
    }

    /// `f[k]: M[k] -> N[k]`, equal to `(-1)^{k|f|} f` on generators.
    pub fn shift_map(&self, k: i64) -> GradedMap {
        let src = Arc::new(self.source.shift(k));
        let tgt = Arc::new(self.target.shift(k));
        let sign = self.ring().sign(k * self.degree);
        let images: Vec<Vector> = self
            .images()
            .into_iter()
            .map(|v| v.into_iter().map(|(j, c)| (j, self.ring().mul(&c, &sign))).collect())
            .collect();
        GradedMap::from_images(src, tgt, self.degree, &images).expect("shift preserves homogeneity")
    }

    /// `f^∨: N^∨ -> M^∨` with `⟨f^∨ φ, x⟩ = (-1)^{|φ||f|}⟨φ, f x⟩`.
    pub fn dual_map(&self) -> GradedMap {
        let ring = self.ring();
        let src = Arc::new(self.target.dual());
        let tgt = Arc::new(self.source.dual());
        let mut images = vec![Vector::new(); src.len()];
        for x in 0..self.source.len() {
            for (y, c) in self.apply_basis(x) {
                let phi = src.index_of(&dual_name(self.target.name(y))).expect("dual basis");
                let xv = tgt.index_of(&dual_name(self.source.name(x))).expect("dual basis");
                let s = ring.sign(src.degree(phi) * self.degree);
                accumulate(ring, &mut images[phi], xv, &ring.mul(&s, &c));
            }
        }
        GradedMap::from_images(src, tgt, self.degree, &images).expect("dual is homogeneous")
    }

    /// Canonical `M -> M^∨∨`, `x ↦ (-1)^{|x|} x^∨∨`.
    pub fn double_dual_identification(m: &Arc<GradedModule>) -> GradedMap {
        let dd = Arc::new(m.dual().dual());
        let ring = m.ring;
        let images: Vec<Vector> = (0..m.len())
            .map(|i| {
                let j = dd.index_of(m.name(i)).expect("same names");
                Vector::from([(j, ring.sign(m.degree(i)))])
            })
            .collect();
        GradedMap::from_images(m.clone(), dd, 0, &images).expect("degree zero")
    }

    /// Rebinds the map to structurally equal modules.
    pub fn rebind(&self, source: Arc<GradedModule>, target: Arc<GradedModule>) -> Result<GradedMap> {
        if *source != *self.source || *target != *self.target {
            return Err(Error::Dimension("rebinding to different modules".into()));
        }
        Ok(GradedMap { source, target, degree: self.degree, blocks: self.blocks.clone() })
    }

    /// Renders every nonzero image, one `x ↦ f(x)` per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for i in 0..self.source.len() {
            let v = self.apply_basis(i);
            if !v.is_empty() {
                out.push_str(&format!("{} ↦ {}\n", self.source.name(i), self.target.render(&v)));
            }
        }
        out
    }

    pub(crate) fn retag(&self, degree: i64) -> GradedMap {
        self.with_degree(degree)
    }
}

/// Element of a tensor power (or product) of modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    factors: Vec<Arc<GradedModule>>,
    terms: BTreeMap<Vec<usize>, Scalar>,
}

impl TensorElement {
    pub fn zero(factors: Vec<Arc<GradedModule>>) -> Self {
        TensorElement { factors, terms: BTreeMap::new() }
    }

    pub fn new(factors: Vec<Arc<GradedModule>>, terms: BTreeMap<Vec<usize>, Scalar>) -> Result<Self> {
        for k in terms.keys() {
            if k.len() != factors.len() || k.iter().zip(&factors).any(|(&i, m)| i >= m.len()) {
                return Err(Error::Dimension(format!("bad tensor index {k:?}")));
            }
        }
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let t = TensorElement { factors, terms };
        t.degree()?;
        Ok(t)
    }

    /// Builds from named terms, e.g. `[(1, ["A", "1"]), (-1, ["1", "A"])]`.
    pub fn from_names(factors: Vec<Arc<GradedModule>>, terms: &[(Scalar, Vec<&str>)]) -> Result<Self> {
        let ring = factors.first().map_or(Ring::Integers, |m| m.ring);
        let mut map = BTreeMap::new();
        for (c, names) in terms {
            if names.len() != factors.len() {
                return Err(Error::Dimension(format!("term {names:?} has wrong arity")));
            }
            let idx = names.iter().zip(&factors).map(|(n, m)| m.index_of(n)).collect::<Result<Vec<_>>>()?;
            accumulate(ring, &mut map, idx, c);
        }
        Self::new(factors, map)
    }

    pub fn factors(&self) -> &[Arc<GradedModule>] {
        &self.factors
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn ring(&self) -> Ring {
        self.factors.first().map_or(Ring::Integers, |m| m.ring)
    }

    fn term_degree(&self, k: &[usize]) -> i64 {
        k.iter().zip(&self.factors).map(|(&i, m)| m.degree(i)).sum()
    }

    /// Degree of a nonzero homogeneous tensor; `None` for zero.
    pub fn degree(&self) -> Result<Option<i64>> {
        let mut d = None;
        for k in self.terms.keys() {
            let e = self.term_degree(k);
            match d {
                None => d = Some(e),
                Some(x) if x != e => {
                    return Err(Error::Degree(format!("inhomogeneous tensor: degrees {x} and {e}")))
                }
                _ => {}
            }
        }
        Ok(d)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let ring = self.ring();
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (k.clone(), ring.mul(c, s)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        TensorElement { factors: self.factors.clone(), terms }
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.ring().from_int(-1))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.factors.len() != other.factors.len()
            || self.factors.iter().zip(&other.factors).any(|(a, b)| a != b)
        {
            return Err(Error::Dimension("tensors over different modules".into()));
        }
        let ring = self.ring();
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            accumulate(ring, &mut terms, k.clone(), c);
        }
        Self::new(self.factors.clone(), terms)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// `τ` on a bivector.
    pub fn twist(&self) -> Result<Self> {
        if self.arity() != 2 {
            return Err(Error::Dimension("twist needs a bivector".into()));
        }
        let ring = self.ring();
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let s = ring.sign(self.factors[0].degree(k[0]) * self.factors[1].degree(k[1]));
            accumulate(ring, &mut terms, vec![k[1], k[0]], &ring.mul(&s, c));
        }
        Self::new(vec![self.factors[1].clone(), self.factors[0].clone()], terms)
    }

    /// Cyclic rotation `x⊗y⊗z ↦ (-1)^{|x|(|y|+|z|)} y⊗z⊗x`.
    pub fn rotate(&self) -> Result<Self> {
        if self.arity() != 3 {
            return Err(Error::Dimension("rotation needs a trivector".into()));
        }
        let ring = self.ring();
        let f = &self.factors;
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let dx = f[0].degree(k[0]);
            let s = ring.sign(dx * (f[1].degree(k[1]) + f[2].degree(k[2])));
            accumulate(ring, &mut terms, vec![k[1], k[2], k[0]], &ring.mul(&s, c));
        }
        Self::new(vec![f[1].clone(), f[2].clone(), f[0].clone()], terms)
    }

    pub fn render(&self) -> String {
        render_terms(self.terms.iter().map(|(k, c)| {
            let name = k
                .iter()
                .zip(&self.factors)
                .map(|(&i, m)| m.name(i))
                .collect::<Vec<_>>()
                .join(&TENSOR_SEP.to_string());
            (name, c)
        }))
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn module(gens: &[(&str, i64)]) -> Arc<GradedModule> {
        Arc::new(GradedModule::new(Ring::Integers, gens.iter().map(|(n, d)| BasisElement::new(*n, *d)).collect()).unwrap())
    }

    #[test]
    fn twist_signs() {
        let m = module(&[("x", 1), ("y", 1), ("e", 0)]);
        let t = GradedMap::twist(&m, &m).unwrap();
        let src = t.source().clone();
        let x = m.index_of("x").unwrap();
        let y = m.index_of("y").unwrap();
        let e = m.index_of("e").unwrap();
        let img = t.apply_basis(src.pair_index(x, y));
        assert_eq!(img, Vector::from([(src.pair_index(y, x), Ring::Integers.from_int(-1))]));
        let img = t.apply_basis(src.pair_index(e, y));
        assert_eq!(img, Vector::from([(src.pair_index(y, e), Scalar::one())]));
        let tt = t.compose(&t).unwrap();
        assert_eq!(tt, GradedMap::identity(src));
    }

    #[test]
    fn koszul_tensor_sign() {
        let m = module(&[("x", 1), ("y", 0)]);
        let id = GradedMap::identity(m.clone());
        // g: x ↦ y has degree -1; the module orders y before x
        let y = m.index_of("y").unwrap();
        let x = m.index_of("x").unwrap();
        let mut imgs = vec![Vector::new(); 2];
        imgs[x] = Vector::from([(y, Scalar::one())]);
        let g = GradedMap::from_images(m.clone(), m.clone(), -1, &imgs).unwrap();
        let fg = GradedMap::tensor_map(&id, &g).unwrap();
        let src = fg.source().clone();
        let out = fg.apply_basis(src.pair_index(x, x));
        assert_eq!(out, Vector::from([(src.pair_index(x, y), Ring::Integers.from_int(-1))]));
        assert!(GradedMap::tensor_map(&id, &id).unwrap() == GradedMap::identity(src));
    }

    #[test]
    fn shift_and_dual_roundtrip() {
        let m = module(&[("a", 2), ("b", -1)]);
        assert_eq!(m.shift(0), *m);
        assert_eq!(m.shift(3).shift(-3), *m);
        assert_eq!(m.shift(2).degree(m.shift(2).index_of("a").unwrap()), 0);
        assert_eq!(m.dual().dual(), *m);
        let d = m.dual();
        assert_eq!(d.degree(d.index_of("a^∨").unwrap()), -2);
    }

    #[test]
    fn rendering() {
        let r = Ring::Integers;
        let v = Vector::from([(0, r.from_int(1)), (1, r.from_int(-2))]);
        let m = module(&[("a", 0), ("b", 0)]);
        assert_eq!(m.render(&v), "a - 2 b");
        assert_eq!(m.render(&Vector::new()), "0");
    }

    #[test]
    fn inhomogeneous_images_rejected() {
        let m = module(&[("a", 0), ("b", 1)]);
        let imgs = vec![Vector::from([(1, Scalar::one())]), Vector::new()];
        assert!(matches!(GradedMap::from_images(m.clone(), m, 0, &imgs), Err(Error::Degree(_))));
    }
}
