//! Truncated loop homology models of odd spheres, the cotangent bundle of the
//! circle, and seeded random instances.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bialgebra::{Truncation, UiabInstance};
use crate::cone::A2PlusData;
use crate::chain::{mapping_cone, transition_automorphism, ChainComplex, ChainMap, Cone, Transition};
use crate::error::{Error, Result};
use crate::exact::{Ring, Scalar};
use crate::graded::{accumulate, BasisElement, GradedMap, GradedModule, TensorElement, Vector};
use crate::ops::Terms;

pub const DEFAULT_WINDOW: i64 = 12;

pub const CATALOG: [&str; 7] = [
    "lambda-s3",
    "lambda-s1-plus",
    "lambda-s1-minus",
    "omega-s3",
    "omega-s1-plus",
    "omega-s1-minus",
    "tstar-s1",
];

/// The six bialgebra fixtures, in catalog order.
pub const BIALGEBRA_FIXTURES: [&str; 6] =
    ["lambda-s3", "lambda-s1-plus", "lambda-s1-minus", "omega-s3", "omega-s1-plus", "omega-s1-minus"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Plus,
    Minus,
}

/// Largest exponent whose axiom instances stay inside a window of size `n`.
pub fn safe_radius(window: i64) -> i64 {
    (window - 1) / 3
}

fn check_window(window: i64) -> Result<()> {
    if window < 4 {
        return Err(Error::Invariant(format!("window N = {window} is below 4")));
    }
    Ok(())
}

pub fn power_name(k: i64) -> String {
    match k {
        0 => "1".into(),
        1 => "U".into(),
        _ => format!("U^{k}"),
    }
}

pub fn odd_power_name(k: i64) -> String {
    match k {
        0 => "A".into(),
        1 => "A*U".into(),
        _ => format!("A*U^{k}"),
    }
}

/// Exponent range and generator degrees of a (Laurent) polynomial model.
struct Model {
    exps: Vec<i64>,
    u_degree: i64,
    /// Degree of `A`, or `None` for the based loop models.
    a_degree: Option<i64>,
}

/// Basis index lookup for `U^k` and `A U^k`.
struct Layout {
    module: Arc<GradedModule>,
    u: Vec<usize>,
    a: Vec<usize>,
    lo: i64,
}

impl Layout {
    fn u(&self, k: i64) -> Option<usize> {
        self.u.get(usize::try_from(k - self.lo).ok()?).copied()
    }
    fn a(&self, k: i64) -> Option<usize> {
        self.a.get(usize::try_from(k - self.lo).ok()?).copied()
    }
}

fn layout(ring: Ring, m: &Model) -> Result<Layout> {
    let mut basis = Vec::new();
    for &k in &m.exps {
        basis.push(BasisElement::new(power_name(k), m.u_degree * k));
        if let Some(da) = m.a_degree {
            basis.push(BasisElement::new(odd_power_name(k), m.u_degree * k + da));
        }
    }
    let module = Arc::new(GradedModule::new(ring, basis)?);
    let u = m.exps.iter().map(|&k| module.index_of(&power_name(k))).collect::<Result<Vec<_>>>()?;
    let a = if m.a_degree.is_some() {
        m.exps.iter().map(|&k| module.index_of(&odd_power_name(k))).collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    Ok(Layout { module, u, a, lo: m.exps[0] })
}

/// Exterior (Laurent) product table; products leaving the window are dropped.
fn product_table(l: &Layout, window: i64) -> Vec<Option<Vector>> {
    let m = &l.module;
    let n = m.len();
    let ring = m.ring();
    // (exponent, odd) for each basis element
    let mut info = vec![(0i64, false); n];
    for (pos, &i) in l.u.iter().enumerate() {
        info[i] = (pos as i64 + l.lo, false);
    }
    for (pos, &i) in l.a.iter().enumerate() {
        info[i] = (pos as i64 + l.lo, true);
    }
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let ((ki, oi), (kj, oj)) = (info[i], info[j]);
            let k = ki + kj;
            if k.abs() > window {
                out.push(None);
                continue;
            }
            let mut v = Vector::new();
            match (oi, oj) {
                (false, false) => accumulate(ring, &mut v, l.u(k).expect("in window"), &Scalar::one()),
                (true, true) => {}
                _ => accumulate(ring, &mut v, l.a(k).expect("in window"), &Scalar::one()),
            }
            out.push(Some(v));
        }
    }
    out
}

fn weights(l: &Layout) -> Vec<i64> {
    let mut w = vec![0; l.module.len()];
    for (pos, &i) in l.u.iter().chain(l.a.iter()).enumerate() {
        w[i] = (pos % l.u.len()) as i64 + l.lo;
    }
    w
}

fn unit(l: &Layout) -> Vector {
    Vector::from([(l.u(0).expect("unit in basis"), Scalar::one())])
}

struct TensorBuilder<'a> {
    l: &'a Layout,
    terms: Terms,
}

impl<'a> TensorBuilder<'a> {
    fn new(l: &'a Layout) -> Self {
        TensorBuilder { l, terms: Terms::new() }
    }
    fn add(&mut self, c: i64, x: Option<usize>, y: Option<usize>) {
        let (x, y) = (x.expect("term inside window"), y.expect("term inside window"));
        let ring = self.l.module.ring();
        accumulate(ring, &mut self.terms, vec![x, y], &ring.from_int(c));
    }
    fn finish(self) -> Result<Option<TensorElement>> {
        let m = self.l.module.clone();
        TensorElement::new(vec![m.clone(), m], self.terms).map(Some)
    }
}

fn assemble(
    name: &str,
    l: Layout,
    window: i64,
    lambda_degree: i64,
    lambda: Vec<Option<TensorElement>>,
) -> Result<UiabInstance> {
    let mu = product_table(&l, window);
    let w = weights(&l);
    let eta = unit(&l);
    UiabInstance::new(name, l.module.clone(), 0, mu, lambda_degree, lambda, eta)?.with_truncation(Truncation {
        window,
        radius: safe_radius(window),
        weights: w,
    })
}

/// `Λ[A, U]` with `|U| = n-1`, `|A| = -n`, exponents `0..=N`.
pub fn loop_sphere(n: i64, window: i64, ring: Ring) -> Result<UiabInstance> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::Invariant(format!("loop sphere model needs odd n ≥ 3, got {n}")));
    }
    check_window(window)?;
    let l = layout(ring, &Model { exps: (0..=window).collect(), u_degree: n - 1, a_degree: Some(-n) })?;
    let mut lambda = vec![None; l.module.len()];
    for k in 0..=window {
        let mut ta = TensorBuilder::new(&l);
        let mut tu = TensorBuilder::new(&l);
        for i in 0..k {
            let j = k - 1 - i;
            ta.add(1, l.a(i), l.a(j));
            tu.add(1, l.a(i), l.u(j));
            tu.add(-1, l.u(i), l.a(j));
        }
        lambda[l.a(k).expect("in basis")] = ta.finish()?;
        lambda[l.u(k).expect("in basis")] = tu.finish()?;
    }
    assemble(&format!("lambda-s{n}"), l, window, 1 - 2 * n, lambda)
}

/// Exponents `i` of the branch sums for the circle models, with the overall sign.
fn circle_range(k: i64, variant: Variant) -> (std::ops::RangeInclusive<i64>, i64) {
    match variant {
        Variant::Plus if k >= 0 => (0..=k, 1),
        Variant::Plus => (k + 1..=-1, -1),
        Variant::Minus if k > 0 => (1..=k - 1, 1),
        Variant::Minus => (k..=0, -1),
    }
}

fn variant_suffix(v: Variant) -> &'static str {
    match v {
        Variant::Plus => "plus",
        Variant::Minus => "minus",
    }
}

/// `Λ[A, U, U⁻¹]` with `|U| = 0`, `|A| = -1`, exponents `-N..=N`.
pub fn loop_circle(window: i64, variant: Variant, ring: Ring) -> Result<UiabInstance> {
    check_window(window)?;
    let l = layout(ring, &Model { exps: (-window..=window).collect(), u_degree: 0, a_degree: Some(-1) })?;
    let mut lambda = vec![None; l.module.len()];
    for k in -window..=window {
        let (range, s) = circle_range(k, variant);
        let mut ta = TensorBuilder::new(&l);
        let mut tu = TensorBuilder::new(&l);
        for i in range {
            ta.add(s, l.a(i), l.a(k - i));
            tu.add(s, l.a(i), l.u(k - i));
            tu.add(-s, l.u(i), l.a(k - i));
        }
        lambda[l.a(k).expect("in basis")] = ta.finish()?;
        lambda[l.u(k).expect("in basis")] = tu.finish()?;
    }
    assemble(&format!("lambda-s1-{}", variant_suffix(variant)), l, window, -1, lambda)
}

/// `H_*ΩSⁿ`: `Λ[U]` with `|U| = n-1` for odd `n ≥ 3`, or the Laurent
/// polynomials in degree 0 for `n = 1` (which needs a variant).
pub fn based_loop(n: i64, window: i64, variant: Option<Variant>, ring: Ring) -> Result<UiabInstance> {
    if n < 1 || n % 2 == 0 {
        return Err(Error::Invariant(format!("based loop model needs odd n, got {n}")));
    }
    check_window(window)?;
    if n == 1 {
        let variant = variant.ok_or_else(|| Error::Invariant("ΩS¹ needs the plus or minus variant".into()))?;
        let l = layout(ring, &Model { exps: (-window..=window).collect(), u_degree: 0, a_degree: None })?;
        let mut lambda = vec![None; l.module.len()];
        for k in -window..=window {
            let (range, s) = circle_range(k, variant);
            let mut t = TensorBuilder::new(&l);
            for i in range {
                t.add(s, l.u(i), l.u(k - i));
            }
            lambda[l.u(k).expect("in basis")] = t.finish()?;
        }
        return assemble(&format!("omega-s1-{}", variant_suffix(variant)), l, window, 0, lambda);
    }
    let l = layout(ring, &Model { exps: (0..=window).collect(), u_degree: n - 1, a_degree: None })?;
    let mut lambda = vec![None; l.module.len()];
    for k in 0..=window {
        let mut t = TensorBuilder::new(&l);
        for i in 0..k {
            t.add(1, l.u(i), l.u(k - 1 - i));
        }
        lambda[l.u(k).expect("in basis")] = t.finish()?;
    }
    assemble(&format!("omega-s{n}"), l, window, 1 - n, lambda)
}

/// Bivector relating the two circle coproducts: `𝟙⊗A − A⊗𝟙` on `ΛS¹`,
/// `−𝟙⊗𝟙` on `ΩS¹`.
pub fn circle_bivector(inst: &UiabInstance) -> Result<TensorElement> {
    let m = inst.module().clone();
    let f = vec![m.clone(), m.clone()];
    let ring = inst.ring();
    let one = Scalar::one();
    let neg = ring.from_int(-1);
    if m.contains("A") {
        TensorElement::from_names(f, &[(one, vec!["1", "A"]), (neg, vec!["A", "1"])])
    } else {
        TensorElement::from_names(f, &[(neg, vec!["1", "1"])])
    }
}

/// Cone data for `ΛS³`: `n = 3`, all continuation tensors zero.
pub fn a2_loop_sphere(window: i64, ring: Ring) -> Result<A2PlusData> {
    let inst = loop_sphere(3, window, ring)?;
    let m = inst.module().clone();
    let zero2 = TensorElement::zero(vec![m.clone(), m.clone()]);
    let zero3 = TensorElement::zero(vec![m.clone(), m.clone(), m]);
    A2PlusData::new(inst, zero2.clone(), zero2, zero3, 3)
}

/// Cone data for `ΛS¹` with `λ₊`: `n = 1`, `Q0 = 𝟙⊗A − A⊗𝟙 = -λ₊η`.
pub fn a2_loop_circle(window: i64, ring: Ring) -> Result<A2PlusData> {
    let inst = loop_circle(window, Variant::Plus, ring)?;
    let q0 = circle_bivector(&inst)?;
    let m = inst.module().clone();
    let zero2 = TensorElement::zero(vec![m.clone(), m.clone()]);
    let zero3 = TensorElement::zero(vec![m.clone(), m.clone(), m]);
    A2PlusData::new(inst, zero2, q0, zero3, 1)
}

/// Cotangent bundle of the circle: Morse complexes of `K` and `-K` with zero
/// differential, the vanishing continuation map and the secondary map.
pub struct TStarS1 {
    pub a: ChainComplex,
    pub m: ChainComplex,
    pub c: ChainMap,
    /// Degree +1 map `M -> A` sending `p̂ ↦ q` and `q̂ ↦ p`.
    pub csec: GradedMap,
    pub cone: Cone,
}

impl TStarS1 {
    pub fn transition(&self) -> Result<Transition> {
        transition_automorphism(&self.cone, &self.csec)
    }
}

pub fn tstar_s1(ring: Ring) -> Result<TStarS1> {
    let am = Arc::new(GradedModule::new(ring, vec![BasisElement::new("p", 0), BasisElement::new("q", 1)])?);
    let mm = Arc::new(GradedModule::new(ring, vec![BasisElement::new("p̂", 0), BasisElement::new("q̂", -1)])?);
    let a = ChainComplex::with_zero_differential(am.clone());
    let m = ChainComplex::with_zero_differential(mm.clone());
    let c = ChainMap::new(m.clone(), a.clone(), GradedMap::zero(mm.clone(), am.clone(), 0))?;
    let img = |name: &str| -> Result<Vector> { am.vector_from_names(&[(Scalar::one(), name)]) };
    let mut images = vec![Vector::new(); 2];
    images[mm.index_of("p̂")?] = img("q")?;
    images[mm.index_of("q̂")?] = img("p")?;
    let csec = GradedMap::from_images(mm, am, 1, &images)?;
    let cone = mapping_cone(&c)?;
    Ok(TStarS1 { a, m, c, csec, cone })
}

/// Seeded instance on `size` generators with homogeneous random tables.
/// It is not expected to satisfy any axiom.
pub fn random_instance(seed: u64, size: usize, mu_degree: i64, lambda_degree: i64, ring: Ring) -> Result<UiabInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut basis = vec![BasisElement::new("e", 0)];
    for i in 1..size {
        basis.push(BasisElement::new(format!("x{i}"), rng.gen_range(-2..=2)));
    }
    let module = Arc::new(GradedModule::new(ring, basis)?);
    let n = module.len();
    let coeff = |rng: &mut ChaCha8Rng| ring.from_int(rng.gen_range(-2..=2));
    let mut mu = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let want = module.degree(i) + module.degree(j) + mu_degree;
            let mut v = Vector::new();
            for &t in module.in_degree(want) {
                let c = coeff(&mut rng);
                accumulate(ring, &mut v, t, &c);
            }
            mu.push(Some(v));
        }
    }
    let mut lambda = Vec::with_capacity(n);
    for i in 0..n {
        let want = module.degree(i) + lambda_degree;
        let mut t = Terms::new();
        for x in 0..n {
            for y in 0..n {
                if module.degree(x) + module.degree(y) == want {
                    let c = coeff(&mut rng);
                    accumulate(ring, &mut t, vec![x, y], &c);
                }
            }
        }
        lambda.push(Some(TensorElement::new(vec![module.clone(), module.clone()], t)?));
    }
    let eta = module.vector_from_names(&[(Scalar::one(), "e")])?;
    UiabInstance::new(format!("random-{seed}-{size}"), module, mu_degree, mu, lambda_degree, lambda, eta)
}

pub enum Fixture {
    Bialgebra(UiabInstance),
    TStar(TStarS1),
}

/// Looks up a catalog fixture.
pub fn by_name(name: &str, window: i64, ring: Ring) -> Result<Fixture> {
    let b = |r: Result<UiabInstance>| r.map(Fixture::Bialgebra);
    match name {
        "lambda-s3" => b(loop_sphere(3, window, ring)),
        "lambda-s1-plus" => b(loop_circle(window, Variant::Plus, ring)),
        "lambda-s1-minus" => b(loop_circle(window, Variant::Minus, ring)),
        "omega-s3" => b(based_loop(3, window, None, ring)),
        "omega-s1-plus" => b(based_loop(1, window, Some(Variant::Plus), ring)),
        "omega-s1-minus" => b(based_loop(1, window, Some(Variant::Minus), ring)),
        "tstar-s1" => tstar_s1(ring).map(Fixture::TStar),
        _ => Err(Error::Unknown(format!("unknown fixture {name:?}; available: {}", CATALOG.join(", ")))),
    }
}

/// A catalog bialgebra fixture; fails for `tstar-s1` and unknown names.
pub fn bialgebra(name: &str, window: i64, ring: Ring) -> Result<UiabInstance> {
    match by_name(name, window, ring)? {
        Fixture::Bialgebra(i) => Ok(i),
        Fixture::TStar(_) => Err(Error::Unknown(format!("{name} is not a bialgebra fixture"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialgebra::{check_axioms, lambda_eta};

    fn t(inst: &UiabInstance, terms: &[(i64, &str, &str)]) -> TensorElement {
        let m = inst.module().clone();
        let ring = inst.ring();
        let named: Vec<(Scalar, Vec<&str>)> = terms.iter().map(|&(c, x, y)| (ring.from_int(c), vec![x, y])).collect();
        TensorElement::from_names(vec![m.clone(), m], &named).unwrap()
    }

    fn lam(inst: &UiabInstance, x: &str) -> TensorElement {
        inst.lambda(inst.module().index_of(x).unwrap()).unwrap()
    }

    #[test]
    fn loop_sphere_formulas() {
        let s = loop_sphere(3, 6, Ring::Integers).unwrap();
        assert_eq!(lam(&s, "U^2"), t(&s, &[(1, "A", "U"), (1, "A*U", "1"), (-1, "1", "A*U"), (-1, "U", "A")]));
        assert!(lam(&s, "1").is_zero());
        let a = s.module().index_of("A").unwrap();
        assert!(s.mu(a, a).unwrap().is_empty());
        assert!(loop_sphere(4, 6, Ring::Integers).is_err());
        assert!(loop_sphere(3, 3, Ring::Integers).is_err());
    }

    #[test]
    fn circle_formulas() {
        let p = loop_circle(6, Variant::Plus, Ring::Integers).unwrap();
        let m = loop_circle(6, Variant::Minus, Ring::Integers).unwrap();
        assert_eq!(lam(&p, "1"), t(&p, &[(1, "A", "1"), (-1, "1", "A")]));
        assert_eq!(lam(&m, "1"), t(&m, &[(-1, "A", "1"), (1, "1", "A")]));
        assert!(lam(&p, "A*U^-1").is_zero());
        let o3 = based_loop(3, 6, None, Ring::Integers).unwrap();
        assert_eq!(lam(&o3, "U"), t(&o3, &[(1, "1", "1")]));
        let op = based_loop(1, 6, Some(Variant::Plus), Ring::Integers).unwrap();
        let om = based_loop(1, 6, Some(Variant::Minus), Ring::Integers).unwrap();
        assert_eq!(lam(&op, "1"), t(&op, &[(1, "1", "1")]));
        assert!(lam(&om, "U").is_zero());
    }

    #[test]
    fn small_windows_pass_axioms() {
        for name in BIALGEBRA_FIXTURES {
            let inst = bialgebra(name, 7, Ring::Integers).unwrap();
            let r = check_axioms(&inst);
            assert!(r.checks.iter().all(|c| c.passed()), "{name}: {:?}", r.checks);
        }
    }

    #[test]
    fn lambda_eta_values() {
        let p = loop_circle(5, Variant::Plus, Ring::Integers).unwrap();
        assert_eq!(lambda_eta(&p).unwrap(), t(&p, &[(1, "A", "1"), (-1, "1", "A")]));
        assert!(lambda_eta(&loop_sphere(3, 5, Ring::Integers).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn random_instances_are_deterministic() {
        let a = random_instance(7, 4, 0, -1, Ring::Integers).unwrap();
        let b = random_instance(7, 4, 0, -1, Ring::Integers).unwrap();
        assert_eq!(a.mu_table(), b.mu_table());
        assert_eq!(a.lambda_table(), b.lambda_table());
    }

    #[test]
    fn unknown_fixture_lists_catalog() {
        let Err(e) = by_name("lambda-s2", 12, Ring::Integers) else { panic!() };
        assert!(e.to_string().contains("omega-s1-minus"));
    }

    #[test]
    fn tstar_transition_is_nontrivial() {
        let t = tstar_s1(Ring::Integers).unwrap();
        assert!(t.c.map().is_zero());
        let tr = t.transition().unwrap();
        assert!(tr.unipotent);
        assert!(!tr.acts_trivially);
    }
}
