//! Lazy evaluation of multilinear operator expressions on tensor powers of a
//! single module.
//!
//! Dense matrices for `A⊗A⊗A` are too large for the loop space fixtures, so
//! identities such as coassociativity are evaluated one basis input at a time.
//! An operator maps a tuple of basis indices to a sparse combination of index
//! tuples. Structure maps can mark inputs as truncated; evaluation then fails
//! with [`Truncated`] instead of producing a wrong answer.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::exact::{Ring, Scalar};
use crate::graded::{accumulate, render_terms, GradedModule, TENSOR_SEP};

/// Sparse element of a tensor power, keyed by basis index tuples.
pub type Terms = BTreeMap<Vec<usize>, Scalar>;

/// Evaluation touched a structure constant that lies outside the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncated(pub String);

pub type Eval = std::result::Result<Terms, Truncated>;

type EvalFn = dyn Fn(&[usize]) -> Eval + Send + Sync;

/// A homogeneous multilinear operator `A^{⊗p} -> A^{⊗q}`.
#[derive(Clone)]
pub struct Op {
    pub degree: i64,
    pub arity_in: usize,
    pub arity_out: usize,
    f: Arc<EvalFn>,
}

impl Op {
    pub fn eval(&self, input: &[usize]) -> Eval {
        debug_assert_eq!(input.len(), self.arity_in);
        (self.f)(input)
    }
}

/// Operator builder bound to one module.
#[derive(Clone)]
pub struct OpAlgebra {
    ring: Ring,
    module: Arc<GradedModule>,
}

/// Table entry for a structure map: `None` marks a dropped (truncated) input.
pub type Table = Arc<Vec<Option<Terms>>>;

impl OpAlgebra {
    pub fn new(module: Arc<GradedModule>) -> Self {
        OpAlgebra { ring: module.ring(), module }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn module(&self) -> &Arc<GradedModule> {
        &self.module
    }

    pub fn degree_of(&self, t: &[usize]) -> i64 {
        t.iter().map(|&i| self.module.degree(i)).sum()
    }

    pub fn id(&self) -> Op {
        Op {
            degree: 0,
            arity_in: 1,
            arity_out: 1,
            f: Arc::new(|t: &[usize]| Ok(Terms::from([(t.to_vec(), Scalar::one())]))),
        }
    }

    pub fn tau(&self) -> Op {
        let m = self.module.clone();
        let ring = self.ring;
        Op {
            degree: 0,
            arity_in: 2,
            arity_out: 2,
            f: Arc::new(move |t: &[usize]| {
                let s = ring.sign(m.degree(t[0]) * m.degree(t[1]));
                Ok(Terms::from([(vec![t[1], t[0]], s)]))
            }),
        }
    }

    /// Operator given by a table indexed by the flattened input tuple.
    pub fn table(&self, name: &str, degree: i64, arity_in: usize, arity_out: usize, table: Table) -> Op {
        let n = self.module.len();
        let name = name.to_string();
        let m = self.module.clone();
        Op {
            degree,
            arity_in,
            arity_out,
            f: Arc::new(move |t: &[usize]| {
                let idx = t.iter().fold(0usize, |acc, &i| acc * n + i);
                match &table[idx] {
                    Some(v) => Ok(v.clone()),
                    None => Err(Truncated(format!("{name}({})", join_names(&m, t)))),
                }
            }),
        }
    }

    /// Arity-zero operator with constant value.
    pub fn constant(&self, value: Terms, degree: i64, arity_out: usize) -> Op {
        Op { degree, arity_in: 0, arity_out, f: Arc::new(move |_: &[usize]| Ok(value.clone())) }
    }

    pub fn zero(&self, degree: i64, arity_in: usize, arity_out: usize) -> Op {
        Op { degree, arity_in, arity_out, f: Arc::new(|_: &[usize]| Ok(Terms::new())) }
    }

    /// `f⊗g` with sign `(-1)^{|g|·|x|}` where `x` is the part of the input consumed by `f`.
    pub fn tensor(&self, f: &Op, g: &Op) -> Op {
        let (f, g) = (f.clone(), g.clone());
        let ring = self.ring;
        let m = self.module.clone();
        let degree = f.degree + g.degree;
        let (ai, ao) = (f.arity_in + g.arity_in, f.arity_out + g.arity_out);
        Op {
            degree,
            arity_in: ai,
            arity_out: ao,
            f: Arc::new(move |t: &[usize]| {
                let (x, y) = t.split_at(f.arity_in);
                let dx: i64 = x.iter().map(|&i| m.degree(i)).sum();
                let sign = ring.sign(g.degree * dx);
                let fx = f.eval(x)?;
                if fx.is_empty() {
                    return Ok(Terms::new());
                }
                let gy = g.eval(y)?;
                let mut out = Terms::new();
                for (u, cu) in &fx {
                    for (w, cw) in &gy {
                        let mut k = u.clone();
                        k.extend_from_slice(w);
                        accumulate(ring, &mut out, k, &ring.mul(&sign, &ring.mul(cu, cw)));
                    }
                }
                Ok(out)
            }),
        }
    }

    /// Tensor product of several operators, left to right.
    pub fn tensors(&self, ops: &[&Op]) -> Op {
        let mut acc = ops[0].clone();
        for o in &ops[1..] {
            acc = self.tensor(&acc, o);
        }
        acc
    }

    /// `f ∘ g`.
    pub fn compose(&self, f: &Op, g: &Op) -> Op {
        assert_eq!(f.arity_in, g.arity_out, "composition arity mismatch");
        let (f, g) = (f.clone(), g.clone());
        let ring = self.ring;
        Op {
            degree: f.degree + g.degree,
            arity_in: g.arity_in,
            arity_out: f.arity_out,
            f: Arc::new(move |t: &[usize]| {
                let mut out = Terms::new();
                for (u, cu) in g.eval(t)? {
                    for (w, cw) in f.eval(&u)? {
                        accumulate(ring, &mut out, w, &ring.mul(&cu, &cw));
                    }
                }
                Ok(out)
            }),
        }
    }

    /// Chain of compositions `ops[0] ∘ ops[1] ∘ ...`.
    pub fn chain(&self, ops: &[&Op]) -> Op {
        let mut acc = ops[ops.len() - 1].clone();
        for o in ops[..ops.len() - 1].iter().rev() {
            acc = self.compose(o, &acc);
        }
        acc
    }

    /// Linear combination of operators with equal arities.
    pub fn lin(&self, terms: Vec<(Scalar, Op)>) -> Op {
        let first = &terms[0].1;
        let (degree, ai, ao) = (first.degree, first.arity_in, first.arity_out);
        assert!(terms.iter().all(|(_, o)| o.arity_in == ai && o.arity_out == ao), "arity mismatch");
        let ring = self.ring;
        Op {
            degree,
            arity_in: ai,
            arity_out: ao,
            f: Arc::new(move |t: &[usize]| {
                let mut out = Terms::new();
                for (c, o) in &terms {
                    if c.is_zero() {
                        continue;
                    }
                    for (k, v) in o.eval(t)? {
                        accumulate(ring, &mut out, k, &ring.mul(c, &v));
                    }
                }
                Ok(out)
            }),
        }
    }

    pub fn scale(&self, c: Scalar, f: &Op) -> Op {
        self.lin(vec![(c, f.clone())])
    }

    pub fn sign(&self, e: i64) -> Scalar {
        self.ring.sign(e)
    }

    pub fn render(&self, t: &Terms) -> String {
        render_terms(t.iter().map(|(k, c)| (join_names(&self.module, k), c)))
    }

    pub fn input_name(&self, t: &[usize]) -> String {
        join_names(&self.module, t)
    }
}

pub fn join_names(m: &GradedModule, t: &[usize]) -> String {
    if t.is_empty() {
        return "()".into();
    }
    t.iter().map(|&i| m.name(i)).collect::<Vec<_>>().join(&TENSOR_SEP.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::BasisElement;

    fn alg() -> OpAlgebra {
        let m = GradedModule::new(
            Ring::Integers,
            vec![BasisElement::new("e", 0), BasisElement::new("x", 1), BasisElement::new("y", 1)],
        )
        .unwrap();
        OpAlgebra::new(Arc::new(m))
    }

    #[test]
    fn tau_squares_to_identity() {
        let a = alg();
        let tt = a.compose(&a.tau(), &a.tau());
        let id2 = a.tensor(&a.id(), &a.id());
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(tt.eval(&[i, j]), id2.eval(&[i, j]));
            }
        }
    }

    #[test]
    fn truncated_entries_propagate() {
        let a = alg();
        let table: Table = Arc::new(vec![None, Some(Terms::new()), Some(Terms::new())]);
        let f = a.table("f", 0, 1, 1, table);
        let g = a.tensor(&f, &a.id());
        assert!(g.eval(&[0, 1]).is_err());
        assert_eq!(g.eval(&[1, 1]), Ok(Terms::new()));
    }
}
