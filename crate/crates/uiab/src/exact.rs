//! Exact linear algebra over the integers, the rationals and prime fields.
//!
//! Every scalar is a [`Scalar`] kept in canonical form for its [`Ring`]:
//! integers are rationals with denominator one, rationals are in lowest terms,
//! prime field elements are residues in `[0, p)`. Structural equality is
//! therefore ring equality.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ring {
    Integers,
    Rationals,
    PrimeField(u64),
}

/// A ring element in canonical form. Arithmetic goes through [`Ring`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    /// Numerator when the scalar is integral.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.0.is_integer().then(|| self.0.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring {
    pub fn prime_field(p: u64) -> Result<Ring> {
        if is_prime(p) {
            Ok(Ring::PrimeField(p))
        } else {
            Err(Error::InvalidRing(format!("{p} is not prime")))
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Ring::Integers)
    }

    /// True when 2 = 0 in the ring.
    pub fn two_is_zero(&self) -> bool {
        matches!(self, Ring::PrimeField(2))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Ring::PrimeField(p) => *p,
            _ => 0,
        }
    }

    /// Canonical image of a rational number, if it exists in this ring.
    pub fn element(&self, q: BigRational) -> Result<Scalar> {
        match self {
            Ring::Rationals => Ok(Scalar(q)),
            Ring::Integers => {
                if q.is_integer() {
                    Ok(Scalar(q))
                } else {
                    Err(Error::InvalidScalar(format!("{q} is not an integer")))
                }
            }
            Ring::PrimeField(p) => {
                let p = BigInt::from(*p);
                let den = q.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(Error::InvalidScalar(format!("{q} has denominator divisible by {p}")));
                }
                let inv = mod_inverse(&den, &p);
                let v = (q.numer() * inv).mod_floor(&p);
                Ok(Scalar(BigRational::from_integer(v)))
            }
        }
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.element(BigRational::from_integer(BigInt::from(n)))
            .expect("integers embed in every ring")
    }

    pub fn from_bigint(&self, n: BigInt) -> Scalar {
        self.element(BigRational::from_integer(n))
            .expect("integers embed in every ring")
    }

    /// (-1)^e as a ring element.
    pub fn sign(&self, e: i64) -> Scalar {
        if e.rem_euclid(2) == 0 {
            Scalar::one()
        } else {
            self.from_int(-1)
        }
    }

    fn reduce(&self, q: BigRational) -> Scalar {
        match self {
            Ring::PrimeField(p) => {
                let p = BigInt::from(*p);
                debug_assert!(q.is_integer());
                Scalar(BigRational::from_integer(q.to_integer().mod_floor(&p)))
            }
            _ => Scalar(q),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(&a.0 + &b.0)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(&a.0 - &b.0)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        if a.is_zero() || b.is_zero() {
            return Scalar::zero();
        }
        self.reduce(&a.0 * &b.0)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.reduce(-&a.0)
    }

    /// Exact quotient a/b when it exists in the ring.
    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        if b.is_zero() {
            return None;
        }
        match self {
            Ring::Integers => {
                let (q, r) = a.0.numer().div_rem(b.0.numer());
                r.is_zero().then(|| Scalar(BigRational::from_integer(q)))
            }
            Ring::Rationals => Some(Scalar(&a.0 / &b.0)),
            Ring::PrimeField(p) => {
                let p = BigInt::from(*p);
                let inv = mod_inverse(b.0.numer(), &p);
                Some(Scalar(BigRational::from_integer((a.0.numer() * inv).mod_floor(&p))))
            }
        }
    }

    pub fn is_unit(&self, a: &Scalar) -> bool {
        match self {
            Ring::Integers => a.0.abs().is_one(),
            _ => !a.is_zero(),
        }
    }

    /// Parses "3", "-2", "5/7".
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let t = s.trim();
        let q = match t.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| Error::InvalidScalar(s.to_string()))?;
                let d = BigInt::from_str(d.trim()).map_err(|_| Error::InvalidScalar(s.to_string()))?;
                if d.is_zero() {
                    return Err(Error::InvalidScalar(s.to_string()));
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(
                BigInt::from_str(t).map_err(|_| Error::InvalidScalar(s.to_string()))?,
            ),
        };
        self.element(q)
    }

    pub fn name(&self) -> String {
        match self {
            Ring::Integers => "Z".into(),
            Ring::Rationals => "Q".into(),
            Ring::PrimeField(p) => format!("GF({p})"),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ring> {
        let t = s.trim();
        match t {
            "Z" | "ZZ" | "integers" => Ok(Ring::Integers),
            "Q" | "QQ" | "rationals" => Ok(Ring::Rationals),
            _ => {
                let inner = t
                    .strip_prefix("GF(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::InvalidRing(s.to_string()))?;
                let p: u64 = inner.parse().map_err(|_| Error::InvalidRing(s.to_string()))?;
                Ring::prime_field(p)
            }
        }
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(p)
}

/// Dense matrix with entries in a ring, row major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Output of [`ExactMatrix::smith_normal_form`]: `u * m * v == d`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: ExactMatrix,
    pub d: ExactMatrix,
    pub v: ExactMatrix,
    /// Nonzero diagonal entries of `d`, each dividing the next.
    pub invariants: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        ExactMatrix { ring, rows, cols, entries: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.entries[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn from_entries(ring: Ring, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let entries = entries
            .into_iter()
            .map(|s| ring.element(s.0))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExactMatrix { ring, rows, cols, entries })
    }

    pub fn from_i64_rows(ring: Ring, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let entries = rows.iter().flatten().map(|&x| ring.from_int(x)).collect();
        Ok(ExactMatrix { ring, rows: r, cols: c, entries })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        let v = self.ring.element(v.0).expect("entry must lie in the matrix ring");
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn from_columns(ring: Ring, rows: usize, cols: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Self::zeros(ring, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::Dimension(format!("column {j} has length {}", c.len())));
            }
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let r = self.ring;
        let mut out = Self::zeros(r, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.entries[idx] = r.add(&out.entries[idx], &r.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let r = self.ring;
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = r.add(&acc, &r.mul(a, x));
                    }
                }
                acc
            })
            .collect())
    }

    fn zip(&self, other: &Self, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Self> {
        self.check_ring(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension(format!(
                "shape {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        Ok(ExactMatrix { ring: self.ring, rows: self.rows, cols: self.cols, entries })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let r = self.ring;
        self.zip(other, |a, b| r.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let r = self.ring;
        self.zip(other, |a, b| r.sub(a, b))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let r = self.ring;
        let entries = self.entries.iter().map(|a| r.mul(a, s)).collect();
        ExactMatrix { ring: r, rows: self.rows, cols: self.cols, entries }
    }

    /// Same entries viewed over another ring (integers into Q or GF(p)).
    pub fn change_ring(&self, ring: Ring) -> Result<Self> {
        Self::from_entries(ring, self.rows, self.cols, self.entries.clone())
    }

    /// Row echelon form over a field: returns the reduced matrix and pivot columns.
    fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let r = self.ring;
        assert!(r.is_field(), "rref needs a field");
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(p, row);
            let inv = r.div(&Scalar::one(), m.get(row, col)).expect("nonzero pivot");
            for j in 0..m.cols {
                let v = r.mul(m.get(row, j), &inv);
                m.entries[row * m.cols + j] = v;
            }
            for i in 0..m.rows {
                if i == row || m.get(i, col).is_zero() {
                    continue;
                }
                let f = m.get(i, col).clone();
                for j in 0..m.cols {
                    let v = r.sub(m.get(i, j), &r.mul(&f, m.get(row, j)));
                    m.entries[i * m.cols + j] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Rank; over the integers this is the rank over Q.
    pub fn rank(&self) -> usize {
        match self.ring {
            Ring::Integers => self.change_ring(Ring::Rationals).expect("Z embeds in Q").rref().1.len(),
            _ => self.rref().1.len(),
        }
    }

    pub fn image_rank(&self) -> usize {
        self.rank()
    }

    /// Basis of the kernel. Over the integers the basis is saturated: it
    /// generates the full kernel lattice.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        match self.ring {
            Ring::Integers => {
                let snf = self.smith_normal_form().expect("integer matrix");
                let r = snf.invariants.len();
                (r..self.cols).map(|j| snf.v.column(j)).collect()
            }
            _ => {
                let (m, pivots) = self.rref();
                let ring = self.ring;
                let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
                free.iter()
                    .map(|&f| {
                        let mut v = vec![Scalar::zero(); self.cols];
                        v[f] = Scalar::one();
                        for (i, &p) in pivots.iter().enumerate() {
                            v[p] = ring.neg(m.get(i, f));
                        }
                        v
                    })
                    .collect()
            }
        }
    }

    /// Some `x` with `self * x == b`, or `None` when `b` is not in the image.
    pub fn solve_in_image(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let ring = self.ring;
        let b: Vec<Scalar> = b.iter().map(|s| ring.element(s.0.clone())).collect::<Result<_>>()?;
        match ring {
            Ring::Integers => {
                let snf = self.smith_normal_form()?;
                let ub = snf.u.mul_vec(&b)?;
                let mut y = vec![Scalar::zero(); self.cols];
                for (i, c) in ub.iter().enumerate() {
                    if i < snf.invariants.len() {
                        let d = ring.from_bigint(snf.invariants[i].clone());
                        match ring.div(c, &d) {
                            Some(q) => y[i] = q,
                            None => return Ok(None),
                        }
                    } else if !c.is_zero() {
                        return Ok(None);
                    }
                }
                Ok(Some(snf.v.mul_vec(&y)?))
            }
            _ => {
                let mut aug = Self::zeros(ring, self.rows, self.cols + 1);
                for i in 0..self.rows {
                    for j in 0..self.cols {
                        aug.entries[i * (self.cols + 1) + j] = self.get(i, j).clone();
                    }
                    aug.entries[i * (self.cols + 1) + self.cols] = b[i].clone();
                }
                let (m, pivots) = aug.rref();
                if pivots.last() == Some(&self.cols) {
                    return Ok(None);
                }
                let mut x = vec![Scalar::zero(); self.cols];
                for (i, &p) in pivots.iter().enumerate() {
                    x[p] = m.get(i, self.cols).clone();
                }
                Ok(Some(x))
            }
        }
    }

    /// Smith normal form over the integers.
    pub fn smith_normal_form(&self) -> Result<Snf> {
        if self.ring != Ring::Integers {
            return Err(Error::RingMismatch(Ring::Integers, self.ring));
        }
        let (u, d, v, invariants) = snf_integer(self.rows, self.cols, &self.entries);
        let ring = Ring::Integers;
        let to_m = |rows: usize, cols: usize, e: Vec<Vec<BigInt>>| ExactMatrix {
            ring,
            rows,
            cols,
            entries: e.into_iter().flatten().map(|x| ring.from_bigint(x)).collect(),
        };
        Ok(Snf {
            u: to_m(self.rows, self.rows, u),
            d: to_m(self.rows, self.cols, d),
            v: to_m(self.cols, self.cols, v),
            invariants,
        })
    }

    /// Columns of `self` forming a basis of its column space (fields), or a
    /// lattice basis of the column lattice (integers).
    pub fn column_space_basis(&self) -> Vec<Vec<Scalar>> {
        match self.ring {
            Ring::Integers => {
                // image lattice = U^{-1} D V^{-1} Z^n = U^{-1} D Z^n
                let snf = self.smith_normal_form().expect("integer matrix");
                let uinv = integer_inverse(&snf.u);
                snf.invariants
                    .iter()
                    .enumerate()
                    .map(|(i, d)| {
                        let ring = Ring::Integers;
                        let d = ring.from_bigint(d.clone());
                        uinv.column(i).iter().map(|x| ring.mul(x, &d)).collect()
                    })
                    .collect()
            }
            _ => {
                let (_, pivots) = self.rref();
                pivots.iter().map(|&p| self.column(p)).collect()
            }
        }
    }
}

/// Inverse of a unimodular integer matrix.
pub fn integer_inverse(m: &ExactMatrix) -> ExactMatrix {
    let q = m.change_ring(Ring::Rationals).expect("Z embeds in Q");
    let n = m.rows();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![Scalar::zero(); n];
        e[j] = Scalar::one();
        cols.push(q.solve_in_image(&e).expect("square").expect("invertible"));
    }
    let inv = ExactMatrix::from_columns(Ring::Rationals, n, &cols).expect("square");
    inv.change_ring(Ring::Integers).expect("unimodular inverse is integral")
}

type Mat = Vec<Vec<BigInt>>;

fn snf_integer(rows: usize, cols: usize, entries: &[Scalar]) -> (Mat, Mat, Mat, Vec<BigInt>) {
    let mut a: Mat = (0..rows)
        .map(|i| (0..cols).map(|j| entries[i * cols + j].to_integer().expect("integral")).collect())
        .collect();
    let ident = |n: usize| -> Mat {
        (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as i32)).collect()).collect()
    };
    let mut u = ident(rows);
    let mut v = ident(cols);
    // Bezout steps are applied to a transposed view for columns, so `v` is
    // kept transposed until the end.
    let mut vt = v.clone();

    let n = rows.min(cols);
    for t in 0..n {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        vt.swap(t, pj);
        loop {
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let (x, y) = (a[t][t].clone(), a[i][t].clone());
                    combine_rows(&mut a, &mut u, t, i, &x, &y);
                }
            }
            let mut touched = false;
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let (x, y) = (a[t][t].clone(), a[t][j].clone());
                    combine_cols(&mut a, &mut vt, t, j, &x, &y);
                    touched = true;
                }
            }
            if touched && (t + 1..rows).any(|i| !a[i][t].is_zero()) {
                continue;
            }
            let p = a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&p)));
            match bad {
                // pull the offending row in; the next pass lowers the pivot to a gcd
                Some(i) => {
                    for k in 0..cols {
                        let y = a[i][k].clone();
                        a[t][k] += y;
                    }
                    for k in 0..rows {
                        let y = u[i][k].clone();
                        u[t][k] += y;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    for (i, row) in vt.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            v[j][i] = x.clone();
        }
    }
    let invariants = (0..n).map(|i| a[i][i].clone()).take_while(|d| !d.is_zero()).collect();
    (u, a, v, invariants)
}

/// Extended gcd step: a unimodular `[[s, t], [-y/g, x/g]]` sending `(x, y)` to `(g, 0)`.
/// Plain subtraction when `x` divides `y`, which keeps entries small.
fn bezout(x: &BigInt, y: &BigInt) -> [BigInt; 4] {
    if y.is_multiple_of(x) {
        return [BigInt::one(), BigInt::zero(), -(y / x), BigInt::one()];
    }
    let e = x.extended_gcd(y);
    [e.x, e.y, -(y / &e.gcd), x / &e.gcd]
}

fn mix(r1: &[BigInt], r2: &[BigInt], c: &[BigInt; 4]) -> (Vec<BigInt>, Vec<BigInt>) {
    let a = r1.iter().zip(r2).map(|(p, q)| &c[0] * p + &c[1] * q).collect();
    let b = r1.iter().zip(r2).map(|(p, q)| &c[2] * p + &c[3] * q).collect();
    (a, b)
}

fn combine_rows(a: &mut Mat, u: &mut Mat, t: usize, i: usize, x: &BigInt, y: &BigInt) {
    let c = bezout(x, y);
    let (r1, r2) = mix(&a[t], &a[i], &c);
    a[t] = r1;
    a[i] = r2;
    let (r1, r2) = mix(&u[t], &u[i], &c);
    u[t] = r1;
    u[i] = r2;
}

/// Column version of [`combine_rows`]; `vt` holds the transpose of `V`.
fn combine_cols(a: &mut Mat, vt: &mut Mat, t: usize, j: usize, x: &BigInt, y: &BigInt) {
    let c = bezout(x, y);
    for row in a.iter_mut() {
        let (p, q) = (row[t].clone(), row[j].clone());
        row[t] = &c[0] * &p + &c[1] * &q;
        row[j] = &c[2] * &p + &c[3] * &q;
    }
    let (r1, r2) = mix(&vt[t], &vt[j], &c);
    vt[t] = r1;
    vt[j] = r2;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[Vec<i64>]) -> ExactMatrix {
        ExactMatrix::from_i64_rows(Ring::Integers, rows).unwrap()
    }

    #[test]
    fn snf_examples() {
        let s = z(&[vec![0]]).smith_normal_form().unwrap();
        assert!(s.d.is_zero());
        let s = ExactMatrix::identity(Ring::Integers, 3).smith_normal_form().unwrap();
        assert_eq!(s.d, ExactMatrix::identity(Ring::Integers, 3));
        let m = z(&[vec![2, 4], vec![6, 8]]);
        let s = m.smith_normal_form().unwrap();
        assert_eq!(s.d, z(&[vec![2, 0], vec![0, 4]]));
        assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d);
    }

    #[test]
    fn kernel_and_solve() {
        let m = ExactMatrix::from_i64_rows(Ring::Rationals, &[vec![1, 1]]).unwrap();
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0], Ring::Rationals.neg(&k[0][1]));

        let two = z(&[vec![2]]);
        assert!(two.solve_in_image(&[Ring::Integers.from_int(3)]).unwrap().is_none());
        assert_eq!(
            two.solve_in_image(&[Ring::Integers.from_int(4)]).unwrap(),
            Some(vec![Ring::Integers.from_int(2)])
        );
        assert_eq!(z(&[vec![2, 4], vec![6, 8]]).image_rank(), 2);
        assert!(two.solve_in_image(&[]).is_err());
    }

    #[test]
    fn saturated_integer_kernel() {
        // kernel of (2 4) is spanned by (2,-1), not (4,-2)
        let m = z(&[vec![2, 4]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        let g = k[0][0].to_integer().unwrap().gcd(&k[0][1].to_integer().unwrap());
        assert_eq!(g, BigInt::from(1));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Ring::prime_field(5).unwrap();
        assert_eq!(f.from_int(-1), f.from_int(4));
        assert_eq!(f.parse("1/2").unwrap(), f.from_int(3));
        assert!(f.parse("1/5").is_err());
        assert!(Ring::prime_field(6).is_err());
        assert_eq!("GF(7)".parse::<Ring>().unwrap(), Ring::PrimeField(7));
    }

    #[test]
    fn integer_ring_rejects_fractions() {
        assert!(Ring::Integers.parse("1/2").is_err());
        assert_eq!(Ring::Rationals.parse("2/4").unwrap().to_string(), "1/2");
    }
}
