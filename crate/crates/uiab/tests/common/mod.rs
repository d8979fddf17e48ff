//! Independent oracles shared by the property tests and the acceptance run.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use uiab::{ExactMatrix, Ring};

/// Fraction-free Gaussian elimination; returns (rank, determinant when square).
pub fn bareiss(rows: &[Vec<BigInt>]) -> (usize, Option<BigInt>) {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else { continue };
        if p != r {
            a.swap(p, r);
            sign = -sign;
        }
        for i in r + 1..m {
            for j in c + 1..n {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
        if r == m {
            break;
        }
    }
    let det = (m == n).then(|| if r == n { sign * prev } else { BigInt::zero() });
    (r, det)
}

pub fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn entries(m: &ExactMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_integer().expect("integer")).collect()).collect()
}

/// Checks `U·M·V = D`, the shape of `D`, the divisibility chain, unimodularity
/// and rank against the oracle. Returns a description of the first violation.
pub fn snf_violation(rows: &[Vec<i64>]) -> Option<String> {
    let m = ExactMatrix::from_i64_rows(Ring::Integers, rows).unwrap();
    let snf = m.smith_normal_form().unwrap();
    let umv = snf.u.mul(&m).unwrap().mul(&snf.v).unwrap();
    if umv != snf.d {
        return Some("U·M·V differs from D".into());
    }
    let d = entries(&snf.d);
    for (i, row) in d.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if i != j && !x.is_zero() {
                return Some(format!("D has off-diagonal entry at ({i}, {j})"));
            }
        }
    }
    let diag: Vec<BigInt> = (0..rows.len().min(d.first().map_or(0, |r| r.len()))).map(|i| d[i][i].clone()).collect();
    let nonzero: Vec<BigInt> = diag.iter().take_while(|x| !x.is_zero()).cloned().collect();
    if diag[nonzero.len()..].iter().any(|x| !x.is_zero()) {
        return Some("zero invariant factor before a nonzero one".into());
    }
    if nonzero.iter().any(|x| !x.is_positive()) || nonzero != snf.invariants {
        return Some(format!("invariants {:?} do not match the diagonal {:?}", snf.invariants, diag));
    }
    if let Some(w) = nonzero.windows(2).find(|w| !w[1].is_multiple_of(&w[0])) {
        return Some(format!("{} does not divide {}", w[0], w[1]));
    }
    for (name, x) in [("U", &snf.u), ("V", &snf.v)] {
        let det = bareiss(&entries(x)).1.unwrap();
        if det.abs() != BigInt::one() {
            return Some(format!("{name} has determinant {det}"));
        }
    }
    let oracle = bareiss(&to_big(rows)).0;
    if oracle != nonzero.len() || oracle != m.rank() {
        return Some(format!("rank {} (snf) / {} (engine) vs oracle {oracle}", nonzero.len(), m.rank()));
    }
    None
}
