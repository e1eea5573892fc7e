use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Diagonal of the Smith normal form: `d1 | d2 | ... | dr` followed by
/// zeros, `min(rows, cols)` entries in total, all non-negative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// Zero entries on the diagonal. For a square matrix this is the
    /// dimension of its kernel.
    pub fn corank(&self) -> usize {
        self.diagonal.len() - self.rank()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| **d > BigInt::one()).cloned().collect()
    }
}

/// Quotient rounded to the nearest integer, keeping remainders small.
fn nearest_quotient(a: &BigInt, p: &BigInt) -> BigInt {
    let (mut q, r) = a.div_mod_floor(p);
    // r has the sign of p; one more step lands on the short side
    if (&r + &r).abs() > p.abs() {
        q += 1;
    }
    q
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|r| m.row(r).to_vec()).collect();
    let n = rows.min(cols);
    let mut diagonal = Vec::with_capacity(n);

    'outer: for t in 0..n {
        loop {
            // smallest non-zero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, x) in row.iter().enumerate().skip(t) {
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'outer;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }

            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = nearest_quotient(&a[i][t], &a[t][t]);
                for j in t..cols {
                    let v = &q * &a[t][j];
                    a[i][j] -= v;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = nearest_quotient(&a[t][j], &a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &q * &row[t];
                    row[j] -= v;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // pivot must divide the whole trailing block
            let pivot = a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diagonal.push(a[t][t].abs());
    }
    diagonal.resize(n, BigInt::zero());
    SmithForm { diagonal }
}
