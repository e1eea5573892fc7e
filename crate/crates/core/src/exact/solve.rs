use alloc::vec::Vec;

use num_traits::Zero;

use super::{rational_one, rational_zero, ExactError, IntMatrix, Rational};

/// `{ particular + span(kernel) }`, the full solution set of a linear system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Rational>,
    pub kernel: Vec<Vec<Rational>>,
}

impl AffineSolution {
    pub fn dimension(&self) -> usize {
        self.particular.len()
    }

    /// The point-wise negation `{ -x : x in self }`.
    pub fn negated(&self) -> AffineSolution {
        AffineSolution {
            particular: self.particular.iter().map(|x| -x).collect(),
            kernel: self.kernel.clone(),
        }
    }

    /// `particular + sum(coeffs[i] * kernel[i])`.
    pub fn point(&self, coeffs: &[Rational]) -> Vec<Rational> {
        let mut p = self.particular.clone();
        for (c, k) in coeffs.iter().zip(&self.kernel) {
            for (x, y) in p.iter_mut().zip(k) {
                *x += c * y;
            }
        }
        p
    }
}

/// Solves `m * x = rhs` exactly. `Ok(None)` when the system is inconsistent.
pub fn solve_exact(m: &IntMatrix, rhs: &[Rational]) -> Result<Option<AffineSolution>, ExactError> {
    if rhs.len() != m.rows() {
        return Err(ExactError::Dimension {
            expected: m.rows(),
            found: rhs.len(),
        });
    }
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rational> = m.row(r).iter().map(|x| Rational::from_integer(x.clone())).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();

    // reduced row echelon form
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = rational_one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..=cols {
                let v = &f * &a[r][j];
                a[i][j] -= v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[cols].is_zero()) {
        return Ok(None);
    }

    let mut particular = alloc::vec![rational_zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = a[i][cols].clone();
    }
    let mut kernel = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = alloc::vec![rational_zero(); cols];
        v[free] = rational_one();
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = -a[i][free].clone();
        }
        kernel.push(v);
    }
    Ok(Some(AffineSolution { particular, kernel }))
}
