//! Exact dense linear algebra over the rationals.
//!
//! Matrices are row-major `Vec<Vec<Rational>>`. Everything here is small
//! (tens of rows), so plain Gauss-Jordan elimination is all we need.

use num_traits::Zero;

use crate::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Rational::zero(); cols]; rows]
}

/// Reduce `m` in place to reduced row echelon form and return the pivot
/// column of each nonzero row.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = num_traits::Inv::inv(m[r][c].clone());
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (pivot_row, row) = if i < r {
                    let (a, b) = m.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = m.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (x, y) in row.iter_mut().zip(pivot_row) {
                    if !y.is_zero() {
                        *x = &*x - &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut m = m.clone();
    rref(&mut m).len()
}

/// Basis of `{x : m x = 0}` where `m` has `cols` columns.
pub fn nullspace(m: &Matrix, cols: usize) -> Vec<Vec<Rational>> {
    let mut a = m.clone();
    for row in a.iter_mut() {
        row.resize(cols, Rational::zero());
    }
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::from_integer(1.into());
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

/// Outcome of solving `a x = b`.
#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    Unique(Vec<Rational>),
    /// Consistent but underdetermined; `particular` sets free variables to 0.
    Underdetermined {
        particular: Vec<Rational>,
        rank: usize,
    },
    Inconsistent {
        rank: usize,
    },
}

impl Solution {
    pub fn rank(&self, unknowns: usize) -> usize {
        match self {
            Solution::Unique(_) => unknowns,
            Solution::Underdetermined { rank, .. } | Solution::Inconsistent { rank } => *rank,
        }
    }
}

/// Solve `a x = b` exactly for `unknowns` unknowns.
pub fn solve(a: &Matrix, b: &[Rational], unknowns: usize) -> Solution {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.resize(unknowns, Rational::zero());
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&unknowns) {
        return Solution::Inconsistent {
            rank: pivots.len() - 1,
        };
    }
    let mut x = vec![Rational::zero(); unknowns];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][unknowns].clone();
    }
    if pivots.len() == unknowns {
        Solution::Unique(x)
    } else {
        Solution::Underdetermined {
            particular: x,
            rank: pivots.len(),
        }
    }
}

/// Multiply `m` (rows × cols) by the column vector `v`.
pub fn mat_vec(m: &Matrix, v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

pub fn transpose(m: &Matrix, cols: usize) -> Matrix {
    (0..cols)
        .map(|c| m.iter().map(|row| row[c].clone()).collect())
        .collect()
}

/// Greedily extend `basis` (assumed independent) with vectors from
/// `candidates` until it spans their union; returns the added vectors.
pub fn extend_basis(basis: &[Vec<Rational>], candidates: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut current: Matrix = basis.to_vec();
    let mut r = rank(&current);
    let mut added = Vec::new();
    for c in candidates {
        current.push(c.clone());
        let nr = rank(&current);
        if nr > r {
            r = nr;
            added.push(c.clone());
        } else {
            current.pop();
        }
    }
    added
}
