//! Exact Gaussian elimination for small dense systems.

use num_traits::Zero;

use crate::rational::{zero, Rational};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Solution {
    Unique(Vec<Rational>),
    Many,
    Inconsistent,
}

/// Solves `a x = b` for a possibly non-square `a`.
pub(crate) fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Solution {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| row.iter().cloned().chain([bi.clone()]).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let piv = aug[r][c].clone();
        for v in aug[r].iter_mut() {
            *v /= &piv;
        }
        for i in 0..m {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in c..=n {
                    let delta = &f * &aug[r][j];
                    aug[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    if aug[r..].iter().any(|row| !row[n].is_zero()) {
        return Solution::Inconsistent;
    }
    if pivots.len() < n {
        return Solution::Many;
    }
    let mut x = vec![zero(); n];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = aug[row][n].clone();
    }
    Solution::Unique(x)
}
