//! Exact Gaussian elimination over the rationals. Small dense systems only.

use crate::rational::Rat;
use num_traits::Zero;

/// Row rank of a rectangular matrix.
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = &row[c] / &pivot_row[c];
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *x = &*x - &f * p;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Solves the square system `a x = b`. Returns None when `a` is singular.
pub fn solve_square(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n) && b.len() == n);
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let pivot = m[c][c].clone();
        for x in m[c][c..].iter_mut() {
            *x = &*x / &pivot;
        }
        let pivot_row = m[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *x = &*x - &f * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Determinant of a square matrix.
pub fn det(a: &[Vec<Rat>]) -> Rat {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a.to_vec();
    let mut result = Rat::from_integer(1.into());
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(c, p);
            result = -result;
        }
        let pivot_row = m[c].clone();
        result *= &pivot_row[c];
        for row in m[(c + 1)..].iter_mut() {
            if !row[c].is_zero() {
                let f = &row[c] / &pivot_row[c];
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *x = &*x - &f * p;
                }
            }
        }
    }
    result
}

/// Decides whether `a x = b` admits a solution with every coordinate
/// nonnegative. Phase-one simplex with Bland's rule, so it terminates on
/// every input; exact rational pivots throughout.
pub fn feasible_nonneg_solution(a: &[Vec<Rat>], b: &[Rat]) -> bool {
    let m = a.len();
    if m == 0 {
        return true;
    }
    let n = a[0].len();
    let width = n + m + 1;
    let mut tab: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for (i, (arow, rhs)) in a.iter().zip(b).enumerate() {
        let flip = *rhs < Rat::zero();
        let mut row = Vec::with_capacity(width);
        row.extend(arow.iter().map(|v| if flip { -v } else { v.clone() }));
        for k in 0..m {
            row.push(if k == i {
                Rat::from_integer(1.into())
            } else {
                Rat::zero()
            });
        }
        row.push(if flip { -rhs } else { rhs.clone() });
        tab.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // reduced costs for maximizing minus the sum of the artificial variables
    let mut cr: Vec<Rat> = (0..n + m)
        .map(|j| {
            if j < n {
                (0..m).map(|i| tab[i][j].clone()).sum()
            } else {
                Rat::zero()
            }
        })
        .collect();
    while let Some(e) = cr.iter().position(|c| *c > Rat::zero()) {
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if tab[i][e] > Rat::zero() {
                let better = match leave {
                    None => true,
                    Some(l) => {
                        let cand = &tab[i][width - 1] / &tab[i][e];
                        let cur = &tab[l][width - 1] / &tab[l][e];
                        cand < cur || (cand == cur && basis[i] < basis[l])
                    }
                };
                if better {
                    leave = Some(i);
                }
            }
        }
        let l = leave.expect("the phase-one objective is bounded above by zero");
        let pivot = tab[l][e].clone();
        for x in tab[l].iter_mut() {
            *x = &*x / &pivot;
        }
        let pivot_row = tab[l].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i != l && !row[e].is_zero() {
                let f = row[e].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * p;
                }
            }
        }
        if !cr[e].is_zero() {
            let f = cr[e].clone();
            for (j, c) in cr.iter_mut().enumerate() {
                let delta = &f * &tab[l][j];
                *c = &*c - delta;
            }
        }
        basis[l] = e;
    }
    (0..m).all(|i| basis[i] < n || tab[i][width - 1].is_zero())
}

/// Dimension of the affine hull of a point set (0 for a single point).
pub fn affine_rank(points: &[Vec<Rat>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = &points[0];
    let diffs: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    rank(&diffs)
}
