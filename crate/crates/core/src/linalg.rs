//! Small exact linear algebra over the rationals.

use crate::numbers::Rational;
use num_traits::{One, Zero};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut [Vec<Rational>]) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..ncols {
                    let v = &f * &rows[r][j];
                    rows[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : A x = 0}` where `A` has the given rows over `ncols` unknowns.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -m[i][f].clone();
            }
            v
        })
        .collect()
}

/// Some solution `x` of `A x = b`, free variables set to zero.
pub fn solve(rows: &[Vec<Rational>], b: &[Rational], ncols: usize) -> Option<Vec<Rational>> {
    let mut aug: Vec<Vec<Rational>> = rows
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = aug[i][ncols].clone();
    }
    Some(x)
}

/// Coefficients `c` with `sum_i c_i * rows[i] = target`, if any.
pub fn solve_row_combination(rows: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let n = target.len();
    let k = rows.len();
    // transpose: unknowns are the k coefficients, one equation per coordinate
    let eqs: Vec<Vec<Rational>> = (0..n)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect();
    solve(&eqs, target, k)
}

/// Basis of the row space, as a subset of the given rows.
pub fn independent_subset(rows: &[Vec<Rational>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut current: Vec<Vec<Rational>> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        current.push(r.clone());
        if rank(&current) == current.len() {
            chosen.push(i);
        } else {
            current.pop();
        }
    }
    chosen
}

pub fn determinant(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &m[c][c];
            for j in c..n {
                let v = &f * &m[c][j];
                m[i][j] -= v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat;

    fn r(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn nullspace_of_ray_relation() {
        // columns (1,0),(0,1),(-1,-2): kernel spanned by (1,2,1)
        let rows = vec![r(&[1, 0, -1]), r(&[0, 1, -2])];
        let k = nullspace(&rows, 3);
        assert_eq!(k, vec![r(&[1, 2, 1])]);
    }

    #[test]
    fn solve_and_rank() {
        let rows = vec![r(&[1, 1]), r(&[1, -1])];
        assert_eq!(solve(&rows, &r(&[2, 0]), 2), Some(r(&[1, 1])));
        assert_eq!(rank(&[r(&[1, 2]), r(&[2, 4])]), 1);
        assert_eq!(solve(&[r(&[1, 2]), r(&[2, 4])], &r(&[1, 1]), 2), None);
        assert_eq!(determinant(&[r(&[0, 2]), r(&[3, 1])]), rat(-6, 1));
        assert_eq!(
            independent_subset(&[r(&[1, 0]), r(&[2, 0]), r(&[0, 1])]),
            vec![0, 2]
        );
    }
}
