//! Dense tableau simplex, used for Chebyshev centers of H-polytopes.

use crate::error::{Error, Result};

/// Maximizes `c·z` subject to `A z <= b`, `z >= 0`, with `b >= 0` so that the
/// origin is a feasible starting vertex. Bland's rule prevents cycling.
///
/// Returns the optimal `z` and objective value.
pub fn maximize(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Result<(Vec<f64>, f64)> {
    let m = a.len();
    let n = c.len();
    if b.len() != m || a.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidArgument("inconsistent LP dimensions".into()));
    }
    if b.iter().any(|&v| v < 0.0) {
        return Err(Error::InvalidArgument("LP right-hand side must be nonnegative".into()));
    }
    let width = n + m + 1;
    // row i: [A_i | e_i | b_i]; last row: objective [-c | 0 | 0]
    let mut tab = vec![0.0; (m + 1) * width];
    for i in 0..m {
        let row = &mut tab[i * width..(i + 1) * width];
        row[..n].copy_from_slice(&a[i]);
        row[n + i] = 1.0;
        row[width - 1] = b[i];
    }
    for j in 0..n {
        tab[m * width + j] = -c[j];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let eps = 1e-12;

    for _ in 0..50 * (n + m + 10) {
        let obj = &tab[m * width..];
        let entering = (0..n + m).find(|&j| obj[j] < -eps);
        let Some(col) = entering else {
            let mut z = vec![0.0; n];
            for (i, &bi) in basis.iter().enumerate() {
                if bi < n {
                    z[bi] = tab[i * width + width - 1];
                }
            }
            return Ok((z, tab[m * width + width - 1]));
        };
        let mut pivot: Option<(usize, f64)> = None;
        for i in 0..m {
            let aij = tab[i * width + col];
            if aij > eps {
                let ratio = tab[i * width + width - 1] / aij;
                let better = match pivot {
                    None => true,
                    Some((pi, pr)) => {
                        ratio < pr - 1e-15 || (ratio <= pr + 1e-15 && basis[i] < basis[pi])
                    }
                };
                if better {
                    pivot = Some((i, ratio));
                }
            }
        }
        let Some((row, _)) = pivot else {
            return Err(Error::InvalidArgument("LP is unbounded".into()));
        };
        let p = tab[row * width + col];
        for j in 0..width {
            tab[row * width + j] /= p;
        }
        for i in 0..=m {
            if i == row {
                continue;
            }
            let factor = tab[i * width + col];
            if factor != 0.0 {
                for j in 0..width {
                    tab[i * width + j] -= factor * tab[row * width + j];
                }
            }
        }
        basis[row] = col;
    }
    Err(Error::NonConvergence("simplex iteration cap reached".into()))
}

/// Largest ball inside `{x : a_i·x <= b_i}`: maximizes `t` subject to
/// `a_i·x + t|a_i| <= b_i`. `hint` must lie in the polytope.
pub fn chebyshev_center(normals: &[Vec<f64>], offsets: &[f64], hint: &[f64]) -> Result<(Vec<f64>, f64)> {
    let dim = hint.len();
    // shift x = hint + p - q, variables (p, q, t) >= 0
    let mut rows = Vec::with_capacity(normals.len());
    let mut rhs = Vec::with_capacity(normals.len());
    for (a, &b) in normals.iter().zip(offsets) {
        if a.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: a.len() });
        }
        let norm = a.iter().map(|v| v * v).sum::<f64>().sqrt();
        let slack = b - a.iter().zip(hint).map(|(x, y)| x * y).sum::<f64>();
        if slack < -1e-9 * (norm * hint.iter().map(|v| v.abs()).sum::<f64>() + b.abs() + 1.0) {
            return Err(Error::InvalidBody("Chebyshev hint lies outside the polytope".into()));
        }
        let mut row = Vec::with_capacity(2 * dim + 1);
        row.extend_from_slice(a);
        row.extend(a.iter().map(|v| -v));
        row.push(norm);
        rows.push(row);
        rhs.push(slack.max(0.0));
    }
    let mut c = vec![0.0; 2 * dim + 1];
    c[2 * dim] = 1.0;
    let (z, t) = maximize(&c, &rows, &rhs)?;
    if t <= 0.0 {
        return Err(Error::InvalidBody("polytope has empty interior".into()));
    }
    let center = (0..dim).map(|i| hint[i] + z[i] - z[dim + i]).collect();
    Ok((center, t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_lp() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
        let (z, v) = maximize(
            &[3.0, 5.0],
            &[vec![1.0, 0.0], vec![0.0, 2.0], vec![3.0, 2.0]],
            &[4.0, 12.0, 18.0],
        )
        .unwrap();
        assert!((v - 36.0).abs() < 1e-12);
        assert!((z[0] - 2.0).abs() < 1e-12 && (z[1] - 6.0).abs() < 1e-12);
    }

    #[test]
    fn unbounded_is_reported() {
        assert!(maximize(&[1.0, 0.0], &[vec![0.0, 1.0]], &[1.0]).is_err());
    }

    #[test]
    fn chebyshev_center_of_rectangle() {
        let normals = vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 2.0], vec![0.0, -1.0]];
        let offsets = vec![2.0, 2.0, 1.0, 0.5];
        let (c, r) = chebyshev_center(&normals, &offsets, &[0.3, 0.0]).unwrap();
        assert!((r - 0.5).abs() < 1e-12);
        assert!(c[1].abs() < 1e-12);
    }
}
