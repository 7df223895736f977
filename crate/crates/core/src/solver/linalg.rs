//! Sparse matrices and a preconditioned BiCGSTAB solver.

use rayon::prelude::*;

/// Compressed sparse row matrix.
#[derive(Clone, Debug, Default)]
pub struct Csr {
    pub n: usize,
    pub indptr: Vec<usize>,
    pub indices: Vec<usize>,
    pub data: Vec<f64>,
}

impl Csr {
    pub fn from_rows(rows: Vec<Vec<(usize, f64)>>) -> Csr {
        let n = rows.len();
        let mut indptr = Vec::with_capacity(n + 1);
        let mut indices = Vec::new();
        let mut data = Vec::new();
        indptr.push(0);
        for mut row in rows {
            row.sort_by_key(|e| e.0);
            let mut last: Option<usize> = None;
            for (j, v) in row {
                if last == Some(j) {
                    *data.last_mut().unwrap() += v;
                } else {
                    indices.push(j);
                    data.push(v);
                    last = Some(j);
                }
            }
            indptr.push(indices.len());
        }
        Csr { n, indptr, indices, data }
    }

    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        y.par_iter_mut().enumerate().with_min_len(1024).for_each(|(i, yi)| {
            let mut s = 0.0;
            for p in self.indptr[i]..self.indptr[i + 1] {
                s += self.data[p] * x[self.indices[p]];
            }
            *yi = s;
        });
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n)
            .map(|i| {
                (self.indptr[i]..self.indptr[i + 1])
                    .find(|&p| self.indices[p] == i)
                    .map_or(0.0, |p| self.data[p])
            })
            .collect()
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[derive(Clone, Copy, Debug)]
pub struct LinearSolve {
    pub iterations: usize,
    pub relative_residual: f64,
    pub converged: bool,
}

/// Jacobi-preconditioned BiCGSTAB for `A x = b`, starting from `x`.
pub fn bicgstab(a: &Csr, b: &[f64], x: &mut [f64], tol: f64, max_iter: usize) -> LinearSolve {
    let n = a.n;
    let dinv: Vec<f64> = a.diagonal().iter().map(|d| if *d != 0.0 { 1.0 / d } else { 1.0 }).collect();
    let bnorm = norm(b).max(1e-300);
    let mut r = vec![0.0; n];
    a.matvec(x, &mut r);
    for i in 0..n {
        r[i] = b[i] - r[i];
    }
    let mut res = norm(&r) / bnorm;
    if res <= tol {
        return LinearSolve { iterations: 0, relative_residual: res, converged: true };
    }
    let r0 = r.clone();
    let (mut rho, mut alpha, mut omega) = (1.0, 1.0, 1.0);
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    let mut y = vec![0.0; n];
    let mut s = vec![0.0; n];
    let mut z = vec![0.0; n];
    let mut t = vec![0.0; n];
    for it in 1..=max_iter {
        let rho_new = dot(&r0, &r);
        if rho_new.abs() < 1e-300 {
            return LinearSolve { iterations: it, relative_residual: res, converged: false };
        }
        let beta = (rho_new / rho) * (alpha / omega);
        rho = rho_new;
        for i in 0..n {
            p[i] = r[i] + beta * (p[i] - omega * v[i]);
            y[i] = dinv[i] * p[i];
        }
        a.matvec(&y, &mut v);
        alpha = rho / dot(&r0, &v);
        for i in 0..n {
            s[i] = r[i] - alpha * v[i];
        }
        if norm(&s) / bnorm <= tol {
            for i in 0..n {
                x[i] += alpha * y[i];
            }
            return LinearSolve { iterations: it, relative_residual: norm(&s) / bnorm, converged: true };
        }
        for i in 0..n {
            z[i] = dinv[i] * s[i];
        }
        a.matvec(&z, &mut t);
        let tt = dot(&t, &t);
        omega = if tt > 0.0 { dot(&t, &s) / tt } else { 0.0 };
        for i in 0..n {
            x[i] += alpha * y[i] + omega * z[i];
            r[i] = s[i] - omega * t[i];
        }
        res = norm(&r) / bnorm;
        if res <= tol {
            return LinearSolve { iterations: it, relative_residual: res, converged: true };
        }
        if omega == 0.0 {
            return LinearSolve { iterations: it, relative_residual: res, converged: false };
        }
    }
    LinearSolve { iterations: max_iter, relative_residual: res, converged: false }
}
