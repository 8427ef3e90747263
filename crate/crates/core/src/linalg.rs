//! Real symmetric eigensolvers: dense (faer's self-adjoint decomposition
//! behind an nalgebra interface) and a Lanczos path for large sparse
//! matrices.

use faer::{Mat, Side};
use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Eigenvalues ascending with matching eigenvector columns.
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

pub fn max_asymmetry(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..i {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    worst
}

pub fn symmetric_eigen(m: &DMatrix<f64>) -> Result<Eigen> {
    if m.nrows() == 0 {
        return Err(Error::EmptyMatrix);
    }
    if m.nrows() != m.ncols() {
        return Err(Error::InvalidArgument(format!("{}x{} matrix is not square", m.nrows(), m.ncols())));
    }
    let n = m.nrows();
    let a = Mat::<f64>::from_fn(n, n, |r, c| m[(r, c)]);
    let eig = a
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::InvalidArgument(format!("eigendecomposition failed: {e:?}")))?;
    let (s, u) = (eig.S(), eig.U());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| s[i].total_cmp(&s[j]));
    let values = order.iter().map(|&i| s[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| u[(r, order[c])]);
    Ok(Eigen { values, vectors })
}

/// Compressed sparse rows of a symmetric matrix.
#[derive(Clone, Debug)]
pub struct SparseSymmetric {
    pub dim: usize,
    row_start: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl SparseSymmetric {
    /// `rows[i]` lists `(column, value)` pairs of row `i`.
    pub fn from_rows(rows: Vec<Vec<(usize, f64)>>) -> Self {
        let dim = rows.len();
        let mut row_start = Vec::with_capacity(dim + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_start.push(0);
        for row in rows {
            for (c, v) in row {
                cols.push(c);
                vals.push(v);
            }
            row_start.push(cols.len());
        }
        Self { dim, row_start, cols, vals }
    }

    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            let (a, b) = (self.row_start[i], self.row_start[i + 1]);
            *yi = self.cols[a..b].iter().zip(&self.vals[a..b]).map(|(&c, v)| v * x[c]).sum();
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for k in self.row_start[i]..self.row_start[i + 1] {
                m[(i, self.cols[k])] += self.vals[k];
            }
        }
        m
    }
}

/// Lowest `k` eigenpairs by Lanczos with full reorthogonalization.
///
/// The Krylov space grows until every wanted Ritz residual drops below `tol`,
/// the space is exhausted, or `max_iter` vectors are held. A single start
/// vector sees at most one direction of a degenerate eigenspace.
pub fn lanczos_lowest(
    a: &SparseSymmetric,
    start: &[f64],
    k: usize,
    tol: f64,
    max_iter: usize,
) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = a.dim;
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    let mut q0: Vec<f64> = start.to_vec();
    let norm = dot(&q0, &q0).sqrt();
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    q0.iter_mut().for_each(|x| *x /= norm);

    let max_iter = max_iter.min(n).max(1);
    let mut basis: Vec<Vec<f64>> = vec![q0];
    let mut alpha = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut w = vec![0.0; n];
    loop {
        let j = basis.len() - 1;
        a.matvec(&basis[j], &mut w);
        alpha.push(dot(&w, &basis[j]));
        // two Gram-Schmidt passes keep orthogonality at machine precision
        for _ in 0..2 {
            for q in &basis {
                let c = dot(&w, q);
                axpy(-c, q, &mut w);
            }
        }
        let b = dot(&w, &w).sqrt();

        let m = alpha.len();
        let t = DMatrix::from_fn(m, m, |r, c| {
            if r == c {
                alpha[r]
            } else if r + 1 == c {
                beta[r]
            } else if c + 1 == r {
                beta[c]
            } else {
                0.0
            }
        });
        let eig = symmetric_eigen(&t)?;
        let wanted = k.min(m);
        let converged = m >= k && (0..wanted).all(|i| (b * eig.vectors[(m - 1, i)]).abs() < tol);
        if converged || b < 1e-14 || m >= max_iter {
            let mut vectors = Vec::with_capacity(wanted);
            for i in 0..wanted {
                let mut v = vec![0.0; n];
                for (r, q) in basis.iter().enumerate() {
                    axpy(eig.vectors[(r, i)], q, &mut v);
                }
                let nv = dot(&v, &v).sqrt();
                v.iter_mut().for_each(|x| *x /= nv);
                vectors.push(v);
            }
            return Ok((eig.values[..wanted].to_vec(), vectors));
        }
        beta.push(b);
        basis.push(w.iter().map(|x| x / b).collect());
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    y.iter_mut().zip(x).for_each(|(yi, xi)| *yi += alpha * xi);
}
